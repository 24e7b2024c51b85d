"""Plugins -- concrete implementations of core protocols."""
