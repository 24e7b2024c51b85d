"""Core protocols, models, and infrastructure."""
