"""Data layer -- run artifacts on disk (CSV traces, JSON summaries, JSON-lines verdicts)."""
