"""Exact computation with prolongations and tau-forms on curves over Q(t)."""
