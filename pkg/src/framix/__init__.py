"""Exact framization link invariants."""
