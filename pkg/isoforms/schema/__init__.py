"""Data schemas."""
