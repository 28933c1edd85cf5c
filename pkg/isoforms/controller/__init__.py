"""Command-line controllers."""
