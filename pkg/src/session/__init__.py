"""Session execution."""
