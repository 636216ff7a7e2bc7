"""Closure operations, axiom checks, the standardized radical and semistar operations."""
