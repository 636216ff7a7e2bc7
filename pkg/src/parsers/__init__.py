"""Parsers for polynomial text and session scripts."""
