"""Unit tests for the shape-invariant model toolkit."""
