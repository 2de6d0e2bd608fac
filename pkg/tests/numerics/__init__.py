"""Unit tests for disentangled_explainer.numerics module."""
