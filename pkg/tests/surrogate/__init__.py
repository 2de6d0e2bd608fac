"""Unit tests for disentangled_explainer.surrogate module."""
