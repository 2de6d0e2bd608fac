"""Unit tests for disentangled_explainer.data module."""
