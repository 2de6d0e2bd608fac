"""Unit tests for disentangled_explainer.models module."""
