"""Unit tests for disentangled_explainer.actions module."""
