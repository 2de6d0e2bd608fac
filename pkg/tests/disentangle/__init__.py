"""Unit tests for disentangled_explainer.disentangle module."""
