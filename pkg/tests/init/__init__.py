"""Unit tests for disentangled_explainer.init module."""
