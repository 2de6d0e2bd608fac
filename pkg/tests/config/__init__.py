"""Unit tests for disentangled_explainer.config module."""
