"""Unit tests for disentangled_explainer.cli module."""
