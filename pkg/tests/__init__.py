"""Unit tests for disentangled_explainer."""
