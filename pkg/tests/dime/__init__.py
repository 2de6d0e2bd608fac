"""Unit tests for disentangled_explainer.dime module."""
