"""Test models and helpers for the models module tests."""
