"""Test suite for the construction schemes engine."""
