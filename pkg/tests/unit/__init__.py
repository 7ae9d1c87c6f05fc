"""Unit tests init."""
