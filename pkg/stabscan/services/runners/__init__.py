"""Runners package initialization."""
