"""Tests for PolyForge."""
