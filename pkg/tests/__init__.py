"""Tests for anytime_ppm."""
