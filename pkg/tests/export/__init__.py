"""Tests for export module."""
