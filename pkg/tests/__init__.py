"""Test suite for torsioncert."""
