"""Test suite for supercent."""
