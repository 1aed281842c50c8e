"""Tests for the normalsv package."""
