"""
Test suite for the action diagnosis toolkit.

This package contains unit tests, integration tests, and test fixtures
for all components of the toolkit.
"""
