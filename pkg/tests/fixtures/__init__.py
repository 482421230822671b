"""
Test fixtures for the action diagnosis toolkit.

This package contains experience builders and configuration files used
across the test suite.
"""
