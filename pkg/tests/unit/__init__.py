"""
Unit tests for the action diagnosis toolkit.

This package contains unit tests for individual components
and functions of the toolkit.
"""
