"""
Integration tests for the action diagnosis toolkit.

This package contains tests that run whole pipelines and the CLI.
"""
