"""
Configuration management for the action diagnosis toolkit.
"""

from .settings import AppSettings, Settings
from .validation import ConfigValidator

__all__ = ['AppSettings', 'ConfigValidator', 'Settings']
