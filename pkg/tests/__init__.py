"""
Test package for the tropical workbench.

This package contains all unit and integration tests.
"""
