"""
Models package for data structures and schemas.

This package contains:
- schemas: Pydantic models for data validation
"""