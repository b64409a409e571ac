"""
Utilities package for shared functionality.

This package contains:
- config: Configuration management
- logger: Logging setup and configuration
- metrics: Counters and timers
"""
