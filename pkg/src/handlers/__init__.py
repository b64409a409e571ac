"""
Handlers package for command line interactions.

This package contains:
- commands: one handler per subcommand
"""
