"""
Services package for input/output and orchestration.

This package contains service modules for:
- files: loading and validating system, matrix and witness files
- reports: converting results into the published report models
- campaign: seeded randomized campaigns
- plotting: SVG rendering of Newton polygons and extremal diagrams
"""
