"""
Tropical Nullstellensatz workbench

Exact min-plus polynomial algebra: Cayley matrices, tropical linear
feasibility with certificates, and executable checks of the univariate
dual Nullstellensatz bound.
"""

__version__ = "0.1.0"
