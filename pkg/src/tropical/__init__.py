"""
Exact tropical (min-plus) algebra core.

This package contains:
- semiring: min-plus arithmetic over exact rationals and +infinity
- polynomial: tropical monomials, polynomials and zero tests
- newton: extended Newton polygons, convex form and univariate roots
- cayley: tropical Cayley matrices and their truncations
- solver: tropical linear feasibility with witnesses and refutations
- nullstellensatz: shift profiles, extremal diagrams and root extraction
- bivariate: brute-force bivariate solvability and conjecture probes
"""
