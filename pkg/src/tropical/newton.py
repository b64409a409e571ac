"""
Extended Newton polygons, convex form and univariate roots.

Each term a⊗X^k is plotted as the point (k, a). The lower convex envelope
of the plotted points (closed upwards in the coefficient direction) is
the extended Newton polygon P(f). Its edges are numbered from the left
to the right; the r-th edge is parallel to (b_r, 1) in (height, exponent)
coordinates, and -b_r is a tropical root of multiplicity equal to the
edge's lattice length.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from src.tropical.errors import UnsupportedDimensionError
from src.tropical.polynomial import TropPoly

logger = logging.getLogger(__name__)

HullPoint = Tuple[Fraction, Fraction]


def cross(o: HullPoint, a: HullPoint, b: HullPoint) -> Fraction:
    """z-component of (a - o) x (b - o)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Sequence[HullPoint]) -> List[HullPoint]:
    """
    Strict lower convex hull of planar points, left to right.

    For equal abscissae only the lowest point is kept. Collinear middle
    points are dropped, so consecutive slopes strictly increase.
    """
    lowest: Dict[Fraction, Fraction] = {}
    for x, y in points:
        if x not in lowest or y < lowest[x]:
            lowest[x] = y
    chain: List[HullPoint] = []
    for p in sorted(lowest.items()):
        while len(chain) >= 2 and cross(chain[-2], chain[-1], p) <= 0:
            chain.pop()
        chain.append(p)
    return chain


@dataclass(frozen=True)
class NewtonEdge:
    """The r-th finite edge of a univariate Newton polygon."""

    index: int
    start: Tuple[int, Fraction]
    end: Tuple[int, Fraction]
    slope: Fraction

    @property
    def lattice_length(self) -> int:
        return self.end[0] - self.start[0]

    @property
    def direction(self) -> Tuple[Fraction, int]:
        """The vector (b_r, 1) in (height, exponent) coordinates."""
        return (self.slope, 1)

    @property
    def root(self) -> Fraction:
        return -self.slope

    def contains(self, k: int) -> bool:
        return self.start[0] <= k <= self.end[0]


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower envelope of the plotted points of a univariate polynomial."""

    vertices: Tuple[Tuple[int, Fraction], ...]
    edges: Tuple[NewtonEdge, ...]

    @property
    def min_exponent(self) -> int:
        return self.vertices[0][0]

    @property
    def max_exponent(self) -> int:
        return self.vertices[-1][0]

    def height(self, k: Fraction) -> Fraction:
        """Height of the lower envelope above exponent k."""
        if not self.edges:
            if k != self.vertices[0][0]:
                raise ValueError(f"exponent {k} outside the polygon")
            return self.vertices[0][1]
        for edge in self.edges:
            if edge.start[0] <= k <= edge.end[0]:
                return edge.start[1] + edge.slope * (k - edge.start[0])
        raise ValueError(f"exponent {k} outside the polygon")

    def edge_of(self, k: int, convention: str = "left") -> Optional[NewtonEdge]:
        """
        The edge an exponent lies in.

        With the "left" convention a vertex shared by edges r and r+1 lies
        in edge r; with "right" it lies in edge r+1. The outermost vertices
        belong to the only edge touching them.
        """
        if not self.edges:
            return None
        for edge in self.edges:
            if convention == "left" and edge.start[0] < k <= edge.end[0]:
                return edge
            if convention == "right" and edge.start[0] <= k < edge.end[0]:
                return edge
        if k == self.min_exponent:
            return self.edges[0]
        if k == self.max_exponent:
            return self.edges[-1]
        return None

    def edge_with_slope(self, slope: Fraction) -> Optional[NewtonEdge]:
        for edge in self.edges:
            if edge.slope == slope:
                return edge
        return None


@dataclass(frozen=True)
class RootMultiset:
    """Tropical roots in increasing order with their multiplicities."""

    entries: Tuple[Tuple[Fraction, int], ...]

    @property
    def roots(self) -> List[Fraction]:
        return [root for root, _ in self.entries]

    @property
    def total_multiplicity(self) -> int:
        return sum(mult for _, mult in self.entries)

    def as_dict(self) -> Dict[str, int]:
        return {str(root): mult for root, mult in self.entries}

    def __contains__(self, x: object) -> bool:
        return any(root == x for root, _ in self.entries)


def _require_univariate(f: TropPoly) -> None:
    if f.n != 1:
        raise UnsupportedDimensionError(f"expected a univariate polynomial, got n={f.n}")


def newton_polygon(f: TropPoly) -> NewtonPolygon:
    """Lower convex envelope of the plotted points of f (n = 1)."""
    _require_univariate(f)
    hull = lower_hull([(Fraction(exps[0]), coeff) for exps, coeff in f.items()])
    vertices = tuple((int(x), y) for x, y in hull)
    edges = tuple(
        NewtonEdge(
            index=r + 1,
            start=vertices[r],
            end=vertices[r + 1],
            slope=(vertices[r + 1][1] - vertices[r][1]) / (vertices[r + 1][0] - vertices[r][0]),
        )
        for r in range(len(vertices) - 1)
    )
    return NewtonPolygon(vertices=vertices, edges=edges)


def _segment_height(p: Tuple[int, int], a: Tuple, b: Tuple) -> Optional[Fraction]:
    """Interpolated coefficient if lattice point p lies on segment ab."""
    (ax, ay, ac), (bx, by, bc) = a, b
    dx, dy = bx - ax, by - ay
    if dx * (p[1] - ay) - dy * (p[0] - ax) != 0:
        return None
    t = Fraction(p[0] - ax, dx) if dx != 0 else Fraction(p[1] - ay, dy)
    if t < 0 or t > 1:
        return None
    return ac + t * (bc - ac)


def _triangle_height(p: Tuple[int, int], a: Tuple, b: Tuple, c: Tuple) -> Optional[Fraction]:
    """Interpolated coefficient if lattice point p lies in triangle abc."""
    area = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if area == 0:
        return None
    wa = Fraction((b[0] - p[0]) * (c[1] - p[1]) - (b[1] - p[1]) * (c[0] - p[0]), area)
    wb = Fraction((c[0] - p[0]) * (a[1] - p[1]) - (c[1] - p[1]) * (a[0] - p[0]), area)
    wc = 1 - wa - wb
    if wa < 0 or wb < 0 or wc < 0:
        return None
    return wa * a[2] + wb * b[2] + wc * c[2]


def _convex_form_bivariate(f: TropPoly) -> TropPoly:
    plotted = [(exps[0], exps[1], coeff) for exps, coeff in f.items()]
    xs = [p[0] for p in plotted]
    ys = [p[1] for p in plotted]
    terms: Dict[Tuple[int, int], Fraction] = {}
    for px in range(min(xs), max(xs) + 1):
        for py in range(min(ys), max(ys) + 1):
            p = (px, py)
            candidates: List[Fraction] = [c for x, y, c in plotted if (x, y) == p]
            for a, b in itertools.combinations(plotted, 2):
                h = _segment_height(p, a, b)
                if h is not None:
                    candidates.append(h)
            for a, b, c in itertools.combinations(plotted, 3):
                h = _triangle_height(p, a, b, c)
                if h is not None:
                    candidates.append(h)
            if candidates:
                terms[p] = min(candidates)
    return TropPoly(2, terms)


def convex_form(f: TropPoly) -> TropPoly:
    """
    Canonical polynomial with the same tropical zeros as f.

    Every lattice exponent in the convex hull of the support gets the
    height of the lower envelope of P(f) as its coefficient.

    Raises:
        UnsupportedDimensionError: For n > 2
    """
    if f.n == 1:
        polygon = newton_polygon(f)
        return TropPoly(1, {
            (k,): polygon.height(k)
            for k in range(polygon.min_exponent, polygon.max_exponent + 1)
        })
    if f.n == 2:
        return _convex_form_bivariate(f)
    raise UnsupportedDimensionError(f"convex form is implemented for n <= 2, got n={f.n}")


def univariate_roots(f: TropPoly) -> RootMultiset:
    """
    Tropical roots of a univariate polynomial.

    One entry per edge of the Newton polygon: root -b_r with multiplicity
    the lattice length of the edge. A single-term polynomial has none.
    """
    polygon = newton_polygon(f)
    entries = sorted((edge.root, edge.lattice_length) for edge in polygon.edges)
    return RootMultiset(entries=tuple(entries))


def tie_candidates(f: TropPoly) -> Set[Fraction]:
    """All points where some pair of terms of f take equal values."""
    _require_univariate(f)
    found: Set[Fraction] = set()
    for (ek, ak), (el, al) in itertools.combinations(f.items(), 2):
        found.add((ak - al) / (el[0] - ek[0]))
    return found


def univariate_common_root(system: Sequence[TropPoly]) -> Optional[Fraction]:
    """
    Least common tropical root of univariate polynomials, if any.

    Returns None when some polynomial has a single term or the root sets
    do not meet.
    """
    if not system:
        return None
    common: Optional[Set[Fraction]] = None
    for f in system:
        roots = set(univariate_roots(f).roots)
        common = roots if common is None else common & roots
        if not common:
            return None
    return min(common)
