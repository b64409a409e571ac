"""
Dual Nullstellensatz machinery for univariate systems.

Given a tropical zero y of the Cayley matrix C_N, every column l is lifted
to the point (-y_l, l) of the (height, exponent) plane. For each
polynomial f_j and shift i the Newton polygon P(f_j) is translated by
(a_i, i) with a_i the least value for which it lies on or above the lifted
points; the contact points are the extremal points of P_i. The chain
through all extremal points is the polygon E(f_j), and the upper envelope
ℰ of these chains carries an edge parallel to an edge of every P(f_j),
whose direction gives a common tropical root.

Computations are restricted to the shifts -N..N present in C_N.
"""

import bisect
import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from src.tropical.cayley import build_cayley
from src.tropical.errors import (
    InvariantViolation,
    MissingColumnError,
    NotACommonZeroError,
    UnsupportedDimensionError,
    WitnessViolationError,
)
from src.tropical.newton import NewtonPolygon, convex_form, newton_polygon, univariate_common_root
from src.tropical.polynomial import Exponent, TropPoly, evaluate, is_common_zero, system_degree
from src.tropical.solver import Engine, Witness, decide, verify_witness

logger = logging.getLogger(__name__)

# (height, exponent)
PlanePoint = Tuple[Fraction, Fraction]


class EdgeKind(str, Enum):
    """Classification of an edge of E(f_j)."""
    PRINCIPAL = "principal"
    INTERMEDIATE1 = "intermediate1"
    INTERMEDIATE2 = "intermediate2"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class ShiftProfile:
    """The optimal vertical shifts a_i of one polynomial over a window."""

    j: int
    values: Dict[int, Fraction]

    @property
    def window(self) -> Tuple[int, int]:
        return (min(self.values), max(self.values))

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]


@dataclass(frozen=True)
class EdgeClass:
    """One classified edge of E(f_j)."""

    start: PlanePoint
    end: PlanePoint
    kind: EdgeKind
    r: Optional[int] = None
    shift: Optional[int] = None
    projection: Optional[Tuple[int, int]] = None

    @property
    def slope(self) -> Fraction:
        return (self.end[0] - self.start[0]) / (self.end[1] - self.start[1])

    @property
    def span(self) -> Tuple[Fraction, Fraction]:
        return (self.start[1], self.end[1])


@dataclass
class ExtremalDiagram:
    """Extremal points, the polygon E and its classified edges for one f_j."""

    j: int
    poly: TropPoly
    polygon: NewtonPolygon
    profile: ShiftProfile
    extremal: Dict[int, Tuple[PlanePoint, ...]]
    provenance: Dict[int, Tuple[int, ...]]
    chain: Tuple[PlanePoint, ...]
    lifted: Tuple[PlanePoint, ...]
    classes: Tuple[EdgeClass, ...] = ()

    @property
    def N(self) -> int:
        return self.profile.window[1]

    @cached_property
    def _chain_exponents(self) -> List[Fraction]:
        return [p[1] for p in self.chain]

    def height(self, l: Fraction) -> Fraction:
        """Height of the chain E above exponent l (inside its range)."""
        ls = self._chain_exponents
        k = bisect.bisect_left(ls, l)
        if k < len(ls) and ls[k] == l:
            return self.chain[k][0]
        if k == 0 or k == len(ls):
            raise ValueError(f"exponent {l} outside E(f_{self.j})")
        (u0, l0), (u1, l1) = self.chain[k - 1], self.chain[k]
        return u0 + (u1 - u0) * (l - l0) / (l1 - l0)

    def class_over(self, lo: Fraction, hi: Fraction) -> EdgeClass:
        """The edge of E whose exponent span contains [lo, hi]."""
        for edge in self.classes:
            if edge.start[1] <= lo and hi <= edge.end[1]:
                return edge
        raise ValueError(f"no edge of E(f_{self.j}) spans [{lo}, {hi}]")


@dataclass(frozen=True)
class CommonEdge:
    """An edge of ℰ with the polynomials whose E it lies on."""

    start: PlanePoint
    end: PlanePoint
    sources: Tuple[Tuple[int, EdgeKind, Optional[int]], ...]

    @property
    def slope(self) -> Fraction:
        return (self.end[0] - self.start[0]) / (self.end[1] - self.start[1])

    @property
    def length(self) -> Fraction:
        return self.end[1] - self.start[1]

    def is_common_principal(self, s: int) -> bool:
        return len(self.sources) == s and all(kind is EdgeKind.PRINCIPAL for _, kind, _ in self.sources)


@dataclass(frozen=True)
class IntersectionPolygon:
    """The upper envelope ℰ of the chains E(f_1), ..., E(f_s)."""

    vertices: Tuple[PlanePoint, ...]
    edges: Tuple[CommonEdge, ...]
    window: Tuple[Fraction, Fraction]
    s: int

    @property
    def centre(self) -> Fraction:
        return (self.window[0] + self.window[1]) / 2

    def common_principal_edges(self) -> List[CommonEdge]:
        return [edge for edge in self.edges if edge.is_common_principal(self.s)]


@dataclass(frozen=True)
class RootCertificate:
    """A common root extracted from a Cayley witness."""

    x: Fraction
    edge: CommonEdge
    edge_indices: Dict[int, int]
    offsets: Dict[int, Fraction]
    touching: Dict[int, Tuple[int, ...]]


def _require_univariate_system(system: Sequence[TropPoly]) -> None:
    if not system:
        raise ValueError("empty polynomial system")
    for f in system:
        if f.n != 1:
            raise UnsupportedDimensionError(f"expected univariate polynomials, got n={f.n}")


def _column_heights(y: Mapping[Hashable, Fraction]) -> Dict[int, Fraction]:
    heights = {}
    for key, value in y.items():
        l = key[0] if isinstance(key, tuple) else key
        heights[int(l)] = Fraction(value)
    return heights


def _window_bounds(window) -> Tuple[int, int]:
    if isinstance(window, int):
        return (-window, window)
    lo, hi = window
    if lo > hi:
        raise ValueError(f"empty shift window [{lo}, {hi}]")
    return (int(lo), int(hi))


def _shift_value(f: TropPoly, heights: Mapping[int, Fraction], i: int) -> Fraction:
    best: Optional[Fraction] = None
    for (k,), coeff in f.items():
        column = k + i
        if column not in heights:
            raise MissingColumnError((column,))
        value = -heights[column] - coeff
        if best is None or value > best:
            best = value
    return best


def shift_profile(f: TropPoly, y: Mapping[Hashable, Fraction], window, j: int = 1) -> ShiftProfile:
    """
    Least vertical shifts a_i putting P(f) + (a_i, i) on or above the lifted witness.

    a_i is the largest value of -y_{k+i} - coeff_k over the exponents k of
    the convex form of f, i.e. minus the minimum of row (j, i).

    Args:
        f: A univariate polynomial
        y: Witness keyed by column exponent
        window: N for [-N, N], or an explicit (lo, hi) pair
        j: Index of f in its system, kept for reporting

    Raises:
        MissingColumnError: If a shifted exponent has no witness value
    """
    lo, hi = _window_bounds(window)
    canonical = convex_form(f)
    heights = _column_heights(y)
    return ShiftProfile(j=j, values={i: _shift_value(canonical, heights, i) for i in range(lo, hi + 1)})


def extremal_points(f: TropPoly, y: Mapping[Hashable, Fraction], i: int,
                    a_i: Optional[Fraction] = None) -> Tuple[PlanePoint, ...]:
    """
    Contact points of P_i with the lifted witness, by increasing exponent.

    A witness row (j, i) is satisfied exactly when there are two or more.
    """
    canonical = convex_form(f)
    heights = _column_heights(y)
    if a_i is None:
        a_i = _shift_value(canonical, heights, i)
    points = []
    for (k,), coeff in canonical.items():
        l = k + i
        if coeff + a_i == -heights[l]:
            points.append((-heights[l], Fraction(l)))
    return tuple(points)


def classify_edges(diagram: ExtremalDiagram, P: NewtonPolygon, profile: ShiftProfile,
                   strict: bool = True) -> List[EdgeClass]:
    """
    Label every edge of E(f_j).

    An edge parallel to the r-th edge of P is Principal(r). Otherwise it is
    of the first intermediate type when both endpoints are extremal for a
    common shift i (projection (l - i, l' - i)), or of the second type when
    it runs from P_i to P_{i+1} (projection (l - i, l' - i - 1)).

    Raises:
        InvariantViolation: For an edge fitting no class when strict
    """
    classes = []
    for p, q in zip(diagram.chain, diagram.chain[1:]):
        slope = (q[0] - p[0]) / (q[1] - p[1])
        lp, lq = int(p[1]), int(q[1])
        parallel = P.edge_with_slope(slope)
        if parallel is not None:
            classes.append(EdgeClass(start=p, end=q, kind=EdgeKind.PRINCIPAL, r=parallel.index))
            continue
        left, right = diagram.provenance[lp], diagram.provenance[lq]
        common = sorted(set(left) & set(right))
        if common:
            i = common[0]
            classes.append(EdgeClass(start=p, end=q, kind=EdgeKind.INTERMEDIATE1,
                                     shift=i, projection=(lp - i, lq - i)))
            continue
        spanning = [i for i in left if i + 1 in right]
        if spanning:
            i = spanning[0]
            classes.append(EdgeClass(start=p, end=q, kind=EdgeKind.INTERMEDIATE2,
                                     shift=i, projection=(lp - i, lq - i - 1)))
            continue
        if strict:
            raise InvariantViolation(
                f"edge ({p[0]}, {lp}) -> ({q[0]}, {lq}) of E(f_{diagram.j}) fits no edge class"
            )
        classes.append(EdgeClass(start=p, end=q, kind=EdgeKind.UNCLASSIFIED))
    return classes


def _violated_rows_in_window(system: Sequence[TropPoly], y: Mapping[Hashable, Fraction],
                             lo: int, hi: int) -> List[Tuple[int, Exponent]]:
    violated = []
    heights = _column_heights(y)
    for j, f in enumerate(system, start=1):
        canonical = convex_form(f)
        for i in range(lo, hi + 1):
            if len(extremal_points(canonical, heights, i)) < 2:
                violated.append((j, (i,)))
    return violated


def build_E(f: TropPoly, y: Mapping[Hashable, Fraction], window, j: int = 1,
            strict: bool = True) -> ExtremalDiagram:
    """
    Extremal points over the window and the chain E(f_j) through them.

    Raises:
        WitnessViolationError: If some shift in the window has fewer than
            two extremal points
        InvariantViolation: If an edge cannot be classified and strict
    """
    lo, hi = _window_bounds(window)
    canonical = convex_form(f)
    heights = _column_heights(y)
    profile = shift_profile(canonical, heights, (lo, hi), j=j)

    extremal: Dict[int, Tuple[PlanePoint, ...]] = {}
    provenance: Dict[int, List[int]] = {}
    violated = []
    for i in range(lo, hi + 1):
        points = extremal_points(canonical, heights, i, profile[i])
        if len(points) < 2:
            violated.append((j, (i,)))
        extremal[i] = points
        for _, l in points:
            provenance.setdefault(int(l), []).append(i)
    if violated:
        raise WitnessViolationError(violated)

    chain = tuple(sorted({(-heights[l], Fraction(l)) for l in provenance}, key=lambda p: p[1]))
    lifted = tuple((-value, Fraction(l)) for l, value in sorted(heights.items()))
    diagram = ExtremalDiagram(
        j=j,
        poly=canonical,
        polygon=newton_polygon(canonical),
        profile=profile,
        extremal=extremal,
        provenance={l: tuple(shifts) for l, shifts in provenance.items()},
        chain=chain,
        lifted=lifted,
    )
    diagram.classes = tuple(classify_edges(diagram, diagram.polygon, profile, strict=strict))
    return diagram


def build_diagrams(system: Sequence[TropPoly], y: Mapping[Hashable, Fraction], N: int,
                   strict: bool = True) -> List[ExtremalDiagram]:
    """Diagrams of every polynomial of the system over the shifts -N..N."""
    _require_univariate_system(system)
    return [build_E(f, y, N, j=j, strict=strict) for j, f in enumerate(system, start=1)]


def intersect_E(diagrams: Sequence[ExtremalDiagram]) -> IntersectionPolygon:
    """
    Upper envelope of the chains E(f_j) over their common exponent range.

    Breakpoints are the chain vertices and the pairwise crossings of the
    chains. Each edge lists the polynomials whose chain it lies on, with
    the kind of the underlying E-edge (and r or the shift).

    Raises:
        ValueError: If the chains have no common exponent range
    """
    if not diagrams:
        raise ValueError("no diagrams to intersect")
    lo = max(d.chain[0][1] for d in diagrams)
    hi = min(d.chain[-1][1] for d in diagrams)
    if lo >= hi:
        raise ValueError(f"chains share no exponent range (common window [{lo}, {hi}])")

    breaks = sorted({lo, hi} | {p[1] for d in diagrams for p in d.chain if lo < p[1] < hi})
    crossings = set()
    for b0, b1 in zip(breaks, breaks[1:]):
        for d, e in itertools.combinations(diagrams, 2):
            d0 = d.height(b0) - e.height(b0)
            d1 = d.height(b1) - e.height(b1)
            if d0 * d1 < 0:
                crossings.add(b0 + (b1 - b0) * d0 / (d0 - d1))
    breaks = sorted(set(breaks) | crossings)

    def envelope(l: Fraction) -> Fraction:
        return max(d.height(l) for d in diagrams)

    vertices = tuple((envelope(l), l) for l in breaks)
    edges = []
    for (u0, b0), (u1, b1) in zip(vertices, vertices[1:]):
        middle = (b0 + b1) / 2
        top = envelope(middle)
        sources = []
        for d in diagrams:
            if d.height(middle) != top:
                continue
            edge = d.class_over(b0, b1)
            tag = edge.r if edge.kind is EdgeKind.PRINCIPAL else edge.shift
            sources.append((d.j, edge.kind, tag))
        edges.append(CommonEdge(start=(u0, b0), end=(u1, b1), sources=tuple(sources)))
    return IntersectionPolygon(vertices=vertices, edges=tuple(edges), window=(lo, hi), s=len(diagrams))


def witness_to_root(system: Sequence[TropPoly], y: Mapping[Hashable, Fraction], N: int) -> RootCertificate:
    """
    Extract a common tropical root from a tropical zero of C_N.

    The common principal edge of ℰ closest to the centre of the common
    exponent range (leftmost on ties) is used; its direction (b, 1) gives
    the root x = -b.

    Raises:
        WitnessViolationError: If y is not a tropical zero of C_N
        InvariantViolation: If ℰ has no common principal edge or the
            extracted point is not a common zero
    """
    _require_univariate_system(system)
    sigma = system_degree(system)
    if N < 4 * sigma:
        logger.warning(
            f"Extracting a root with N={N} below 4*sum(trdeg)={4 * sigma}",
            extra={"N": N, "system_degree": sigma},
        )
    report = verify_witness(build_cayley(system, N), _as_columns(y))
    if not report.ok:
        raise WitnessViolationError([check.row for check in report.violated])

    diagrams = build_diagrams(system, y, N)
    envelope = intersect_E(diagrams)
    candidates = envelope.common_principal_edges()
    if not candidates:
        raise InvariantViolation(f"ℰ has no common principal edge for N={N}")
    centre = envelope.centre
    chosen = min(candidates, key=lambda e: (abs((e.start[1] + e.end[1]) / 2 - centre), e.start[1]))
    x = -chosen.slope

    offsets: Dict[int, Fraction] = {}
    touching: Dict[int, Tuple[int, ...]] = {}
    for j, f in enumerate(system, start=1):
        result = evaluate(f, [x])
        if len(result.argmins) < 2:
            raise InvariantViolation(f"extracted point {x} is not a tropical zero of f_{j}")
        offsets[j] = result.value
        touching[j] = tuple(sorted(k for (k,) in result.argmins))

    logger.debug(f"Extracted root {x} from ℰ", extra={"N": N, "root": str(x)})
    return RootCertificate(
        x=x,
        edge=chosen,
        edge_indices={j: r for j, _, r in chosen.sources},
        offsets=offsets,
        touching=touching,
    )


def _as_columns(y: Mapping[Hashable, Fraction]) -> Witness:
    return {(l,): value for l, value in _column_heights(y).items()}


def root_to_witness(system: Sequence[TropPoly], x, columns: Sequence[Exponent]) -> Witness:
    """
    The witness y_I = <x, I> of a common tropical zero x.

    Args:
        system: The polynomial system
        x: A common zero, a rational (n = 1) or a sequence of rationals
        columns: Column exponents to fill in

    Raises:
        NotACommonZeroError: If x is not a common zero of the system
    """
    point = tuple(x) if isinstance(x, (tuple, list)) else (x,)
    point = tuple(Fraction(v) for v in point)
    if not is_common_zero(system, point):
        raise NotACommonZeroError(f"{[str(v) for v in point]} is not a common tropical zero")
    return {
        tuple(col): sum((xi * e for xi, e in zip(point, col)), Fraction(0))
        for col in columns
    }


@dataclass
class CheckOutcome:
    """Tally of one proof check."""

    name: str
    strict: bool
    checked: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, passed: bool, detail: str) -> None:
        self.checked += 1
        if not passed:
            self.violations.append(detail)


STRICT_CHECKS = (
    "profile_convexity",
    "slope_lower_bound",
    "slope_upper_bound",
    "edge_persistence",
    "shift_separation",
    "E_convexity",
    "principal_runs",
    "trichotomy",
    "gap_bound",
)
ADVISORY_CHECKS = ("projection_adjacency", "projection_length")


@dataclass
class ProofReport:
    """Outcome of every proof check over one witness and window."""

    N: int
    checks: Dict[str, CheckOutcome]
    profiles: Dict[int, Dict[int, Fraction]] = field(default_factory=dict)
    intermediate_length: Optional[Fraction] = None
    noncommon_principal_length: Optional[Fraction] = None

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.checks.values() if check.strict)

    def violation_counts(self) -> Dict[str, int]:
        return {name: len(check.violations) for name, check in self.checks.items()}


def _check_profile(d: ExtremalDiagram, lo: int, hi: int, checks: Dict[str, CheckOutcome]) -> None:
    a = d.profile.values
    P = d.polygon
    for i in range(lo + 1, hi):
        checks["profile_convexity"].record(
            2 * a[i] <= a[i - 1] + a[i + 1],
            f"f_{d.j}: 2·a_{i} > a_{i - 1} + a_{i + 1}",
        )
    for i in range(lo, hi):
        step = a[i + 1] - a[i]
        rightmost = int(d.extremal[i][-1][1]) - i
        edge = P.edge_of(rightmost, "left")
        checks["slope_lower_bound"].record(
            step >= edge.slope,
            f"f_{d.j}: a_{i + 1} - a_{i} = {step} < b_{edge.index} = {edge.slope}",
        )
        here = {int(p[1]) for p in d.extremal[i]}
        there = {int(p[1]) for p in d.extremal[i + 1]}
        if step == edge.slope:
            on_edge = {l for l in here if edge.start[0] < l - i <= edge.end[0]}
            checks["edge_persistence"].record(
                on_edge <= there,
                f"f_{d.j}: points {sorted(on_edge - there)} of edge {edge.index} leave P_{i + 1}",
            )
        else:
            checks["shift_separation"].record(
                not (here & there),
                f"f_{d.j}: P_{i} and P_{i + 1} share extremal points {sorted(here & there)}",
            )
    for i in range(lo + 1, hi + 1):
        step = a[i] - a[i - 1]
        leftmost = int(d.extremal[i][0][1]) - i
        edge = P.edge_of(leftmost, "right")
        checks["slope_upper_bound"].record(
            step <= edge.slope,
            f"f_{d.j}: a_{i} - a_{i - 1} = {step} > b_{edge.index} = {edge.slope}",
        )


def _check_chain(d: ExtremalDiagram, lo: int, hi: int, checks: Dict[str, CheckOutcome]) -> None:
    # exponents whose every covering shift lies in the window
    inner_lo = lo + d.polygon.max_exponent
    inner_hi = hi + d.polygon.min_exponent

    def inner(*ls) -> bool:
        return all(inner_lo <= l <= inner_hi for l in ls)

    for p, q, r in zip(d.chain, d.chain[1:], d.chain[2:]):
        if not inner(p[1], q[1], r[1]):
            continue
        left = (q[0] - p[0]) / (q[1] - p[1])
        right = (r[0] - q[0]) / (r[1] - q[1])
        checks["E_convexity"].record(left <= right, f"f_{d.j}: E bends at exponent {q[1]}")

    runs: Dict[int, List[int]] = {}
    for position, edge in enumerate(d.classes):
        checks["trichotomy"].record(
            edge.kind is not EdgeKind.UNCLASSIFIED,
            f"f_{d.j}: edge at exponents {edge.start[1]}..{edge.end[1]} has no class",
        )
        if edge.kind is EdgeKind.PRINCIPAL and inner(edge.start[1], edge.end[1]):
            runs.setdefault(edge.r, []).append(position)
            length = d.polygon.edges[edge.r - 1].lattice_length
            gap = edge.end[1] - edge.start[1]
            checks["gap_bound"].record(
                gap <= length,
                f"f_{d.j}: gap {gap} in the {edge.r}-interval exceeds lattice length {length}",
            )
    for r, positions in runs.items():
        checks["principal_runs"].record(
            positions[-1] - positions[0] + 1 == len(positions),
            f"f_{d.j}: principal edges of index {r} are not contiguous",
        )

    projections = [e.projection for e in d.classes
                   if e.kind in (EdgeKind.INTERMEDIATE1, EdgeKind.INTERMEDIATE2) and inner(e.start[1], e.end[1])]
    for first, second in zip(projections, projections[1:]):
        checks["projection_adjacency"].record(
            first[1] == second[0],
            f"f_{d.j}: projections {first} and {second} are not adjacent",
        )


def proof_invariant_report(system: Sequence[TropPoly], y: Mapping[Hashable, Fraction], window) -> ProofReport:
    """
    Check the convex-geometric statements behind root extraction on one instance.

    Strict checks: convexity of i -> a_i, the slope bounds between
    consecutive shifts (both conventions), persistence of extremal points
    on equality and separation on strict inequality, convexity of E,
    contiguity of r-intervals, the edge trichotomy and the gap bound inside
    r-intervals. Advisory checks (adjacency of intermediate projections,
    projection length accounting on ℰ) are reported but do not make the
    report fail.

    Raises:
        WitnessViolationError: If y is not a tropical zero over the window
    """
    _require_univariate_system(system)
    lo, hi = _window_bounds(window)
    violated = _violated_rows_in_window(system, y, lo, hi)
    if violated:
        raise WitnessViolationError(violated)

    checks = {name: CheckOutcome(name=name, strict=True) for name in STRICT_CHECKS}
    checks.update({name: CheckOutcome(name=name, strict=False) for name in ADVISORY_CHECKS})
    diagrams = [build_E(f, y, (lo, hi), j=j, strict=False) for j, f in enumerate(system, start=1)]
    for d in diagrams:
        _check_profile(d, lo, hi, checks)
        _check_chain(d, lo, hi, checks)

    report = ProofReport(
        N=hi,
        checks=checks,
        profiles={d.j: dict(d.profile.values) for d in diagrams},
    )
    try:
        envelope = intersect_E(diagrams)
    except ValueError as exc:
        checks["projection_length"].record(False, str(exc))
        return report

    sigma = system_degree(system)
    span = Fraction(hi - lo, 2)
    cut_lo, cut_hi = envelope.centre - span / 2, envelope.centre + span / 2
    intermediate = Fraction(0)
    noncommon = Fraction(0)
    for edge in envelope.edges:
        overlap = min(edge.end[1], cut_hi) - max(edge.start[1], cut_lo)
        if overlap <= 0:
            continue
        kinds = {kind for _, kind, _ in edge.sources}
        if kinds & {EdgeKind.INTERMEDIATE1, EdgeKind.INTERMEDIATE2}:
            intermediate += overlap
        elif not edge.is_common_principal(envelope.s):
            noncommon += overlap
    report.intermediate_length = intermediate
    report.noncommon_principal_length = noncommon
    checks["projection_length"].record(
        intermediate <= 3 * sigma,
        f"intermediate projection length {intermediate} exceeds 3·{sigma}",
    )
    checks["projection_length"].record(
        noncommon <= sigma,
        f"non-common principal length {noncommon} exceeds {sigma}",
    )
    return report


def minimal_infeasible_N(system: Sequence[TropPoly], engine: Engine = Engine.AUTO,
                         budget_factor: int = 10) -> Optional[int]:
    """
    Least N with C_N infeasible, scanning 0..4·Σ trdeg.

    Returns None for solvable systems, and also when every scanned C_N is
    feasible (which would contradict the bound).
    """
    _require_univariate_system(system)
    if univariate_common_root(system) is not None:
        return None
    for N in range(0, 4 * system_degree(system) + 1):
        if not decide(build_cayley(system, N), engine, budget_factor).feasible:
            return N
    return None


@dataclass
class TheoremReport:
    """Direct solvability against Cayley feasibility for one system."""

    system_degree: int
    N: int
    engine: Engine
    direct_solvable: bool
    common_root: Optional[Fraction]
    cayley_feasible: bool
    certifying_N: Optional[int] = None
    extracted_root: Optional[Fraction] = None
    extracted_root_ok: Optional[bool] = None
    witness_verified: Optional[bool] = None
    witness: Optional[Witness] = None
    failures: List[str] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.direct_solvable == self.cayley_feasible

    @property
    def ok(self) -> bool:
        return self.agree and not self.failures


def theorem1_verify(system: Sequence[TropPoly], engine: Engine = Engine.AUTO,
                    budget_factor: int = 10) -> TheoremReport:
    """
    Check that the system has a common root iff C_N has a tropical zero, N = 4·Σ trdeg.

    Unsolvable systems are settled by the least infeasible truncation
    (infeasibility of C_N' implies it for every larger N). Solvable systems
    decide C_N directly, extract a root from the witness and verify the
    witness built from the known root.
    """
    _require_univariate_system(system)
    engine = Engine(engine)
    sigma = system_degree(system)
    N = 4 * sigma
    root = univariate_common_root(system)

    if root is None:
        minimal = minimal_infeasible_N(system, engine, budget_factor)
        report = TheoremReport(
            system_degree=sigma, N=N, engine=engine, direct_solvable=False, common_root=None,
            cayley_feasible=minimal is None, certifying_N=minimal,
        )
        if minimal is None:
            report.failures.append(f"C_{N} is feasible although the system has no common root")
        logger.info(
            f"Unsolvable system, least infeasible truncation N={minimal}",
            extra={"N": N, "certifying_N": minimal, "agree": report.agree},
        )
        return report

    C = build_cayley(system, N)
    result = decide(C, engine, budget_factor)
    report = TheoremReport(
        system_degree=sigma, N=N, engine=engine, direct_solvable=True, common_root=root,
        cayley_feasible=result.feasible, witness=result.witness,
    )
    try:
        report.witness_verified = verify_witness(C, root_to_witness(system, root, C.cols)).ok
    except NotACommonZeroError as exc:
        report.witness_verified = False
        report.failures.append(str(exc))
    if report.witness_verified is False:
        report.failures.append(f"the witness of root {root} fails on C_{N}")

    if result.feasible:
        try:
            certificate = witness_to_root(system, result.witness, N)
            report.extracted_root = certificate.x
            report.extracted_root_ok = is_common_zero(system, [certificate.x])
        except (InvariantViolation, WitnessViolationError) as exc:
            report.extracted_root_ok = False
            report.failures.append(f"root extraction failed: {exc}")
    else:
        report.failures.append(f"C_{N} is infeasible although {root} is a common root")

    logger.info(
        f"Solvable system, C_{N} feasible={result.feasible}",
        extra={"N": N, "root": str(root), "agree": report.agree},
    )
    return report
