"""
Bivariate (n = 2) solvability by arrangement sampling.

Two terms a⊗X^I and b⊗X^J tie on the line <I - J, x> + (a - b) = 0. The
common zero set of a system is a union of faces of the arrangement of
all tie lines, so testing one point of every vertex, edge and cell
decides solvability exactly.
"""

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from src.tropical.cayley import build_cayley
from src.tropical.errors import InvariantViolation, UnsupportedDimensionError
from src.tropical.nullstellensatz import root_to_witness
from src.tropical.polynomial import Exponent, TropPoly, is_common_zero
from src.tropical.solver import Engine, decide, verify_witness

logger = logging.getLogger(__name__)

PlaneXY = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class TieLine:
    """The line α·x + β·y + γ = 0 where two terms of f_j take equal values."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    j: int = 1
    pair: Tuple[Exponent, Exponent] = ((0, 0), (0, 0))

    @property
    def norm(self) -> Fraction:
        return abs(self.alpha) + abs(self.beta)

    def residual(self, p: PlaneXY) -> Fraction:
        return self.alpha * p[0] + self.beta * p[1] + self.gamma

    def distance(self, p: PlaneXY) -> Fraction:
        """L1-normalized residual, an exact stand-in for the distance."""
        return abs(self.residual(p)) / self.norm

    def key(self) -> Tuple[Fraction, Fraction, Fraction]:
        """Scale-free identity of the line."""
        scale = self.norm
        if self.alpha < 0 or (self.alpha == 0 and self.beta < 0):
            scale = -scale
        return (self.alpha / scale, self.beta / scale, self.gamma / scale)

    def direction(self) -> PlaneXY:
        return (-self.beta / self.norm, self.alpha / self.norm)

    def normal(self) -> PlaneXY:
        return (self.alpha / self.norm, self.beta / self.norm)

    def parameter(self, p: PlaneXY) -> Fraction:
        d = self.direction()
        return d[0] * p[0] + d[1] * p[1]

    def anchor(self) -> PlaneXY:
        """The point where the line meets the axis of its parametrisation."""
        if self.beta != 0:
            return (Fraction(0), -self.gamma / self.beta)
        return (-self.gamma / self.alpha, Fraction(0))


def _require_bivariate(f: TropPoly) -> None:
    if f.n != 2:
        raise UnsupportedDimensionError(f"expected a bivariate polynomial, got n={f.n}")


def tie_lines(f: TropPoly, j: int = 1) -> List[TieLine]:
    """One line per pair of terms of f with a nonempty tie locus."""
    _require_bivariate(f)
    lines = []
    for (ei, a), (ek, b) in itertools.combinations(f.items(), 2):
        alpha = Fraction(ei[0] - ek[0])
        beta = Fraction(ei[1] - ek[1])
        if alpha == 0 and beta == 0:
            continue
        lines.append(TieLine(alpha=alpha, beta=beta, gamma=a - b, j=j, pair=(ei, ek)))
    return lines


def _intersection(first: TieLine, second: TieLine) -> Optional[PlaneXY]:
    det = first.alpha * second.beta - second.alpha * first.beta
    if det == 0:
        return None
    x = (first.beta * second.gamma - second.beta * first.gamma) / det
    y = (second.alpha * first.gamma - first.alpha * second.gamma) / det
    return (x, y)


def _arrangement(system: Sequence[TropPoly]) -> Tuple[List[TieLine], Dict[int, List[PlaneXY]]]:
    unique: Dict[Tuple, TieLine] = {}
    for j, f in enumerate(system, start=1):
        for line in tie_lines(f, j):
            unique.setdefault(line.key(), line)
    lines = [unique[key] for key in sorted(unique)]
    on_line: Dict[int, Set[PlaneXY]] = {k: set() for k in range(len(lines))}
    for (a, first), (b, second) in itertools.combinations(enumerate(lines), 2):
        point = _intersection(first, second)
        if point is not None:
            on_line[a].add(point)
            on_line[b].add(point)
    ordered = {
        k: sorted(points, key=lines[k].parameter)
        for k, points in on_line.items()
    }
    return lines, ordered


def arrangement_samples(system: Sequence[TropPoly]) -> List[PlaneXY]:
    """
    One or more points of every face of the tie-line arrangement, sorted.

    Vertices, midpoints of bounded edges, points one unit beyond the
    outermost vertices, an anchor point on every line without vertices,
    and for each edge sample two points pushed off the line by ±ε along
    its normal, ε being half the smallest positive normalized distance
    from an edge sample to a line.
    """
    lines, ordered = _arrangement(system)
    vertices: Set[PlaneXY] = set()
    edge_samples: List[Tuple[int, PlaneXY]] = []
    for k, line in enumerate(lines):
        points = ordered[k]
        vertices.update(points)
        if not points:
            edge_samples.append((k, line.anchor()))
            continue
        d = line.direction()
        first, last = points[0], points[-1]
        edge_samples.append((k, (first[0] - d[0], first[1] - d[1])))
        edge_samples.append((k, (last[0] + d[0], last[1] + d[1])))
        for p, q in zip(points, points[1:]):
            edge_samples.append((k, ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)))

    distances = [
        other.distance(p)
        for _, p in edge_samples
        for other in lines
        if other.residual(p) != 0
    ]
    epsilon = min(distances) / 2 if distances else Fraction(1)

    samples: Set[PlaneXY] = set(vertices)
    for k, p in edge_samples:
        samples.add(p)
        nx, ny = lines[k].normal()
        samples.add((p[0] + epsilon * nx, p[1] + epsilon * ny))
        samples.add((p[0] - epsilon * nx, p[1] - epsilon * ny))
    return sorted(samples)


def bivariate_solve(system: Sequence[TropPoly]) -> Optional[PlaneXY]:
    """
    A common tropical zero of a bivariate system, or None.

    Returns:
        The first common zero among the arrangement samples in sorted order
    """
    if not system:
        raise ValueError("empty polynomial system")
    for f in system:
        _require_bivariate(f)
    samples = arrangement_samples(system)
    for point in samples:
        if is_common_zero(system, point):
            logger.debug(f"Common zero found among {len(samples)} samples", extra={"s": len(system)})
            return point
    return None


def random_probe(system: Sequence[TropPoly], count: int, rng: random.Random,
                 spread: int = 10) -> Optional[PlaneXY]:
    """
    Search for a common zero at the arrangement vertices and at random points.

    Used as an independent check of the sampler: random points have small
    denominators, so they can land on tie lines.
    """
    _, ordered = _arrangement(system)
    candidates = sorted({p for points in ordered.values() for p in points})
    for _ in range(count):
        candidates.append((
            Fraction(rng.randint(-spread * 2, spread * 2), 2),
            Fraction(rng.randint(-spread * 2, spread * 2), 2),
        ))
    for point in candidates:
        if is_common_zero(system, point):
            return point
    return None


@dataclass
class ProbeRow:
    """Feasibility of one truncation C_N."""

    N: int
    rows: int
    cols: int
    feasible: bool
    root_witness_verified: Optional[bool] = None


@dataclass
class ProbeReport:
    """Per-N feasibility table against the brute-force ground truth."""

    ground_truth: Optional[PlaneXY]
    table: List[ProbeRow] = field(default_factory=list)

    @property
    def solvable(self) -> bool:
        return self.ground_truth is not None

    @property
    def first_infeasible_N(self) -> Optional[int]:
        for row in self.table:
            if not row.feasible:
                return row.N
        return None


def conjecture_probe(system: Sequence[TropPoly], N_max: int, engine: Engine = Engine.AUTO,
                     budget_factor: int = 10) -> ProbeReport:
    """
    Decide C_N for N = 0..N_max next to the ground truth from bivariate_solve.

    For solvable systems every C_N must be feasible and the witness built
    from the common zero must verify. For unsolvable ones the table only
    records where infeasibility first shows up; no N is claimed sufficient.

    Raises:
        InvariantViolation: If a solvable system has an infeasible C_N or a
            failing root witness
    """
    zero = bivariate_solve(system)
    report = ProbeReport(ground_truth=zero)
    for N in range(0, N_max + 1):
        C = build_cayley(system, N)
        result = decide(C, engine, budget_factor)
        row = ProbeRow(N=N, rows=len(C.rows), cols=len(C.cols), feasible=result.feasible)
        if zero is not None:
            row.root_witness_verified = verify_witness(C, root_to_witness(system, zero, C.cols)).ok
            if not row.feasible or not row.root_witness_verified:
                raise InvariantViolation(
                    f"system with common zero {[str(v) for v in zero]} fails at N={N}"
                )
        report.table.append(row)
    logger.debug(
        f"Probe finished: solvable={report.solvable}, first infeasible N={report.first_infeasible_N}",
        extra={"N_max": N_max},
    )
    return report
