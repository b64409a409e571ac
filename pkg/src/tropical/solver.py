"""
Feasibility of tropical linear systems.

A matrix has a tropical zero y when in every row the minimum of
c_{r,J} + y_J over the finite entries is attained at least twice. Two
engines decide this:

- exact: depth-first search choosing, row by row, a pair of columns that
  attain the row minimum. Each choice is a set of difference constraints;
  their consistency is kept incrementally (a negative cycle is a clash)
  and clashes drive conflict-directed backjumping.
- lift: a monotone heuristic that raises the unique minimizing column of
  the first violated row until the system stabilizes. It can only prove
  feasibility.
"""

import heapq
import itertools
import logging
import sys
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Hashable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import numpy as np

from src.tropical.cayley import CayleyMatrix, TropMatrix
from src.tropical.errors import InvariantViolation, MissingColumnError
from src.utils.metrics import metrics_collector

logger = logging.getLogger(__name__)

Witness = Dict[Hashable, Fraction]

# Refutation trees larger than this are summarized by their counters only.
MAX_TREE_NODES = 2000


class Engine(str, Enum):
    """Available decision engines."""
    EXACT = "exact"
    LIFT = "lift"
    AUTO = "auto"


class Status(str, Enum):
    """Outcome of a feasibility decision."""
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class RowCheck:
    """Verification outcome of one row under a candidate witness."""

    row: Hashable
    ok: bool
    minimum: Optional[Fraction]
    argmins: Tuple[Hashable, ...]

    @property
    def unique_argmin(self) -> Optional[Hashable]:
        return self.argmins[0] if len(self.argmins) == 1 else None


@dataclass(frozen=True)
class WitnessReport:
    """Per-row verification of a witness."""

    rows: Tuple[RowCheck, ...]

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.rows)

    @property
    def violated(self) -> List[RowCheck]:
        return [check for check in self.rows if not check.ok]


@dataclass
class RefutationNode:
    """One explored choice of the exact search."""

    row: Hashable
    pair: Tuple[Hashable, Hashable]
    outcome: str
    conflict_rows: Tuple[Hashable, ...] = ()
    children: List["RefutationNode"] = field(default_factory=list)


@dataclass
class Refutation:
    """Certificate that no choice of minimizing pairs is consistent."""

    reason: str
    nodes_explored: int = 0
    conflicts: int = 0
    tree: List[RefutationNode] = field(default_factory=list)
    truncated: bool = False


@dataclass
class FeasibilityResult:
    """Decision outcome with its witness or refutation."""

    status: Status
    engine: Engine
    witness: Optional[Witness] = None
    refutation: Optional[Refutation] = None
    steps: int = 0

    @property
    def feasible(self) -> bool:
        return self.status is Status.FEASIBLE


def verify_witness(C: TropMatrix, y: Mapping[Hashable, Fraction]) -> WitnessReport:
    """
    Check a candidate tropical zero row by row.

    A row is ok when the minimum of entry + y over its finite entries is
    attained at two or more columns; rows with fewer than two finite
    entries are always violated.

    Raises:
        MissingColumnError: If y lacks a column of C
    """
    for col in C.cols:
        if col not in y:
            raise MissingColumnError(col)
    checks = []
    for ri, label in enumerate(C.rows):
        entries = C.row_entries(ri)
        if not entries:
            checks.append(RowCheck(row=label, ok=False, minimum=None, argmins=()))
            continue
        values = {ci: value + Fraction(y[C.cols[ci]]) for ci, value in entries.items()}
        best = min(values.values())
        argmins = tuple(C.cols[ci] for ci in sorted(values) if values[ci] == best)
        checks.append(RowCheck(row=label, ok=len(argmins) >= 2, minimum=best, argmins=argmins))
    return WitnessReport(rows=tuple(checks))


def _normalize(C: TropMatrix, potential: Sequence[Fraction]) -> Witness:
    if not C.cols:
        return {}
    base = potential[0]
    return {col: Fraction(potential[ci]) - base for ci, col in enumerate(C.cols)}


def _short_rows(C: TropMatrix) -> List[Hashable]:
    return [label for ri, label in enumerate(C.rows) if len(C.row_entries(ri)) < 2]


class _DifferenceSystem:
    """
    Difference constraints y_v - y_u <= w with an incrementally maintained
    feasible potential and an undo trail.
    """

    def __init__(self, size: int):
        self.adj: List[List[Tuple[int, Fraction, int]]] = [[] for _ in range(size)]
        self.potential: List[Fraction] = [Fraction(0)] * size
        self._trail: List[Tuple[int, int, Optional[Fraction]]] = []

    def mark(self) -> int:
        return len(self._trail)

    def moved_since(self, mark: int) -> bool:
        """True if some potential changed after ``mark``."""
        return any(kind == 1 for kind, _, _ in self._trail[mark:])

    def undo(self, mark: int) -> None:
        while len(self._trail) > mark:
            kind, node, old = self._trail.pop()
            if kind == 0:
                self.adj[node].pop()
            else:
                self.potential[node] = old

    def add(self, u: int, v: int, w: Fraction, tag: int) -> Optional[Set[int]]:
        """
        Add y_v - y_u <= w.

        Returns:
            None if the constraints stay consistent, otherwise the tags of
            the constraints forming a negative cycle (the edge is not added)
        """
        pot = self.potential
        if pot[u] + w >= pot[v]:
            self.adj[u].append((v, w, tag))
            self._trail.append((0, u, None))
            return None

        changed: Dict[int, Fraction] = {v: pot[v]}
        pred: Dict[int, Tuple[int, int]] = {v: (u, tag)}
        pot[v] = pot[u] + w
        queue = deque([v])
        queued = {v}
        while queue:
            x = queue.popleft()
            queued.discard(x)
            px = pot[x]
            for z, wz, tz in self.adj[x]:
                candidate = px + wz
                if candidate >= pot[z]:
                    continue
                if z == u:
                    tags = {tag, tz}
                    walk, hops = x, 0
                    while walk != v:
                        walk, t = pred[walk]
                        tags.add(t)
                        hops += 1
                        if hops > len(pred):
                            raise InvariantViolation("predecessor chain does not return to the new edge")
                    for node, old in changed.items():
                        pot[node] = old
                    return tags
                if z not in changed:
                    changed[z] = pot[z]
                pot[z] = candidate
                pred[z] = (x, tz)
                if z not in queued:
                    queue.append(z)
                    queued.add(z)

        self.adj[u].append((v, w, tag))
        self._trail.append((0, u, None))
        for node, old in changed.items():
            self._trail.append((1, node, old))
        return None


_FOUND = object()


class _ExactSearch:
    """Pair-branching search with conflict-directed backjumping."""

    def __init__(self, C: TropMatrix):
        self.C = C
        self.rows = [sorted(C.row_entries(ri).items()) for ri in range(len(C.rows))]
        self.order = sorted(range(len(C.rows)), key=self._row_key)
        self.system = _DifferenceSystem(len(C.cols))
        self.nodes = 0
        self.conflicts = 0
        self.tree_size = 0
        self.truncated = False

    def _row_key(self, ri: int):
        support = len(self.C.row_entries(ri))
        label = self.C.rows[ri]
        if isinstance(self.C, CayleyMatrix):
            j, shift = label
            return (support, sum(abs(s) for s in shift), shift, j)
        return (support, ri)

    def all_rows_tied(self) -> bool:
        pot = self.system.potential
        for entries in self.rows:
            best = None
            count = 0
            for ci, value in entries:
                v = value + pot[ci]
                if best is None or v < best:
                    best, count = v, 1
                elif v == best:
                    count += 1
            if count < 2:
                return False
        return True

    def _assert_pair(self, ri: int, p: int, q: int, depth: int) -> Optional[Set[int]]:
        entries = dict(self.rows[ri])
        cp, cq = entries[p], entries[q]
        constraints = [(p, q, cp - cq), (q, p, cq - cp)]
        constraints += [(k, p, ck - cp) for k, ck in self.rows[ri] if k != p and k != q]
        for u, v, w in constraints:
            clash = self.system.add(u, v, w, depth)
            if clash is not None:
                return clash
        return None

    def _node(self, parent: List[RefutationNode], ri: int, pair: Tuple[int, int], outcome: str,
              conflict: FrozenSet[int] = frozenset()) -> Optional[RefutationNode]:
        if self.tree_size >= MAX_TREE_NODES:
            self.truncated = True
            return None
        self.tree_size += 1
        node = RefutationNode(
            row=self.C.rows[ri],
            pair=(self.C.cols[pair[0]], self.C.cols[pair[1]]),
            outcome=outcome,
            conflict_rows=tuple(self.C.rows[self.order[d]] for d in sorted(conflict)),
        )
        parent.append(node)
        return node

    def search(self, depth: int, parent: List[RefutationNode]):
        if depth == len(self.order):
            return _FOUND
        ri = self.order[depth]
        columns = [ci for ci, _ in self.rows[ri]]
        conflict: Set[int] = set()
        for pair in itertools.combinations(columns, 2):
            self.nodes += 1
            mark = self.system.mark()
            clash = self._assert_pair(ri, pair[0], pair[1], depth)
            if clash is not None:
                self.conflicts += 1
                self.system.undo(mark)
                conflict |= clash - {depth}
                self._node(parent, ri, pair, "conflict", frozenset(clash))
                continue
            if self.system.moved_since(mark) and self.all_rows_tied():
                return _FOUND
            node = self._node(parent, ri, pair, "explored")
            result = self.search(depth + 1, node.children if node is not None else [])
            if result is _FOUND:
                return _FOUND
            self.system.undo(mark)
            if depth not in result:
                if node is not None:
                    node.outcome = "backjump"
                return result
            conflict |= result - {depth}
        return frozenset(conflict)


def decide_exact(C: TropMatrix) -> FeasibilityResult:
    """
    Exact decision of tropical feasibility.

    Returns:
        FEASIBLE with a normalized witness (first column 0) that passes
        verify_witness, or INFEASIBLE with the explored refutation tree
    """
    short = _short_rows(C)
    if short:
        return FeasibilityResult(
            status=Status.INFEASIBLE,
            engine=Engine.EXACT,
            refutation=Refutation(reason=f"row {short[0]} has fewer than two finite entries"),
        )

    search = _ExactSearch(C)
    tree: List[RefutationNode] = []
    if search.all_rows_tied():
        result = _FOUND
    else:
        needed = 2 * len(C.rows) + 1000
        if sys.getrecursionlimit() < needed:
            sys.setrecursionlimit(needed)
        result = search.search(0, tree)

    metrics_collector.increment_counter("solver:nodes", search.nodes)
    metrics_collector.increment_counter("solver:conflicts", search.conflicts)

    if result is _FOUND:
        witness = _normalize(C, search.system.potential)
        logger.debug(
            f"Exact engine found a witness after {search.nodes} nodes",
            extra={"rows": len(C.rows), "cols": len(C.cols), "nodes": search.nodes},
        )
        return FeasibilityResult(status=Status.FEASIBLE, engine=Engine.EXACT,
                                 witness=witness, steps=search.nodes)

    logger.debug(
        f"Exact engine refuted after {search.nodes} nodes, {search.conflicts} conflicts",
        extra={"rows": len(C.rows), "cols": len(C.cols), "nodes": search.nodes},
    )
    return FeasibilityResult(
        status=Status.INFEASIBLE,
        engine=Engine.EXACT,
        refutation=Refutation(
            reason="every choice of minimizing pairs leads to a negative cycle",
            nodes_explored=search.nodes,
            conflicts=search.conflicts,
            tree=tree,
            truncated=search.truncated,
        ),
        steps=search.nodes,
    )


def _row_state(entries: Sequence[Tuple[int, Fraction]], y: Sequence[Fraction]):
    """(ok, unique argmin column, gap to the second smallest value)."""
    values = sorted((value + y[ci], ci) for ci, value in entries)
    if len(values) >= 2 and values[0][0] == values[1][0]:
        return True, None, None
    return False, values[0][1], values[1][0] - values[0][0]


def lift_heuristic(C: TropMatrix, step_budget: int) -> FeasibilityResult:
    """
    Monotone lifting heuristic.

    Starting from y = 0, repeatedly take the first violated row in row
    order and raise its unique minimizing column just enough to tie the
    second smallest value. Returns FEASIBLE on stabilization and UNKNOWN
    once step_budget lifts have been spent.
    """
    if _short_rows(C):
        return FeasibilityResult(status=Status.UNKNOWN, engine=Engine.LIFT)
    rows = [sorted(C.row_entries(ri).items()) for ri in range(len(C.rows))]
    col_rows: List[List[int]] = [[] for _ in C.cols]
    for ri, entries in enumerate(rows):
        for ci, _ in entries:
            col_rows[ci].append(ri)

    y = [Fraction(0)] * len(C.cols)
    violated: Set[int] = set()
    heap: List[int] = []
    for ri, entries in enumerate(rows):
        if not _row_state(entries, y)[0]:
            violated.add(ri)
            heap.append(ri)
    heapq.heapify(heap)

    steps = 0
    while heap:
        ri = heapq.heappop(heap)
        if ri not in violated:
            continue
        ok, column, gap = _row_state(rows[ri], y)
        if ok:
            violated.discard(ri)
            continue
        if steps >= step_budget:
            metrics_collector.increment_counter("lift:steps", steps)
            return FeasibilityResult(status=Status.UNKNOWN, engine=Engine.LIFT, steps=steps)
        y[column] += gap
        steps += 1
        for rj in col_rows[column]:
            if _row_state(rows[rj], y)[0]:
                violated.discard(rj)
            elif rj not in violated:
                violated.add(rj)
                heapq.heappush(heap, rj)
        if ri in violated:
            heapq.heappush(heap, ri)

    metrics_collector.increment_counter("lift:steps", steps)
    return FeasibilityResult(status=Status.FEASIBLE, engine=Engine.LIFT,
                             witness=_normalize(C, y), steps=steps)


def decide(C: TropMatrix, engine: Union[Engine, str] = Engine.AUTO,
           budget_factor: int = 10) -> FeasibilityResult:
    """
    Decide feasibility with the chosen engine.

    auto runs the lifting heuristic with budget factor·rows·cols and falls
    back to the exact engine when it does not stabilize, so it never
    answers UNKNOWN.
    """
    engine = Engine(engine)
    short = _short_rows(C)
    if short:
        return FeasibilityResult(
            status=Status.INFEASIBLE,
            engine=engine,
            refutation=Refutation(reason=f"row {short[0]} has fewer than two finite entries"),
        )
    if engine is Engine.EXACT:
        return decide_exact(C)
    budget = budget_factor * len(C.rows) * len(C.cols)
    lifted = lift_heuristic(C, budget)
    if engine is Engine.LIFT or lifted.status is not Status.UNKNOWN:
        return lifted
    logger.debug(f"Lift budget of {budget} exhausted, falling back to the exact engine")
    exact = decide_exact(C)
    exact.engine = Engine.AUTO
    return exact


def oracle_bound(C: TropMatrix) -> int:
    """Grid radius K = cols·(2M+1) with M the largest |entry|."""
    largest = max((abs(v) for _, _, v in C.iter_entries()), default=Fraction(0))
    return len(C.cols) * (2 * int(largest) + 1)


def brute_force_oracle(C: TropMatrix, bound: Optional[int] = None) -> Optional[Witness]:
    """
    Exhaustive integer-grid search for a tropical zero.

    Searches witnesses with the first coordinate 0 and the others in
    [-K, K], vectorized with numpy. Entries must be integers.

    Returns:
        The first witness in grid order, or None
    """
    for _, _, value in C.iter_entries():
        if value.denominator != 1:
            raise ValueError("the grid oracle needs integer entries")
    if _short_rows(C):
        return None
    m = len(C.cols)
    if m == 0:
        return {}
    K = oracle_bound(C) if bound is None else bound
    axes = [np.arange(-K, K + 1, dtype=np.int64)] * (m - 1)
    if axes:
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, m - 1)
        grid = np.hstack([np.zeros((grid.shape[0], 1), dtype=np.int64), grid])
    else:
        grid = np.zeros((1, 1), dtype=np.int64)

    alive = np.ones(grid.shape[0], dtype=bool)
    for ri in range(len(C.rows)):
        entries = sorted(C.row_entries(ri).items())
        cols = [ci for ci, _ in entries]
        costs = np.array([int(v) for _, v in entries], dtype=np.int64)
        values = grid[:, cols] + costs
        best = values.min(axis=1, keepdims=True)
        alive &= (values == best).sum(axis=1) >= 2
        if not alive.any():
            return None
    first = grid[int(np.argmax(alive))]
    return {col: Fraction(int(first[ci])) for ci, col in enumerate(C.cols)}
