"""
Tropical matrices and the tropical Cayley matrix of a polynomial system.

The Cayley matrix has a row for every product X^I ⊗ f_j and a column for
every monomial X^J; the entry is the coefficient of X^{J-I} in f_j (in
convex form) or +infinity. Only the truncations C_N, with |I|_1 <= N,
are materialized.
"""

import itertools
import logging
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from src.tropical.errors import DimensionMismatchError, UnknownRowError
from src.tropical.newton import convex_form
from src.tropical.polynomial import Exponent, TropPoly, monomial_shift
from src.tropical.semiring import INF, TropValue

logger = logging.getLogger(__name__)

RowId = Tuple[int, Exponent]


class TropMatrix:
    """
    Sparse matrix over the tropical semiring; absent entries are +infinity.

    Rows and columns carry hashable labels; entries are addressed by
    (row index, column index).
    """

    def __init__(
        self,
        rows: Sequence[Hashable],
        cols: Sequence[Hashable],
        entries: Dict[Tuple[int, int], Fraction],
    ):
        self.rows: Tuple[Hashable, ...] = tuple(rows)
        self.cols: Tuple[Hashable, ...] = tuple(cols)
        self._row_entries: List[Dict[int, Fraction]] = [dict() for _ in self.rows]
        for (ri, ci), value in entries.items():
            if value is INF:
                continue
            if not (0 <= ri < len(self.rows) and 0 <= ci < len(self.cols)):
                raise IndexError(f"entry ({ri}, {ci}) outside a {self.shape} matrix")
            self._row_entries[ri][ci] = Fraction(value)
        self._row_index = {label: ri for ri, label in enumerate(self.rows)}
        self._col_index = {label: ci for ci, label in enumerate(self.cols)}

    @classmethod
    def from_dense(
        cls,
        values: Sequence[Sequence[TropValue]],
        rows: Optional[Sequence[Hashable]] = None,
        cols: Optional[Sequence[Hashable]] = None,
    ) -> "TropMatrix":
        """Build from a list of rows; ``INF`` marks absent entries."""
        width = max((len(row) for row in values), default=0)
        entries = {
            (ri, ci): value
            for ri, row in enumerate(values)
            for ci, value in enumerate(row)
            if value is not INF
        }
        return cls(
            rows if rows is not None else list(range(len(values))),
            cols if cols is not None else list(range(width)),
            entries,
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), len(self.cols))

    def row_entries(self, ri: int) -> Dict[int, Fraction]:
        """Finite entries of a row as column index -> value."""
        return self._row_entries[ri]

    def entry(self, ri: int, ci: int) -> TropValue:
        return self._row_entries[ri].get(ci, INF)

    def row_position(self, label: Hashable) -> int:
        try:
            return self._row_index[label]
        except KeyError:
            raise UnknownRowError(f"unknown row {label!r}") from None

    def col_position(self, label: Hashable) -> Optional[int]:
        return self._col_index.get(label)

    def iter_entries(self) -> Iterable[Tuple[int, int, Fraction]]:
        for ri, row in enumerate(self._row_entries):
            for ci in sorted(row):
                yield ri, ci, row[ci]

    def dense(self) -> List[List[TropValue]]:
        return [[self.entry(ri, ci) for ci in range(len(self.cols))] for ri in range(len(self.rows))]

    def __repr__(self) -> str:
        return f"{type(self).__name__}(shape={self.shape})"


class CayleyMatrix(TropMatrix):
    """Truncated tropical Cayley matrix C_N of a polynomial system."""

    def __init__(
        self,
        n: int,
        N: int,
        system: Sequence[TropPoly],
        rows: Sequence[RowId],
        cols: Sequence[Exponent],
        entries: Dict[Tuple[int, int], Fraction],
    ):
        super().__init__(rows, cols, entries)
        self.n = n
        self.N = N
        self.system: Tuple[TropPoly, ...] = tuple(system)

    def to_raw(self) -> TropMatrix:
        """The same entries as a plain labelled matrix."""
        entries = {(ri, ci): value for ri, ci, value in self.iter_entries()}
        return TropMatrix(self.rows, self.cols, entries)

    def submatrix(self, N: int) -> "CayleyMatrix":
        """The truncation C_N' of the same system (N' may be any size)."""
        return build_cayley(self.system, N)


def shift_vectors(n: int, N: int) -> List[Exponent]:
    """Integer vectors I with |I|_1 <= N, in lexicographic order."""
    if N < 0:
        raise ValueError("truncation order N must be nonnegative")
    return [
        shift
        for shift in itertools.product(range(-N, N + 1), repeat=n)
        if sum(abs(s) for s in shift) <= N
    ]


def build_cayley(system: Sequence[TropPoly], N: int) -> CayleyMatrix:
    """
    Build the truncated Cayley matrix C_N.

    Rows are (j, I) for 1 <= j <= s and |I|_1 <= N, ordered by j then I.
    Columns are the exponents occurring in some shifted polynomial,
    sorted. Every polynomial is put in convex form first.

    Raises:
        ValueError: For an empty system or negative N
        DimensionMismatchError: If the polynomials disagree on n
    """
    if not system:
        raise ValueError("empty polynomial system")
    n = system[0].n
    for f in system:
        if f.n != n:
            raise DimensionMismatchError(n, f.n, "polynomial")
    shifts = shift_vectors(n, N)
    canonical = [convex_form(f) for f in system]

    shifted_rows: List[Tuple[RowId, TropPoly]] = []
    for j, f in enumerate(canonical, start=1):
        for shift in shifts:
            shifted_rows.append(((j, shift), monomial_shift(f, shift)))

    cols = sorted({exps for _, g in shifted_rows for exps in g.support})
    col_index = {col: ci for ci, col in enumerate(cols)}
    entries: Dict[Tuple[int, int], Fraction] = {}
    for ri, (_, g) in enumerate(shifted_rows):
        for exps, coeff in g.items():
            entries[(ri, col_index[exps])] = coeff

    logger.debug(
        f"Built C_{N}: {len(shifted_rows)} rows x {len(cols)} cols",
        extra={"n": n, "N": N, "s": len(system)},
    )
    return CayleyMatrix(
        n=n,
        N=N,
        system=system,
        rows=[row for row, _ in shifted_rows],
        cols=cols,
        entries=entries,
    )


def row_polynomial(C: TropMatrix, row: Hashable) -> TropPoly:
    """
    The polynomial X^I ⊗ f_j a row encodes.

    Raises:
        UnknownRowError: If the row is not in C
    """
    ri = C.row_position(row)
    cols = C.cols
    n = len(cols[0]) if cols and isinstance(cols[0], tuple) else 1
    terms = {
        (cols[ci] if isinstance(cols[ci], tuple) else (cols[ci],)): value
        for ci, value in C.row_entries(ri).items()
    }
    return TropPoly(n, terms)
