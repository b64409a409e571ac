"""
Tropical monomials and polynomials.

A tropical polynomial is stored as a mapping from integer exponent
vectors to rational coefficients. Evaluating it at a point gives the
minimum over its monomials; the point is a tropical zero when that
minimum is attained by at least two monomials.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple, Union

from src.tropical.errors import DimensionMismatchError, ParseError
from src.tropical.semiring import to_rational

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
Point = Tuple[Fraction, ...]


@dataclass(frozen=True)
class Monomial:
    """A single term a ⊗ X^I."""

    coeff: Fraction
    exps: Exponent

    @property
    def degree(self) -> int:
        return sum(self.exps)

    def value_at(self, x: Sequence[Fraction]) -> Fraction:
        """Classical value of the linear form a + <I, x>."""
        return self.coeff + sum((e * xi for e, xi in zip(self.exps, x)), Fraction(0))


@dataclass(frozen=True)
class EvalResult:
    """Minimum value of a polynomial at a point and the terms attaining it."""

    value: Fraction
    argmins: FrozenSet[Exponent]


class TropPoly:
    """
    Immutable tropical polynomial in n variables.

    Terms are kept sorted by exponent vector. Duplicate exponents given to
    ``from_terms`` are merged with ⊕ (the smaller coefficient wins).
    """

    __slots__ = ("_n", "_terms", "_index")

    def __init__(self, n: int, terms: Mapping[Exponent, Fraction]):
        if n < 1:
            raise ValueError("number of variables must be positive")
        if not terms:
            raise ValueError("a tropical polynomial needs at least one term")
        normalized: Dict[Exponent, Fraction] = {}
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise DimensionMismatchError(n, len(exps), "exponent vector")
            normalized[exps] = to_rational(coeff)
        self._n = n
        self._terms: Tuple[Tuple[Exponent, Fraction], ...] = tuple(sorted(normalized.items()))
        self._index: Dict[Exponent, Fraction] = dict(self._terms)

    @classmethod
    def from_terms(
        cls,
        n: int,
        terms: Iterable[Tuple[Sequence[int], Union[int, str, Fraction]]],
        allow_negative: bool = False,
    ) -> "TropPoly":
        """
        Build a polynomial from (exponents, coefficient) pairs.

        Args:
            n: Number of variables
            terms: Pairs of exponent vector and coefficient
            allow_negative: Accept negative exponents (internal shifts only)

        Returns:
            The deduplicated polynomial
        """
        merged: Dict[Exponent, Fraction] = {}
        for exps, coeff in terms:
            key = tuple(int(e) for e in exps)
            if len(key) != n:
                raise DimensionMismatchError(n, len(key), "exponent vector")
            if not allow_negative and any(e < 0 for e in key):
                raise ParseError(f"negative exponent in {list(key)}")
            value = to_rational(coeff)
            if key in merged:
                merged[key] = min(merged[key], value)
            else:
                merged[key] = value
        return cls(n, merged)

    @classmethod
    def univariate(cls, terms: Mapping[int, Union[int, str, Fraction]]) -> "TropPoly":
        """Shorthand for n = 1: ``{exponent: coefficient}``."""
        return cls.from_terms(1, [((k,), c) for k, c in terms.items()])

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Tuple[Tuple[Exponent, Fraction], ...]:
        return self._terms

    def monomials(self) -> List[Monomial]:
        return [Monomial(coeff, exps) for exps, coeff in self._terms]

    @property
    def support(self) -> List[Exponent]:
        return [exps for exps, _ in self._terms]

    def coefficient(self, exps: Exponent) -> Fraction:
        return self._index[tuple(exps)]

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TropPoly):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._n, self._terms))

    def __repr__(self) -> str:
        return f"TropPoly({format_poly(self)})"

    def min_exponent(self) -> int:
        """Smallest exponent of a univariate polynomial."""
        return self._terms[0][0][0]

    def max_exponent(self) -> int:
        """Largest exponent of a univariate polynomial."""
        return self._terms[-1][0][0]


def _check_point(f: TropPoly, x: Sequence) -> Point:
    if len(x) != f.n:
        raise DimensionMismatchError(f.n, len(x), "point")
    return tuple(to_rational(xi) for xi in x)


def monomial_values(f: TropPoly, x: Sequence[Fraction]) -> Dict[Exponent, Fraction]:
    """Value of every term of f at x."""
    point = _check_point(f, x)
    return {m.exps: m.value_at(point) for m in f.monomials()}


def evaluate(f: TropPoly, x: Sequence[Fraction]) -> EvalResult:
    """
    Evaluate f at a finite point.

    Returns:
        The minimum over terms and the exponents attaining it

    Raises:
        DimensionMismatchError: If x does not have n coordinates
    """
    values = monomial_values(f, x)
    best = min(values.values())
    argmins = frozenset(exps for exps, value in values.items() if value == best)
    return EvalResult(value=best, argmins=argmins)


def is_tropical_zero(f: TropPoly, x: Sequence[Fraction]) -> bool:
    """True iff the minimum of f at x is attained by at least two terms."""
    return len(evaluate(f, x).argmins) >= 2


def is_common_zero(system: Sequence[TropPoly], x: Sequence[Fraction]) -> bool:
    """True iff x is a tropical zero of every polynomial of the system."""
    return all(is_tropical_zero(f, x) for f in system)


def monomial_shift(f: TropPoly, shift: Sequence[int]) -> TropPoly:
    """Multiply f by X^I: translate every exponent by I."""
    if len(shift) != f.n:
        raise DimensionMismatchError(f.n, len(shift), "shift vector")
    moved = {
        tuple(e + s for e, s in zip(exps, shift)): coeff
        for exps, coeff in f.items()
    }
    return TropPoly(f.n, moved)


def trop_degree(f: TropPoly) -> int:
    """Largest exponent sum over the terms of f."""
    return max(sum(exps) for exps in f.support)


def system_degree(system: Sequence[TropPoly]) -> int:
    """Sum of the tropical degrees of a system."""
    return sum(trop_degree(f) for f in system)


def format_poly(f: TropPoly) -> str:
    """Human-readable rendering such as ``0 ⊕ 1⊗X^2``."""
    names = ["X"] if f.n == 1 else (["X", "Y", "Z"] if f.n <= 3 else [f"X{k + 1}" for k in range(f.n)])
    parts = []
    for exps, coeff in f.items():
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e != 0:
                factors.append(f"{name}^{e}")
        if not factors:
            parts.append(str(coeff))
        elif coeff == 0:
            parts.append("⊗".join(factors))
        else:
            parts.append("⊗".join([str(coeff)] + factors))
    return " ⊕ ".join(parts)
