"""
Min-plus semiring arithmetic over exact rationals.

Finite values are ``fractions.Fraction`` instances, +infinity is the
``INF`` singleton. Tropical addition is ``min`` and tropical
multiplication is ``+``; ``INF`` is neutral for the former and absorbing
for the latter.
"""

import re
from fractions import Fraction
from typing import Iterable, Optional, Union

from src.tropical.errors import ParseError


class Infinity:
    """The tropical zero: +infinity, larger than every rational."""

    _instance: Optional["Infinity"] = None

    def __new__(cls) -> "Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __hash__(self) -> int:
        return hash("tropical-infinity")

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return other is self

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __ge__(self, other: object) -> bool:
        return True

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()

Rational = Fraction
TropValue = Union[Fraction, Infinity]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def is_finite(a: TropValue) -> bool:
    """Return True for rationals, False for ``INF``."""
    return a is not INF


def t_add(a: TropValue, b: TropValue) -> TropValue:
    """Tropical sum: the minimum, with ``INF`` as neutral element."""
    if a is INF:
        return b
    if b is INF:
        return a
    return a if a <= b else b


def t_mul(a: TropValue, b: TropValue) -> TropValue:
    """Tropical product: ordinary addition, ``INF`` absorbs."""
    if a is INF or b is INF:
        return INF
    return a + b


def t_sum(values: Iterable[TropValue]) -> TropValue:
    """Tropical sum of any number of values (``INF`` for none)."""
    result: TropValue = INF
    for value in values:
        result = t_add(result, value)
    return result


def t_prod(values: Iterable[TropValue]) -> TropValue:
    """Tropical product of any number of values (``0`` for none)."""
    result: TropValue = Fraction(0)
    for value in values:
        result = t_mul(result, value)
    return result


def t_pow(a: TropValue, k: int) -> TropValue:
    """Tropical power a^k, i.e. k·a."""
    if a is INF:
        return INF if k != 0 else Fraction(0)
    return a * k


def to_rational(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce ints, Fractions and rational strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ParseError(f"not a rational: {value!r}")


def parse_rational(text: str, location: Optional[str] = None) -> Fraction:
    """
    Parse ``"p/q"`` or ``"p"`` into a Fraction.

    Args:
        text: The string to parse
        location: Optional position used in the error message

    Returns:
        The rational in lowest terms

    Raises:
        ParseError: On anything but an integer or integer ratio, or q = 0
    """
    match = _RATIONAL_RE.match(text) if isinstance(text, str) else None
    if not match:
        raise ParseError(f"invalid rational {text!r}", location)
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ParseError(f"zero denominator in {text!r}", location)
    return Fraction(numerator, denominator)


def parse_value(text: str, location: Optional[str] = None) -> TropValue:
    """Parse a rational string or ``"inf"``."""
    if isinstance(text, str) and text.strip().lower() == "inf":
        return INF
    return parse_rational(text, location)


def format_value(a: TropValue) -> str:
    """Serialize a value as ``"p/q"``, ``"p"`` or ``"inf"``."""
    if a is INF:
        return "inf"
    return str(Fraction(a))
