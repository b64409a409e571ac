"""
Loading and validation of system, matrix and witness files.

All files are JSON. Parsing goes through the pydantic models in
src.models.schemas; every problem surfaces as a ParseError whose location
names the file and the offending field.
"""

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, Hashable, List, Sequence, Tuple, Union

from pydantic import BaseModel, ValidationError

from src.models.schemas import MatrixFile, SystemFile, WitnessFile
from src.tropical.cayley import CayleyMatrix, TropMatrix
from src.tropical.errors import DimensionMismatchError, ParseError
from src.tropical.polynomial import TropPoly
from src.tropical.semiring import INF, format_value, parse_rational, parse_value

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def format_column(label: Hashable) -> str:
    """Comma-joined exponents for Cayley columns, str() otherwise."""
    if isinstance(label, tuple):
        return ",".join(str(e) for e in label)
    return str(label)


def format_row(label: Hashable) -> str:
    """``j:i1,i2`` for Cayley rows, str() otherwise."""
    if isinstance(label, tuple) and len(label) == 2 and isinstance(label[1], tuple):
        return f"{label[0]}:{format_column(label[1])}"
    return str(label)


def parse_column(text: str, location: str = None) -> Tuple[int, ...]:
    """Inverse of format_column for Cayley columns."""
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ParseError(f"invalid column label {text!r}", location) from None


def _read_json(path: PathLike):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from None


def _validate(model: type, data, source: str) -> BaseModel:
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise ParseError(first["msg"], f"{source}:{where}" if where else source) from None


def _rational(value, location: str) -> Fraction:
    if isinstance(value, int):
        return Fraction(value)
    return parse_rational(value, location)


def parse_system(data, source: str = "<system>") -> List[TropPoly]:
    """Validate raw JSON data as a polynomial system."""
    model: SystemFile = _validate(SystemFile, data, source)
    system = []
    for j, poly in enumerate(model.polys):
        terms = []
        for k, term in enumerate(poly):
            location = f"{source}:polys.{j}.{k}"
            if len(term.exp) != model.n:
                raise ParseError(f"expected {model.n} exponents, got {len(term.exp)}", location)
            if any(e < 0 for e in term.exp):
                raise ParseError(f"negative exponent in {term.exp}", location)
            terms.append((term.exp, _rational(term.coef, f"{location}.coef")))
        try:
            system.append(TropPoly.from_terms(model.n, terms))
        except DimensionMismatchError as exc:
            raise ParseError(str(exc), f"{source}:polys.{j}") from None
    logger.debug(f"Loaded system of {len(system)} polynomials", extra={"source": source, "n": model.n})
    return system


def load_system(path: PathLike) -> List[TropPoly]:
    """Read a system file."""
    return parse_system(_read_json(path), str(path))


def dump_system(system: Sequence[TropPoly]) -> SystemFile:
    return SystemFile(
        n=system[0].n,
        polys=[
            [{"exp": list(exps), "coef": format_value(coeff)} for exps, coeff in f.items()]
            for f in system
        ],
    )


def _row_id(raw) -> Hashable:
    if isinstance(raw, tuple):
        return (raw[0], tuple(raw[1]))
    return raw


def _col_id(raw) -> Hashable:
    return tuple(raw) if isinstance(raw, list) else raw


def _row_json(label: Hashable):
    if isinstance(label, tuple) and len(label) == 2 and isinstance(label[1], tuple):
        return [label[0], list(label[1])]
    return list(label) if isinstance(label, tuple) else label


def _col_json(label: Hashable):
    return list(label) if isinstance(label, tuple) else label


def parse_matrix(data, source: str = "<matrix>") -> TropMatrix:
    """
    Validate raw JSON data as a sparse matrix.

    Rows ``[j, [I...]]`` and exponent-vector columns become the tuples a
    CayleyMatrix uses; integer or string labels are kept as they are.
    Entries are ``[row index, column index, value]`` triples; omitted
    entries and "inf" values are +infinity.
    """
    model: MatrixFile = _validate(MatrixFile, data, source)
    rows = [_row_id(raw) for raw in model.rows]
    cols = [_col_id(raw) for raw in model.cols]
    for field, labels in (("rows", rows), ("cols", cols)):
        seen = set()
        for index, label in enumerate(labels):
            if label in seen:
                raise ParseError(f"duplicate label {label!r}", f"{source}:{field}.{index}")
            seen.add(label)
    entries: Dict[Tuple[int, int], Fraction] = {}
    for k, (ri, ci, raw) in enumerate(model.entries):
        location = f"{source}:entries.{k}"
        if not (0 <= ri < len(rows) and 0 <= ci < len(cols)):
            raise ParseError(f"entry ({ri}, {ci}) outside a {len(rows)}x{len(cols)} matrix", location)
        if (ri, ci) in entries:
            raise ParseError(f"duplicate entry ({ri}, {ci})", location)
        value = Fraction(raw) if isinstance(raw, int) else parse_value(raw, f"{location}.2")
        if value is not INF:
            entries[(ri, ci)] = value
    return TropMatrix(rows, cols, entries)


def load_matrix(path: PathLike) -> TropMatrix:
    """Read a matrix file."""
    return parse_matrix(_read_json(path), str(path))


def dump_matrix(C: TropMatrix) -> MatrixFile:
    """Sparse matrix file contents; Cayley matrices keep n and N."""
    return MatrixFile(
        rows=[_row_json(label) for label in C.rows],
        cols=[_col_json(label) for label in C.cols],
        entries=[[ri, ci, format_value(value)] for ri, ci, value in C.iter_entries()],
        n=C.n if isinstance(C, CayleyMatrix) else None,
        N=C.N if isinstance(C, CayleyMatrix) else None,
    )


def parse_witness(data, C: TropMatrix, source: str = "<witness>") -> Dict[Hashable, Fraction]:
    """
    Validate raw JSON data as a witness for the columns of C.

    Keys are matched against the formatted column labels; unknown keys
    are rejected, missing ones are left for verify_witness to report.
    """
    model: WitnessFile = _validate(WitnessFile, data, source)
    by_text = {format_column(col): col for col in C.cols}
    witness = {}
    for key, raw in model.root.items():
        if key not in by_text:
            raise ParseError(f"unknown column {key!r}", source)
        witness[by_text[key]] = _rational(raw, f"{source}:{key}")
    return witness


def load_witness(path: PathLike, C: TropMatrix) -> Dict[Hashable, Fraction]:
    """Read a witness file for matrix C."""
    return parse_witness(_read_json(path), C, str(path))


def dump_witness(witness: Dict[Hashable, Fraction]) -> Dict[str, str]:
    return {format_column(col): format_value(value) for col, value in witness.items()}
