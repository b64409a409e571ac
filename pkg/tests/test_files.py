"""Tests for system, matrix and witness file handling."""

from fractions import Fraction

import pytest

from src.tropical.cayley import build_cayley
from src.tropical.errors import ParseError
from src.tropical.semiring import INF
from src.tropical.solver import verify_witness
from src.services.files import (
    dump_matrix,
    dump_system,
    dump_witness,
    format_column,
    format_row,
    load_matrix,
    load_system,
    load_witness,
    parse_column,
    parse_matrix,
    parse_system,
    parse_witness,
)

from tests.conftest import system_json, univariate

DISJOINT_FILE = {
    "n": 1,
    "polys": [
        [{"exp": [1], "coef": "0"}, {"exp": [0], "coef": "0"}],
        [{"exp": [1], "coef": "0"}, {"exp": [0], "coef": "1"}],
    ],
}

DISJOINT_C0_FILE = {
    "rows": [[1, [0]], [2, [0]]],
    "cols": [[0], [1]],
    "entries": [[0, 0, "0"], [0, 1, "0"], [1, 0, "1"], [1, 1, "0"]],
}


@pytest.mark.unit
class TestParseSystem:
    """Test system file validation."""

    def test_documented_layout(self, disjoint_pair):
        """Test the n / polys / exp / coef layout parses."""
        assert parse_system(DISJOINT_FILE) == disjoint_pair

    def test_valid_system(self, disjoint_pair):
        """Test a system survives dumping and parsing."""
        assert parse_system(system_json(disjoint_pair)) == disjoint_pair

    def test_integer_and_fraction_coefficients(self):
        """Test coefficients may be JSON integers or rational strings."""
        data = {"n": 1, "polys": [[{"exp": [0], "coef": 3}, {"exp": [2], "coef": "-1/2"}]]}
        (f,) = parse_system(data)
        assert f.coefficient((0,)) == 3
        assert f.coefficient((2,)) == Fraction(-1, 2)

    def test_zero_denominator_located(self):
        """Test 1/0 is reported with the term it appears in."""
        data = {"n": 1, "polys": [[{"exp": [0], "coef": "0"}, {"exp": [1], "coef": "1/0"}]]}
        with pytest.raises(ParseError) as exc_info:
            parse_system(data, "sys.json")
        assert exc_info.value.location == "sys.json:polys.0.1.coef"

    def test_wrong_exponent_count(self):
        """Test exponent vectors must have n entries."""
        data = {"n": 2, "polys": [[{"exp": [1], "coef": "0"}]]}
        with pytest.raises(ParseError, match="expected 2 exponents"):
            parse_system(data)

    def test_negative_exponent(self):
        """Test negative exponents are refused."""
        data = {"n": 1, "polys": [[{"exp": [-1], "coef": "0"}]]}
        with pytest.raises(ParseError, match="negative exponent"):
            parse_system(data)

    @pytest.mark.parametrize("data", [
        {"n": 1, "polys": []},
        {"n": 0, "polys": [[{"exp": [0], "coef": "0"}]]},
        {"n": 1, "polys": [[]]},
        {"n": 1, "polys": [[{"exp": [0], "coef": "0"}]], "extra": 1},
        {"n": 1, "polys": [[{"exp": [0], "coef": "0", "note": "x"}]]},
        {"polys": [[{"exp": [0], "coef": "0"}]]},
        {"n": 1, "polynomials": [{"terms": [{"exps": [0], "coeff": "0"}]}]},
    ])
    def test_schema_violations(self, data):
        """Test structural problems become ParseError."""
        with pytest.raises(ParseError):
            parse_system(data)

    def test_load_system(self, system_file, shared_root_pair):
        """Test reading a system from disk."""
        assert load_system(system_file(shared_root_pair)) == shared_root_pair

    def test_invalid_json_located(self, tmp_path):
        """Test JSON syntax errors carry line and column."""
        path = tmp_path / "broken.json"
        path.write_text('{"n": 1,\n "polys": [}', encoding="utf-8")
        with pytest.raises(ParseError) as exc_info:
            load_system(path)
        assert exc_info.value.location.startswith(f"{path}:2:")

    def test_missing_file(self, tmp_path):
        """Test unreadable files are parse errors."""
        with pytest.raises(ParseError, match="cannot read file"):
            load_system(tmp_path / "absent.json")

    def test_dump_system(self, quadratic):
        """Test dumped systems use the file layout and parse back."""
        data = dump_system([quadratic]).model_dump()
        assert set(data) == {"n", "polys"}
        assert {"exp": [2], "coef": "1"} in data["polys"][0]
        assert parse_system(data) == [quadratic]


@pytest.mark.unit
class TestMatrixFiles:
    """Test sparse matrix file validation."""

    def test_cayley_layout(self, disjoint_pair):
        """Test [j, [I]] rows and exponent columns become Cayley labels."""
        C = parse_matrix(DISJOINT_C0_FILE)
        expected = build_cayley(disjoint_pair, 0)
        assert C.rows == expected.rows == ((1, (0,)), (2, (0,)))
        assert C.cols == expected.cols == ((0,), (1,))
        assert C.dense() == expected.dense()

    def test_omitted_and_inf_entries(self):
        """Test omitted entries and "inf" values are absent."""
        C = parse_matrix({"rows": [0, 1], "cols": [0, 1, 2],
                          "entries": [[0, 0, "0"], [0, 1, "inf"], [0, 2, 2], [1, 0, "1/2"]]})
        assert C.shape == (2, 3)
        assert C.rows == (0, 1)
        assert C.entry(0, 1) is INF
        assert C.entry(0, 2) == 2
        assert C.entry(1, 0) == Fraction(1, 2)
        assert C.entry(1, 2) is INF

    def test_string_labels(self):
        """Test plain string labels are kept."""
        C = parse_matrix({"rows": ["r"], "cols": ["a", "b"], "entries": [[0, 0, "0"], [0, 1, "0"]]})
        assert C.rows == ("r",)
        assert C.cols == ("a", "b")

    def test_index_out_of_range(self):
        """Test triples must address an existing cell."""
        with pytest.raises(ParseError) as exc_info:
            parse_matrix({"rows": [0], "cols": [0], "entries": [[0, 0, "0"], [0, 1, "0"]]}, "m.json")
        assert exc_info.value.location == "m.json:entries.1"

    def test_duplicate_entry(self):
        """Test a cell may be given once."""
        with pytest.raises(ParseError, match="duplicate entry"):
            parse_matrix({"rows": [0], "cols": [0, 1], "entries": [[0, 0, "0"], [0, 0, "1"]]})

    def test_duplicate_label(self):
        """Test row and column labels are unique."""
        with pytest.raises(ParseError) as exc_info:
            parse_matrix({"rows": [[1, [0]], [1, [0]]], "cols": [[0]], "entries": []}, "m.json")
        assert exc_info.value.location == "m.json:rows.1"

    def test_bad_entry_located(self):
        """Test malformed values name their triple."""
        with pytest.raises(ParseError) as exc_info:
            parse_matrix({"rows": [0], "cols": [0, 1], "entries": [[0, 0, "0"], [0, 1, "x"]]}, "m.json")
        assert exc_info.value.location == "m.json:entries.1.2"

    @pytest.mark.parametrize("data", [
        {"rows": [["0", "0"]]},
        {"rows": [0], "cols": [0]},
        {"rows": [0], "cols": [0], "entries": [[0, 0]]},
        {"rows": [0], "cols": [0], "entries": [], "row_labels": ["a"]},
    ])
    def test_schema_violations(self, data):
        """Test dense or incomplete files are refused."""
        with pytest.raises(ParseError):
            parse_matrix(data)

    def test_cayley_dump_is_sparse(self, write_json, disjoint_pair):
        """Test a dumped Cayley matrix lists only finite entries and reloads."""
        C = build_cayley(disjoint_pair, 1)
        data = dump_matrix(C).model_dump(mode="json")
        assert data["n"] == 1 and data["N"] == 1
        assert data["rows"][0] == [1, [-1]]
        assert data["cols"][0] == [-1]
        assert len(data["entries"]) == sum(1 for _ in C.iter_entries())
        assert all(value != "inf" for _, _, value in data["entries"])
        loaded = load_matrix(write_json("c.json", data))
        assert loaded.rows == C.rows
        assert loaded.cols == C.cols
        assert loaded.dense() == C.dense()

    def test_loaded_cayley_accepts_witness(self, write_json, shared_root_pair, zero_witness):
        """Test witness keys match the columns of a loaded Cayley matrix."""
        C = build_cayley(shared_root_pair, 1)
        loaded = load_matrix(write_json("c.json", dump_matrix(C).model_dump(mode="json")))
        y = load_witness(write_json("w.json", dump_witness(zero_witness(C.cols))), loaded)
        assert verify_witness(loaded, y).ok

    def test_monomial_row_dumped(self, write_json):
        """Test a row with one finite entry survives dumping."""
        C = build_cayley([univariate({1: 0})], 0)
        loaded = load_matrix(write_json("c.json", dump_matrix(C).model_dump(mode="json")))
        assert loaded.row_entries(0) == C.row_entries(0)


@pytest.mark.unit
class TestWitnessFiles:
    """Test witness file validation and labels."""

    def test_labels(self):
        """Test row and column label formats."""
        assert format_column((1, -2)) == "1,-2"
        assert format_row((2, (0, 3))) == "2:0,3"
        assert format_row("r") == "r"
        assert parse_column("1,-2") == (1, -2)
        with pytest.raises(ParseError):
            parse_column("1;2")

    def test_parse_witness(self, disjoint_pair):
        """Test keys map onto Cayley columns."""
        C = build_cayley(disjoint_pair, 0)
        y = parse_witness({"0": "0", "1": 2}, C)
        assert y == {(0,): Fraction(0), (1,): Fraction(2)}

    def test_unknown_column(self, disjoint_pair):
        """Test keys outside the matrix are rejected."""
        C = build_cayley(disjoint_pair, 0)
        with pytest.raises(ParseError, match="unknown column"):
            parse_witness({"5": "0"}, C)

    def test_load_and_dump(self, write_json, shared_root_pair, zero_witness):
        """Test dumped witnesses load back for the same matrix."""
        C = build_cayley(shared_root_pair, 1)
        y = zero_witness(C.cols)
        path = write_json("w.json", dump_witness(y))
        assert load_witness(path, C) == y
