"""Tests for shift profiles, extremal diagrams and root extraction."""

import random
from fractions import Fraction

import pytest

from src.tropical.cayley import build_cayley
from src.tropical.errors import NotACommonZeroError, UnsupportedDimensionError, WitnessViolationError
from src.tropical.nullstellensatz import (
    ADVISORY_CHECKS,
    STRICT_CHECKS,
    EdgeKind,
    build_diagrams,
    build_E,
    extremal_points,
    intersect_E,
    minimal_infeasible_N,
    proof_invariant_report,
    root_to_witness,
    shift_profile,
    theorem1_verify,
    witness_to_root,
)
from src.tropical.polynomial import is_common_zero
from src.tropical.solver import Engine, decide_exact, verify_witness

from tests.conftest import univariate

X_PLUS_0 = univariate({1: 0, 0: 0})
X_PLUS_1 = univariate({1: 0, 0: 1})


def linear_witness(slope, lo, hi):
    """y_l = slope·l for the columns lo..hi."""
    return {(l,): Fraction(slope) * l for l in range(lo, hi + 1)}


@pytest.mark.unit
class TestShiftProfile:
    """Test the optimal vertical shifts a_i."""

    def test_constant_for_zero_witness(self):
        """Test X ⊕ 0 with y ≡ 0 has a_i = 0."""
        profile = shift_profile(X_PLUS_0, linear_witness(0, -2, 3), 2)
        assert profile.values == {i: Fraction(0) for i in range(-2, 3)}
        assert profile.window == (-2, 2)

    def test_linear_for_linear_witness(self):
        """Test X ⊕ 1 with y_l = l has a_i = -(i + 1)."""
        profile = shift_profile(X_PLUS_1, linear_witness(1, -2, 3), 2)
        assert [profile[i] for i in range(-2, 3)] == [Fraction(-(i + 1)) for i in range(-2, 3)]

    def test_dip_forces_shift_up(self):
        """Test y_0 = -5 raises a_0 to 5."""
        y = {(0,): Fraction(-5), (1,): Fraction(0)}
        assert shift_profile(X_PLUS_0, y, (0, 0))[0] == 5

    def test_translate_lies_on_or_above_lifted_points(self, quadratic):
        """Test coeff_k + a_i >= -y_{k+i} for every term, with equality exactly at contacts."""
        y = {(l,): Fraction((l * l) % 5) - l for l in range(-3, 6)}
        profile = shift_profile(quadratic, y, 3)
        for i in range(-3, 4):
            contacts = {int(l) for _, l in extremal_points(quadratic, y, i)}
            for (k,), coeff in quadratic.items():
                assert coeff + profile[i] >= -y[(k + i,)]
                assert (coeff + profile[i] == -y[(k + i,)]) == (k + i in contacts)
            assert contacts

    def test_explicit_window_must_be_ordered(self):
        """Test an empty window is rejected."""
        with pytest.raises(ValueError):
            shift_profile(X_PLUS_0, linear_witness(0, -2, 3), (2, -2))


@pytest.mark.unit
class TestExtremalPoints:
    """Test contact points of P_i with the lifted witness."""

    def test_zero_witness_ties_both_terms(self):
        """Test X ⊕ 0 with y ≡ 0 touches at both exponents."""
        points = extremal_points(X_PLUS_0, linear_witness(0, -1, 2), 0)
        assert points == ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(1)))

    def test_points_lie_on_the_lifted_witness(self):
        """Test X ⊕ 1 with y_l = l touches at (-y_l, l)."""
        points = extremal_points(X_PLUS_1, linear_witness(1, -1, 2), 0)
        assert points == ((Fraction(0), Fraction(0)), (Fraction(-1), Fraction(1)))

    def test_single_contact_flags_violation(self):
        """Test a dip leaves a single extremal point."""
        y = {(0,): Fraction(-5), (1,): Fraction(0)}
        assert extremal_points(X_PLUS_0, y, 0) == ((Fraction(5), Fraction(0)),)


@pytest.mark.unit
class TestBuildE:
    """Test extremal diagrams and edge classes."""

    def test_zero_witness_chain(self):
        """Test the chain of X ⊕ 0 over [-2, 2] is (0, l), l = -2..3."""
        d = build_E(X_PLUS_0, linear_witness(0, -2, 3), 2)
        assert d.chain == tuple((Fraction(0), Fraction(l)) for l in range(-2, 4))
        assert all(edge.kind is EdgeKind.PRINCIPAL and edge.r == 1 for edge in d.classes)
        assert d.N == 2

    def test_linear_witness_chain(self):
        """Test the chain of X ⊕ 1 with y_l = l has direction (-1, 1)."""
        d = build_E(X_PLUS_1, linear_witness(1, -2, 3), 2)
        assert d.chain == tuple((Fraction(-l), Fraction(l)) for l in range(-2, 4))
        assert {edge.slope for edge in d.classes} == {Fraction(-1)}
        assert all(edge.kind is EdgeKind.PRINCIPAL for edge in d.classes)

    def test_quadratic_chain_follows_first_edge(self, quadratic):
        """Test y_l = 2l touches 2 ⊕ 0X ⊕ 1X² along its first edge."""
        d = build_E(quadratic, linear_witness(2, -1, 3), (-1, 1))
        assert d.chain == tuple((Fraction(-2 * l), Fraction(l)) for l in range(-1, 3))
        assert all(edge.kind is EdgeKind.PRINCIPAL and edge.r == 1 for edge in d.classes)

    def test_height_interpolates_chain(self):
        """Test heights between chain vertices."""
        d = build_E(X_PLUS_1, linear_witness(1, -2, 3), 2)
        assert d.height(Fraction(1, 2)) == Fraction(-1, 2)
        with pytest.raises(ValueError):
            d.height(Fraction(10))

    def test_violated_witness_rejected(self):
        """Test rows with a single extremal point raise."""
        y = {(0,): Fraction(-5), (1,): Fraction(0)}
        with pytest.raises(WitnessViolationError) as exc_info:
            build_E(X_PLUS_0, y, (0, 0))
        assert exc_info.value.violated_rows == [(1, (0,))]


@pytest.mark.unit
class TestIntersectE:
    """Test the envelope ℰ."""

    def test_identical_diagrams(self):
        """Test the envelope of a diagram with itself is the diagram."""
        d = build_E(X_PLUS_0, linear_witness(0, -2, 3), 2)
        envelope = intersect_E([d, d])
        assert [v[1] for v in envelope.vertices] == [Fraction(l) for l in range(-2, 4)]
        assert len(envelope.common_principal_edges()) == len(envelope.edges)

    def test_common_principal_for_shared_zero_witness(self):
        """Test {X ⊕ 0, X ⊕ 0} with y ≡ 0 has only common principal edges."""
        diagrams = build_diagrams([X_PLUS_0, X_PLUS_0], linear_witness(0, -3, 4), 3)
        envelope = intersect_E(diagrams)
        assert envelope.edges
        assert all(edge.is_common_principal(2) for edge in envelope.edges)
        assert envelope.centre == Fraction(1, 2)

    def test_incompatible_diagrams_have_no_common_principal_edge(self):
        """Test chains of different slopes only cross."""
        first = build_E(X_PLUS_0, linear_witness(0, -2, 3), 2, j=1)
        second = build_E(X_PLUS_1, linear_witness(1, -2, 3), 2, j=2)
        envelope = intersect_E([first, second])
        assert Fraction(0) in [v[1] for v in envelope.vertices]
        assert envelope.common_principal_edges() == []
        assert {len(edge.sources) for edge in envelope.edges} == {1}

    def test_disjoint_ranges(self):
        """Test chains without a common exponent range."""
        first = build_E(X_PLUS_0, linear_witness(0, -2, 3), (-2, -1))
        second = build_E(X_PLUS_0, linear_witness(0, -2, 3), (2, 2))
        with pytest.raises(ValueError):
            intersect_E([first, second])


@pytest.mark.unit
class TestRootWitnessRoundTrip:
    """Test witness_to_root and root_to_witness."""

    def test_zero_witness_gives_root_zero(self):
        """Test {X ⊕ 0} with y ≡ 0 and N = 4 gives x = 0."""
        certificate = witness_to_root([X_PLUS_0], linear_witness(0, -4, 5), 4)
        assert certificate.x == 0
        assert certificate.touching == {1: (0, 1)}
        assert certificate.offsets == {1: Fraction(0)}

    def test_linear_witness_gives_root_one(self):
        """Test {X ⊕ 1, X ⊕ 1} with y_l = l and N = 8 gives x = 1."""
        certificate = witness_to_root([X_PLUS_1, X_PLUS_1], linear_witness(1, -8, 9), 8)
        assert certificate.x == 1
        assert certificate.edge.is_common_principal(2)

    def test_shared_root_pair(self, shared_root_pair):
        """Test {X ⊕ 0, 0 ⊕ 0X²} with y ≡ 0 and N = 12 gives x = 0."""
        certificate = witness_to_root(shared_root_pair, linear_witness(0, -12, 14), 12)
        assert certificate.x == 0
        assert is_common_zero(shared_root_pair, [certificate.x])

    def test_invalid_witness_rejected(self, disjoint_pair):
        """Test a non-witness is refused with its violated rows."""
        with pytest.raises(WitnessViolationError):
            witness_to_root(disjoint_pair, linear_witness(0, -8, 9), 8)

    def test_root_to_witness(self, shared_root_pair):
        """Test y_l = x·l verifies on C_N."""
        C = build_cayley([X_PLUS_1], 3)
        y = root_to_witness([X_PLUS_1], Fraction(1), C.cols)
        assert y == {col: Fraction(col[0]) for col in C.cols}
        assert verify_witness(C, y).ok
        D = build_cayley(shared_root_pair, 2)
        assert verify_witness(D, root_to_witness(shared_root_pair, 0, D.cols)).ok

    def test_root_to_witness_bivariate(self, bivariate_line):
        """Test the origin gives y ≡ 0 for 0 ⊕ X ⊕ Y."""
        C = build_cayley([bivariate_line], 1)
        y = root_to_witness([bivariate_line], (Fraction(0), Fraction(0)), C.cols)
        assert set(y.values()) == {Fraction(0)}
        assert verify_witness(C, y).ok

    def test_root_to_witness_rejects_non_zero(self):
        """Test a point that is not a common zero."""
        with pytest.raises(NotACommonZeroError):
            root_to_witness([X_PLUS_0], Fraction(5), [(0,), (1,)])

    def test_bivariate_extraction_unsupported(self, bivariate_line):
        """Test extraction is univariate only."""
        with pytest.raises(UnsupportedDimensionError):
            witness_to_root([bivariate_line], {}, 1)


@pytest.mark.unit
class TestProofInvariants:
    """Test the proof checks on known witnesses."""

    @pytest.mark.parametrize("f,slope,window", [
        (X_PLUS_0, 0, 3),
        (X_PLUS_1, 1, 3),
        (univariate({0: 2, 1: 0, 2: 1}), 2, 2),
    ])
    def test_all_checks_pass(self, f, slope, window):
        """Test root witnesses satisfy every strict check."""
        y = linear_witness(slope, -window, window + f.max_exponent())
        report = proof_invariant_report([f], y, window)
        assert report.ok
        assert set(report.checks) == set(STRICT_CHECKS) | set(ADVISORY_CHECKS)
        assert report.checks["profile_convexity"].checked > 0
        assert report.checks["slope_lower_bound"].checked == 2 * window
        assert report.N == window

    def test_profiles_reported(self):
        """Test a_i are included per polynomial."""
        report = proof_invariant_report([X_PLUS_1], linear_witness(1, -3, 4), 3)
        assert report.profiles[1][0] == -1
        assert report.violation_counts()["trichotomy"] == 0

    def test_violated_window_rejected(self, disjoint_pair):
        """Test a witness violating a row in the window raises."""
        with pytest.raises(WitnessViolationError):
            proof_invariant_report(disjoint_pair, linear_witness(0, -3, 4), 3)


@pytest.mark.unit
class TestIntermediateEdges:
    """Test witnesses whose chains leave the directions of P(f)."""

    QUADRATIC = univariate({0: 2, 1: 0, 2: 1})

    @staticmethod
    def bent_witness():
        """y_l = min(2l, 10 - l): P_2 ties on its first edge, P_3 on its second."""
        return {(l,): Fraction(min(2 * l, 10 - l)) for l in range(-8, 11)}

    @staticmethod
    def spiked_witness():
        """2l up to column 2, 9 - l from column 4, and column 3 too high to touch."""
        y = {(l,): Fraction(2 * l) for l in range(-6, 3)}
        y[(3,)] = Fraction(10)
        y.update({(l,): Fraction(9 - l) for l in range(4, 9)})
        return y

    def test_witnesses_verify(self):
        """Test both witnesses are tropical zeros of their Cayley matrices."""
        assert verify_witness(build_cayley([self.QUADRATIC], 8), self.bent_witness()).ok
        assert verify_witness(build_cayley([self.QUADRATIC], 6), self.spiked_witness()).ok

    def test_second_intermediate_edge(self):
        """Test a flat edge from P_2 to P_3 is of the second intermediate kind."""
        d = build_E(self.QUADRATIC, self.bent_witness(), 8)
        others = [e for e in d.classes if e.kind is not EdgeKind.PRINCIPAL]
        assert len(others) == 1
        (edge,) = others
        assert edge.kind is EdgeKind.INTERMEDIATE2
        assert edge.start == (Fraction(-6), Fraction(3))
        assert edge.end == (Fraction(-6), Fraction(4))
        assert edge.shift == 2
        assert edge.projection == (1, 1)
        assert d.provenance[3] == (2,) and d.provenance[4] == (3,)

    def test_first_intermediate_edge(self):
        """Test an edge between two contacts of P_2 skipping column 3."""
        d = build_E(self.QUADRATIC, self.spiked_witness(), 6)
        assert 3 not in d.provenance
        assert d.extremal[2] == ((Fraction(-4), Fraction(2)), (Fraction(-5), Fraction(4)))
        others = [e for e in d.classes if e.kind is not EdgeKind.PRINCIPAL]
        assert len(others) == 1
        (edge,) = others
        assert edge.kind is EdgeKind.INTERMEDIATE1
        assert edge.start == (Fraction(-4), Fraction(2))
        assert edge.end == (Fraction(-5), Fraction(4))
        assert edge.slope == Fraction(-1, 2)
        assert edge.shift == 2
        assert edge.projection == (0, 2)

    def test_principal_edges_around_the_bend(self):
        """Test the edges left of the bend follow edge 1 and those right of it edge 2."""
        d = build_E(self.QUADRATIC, self.bent_witness(), 8)
        kinds = [(e.kind, e.r) for e in d.classes]
        assert kinds[:11] == [(EdgeKind.PRINCIPAL, 1)] * 11
        assert kinds[12:] == [(EdgeKind.PRINCIPAL, 2)] * 6

    @pytest.mark.parametrize("witness,window", [("bent_witness", 8), ("spiked_witness", 6)])
    def test_proof_report_clean(self, witness, window):
        """Test every strict check passes on chains with an intermediate edge."""
        report = proof_invariant_report([self.QUADRATIC], getattr(self, witness)(), window)
        assert report.ok
        counts = report.violation_counts()
        assert all(counts[name] == 0 for name in STRICT_CHECKS)
        assert report.checks["trichotomy"].checked == len(build_E(self.QUADRATIC, getattr(self, witness)(), window).classes)

    def test_profile_bends_with_the_witness(self):
        """Test a_i = -2i - 2 up to the bend and i - 9 after it."""
        profile = shift_profile(self.QUADRATIC, self.bent_witness(), 8)
        assert all(profile[i] == -2 * i - 2 for i in range(-8, 3))
        assert all(profile[i] == i - 9 for i in range(3, 9))


@pytest.mark.unit
class TestTheorem:
    """Test theorem1_verify and minimal_infeasible_N."""

    def test_disjoint_pair(self, disjoint_pair):
        """Test {X ⊕ 0, X ⊕ 1} is unsolvable and C_0 already infeasible."""
        report = theorem1_verify(disjoint_pair)
        assert not report.direct_solvable
        assert not report.cayley_feasible
        assert report.agree and report.ok
        assert report.certifying_N == 0
        assert report.N == 8
        assert minimal_infeasible_N(disjoint_pair) == 0

    def test_shared_root_pair(self, shared_root_pair):
        """Test {X ⊕ 0, 0 ⊕ 0X²} is solvable and both round trips succeed."""
        report = theorem1_verify(shared_root_pair, Engine.EXACT)
        assert report.direct_solvable and report.cayley_feasible
        assert report.N == 12
        assert report.common_root == 0
        assert report.witness_verified
        assert report.extracted_root_ok
        assert report.ok
        assert minimal_infeasible_N(shared_root_pair) is None

    def test_single_polynomial(self, single_linear):
        """Test {X ⊕ 0} at N = 4."""
        report = theorem1_verify(single_linear, "lift")
        assert report.ok
        assert report.N == 4
        assert report.extracted_root == 0

    def test_single_term_system(self):
        """Test a monomial makes the system unsolvable through a short row."""
        report = theorem1_verify([univariate({2: 3})])
        assert not report.direct_solvable
        assert report.agree
        assert report.certifying_N == 0

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_random_systems_agree(self, seed):
        """Test direct solvability matches Cayley feasibility."""
        rng = random.Random(seed)
        for _ in range(5):
            system = [
                univariate({k: rng.randint(-3, 3) for k in rng.sample(range(5), rng.randint(2, 4))})
                for _ in range(rng.randint(1, 3))
            ]
            report = theorem1_verify(system)
            assert report.agree, report.failures
            if report.certifying_N is not None:
                assert report.certifying_N <= 4 * report.system_degree


def planted_polynomial(rng, roots):
    """c ⊙ X^e ⊙ ⊙_r (r ⊕ X) with some collinear terms raised off the polygon."""
    ordered = sorted(roots)
    d = len(ordered)
    shift = rng.randint(0, 1)
    base = rng.randint(-3, 3)
    terms = {}
    for k in range(d + 1):
        coeff = base + sum(ordered[: d - k])
        vertex = k in (0, d) or ordered[d - k - 1] != ordered[d - k]
        if not vertex and rng.random() < 0.5:
            coeff += rng.randint(1, 3)
        terms[k + shift] = coeff
    return univariate(terms)


def planted_system(rng, low_root):
    """Up to three polynomials sharing the roots low_root and low_root + 1."""
    shared = [low_root, low_root + 1]
    return [
        planted_polynomial(rng, shared + [rng.randint(-3, 3) for _ in range(rng.randint(0, 2))])
        for _ in range(rng.randint(1, 3))
    ]


def bent_witness(columns, high, low, bend):
    """min(high·l, low·l + c) over two common roots, the pieces meeting at l = bend."""
    offset = (high - low) * bend
    return {col: min(high * col[0], low * col[0] + offset) for col in columns}


@pytest.mark.slow
class TestSeededWitnessPairs:
    """Strict proof checks over 200 seeded systems with verified witnesses."""

    def test_solver_and_bent_witnesses(self):
        """Test no strict check fails on solver witnesses or on min-combinations of root witnesses."""
        totals = {name: 0 for name in STRICT_CHECKS}
        checked = {name: 0 for name in STRICT_CHECKS}
        intermediate = 0
        for k in range(200):
            rng = random.Random(f"pairs:{k}")
            low_root = rng.randint(-2, 1)
            system = planted_system(rng, low_root)
            if k % 2 == 0:
                N = rng.randint(1, 3)
                C = build_cayley(system, N)
                result = decide_exact(C)
                assert result.feasible, k
                y = result.witness
            else:
                N = max(f.max_exponent() for f in system) + 4
                C = build_cayley(system, N)
                bend = Fraction(rng.randint(-2, 1)) + Fraction(1, 2)
                y = bent_witness(C.cols, Fraction(low_root + 1), Fraction(low_root), bend)
                intermediate += sum(
                    1 for edge in build_E(system[0], y, N).classes
                    if edge.kind in (EdgeKind.INTERMEDIATE1, EdgeKind.INTERMEDIATE2)
                )
            assert verify_witness(C, y).ok, k
            report = proof_invariant_report(system, y, N)
            for name in STRICT_CHECKS:
                totals[name] += len(report.checks[name].violations)
                checked[name] += report.checks[name].checked
        assert totals == {name: 0 for name in STRICT_CHECKS}
        # every consecutive pair of shifts is either persistence or separation
        assert checked["edge_persistence"] + checked["shift_separation"] > 0
        for name in ("profile_convexity", "slope_lower_bound", "E_convexity", "trichotomy", "gap_bound"):
            assert checked[name] > 0, name
        assert intermediate >= 100
