"""Tests for invariant tables, pair invariants and the loop-quiver closed forms."""

import random
from fractions import Fraction
from typing import Any, Dict

import pytest
from pydantic import ValidationError
from sympy import binomial

from dtwc.exceptions import DTWCInputError
from dtwc.invariants import (
    InvariantTable,
    TableKind,
    bps_from_dt,
    dt_from_bps,
    dt_from_pair_series,
    integrality_report,
    mloop_dthat,
    mloop_dtbar,
    mloop_euler,
    mloop_ndt,
    pair_series,
    pair_transform,
    reineke_check,
    reineke_converse,
    weighted_euler,
)
from dtwc.lattice import NumericalContext, class_gcd, divide_class
from dtwc.models import TableDocument
from dtwc.numerics import divisors, sign
from dtwc.series import SeriesBound, TruncatedSeries


def _dim0_dtbar(chi: int, top: int) -> Dict[tuple[int, ...], Fraction]:
    return {
        (m,): -chi * sum((Fraction(1, k * k) for k in range(1, m + 1) if m % k == 0), Fraction(0))
        for m in range(1, top + 1)
    }


def _random_divisor_closed(rng: random.Random, rank: int) -> Dict[tuple[int, ...], Fraction]:
    """Random values on a random set of classes with coordinates up to 12, closed under division."""
    entries: Dict[tuple[int, ...], Fraction] = {}
    for _ in range(rng.randint(1, 6)):
        klass = tuple(rng.randint(0, 12) for _ in range(rank))
        if not any(klass):
            continue
        for m in divisors(class_gcd(klass)):
            part = divide_class(klass, m)
            if part not in entries:
                entries[part] = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
    return entries


class TestMoebius:
    """Test conversion between generalized and BPS invariants."""

    def test_multiple_cover_is_one_bps_state(self, rank_one_ctx, multiple_cover) -> None:
        """``1/m**2`` in every class comes from a single BPS state in class 1."""
        table = InvariantTable(rank_one_ctx, TableKind.DTBAR, multiple_cover)
        bps = bps_from_dt(table)
        assert bps.kind is TableKind.DTHAT
        assert bps.value((1,)) == 1
        assert all(bps.value((m,)) == 0 for m in range(2, 7))

    def test_points_have_constant_bps(self, rank_one_ctx) -> None:
        """Zero-dimensional sheaves give ``-chi`` in every class."""
        table = InvariantTable(rank_one_ctx, TableKind.DTBAR, _dim0_dtbar(2, 8))
        bps = bps_from_dt(table)
        assert all(bps.value((m,)) == -2 for m in range(1, 9))

    def test_inverse(self, rank_one_ctx) -> None:
        """dt_from_bps undoes bps_from_dt."""
        table = InvariantTable(rank_one_ctx, TableKind.DTBAR, _dim0_dtbar(-3, 6))
        assert dt_from_bps(bps_from_dt(table)) == table

    @pytest.mark.parametrize("rank", [1, 2])
    def test_random_round_trips(self, rank: int) -> None:
        """Both Möbius directions invert each other on random division-closed tables."""
        rng = random.Random(100 + rank)
        ctx = NumericalContext.abstract(rank=rank)
        for _ in range(50):
            entries = _random_divisor_closed(rng, rank)
            dtbar = InvariantTable(ctx, TableKind.DTBAR, entries)
            dthat = InvariantTable(ctx, TableKind.DTHAT, entries)
            assert dt_from_bps(bps_from_dt(dtbar)) == dtbar
            assert bps_from_dt(dt_from_bps(dthat)) == dthat

    def test_missing_divisor(self, rank_one_ctx) -> None:
        """Every divisor class must be present."""
        table = InvariantTable(rank_one_ctx, TableKind.DTBAR, {(2,): Fraction(1)})
        with pytest.raises(DTWCInputError, match="missing class"):
            bps_from_dt(table)

    def test_primitive_classes_unchanged(self) -> None:
        """Primitive classes have no proper divisors."""
        ctx = NumericalContext.abstract(rank=2)
        entries = {(1, 0): Fraction(3), (0, 1): Fraction(-1, 2), (1, 1): Fraction(5)}
        table = InvariantTable(ctx, TableKind.DTBAR, entries)
        assert bps_from_dt(table).nonzero() == entries

    def test_integrality_report(self, rank_one_ctx, multiple_cover) -> None:
        """Generalized multiple-cover values are not integers past class 1."""
        table = InvariantTable(rank_one_ctx, TableKind.DTBAR, multiple_cover)
        report = integrality_report(table)
        assert not report.integral
        assert report.witnesses == [[m] for m in range(2, 7)]
        assert integrality_report(bps_from_dt(table)).integral


class TestTableDocument:
    """Test JSON documents for invariant tables."""

    def test_round_trip(self, rank_one_ctx, grassmann_table_document: Dict[str, Any]) -> None:
        """Documents load and dump unchanged."""
        document = TableDocument.model_validate(grassmann_table_document)
        table = InvariantTable.from_document(document, rank_one_ctx)
        assert table.kind is TableKind.DTBAR
        assert table.value((2,)) == Fraction(1, 4)
        assert table.value((5,)) == 0
        assert table.to_document().model_dump(by_alias=True) == grassmann_table_document

    def test_duplicate_class(self, rank_one_ctx, grassmann_table_document) -> None:
        """A class may appear only once."""
        grassmann_table_document["entries"].append({"class": [1], "value": "2"})
        document = TableDocument.model_validate(grassmann_table_document)
        with pytest.raises(DTWCInputError, match="appears twice"):
            InvariantTable.from_document(document, rank_one_ctx)

    def test_outside_cone(self, rank_one_ctx) -> None:
        """Classes outside the positive cone are rejected."""
        with pytest.raises(DTWCInputError, match="positive cone"):
            InvariantTable(rank_one_ctx, TableKind.J, {(-1,): Fraction(1)})

    def test_empty_class(self) -> None:
        """Empty class vectors fail validation."""
        with pytest.raises(ValidationError):
            TableDocument.model_validate(
                {"kind": "J", "entries": [{"class": [], "value": "1"}]}
            )


class TestPairTransform:
    """Test pair invariants from generalized invariants."""

    @pytest.mark.parametrize("rank", range(1, 9))
    def test_grassmannian(self, rank: int, multiple_cover) -> None:
        """Framed points of one rigid class count quotients of a rank-P space."""
        ctx = NumericalContext.abstract(rank=1, framing=(rank,))
        for m in range(1, 6):
            expected = sign(m * (rank - m)) * int(binomial(rank, m))
            assert pair_transform(ctx, multiple_cover, (m,)) == expected

    @pytest.mark.parametrize("rank", [1, 2, 5])
    def test_unsigned_grassmannian(self, rank: int) -> None:
        """The unsigned form with ``(-1)**(m-1)/m**2`` counts plain binomials."""
        ctx = NumericalContext.abstract(rank=1, framing=(rank,))
        j_values = {(m,): Fraction(sign(m - 1), m * m) for m in range(1, 6)}
        for m in range(1, 6):
            value = pair_transform(ctx, j_values, (m,), signed=False)
            assert value == int(binomial(rank, m))

    @pytest.mark.parametrize(("p1", "p2", "d"), [(1, 1, 0), (1, 2, 1), (3, 1, 2), (2, 2, 3)])
    def test_two_rigid_classes(self, p1: int, p2: int, d: int) -> None:
        """Two rigid classes joined by ``d`` extensions."""
        ctx = NumericalContext.abstract([[0, d], [-d, 0]], framing=(p1, p2))
        dt = {(1, 0): Fraction(1), (0, 1): Fraction(1), (1, 1): Fraction(sign(d - 1) * d, 2)}
        j_values = {(1, 0): Fraction(1), (0, 1): Fraction(1), (1, 1): Fraction(d, 2)}
        expected = sign(p1 + p2 + d) * (p1 + d) * p2
        assert pair_transform(ctx, dt, (1, 1)) == expected
        assert pair_transform(ctx, j_values, (1, 1), signed=False) == abs(expected)

    def test_empty_support(self, rank_one_ctx) -> None:
        """No invariants below the target means no pairs."""
        assert pair_transform(rank_one_ctx, {}, (3,)) == 0
        assert pair_transform(rank_one_ctx, {(4,): Fraction(1)}, (3,)) == 0

    def test_needs_framing(self, multiple_cover) -> None:
        """A framing functional is required."""
        with pytest.raises(DTWCInputError, match="framing functional"):
            pair_transform(NumericalContext.abstract(rank=1), multiple_cover, (1,))


class TestPairSeries:
    """Test the exponential generating function of pair invariants."""

    @pytest.mark.parametrize("rank", [1, 2, 3, 4])
    def test_matches_term_form(self, rank: int, multiple_cover) -> None:
        """Series coefficients equal the term-form pair invariants."""
        ctx = NumericalContext.abstract(rank=1, framing=(rank,))
        series = pair_series(ctx, multiple_cover, 5)
        assert series.get((0,)) == 1
        for m in range(1, 6):
            assert series.get((m,)) == pair_transform(ctx, multiple_cover, (m,))

    def test_extraction_inverts(self, rank_one_ctx, multiple_cover) -> None:
        """Reading invariants back from the series recovers the table."""
        series = pair_series(rank_one_ctx, multiple_cover, 6)
        table = dt_from_pair_series(rank_one_ctx, series, stability="trivial")
        assert table.kind is TableKind.DTBAR
        assert table.nonzero() == multiple_cover

    @pytest.mark.parametrize(("framing", "degree"), [((2,), 6), ((1, 3), 4)])
    def test_random_extraction_round_trips(self, framing: tuple[int, ...], degree: int) -> None:
        """Extraction inverts the exponential form on random tables."""
        rng = random.Random(sum(framing) * 31 + degree)
        ctx = NumericalContext.abstract(rank=len(framing), framing=framing)
        bound = SeriesBound.total_degree(len(framing), degree)
        classes = [m for m in bound.monomials() if any(m)]
        for _ in range(50):
            table = {
                k: Fraction(rng.randint(-6, 6), rng.randint(1, 5))
                for k in rng.sample(classes, rng.randint(1, len(classes)))
            }
            series = pair_series(ctx, table, bound)
            back = dt_from_pair_series(ctx, series)
            assert back.nonzero() == {k: v for k, v in table.items() if v}

    def test_rejects_nonzero_form(self, one_edge_ctx) -> None:
        """The exponential form needs a vanishing antisymmetric form on the support."""
        with pytest.raises(DTWCInputError, match="exponential form"):
            pair_series(one_edge_ctx, {(1, 0): Fraction(1), (0, 1): Fraction(1)}, 2)

    def test_arity_mismatch(self, rank_one_ctx, multiple_cover) -> None:
        """Explicit bounds must match the lattice rank."""
        with pytest.raises(DTWCInputError, match="arity"):
            pair_series(rank_one_ctx, multiple_cover, SeriesBound.total_degree(2, 3))

    def test_zero_framing_with_log_term(self) -> None:
        """A log coefficient at a class with F = 0 cannot be read back."""
        ctx = NumericalContext.abstract(rank=2, framing=(1, 0))
        series = TruncatedSeries(SeriesBound.total_degree(2, 2), {(0, 0): 1, (0, 1): 1})
        with pytest.raises(DTWCInputError, match="F = 0"):
            dt_from_pair_series(ctx, series)


class TestFunctionalEquation:
    """Test the rank-one functional equation."""

    @pytest.mark.parametrize("n", [-2, -1, 1, 2, 3])
    def test_converse_recovers_input(self, n: int) -> None:
        """Solving for b and then back for a returns the input."""
        a = [1, -2, 3, 0, 1]
        check = reineke_check(n, a, 5)
        back = reineke_converse(n, [Fraction(v) for v in check.b], 5)
        assert [Fraction(v) for v in back.a] == [Fraction(v) for v in a]
        assert back.integral

    def test_zero_input(self) -> None:
        """The zero sequence solves to zero."""
        report = reineke_check(2, [], 4)
        assert [Fraction(v) for v in report.b] == [0, 0, 0, 0]
        assert report.integral
        assert report.witnesses == []

    def test_exponent_zero_flips_sign(self) -> None:
        """With exponent zero both products coincide, so b = -a."""
        report = reineke_check(0, [1, 2, 3], 3)
        assert [Fraction(v) for v in report.b] == [-1, -2, -3]

    @pytest.mark.parametrize("m", [2, 3])
    def test_loop_quiver_bps_solve_integrally(self, m: int) -> None:
        """Loop-quiver BPS invariants with exponent 1 - m give an integral b sequence."""
        a = [-mloop_dthat(m, i) for i in range(1, 11)]
        report = reineke_check(1 - m, a, 10)
        assert report.integral, report.witnesses
        assert len(report.b) == 10
        if m == 3:
            assert [Fraction(v) for v in report.b[:8]] == [
                -1, -2, -10, -60, -425, -3296, -27447, -240312,
            ]

    def test_order_must_be_positive(self) -> None:
        """Order zero is rejected by both directions."""
        with pytest.raises(DTWCInputError, match="order"):
            reineke_check(1, [1], 0)
        with pytest.raises(DTWCInputError, match="order"):
            reineke_converse(1, [1], 0)


class TestLoopQuivers:
    """Test closed forms for the one-vertex loop quivers."""

    @pytest.mark.parametrize(
        ("m", "d", "e", "expected"),
        [(2, 1, 1, 1), (2, 2, 1, 2), (3, 1, 1, 1), (1, 3, 2, 4), (0, 2, 3, 3), (4, 0, 2, 1)],
    )
    def test_euler(self, m: int, d: int, e: int, expected: int) -> None:
        """Euler characteristics of framed moduli."""
        assert mloop_euler(m, d, e) == expected

    def test_euler_rejects_zero_framing(self) -> None:
        """The framing rank must be positive."""
        with pytest.raises(DTWCInputError):
            mloop_euler(2, 1, 0)

    def test_ndt_sign(self) -> None:
        """Signs follow the parity of the moduli dimension."""
        assert mloop_ndt(2, 2, 1) == 2
        assert mloop_ndt(1, 1, 1) == -1

    def test_dtbar(self) -> None:
        """Generalized invariants of small classes."""
        assert mloop_dtbar(1, 1) == -1
        assert mloop_dtbar(2, 2) == Fraction(-3, 4)
        assert mloop_dtbar(2, 3) == Fraction(10, 9)

    def test_dthat_small_values(self) -> None:
        """BPS invariants of the one- and two-loop quivers."""
        assert [mloop_dthat(1, d) for d in range(1, 5)] == [-1, 0, 0, 0]
        assert [mloop_dthat(2, d) for d in range(1, 4)] == [1, -1, 1]

    @pytest.mark.parametrize("m", range(1, 6))
    def test_dthat_integral(self, m: int) -> None:
        """BPS invariants of loop quivers are integers."""
        assert all(mloop_dthat(m, d).denominator == 1 for d in range(1, 21))

    def test_weighted_euler(self) -> None:
        """Weighted Euler characteristic negates the weighted sum."""
        assert weighted_euler([(Fraction(-1, 4), 4), (Fraction(1, 2), 1)]) == Fraction(1, 2)
        assert weighted_euler([(Fraction(1, 2), 1), (Fraction(1, 2), 1)]) == -1
        assert weighted_euler([]) == 0
