"""Tests for exact arithmetic and enumeration primitives."""

import random
from fractions import Fraction
from math import gcd

import pytest

from dtwc.exceptions import DTWCBudgetError, DTWCInputError
from dtwc.numerics import (
    Composition,
    OrientedTree,
    binomial,
    divisors,
    enumerate_compositions,
    enumerate_oriented_trees,
    format_rational,
    moebius,
    parse_rational,
    sign,
)


class TestRationals:
    """Formatting and parsing of exact rationals."""

    def test_format_integer(self) -> None:
        """Integers carry an explicit denominator."""
        assert format_rational(3) == "3/1"
        assert format_rational(Fraction(-2, 4)) == "-1/2"

    def test_parse_forms(self) -> None:
        """Strings, ints and Fractions all parse."""
        assert parse_rational("3/6") == Fraction(1, 2)
        assert parse_rational(" -4 ") == Fraction(-4)
        assert parse_rational(Fraction(2, 3)) == Fraction(2, 3)

    @pytest.mark.parametrize("text", ["abc", "1/0", "0.x"])
    def test_parse_rejects_garbage(self, text: str) -> None:
        """Non-rationals raise input errors."""
        with pytest.raises(DTWCInputError, match="not an exact rational"):
            parse_rational(text)

    def test_cross_multiplication(self) -> None:
        """Fraction sums agree with integer cross-multiplication."""
        for a in range(-5, 6):
            for b in range(1, 6):
                for c in range(-5, 6):
                    for d in range(1, 6):
                        assert Fraction(a, b) + Fraction(c, d) == Fraction(a * d + c * b, b * d)

    def test_random_pairs(self) -> None:
        """Field operations and the text form agree with integer arithmetic on random pairs."""
        rng = random.Random(20240501)
        for _ in range(1000):
            a, c = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
            b, d = rng.randint(1, 10**6), rng.randint(1, 10**6)
            x, y = Fraction(a, b), Fraction(c, d)
            assert x + y == Fraction(a * d + c * b, b * d)
            assert x * y == Fraction(a * c, b * d)
            assert (x < y) == (a * d < c * b)
            text = format_rational(x)
            assert parse_rational(text) == x
            num, den = text.split("/")
            assert int(den) > 0
            assert gcd(int(num), int(den)) == 1


class TestMoebius:
    """Möbius function."""

    @pytest.mark.parametrize(("m", "expected"), [(1, 1), (2, -1), (4, 0), (6, 1), (30, -1)])
    def test_values(self, m: int, expected: int) -> None:
        """Squarefree products get a sign, others vanish."""
        assert moebius(m) == expected

    def test_divisor_sum_vanishes(self) -> None:
        """Sum over divisors of n > 1 is zero."""
        assert sum(moebius(m) for m in divisors(12)) == 0

    def test_rejects_zero(self) -> None:
        """m = 0 is not in the domain."""
        with pytest.raises(DTWCInputError):
            moebius(0)


class TestBinomial:
    """Binomial coefficients."""

    @pytest.mark.parametrize(
        ("n", "k", "expected"), [(4, 2, 6), (0, 0, 1), (10, 5, 252), (3, 5, 0), (3, -1, 0)]
    )
    def test_values(self, n: int, k: int, expected: int) -> None:
        """Standard values, zero outside the range."""
        assert binomial(n, k) == expected


def test_divisors_and_sign() -> None:
    """Divisors come in increasing order; sign alternates."""
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert [sign(k) for k in range(-2, 3)] == [1, -1, 1, -1, 1]


class TestCompositions:
    """Ordered compositions."""

    def test_small(self) -> None:
        """Compositions of 3 in lexicographic order."""
        found = [c.parts for c in enumerate_compositions(3)]
        assert found == [(1, 1, 1), (1, 2), (2, 1), (3,)]

    @pytest.mark.parametrize("total", [1, 2, 6, 9])
    def test_count(self, total: int) -> None:
        """There are 2**(total-1) compositions."""
        assert sum(1 for _ in enumerate_compositions(total)) == 2 ** (total - 1)

    def test_blocks(self) -> None:
        """Blocks tile the index range."""
        composition = Composition((2, 1, 3))
        assert composition.total == 6
        assert composition.boundaries == (0, 2, 3, 6)
        assert [list(b) for b in composition.blocks()] == [[0, 1], [2], [3, 4, 5]]

    def test_budget(self) -> None:
        """Totals above the bound raise."""
        with pytest.raises(DTWCBudgetError, match="exceeds bound"):
            list(enumerate_compositions(5, max_total=4))

    def test_rejects_bad_parts(self) -> None:
        """Zero parts are invalid."""
        with pytest.raises(DTWCInputError):
            Composition((1, 0))


class TestTrees:
    """Labelled trees oriented low to high."""

    def test_single_vertex(self) -> None:
        """One tree with no edges."""
        assert list(enumerate_oriented_trees(1)) == [OrientedTree(1, ())]

    @pytest.mark.parametrize(("n", "count"), [(2, 1), (3, 3), (4, 16), (5, 125)])
    def test_cayley_counts(self, n: int, count: int) -> None:
        """n**(n-2) distinct trees."""
        trees = list(enumerate_oriented_trees(n))
        assert len(trees) == count
        assert len({t.edges for t in trees}) == count

    def test_orientation(self) -> None:
        """Every edge points from a lower to a higher label."""
        for tree in enumerate_oriented_trees(4):
            assert all(a < b for a, b in tree.edges)

    def test_rejects_cycle(self) -> None:
        """Disconnected edge sets are not trees."""
        with pytest.raises(DTWCInputError, match="do not connect"):
            OrientedTree(4, ((1, 2), (1, 3), (2, 3)))

    def test_budget(self) -> None:
        """Vertex counts above the bound raise."""
        with pytest.raises(DTWCBudgetError):
            list(enumerate_oriented_trees(9))
