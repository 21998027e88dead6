"""Tests for the wall-crossing coefficients and transformation law."""

import itertools
import random
from fractions import Fraction

import pytest

from dtwc.const import STABILITY_DOT, STABILITY_TILDE
from dtwc.exceptions import DTWCBudgetError, DTWCInputError
from dtwc.invariants import pair_transform
from dtwc.lattice import NumericalContext, SlopeStability, TrivialStability
from dtwc.models import DTWCSettings
from dtwc.numerics import enumerate_oriented_trees, sign
from dtwc.wallcross import (
    Decomposition,
    LieElement,
    coeff_S,
    coeff_U,
    coeff_V,
    composition_sign_sum,
    enumerate_decompositions,
    framed_u_closed_form,
    lie_bracket,
    nested_bracket_pair_formula,
    transform,
    transform_vform,
)

FRAME = (0, 1)
ALPHA = (1, 0)

# Slopes on A2 with the simple at a below, then above, the simple at b
LOW = SlopeStability.of([0, 1], [1, 1], "low")
HIGH = SlopeStability.of([1, 0], [1, 1], "high")


@pytest.fixture
def dot_tilde(framed_ctx: NumericalContext):
    """The taudot and tautilde stabilities of the framing extension."""
    return framed_ctx.stability(STABILITY_DOT), framed_ctx.stability(STABILITY_TILDE)


def _classes_below(target: tuple[int, int]) -> list[tuple[int, int]]:
    return [
        (a, b) for a in range(target[0] + 1) for b in range(target[1] + 1) if a + b > 0
    ]


def _random_table(
    rng: random.Random, classes: list[tuple[int, int]]
) -> dict[tuple[int, int], Fraction]:
    return {k: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for k in classes}


def _random_slope(rng: random.Random, name: str) -> SlopeStability:
    return SlopeStability.of(
        [rng.randint(-3, 3) for _ in range(2)], [rng.randint(1, 3) for _ in range(2)], name
    )


def _edge_form(
    ctx: NumericalContext, edges: list[tuple[int, int]], kappa: tuple[tuple[int, int], ...]
) -> int:
    product = 1
    for a, b in edges:
        product *= ctx.chi_bar(kappa[a - 1], kappa[b - 1])
    return product


def _assert_reversals_flip(ctx: NumericalContext, kappa, tau, tau_tilde) -> None:
    n = len(kappa)
    for tree in enumerate_oriented_trees(n):
        edges = list(tree.edges)
        v = coeff_V(ctx, n, edges, kappa, tau, tau_tilde)
        weighted = v * _edge_form(ctx, edges, kappa)
        for i, (a, b) in enumerate(edges):
            flipped_edges = edges[:i] + [(b, a)] + edges[i + 1 :]
            flipped = coeff_V(ctx, n, flipped_edges, kappa, tau, tau_tilde)
            assert flipped == -v
            assert flipped * _edge_form(ctx, flipped_edges, kappa) == weighted


class TestCoefficientS:
    """Sign coefficient S."""

    def test_single_part(self, framed_ctx: NumericalContext, dot_tilde) -> None:
        """S of one class is 1."""
        assert coeff_S(framed_ctx, [ALPHA], *dot_tilde) == 1

    def test_frame_first(self, framed_ctx: NumericalContext, dot_tilde) -> None:
        """Framing class first gives -1."""
        assert coeff_S(framed_ctx, [FRAME, ALPHA], *dot_tilde) == -1

    def test_frame_second(self, framed_ctx: NumericalContext, dot_tilde) -> None:
        """Framing class in position two of four gives +1."""
        assert coeff_S(framed_ctx, [ALPHA, FRAME, ALPHA, ALPHA], *dot_tilde) == 1

    def test_rejects_outside_cone(self, framed_ctx: NumericalContext, dot_tilde) -> None:
        """Parts must lie in the cone."""
        with pytest.raises(DTWCInputError, match="outside the positive cone"):
            coeff_S(framed_ctx, [(0, 0), ALPHA], *dot_tilde)

    def test_decomposition_input(self, framed_ctx: NumericalContext, dot_tilde) -> None:
        """Decomposition objects are accepted as parts."""
        parts = Decomposition.of([[0, 1], [1, 0]])
        assert parts.total == (1, 1)
        assert coeff_S(framed_ctx, parts, *dot_tilde) == -1


class TestCoefficientU:
    """Coefficient U and its closed form on framing extensions."""

    def test_single_part(self, framed_ctx: NumericalContext, dot_tilde) -> None:
        """U of one class is 1."""
        assert coeff_U(framed_ctx, [ALPHA], *dot_tilde) == 1

    @pytest.mark.parametrize(
        ("n", "k"), [(n, k) for n in range(1, 7) for k in range(1, n + 1)]
    )
    def test_closed_form(self, framed_ctx: NumericalContext, dot_tilde, n: int, k: int) -> None:
        """Framing class at position k of n."""
        parts = [ALPHA] * (k - 1) + [FRAME] + [ALPHA] * (n - k)
        assert coeff_U(framed_ctx, parts, *dot_tilde) == framed_u_closed_form(n, k)

    def test_closed_form_values(self) -> None:
        """(-1)**(n-k) / ((k-1)! (n-k)!)."""
        assert framed_u_closed_form(3, 1) == Fraction(1, 2)
        assert framed_u_closed_form(2, 1) == -1
        assert framed_u_closed_form(4, 2) == Fraction(1, 2)

    def test_same_stability(self, one_edge_ctx: NumericalContext) -> None:
        """U vanishes on two or more parts when the stabilities agree."""
        trivial = TrivialStability()
        assert coeff_U(one_edge_ctx, [(1, 0), (0, 1)], trivial, trivial) == 0
        assert coeff_U(one_edge_ctx, [(1, 0), (0, 1), (1, 0)], trivial, trivial) == 0

    def test_budget(self, framed_ctx: NumericalContext, dot_tilde) -> None:
        """More parts than the composition bound raises."""
        settings = DTWCSettings(max_composition_total=2)
        with pytest.raises(DTWCBudgetError):
            coeff_U(framed_ctx, [FRAME, ALPHA, ALPHA], *dot_tilde, settings)


@pytest.mark.parametrize("total", range(1, 11))
def test_composition_sign_sum(total: int) -> None:
    """Alternating composition sum equals (-1)**n / n!."""
    expected = Fraction((-1) ** total)
    for i in range(2, total + 1):
        expected /= i
    assert composition_sign_sum(total) == expected


class TestCoefficientV:
    """Tree coefficient V."""

    def test_single_vertex(self, one_edge_ctx: NumericalContext) -> None:
        """V of one vertex is 1."""
        assert coeff_V(one_edge_ctx, 1, [], [(1, 0)], LOW, HIGH) == 1

    def test_same_stability(self, one_edge_ctx: NumericalContext) -> None:
        """V vanishes for two vertices when the stabilities agree."""
        assert coeff_V(one_edge_ctx, 2, [(1, 2)], [(1, 0), (0, 1)], LOW, LOW) == 0

    def test_path_matches_orderings(self, framed_ctx: NumericalContext, dot_tilde) -> None:
        """A path 1->2->3 admits only the identity ordering."""
        kappa = [FRAME, ALPHA, ALPHA]
        expected = coeff_U(framed_ctx, kappa, *dot_tilde) / (4 * 6)
        assert coeff_V(framed_ctx, 3, [(1, 2), (2, 3)], kappa, *dot_tilde) == expected

    def test_star_sums_orderings(self, framed_ctx: NumericalContext, dot_tilde) -> None:
        """Edges 1->2 and 1->3 admit two orderings."""
        kappa = [FRAME, ALPHA, (2, 0)]
        orderings = ([0, 1, 2], [0, 2, 1])
        expected = sum(
            (coeff_U(framed_ctx, [kappa[i] for i in o], *dot_tilde) for o in orderings),
            Fraction(0),
        ) / (4 * 6)
        assert coeff_V(framed_ctx, 3, [(1, 2), (1, 3)], kappa, *dot_tilde) == expected

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_edge_reversal_on_framing_extension(
        self, framed_ctx: NumericalContext, dot_tilde, n: int
    ) -> None:
        """Reversing one edge negates V and leaves V times the edge form unchanged."""
        pool = [FRAME, ALPHA, ALPHA, (2, 0)][:n]
        for kappa in sorted(set(itertools.permutations(pool))):
            _assert_reversals_flip(framed_ctx, kappa, *dot_tilde)

    def test_edge_reversal_on_slopes(self, two_way_ctx: NumericalContext) -> None:
        """Edge reversal negates V across a slope wall, ties included."""
        rng = random.Random(5)
        pairs = [(LOW, HIGH), (HIGH, LOW)] + [
            (_random_slope(rng, "mu"), _random_slope(rng, "nu")) for _ in range(4)
        ]
        for tau, tau_tilde in pairs:
            for kappa in itertools.product([(1, 0), (0, 1), (1, 1)], repeat=3):
                _assert_reversals_flip(two_way_ctx, kappa, tau, tau_tilde)

    def test_rejects_non_tree(self, one_edge_ctx: NumericalContext) -> None:
        """Edges must form a tree on the vertices."""
        with pytest.raises(DTWCInputError, match="do not form a tree"):
            coeff_V(one_edge_ctx, 3, [(1, 2), (2, 1)], [(1, 0)] * 3, LOW, HIGH)


class TestDecompositions:
    """Ordered decompositions into cone classes."""

    def test_unit_square(self, conifold_ctx: NumericalContext) -> None:
        """(1, 1) splits three ways."""
        found = enumerate_decompositions(conifold_ctx, (1, 1))
        assert not found.truncated
        assert {d.parts for d in found.decompositions} == {
            ((1, 1),),
            ((1, 0), (0, 1)),
            ((0, 1), (1, 0)),
        }

    def test_truncated(self, conifold_ctx: NumericalContext) -> None:
        """The part cap flags truncation."""
        found = enumerate_decompositions(conifold_ctx, (2, 0), max_parts=1)
        assert found.truncated
        assert [d.parts for d in found.decompositions] == [((2, 0),)]

    def test_support(self, conifold_ctx: NumericalContext) -> None:
        """Only supported parts are used."""
        found = enumerate_decompositions(conifold_ctx, (3, 0), support=[(1, 0)])
        assert [d.parts for d in found.decompositions] == [((1, 0), (1, 0), (1, 0))]


class TestTransform:
    """The transformation law."""

    def test_a2_wall(self, one_edge_ctx: NumericalContext) -> None:
        """Crossing the A2 wall creates the (1, 1) state and crossing back removes it."""
        before = {(1, 0): Fraction(1), (0, 1): Fraction(1)}
        assert transform(one_edge_ctx, before, LOW, HIGH, (1, 1)) == 1
        after = {**before, (1, 1): Fraction(1)}
        assert transform(one_edge_ctx, after, HIGH, LOW, (1, 1)) == 0
        assert transform(one_edge_ctx, before, LOW, HIGH, (1, 0)) == 1

    def test_vform_agrees(self, one_edge_ctx: NumericalContext) -> None:
        """The V-form of the law gives the same value."""
        before = {(1, 0): Fraction(1), (0, 1): Fraction(1)}
        assert transform_vform(one_edge_ctx, before, LOW, HIGH, (1, 1)) == 1

    def test_identity_for_equal_stabilities(self, one_edge_ctx: NumericalContext) -> None:
        """Transforming from a stability to itself changes nothing."""
        trivial = TrivialStability()
        table = {
            (1, 0): Fraction(1),
            (0, 1): Fraction(-2),
            (1, 1): Fraction(1, 3),
            (2, 1): Fraction(5),
        }
        for target in [(1, 1), (2, 1), (1, 2)]:
            assert transform(one_edge_ctx, table, trivial, trivial, target) == table.get(
                target, 0
            )

    def test_identity_when_form_vanishes(self, conifold_ctx: NumericalContext) -> None:
        """With chi_bar = 0 every tree term beyond one part vanishes."""
        mu = SlopeStability.of([1, 0], [1, 1])
        nu = SlopeStability.of([0, 1], [1, 1])
        table = {(1, 0): Fraction(1), (0, 1): Fraction(1), (1, 1): Fraction(-2)}
        assert transform(conifold_ctx, table, mu, nu, (1, 1)) == -2
        assert transform(conifold_ctx, table, mu, nu, (2, 1)) == 0

    @pytest.mark.parametrize("target", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)])
    def test_vform_matches_across_slope_wall(
        self, two_way_ctx: NumericalContext, target: tuple[int, int]
    ) -> None:
        """Both forms agree on random tables when the two simples swap order."""
        rng = random.Random(sum(target) * 10 + target[0])
        for _ in range(3):
            table = _random_table(rng, _classes_below(target))
            for tau, tau_tilde in [(LOW, HIGH), (HIGH, LOW)]:
                assert transform(two_way_ctx, table, tau, tau_tilde, target) == transform_vform(
                    two_way_ctx, table, tau, tau_tilde, target
                )

    @pytest.mark.parametrize("frames", [1, 2, 3])
    def test_vform_matches_on_framing_extension(
        self, framed_ctx: NumericalContext, dot_tilde, frames: int
    ) -> None:
        """Both forms agree from taudot to tautilde on framed targets."""
        rng = random.Random(40 + frames)
        classes = [(a, 0) for a in range(1, 4)] + [(a, 1) for a in range(3)]
        target = (frames, 1)
        for _ in range(3):
            table = _random_table(rng, classes)
            assert transform(framed_ctx, table, *dot_tilde, target) == transform_vform(
                framed_ctx, table, *dot_tilde, target
            )

    def test_vform_matches_on_random_slopes(self, two_way_ctx: NumericalContext) -> None:
        """Both forms agree for random slope pairs, ties included."""
        rng = random.Random(2024)
        for _ in range(10):
            tau, tau_tilde = _random_slope(rng, "mu"), _random_slope(rng, "nu")
            target = rng.choice([(2, 1), (1, 2), (2, 2)])
            table = _random_table(rng, _classes_below(target))
            assert transform(two_way_ctx, table, tau, tau_tilde, target) == transform_vform(
                two_way_ctx, table, tau, tau_tilde, target
            )

    def test_identity_on_random_tables(self, two_way_ctx: NumericalContext) -> None:
        """Transforming to the same stability returns the table value, up to four parts."""
        rng = random.Random(99)
        for _ in range(20):
            tau = rng.choice([TrivialStability(), _random_slope(rng, "mu")])
            target = rng.choice([(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (1, 3)])
            table = _random_table(rng, _classes_below(target))
            assert transform(two_way_ctx, table, tau, tau, target) == table[target]

    def test_budget(self, one_edge_ctx: NumericalContext) -> None:
        """Decompositions beyond the part cap raise instead of truncating."""
        table = {(1, 0): Fraction(1), (0, 1): Fraction(1)}
        with pytest.raises(DTWCBudgetError, match="more than 2 parts"):
            transform(one_edge_ctx, table, LOW, HIGH, (2, 1), settings=DTWCSettings(max_parts=2))


class TestLieAlgebra:
    """Lie algebra of the framing extension."""

    @pytest.fixture
    def ctx(self) -> NumericalContext:
        """Rank-two lattice with chi_bar((1,0),(0,1)) = 2."""
        return NumericalContext.abstract([[0, 2], [-2, 0]])

    @pytest.fixture
    def classes(self) -> frozenset[tuple[int, ...]]:
        """Every class of total degree at most four."""
        return frozenset(
            (a, b) for a in range(5) for b in range(5) if 0 < a + b <= 4
        )

    def test_antisymmetric(self, ctx: NumericalContext, classes) -> None:
        """[x, x] = 0."""
        x = LieElement(classes, {(1, 0): 1, (0, 1): 3})
        assert lie_bracket(x, x, ctx).is_zero()

    def test_vanishing_form(self, classes) -> None:
        """Brackets vanish when chi_bar does."""
        flat = NumericalContext.abstract(rank=2)
        x = LieElement.basis(classes, (1, 0))
        y = LieElement.basis(classes, (0, 1))
        assert lie_bracket(x, y, flat).is_zero()

    def test_jacobi(self, ctx: NumericalContext, classes) -> None:
        """Cyclic sum of double brackets vanishes."""
        elements = [
            LieElement(classes, {(1, 0): 1, (0, 1): Fraction(1, 2)}),
            LieElement(classes, {(0, 1): -2, (1, 1): 1}),
            LieElement(classes, {(1, 0): 3, (2, 0): -1}),
            LieElement(classes, {(0, 2): 1, (1, 0): Fraction(-1, 3)}),
        ]
        for a, b, c in itertools.permutations(elements, 3):
            total = (
                lie_bracket(lie_bracket(a, b, ctx), c, ctx)
                + lie_bracket(lie_bracket(b, c, ctx), a, ctx)
                + lie_bracket(lie_bracket(c, a, ctx), b, ctx)
            )
            assert total.is_zero()

    def test_jacobi_on_random_triples(self, classes) -> None:
        """Jacobi holds for random elements on the two-way quiver's form."""
        rng = random.Random(17)
        ctx = NumericalContext.abstract([[0, 1], [-1, 0]])
        low = sorted(k for k in classes if sum(k) <= 2)
        for _ in range(20):
            a, b, c = (
                LieElement(
                    classes,
                    {
                        k: Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                        for k in rng.sample(low, 3)
                    },
                )
                for _ in range(3)
            )
            total = (
                lie_bracket(lie_bracket(a, b, ctx), c, ctx)
                + lie_bracket(lie_bracket(b, c, ctx), a, ctx)
                + lie_bracket(lie_bracket(c, a, ctx), b, ctx)
            )
            assert total.is_zero()
            assert (lie_bracket(a, b, ctx) + lie_bracket(b, a, ctx)).is_zero()

    def test_rejects_stray_class(self, classes) -> None:
        """Coefficients must stay inside the declared class set."""
        with pytest.raises(DTWCInputError, match="outside the declared class set"):
            LieElement(classes, {(5, 0): 1})


class TestNestedBracket:
    """Pair invariants through nested brackets."""

    @pytest.mark.parametrize("p", [1, 2, 3, 5])
    def test_rank_one(self, multiple_cover, p: int) -> None:
        """Nested brackets agree with the term form on rank-one targets."""
        ctx = NumericalContext.abstract(rank=1, framing=(p,))
        for m in range(1, 6):
            assert nested_bracket_pair_formula(ctx, multiple_cover, (m,)) == pair_transform(
                ctx, multiple_cover, (m,)
            )

    @pytest.mark.parametrize("d", [0, 1, 2, 3])
    def test_two_class(self, d: int) -> None:
        """Nested brackets agree with the term form on two rigid classes."""
        table = {
            (1, 0): Fraction(1),
            (0, 1): Fraction(1),
            (1, 1): Fraction(sign(d - 1) * d, 2),
        }
        for p1, p2 in itertools.product(range(1, 4), repeat=2):
            ctx = NumericalContext.abstract([[0, d], [-d, 0]], framing=(p1, p2))
            assert nested_bracket_pair_formula(ctx, table, (1, 1)) == pair_transform(
                ctx, table, (1, 1)
            )

    def test_needs_framing(self, multiple_cover) -> None:
        """A framing functional is required."""
        with pytest.raises(DTWCInputError, match="framing functional"):
            nested_bracket_pair_formula(NumericalContext.abstract(rank=1), multiple_cover, (1,))

