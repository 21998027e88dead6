"""Wall-crossing coefficients and the transformation law for invariants.

The combinatorial coefficients ``S``, ``U`` and ``V`` relate invariants
taken at two weak stability conditions. :func:`transform` evaluates the
transformation law in its ordered form over decompositions and low-to-high
labelled trees; :func:`transform_vform` evaluates the same law through
``V`` as a cross-check. The framing-extension Lie algebra gives a second
route to pair invariants in :func:`nested_bracket_pair_formula`.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exceptions import DTWCBudgetError, DTWCInputError
from .lattice import (
    KClass,
    NumericalContext,
    WeakStability,
    add_classes,
    as_class,
    extend_by_framing,
    sub_classes,
    sum_classes,
)
from .models.settings import DTWCSettings
from .numerics import (
    OrientedTree,
    enumerate_compositions,
    enumerate_oriented_trees,
    is_connected,
    sign,
)
from .series import grlex_key

_LOGGER = logging.getLogger(__name__)

ClassValues = Mapping[KClass, Fraction]


@dataclass(frozen=True, slots=True)
class Decomposition:
    """An ordered list of cone classes and their sum."""

    parts: tuple[KClass, ...]

    def __post_init__(self) -> None:
        """Validate that parts are nonempty and share a rank."""
        if not self.parts:
            raise DTWCInputError("parts cannot be empty")
        if len({len(p) for p in self.parts}) != 1:
            raise DTWCInputError(f"parts {self.parts} do not share a rank")

    @classmethod
    def of(cls, parts: Sequence[Sequence[int]]) -> Decomposition:
        """Build from loosely typed parts."""
        return cls(tuple(as_class(p) for p in parts))

    @property
    def total(self) -> KClass:
        """Sum of the parts."""
        return sum_classes(self.parts, len(self.parts[0]))

    def __len__(self) -> int:
        return len(self.parts)


@dataclass(frozen=True, slots=True)
class DecompositionSet:
    """Decompositions of one class, with ``truncated`` set when the part cap bound."""

    target: KClass
    decompositions: tuple[Decomposition, ...]
    truncated: bool = False


def _as_parts(parts: Decomposition | Sequence[Sequence[int]]) -> tuple[KClass, ...]:
    if isinstance(parts, Decomposition):
        return parts.parts
    return Decomposition.of(parts).parts


def _check_cone(ctx: NumericalContext, parts: Sequence[KClass]) -> None:
    prefix = (0,) * ctx.rank
    for part in parts:
        ctx.require_in_cone(part)
        prefix = add_classes(prefix, part)
        ctx.require_in_cone(prefix)


# -- S, U, V --------------------------------------------------------------------------


def _coeff_s(parts: Sequence[KClass], tau: WeakStability, tau_tilde: WeakStability) -> int:
    n = len(parts)
    if n == 1:
        return 1
    rank = len(parts[0])
    a_clauses = 0
    for i in range(n - 1):
        left = sum_classes(parts[: i + 1], rank)
        right = sum_classes(parts[i + 1 :], rank)
        rising = tau.value(parts[i]) <= tau.value(parts[i + 1])
        tilde_left, tilde_right = tau_tilde.value(left), tau_tilde.value(right)
        if rising and tilde_left > tilde_right:
            a_clauses += 1
        elif not rising and tilde_left <= tilde_right:
            continue
        else:
            return 0
    return sign(a_clauses)


def coeff_S(
    ctx: NumericalContext,
    parts: Decomposition | Sequence[Sequence[int]],
    tau: WeakStability,
    tau_tilde: WeakStability,
) -> int:
    """Sign coefficient ``S(alpha_1, ..., alpha_n; tau, tau_tilde)``.

    Each adjacent pair must satisfy one of two clauses: ``tau`` rising with
    ``tau_tilde`` of the prefix above that of the suffix (counted), or
    ``tau`` falling with the prefix not above the suffix.

    Returns:
        ``(-1)**r`` for ``r`` counted clauses, or 0 if some pair satisfies neither

    Raises:
        DTWCInputError: If a part or partial sum lies outside the cone

    """
    classes = _as_parts(parts)
    _check_cone(ctx, classes)
    return _coeff_s(classes, tau, tau_tilde)


def _coeff_u(
    parts: Sequence[KClass],
    tau: WeakStability,
    tau_tilde: WeakStability,
    settings: DTWCSettings,
) -> Fraction:
    n = len(parts)
    rank = len(parts[0])
    total_tilde = tau_tilde.value(sum_classes(parts, rank))
    tau_parts = [tau.value(p) for p in parts]
    result = Fraction(0)
    for inner in enumerate_compositions(n, settings.max_composition_total):
        betas: list[KClass] = []
        weight = Fraction(1)
        admissible = True
        for block in inner.blocks():
            beta = sum_classes([parts[j] for j in block], rank)
            beta_tau = tau.value(beta)
            if any(tau_parts[j] != beta_tau for j in block):
                admissible = False
                break
            betas.append(beta)
            weight /= math.factorial(len(block))
        if not admissible:
            continue
        for outer in enumerate_compositions(len(betas), settings.max_composition_total):
            term = weight
            for block in outer.blocks():
                group = [betas[i] for i in block]
                if tau_tilde.value(sum_classes(group, rank)) != total_tilde:
                    term = Fraction(0)
                    break
                term *= _coeff_s(group, tau, tau_tilde)
                if not term:
                    break
            if term:
                groups = len(outer.parts)
                result += Fraction(sign(groups - 1), groups) * term
    return result


def coeff_U(
    ctx: NumericalContext,
    parts: Decomposition | Sequence[Sequence[int]],
    tau: WeakStability,
    tau_tilde: WeakStability,
    settings: DTWCSettings | None = None,
) -> Fraction:
    """Coefficient ``U(alpha_1, ..., alpha_n; tau, tau_tilde)``.

    Sums over groupings of the parts into consecutive blocks of equal
    ``tau`` value, then into consecutive super-blocks of the same
    ``tau_tilde`` value as the total, with weight
    ``(-1)**(l-1)/l * prod S * prod 1/(block size)!``.

    Raises:
        DTWCInputError: If a part or partial sum lies outside the cone
        DTWCBudgetError: If the number of parts exceeds the composition bound

    """
    classes = _as_parts(parts)
    _check_cone(ctx, classes)
    return _coeff_u(classes, tau, tau_tilde, settings or DTWCSettings())


def framed_u_closed_form(n: int, k: int) -> Fraction:
    """Closed form of ``U`` when the framing class sits at position ``k`` of ``n``.

    This is the value taken by ``U`` on the framing extension from
    ``taudot`` to ``tautilde`` for one class ``(0, 1)`` at position ``k``
    among ``n - 1`` unframed classes.
    """
    if not 1 <= k <= n:
        raise DTWCInputError(f"position {k} must lie in 1..{n}")
    return Fraction(sign(n - k), math.factorial(k - 1) * math.factorial(n - k))


def composition_sign_sum(total: int, settings: DTWCSettings | None = None) -> Fraction:
    """Alternating sum ``sum (-1)**m prod 1/b_i!`` over compositions of ``total``.

    The value is ``(-1)**total / total!``.
    """
    caps = settings or DTWCSettings()
    result = Fraction(0)
    for composition in enumerate_compositions(total, caps.max_composition_total):
        term = Fraction(sign(len(composition.parts)))
        for part in composition.parts:
            term /= math.factorial(part)
        result += term
    return result


def _tree_edges(
    n: int, tree: OrientedTree | Sequence[tuple[int, int]]
) -> tuple[tuple[int, int], ...]:
    if isinstance(tree, OrientedTree):
        if tree.n != n:
            raise DTWCInputError(f"tree has {tree.n} vertices, expected {n}")
        return tree.edges
    edges = tuple((int(a), int(b)) for a, b in tree)
    if len(edges) != n - 1 or any(a == b for a, b in edges) or not is_connected(n, edges):
        raise DTWCInputError(f"edges {edges} do not form a tree on {n} vertices")
    return edges


def coeff_V(
    ctx: NumericalContext,
    n: int,
    tree: OrientedTree | Sequence[tuple[int, int]],
    kappa: Sequence[Sequence[int]],
    tau: WeakStability,
    tau_tilde: WeakStability,
    settings: DTWCSettings | None = None,
) -> Fraction:
    """Coefficient ``V`` of a directed tree with vertex classes ``kappa``.

    Averages ``U`` over the vertex orderings in which every edge points
    forward, scaled by ``1 / (2**(n-1) n!)``. Edges may point either way;
    reversing one edge flips the sign of ``V``.

    Raises:
        DTWCInputError: If ``kappa`` has the wrong length or the edges do not form a tree

    """
    if n < 1 or len(kappa) != n:
        raise DTWCInputError(f"kappa has {len(kappa)} classes, expected {n}")
    edges = _tree_edges(n, tree)
    classes = [as_class(k) for k in kappa]
    for klass in classes:
        ctx.require_in_cone(klass)
    caps = settings or DTWCSettings()
    total = Fraction(0)
    for ordering in itertools.permutations(range(1, n + 1)):
        position = {v: i for i, v in enumerate(ordering)}
        if all(position[a] < position[b] for a, b in edges):
            total += _coeff_u([classes[v - 1] for v in ordering], tau, tau_tilde, caps)
    return total / (2 ** (n - 1) * math.factorial(n))


# -- decompositions -------------------------------------------------------------------


def _fits(beta: KClass, remainder: KClass) -> bool:
    return all(b <= r for b, r in zip(beta, remainder))


def enumerate_decompositions(
    ctx: NumericalContext,
    target: Sequence[int],
    support: Sequence[KClass] | None = None,
    max_parts: int | None = None,
) -> DecompositionSet:
    """Ordered decompositions of ``target`` into cone classes from ``support``.

    Args:
        ctx: Numerical context
        target: Class to decompose
        support: Allowed parts, every cone class below ``target`` when omitted
        max_parts: Part cap, the settings default when omitted

    Returns:
        Decompositions in a deterministic order; ``truncated`` is set when a
        decomposition with more than ``max_parts`` parts exists

    """
    goal = ctx.require_in_cone(as_class(target))
    cap = max_parts or DTWCSettings().max_parts
    if support is None:
        pool = ctx.classes_below(goal)
    else:
        candidates = {as_class(b) for b in support}
        pool = sorted(
            (b for b in candidates if ctx.in_cone(b) and _fits(b, goal)), key=grlex_key
        )

    @lru_cache(maxsize=None)
    def reachable(remainder: KClass) -> bool:
        if not any(remainder):
            return True
        return any(
            _fits(beta, remainder) and reachable(sub_classes(remainder, beta)) for beta in pool
        )

    found: list[Decomposition] = []
    truncated = False

    def walk(prefix: list[KClass], remainder: KClass) -> None:
        nonlocal truncated
        if not any(remainder):
            found.append(Decomposition(tuple(prefix)))
            return
        if len(prefix) == cap:
            if reachable(remainder):
                truncated = True
            return
        for beta in pool:
            if _fits(beta, remainder):
                rest = sub_classes(remainder, beta)
                if reachable(rest):
                    prefix.append(beta)
                    walk(prefix, rest)
                    prefix.pop()

    walk([], goal)
    if truncated:
        _LOGGER.warning("Decompositions of %s truncated at %d parts", goal, cap)
    _LOGGER.debug("Found %d decompositions of %s", len(found), goal)
    return DecompositionSet(goal, tuple(found), truncated)


def _support(ctx: NumericalContext, table: ClassValues, target: KClass) -> list[KClass]:
    return [
        klass
        for klass, value in table.items()
        if value and ctx.in_cone(klass) and _fits(klass, target)
    ]


def _checked_decompositions(
    ctx: NumericalContext, table: ClassValues, target: KClass, settings: DTWCSettings
) -> tuple[Decomposition, ...]:
    found = enumerate_decompositions(ctx, target, _support(ctx, table, target), settings.max_parts)
    if found.truncated:
        raise DTWCBudgetError(
            f"decompositions of {target} need more than {settings.max_parts} parts"
        )
    return found.decompositions


# -- transformation law ---------------------------------------------------------------


def _pairwise_chi_sum(ctx: NumericalContext, parts: Sequence[KClass]) -> int:
    return sum(ctx.chi_bar(a, b) for a, b in itertools.combinations(parts, 2))


def _tree_sum(
    ctx: NumericalContext, parts: Sequence[KClass], settings: DTWCSettings
) -> int:
    n = len(parts)
    if n == 1:
        return 1
    total = 0
    for tree in enumerate_oriented_trees(n, settings.max_tree_vertices):
        product = 1
        for a, b in tree.edges:
            product *= ctx.chi_bar(parts[a - 1], parts[b - 1])
            if not product:
                break
        total += product
    return total


def transform(
    ctx: NumericalContext,
    table: ClassValues,
    tau: WeakStability,
    tau_tilde: WeakStability,
    target: Sequence[int],
    signed: bool = True,
    settings: DTWCSettings | None = None,
) -> Fraction:
    """Invariant of ``target`` at ``tau_tilde`` from the invariants at ``tau``.

    Sums over ordered decompositions into classes with nonzero table value
    and over low-to-high labelled trees of
    ``(-1)**(n-1+sum chi_bar)/2**(n-1) * U * prod_edges chi_bar * prod DT``.
    With ``signed=False`` both signs are dropped, which is the law for the
    unsigned invariants.

    Raises:
        DTWCBudgetError: If a decomposition needs more parts than allowed

    """
    caps = settings or DTWCSettings()
    goal = ctx.require_in_cone(as_class(target))
    result = Fraction(0)
    for decomposition in _checked_decompositions(ctx, table, goal, caps):
        parts = decomposition.parts
        n = len(parts)
        trees = _tree_sum(ctx, parts, caps)
        if not trees:
            continue
        u = _coeff_u(parts, tau, tau_tilde, caps)
        if not u:
            continue
        term = u * trees / 2 ** (n - 1)
        if signed:
            term *= sign(n - 1 + _pairwise_chi_sum(ctx, parts))
        for part in parts:
            term *= table[part]
        result += term
    return result


def transform_vform(
    ctx: NumericalContext,
    table: ClassValues,
    tau: WeakStability,
    tau_tilde: WeakStability,
    target: Sequence[int],
    settings: DTWCSettings | None = None,
) -> Fraction:
    """The transformation law written through ``V``.

    Sums over class assignments ``kappa`` on ``{1..n}`` and all directed
    trees on those vertices of
    ``(-1)**(n-1) * V * prod DT * (-1)**(sum |chi_bar|) * prod_edges chi_bar``.
    ``V * prod chi_bar`` does not depend on edge directions, so each labelled
    tree contributes ``2**(n-1)`` copies of its low-to-high term.
    """
    caps = settings or DTWCSettings()
    goal = ctx.require_in_cone(as_class(target))
    result = Fraction(0)
    for decomposition in _checked_decompositions(ctx, table, goal, caps):
        kappa = decomposition.parts
        n = len(kappa)
        parity = sign(
            n - 1 + sum(abs(ctx.chi_bar(a, b)) for a, b in itertools.combinations(kappa, 2))
        )
        weight = Fraction(parity * 2 ** (n - 1))
        for part in kappa:
            weight *= table[part]
        for tree in enumerate_oriented_trees(n, caps.max_tree_vertices):
            chi = 1
            for a, b in tree.edges:
                chi *= ctx.chi_bar(kappa[a - 1], kappa[b - 1])
            if not chi:
                continue
            result += weight * chi * coeff_V(ctx, n, tree, kappa, tau, tau_tilde, caps)
    return result


# -- Lie algebra ----------------------------------------------------------------------


@dataclass(frozen=True)
class LieElement:
    """A finite combination of basis elements indexed by classes of a fixed set."""

    support_set: frozenset[KClass]
    coefficients: Mapping[KClass, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Drop zero terms and reject classes outside the declared set."""
        cleaned = {as_class(k): Fraction(v) for k, v in self.coefficients.items() if v}
        stray = [k for k in cleaned if k not in self.support_set]
        if stray:
            raise DTWCInputError(f"classes {stray} lie outside the declared class set")
        object.__setattr__(self, "coefficients", cleaned)

    @classmethod
    def basis(
        cls, support_set: frozenset[KClass], klass: KClass, coefficient: Fraction | int = 1
    ) -> LieElement:
        """A single basis element ``coefficient * lambda^klass``."""
        return cls(support_set, {klass: Fraction(coefficient)})

    def __add__(self, other: LieElement) -> LieElement:
        merged = dict(self.coefficients)
        for klass, value in other.coefficients.items():
            merged[klass] = merged.get(klass, Fraction(0)) + value
        return LieElement(self.support_set | other.support_set, merged)

    def scale(self, factor: Fraction | int) -> LieElement:
        """Multiply every coefficient by ``factor``."""
        return LieElement(self.support_set, {k: v * factor for k, v in self.coefficients.items()})

    def coefficient(self, klass: Sequence[int]) -> Fraction:
        """Coefficient of one basis element."""
        return self.coefficients.get(as_class(klass), Fraction(0))

    def is_zero(self) -> bool:
        """Whether every coefficient vanishes."""
        return not self.coefficients

    def items(self) -> Iterator[tuple[KClass, Fraction]]:
        """Terms in graded-lex class order."""
        for klass in sorted(self.coefficients, key=grlex_key):
            yield klass, self.coefficients[klass]


def lie_bracket(
    a: LieElement,
    b: LieElement,
    ctx: NumericalContext,
    support_set: frozenset[KClass] | None = None,
) -> LieElement:
    """Bracket ``[l^x, l^y] = (-1)**chi_bar(x, y) * chi_bar(x, y) * l^(x+y)``.

    Terms whose class falls outside the class set are dropped.
    """
    classes = support_set if support_set is not None else a.support_set | b.support_set
    out: dict[KClass, Fraction] = {}
    for x, cx in a.coefficients.items():
        for y, cy in b.coefficients.items():
            chi = ctx.chi_bar(x, y)
            if not chi:
                continue
            z = add_classes(x, y)
            if z not in classes:
                continue
            out[z] = out.get(z, Fraction(0)) + sign(chi) * chi * cx * cy
    return LieElement(classes, out)


def nested_bracket_pair_formula(
    ctx: NumericalContext,
    table: ClassValues,
    target: Sequence[int],
    tau: WeakStability | None = None,
) -> Fraction:
    """Pair invariant of ``target`` through iterated brackets on the framing extension.

    With ``x = -l^(0,1)`` and ``E = -sum DT^b l^(b,0)`` over classes of the
    same ``tau`` value as ``target``, the element
    ``sum_l (-1)**l/l! [[x, E], ..., E]`` has coefficient ``-PI`` at
    ``(target, 1)``.

    Raises:
        DTWCInputError: If ``ctx`` has no framing functional

    """
    if ctx.framing is None:
        raise DTWCInputError("nested_bracket_pair_formula needs a framing functional")
    goal = ctx.require_in_cone(as_class(target))
    extended = extend_by_framing(ctx)
    below = [(0,) * ctx.rank, *ctx.classes_below(goal)]
    classes = frozenset(
        (*beta, d) for beta in below for d in (0, 1) if extended.in_cone((*beta, d))
    )
    level = tau.value(goal) if tau is not None else None
    framed_unit = (0,) * ctx.rank + (1,)
    x = LieElement.basis(classes, framed_unit, -1)
    parts: dict[KClass, Fraction] = {}
    for beta in ctx.classes_below(goal):
        value = table.get(beta, Fraction(0))
        if value and (tau is None or tau.value(beta) == level):
            parts[(*beta, 0)] = -Fraction(value)
    e = LieElement(classes, parts)
    total = LieElement(classes)
    current = x
    for depth in range(1, sum(goal) + 1):
        current = lie_bracket(current, e, extended, classes)
        if current.is_zero():
            break
        total = total + current.scale(Fraction(sign(depth), math.factorial(depth)))
    return -total.coefficient((*goal, 1))
