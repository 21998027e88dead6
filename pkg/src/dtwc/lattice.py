"""Numerical lattices, Euler forms, positive cones and weak stability conditions.

Classes are plain integer tuples. A :class:`NumericalContext` bundles a rank,
the Euler forms, the positive cone and optional Hilbert/framing data, and
holds a registry of named weak stability conditions.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Protocol, TypeAlias, runtime_checkable

from .const import STABILITY_DOT, STABILITY_HAT, STABILITY_TILDE, STABILITY_TRIVIAL
from .exceptions import DTWCInputError
from .models.context import ContextDocument, StabilityBlock
from .models.quiver import Quiver
from .models.results import GenericityReport, StabilityReport
from .numerics import parse_rational
from .series import grlex_key

_LOGGER = logging.getLogger(__name__)

KClass: TypeAlias = tuple[int, ...]
StabilityValue: TypeAlias = Any
Matrix: TypeAlias = tuple[tuple[int, ...], ...]


# -- class arithmetic ---------------------------------------------------------------


def as_class(coords: Sequence[int]) -> KClass:
    """Normalize a coordinate sequence to a class tuple."""
    return tuple(int(x) for x in coords)


def add_classes(a: KClass, b: KClass) -> KClass:
    """Coordinate-wise sum."""
    return tuple(x + y for x, y in zip(a, b, strict=True))


def sub_classes(a: KClass, b: KClass) -> KClass:
    """Coordinate-wise difference."""
    return tuple(x - y for x, y in zip(a, b, strict=True))


def sum_classes(parts: Sequence[KClass], rank: int) -> KClass:
    """Sum of a list of classes, the zero class when empty."""
    total = (0,) * rank
    for part in parts:
        total = add_classes(total, part)
    return total


def divides(m: int, alpha: KClass) -> bool:
    """Whether ``m`` divides every coordinate of ``alpha``."""
    return all(x % m == 0 for x in alpha)


def divide_class(alpha: KClass, m: int) -> KClass:
    """Return ``alpha / m``, assuming :func:`divides` holds."""
    return tuple(x // m for x in alpha)


def class_gcd(alpha: KClass) -> int:
    """Largest ``m`` with ``m | alpha``."""
    return math.gcd(*alpha)


def orthant_cone(alpha: KClass) -> bool:
    """Nonzero classes with non-negative coordinates."""
    return all(x >= 0 for x in alpha) and any(alpha)


# -- Euler forms ----------------------------------------------------------------------


def _as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _bilinear(matrix: Matrix, d: KClass, e: KClass) -> int:
    return sum(d[i] * matrix[i][j] * e[j] for i in range(len(d)) for j in range(len(e)))


@dataclass(frozen=True, slots=True)
class EulerData:
    """Euler forms of a lattice.

    ``chi_bar`` is antisymmetric; when ``chi_hat`` is present ``chi_bar``
    must equal ``chi_hat - chi_hat^T``.
    """

    rank: int
    chi_bar: Matrix
    chi_hat: Matrix | None = None

    def __post_init__(self) -> None:
        """Validate shape, antisymmetry and consistency."""
        if self.rank < 1:
            raise DTWCInputError(f"rank must be >= 1, got {self.rank}")
        for name, matrix in (("chi_bar", self.chi_bar), ("chi_hat", self.chi_hat)):
            if matrix is None:
                continue
            if len(matrix) != self.rank or any(len(row) != self.rank for row in matrix):
                raise DTWCInputError(f"{name} must be a {self.rank}x{self.rank} matrix")
        r = self.rank
        for i in range(r):
            for j in range(r):
                if self.chi_bar[i][j] != -self.chi_bar[j][i]:
                    raise DTWCInputError("chi_bar must be antisymmetric")
                if self.chi_hat is not None and (
                    self.chi_bar[i][j] != self.chi_hat[i][j] - self.chi_hat[j][i]
                ):
                    raise DTWCInputError("chi_bar must equal chi_hat minus its transpose")

    @classmethod
    def from_chi_hat(cls, chi_hat: Sequence[Sequence[int]]) -> EulerData:
        """Derive ``chi_bar`` by antisymmetrizing ``chi_hat``."""
        hat = _as_matrix(chi_hat)
        r = len(hat)
        bar = tuple(tuple(hat[i][j] - hat[j][i] for j in range(r)) for i in range(r))
        return cls(r, bar, hat)

    @classmethod
    def from_chi_bar(cls, chi_bar: Sequence[Sequence[int]]) -> EulerData:
        """Use an antisymmetric form without a symmetric part."""
        bar = _as_matrix(chi_bar)
        return cls(len(bar), bar)

    @classmethod
    def zero(cls, rank: int) -> EulerData:
        """The vanishing form."""
        return cls(rank, tuple((0,) * rank for _ in range(rank)))

    @classmethod
    def from_quiver(cls, quiver: Quiver) -> EulerData:
        """Euler form of the path algebra: dimension pairing minus the edge pairing."""
        r = quiver.rank
        hat = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
        for tail, head in quiver.edge_indices:
            hat[tail][head] -= 1
        return cls.from_chi_hat(hat)

    def hat(self, d: KClass, e: KClass) -> int:
        """Evaluate the Euler form."""
        if self.chi_hat is None:
            raise DTWCInputError("this context has no chi_hat form")
        self._check(d, e)
        return _bilinear(self.chi_hat, d, e)

    def bar(self, d: KClass, e: KClass) -> int:
        """Evaluate the antisymmetric form."""
        self._check(d, e)
        return _bilinear(self.chi_bar, d, e)

    def _check(self, d: KClass, e: KClass) -> None:
        if len(d) != self.rank or len(e) != self.rank:
            raise DTWCInputError(f"classes {d}, {e} do not have rank {self.rank}")


def euler_hat(quiver: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """Euler form ``sum_v d(v)e(v) - sum_edges d(tail)e(head)`` of a quiver.

    Raises:
        DTWCInputError: If a class does not have one coordinate per vertex

    """
    d, e = as_class(d), as_class(e)
    if len(d) != quiver.rank or len(e) != quiver.rank:
        raise DTWCInputError(f"classes {d}, {e} do not match {quiver.rank} vertices")
    value = sum(x * y for x, y in zip(d, e))
    for tail, head in quiver.edge_indices:
        value -= d[tail] * e[head]
    return value


def euler_bar(
    source: Quiver | NumericalContext | EulerData, d: Sequence[int], e: Sequence[int]
) -> int:
    """Antisymmetrized Euler form ``chi_bar(d, e)``.

    Raises:
        DTWCInputError: On rank mismatch

    """
    d, e = as_class(d), as_class(e)
    if isinstance(source, Quiver):
        return euler_hat(source, d, e) - euler_hat(source, e, d)
    if isinstance(source, NumericalContext):
        return source.euler.bar(d, e)
    return source.bar(d, e)


# -- Hilbert data ---------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class HilbertData:
    """A Hilbert polynomial per basis class, extended linearly.

    Coefficients are listed from the highest degree down and padded to a
    common length.
    """

    polynomials: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        """Validate that there is at least one polynomial."""
        if not self.polynomials:
            raise DTWCInputError("polynomials cannot be empty")

    @classmethod
    def from_coefficients(cls, rows: Sequence[Sequence[Fraction | int | str]]) -> HilbertData:
        """Build from per-basis coefficient lists, highest degree first."""
        parsed = [[parse_rational(c) for c in row] for row in rows]
        width = max((len(row) for row in parsed), default=0)
        if width == 0:
            raise DTWCInputError("Hilbert polynomials cannot be empty")
        padded = tuple(tuple([Fraction(0)] * (width - len(row)) + row) for row in parsed)
        return cls(padded)

    @property
    def rank(self) -> int:
        """Number of basis classes."""
        return len(self.polynomials)

    def polynomial(self, alpha: KClass) -> tuple[Fraction, ...]:
        """Coefficients of ``P_alpha``, highest degree first, leading zeros stripped."""
        if len(alpha) != self.rank:
            raise DTWCInputError(f"class {alpha} does not have rank {self.rank}")
        width = len(self.polynomials[0])
        coeffs = [
            sum((a * poly[k] for a, poly in zip(alpha, self.polynomials)), Fraction(0))
            for k in range(width)
        ]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
        return tuple(coeffs)

    def evaluate(self, alpha: KClass, t: int) -> Fraction:
        """Value ``P_alpha(t)``."""
        value = Fraction(0)
        for c in self.polynomial(alpha):
            value = value * t + c
        return value


# -- weak stability conditions --------------------------------------------------------


@runtime_checkable
class WeakStability(Protocol):
    """A map from cone classes to a totally ordered set."""

    name: str

    def value(self, alpha: KClass) -> StabilityValue:
        """Return the comparable stability value of ``alpha``."""
        ...


@dataclass(frozen=True, slots=True)
class SlopeStability:
    """Slope ``c.d / r.d`` with ``r`` strictly positive."""

    c: tuple[Fraction, ...]
    r: tuple[Fraction, ...]
    name: str = "slope"

    def __post_init__(self) -> None:
        """Validate weight vectors."""
        if len(self.c) != len(self.r):
            raise DTWCInputError(f"weights c={self.c} and r={self.r} differ in rank")
        if any(x <= 0 for x in self.r):
            raise DTWCInputError("r must be strictly positive")

    @classmethod
    def of(
        cls,
        c: Sequence[Fraction | int | str],
        r: Sequence[Fraction | int | str],
        name: str = "slope",
    ) -> SlopeStability:
        """Build from loosely typed weights."""
        return cls(
            tuple(parse_rational(x) for x in c), tuple(parse_rational(x) for x in r), name
        )

    def value(self, alpha: KClass) -> Fraction:
        """Slope of ``alpha``."""
        if len(alpha) != len(self.c):
            raise DTWCInputError(f"class {alpha} does not have rank {len(self.c)}")
        denominator = sum((r * a for r, a in zip(self.r, alpha)), Fraction(0))
        if denominator <= 0:
            raise DTWCInputError(f"class {alpha} lies outside the positive cone")
        return sum((c * a for c, a in zip(self.c, alpha)), Fraction(0)) / denominator


@dataclass(frozen=True, slots=True)
class TrivialStability:
    """The constant stability condition, every class has value 0."""

    name: str = STABILITY_TRIVIAL

    def value(self, alpha: KClass) -> Fraction:
        """Always 0."""
        return Fraction(0)


@dataclass(frozen=True, slots=True)
class GiesekerStability:
    """Reduced Hilbert polynomial order.

    Higher degree is smaller; equal degrees compare the monic polynomials
    coefficient by coefficient from the top, which decides ``p(t) <= p'(t)``
    for all large ``t``.
    """

    hilbert: HilbertData
    name: str = "gieseker"

    def value(self, alpha: KClass) -> tuple[Fraction, ...]:
        """Comparable key ``(-deg, monic coefficients top down)``."""
        coeffs = self.hilbert.polynomial(alpha)
        if not coeffs or coeffs[0] <= 0:
            raise DTWCInputError(f"class {alpha} has no positive Hilbert polynomial")
        lead = coeffs[0]
        return (Fraction(-(len(coeffs) - 1)), *(c / lead for c in coeffs))


@dataclass(frozen=True, slots=True)
class TwoLevelStability:
    """Stability on a framing extension reading only the framing coordinate."""

    unframed: int
    framed: int
    name: str

    def value(self, alpha: KClass) -> int:
        """``framed`` when the last coordinate is positive, ``unframed`` otherwise."""
        return self.framed if alpha[-1] > 0 else self.unframed


def slope(stab: WeakStability, d: Sequence[int]) -> Fraction:
    """Slope of ``d`` under a slope or trivial stability.

    Raises:
        DTWCInputError: If ``d`` lies outside the positive cone or the stability is not a slope

    """
    klass = as_class(d)
    if not orthant_cone(klass):
        raise DTWCInputError(f"class {klass} lies outside the positive cone")
    if isinstance(stab, TrivialStability):
        return Fraction(0)
    if isinstance(stab, SlopeStability):
        return stab.value(klass)
    raise DTWCInputError(f"{stab.name} is not a slope stability")


# -- numerical contexts ---------------------------------------------------------------


@dataclass(frozen=True)
class NumericalContext:
    """The arena every formula is evaluated in.

    Attributes:
        euler: Euler forms on the lattice
        cone: Membership predicate of the positive cone
        hilbert: Optional Hilbert polynomials of the basis classes
        framing: Optional framing functional values on the basis classes
        twist: Twist at which ``framing`` equals the Hilbert polynomial
        stabilities: Named weak stability conditions
        quiver: Quiver the context was built from, if any
        parent: Context this one extends by a framing coordinate, if any

    """

    euler: EulerData
    cone: Callable[[KClass], bool] = field(default=orthant_cone, compare=False)
    hilbert: HilbertData | None = None
    framing: tuple[int, ...] | None = None
    twist: int | None = None
    stabilities: Mapping[str, WeakStability] = field(default_factory=dict, compare=False)
    quiver: Quiver | None = field(default=None, compare=False)
    parent: NumericalContext | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        """Validate ranks and framing/Hilbert consistency."""
        if self.framing is not None and len(self.framing) != self.rank:
            raise DTWCInputError(f"framing {self.framing} does not have rank {self.rank}")
        if self.hilbert is not None:
            if self.hilbert.rank != self.rank:
                raise DTWCInputError(f"hilbert data does not have rank {self.rank}")
            if self.framing is not None and self.twist is not None:
                for i in range(self.rank):
                    basis = unit_class(self.rank, i)
                    if self.hilbert.evaluate(basis, self.twist) != self.framing[i]:
                        raise DTWCInputError(
                            f"framing {self.framing} disagrees with Hilbert data at twist "
                            f"{self.twist}"
                        )

    @property
    def rank(self) -> int:
        """Lattice rank."""
        return self.euler.rank

    # -- constructors ----------------------------------------------------------

    @classmethod
    def abstract(
        cls,
        chi_bar: Sequence[Sequence[int]] | None = None,
        *,
        rank: int | None = None,
        framing: Sequence[int] | None = None,
        stabilities: Mapping[str, WeakStability] | None = None,
    ) -> NumericalContext:
        """A context given by an antisymmetric form (zero when omitted)."""
        if chi_bar is None:
            if rank is None:
                raise DTWCInputError("abstract context needs chi_bar or rank")
            euler = EulerData.zero(rank)
        else:
            euler = EulerData.from_chi_bar(chi_bar)
        return cls(
            euler,
            framing=None if framing is None else as_class(framing),
            stabilities=dict(stabilities or {STABILITY_TRIVIAL: TrivialStability()}),
        )

    @classmethod
    def from_quiver(
        cls,
        quiver: Quiver,
        framing: Sequence[int] | None = None,
        stabilities: Mapping[str, WeakStability] | None = None,
    ) -> NumericalContext:
        """Context of a quiver with the orthant cone and trivial stability registered."""
        registry: dict[str, WeakStability] = {STABILITY_TRIVIAL: TrivialStability()}
        registry.update(stabilities or {})
        return cls(
            EulerData.from_quiver(quiver),
            framing=None if framing is None else as_class(framing),
            stabilities=registry,
            quiver=quiver,
        )

    @classmethod
    def from_document(cls, document: ContextDocument) -> NumericalContext:
        """Build a context from its JSON document.

        Raises:
            DTWCInputError: If the document is inconsistent

        """
        if document.quiver is not None:
            euler = EulerData.from_quiver(document.quiver)
        elif document.chi_hat is not None:
            euler = EulerData.from_chi_hat(document.chi_hat)
        elif document.chi_bar is not None:
            euler = EulerData.from_chi_bar(document.chi_bar)
        else:
            assert document.rank is not None
            euler = EulerData.zero(document.rank)
        if document.rank is not None and document.rank != euler.rank:
            raise DTWCInputError(f"declared rank {document.rank} disagrees with the forms")
        if document.chi_bar is not None and euler.chi_bar != _as_matrix(document.chi_bar):
            raise DTWCInputError("chi_bar disagrees with chi_hat or the quiver")
        hilbert = (
            HilbertData.from_coefficients(document.hilbert) if document.hilbert else None
        )
        registry: dict[str, WeakStability] = {STABILITY_TRIVIAL: TrivialStability()}
        for name, block in document.stabilities.items():
            registry[name] = stability_from_block(name, block, hilbert)
        ctx = cls(
            euler,
            hilbert=hilbert,
            framing=None if document.framing is None else as_class(document.framing),
            stabilities=registry,
            quiver=document.quiver,
        )
        return extend_by_framing(ctx) if document.extend_by_framing else ctx

    # -- queries ---------------------------------------------------------------

    def in_cone(self, alpha: KClass) -> bool:
        """Whether ``alpha`` has the right rank and lies in the positive cone."""
        return len(alpha) == self.rank and self.cone(alpha)

    def require_in_cone(self, alpha: KClass) -> KClass:
        """Return ``alpha`` or raise if it lies outside the cone."""
        if len(alpha) != self.rank:
            raise DTWCInputError(f"class {alpha} does not have rank {self.rank}")
        if not self.cone(alpha):
            raise DTWCInputError(f"class {alpha} lies outside the positive cone")
        return alpha

    def chi_bar(self, d: KClass, e: KClass) -> int:
        """Antisymmetric Euler form."""
        return self.euler.bar(d, e)

    def chi_hat(self, d: KClass, e: KClass) -> int:
        """Euler form, when the context has one."""
        return self.euler.hat(d, e)

    def framing_value(self, alpha: KClass) -> int:
        """Framing functional ``F(alpha)``.

        Raises:
            DTWCInputError: If the context carries no framing

        """
        if self.framing is None:
            raise DTWCInputError("this context has no framing functional")
        if len(alpha) != self.rank:
            raise DTWCInputError(f"class {alpha} does not have rank {self.rank}")
        return sum(f * a for f, a in zip(self.framing, alpha))

    def stability(self, name: str) -> WeakStability:
        """Look up a registered stability by (case-insensitive) name.

        Raises:
            DTWCInputError: If nothing is registered under ``name``

        """
        for key, stab in self.stabilities.items():
            if key.lower() == name.lower():
                return stab
        raise DTWCInputError(
            f"unknown stability {name!r}; known: {', '.join(sorted(self.stabilities))}"
        )

    def with_stabilities(self, **extra: WeakStability) -> NumericalContext:
        """Copy of this context with more stabilities registered."""
        registry = dict(self.stabilities)
        registry.update(extra)
        return NumericalContext(
            self.euler,
            cone=self.cone,
            hilbert=self.hilbert,
            framing=self.framing,
            twist=self.twist,
            stabilities=registry,
            quiver=self.quiver,
            parent=self.parent,
        )

    def classes_below(self, alpha: KClass) -> list[KClass]:
        """Cone classes ``0 < beta <= alpha`` (coordinate-wise), in graded-lex order."""
        found = [
            beta
            for beta in itertools.product(*(range(max(x, 0) + 1) for x in alpha))
            if self.in_cone(beta)
        ]
        return sorted(found, key=grlex_key)

    def classes_up_to(self, degree: int) -> list[KClass]:
        """Cone classes with non-negative coordinates summing to at most ``degree``."""
        found = [
            beta
            for beta in itertools.product(range(degree + 1), repeat=self.rank)
            if sum(beta) <= degree and self.in_cone(beta)
        ]
        return sorted(found, key=grlex_key)


def unit_class(rank: int, index: int) -> KClass:
    """Basis class ``e_index``."""
    return tuple(1 if i == index else 0 for i in range(rank))


def stability_from_block(
    name: str, block: StabilityBlock, hilbert: HilbertData | None
) -> WeakStability:
    """Instantiate a stability described in a context document."""
    if block.kind == "trivial":
        return TrivialStability(name)
    if block.kind == "slope":
        assert block.c is not None and block.r is not None
        return SlopeStability.of(block.c, block.r, name)
    if hilbert is None:
        raise DTWCInputError(f"stability {name!r} needs Hilbert data")
    return GiesekerStability(hilbert, name)


def extend_by_framing(ctx: NumericalContext) -> NumericalContext:
    """Add a framing coordinate to ``ctx``.

    The new context has classes ``(beta, d)`` with
    ``chi_bar'((b, d), (c, e)) = chi_bar(b, c) - d F(c) + e F(b)`` and the
    two-level stabilities ``taudot``, ``tautilde`` and ``tauhat``.

    Raises:
        DTWCInputError: If ``ctx`` has no framing functional

    """
    if ctx.framing is None:
        raise DTWCInputError("extend_by_framing needs a framing functional")
    r = ctx.rank
    rows = [list(row) + [ctx.framing[i]] for i, row in enumerate(ctx.euler.chi_bar)]
    rows.append([-f for f in ctx.framing] + [0])
    base_cone = ctx.cone

    def framed_cone(alpha: KClass) -> bool:
        beta, d = alpha[:r], alpha[r]
        if d < 0:
            return False
        if not any(beta):
            return d > 0
        return base_cone(beta)

    _LOGGER.debug("Extended rank %d context by a framing coordinate", r)
    return NumericalContext(
        EulerData.from_chi_bar(rows),
        cone=framed_cone,
        stabilities={
            STABILITY_DOT: TwoLevelStability(0, -1, STABILITY_DOT),
            STABILITY_TILDE: TwoLevelStability(0, 1, STABILITY_TILDE),
            STABILITY_HAT: TwoLevelStability(0, 0, STABILITY_HAT),
        },
        parent=ctx,
    )


def is_generic(ctx: NumericalContext, stab: WeakStability, bound: int) -> GenericityReport:
    """Search for cone classes of equal stability value with nonzero ``chi_bar``.

    Args:
        ctx: Numerical context
        stab: Stability condition to test
        bound: Largest total degree searched

    Returns:
        Report with the first violating pair in graded-lex order, if any

    """
    classes = ctx.classes_up_to(bound)
    values = [stab.value(c) for c in classes]
    checked = 0
    for i, d in enumerate(classes):
        for j in range(i + 1, len(classes)):
            checked += 1
            if values[i] == values[j] and ctx.chi_bar(d, classes[j]):
                _LOGGER.debug("Non-generic pair %s, %s", d, classes[j])
                return GenericityReport(
                    generic=False, checked_pairs=checked, witness=(list(d), list(classes[j]))
                )
    return GenericityReport(generic=True, checked_pairs=checked)


def validate_weak_stability(
    ctx: NumericalContext, stab: WeakStability, bound: int
) -> StabilityReport:
    """Check the weak seesaw property on every cone triple ``beta = alpha + gamma``.

    Either ``tau(alpha) <= tau(beta) <= tau(gamma)`` or the reverse chain must
    hold whenever ``alpha``, ``gamma`` lie in the cone and ``beta`` has total
    degree at most ``bound``.
    """
    classes = ctx.classes_up_to(bound)
    values = {c: stab.value(c) for c in classes}
    checked = 0
    for alpha in classes:
        for gamma in classes:
            beta = add_classes(alpha, gamma)
            if beta not in values:
                continue
            checked += 1
            a, b, g = values[alpha], values[beta], values[gamma]
            if not (a <= b <= g or a >= b >= g):
                return StabilityReport(
                    passed=False,
                    checked_triples=checked,
                    violation=(list(alpha), list(beta), list(gamma)),
                )
    return StabilityReport(passed=True, checked_triples=checked)

