"""Invariant tables and the transforms between them.

Covers Möbius inversion between generalized and BPS invariants, pair
invariants in term form and as a generating function, the inverse
extraction from a pair generating function, the rank-one functional
equation check, and closed forms for the one-vertex loop quivers.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .exceptions import DTWCBudgetError, DTWCInputError
from .lattice import (
    KClass,
    NumericalContext,
    WeakStability,
    add_classes,
    as_class,
    class_gcd,
    divide_class,
)
from .models.results import IntegralityReport, ReinekeReport
from .models.settings import DTWCSettings
from .models.table import TableDocument, TableEntry
from .numerics import binomial, divisors, format_rational, moebius, parse_rational, sign
from .series import (
    SeriesBound,
    TruncatedSeries,
    grlex_key,
    product_expand,
    series_exp,
    series_log,
    series_pow,
    substitute,
)
from .wallcross import enumerate_decompositions

_LOGGER = logging.getLogger(__name__)


class TableKind(str, Enum):
    """What an invariant table holds."""

    DTBAR = "DTbar"
    DTHAT = "DThat"
    PI_NDT = "PI_NDT"
    J = "J"
    CHI_FRAMED = "chi_framed"


@dataclass(frozen=True, eq=False)
class InvariantTable(Mapping[KClass, Fraction]):
    """Finite map from cone classes to exact rationals.

    Absent classes read as zero through :meth:`value`; indexing with ``[]``
    follows the usual mapping contract.
    """

    ctx: NumericalContext
    kind: TableKind
    entries: Mapping[KClass, Fraction] = field(default_factory=dict)
    stability: str = ""

    def __post_init__(self) -> None:
        """Normalize keys and values and check every class lies in the cone."""
        cleaned: dict[KClass, Fraction] = {}
        for klass, value in self.entries.items():
            key = self.ctx.require_in_cone(as_class(klass))
            cleaned[key] = parse_rational(value)
        ordered = {k: cleaned[k] for k in sorted(cleaned, key=grlex_key)}
        object.__setattr__(self, "entries", ordered)

    def __getitem__(self, klass: KClass) -> Fraction:
        return self.entries[as_class(klass)]

    def __iter__(self) -> Iterator[KClass]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InvariantTable):
            return NotImplemented
        return self.kind == other.kind and dict(self.entries) == dict(other.entries)

    __hash__ = None  # type: ignore[assignment]

    def value(self, klass: Sequence[int]) -> Fraction:
        """Value of ``klass``, zero when absent."""
        return self.entries.get(as_class(klass), Fraction(0))

    def nonzero(self) -> dict[KClass, Fraction]:
        """Entries with nonzero value."""
        return {k: v for k, v in self.entries.items() if v}

    def with_kind(self, kind: TableKind, entries: Mapping[KClass, Fraction]) -> InvariantTable:
        """A table on the same context and stability with new entries."""
        return InvariantTable(self.ctx, kind, entries, self.stability)

    def to_document(self) -> TableDocument:
        """Serialize in graded-lex class order."""
        return TableDocument(
            kind=self.kind.value,
            stability=self.stability,
            entries=[
                TableEntry(klass=list(k), value=format_rational(v))
                for k, v in self.entries.items()
            ],
        )

    @classmethod
    def from_document(cls, document: TableDocument, ctx: NumericalContext) -> InvariantTable:
        """Deserialize a :class:`TableDocument` against ``ctx``."""
        entries: dict[KClass, Fraction] = {}
        for entry in document.entries:
            key = as_class(entry.klass)
            if key in entries:
                raise DTWCInputError(f"class {list(key)} appears twice")
            entries[key] = parse_rational(entry.value)
        return cls(ctx, TableKind(document.kind), entries, document.stability)


# -- Möbius transforms ----------------------------------------------------------------


def _divisor_sum(table: InvariantTable, weight: bool) -> dict[KClass, Fraction]:
    out: dict[KClass, Fraction] = {}
    for klass in table:
        total = Fraction(0)
        for m in divisors(class_gcd(klass)):
            part = divide_class(klass, m)
            if part not in table.entries:
                raise DTWCInputError(
                    f"table is missing class {list(part)} dividing {list(klass)}"
                )
            factor = Fraction(moebius(m) if weight else 1, m * m)
            total += factor * table.entries[part]
        out[klass] = total
    return out


def bps_from_dt(table: InvariantTable) -> InvariantTable:
    """BPS invariants ``sum_{m | a} moebius(m)/m**2 * DT^(a/m)``.

    Raises:
        DTWCInputError: If a class ``a/m`` is missing from the table

    """
    return table.with_kind(TableKind.DTHAT, _divisor_sum(table, weight=True))


def dt_from_bps(table: InvariantTable) -> InvariantTable:
    """Generalized invariants ``sum_{m | a} 1/m**2 * DTHAT^(a/m)``.

    Raises:
        DTWCInputError: If a class ``a/m`` is missing from the table

    """
    return table.with_kind(TableKind.DTBAR, _divisor_sum(table, weight=False))


def integrality_report(table: InvariantTable) -> IntegralityReport:
    """List the classes whose value is not an integer."""
    witnesses = [list(k) for k, v in table.entries.items() if v.denominator != 1]
    for witness in witnesses:
        _LOGGER.warning("Non-integral %s value at class %s", table.kind.value, witness)
    return IntegralityReport(
        integral=not witnesses, checked_classes=len(table), witnesses=witnesses
    )


# -- pair invariants ------------------------------------------------------------------


def _same_level(
    table: Mapping[KClass, Fraction], tau: WeakStability | None, target: KClass
) -> list[KClass]:
    level = tau.value(target) if tau is not None else None
    return [
        k
        for k, v in table.items()
        if v and all(a <= b for a, b in zip(k, target))
        and (tau is None or tau.value(k) == level)
    ]


def pair_transform(
    ctx: NumericalContext,
    table: Mapping[KClass, Fraction],
    target: Sequence[int],
    signed: bool = True,
    tau: WeakStability | None = None,
    settings: DTWCSettings | None = None,
) -> Fraction:
    """Pair invariant of ``target`` from the invariants of its equal-stability parts.

    Sums over ordered decompositions ``(a_1, ..., a_l)`` with
    ``f_i = F(a_i) - chi_bar(a_1 + ... + a_(i-1), a_i)`` of
    ``(-1)**l/l! * prod (-1)**f_i * f_i * DT^(a_i)`` when signed, or of
    ``1/l! * prod f_i * J^(a_i)`` for the unsigned Euler characteristic.

    Raises:
        DTWCInputError: If ``ctx`` has no framing functional
        DTWCBudgetError: If a decomposition needs more parts than allowed

    """
    caps = settings or DTWCSettings()
    goal = ctx.require_in_cone(as_class(target))
    if ctx.framing is None:
        raise DTWCInputError("pair_transform needs a framing functional")
    support = _same_level(table, tau, goal)
    if not support:
        return Fraction(0)
    found = enumerate_decompositions(ctx, goal, support, caps.max_parts)
    if found.truncated:
        raise DTWCBudgetError(f"decompositions of {goal} need more than {caps.max_parts} parts")
    result = Fraction(0)
    for decomposition in found.decompositions:
        parts = decomposition.parts
        term = Fraction(1, math.factorial(len(parts)))
        if signed:
            term *= sign(len(parts))
        prefix = (0,) * ctx.rank
        for part in parts:
            f = ctx.framing_value(part) - ctx.chi_bar(prefix, part)
            if not f:
                term = Fraction(0)
                break
            term *= f * table[part]
            if signed:
                term *= sign(f)
            prefix = add_classes(prefix, part)
        result += term
    return result


def _as_bound(ctx: NumericalContext, bound: SeriesBound | int) -> SeriesBound:
    if isinstance(bound, SeriesBound):
        if bound.arity != ctx.rank:
            raise DTWCInputError(f"series arity {bound.arity} differs from rank {ctx.rank}")
        return bound
    return SeriesBound.total_degree(ctx.rank, bound)


def pair_series(
    ctx: NumericalContext,
    table: Mapping[KClass, Fraction],
    bound: SeriesBound | int,
    tau: WeakStability | None = None,
) -> TruncatedSeries:
    """Generating function ``1 + sum PI q^d = exp[-sum (-1)**F(d) F(d) DT^d q^d]``.

    Raises:
        DTWCInputError: If the table classes do not share one stability value,
            if ``chi_bar`` does not vanish between them, or if there is no framing

    """
    series_bound = _as_bound(ctx, bound)
    support = [k for k, v in table.items() if v and series_bound.admits(k)]
    if tau is not None and len({tau.value(k) for k in support}) > 1:
        raise DTWCInputError("pair_series needs every class at one stability value")
    for a, b in itertools.combinations(support, 2):
        if ctx.chi_bar(a, b):
            raise DTWCInputError(
                f"chi_bar({list(a)}, {list(b)}) is nonzero; the exponential form does not apply"
            )
    exponent: dict[KClass, Fraction] = {}
    for klass in support:
        f = ctx.framing_value(klass)
        exponent[klass] = -sign(f) * f * table[klass]
    return series_exp(TruncatedSeries(series_bound, exponent))


def dt_from_pair_series(
    ctx: NumericalContext, series: TruncatedSeries, stability: str = ""
) -> InvariantTable:
    """Recover ``DT^d = -(-1)**F(d)/F(d) * [q^d] log(series)`` for classes with ``F(d) != 0``.

    Raises:
        DTWCInputError: If a log coefficient is nonzero at a class with ``F(d) = 0``

    """
    if series.arity != ctx.rank:
        raise DTWCInputError(f"series arity {series.arity} differs from rank {ctx.rank}")
    logarithm = series_log(series)
    entries: dict[KClass, Fraction] = {}
    for monomial, value in logarithm.items():
        f = ctx.framing_value(monomial)
        if not f:
            raise DTWCInputError(
                f"class {list(monomial)} has F = 0 but log coefficient {value}"
            )
        entries[monomial] = -Fraction(sign(f), f) * value
    return InvariantTable(ctx, TableKind.DTBAR, entries, stability)


# -- functional equation --------------------------------------------------------------


def _revert_fixed_point(rhs: TruncatedSeries, exponent: int, order: int) -> TruncatedSeries:
    """Solve ``y = x * rhs(y)**exponent`` for ``y`` as a series in ``x``."""
    bound = rhs.bound
    x = TruncatedSeries.variable(bound, 0)
    y = x
    for _ in range(order):
        y = x * series_pow(substitute(rhs, [y]), exponent)
    return y


def _unwind(log_coefficients: TruncatedSeries, order: int, scale: int) -> list[Fraction]:
    """Solve ``scale**n * n [x^n] log = sum_{i | n} i**2 c_i`` for ``c_1..c_order``."""
    values: list[Fraction] = []
    for n in range(1, order + 1):
        known = sum((i * i * values[i - 1] for i in divisors(n) if i < n), Fraction(0))
        values.append((scale**n * n * log_coefficients.get((n,)) - known) / (n * n))
    return values


def _factor_product(
    values: Sequence[Fraction], order: int, twist: int, power: int
) -> TruncatedSeries:
    """``prod (1 - (twist x)**i)**(power * i * v_i)`` truncated at ``order``."""
    bound = SeriesBound.total_degree(1, order)
    factors = [
        (TruncatedSeries(bound, {(0,): 1, (i,): -(twist**i)}), power * i * Fraction(v))
        for i, v in enumerate(values, start=1)
        if v
    ]
    return product_expand(factors, bound)


def _report(
    n: int, a: Sequence[Fraction], b: Sequence[Fraction], converse: bool
) -> ReinekeReport:
    checked = a if converse else b
    witnesses = [i for i, v in enumerate(checked, start=1) if v.denominator != 1]
    if witnesses:
        _LOGGER.warning("Non-integral coefficients at indices %s", witnesses)
    return ReinekeReport(
        n=n,
        a=[format_rational(v) for v in a],
        b=[format_rational(v) for v in b],
        integral=not witnesses,
        witnesses=witnesses,
    )


def reineke_check(n: int, a: Sequence[Fraction | int], order: int) -> ReinekeReport:
    """Solve the rank-one functional equation for the ``b`` sequence.

    Builds ``S(t) = prod (1 - (e t)**i)**(-i a_i)`` with ``e = (-1)**n``,
    then reads ``b_i`` off ``S(t) = prod (1 - (t S(t)**n)**i)**(i b_i)``.
    Integrality of every ``b_i`` is reported.

    Args:
        n: The exponent ``N``, usually ``chi_hat(d, d)``
        a: Coefficients ``a_1, a_2, ...``; missing ones read as zero
        order: Series order

    """
    if order < 1:
        raise DTWCInputError(f"order must be >= 1, got {order}")
    a_values = [Fraction(v) for v in a][:order]
    a_values += [Fraction(0)] * (order - len(a_values))
    s = _factor_product(a_values, order, sign(n), -1)
    # u = t S(t)**n; invert to t(u) = u S(t(u))**(-n), then G(u) = S(t(u))
    t_of_u = _revert_fixed_point(s, -n, order)
    g = substitute(s, [t_of_u])
    b_values = [-v for v in _unwind(series_log(g), order, 1)]
    _LOGGER.debug("Functional equation solved to order %d", order)
    return _report(n, a_values, b_values, converse=False)


def reineke_converse(n: int, b: Sequence[Fraction | int], order: int) -> ReinekeReport:
    """Rebuild ``S(t)`` from the ``b`` sequence and extract the ``a`` sequence.

    Integrality of every ``a_i`` is reported.
    """
    if order < 1:
        raise DTWCInputError(f"order must be >= 1, got {order}")
    b_values = [Fraction(v) for v in b][:order]
    b_values += [Fraction(0)] * (order - len(b_values))
    g = _factor_product(b_values, order, 1, 1)
    u_of_t = _revert_fixed_point(g, n, order)
    s = substitute(g, [u_of_t])
    a_values = _unwind(series_log(s), order, sign(n))
    return _report(n, a_values, b_values, converse=True)


def weighted_euler(points: Iterable[tuple[Fraction | int, int]]) -> Fraction:
    """Weighted Euler characteristic ``-sum coefficient * value``."""
    return -sum((Fraction(c) * v for c, v in points), Fraction(0))


# -- loop quivers ---------------------------------------------------------------------


def mloop_euler(m: int, d: int, e: int) -> Fraction:
    """Euler characteristic of framed modules of the ``m``-loop quiver.

    ``e / ((m-1)d + e) * binomial(md + e - 1, d)``.
    """
    if m < 0 or d < 0 or e < 1:
        raise DTWCInputError(f"need m >= 0, d >= 0, e >= 1; got {m}, {d}, {e}")
    if d == 0:
        return Fraction(1)
    if m == 0:
        return Fraction(binomial(e, d))
    denominator = (m - 1) * d + e
    return Fraction(e, denominator) * binomial(m * d + e - 1, d)


def mloop_ndt(m: int, d: int, e: int) -> Fraction:
    """Signed count ``(-1)**((1-m)d**2 + ed)`` times :func:`mloop_euler`."""
    return sign((1 - m) * d * d + e * d) * mloop_euler(m, d, e)


def mloop_dtbar(m: int, d: int) -> Fraction:
    """Generalized invariant ``(-1)**((m+1)d+1)/(m d**2) * binomial(md, d)``."""
    if m < 1 or d < 1:
        raise DTWCInputError(f"need m >= 1 and d >= 1; got {m}, {d}")
    return Fraction(sign((m + 1) * d + 1), m * d * d) * binomial(m * d, d)


def mloop_dthat(m: int, d: int) -> Fraction:
    """BPS invariant of the ``m``-loop quiver in class ``d``."""
    if m < 1 or d < 1:
        raise DTWCInputError(f"need m >= 1 and d >= 1; got {m}, {d}")
    total = Fraction(0)
    for k in divisors(d):
        total += Fraction(moebius(k), k * k) * mloop_dtbar(m, d // k)
    return total
