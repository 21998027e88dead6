"""Catalog of worked examples with closed-form invariant tables.

Each entry carries a numerical context, a generating function for its
framed (pair) invariants and closed forms for the generalized and BPS
invariants. Verifying an entry expands the generating function, extracts
the generalized invariants from it, applies the Möbius transform and
compares both tables with the closed forms. Entries whose Euler form does
not vanish are checked through the term-form pair transform instead.
"""

from __future__ import annotations

import asyncio
import itertools
import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .const import (
    CATALOG_DEFAULT_ORDER,
    CATALOG_FOUR_VARIABLE_CAP,
    DIM0_DEFAULT_EULER,
    GRASSMANN_DEFAULT_RANK,
)
from .exceptions import DTWCInputError, DTWCVerificationError
from .invariants import (
    InvariantTable,
    TableKind,
    bps_from_dt,
    dt_from_pair_series,
    integrality_report,
    mloop_dtbar,
    mloop_dthat,
    mloop_ndt,
    pair_transform,
)
from .lattice import KClass, NumericalContext, class_gcd, divide_class
from .models.quiver import Quiver
from .models.results import Mismatch, VerificationReport
from .models.settings import DTWCSettings
from .numerics import binomial, divisors, format_rational, sign
from .series import SeriesBound, TruncatedSeries, product_expand, series_exp
from .wallcross import nested_bracket_pair_formula

_LOGGER = logging.getLogger(__name__)

Factor = tuple[TruncatedSeries, int | Fraction]
ClosedForm = Callable[[KClass], Fraction]
Check = Callable[["CatalogEntry", SeriesBound, DTWCSettings], tuple[int, list[Mismatch]]]


@dataclass(frozen=True, slots=True)
class CatalogEntry:
    """A worked example and everything needed to re-derive it.

    Attributes:
        name: Registry name
        summary: One-line description
        provenance: Where the formulas come from
        ctx: Numerical context, carrying the framing used by the generating function
        default_order: Order used when the caller gives none
        bound: Maps an order to the series truncation
        factors: Product formula for the generating function, as base/exponent pairs
        ndt_coefficients: Coefficients of the generating function, when given term by term
        dtbar_closed_form: Generalized invariant of a class
        dthat_closed_form: BPS invariant of a class
        extra_checks: Further consistency checks run after the table comparison

    """

    name: str
    summary: str
    provenance: tuple[str, ...]
    ctx: NumericalContext
    default_order: int = CATALOG_DEFAULT_ORDER
    bound: Callable[[int], SeriesBound] | None = None
    factors: Callable[[SeriesBound], list[Factor]] | None = None
    ndt_coefficients: ClosedForm | None = None
    dtbar_closed_form: ClosedForm | None = None
    dthat_closed_form: ClosedForm | None = None
    extra_checks: tuple[Check, ...] = field(default=())

    def series_bound(self, order: int) -> SeriesBound:
        """Truncation used at ``order``."""
        if self.bound is not None:
            return self.bound(order)
        return SeriesBound.total_degree(self.ctx.rank, order)

    def ndt_series(self, bound: SeriesBound) -> TruncatedSeries | None:
        """Generating function ``1 + sum NDT^d q^d``, or None when the entry has none."""
        if self.factors is not None:
            return product_expand(self.factors(bound), bound)
        if self.ndt_coefficients is not None:
            zero = (0,) * bound.arity
            terms = {m: self.ndt_coefficients(m) for m in bound.monomials() if m != zero}
            terms[zero] = Fraction(1)
            return TruncatedSeries(bound, terms)
        return None


# -- helpers --------------------------------------------------------------------------


def _base(
    bound: SeriesBound, exponents: Sequence[int], coefficient: int
) -> TruncatedSeries | None:
    """``1 - coefficient * q^exponents``, or None when the monomial lies beyond the bound."""
    if not bound.admits(exponents):
        return None
    return TruncatedSeries(bound, {(0,) * bound.arity: 1, tuple(exponents): -coefficient})


def _collect(bound: SeriesBound, powers: Iterable[tuple[Sequence[int], int, int]]) -> list[Factor]:
    factors: list[Factor] = []
    for exponents, coefficient, power in powers:
        base = _base(bound, exponents, coefficient)
        if base is not None and power:
            factors.append((base, power))
    return factors


def _divisor_l2(d: int) -> Fraction:
    return sum((Fraction(1, l2 * l2) for l2 in divisors(d)), Fraction(0))


def _dtbar_from_dthat(dthat: ClosedForm) -> ClosedForm:
    """``DT^d = sum_{m | d} DTHAT^(d/m) / m**2``."""

    def closed_form(klass: KClass) -> Fraction:
        return sum(
            (
                Fraction(1, m * m) * dthat(divide_class(klass, m))
                for m in divisors(class_gcd(klass))
            ),
            Fraction(0),
        )

    return closed_form


def _mismatch(check: str, klass: Sequence[int], expected: Fraction, actual: Fraction) -> Mismatch:
    return Mismatch(
        check=check,
        klass=list(klass),
        expected=format_rational(expected),
        actual=format_rational(actual),
    )


def _framed_classes(ctx: NumericalContext, bound: SeriesBound) -> list[KClass]:
    return [m for m in bound.monomials() if ctx.in_cone(m) and ctx.framing_value(m) != 0]


def _complete(
    ctx: NumericalContext, table: InvariantTable, classes: Sequence[KClass]
) -> InvariantTable:
    """Fill the classes a table omits because their value is zero."""
    return InvariantTable(ctx, table.kind, {k: table.value(k) for k in classes}, table.stability)


def compare_tables(
    check: str, table: InvariantTable, closed_form: ClosedForm, classes: Sequence[KClass]
) -> list[Mismatch]:
    """Compare ``table`` with ``closed_form`` on ``classes``."""
    mismatches = []
    for klass in classes:
        expected, actual = closed_form(klass), table.value(klass)
        if expected != actual:
            mismatches.append(_mismatch(check, klass, expected, actual))
    return mismatches


# -- product formulas -----------------------------------------------------------------


def macmahon_factors(bound: SeriesBound, chi: int) -> list[Factor]:
    """``M(-q)**chi = prod_k (1 - (-q)**k)**(-k chi)`` in one variable."""
    return _collect(bound, (((k,), sign(k), -k * chi) for k in range(1, bound.max_degree + 1)))


def conifold_factors(bound: SeriesBound) -> list[Factor]:
    """Framed counts of the conifold quiver with framing at ``v0``.

    ``prod_k (1 - (-q0 q1)**k)**(-2k) (1 - (-q0)**k q1**(k-1))**k (1 - (-q0)**k q1**(k+1))**k``
    """
    powers = []
    for k in range(1, bound.max_degree + 1):
        powers.append(((k, k), sign(k), -2 * k))
        powers.append(((k, k - 1), sign(k), k))
        powers.append(((k, k + 1), sign(k), k))
    return _collect(bound, powers)


def klein_factors(bound: SeriesBound) -> list[Factor]:
    """Framed counts of the Klein four-group McKay quiver with framing at ``v0``."""
    powers: list[tuple[Sequence[int], int, int]] = []
    others = (1, 2, 3)
    for k in range(1, bound.max_degree + 1):
        s = sign(k)
        powers.append(((k, k, k, k), s, -4 * k))
        for i in others:
            for shift in (1, -1):
                # (-q0 q_i)^k (q_j q_l)^(k +- 1)
                pair = [k, k + shift, k + shift, k + shift]
                pair[i] = k
                powers.append((pair, s, -k))
                # (-q0 q_j q_l)^k q_i^(k +- 1)
                triple = [k, k, k, k]
                triple[i] = k + shift
                powers.append((triple, s, k))
        for shift in (1, -1):
            powers.append(((k, k + shift, k + shift, k + shift), s, k))
    return _collect(bound, powers)


def cyclic_factors(bound: SeriesBound, n: int) -> list[Factor]:
    """Framed counts of the cyclic McKay quiver on ``n`` vertices with framing at ``v0``.

    With ``Q = q0 ... q(n-1)`` and ``q[a,b) = q_a ... q_(b-1)``:
    ``prod_k (1 - (-Q)**k)**(-nk) prod_(0<a<b<=n) (1 - (-Q)**k q[a,b))**(-k)
    (1 - (-Q)**k / q[a,b))**(-k)``.
    """
    powers: list[tuple[Sequence[int], int, int]] = []
    for k in range(1, bound.max_degree + 1):
        s = sign(k)
        powers.append(((k,) * n, s, -n * k))
        for a in range(1, n):
            for b in range(a + 1, n + 1):
                up = [k + 1 if a <= i < b else k for i in range(n)]
                down = [k - 1 if a <= i < b else k for i in range(n)]
                powers.append((up, s, -k))
                powers.append((down, s, -k))
    return _collect(bound, powers)


# -- closed forms ---------------------------------------------------------------------


def dim0_dtbar(chi: int) -> ClosedForm:
    """``DT^d = -chi sum_{l | d} 1/l**2``."""
    return lambda klass: -chi * _divisor_l2(klass[0])


def conifold_dtbar(klass: KClass) -> Fraction:
    """Generalized invariants of the conifold quiver."""
    d0, d1 = klass
    if d0 == d1:
        return -2 * _divisor_l2(d0)
    gap = abs(d0 - d1)
    return Fraction(1, gap * gap) if d0 % gap == 0 else Fraction(0)


def conifold_dthat(klass: KClass) -> Fraction:
    """BPS invariants of the conifold quiver."""
    d0, d1 = klass
    if d0 == d1:
        return Fraction(-2)
    return Fraction(1) if abs(d0 - d1) == 1 else Fraction(0)


def klein_dthat(klass: KClass) -> Fraction:
    """BPS invariants of the Klein four-group McKay quiver."""
    top, low = max(klass), min(klass)
    if top == low:
        return Fraction(-4)
    if low != top - 1:
        return Fraction(0)
    highs = sum(1 for x in klass if x == top)
    return Fraction(-1) if highs == 2 else Fraction(1)


def cyclic_dthat(n: int) -> ClosedForm:
    """BPS invariants of the cyclic McKay quiver on ``n`` vertices.

    ``-n`` on the diagonal, ``-1`` when the entries equal to ``k`` form a
    proper cyclic interval and the rest equal ``k - 1``, zero otherwise.
    """

    def closed_form(klass: KClass) -> Fraction:
        top, low = max(klass), min(klass)
        if top == low:
            return Fraction(-n)
        if low != top - 1:
            return Fraction(0)
        starts = sum(1 for i in range(n) if klass[i] == top and klass[i - 1] == low)
        return Fraction(-1) if starts == 1 else Fraction(0)

    return closed_form


def grassmann_pi(p: int, m: int) -> Fraction:
    """Signed Euler characteristic ``(-1)**(m(P-m)) binomial(P, m)`` of a Grassmannian."""
    return Fraction(sign(m * (p - m)) * binomial(p, m))


def _multiple_cover(klass: KClass) -> Fraction:
    """``1/m**2`` on multiples ``m e_i`` of a basis class, zero elsewhere."""
    support = [x for x in klass if x]
    return Fraction(1, support[0] ** 2) if len(support) == 1 else Fraction(0)


def _simple(klass: KClass) -> Fraction:
    return Fraction(1) if sum(klass) == 1 else Fraction(0)


def two_class_pi(p1: int, p2: int, d: int) -> Fraction:
    """Pair invariant of ``a1 + a2`` when ``chi_bar(a1, a2) = d``."""
    return Fraction(sign(p1 + p2 + d) * (p1 + d) * p2)


# -- extra checks ---------------------------------------------------------------------


def _conifold_swapped(
    entry: CatalogEntry, bound: SeriesBound, settings: DTWCSettings
) -> tuple[int, list[Mismatch]]:
    """Re-derive with the variables exchanged and the framing at ``v1``."""
    swapped_ctx = NumericalContext.from_quiver(Quiver.conifold(), framing=(0, 1))
    swapped = product_expand(conifold_factors(bound), bound).permute([1, 0])
    table = dt_from_pair_series(swapped_ctx, swapped)
    classes = _framed_classes(swapped_ctx, bound)
    mismatches = compare_tables("swapped-dtbar", table, conifold_dtbar, classes)
    for klass in classes:
        mirror = (klass[1], klass[0])
        if bound.admits(mirror) and entry.ctx.framing_value(mirror):
            if table.value(klass) != conifold_dtbar(mirror):
                mismatches.append(
                    _mismatch("symmetry", klass, conifold_dtbar(mirror), table.value(klass))
                )
    return len(classes), mismatches


def _mloop_exp_form(m: int) -> Check:
    def check(
        entry: CatalogEntry, bound: SeriesBound, settings: DTWCSettings
    ) -> tuple[int, list[Mismatch]]:
        exponent = TruncatedSeries(
            bound,
            {
                (d,): Fraction(sign(m * d), m * d) * binomial(m * d, d)
                for d in range(1, bound.max_degree + 1)
            },
        )
        expected = entry.ndt_series(bound)
        assert expected is not None
        actual = series_exp(exponent)
        mismatches = [
            _mismatch("exp-form", mono, expected.get(mono), actual.get(mono))
            for mono in bound.monomials()
            if expected.get(mono) != actual.get(mono)
        ]
        return bound.max_degree, mismatches

    return check


def _integral_bps(
    entry: CatalogEntry, bound: SeriesBound, settings: DTWCSettings
) -> tuple[int, list[Mismatch]]:
    classes = _framed_classes(entry.ctx, bound)
    assert entry.dthat_closed_form is not None
    table = InvariantTable(
        entry.ctx, TableKind.DTHAT, {k: entry.dthat_closed_form(k) for k in classes}
    )
    report = integrality_report(table)
    mismatches = [
        _mismatch("integrality", w, Fraction(round(table.value(tuple(w)))), table.value(tuple(w)))
        for w in report.witnesses
    ]
    return report.checked_classes, mismatches


def _dihedral(n: int) -> Check:
    def check(
        entry: CatalogEntry, bound: SeriesBound, settings: DTWCSettings
    ) -> tuple[int, list[Mismatch]]:
        series = entry.ndt_series(bound)
        assert series is not None
        classes = _framed_classes(entry.ctx, bound)
        table = bps_from_dt(_complete(entry.ctx, dt_from_pair_series(entry.ctx, series), classes))
        moves = [[(i + r) % n for i in range(n)] for r in range(n)]
        moves += [[(r - i) % n for i in range(n)] for r in range(n)]
        checked, mismatches = 0, []
        for klass in classes:
            for move in moves:
                image = tuple(klass[j] for j in move)
                if image in table.entries and image != klass:
                    checked += 1
                    if table.value(image) != table.value(klass):
                        mismatches.append(
                            _mismatch("dihedral", image, table.value(klass), table.value(image))
                        )
        return checked, mismatches

    return check


def _grassmann_pairs(
    entry: CatalogEntry, bound: SeriesBound, settings: DTWCSettings
) -> tuple[int, list[Mismatch]]:
    """Term-form pair transforms for every rank up to the entry's, signed and unsigned."""
    assert entry.ctx.framing is not None
    top = min(bound.max_degree, settings.max_parts)
    dt = {(m,): Fraction(1, m * m) for m in range(1, top + 1)}
    j_values = {(m,): Fraction(sign(m - 1), m * m) for m in range(1, top + 1)}
    checked, mismatches = 0, []
    for p in range(1, entry.ctx.framing[0] + 1):
        ctx = NumericalContext.abstract(rank=1, framing=(p,))
        for m in range(1, top + 1):
            checked += 1
            signed = pair_transform(ctx, dt, (m,), settings=settings)
            if signed != grassmann_pi(p, m):
                mismatches.append(
                    _mismatch(f"pair-transform:P={p}", (m,), grassmann_pi(p, m), signed)
                )
            unsigned = pair_transform(ctx, j_values, (m,), signed=False, settings=settings)
            if unsigned != binomial(p, m):
                mismatches.append(
                    _mismatch(f"unsigned:P={p}", (m,), Fraction(binomial(p, m)), unsigned)
                )
    return checked, mismatches


def _grassmann_product_pairs(
    entry: CatalogEntry, bound: SeriesBound, settings: DTWCSettings
) -> tuple[int, list[Mismatch]]:
    assert entry.ctx.framing is not None
    ranks = entry.ctx.framing
    top = min(bound.max_degree, settings.max_parts)
    dt: dict[KClass, Fraction] = {}
    for i in range(len(ranks)):
        for m in range(1, top + 1):
            klass = tuple(m if j == i else 0 for j in range(len(ranks)))
            dt[klass] = Fraction(1, m * m)
    checked, mismatches = 0, []
    for klass in entry.ctx.classes_up_to(top):
        expected = Fraction(1)
        for p, m in zip(ranks, klass):
            expected *= grassmann_pi(p, m)
        actual = pair_transform(entry.ctx, dt, klass, settings=settings)
        checked += 1
        if actual != expected:
            mismatches.append(_mismatch("pair-transform", klass, expected, actual))
    return checked, mismatches


def _two_class_pairs(
    entry: CatalogEntry, bound: SeriesBound, settings: DTWCSettings
) -> tuple[int, list[Mismatch]]:
    """Pair invariants of two rigid classes joined by ``d`` extensions.

    Checked through the term-form transform, its unsigned variant and the
    nested-bracket form for every framing rank and ``d`` up to the order.
    """
    top = min(bound.max_degree, GRASSMANN_DEFAULT_RANK)
    target = (1, 1)
    checked, mismatches = 0, []
    for d in range(top + 1):
        dt = {(1, 0): Fraction(1), (0, 1): Fraction(1), target: Fraction(sign(d - 1) * d, 2)}
        j_values = {(1, 0): Fraction(1), (0, 1): Fraction(1), target: Fraction(d, 2)}
        for p1, p2 in itertools.product(range(1, top + 1), repeat=2):
            ctx = NumericalContext.abstract([[0, d], [-d, 0]], framing=(p1, p2))
            expected = two_class_pi(p1, p2, d)
            label = f"P=({p1},{p2}),d={d}"
            checked += 1
            signed = pair_transform(ctx, dt, target, settings=settings)
            if signed != expected:
                mismatches.append(_mismatch(f"pair-transform:{label}", target, expected, signed))
            nested = nested_bracket_pair_formula(ctx, dt, target)
            if nested != expected:
                mismatches.append(_mismatch(f"nested-bracket:{label}", target, expected, nested))
            unsigned = pair_transform(ctx, j_values, target, signed=False, settings=settings)
            if unsigned != abs(expected):
                mismatches.append(_mismatch(f"unsigned:{label}", target, abs(expected), unsigned))
    return checked, mismatches


# -- entries --------------------------------------------------------------------------


def _c3_entry() -> CatalogEntry:
    ctx = NumericalContext.from_quiver(Quiver.loops(3), framing=(1,))
    return CatalogEntry(
        name="c3",
        summary="Framed counts on C3: the MacMahon function at -q",
        provenance=("MacMahon product for ideal sheaves of points on C3",),
        ctx=ctx,
        default_order=10,
        factors=lambda bound: macmahon_factors(bound, 1),
        dtbar_closed_form=dim0_dtbar(1),
        dthat_closed_form=lambda klass: Fraction(-1),
    )


def _dim0_entry(chi: int = DIM0_DEFAULT_EULER) -> CatalogEntry:
    ctx = NumericalContext.abstract(rank=1, framing=(1,))
    return CatalogEntry(
        name="dim0" if chi == DIM0_DEFAULT_EULER else f"dim0:{chi}",
        summary=f"Dimension-zero sheaves on a Calabi-Yau threefold with Euler characteristic {chi}",
        provenance=("Hilbert schemes of points weighted by the Behrend function",),
        ctx=ctx,
        default_order=10,
        factors=lambda bound: macmahon_factors(bound, chi),
        dtbar_closed_form=dim0_dtbar(chi),
        dthat_closed_form=lambda klass: Fraction(-chi),
    )


def _conifold_entry() -> CatalogEntry:
    return CatalogEntry(
        name="conifold",
        summary="Noncommutative conifold, framing at v0",
        provenance=("noncommutative conifold product formula", "v0/v1 symmetry of the quiver"),
        ctx=NumericalContext.from_quiver(Quiver.conifold(), framing=(1, 0)),
        factors=conifold_factors,
        dtbar_closed_form=conifold_dtbar,
        dthat_closed_form=conifold_dthat,
        extra_checks=(_conifold_swapped,),
    )


def _klein_entry() -> CatalogEntry:
    return CatalogEntry(
        name="c3z2z2",
        summary="Equivariant sheaves on C3 for the Klein four-group, framing at v0",
        provenance=("orbifold product formula for the Klein four-group",),
        ctx=NumericalContext.from_quiver(Quiver.klein_mckay(), framing=(1, 0, 0, 0)),
        default_order=CATALOG_FOUR_VARIABLE_CAP,
        bound=lambda order: SeriesBound.per_variable([order] * 4),
        factors=klein_factors,
        dtbar_closed_form=_dtbar_from_dthat(klein_dthat),
        dthat_closed_form=klein_dthat,
    )


def _cyclic_entry(n: int) -> CatalogEntry:
    dthat = cyclic_dthat(n)
    return CatalogEntry(
        name=f"c3zn:{n}",
        summary=f"Equivariant sheaves on C3 for the cyclic group of order {n}, framing at v0",
        provenance=("orbifold product formula for cyclic groups", "dihedral symmetry"),
        ctx=NumericalContext.from_quiver(Quiver.cyclic_mckay(n), framing=(1,) + (0,) * (n - 1)),
        factors=lambda bound: cyclic_factors(bound, n),
        dtbar_closed_form=_dtbar_from_dthat(dthat),
        dthat_closed_form=dthat,
        extra_checks=(_dihedral(n),),
    )


def _mloop_entry(m: int) -> CatalogEntry:
    return CatalogEntry(
        name=f"mloop:{m}",
        summary=f"Framed modules of the {m}-loop quiver, trivial stability",
        provenance=("Euler characteristics of noncommutative Hilbert schemes",),
        ctx=NumericalContext.from_quiver(Quiver.loops(m), framing=(1,)),
        default_order=10,
        ndt_coefficients=lambda klass: mloop_ndt(m, klass[0], 1),
        dtbar_closed_form=lambda klass: mloop_dtbar(m, klass[0]),
        dthat_closed_form=lambda klass: mloop_dthat(m, klass[0]),
        extra_checks=(_mloop_exp_form(m), _integral_bps),
    )


def _grassmann_entry(p: int = GRASSMANN_DEFAULT_RANK) -> CatalogEntry:
    return CatalogEntry(
        name="grassmann",
        summary=f"Stable pairs on multiples of a rigid stable sheaf, P = {p}",
        provenance=("Grassmannian moduli of pairs", "multiple cover formula"),
        ctx=NumericalContext.abstract(rank=1, framing=(p,)),
        ndt_coefficients=lambda klass: grassmann_pi(p, klass[0]),
        dtbar_closed_form=_multiple_cover,
        dthat_closed_form=_simple,
        extra_checks=(_grassmann_pairs,),
    )


def _grassmann_product_entry(ranks: Sequence[int] = (3, 2)) -> CatalogEntry:
    def coefficients(klass: KClass) -> Fraction:
        value = Fraction(1)
        for p, m in zip(ranks, klass):
            value *= grassmann_pi(p, m)
        return value

    return CatalogEntry(
        name="grassmann-product",
        summary="Stable pairs on sums of distinct rigid stable sheaves",
        provenance=("products of Grassmannians and projective spaces",),
        ctx=NumericalContext.abstract(rank=len(ranks), framing=tuple(ranks)),
        default_order=6,
        ndt_coefficients=coefficients,
        dtbar_closed_form=_multiple_cover,
        dthat_closed_form=_simple,
        extra_checks=(_grassmann_product_pairs,),
    )


def _two_class_entry() -> CatalogEntry:
    return CatalogEntry(
        name="two-class",
        summary="Two rigid stable sheaves with extensions in one direction",
        provenance=("pairs on a non-split extension", "nested Lie bracket form"),
        ctx=NumericalContext.abstract([[0, 1], [-1, 0]], framing=(1, 1)),
        default_order=3,
        extra_checks=(_two_class_pairs,),
    )


class CatalogRegistry:
    """Registry of catalog entries, looked up by case-insensitive name."""

    def __init__(self) -> None:
        """Register the built-in entries."""
        self._entries: dict[str, Callable[[], CatalogEntry]] = {}
        self.register("c3", _c3_entry)
        self.register("conifold", _conifold_entry)
        self.register("c3z2z2", _klein_entry)
        for n in (2, 3):
            self.register(f"c3zn:{n}", lambda n=n: _cyclic_entry(n))
        for m in range(1, 6):
            self.register(f"mloop:{m}", lambda m=m: _mloop_entry(m))
        self.register("grassmann", _grassmann_entry)
        self.register("grassmann-product", _grassmann_product_entry)
        self.register("two-class", _two_class_entry)
        self.register("dim0", _dim0_entry)

    def register(self, name: str, factory: Callable[[], CatalogEntry]) -> None:
        """Register an entry factory under ``name``."""
        self._entries[name.lower()] = factory

    def names(self) -> list[str]:
        """Registered names in registration order."""
        return list(self._entries)

    def get(self, name: str) -> CatalogEntry:
        """Resolve a registered name or a parametrized ``c3zn:n``, ``mloop:m``, ``dim0:chi``.

        Raises:
            DTWCInputError: If the name is unknown

        """
        key = name.strip().lower()
        if key in self._entries:
            return self._entries[key]()
        family, _, raw = key.partition(":")
        builders: dict[str, Callable[[int], CatalogEntry]] = {
            "c3zn": _cyclic_entry,
            "mloop": _mloop_entry,
            "dim0": _dim0_entry,
        }
        if family in builders and raw:
            try:
                parameter = int(raw)
            except ValueError as e:
                raise DTWCInputError(f"bad catalog parameter in {name!r}") from e
            if parameter < (2 if family == "c3zn" else 1):
                raise DTWCInputError(f"catalog parameter out of range in {name!r}")
            return builders[family](parameter)
        raise DTWCInputError(f"unknown catalog entry {name!r}; known: {', '.join(self.names())}")

    def list_entries(self) -> list[CatalogEntry]:
        """Every registered entry."""
        return [factory() for factory in self._entries.values()]


REGISTRY = CatalogRegistry()


def list_entries() -> list[CatalogEntry]:
    """Every registered entry, in registration order."""
    return REGISTRY.list_entries()


def verify(
    name: str,
    order: int | None = None,
    settings: DTWCSettings | None = None,
    strict: bool = False,
) -> VerificationReport:
    """Re-derive a catalog entry and compare it with its closed forms.

    Args:
        name: Entry name
        order: Truncation order; total degree, or the per-variable cap for
            four-variable entries. Defaults to the entry's own order.
        settings: Enumeration caps for the term-form checks
        strict: Raise instead of returning a report with mismatches

    Raises:
        DTWCInputError: If the entry is unknown
        DTWCVerificationError: If ``strict`` and a check disagrees

    """
    caps = settings or DTWCSettings()
    entry = REGISTRY.get(name)
    bound = entry.series_bound(order if order is not None else entry.default_order)
    checked = 0
    mismatches: list[Mismatch] = []

    series = entry.ndt_series(bound)
    if series is not None:
        classes = _framed_classes(entry.ctx, bound)
        dtbar = _complete(entry.ctx, dt_from_pair_series(entry.ctx, series), classes)
        if entry.dtbar_closed_form is not None:
            mismatches += compare_tables("dtbar", dtbar, entry.dtbar_closed_form, classes)
        if entry.dthat_closed_form is not None:
            dthat = bps_from_dt(dtbar)
            mismatches += compare_tables("dthat", dthat, entry.dthat_closed_form, classes)
        checked += len(classes)

    for extra in entry.extra_checks:
        count, found = extra(entry, bound, caps)
        checked += count
        mismatches += found

    report = VerificationReport(entry=entry.name, checked_classes=checked, mismatches=mismatches)
    if mismatches:
        _LOGGER.warning("Catalog entry %s: %d mismatches", entry.name, len(mismatches))
        if strict:
            first = mismatches[0]
            raise DTWCVerificationError(
                f"{entry.name}: {first.check} at {first.klass} expected {first.expected}, "
                f"got {first.actual}"
            )
    else:
        _LOGGER.info("Catalog entry %s verified on %d classes", entry.name, checked)
    return report


async def verify_many_async(
    names: Sequence[str],
    order: int | None = None,
    settings: DTWCSettings | None = None,
) -> list[VerificationReport]:
    """Verify several entries on worker threads; reports come back in ``names`` order."""
    caps = settings or DTWCSettings()
    gate = asyncio.Semaphore(caps.threads)

    async def run(name: str) -> VerificationReport:
        async with gate:
            return await asyncio.to_thread(verify, name, order, caps)

    return list(await asyncio.gather(*(run(name) for name in names)))
