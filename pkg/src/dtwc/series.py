"""Exact truncated multivariate formal power series.

A :class:`TruncatedSeries` is a sparse map from exponent vectors to
Fractions, truncated by a :class:`SeriesBound` (a total-degree bound or a
set of per-variable caps). Both bound kinds are closed under taking smaller
exponents, which is what lets exp, log and inversion run as single passes
over the admitted monomials in graded-lex order.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import DTWCInputError
from .models.series import SeriesDocument, SeriesTerm

_LOGGER = logging.getLogger(__name__)

Monomial = tuple[int, ...]
Scalar = Fraction | int


def grlex_key(monomial: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sort key for graded-lex order: total degree, then larger leading exponents first."""
    return (sum(monomial), tuple(-x for x in monomial))


@dataclass(frozen=True, slots=True)
class SeriesBound:
    """Truncation policy: exactly one of ``total`` or ``caps`` is set."""

    arity: int
    total: int | None = None
    caps: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        """Validate the policy."""
        if self.arity < 1:
            raise DTWCInputError(f"arity must be >= 1, got {self.arity}")
        if (self.total is None) == (self.caps is None):
            raise DTWCInputError("exactly one of total or caps must be given")
        if self.total is not None and self.total < 0:
            raise DTWCInputError(f"total degree bound must be >= 0, got {self.total}")
        if self.caps is not None:
            if len(self.caps) != self.arity:
                raise DTWCInputError(f"caps {self.caps} do not match arity {self.arity}")
            if any(c < 0 for c in self.caps):
                raise DTWCInputError(f"caps must be >= 0, got {self.caps}")

    @classmethod
    def total_degree(cls, arity: int, degree: int) -> SeriesBound:
        """Bound by total degree."""
        return cls(arity, total=degree)

    @classmethod
    def per_variable(cls, caps: Sequence[int]) -> SeriesBound:
        """Bound each variable separately."""
        return cls(len(caps), caps=tuple(caps))

    @property
    def max_degree(self) -> int:
        """Largest total degree an admitted monomial can have."""
        if self.total is not None:
            return self.total
        assert self.caps is not None
        return sum(self.caps)

    def admits(self, monomial: Sequence[int]) -> bool:
        """Return whether ``monomial`` lies within the bound."""
        if len(monomial) != self.arity or any(x < 0 for x in monomial):
            return False
        if self.total is not None:
            return sum(monomial) <= self.total
        assert self.caps is not None
        return all(x <= c for x, c in zip(monomial, self.caps))

    def monomials(self) -> list[Monomial]:
        """All admitted monomials in graded-lex order."""
        if self.caps is not None:
            found = list(itertools.product(*(range(c + 1) for c in self.caps)))
        else:
            assert self.total is not None
            found = [m for m in _bounded_vectors(self.arity, self.total)]
        return sorted(found, key=grlex_key)

    def to_json(self) -> int | list[int]:
        """JSON form: an integer for total-degree bounds, a list of caps otherwise."""
        if self.total is not None:
            return self.total
        assert self.caps is not None
        return list(self.caps)

    @classmethod
    def from_json(cls, arity: int, raw: int | list[int]) -> SeriesBound:
        """Inverse of :meth:`to_json`."""
        if isinstance(raw, int):
            return cls.total_degree(arity, raw)
        return cls(arity, caps=tuple(raw))


def _bounded_vectors(arity: int, total: int) -> Iterator[Monomial]:
    if arity == 1:
        for x in range(total + 1):
            yield (x,)
        return
    for first in range(total + 1):
        for rest in _bounded_vectors(arity - 1, total - first):
            yield (first, *rest)


class TruncatedSeries:
    """An immutable truncated power series with exact rational coefficients."""

    __slots__ = ("_bound", "_terms")

    def __init__(
        self, bound: SeriesBound, terms: Mapping[Monomial, Scalar] | None = None
    ) -> None:
        """Create a series, dropping zero terms and terms beyond the bound.

        Args:
            bound: Truncation policy
            terms: Coefficients keyed by exponent vectors

        Raises:
            DTWCInputError: If an exponent vector has the wrong arity or a negative entry

        """
        self._bound = bound
        cleaned: dict[Monomial, Fraction] = {}
        for monomial, value in (terms or {}).items():
            key = tuple(int(x) for x in monomial)
            if len(key) != bound.arity or any(x < 0 for x in key):
                raise DTWCInputError(f"monomial {monomial} invalid for arity {bound.arity}")
            coeff = Fraction(value)
            if coeff and bound.admits(key):
                cleaned[key] = cleaned.get(key, Fraction(0)) + coeff
        self._terms = {m: cleaned[m] for m in sorted(cleaned, key=grlex_key) if cleaned[m]}

    # -- constructors ------------------------------------------------------------

    @classmethod
    def zero(cls, bound: SeriesBound) -> TruncatedSeries:
        """The zero series."""
        return cls(bound)

    @classmethod
    def one(cls, bound: SeriesBound) -> TruncatedSeries:
        """The constant series 1."""
        return cls(bound, {(0,) * bound.arity: 1})

    @classmethod
    def constant(cls, bound: SeriesBound, value: Scalar) -> TruncatedSeries:
        """A constant series."""
        return cls(bound, {(0,) * bound.arity: value})

    @classmethod
    def variable(cls, bound: SeriesBound, index: int) -> TruncatedSeries:
        """The series ``q_index``."""
        if not 0 <= index < bound.arity:
            raise DTWCInputError(f"variable index {index} out of range for arity {bound.arity}")
        exps = [0] * bound.arity
        exps[index] = 1
        return cls(bound, {tuple(exps): 1})

    @classmethod
    def monomial(
        cls, bound: SeriesBound, exponents: Sequence[int], coefficient: Scalar = 1
    ) -> TruncatedSeries:
        """A single term ``coefficient * q^exponents``."""
        return cls(bound, {tuple(exponents): coefficient})

    @classmethod
    def univariate(cls, coefficients: Sequence[Scalar], degree: int) -> TruncatedSeries:
        """A one-variable series from its coefficient list, truncated at ``degree``."""
        bound = SeriesBound.total_degree(1, degree)
        return cls(bound, {(i,): c for i, c in enumerate(coefficients)})

    # -- accessors ---------------------------------------------------------------

    @property
    def bound(self) -> SeriesBound:
        """Truncation policy."""
        return self._bound

    @property
    def arity(self) -> int:
        """Number of variables."""
        return self._bound.arity

    @property
    def constant_term(self) -> Fraction:
        """Coefficient of the empty monomial."""
        return self._terms.get((0,) * self.arity, Fraction(0))

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Nonzero terms in graded-lex order."""
        return iter(self._terms.items())

    def get(self, monomial: Sequence[int]) -> Fraction:
        """Coefficient of ``monomial``, zero if absent (no bound check)."""
        return self._terms.get(tuple(monomial), Fraction(0))

    def is_zero(self) -> bool:
        """Whether every coefficient vanishes."""
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._bound == other._bound and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"TruncatedSeries({self._bound!r}, {self!s})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for monomial, coeff in self._terms.items():
            factors = [
                f"q{i}" if e == 1 else f"q{i}^{e}" for i, e in enumerate(monomial) if e
            ]
            if not factors:
                pieces.append(str(coeff))
            elif coeff == 1:
                pieces.append("*".join(factors))
            else:
                pieces.append(f"({coeff})*" + "*".join(factors))
        return " + ".join(pieces)

    # -- arithmetic --------------------------------------------------------------

    def _check_compatible(self, other: TruncatedSeries) -> None:
        if self._bound != other._bound:
            raise DTWCInputError(f"incompatible bounds {self._bound} and {other._bound}")

    def __add__(self, other: TruncatedSeries | Scalar) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(self._bound, other)
        self._check_compatible(other)
        merged = dict(self._terms)
        for monomial, coeff in other._terms.items():
            merged[monomial] = merged.get(monomial, Fraction(0)) + coeff
        return TruncatedSeries(self._bound, merged)

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(self._bound, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: TruncatedSeries | Scalar) -> TruncatedSeries:
        return self + (-other)

    def __rsub__(self, other: Scalar) -> TruncatedSeries:
        return (-self) + other

    def __mul__(self, other: TruncatedSeries | Scalar) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int | Fraction) -> TruncatedSeries:
        return series_pow(self, exponent)

    def scale(self, factor: Scalar) -> TruncatedSeries:
        """Multiply every coefficient by ``factor``."""
        factor = Fraction(factor)
        return TruncatedSeries(self._bound, {m: c * factor for m, c in self._terms.items()})

    def restrict(self, bound: SeriesBound) -> TruncatedSeries:
        """Re-truncate into another bound of the same arity."""
        if bound.arity != self.arity:
            raise DTWCInputError(f"cannot restrict arity {self.arity} to {bound.arity}")
        return TruncatedSeries(bound, self._terms)

    def permute(self, order: Sequence[int]) -> TruncatedSeries:
        """Rename variables: new variable ``i`` is old variable ``order[i]``."""
        if sorted(order) != list(range(self.arity)):
            raise DTWCInputError(f"{order} is not a permutation of the variables")
        bound = self._bound
        if bound.caps is not None:
            bound = SeriesBound.per_variable([bound.caps[j] for j in order])
        return TruncatedSeries(
            bound, {tuple(m[j] for j in order): c for m, c in self._terms.items()}
        )

    # -- serialization -----------------------------------------------------------

    def to_document(self) -> SeriesDocument:
        """Serialize in graded-lex term order."""
        return SeriesDocument(
            arity=self.arity,
            bound=self._bound.to_json(),
            terms=[
                SeriesTerm(
                    exponents=list(m),
                    numerator=str(c.numerator),
                    denominator=str(c.denominator),
                )
                for m, c in self._terms.items()
            ],
        )

    @classmethod
    def from_document(cls, document: SeriesDocument) -> TruncatedSeries:
        """Deserialize a :class:`SeriesDocument`."""
        bound = SeriesBound.from_json(document.arity, document.bound)
        terms: dict[Monomial, Fraction] = {}
        for term in document.terms:
            key = tuple(term.exponents)
            if not bound.admits(key):
                raise DTWCInputError(f"term {key} lies beyond the declared bound")
            terms[key] = Fraction(int(term.numerator), int(term.denominator))
        return cls(bound, terms)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Exact truncated product.

    Raises:
        DTWCInputError: If the bounds differ

    """
    a._check_compatible(b)
    bound = a.bound
    out: dict[Monomial, Fraction] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            if bound.admits(m):
                out[m] = out.get(m, Fraction(0)) + ca * cb
    return TruncatedSeries(bound, out)


def _degree_weighted(a: TruncatedSeries) -> list[tuple[Monomial, int, Fraction]]:
    return [(m, sum(m), c) for m, c in a.items() if any(m)]


def series_exp(a: TruncatedSeries) -> TruncatedSeries:
    """Truncated exponential of a series with zero constant term.

    Uses ``E(f) = f * E(a)`` for the Euler operator ``E`` that multiplies a
    monomial by its total degree.

    Raises:
        DTWCInputError: If the constant term is nonzero

    """
    if a.constant_term:
        raise DTWCInputError("series_exp needs a zero constant term")
    bound = a.bound
    weighted = _degree_weighted(a)
    f: dict[Monomial, Fraction] = {(0,) * a.arity: Fraction(1)}
    for m in bound.monomials():
        degree = sum(m)
        if degree == 0:
            continue
        acc = Fraction(0)
        for m2, d2, c2 in weighted:
            rest = tuple(x - y for x, y in zip(m, m2))
            if min(rest) < 0:
                continue
            prev = f.get(rest)
            if prev:
                acc += d2 * c2 * prev
        if acc:
            f[m] = acc / degree
    return TruncatedSeries(bound, f)


def series_log(a: TruncatedSeries) -> TruncatedSeries:
    """Truncated logarithm of a series with constant term 1.

    Raises:
        DTWCInputError: If the constant term is not 1

    """
    if a.constant_term != 1:
        raise DTWCInputError("series_log needs constant term 1")
    bound = a.bound
    f_terms = [(m, c) for m, c in a.items() if any(m)]
    g: dict[Monomial, Fraction] = {}
    for m in bound.monomials():
        degree = sum(m)
        if degree == 0:
            continue
        acc = degree * a.get(m)
        for m1, c1 in f_terms:
            rest = tuple(x - y for x, y in zip(m, m1))
            if min(rest) < 0 or not any(rest):
                continue
            prev = g.get(rest)
            if prev:
                acc -= c1 * sum(rest) * prev
        if acc:
            g[m] = acc / degree
    return TruncatedSeries(bound, g)


def series_inverse(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series with nonzero constant term."""
    c0 = a.constant_term
    if not c0:
        raise DTWCInputError("series_inverse needs a nonzero constant term")
    bound = a.bound
    f_terms = [(m, c) for m, c in a.items() if any(m)]
    g: dict[Monomial, Fraction] = {(0,) * a.arity: 1 / c0}
    for m in bound.monomials():
        if not any(m):
            continue
        acc = Fraction(0)
        for m1, c1 in f_terms:
            rest = tuple(x - y for x, y in zip(m, m1))
            if min(rest) < 0:
                continue
            prev = g.get(rest)
            if prev:
                acc += c1 * prev
        if acc:
            g[m] = -acc / c0
    return TruncatedSeries(bound, g)


def series_pow(base: TruncatedSeries, exponent: int | Fraction) -> TruncatedSeries:
    """Raise a series to an integer or rational power.

    Integer powers use repeated squaring (negative ones invert first);
    rational powers go through ``exp(e * log(base))`` and need constant term 1.
    """
    exponent = Fraction(exponent)
    if exponent.denominator != 1:
        return series_exp(series_log(base).scale(exponent))
    power = int(exponent)
    if power < 0:
        base = series_inverse(base)
        power = -power
    result = TruncatedSeries.one(base.bound)
    square = base
    while power:
        if power & 1:
            result = series_mul(result, square)
        power >>= 1
        if power:
            square = series_mul(square, square)
    return result


def _binomial_power(base: TruncatedSeries, exponent: Fraction) -> TruncatedSeries | None:
    """Expand ``(1 + c q^m)^e`` term by term, or return None for other bases."""
    terms = list(base.items())
    if len(terms) != 2 or any(terms[0][0]) or terms[0][1] != 1:
        return None
    monomial, c = terms[1]
    bound = base.bound
    out: dict[Monomial, Fraction] = {}
    coeff = Fraction(1)
    j = 0
    while True:
        exps = tuple(j * x for x in monomial)
        if not bound.admits(exps):
            break
        out[exps] = coeff * c**j
        coeff = coeff * (exponent - j) / (j + 1)
        if not coeff:
            break
        j += 1
    return TruncatedSeries(bound, out)


def product_expand(
    factors: Iterable[tuple[TruncatedSeries, int | Fraction]], bound: SeriesBound | None = None
) -> TruncatedSeries:
    """Expand ``prod base**exponent`` exactly within the bound.

    Two-term bases ``1 + c q^m`` are expanded with the generalized binomial
    theorem; other bases use :func:`series_pow`.

    Args:
        factors: Pairs of base (constant term 1) and exponent
        bound: Bound of the result, needed when ``factors`` may be empty

    Raises:
        DTWCInputError: If a base has constant term other than 1, or no bound is known

    """
    result: TruncatedSeries | None = None if bound is None else TruncatedSeries.one(bound)
    for base, exponent in factors:
        if base.constant_term != 1:
            raise DTWCInputError(f"product factor {base} must have constant term 1")
        if result is None:
            result = TruncatedSeries.one(base.bound)
        exponent = Fraction(exponent)
        if not exponent:
            continue
        expanded = _binomial_power(base, exponent)
        if expanded is None:
            expanded = series_pow(base, exponent)
        result = series_mul(result, expanded)
    if result is None:
        raise DTWCInputError("an empty product needs an explicit bound")
    return result


def coefficient(a: TruncatedSeries, monomial: Sequence[int]) -> Fraction:
    """Exact coefficient of ``monomial``.

    Raises:
        DTWCInputError: If the monomial lies beyond the truncation bound

    """
    key = tuple(monomial)
    if not a.bound.admits(key):
        raise DTWCInputError(f"monomial {key} lies beyond the truncation bound {a.bound}")
    return a.get(key)


def substitute(a: TruncatedSeries, images: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """Substitute series for the variables of ``a``.

    Args:
        a: Series in ``len(images)`` variables
        images: One series per variable, sharing a bound, with zero constant term

    Raises:
        DTWCInputError: If the images do not match ``a`` or carry a constant term

    """
    if len(images) != a.arity:
        raise DTWCInputError(f"need {a.arity} images, got {len(images)}")
    if not images:
        raise DTWCInputError("images cannot be empty")
    target = images[0].bound
    for image in images:
        if image.bound != target:
            raise DTWCInputError("substituted series must share a bound")
        if image.constant_term:
            raise DTWCInputError("substituted series must have zero constant term")
    powers: list[list[TruncatedSeries]] = [[TruncatedSeries.one(target)] for _ in images]
    result = TruncatedSeries.zero(target)
    for monomial, coeff in a.items():
        term = TruncatedSeries.constant(target, coeff)
        for i, e in enumerate(monomial):
            while len(powers[i]) <= e:
                powers[i].append(series_mul(powers[i][-1], images[i]))
            if e:
                term = series_mul(term, powers[i][e])
        result = result + term
    return result


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """Univariate composition ``outer(inner(t))``."""
    if outer.arity != 1 or inner.arity != 1:
        raise DTWCInputError("compose works on one-variable series")
    return substitute(outer, [inner])


def revert(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse: the series ``g`` with ``f(g(t)) = t`` within the bound.

    Raises:
        DTWCInputError: If ``f`` has a constant term or no linear term

    """
    if f.arity != 1:
        raise DTWCInputError("revert works on one-variable series")
    if f.constant_term:
        raise DTWCInputError("reverted series must have zero constant term")
    lead = f.get((1,))
    if not lead:
        raise DTWCInputError("reverted series needs a nonzero linear term")
    x = TruncatedSeries.variable(f.bound, 0)
    tail = f - x * lead
    y = x.scale(1 / lead)
    # each pass fixes one more degree
    for _ in range(f.bound.max_degree):
        y = (x - compose(tail, y)).scale(1 / lead)
    return y
