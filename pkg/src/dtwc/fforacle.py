"""Finite-field counting oracle for framed quiver representations.

Counts the points of framed moduli spaces over small finite fields,
interpolates the counting polynomial in ``q`` and evaluates it at ``q = 1``
to get Euler characteristics. Three strategies are available:

* ``cyclic`` handles a single framing vector with the trivial stability: it
  scans the edge-map tuples and tests by span closure whether a fixed vector
  generates. It is the default in that case.
* ``normal_form`` walks the canonical basis a framing generates and counts
  the cells directly; it handles the trivial stability with any framing and
  serves as a cross-check, since it reports no raw count.
* ``exhaustive`` scans every tuple of edge maps and framing vectors and
  tests the framed stability conditions on each one, dividing by the order
  of the gauge group at the end.

Field samples and scan partitions run concurrently on worker threads.
"""

from __future__ import annotations

import asyncio
import itertools
import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal

import sympy.polys.galoistools as gf
from sympy import Poly, Symbol, factorint
from sympy.polys.domains import ZZ
from sympy.polys.polyfuncs import interpolate

from .const import CONWAY_POLYNOMIALS, DEFAULT_FIELD_SIZES
from .exceptions import DTWCBudgetError, DTWCInputError, DTWCVerificationError
from .lattice import KClass, SlopeStability, TrivialStability, as_class, euler_hat
from .models.quiver import Quiver
from .models.results import CountResult, CountSample
from .models.settings import DTWCSettings
from .numerics import sign

_LOGGER = logging.getLogger(__name__)

Strategy = Literal["auto", "cyclic", "normal_form", "exhaustive"]
Resolved = Literal["cyclic", "normal_form", "exhaustive"]
Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


class FiniteField:
    """The field with ``q = p**k`` elements, elements encoded as ints ``0..q-1``.

    An element's base-``p`` digits are the coefficients of its polynomial
    representative modulo a fixed irreducible polynomial of degree ``k``.
    """

    def __init__(self, q: int) -> None:
        """Build addition and multiplication tables for GF(q).

        Args:
            q: Field size

        Raises:
            DTWCInputError: If ``q`` is not a prime power
            DTWCVerificationError: If the tables fail the field axioms

        """
        factors = factorint(q) if q >= 2 else {}
        if len(factors) != 1:
            raise DTWCInputError(f"field size must be a prime power, got {q}")
        ((p, k),) = factors.items()
        self.q = q
        self.p = int(p)
        self.k = int(k)
        self.modulus = self._modulus()
        self._add = [[self._encode(self._poly_add(a, b)) for b in range(q)] for a in range(q)]
        self._mul = [[self._encode(self._poly_mul(a, b)) for b in range(q)] for a in range(q)]
        self._neg = [self._sub_from_zero(a) for a in range(q)]
        self._inv = [0] * q
        for a in range(1, q):
            inverses = [b for b in range(1, q) if self._mul[a][b] == 1]
            if len(inverses) != 1:
                raise DTWCVerificationError(f"element {a} of GF({q}) has no unique inverse")
            self._inv[a] = inverses[0]
        _LOGGER.debug("Built GF(%d) modulo %s", q, self.modulus)

    def __repr__(self) -> str:
        return f"FiniteField({self.q})"

    def _modulus(self) -> list[int]:
        if self.k == 1:
            return [1, 0]
        if self.q in CONWAY_POLYNOMIALS:
            return list(CONWAY_POLYNOMIALS[self.q])
        for tail in itertools.product(range(self.p), repeat=self.k):
            candidate = [1, *tail]
            if gf.gf_irreducible_p(candidate, self.p, ZZ):
                return candidate
        raise DTWCVerificationError(f"no irreducible polynomial found for GF({self.q})")

    def _decode(self, a: int) -> list[int]:
        digits = []
        for _ in range(self.k):
            digits.append(a % self.p)
            a //= self.p
        return gf.gf_strip([ZZ(x) for x in reversed(digits)])

    def _encode(self, poly: list[int]) -> int:
        value = 0
        for c in poly:
            value = value * self.p + int(c) % self.p
        return value

    def _poly_add(self, a: int, b: int) -> list[int]:
        return gf.gf_add(self._decode(a), self._decode(b), self.p, ZZ)

    def _poly_mul(self, a: int, b: int) -> list[int]:
        product = gf.gf_mul(self._decode(a), self._decode(b), self.p, ZZ)
        return gf.gf_rem(product, [ZZ(c) for c in self.modulus], self.p, ZZ)

    def _sub_from_zero(self, a: int) -> int:
        return self._encode(gf.gf_neg(self._decode(a), self.p, ZZ))

    def add(self, a: int, b: int) -> int:
        """Sum of two elements."""
        return self._add[a][b]

    def mul(self, a: int, b: int) -> int:
        """Product of two elements."""
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        """Additive inverse."""
        return self._neg[a]

    def inv(self, a: int) -> int:
        """Multiplicative inverse of a nonzero element."""
        if not a:
            raise ZeroDivisionError("zero has no inverse")
        return self._inv[a]

    def mat_vec(self, matrix: Matrix, vector: Vector) -> Vector:
        """Matrix-vector product."""
        out = []
        for row in matrix:
            acc = 0
            for a, b in zip(row, vector):
                if a and b:
                    acc = self._add[acc][self._mul[a][b]]
            out.append(acc)
        return tuple(out)

    def axpy(self, scale: int, x: Sequence[int], y: Sequence[int]) -> list[int]:
        """``scale * x + y``."""
        return [self._add[self._mul[scale][a]][b] for a, b in zip(x, y)]


class Echelon:
    """A subspace of ``GF(q)**n`` kept in reduced row echelon form."""

    __slots__ = ("field", "n", "rows")

    def __init__(self, field: FiniteField, n: int, rows: Sequence[Vector] = ()) -> None:
        """Start from the span of ``rows``."""
        self.field = field
        self.n = n
        self.rows: list[tuple[int, list[int]]] = []
        for row in rows:
            self.insert(row)

    @property
    def dim(self) -> int:
        """Dimension of the subspace."""
        return len(self.rows)

    def reduce(self, vector: Sequence[int]) -> list[int]:
        """Residual of ``vector`` after eliminating every pivot column."""
        residual = list(vector)
        for pivot, row in self.rows:
            c = residual[pivot]
            if c:
                residual = self.field.axpy(self.field.neg(c), row, residual)
        return residual

    def contains(self, vector: Sequence[int]) -> bool:
        """Whether ``vector`` lies in the subspace."""
        return not any(self.reduce(vector))

    def insert(self, vector: Sequence[int]) -> bool:
        """Add ``vector`` to the spanning set; return whether the dimension grew."""
        residual = self.reduce(vector)
        pivot = next((i for i, c in enumerate(residual) if c), None)
        if pivot is None:
            return False
        field = self.field
        scale = field.inv(residual[pivot])
        residual = [field.mul(scale, c) for c in residual]
        reduced = []
        for p, row in self.rows:
            c = row[pivot]
            reduced.append((p, field.axpy(field.neg(c), residual, row) if c else row))
        reduced.append((pivot, residual))
        reduced.sort(key=lambda item: item[0])
        self.rows = reduced
        return True

    def basis(self) -> list[Vector]:
        """Rows of the reduced echelon form."""
        return [tuple(row) for _, row in self.rows]


def enumerate_subspaces(field: FiniteField, n: int) -> list[list[Vector]]:
    """Every subspace of ``GF(q)**n`` as its reduced echelon basis, zero space first."""
    spaces: list[list[Vector]] = []
    for dim in range(n + 1):
        for pivots in itertools.combinations(range(n), dim):
            free = [
                (r, c)
                for r, p in enumerate(pivots)
                for c in range(p + 1, n)
                if c not in pivots
            ]
            for values in itertools.product(range(field.q), repeat=len(free)):
                rows = [[0] * n for _ in pivots]
                for r, p in enumerate(pivots):
                    rows[r][p] = 1
                for (r, c), v in zip(free, values):
                    rows[r][c] = v
                spaces.append([tuple(row) for row in rows])
    return spaces


def gl_order(q: int, d: Sequence[int]) -> int:
    """Order of ``prod_v GL(d_v, q)``."""
    order = 1
    for n in d:
        for i in range(n):
            order *= q**n - q**i
    return order


# -- representations ------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class FramedRepresentation:
    """Edge maps and framing vectors of a framed representation over a finite field.

    ``maps[i]`` is a ``d[head] x d[tail]`` matrix for edge ``i``;
    ``framing[v]`` lists ``e[v]`` vectors in ``GF(q)**d[v]``.
    """

    maps: tuple[Matrix, ...]
    framing: tuple[tuple[Vector, ...], ...]


def _parameter_count(quiver: Quiver, d: KClass, e: KClass) -> int:
    edges = sum(d[t] * d[h] for t, h in quiver.edge_indices)
    return edges + sum(ev * dv for ev, dv in zip(e, d))


def _decode_representation(
    quiver: Quiver, d: KClass, e: KClass, digits: Sequence[int]
) -> FramedRepresentation:
    cursor = 0
    maps = []
    for tail, head in quiver.edge_indices:
        rows = []
        for _ in range(d[head]):
            rows.append(tuple(digits[cursor : cursor + d[tail]]))
            cursor += d[tail]
        maps.append(tuple(rows))
    framing = []
    for v, count in enumerate(e):
        vectors = []
        for _ in range(count):
            vectors.append(tuple(digits[cursor : cursor + d[v]]))
            cursor += d[v]
        framing.append(tuple(vectors))
    return FramedRepresentation(tuple(maps), tuple(framing))


def _digits(index: int, base: int, length: int) -> list[int]:
    out = [0] * length
    for i in range(length - 1, -1, -1):
        index, out[i] = divmod(index, base)
    return out


def generated_dimensions(
    field: FiniteField, quiver: Quiver, d: KClass, rep: FramedRepresentation
) -> KClass:
    """Dimension vector of the subrepresentation generated by the framing vectors."""
    spaces = [Echelon(field, n) for n in d]
    queue: list[tuple[int, Vector]] = [
        (v, vec) for v, vectors in enumerate(rep.framing) for vec in vectors
    ]
    edges = quiver.edge_indices
    while queue:
        v, vec = queue.pop()
        if spaces[v].insert(vec):
            for (tail, head), matrix in zip(edges, rep.maps):
                if tail == v:
                    queue.append((head, field.mat_vec(matrix, vec)))
    return tuple(space.dim for space in spaces)


def subrepresentations(
    field: FiniteField,
    quiver: Quiver,
    d: KClass,
    maps: Sequence[Matrix],
    subspaces: Sequence[Sequence[list[Vector]]] | None = None,
) -> Iterator[tuple[Echelon, ...]]:
    """Yield every tuple of subspaces closed under the edge maps."""
    pools = subspaces if subspaces is not None else [enumerate_subspaces(field, n) for n in d]
    edges = quiver.edge_indices
    for choice in itertools.product(*pools):
        spaces = tuple(Echelon(field, n, rows) for n, rows in zip(d, choice))
        if all(
            spaces[head].contains(field.mat_vec(matrix, vec))
            for (tail, head), matrix in zip(edges, maps)
            for vec in choice[tail]
        ):
            yield spaces


def count_generating_framings(
    field: FiniteField, quiver: Quiver, d: Sequence[int], e: Sequence[int], maps: Sequence[Matrix]
) -> int:
    """Count framings that generate the representation, by scanning every framing."""
    dims, frame = as_class(d), as_class(e)
    length = sum(ev * dv for ev, dv in zip(frame, dims))
    edge_params = sum(dims[t] * dims[h] for t, h in quiver.edge_indices)
    flat = [x for matrix in maps for row in matrix for x in row]
    if len(flat) != edge_params:
        raise DTWCInputError("edge maps do not match the dimension vector")
    found = 0
    for values in itertools.product(range(field.q), repeat=length):
        rep = _decode_representation(quiver, dims, frame, [*flat, *values])
        if generated_dimensions(field, quiver, dims, rep) == dims:
            found += 1
    return found


def count_generating_framings_by_subreps(
    field: FiniteField, quiver: Quiver, d: Sequence[int], e: Sequence[int], maps: Sequence[Matrix]
) -> int:
    """Count generating framings through the lattice of subrepresentations.

    Framings landing in a subrepresentation ``W`` number ``q**(e.dim W)``;
    peeling off those that generate a smaller subrepresentation leaves the
    ones generating ``W`` itself.
    """
    dims, frame = as_class(d), as_class(e)
    subs = list(subrepresentations(field, quiver, dims, maps))
    shapes = [[space.basis() for space in sub] for sub in subs]
    subs_order = sorted(range(len(subs)), key=lambda i: sum(s.dim for s in subs[i]))
    exact: dict[int, int] = {}
    for i in subs_order:
        inside = field.q ** sum(ev * s.dim for ev, s in zip(frame, subs[i]))
        for j in exact:
            if j != i and _is_subrep_of(subs[j], shapes[j], subs[i]):
                inside -= exact[j]
        exact[i] = inside
    full = next(i for i in subs_order if tuple(s.dim for s in subs[i]) == dims)
    return exact[full]


def _is_subrep_of(
    small: Sequence[Echelon], small_rows: Sequence[list[Vector]], big: Sequence[Echelon]
) -> bool:
    if any(s.dim > b.dim for s, b in zip(small, big)):
        return False
    return all(b.contains(row) for b, rows in zip(big, small_rows) for row in rows)


# -- stability ------------------------------------------------------------------------


Stability = SlopeStability | TrivialStability


def _is_stable(
    field: FiniteField,
    quiver: Quiver,
    d: KClass,
    rep: FramedRepresentation,
    mu: Stability,
    subspaces: Sequence[Sequence[list[Vector]]] | None,
) -> bool:
    if isinstance(mu, TrivialStability) or subspaces is None:
        return generated_dimensions(field, quiver, d, rep) == d
    level = mu.value(d)
    for sub in subrepresentations(field, quiver, d, rep.maps, subspaces):
        dims = tuple(s.dim for s in sub)
        if dims == d:
            continue
        framed_inside = all(
            space.contains(vec) for space, vectors in zip(sub, rep.framing) for vec in vectors
        )
        if not any(dims):
            if framed_inside:
                return False
            continue
        value = mu.value(dims)
        if value > level or (value == level and framed_inside):
            return False
    return True


def _count_range(
    field: FiniteField,
    quiver: Quiver,
    d: KClass,
    e: KClass,
    mu: Stability,
    start: int,
    stop: int,
) -> int:
    length = _parameter_count(quiver, d, e)
    subspaces = (
        None
        if isinstance(mu, TrivialStability)
        else [enumerate_subspaces(field, n) for n in d]
    )
    found = 0
    for index in range(start, stop):
        rep = _decode_representation(quiver, d, e, _digits(index, field.q, length))
        if _is_stable(field, quiver, d, rep, mu, subspaces):
            found += 1
    return found


def _normal_form_count(q: int, quiver: Quiver, d: KClass, e: KClass) -> int:
    """Points of the moduli space of framed representations generated by the framing.

    Vectors are processed in a fixed order: framing vectors first, then the
    edge images of each basis vector in the order the basis was built. Each
    vector either extends the basis at its vertex or is one of ``q**k``
    combinations of the ``k`` basis vectors already there.
    """
    edges = quiver.edge_indices
    framing_slots = [v for v, count in enumerate(e) for _ in range(count)]
    out_heads = [[h for t, h in edges if t == v] for v in range(len(d))]

    @lru_cache(maxsize=None)
    def walk(basis: tuple[int, ...], position: int) -> int:
        slots = framing_slots + [h for v in basis for h in out_heads[v]]
        if position == len(slots):
            return int(all(basis.count(v) == n for v, n in enumerate(d)))
        target = slots[position]
        k = basis.count(target)
        if k < d[target]:
            return walk((*basis, target), position + 1) + q**k * walk(basis, position + 1)
        return q ** d[target] * walk(basis, position + 1)

    return walk((), 0)


def _resolve_strategy(strategy: Strategy, mu: Stability, e: KClass) -> Resolved:
    trivial = isinstance(mu, TrivialStability)
    if strategy == "auto":
        if not trivial:
            return "exhaustive"
        return "cyclic" if sum(e) == 1 else "exhaustive"
    if strategy in ("normal_form", "cyclic") and not trivial:
        raise DTWCInputError(f"the {strategy} strategy needs the trivial stability")
    if strategy == "cyclic" and sum(e) != 1:
        raise DTWCInputError(f"the cyclic strategy needs a single framing vector, got e={e}")
    return strategy


def _cyclic_range(
    field: FiniteField, quiver: Quiver, d: KClass, vertex: int, start: int, stop: int
) -> int:
    """Count tuples in ``[start, stop)`` where the first unit vector at ``vertex`` is cyclic."""
    length = sum(d[t] * d[h] for t, h in quiver.edge_indices)
    unit = tuple(int(i == 0) for i in range(d[vertex]))
    framing = tuple((unit,) if v == vertex else () for v in range(len(d)))
    unframed = (0,) * len(d)
    found = 0
    for index in range(start, stop):
        maps = _decode_representation(quiver, d, unframed, _digits(index, field.q, length)).maps
        if generated_dimensions(field, quiver, d, FramedRepresentation(maps, framing)) == d:
            found += 1
    return found


def _field(q: FiniteField | int) -> FiniteField:
    return q if isinstance(q, FiniteField) else FiniteField(q)


def _check_shapes(quiver: Quiver, d: Sequence[int], e: Sequence[int]) -> tuple[KClass, KClass]:
    dims, frame = as_class(d), as_class(e)
    if len(dims) != quiver.rank or len(frame) != quiver.rank:
        raise DTWCInputError(f"d={dims} and e={frame} must have {quiver.rank} entries")
    if any(x < 0 for x in (*dims, *frame)):
        raise DTWCInputError("dimension and framing vectors must be non-negative")
    return dims, frame


def _exhaustive_states(
    field: FiniteField, quiver: Quiver, d: KClass, e: KClass, mu: Stability
) -> int:
    states = field.q ** _parameter_count(quiver, d, e)
    if not isinstance(mu, TrivialStability):
        for n in d:
            states *= len(enumerate_subspaces(field, n))
    return states


def _ranges(total: int, chunks: int) -> list[tuple[int, int]]:
    size = max(1, -(-total // chunks))
    return [(start, min(start + size, total)) for start in range(0, total, size)]


async def count_stable_framed_async(
    q: FiniteField | int,
    quiver: Quiver,
    d: Sequence[int],
    e: Sequence[int],
    mu: Stability | None = None,
    strategy: Strategy = "auto",
    settings: DTWCSettings | None = None,
    semaphore: asyncio.Semaphore | None = None,
) -> CountSample:
    """Count stable framed representations over GF(q) modulo the gauge group.

    Scans split the tuple space into ranges that run on worker threads; the
    partial counts are summed. The ``cyclic`` strategy scans edge-map tuples
    only: the gauge group is transitive on the nonzero vectors at the framed
    vertex, so the number of (tuple, cyclic vector) pairs is ``q**d_v - 1``
    times the number of tuples in which the first unit vector is cyclic. The
    ``normal_form`` strategy counts orbits directly and reports no raw count.

    Raises:
        DTWCInputError: If ``q`` is not a prime power or the shapes are wrong
        DTWCBudgetError: If a scan would exceed the oracle budget
        DTWCVerificationError: If the raw count is not divisible by the group order

    """
    caps = settings or DTWCSettings()
    field = _field(q)
    dims, frame = _check_shapes(quiver, d, e)
    stability: Stability = mu if mu is not None else TrivialStability()
    gate = semaphore or asyncio.Semaphore(caps.threads)
    group = gl_order(field.q, dims)
    resolved = _resolve_strategy(strategy, stability, frame)
    if not any(dims):
        return CountSample(q=field.q, raw=1, group_order=1, count=1)

    if resolved == "normal_form":
        async with gate:
            count = await asyncio.to_thread(_normal_form_count, field.q, quiver, dims, frame)
        _LOGGER.debug("Normal-form count over GF(%d): %d", field.q, count)
        return CountSample(q=field.q, raw=None, group_order=group, count=count)

    vertex = frame.index(1) if resolved == "cyclic" else 0
    if resolved == "cyclic":
        total = field.q ** sum(dims[t] * dims[h] for t, h in quiver.edge_indices)
        states = total
    else:
        total = field.q ** _parameter_count(quiver, dims, frame)
        states = _exhaustive_states(field, quiver, dims, frame, stability)
    if states > caps.oracle_budget:
        raise DTWCBudgetError(
            f"{resolved} scan over GF({field.q}) needs {states} states, "
            f"budget is {caps.oracle_budget}"
        )

    async def run(start: int, stop: int) -> int:
        async with gate:
            if resolved == "cyclic":
                return await asyncio.to_thread(
                    _cyclic_range, field, quiver, dims, vertex, start, stop
                )
            return await asyncio.to_thread(
                _count_range, field, quiver, dims, frame, stability, start, stop
            )

    parts = await asyncio.gather(*(run(a, b) for a, b in _ranges(total, caps.threads * 4)))
    raw = sum(parts)
    if resolved == "cyclic":
        raw *= field.q ** dims[vertex] - 1
    if raw % group:
        raise DTWCVerificationError(
            f"raw count {raw} over GF({field.q}) is not divisible by the group order {group}"
        )
    _LOGGER.debug("%s count over GF(%d): %d / %d", resolved.capitalize(), field.q, raw, group)
    return CountSample(q=field.q, raw=raw, group_order=group, count=raw // group)


def count_stable_framed(
    q: FiniteField | int,
    quiver: Quiver,
    d: Sequence[int],
    e: Sequence[int],
    mu: Stability | None = None,
    strategy: Strategy = "auto",
    settings: DTWCSettings | None = None,
) -> int:
    """Synchronous wrapper returning the number of points over GF(q)."""
    sample = asyncio.run(count_stable_framed_async(q, quiver, d, e, mu, strategy, settings))
    return sample.count


def moduli_dimension(quiver: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """Dimension ``-chi_hat(d, d) + e.d`` of the framed moduli space."""
    dims, frame = as_class(d), as_class(e)
    return -euler_hat(quiver, dims, dims) + sum(a * b for a, b in zip(dims, frame))


def interpolate_counts(samples: Sequence[CountSample], degree: int) -> list[int]:
    """Fit an integer polynomial of degree at most ``degree`` through the samples.

    Returns:
        Coefficients from the constant term up

    Raises:
        DTWCInputError: If there are not enough samples to pin the polynomial down
        DTWCVerificationError: If the fit has non-integer coefficients, too high
            a degree, or a negative leading coefficient

    """
    if len(samples) < degree + 1:
        raise DTWCInputError(f"need {degree + 1} field samples, got {len(samples)}")
    x = Symbol("q")
    fitted = Poly(interpolate([(s.q, s.count) for s in samples], x), x)
    coeffs = list(reversed(fitted.all_coeffs()))
    if any(not c.is_integer for c in coeffs):
        raise DTWCVerificationError(f"counts fit a non-integral polynomial {fitted.as_expr()}")
    values = [int(c) for c in coeffs]
    while len(values) > 1 and values[-1] == 0:
        values.pop()
    if len(values) - 1 > degree:
        raise DTWCVerificationError(
            f"counts need degree {len(values) - 1}, expected at most {degree}"
        )
    if values[-1] < 0:
        raise DTWCVerificationError("counting polynomial has a negative leading coefficient")
    return values


async def euler_characteristic_async(
    quiver: Quiver,
    d: Sequence[int],
    e: Sequence[int],
    mu: Stability | None = None,
    fields: Sequence[int] = DEFAULT_FIELD_SIZES,
    strategy: Strategy = "auto",
    settings: DTWCSettings | None = None,
) -> CountResult:
    """Sample every field concurrently and interpolate the counting polynomial."""
    caps = settings or DTWCSettings()
    dims, frame = _check_shapes(quiver, d, e)
    stability: Stability = mu if mu is not None else TrivialStability()
    gate = asyncio.Semaphore(caps.threads)
    samples = await asyncio.gather(
        *(
            count_stable_framed_async(q, quiver, dims, frame, stability, strategy, caps, gate)
            for q in sorted(set(fields))
        )
    )
    degree = moduli_dimension(quiver, dims, frame)
    polynomial = interpolate_counts(samples, max(degree, 0))
    euler = sum(polynomial)
    _LOGGER.info(
        "Euler characteristic of %s d=%s e=%s: %d", quiver.label, list(dims), list(frame), euler
    )
    return CountResult(
        quiver=quiver.label,
        dimension=list(dims),
        framing=list(frame),
        strategy=_resolve_strategy(strategy, stability, frame),
        samples=list(samples),
        polynomial=polynomial,
        euler=euler,
    )


def euler_characteristic(
    quiver: Quiver,
    d: Sequence[int],
    e: Sequence[int],
    mu: Stability | None = None,
    fields: Sequence[int] = DEFAULT_FIELD_SIZES,
    strategy: Strategy = "auto",
    settings: DTWCSettings | None = None,
) -> CountResult:
    """Synchronous wrapper around :func:`euler_characteristic_async`."""
    return asyncio.run(euler_characteristic_async(quiver, d, e, mu, fields, strategy, settings))


def ndt_from_count(result: CountResult, chi_hat_dd: int) -> Fraction:
    """Signed Euler characteristic ``(-1)**(chi_hat(d, d) + e.d) * chi``."""
    ed = sum(a * b for a, b in zip(result.dimension, result.framing))
    return Fraction(sign(chi_hat_dd + ed) * result.euler)
