"""Exact arithmetic and combinatorial enumeration primitives.

Everything rational in dtwc is a :class:`fractions.Fraction`; integers are
Python ints. Compositions and labelled trees are immutable value types, and
the enumerators are plain generators, so a stream can be restarted simply by
calling the function again.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction

from sympy import divisors as _sympy_divisors
from sympy import factorint
from sympy.combinatorics.prufer import Prufer

from .const import MAX_COMPOSITION_TOTAL, MAX_TREE_VERTICES
from .exceptions import DTWCBudgetError, DTWCInputError

_LOGGER = logging.getLogger(__name__)

Rational = Fraction


def format_rational(value: Fraction | int) -> str:
    """Render an exact rational as a ``num/den`` string."""
    frac = Fraction(value)
    return f"{frac.numerator}/{frac.denominator}"


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"num/den"``, an integer string, or a number into a Fraction.

    Raises:
        DTWCInputError: If the text is not an exact rational

    """
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise DTWCInputError(f"not an exact rational: {text!r}") from e


def moebius(m: int) -> int:
    """Return the Möbius function of ``m``.

    Args:
        m: Positive integer

    Returns:
        ``(-1)**k`` if ``m`` is a product of ``k`` distinct primes, else 0

    Raises:
        DTWCInputError: If ``m`` is not positive

    """
    if m < 1:
        raise DTWCInputError(f"moebius is defined for m >= 1, got {m}")
    factors = factorint(m)
    if any(exponent > 1 for exponent in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, zero when ``k`` lies outside ``[0, n]``."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def divisors(n: int) -> list[int]:
    """Positive divisors of ``n`` in increasing order."""
    if n < 1:
        raise DTWCInputError(f"divisors are defined for n >= 1, got {n}")
    return [int(x) for x in _sympy_divisors(n)]


def sign(exponent: int) -> int:
    """Return ``(-1)**exponent`` for any integer exponent."""
    return -1 if exponent % 2 else 1


@dataclass(frozen=True, slots=True)
class Composition:
    """An ordered composition of a positive integer into positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        """Validate the parts."""
        if not self.parts:
            raise DTWCInputError("parts cannot be empty")
        if any(part < 1 for part in self.parts):
            raise DTWCInputError(f"every part must be >= 1, got {self.parts}")

    @property
    def total(self) -> int:
        """Sum of the parts."""
        return sum(self.parts)

    @property
    def boundaries(self) -> tuple[int, ...]:
        """Partial sums ``0 = a_0 < a_1 < ... < a_m = total``."""
        return (0, *itertools.accumulate(self.parts))

    def blocks(self) -> Iterator[range]:
        """Yield the index range covered by each part."""
        bounds = self.boundaries
        for start, stop in itertools.pairwise(bounds):
            yield range(start, stop)


def _compositions(total: int) -> Iterator[tuple[int, ...]]:
    for first in range(1, total + 1):
        if first == total:
            yield (total,)
        else:
            for rest in _compositions(total - first):
                yield (first, *rest)


def enumerate_compositions(
    total: int, max_total: int = MAX_COMPOSITION_TOTAL
) -> Iterator[Composition]:
    """Yield every composition of ``total`` once, in lexicographic order.

    Args:
        total: Positive integer to compose
        max_total: Enumeration bound

    Raises:
        DTWCInputError: If ``total`` is not positive
        DTWCBudgetError: If ``total`` exceeds ``max_total``

    """
    if total < 1:
        raise DTWCInputError(f"total must be >= 1, got {total}")
    if total > max_total:
        raise DTWCBudgetError(f"composition total {total} exceeds bound {max_total}")
    for parts in _compositions(total):
        yield Composition(parts)


@dataclass(frozen=True, slots=True)
class OrientedTree:
    """A labelled tree on ``{1, ..., n}`` with every edge oriented low to high."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        """Validate edge count, orientation and connectivity."""
        if self.n < 1:
            raise DTWCInputError(f"vertex count must be >= 1, got {self.n}")
        if len(self.edges) != self.n - 1:
            raise DTWCInputError(f"a tree on {self.n} vertices needs {self.n - 1} edges")
        for tail, head in self.edges:
            if not 1 <= tail < head <= self.n:
                raise DTWCInputError(f"edge {(tail, head)} is not oriented low to high")
        if not is_connected(self.n, self.edges):
            raise DTWCInputError(f"edges {self.edges} do not connect {self.n} vertices")

    @classmethod
    def from_edges(cls, n: int, edges: list[tuple[int, int]]) -> OrientedTree:
        """Build a tree, orienting each undirected edge low to high."""
        oriented = sorted((min(a, b), max(a, b)) for a, b in edges)
        return cls(n, tuple(oriented))


def is_connected(n: int, edges: tuple[tuple[int, int], ...] | list[tuple[int, int]]) -> bool:
    """Return whether ``edges`` connect the vertices ``1..n`` (orientation ignored)."""
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        if not (1 <= a <= n and 1 <= b <= n):
            return False
        parent[find(a)] = find(b)
    return len({find(v) for v in range(1, n + 1)}) == 1


def enumerate_oriented_trees(
    n: int, max_vertices: int = MAX_TREE_VERTICES
) -> Iterator[OrientedTree]:
    """Yield each labelled tree on ``{1..n}`` once, oriented low to high.

    Trees are decoded from Prüfer sequences, so the stream has exactly
    ``n**(n-2)`` members for ``n >= 2``.

    Raises:
        DTWCInputError: If ``n`` is not positive
        DTWCBudgetError: If ``n`` exceeds ``max_vertices``

    """
    if n < 1:
        raise DTWCInputError(f"vertex count must be >= 1, got {n}")
    if n > max_vertices:
        raise DTWCBudgetError(f"tree size {n} exceeds bound {max_vertices}")
    if n == 1:
        yield OrientedTree(1, ())
        return
    if n == 2:
        yield OrientedTree(2, ((1, 2),))
        return
    for sequence in itertools.product(range(n), repeat=n - 2):
        edges = [(a + 1, b + 1) for a, b in Prufer.to_tree(list(sequence))]
        yield OrientedTree.from_edges(n, edges)
