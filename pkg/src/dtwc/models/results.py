"""Report models returned by checks, verifications and the oracle."""

from __future__ import annotations

from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field


class CountSample(BaseModel):
    """Point count of a framed moduli space over one finite field."""

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    q: int = Field(..., ge=2)
    raw: int | None = Field(default=None, ge=0)
    group_order: int = Field(..., ge=1, alias="groupOrder")
    count: int = Field(..., ge=0)


class CountResult(BaseModel):
    """Interpolated counting polynomial of a framed moduli space.

    ``polynomial`` lists integer coefficients from the constant term up;
    ``euler`` is its value at ``q = 1``.
    """

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    quiver: str
    dimension: list[int] = Field(..., alias="dim")
    framing: list[int] = Field(..., alias="frame")
    strategy: str
    samples: list[CountSample] = Field(default_factory=list)
    polynomial: list[int] = Field(default_factory=list)
    euler: int


class Mismatch(BaseModel):
    """A single disagreement found during a verification."""

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    check: str
    klass: list[int] = Field(..., alias="class")
    expected: str
    actual: str


class VerificationReport(BaseModel):
    """Outcome of verifying a catalog entry."""

    model_config = ConfigDict(populate_by_name=True)

    entry: str
    checked_classes: int = Field(0, alias="checked-classes")
    mismatches: list[Mismatch] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Whether every check agreed."""
        return not self.mismatches


class GenericityReport(BaseModel):
    """Result of searching for equal-slope pairs with nonzero antisymmetric form."""

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    generic: bool
    checked_pairs: int = Field(0, alias="checkedPairs")
    witness: tuple[list[int], list[int]] | None = None


class StabilityReport(BaseModel):
    """Result of checking the weak seesaw property on sampled triples."""

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    passed: bool
    checked_triples: int = Field(0, alias="checkedTriples")
    violation: tuple[list[int], list[int], list[int]] | None = None


class IntegralityReport(BaseModel):
    """Classes whose BPS value failed to be an integer."""

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    integral: bool
    checked_classes: int = Field(0, alias="checkedClasses")
    witnesses: list[list[int]] = Field(default_factory=list)


class ReinekeReport(BaseModel):
    """Coefficient sequences linked by the rank-one functional equation.

    Values are exact ``num/den`` strings, index ``i - 1`` holding the
    ``i``-th coefficient.
    """

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    n: int = Field(..., alias="N")
    a: list[str]
    b: list[str]
    integral: bool
    witnesses: list[int] = Field(default_factory=list)

    def a_values(self) -> list[Fraction]:
        """The ``a`` sequence as Fractions."""
        return [Fraction(x) for x in self.a]

    def b_values(self) -> list[Fraction]:
        """The ``b`` sequence as Fractions."""
        return [Fraction(x) for x in self.b]
