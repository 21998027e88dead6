"""JSON documents for truncated power series."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, field_validator


class SeriesTerm(BaseModel):
    """One nonzero term ``(num/den) * q^exp`` of a series."""

    model_config = ConfigDict(populate_by_name=True)

    exponents: list[int] = Field(..., alias="exp")
    numerator: str = Field(..., alias="num")
    denominator: str = Field("1", alias="den")

    @field_validator("exponents")
    @classmethod
    def non_negative(cls, v: list[int]) -> list[int]:
        """Reject negative exponents.

        Args:
            v: Exponent vector

        Returns:
            The unchanged vector

        """
        if any(x < 0 for x in v):
            raise ValueError("exponents must be non-negative")
        return v


class SeriesDocument(BaseModel):
    """Serialized truncated series.

    ``bound`` is an integer for a total-degree bound or a list of
    per-variable caps. Terms are listed in graded-lex order.
    """

    model_config = ConfigDict(populate_by_name=True)

    arity: int = Field(..., ge=1)
    bound: int | list[int]
    terms: list[SeriesTerm] = Field(default_factory=list)
