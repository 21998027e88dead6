"""JSON documents describing numerical contexts and named stabilities."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .quiver import Quiver


class StabilityBlock(BaseModel):
    """A named weak stability condition.

    ``slope`` needs ``c`` and ``r`` weight vectors (rational strings);
    ``trivial`` needs nothing; ``gieseker`` orders classes by the Hilbert
    polynomials of the context.
    """

    model_config = ConfigDict(populate_by_name=True)

    kind: Literal["slope", "trivial", "gieseker"] = Field(..., alias="kind")
    c: list[str] | None = Field(None, alias="c")
    r: list[str] | None = Field(None, alias="r")

    @model_validator(mode="after")
    def require_weights(self) -> StabilityBlock:
        """Slope stabilities need both weight vectors."""
        if self.kind == "slope" and (self.c is None or self.r is None):
            raise ValueError("slope stability needs both c and r")
        return self


class ContextDocument(BaseModel):
    """Serialized numerical context.

    Either ``quiver`` or the Euler-form matrices describe the lattice. When
    ``extend_by_framing`` is true the loaded context is replaced by its
    framing extension, which adds one coordinate and the two-level
    stabilities.
    """

    model_config = ConfigDict(populate_by_name=True)

    rank: int | None = Field(None, ge=1, alias="rank")
    quiver: Quiver | None = Field(None, alias="quiver")
    chi_hat: list[list[int]] | None = Field(None, alias="chi_hat")
    chi_bar: list[list[int]] | None = Field(None, alias="chi_bar")
    hilbert: list[list[str]] | None = Field(None, alias="hilbert")
    framing: list[int] | None = Field(None, alias="framing")
    stabilities: dict[str, StabilityBlock] = Field(default_factory=dict, alias="stabilities")
    extend_by_framing: bool = Field(False, alias="extend_by_framing")

    @field_validator("chi_hat", "chi_bar")
    @classmethod
    def square_matrix(cls, v: list[list[int]] | None) -> list[list[int]] | None:
        """Require square matrices.

        Args:
            v: Matrix rows, or None

        Returns:
            The unchanged matrix

        """
        if v is not None and any(len(row) != len(v) for row in v):
            raise ValueError("Euler-form matrices must be square")
        return v

    @model_validator(mode="after")
    def require_lattice(self) -> ContextDocument:
        """Require some way to fix the rank."""
        if self.rank is None and self.quiver is None and self.chi_hat is None and (
            self.chi_bar is None
        ):
            raise ValueError("context needs rank, quiver, chi_hat or chi_bar")
        return self
