"""JSON documents for invariant tables."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

TableKindName = Literal["DTbar", "DThat", "PI_NDT", "J", "chi_framed"]


class TableEntry(BaseModel):
    """One ``class -> value`` entry; the value is an exact ``num/den`` string."""

    model_config = ConfigDict(populate_by_name=True)

    klass: list[int] = Field(..., alias="class")
    value: str = Field(..., alias="value")

    @field_validator("klass")
    @classmethod
    def non_empty(cls, v: list[int]) -> list[int]:
        """Reject empty class vectors.

        Args:
            v: Class coordinates

        Returns:
            The unchanged coordinates

        """
        if not v:
            raise ValueError("class cannot be empty")
        return v


class TableDocument(BaseModel):
    """Serialized invariant table, entries in graded-lex class order."""

    model_config = ConfigDict(populate_by_name=True)

    kind: TableKindName = Field(..., alias="kind")
    stability: str = Field("", alias="stability")
    entries: list[TableEntry] = Field(default_factory=list, alias="entries")
