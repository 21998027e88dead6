"""Settings model for enumeration caps and oracle budgets."""

from __future__ import annotations

import logging
import os
from collections.abc import Mapping

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..const import (
    ENV_BUDGET,
    MAX_COMPOSITION_TOTAL,
    MAX_DECOMPOSITION_PARTS,
    MAX_TREE_VERTICES,
    ORACLE_BUDGET,
)

_LOGGER = logging.getLogger(__name__)


class DTWCSettings(BaseModel):
    """Tunable caps shared by the enumeration kernels and the oracle.

    Every cap is explicit: when an operation would need more than a cap
    allows it raises instead of silently truncating.
    """

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    max_tree_vertices: int = Field(MAX_TREE_VERTICES, alias="maxTreeVertices")
    max_composition_total: int = Field(MAX_COMPOSITION_TOTAL, alias="maxCompositionTotal")
    max_parts: int = Field(MAX_DECOMPOSITION_PARTS, alias="maxParts")
    oracle_budget: int = Field(ORACLE_BUDGET, alias="oracleBudget")
    threads: int = Field(1, alias="threads")

    @field_validator(
        "max_tree_vertices", "max_composition_total", "max_parts", "oracle_budget", "threads"
    )
    @classmethod
    def require_positive(cls, v: int) -> int:
        """Reject non-positive caps.

        Args:
            v: Cap value

        Returns:
            The unchanged cap

        Raises:
            ValueError: If the cap is zero or negative

        """
        if v <= 0:
            raise ValueError("caps must be positive integers")
        return v

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None) -> DTWCSettings:
        """Build settings from defaults plus environment overrides.

        ``DTWC_BUDGET`` is either a bare integer, which sets the oracle
        budget, or comma-separated ``name=value`` pairs naming any of the
        four caps by field name or alias, e.g. ``maxParts=8,oracleBudget=10000``.

        Args:
            environ: Environment mapping, ``os.environ`` when omitted

        Returns:
            Settings with the ``DTWC_BUDGET`` overrides applied

        Raises:
            ValueError: If ``DTWC_BUDGET`` names an unknown cap or a value is
                not a positive integer

        """
        env = os.environ if environ is None else environ
        raw = env.get(ENV_BUDGET)
        if raw is None or not raw.strip():
            return cls()
        overrides = _parse_budget(raw)
        _LOGGER.debug("Caps overridden from environment: %s", overrides)
        return cls.model_validate(overrides)


_CAP_FIELDS = ("max_tree_vertices", "max_composition_total", "max_parts", "oracle_budget")


def _budget_int(key: str, text: str) -> int:
    try:
        return int(text)
    except ValueError as e:
        raise ValueError(f"{ENV_BUDGET} {key} must be an integer, got {text!r}") from e


def _parse_budget(raw: str) -> dict[str, int]:
    items = [item.strip() for item in raw.split(",") if item.strip()]
    if len(items) == 1 and "=" not in items[0]:
        return {"oracle_budget": _budget_int("value", items[0])}
    names = {name: name for name in _CAP_FIELDS}
    names.update({DTWCSettings.model_fields[name].alias or name: name for name in _CAP_FIELDS})
    overrides: dict[str, int] = {}
    for item in items:
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in names:
            raise ValueError(
                f"{ENV_BUDGET} entries must be name=value with a name among "
                f"{sorted(names)}, got {item!r}"
            )
        overrides[names[key]] = _budget_int(key, value.strip())
    return overrides
