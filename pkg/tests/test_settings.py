"""Tests for enumeration caps and oracle budgets."""

from fractions import Fraction

import pytest
from pydantic import ValidationError

from dtwc.const import ENV_BUDGET, MAX_DECOMPOSITION_PARTS, ORACLE_BUDGET
from dtwc.exceptions import DTWCBudgetError
from dtwc.lattice import SlopeStability
from dtwc.models import DTWCSettings
from dtwc.wallcross import transform


class TestDTWCSettings:
    """Test DTWCSettings model."""

    def test_defaults(self, settings: DTWCSettings) -> None:
        """Defaults come from the package constants."""
        assert settings.max_parts == MAX_DECOMPOSITION_PARTS
        assert settings.oracle_budget == ORACLE_BUDGET
        assert settings.threads == 1

    def test_aliases(self) -> None:
        """Caps can be given by alias or by field name."""
        by_alias = DTWCSettings.model_validate({"maxParts": 3, "oracleBudget": 50})
        by_name = DTWCSettings(max_parts=3, oracle_budget=50)
        assert by_alias == by_name

    @pytest.mark.parametrize("value", [0, -4])
    def test_rejects_non_positive(self, value: int) -> None:
        """Caps must be positive."""
        with pytest.raises(ValidationError, match="positive"):
            DTWCSettings(max_tree_vertices=value)

    def test_frozen(self, settings: DTWCSettings) -> None:
        """Settings are immutable."""
        with pytest.raises(ValidationError):
            settings.threads = 4  # type: ignore[misc]


class TestFromEnv:
    """Test environment overrides."""

    def test_no_override(self) -> None:
        """An empty environment gives the defaults."""
        assert DTWCSettings.from_env({}) == DTWCSettings()
        assert DTWCSettings.from_env({ENV_BUDGET: "  "}) == DTWCSettings()

    def test_budget_override(self) -> None:
        """A bare integer replaces the oracle budget only."""
        settings = DTWCSettings.from_env({ENV_BUDGET: "1234"})
        assert settings.oracle_budget == 1234
        assert settings.max_parts == MAX_DECOMPOSITION_PARTS

    def test_reads_process_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Without a mapping the process environment is used."""
        monkeypatch.setenv(ENV_BUDGET, "99")
        assert DTWCSettings.from_env().oracle_budget == 99

    def test_not_an_integer(self) -> None:
        """Malformed values raise."""
        with pytest.raises(ValueError, match=ENV_BUDGET):
            DTWCSettings.from_env({ENV_BUDGET: "many"})

    def test_non_positive_budget(self) -> None:
        """Zero is rejected by the model validator."""
        with pytest.raises(ValidationError):
            DTWCSettings.from_env({ENV_BUDGET: "0"})

    def test_named_caps(self) -> None:
        """Named pairs override the enumeration caps as well as the oracle budget."""
        settings = DTWCSettings.from_env(
            {ENV_BUDGET: "maxParts=8, max_tree_vertices=9,maxCompositionTotal=11,oracleBudget=500"}
        )
        assert settings.max_parts == 8
        assert settings.max_tree_vertices == 9
        assert settings.max_composition_total == 11
        assert settings.oracle_budget == 500
        assert settings.threads == 1

    def test_named_caps_keep_other_defaults(self) -> None:
        """Caps not named keep their defaults."""
        settings = DTWCSettings.from_env({ENV_BUDGET: "maxParts=3"})
        assert settings.max_parts == 3
        assert settings.oracle_budget == ORACLE_BUDGET

    @pytest.mark.parametrize("raw", ["threads=4", "maxParts", "bogus=1", "maxParts=x"])
    def test_rejects_bad_pairs(self, raw: str) -> None:
        """Only the four caps may be named, each with an integer."""
        with pytest.raises(ValueError, match=ENV_BUDGET):
            DTWCSettings.from_env({ENV_BUDGET: raw})

    def test_named_cap_reaches_transform(self, one_edge_ctx, monkeypatch) -> None:
        """A part cap from the environment stops the wall-crossing transform."""
        monkeypatch.setenv(ENV_BUDGET, "maxParts=2")
        table = {(1, 0): Fraction(1), (0, 1): Fraction(1)}
        low = SlopeStability.of([0, 1], [1, 1])
        high = SlopeStability.of([1, 0], [1, 1])
        with pytest.raises(DTWCBudgetError, match="more than 2 parts"):
            transform(one_edge_ctx, table, low, high, (2, 1), settings=DTWCSettings.from_env())
