"""Shared fixtures for dtwc tests."""

import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict

import pytest

from dtwc.const import ENV_RUN_SLOW
from dtwc.lattice import NumericalContext, extend_by_framing
from dtwc.models import DTWCSettings, Quiver


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    """Skip tests marked slow unless DTWC_RUN_SLOW=1."""
    if os.environ.get(ENV_RUN_SLOW) == "1":
        return
    skip_slow = pytest.mark.skip(reason=f"set {ENV_RUN_SLOW}=1 to run slow tests")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


# Contexts
@pytest.fixture
def settings() -> DTWCSettings:
    """Default caps."""
    return DTWCSettings()


@pytest.fixture
def conifold_ctx() -> NumericalContext:
    """Conifold quiver framed at v0."""
    return NumericalContext.from_quiver(Quiver.conifold(), framing=(1, 0))


@pytest.fixture
def rank_one_ctx() -> NumericalContext:
    """Rank-one lattice with vanishing form and framing functional 1."""
    return NumericalContext.abstract(rank=1, framing=(1,))


@pytest.fixture
def framed_ctx(rank_one_ctx: NumericalContext) -> NumericalContext:
    """Framing extension of the rank-one lattice, carrying taudot/tautilde/tauhat."""
    return extend_by_framing(rank_one_ctx)


@pytest.fixture
def one_edge_ctx() -> NumericalContext:
    """Two vertices joined by one edge."""
    quiver = Quiver(vertices=["a", "b"], edges=[("a", "b")], name="A2")
    return NumericalContext.from_quiver(quiver, framing=(1, 1))


@pytest.fixture
def two_way_ctx() -> NumericalContext:
    """Two arrows a -> b and one arrow b -> a."""
    quiver = Quiver(vertices=["a", "b"], edges=[("a", "b"), ("a", "b"), ("b", "a")], name="two-way")
    return NumericalContext.from_quiver(quiver)


# JSON documents
@pytest.fixture
def bp_context_document() -> Dict[str, Any]:
    """Rank-one context extended by its framing."""
    return {"rank": 1, "chi_bar": [[0]], "framing": [1], "extend_by_framing": True}


@pytest.fixture
def conifold_context_document() -> Dict[str, Any]:
    """Conifold quiver context with two slope stabilities."""
    return {
        "quiver": {
            "vertices": ["v0", "v1"],
            "edges": [["v0", "v1"], ["v0", "v1"], ["v1", "v0"], ["v1", "v0"]],
        },
        "framing": [1, 0],
        "stabilities": {
            "mu": {"kind": "slope", "c": ["1", "0"], "r": ["1", "1"]},
            "mu2": {"kind": "slope", "c": ["0", "1"], "r": ["1", "1"]},
        },
    }


@pytest.fixture
def grassmann_table_document() -> Dict[str, Any]:
    """Multiple cover table ``DT^(m) = 1/m**2`` up to m = 3."""
    return {
        "kind": "DTbar",
        "stability": "trivial",
        "entries": [
            {"class": [1], "value": "1/1"},
            {"class": [2], "value": "1/4"},
            {"class": [3], "value": "1/9"},
        ],
    }


@pytest.fixture
def write_json(tmp_path: Path):
    """Write a document into the temporary directory and return its path."""

    def write(name: str, document: Dict[str, Any]) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return path

    return write


@pytest.fixture
def multiple_cover() -> Dict[tuple[int, ...], Fraction]:
    """``DT^(m) = 1/m**2`` for m up to 6."""
    return {(m,): Fraction(1, m * m) for m in range(1, 7)}
