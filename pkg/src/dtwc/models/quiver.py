"""Quiver model and the standard quivers used by the catalog."""

from __future__ import annotations

import json
import logging
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

_LOGGER = logging.getLogger(__name__)


class Quiver(BaseModel):
    """A finite directed graph with named vertices.

    Loops and repeated edges are allowed. Edges are stored as
    ``[tail, head]`` name pairs, matching the JSON form
    ``{"vertices": ["v0", "v1"], "edges": [["v0", "v1"], ...]}``.
    """

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    vertices: list[str] = Field(..., alias="vertices")
    edges: list[tuple[str, str]] = Field(default_factory=list, alias="edges")
    name: str | None = Field(None, alias="name")

    @field_validator("vertices")
    @classmethod
    def validate_vertices(cls, v: list[str]) -> list[str]:
        """Require a nonempty list of distinct vertex names.

        Args:
            v: Vertex names

        Returns:
            The unchanged names

        Raises:
            ValueError: If the list is empty or repeats a name

        """
        if not v:
            raise ValueError("vertices cannot be empty")
        if len(set(v)) != len(v):
            raise ValueError("vertices must be distinct")
        return v

    @model_validator(mode="after")
    def validate_edges(self) -> Quiver:
        """Check that every edge joins declared vertices."""
        known = set(self.vertices)
        for tail, head in self.edges:
            if tail not in known or head not in known:
                raise ValueError(f"edge ({tail}, {head}) uses an undeclared vertex")
        return self

    @property
    def rank(self) -> int:
        """Number of vertices."""
        return len(self.vertices)

    @property
    def edge_indices(self) -> list[tuple[int, int]]:
        """Edges as ``(tail, head)`` vertex positions."""
        index = {name: i for i, name in enumerate(self.vertices)}
        return [(index[t], index[h]) for t, h in self.edges]

    def edge_count(self, tail: int, head: int) -> int:
        """Number of edges from vertex ``tail`` to vertex ``head``."""
        return sum(1 for t, h in self.edge_indices if t == tail and h == head)

    @property
    def label(self) -> str:
        """Display name, falling back to a size summary."""
        return self.name or f"quiver({self.rank} vertices, {len(self.edges)} edges)"

    # -- standard quivers --------------------------------------------------------

    @classmethod
    def loops(cls, m: int) -> Quiver:
        """One vertex with ``m`` loops."""
        if m < 0:
            raise ValueError(f"loop count must be >= 0, got {m}")
        return cls(vertices=["v0"], edges=[("v0", "v0")] * m, name=f"loops:{m}")

    @classmethod
    def conifold(cls) -> Quiver:
        """Two vertices with two edges in each direction."""
        return cls(
            vertices=["v0", "v1"],
            edges=[("v0", "v1"), ("v0", "v1"), ("v1", "v0"), ("v1", "v0")],
            name="conifold",
        )

    @classmethod
    def klein_mckay(cls) -> Quiver:
        """McKay quiver of the Klein four-group: one edge between each ordered vertex pair."""
        names = [f"v{i}" for i in range(4)]
        edges = [(a, b) for a in names for b in names if a != b]
        return cls(vertices=names, edges=edges, name="c3z2z2")

    @classmethod
    def cyclic_mckay(cls, n: int) -> Quiver:
        """McKay quiver of the cyclic group of order ``n`` acting with weights ``(1, -1, 0)``.

        Vertex ``i`` has an edge to ``i + 1``, an edge to ``i - 1`` and a loop,
        indices taken mod ``n``.
        """
        if n < 2:
            raise ValueError(f"cyclic quiver needs n >= 2, got {n}")
        names = [f"v{i}" for i in range(n)]
        edges: list[tuple[str, str]] = []
        for i in range(n):
            edges.append((names[i], names[(i + 1) % n]))
            edges.append((names[i], names[i]))
            edges.append((names[i], names[(i - 1) % n]))
        return cls(vertices=names, edges=edges, name=f"c3zn:{n}")

    @classmethod
    def resolve(cls, name: str) -> Quiver:
        """Resolve ``loops:m``, a standard name, or a path to a JSON file.

        Raises:
            FileNotFoundError: If ``name`` names neither a standard quiver nor a file
            ValueError: If the file does not hold a valid quiver

        """
        key = name.strip().lower()
        if key.startswith("loops:"):
            return cls.loops(int(key.split(":", 1)[1]))
        if key.startswith("c3zn:"):
            return cls.cyclic_mckay(int(key.split(":", 1)[1]))
        if key == "conifold":
            return cls.conifold()
        if key == "c3z2z2":
            return cls.klein_mckay()
        return cls.load(Path(name))

    @classmethod
    def load(cls, path: Path) -> Quiver:
        """Load a quiver from a JSON file."""
        _LOGGER.debug("Loading quiver from %s", path)
        return cls.model_validate(json.loads(path.read_text()))

    def to_json(self) -> str:
        """Serialize to JSON."""
        return self.model_dump_json(by_alias=True, exclude_none=True)
