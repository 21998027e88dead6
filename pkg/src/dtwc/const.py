"""Const definitions for the dtwc package."""

from typing import Final

# Enumeration bounds
MAX_TREE_VERTICES: Final[int] = 8
MAX_COMPOSITION_TOTAL: Final[int] = 20
MAX_DECOMPOSITION_PARTS: Final[int] = 6

# Finite-field oracle
ORACLE_BUDGET: Final[int] = 10**8
DEFAULT_FIELD_SIZES: Final[tuple[int, ...]] = (2, 3, 4, 5, 7, 8, 9)

# Irreducible (Conway) polynomials for the non-prime default fields, highest degree first
CONWAY_POLYNOMIALS: Final[dict[int, tuple[int, ...]]] = {
    4: (1, 1, 1),
    8: (1, 0, 1, 1),
    9: (1, 2, 2),
}

# Stability names registered on framing extensions
STABILITY_DOT: Final[str] = "taudot"
STABILITY_TILDE: Final[str] = "tautilde"
STABILITY_HAT: Final[str] = "tauhat"
STABILITY_TRIVIAL: Final[str] = "trivial"

# Catalog defaults
CATALOG_DEFAULT_ORDER: Final[int] = 8
CATALOG_FOUR_VARIABLE_CAP: Final[int] = 3
DIM0_DEFAULT_EULER: Final[int] = 2
GRASSMANN_DEFAULT_RANK: Final[int] = 6

# Configuration
ENV_BUDGET: Final[str] = "DTWC_BUDGET"
ENV_RUN_SLOW: Final[str] = "DTWC_RUN_SLOW"

# CLI exit codes
EXIT_OK: Final[int] = 0
EXIT_MISMATCH: Final[int] = 1
EXIT_BAD_INPUT: Final[int] = 2
EXIT_BUDGET: Final[int] = 3
