"""Exact wall-crossing and Donaldson-Thomas invariant computations."""

from .catalog import REGISTRY, CatalogEntry, list_entries, verify
from .exceptions import DTWCBudgetError, DTWCError, DTWCInputError, DTWCVerificationError
from .fforacle import count_stable_framed, euler_characteristic, ndt_from_count
from .invariants import (
    InvariantTable,
    TableKind,
    bps_from_dt,
    dt_from_bps,
    dt_from_pair_series,
    pair_series,
    pair_transform,
)
from .lattice import NumericalContext, SlopeStability, TrivialStability, extend_by_framing
from .models import DTWCSettings, Quiver
from .series import SeriesBound, TruncatedSeries
from .wallcross import coeff_S, coeff_U, coeff_V, transform

__all__ = [
    # Errors
    "DTWCError",
    "DTWCInputError",
    "DTWCBudgetError",
    "DTWCVerificationError",
    # Lattice and contexts
    "NumericalContext",
    "SlopeStability",
    "TrivialStability",
    "extend_by_framing",
    "Quiver",
    "DTWCSettings",
    # Series
    "SeriesBound",
    "TruncatedSeries",
    # Wall-crossing
    "coeff_S",
    "coeff_U",
    "coeff_V",
    "transform",
    # Invariants
    "InvariantTable",
    "TableKind",
    "bps_from_dt",
    "dt_from_bps",
    "pair_transform",
    "pair_series",
    "dt_from_pair_series",
    # Finite-field oracle
    "count_stable_framed",
    "euler_characteristic",
    "ndt_from_count",
    # Catalog
    "REGISTRY",
    "CatalogEntry",
    "list_entries",
    "verify",
]
