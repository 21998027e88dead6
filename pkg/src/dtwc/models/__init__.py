"""dtwc document models.

This package contains the pydantic documents read and written by dtwc.
"""

from .context import ContextDocument, StabilityBlock
from .quiver import Quiver
from .results import (
    CountResult,
    CountSample,
    GenericityReport,
    IntegralityReport,
    Mismatch,
    ReinekeReport,
    StabilityReport,
    VerificationReport,
)
from .series import SeriesDocument, SeriesTerm
from .settings import DTWCSettings
from .table import TableDocument, TableEntry

__all__ = [
    "ContextDocument",
    "StabilityBlock",
    "Quiver",
    "CountResult",
    "CountSample",
    "GenericityReport",
    "IntegralityReport",
    "Mismatch",
    "ReinekeReport",
    "StabilityReport",
    "VerificationReport",
    "SeriesDocument",
    "SeriesTerm",
    "DTWCSettings",
    "TableDocument",
    "TableEntry",
]
