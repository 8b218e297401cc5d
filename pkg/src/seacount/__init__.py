"""Elliptic curve point counting over prime fields (naive, Schoof, SEA) and
Elkies/Atkin prime statistics for the reductions of a rational curve."""

from .curve import CurveOverFp, RationalCurve, TraceCertificate, naive_count, reduce
from .elkies import PrimeClass
from .errors import (BadReductionError, CorruptDataError, DataNotFoundError,
                     DegenerateIsogenyError, InternalDefectError, InvalidArgumentError,
                     ResourceLimitError, SeaError)
from .schoof import schoof_trace
from .sea import SeaConfig, sea_trace

__version__ = "0.1.0"

__all__ = [
    "CurveOverFp", "RationalCurve", "TraceCertificate", "naive_count", "reduce",
    "PrimeClass", "SeaConfig", "sea_trace", "schoof_trace",
    "SeaError", "InvalidArgumentError", "ResourceLimitError", "BadReductionError",
    "DataNotFoundError", "CorruptDataError", "DegenerateIsogenyError", "InternalDefectError",
]
