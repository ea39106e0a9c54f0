"""Ryser designs: construction by block complementation, exact parameter and
matrix identities, Type-1 classification and parameter scans."""

from ryser.classify import classify
from ryser.design import (
    IncidenceStructure,
    Invalid,
    Ryser,
    Symmetric,
    catalog,
    complement,
    format_design,
    from_difference_set,
    parse_design,
    verify_design,
)
from ryser.linalg import RationalMatrix, ryser_inverse
from ryser.params import RyserProfile, check_identities, ryser_profile
from ryser.scan import scan_params

__all__ = [
    "IncidenceStructure", "Invalid", "RationalMatrix", "Ryser", "RyserProfile", "Symmetric",
    "catalog", "check_identities", "classify", "complement", "format_design",
    "from_difference_set", "parse_design", "ryser_inverse", "ryser_profile", "scan_params",
    "verify_design",
]
