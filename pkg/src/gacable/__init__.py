"""Exact cable computations for locally nilpotent derivations over Q."""

from .exact_poly import (
    Bigrade,
    Bigrading,
    InexactDivision,
    ParseError,
    PolyError,
    Polynomial,
    VarSet,
    divide_exact,
    format_poly,
    from_json,
    monomial_basis,
    parse_poly,
    substitute,
    to_json,
    try_divide,
)
from .linalg_graded import ExactMatrix, VectorSpaceBasis, kernel_basis, rank, rref, solve_particular
from .derivations import (
    Derivation,
    DerivationError,
    LocalizedElement,
    dixmier,
    exp_map,
    kernel_graded,
    preimage_graded,
    wronskian,
)
from .cables import CableError, CablePrefix, add, exp_transport, limit_combine, phi_map, scale, shifted_sum
from .omega import BALANCED, SMALL, OmegaContext
from .dim5 import Dim5Context
from .roberts7 import RobertsContext

__all__ = [
    "Bigrade",
    "Bigrading",
    "InexactDivision",
    "ParseError",
    "PolyError",
    "Polynomial",
    "VarSet",
    "divide_exact",
    "format_poly",
    "from_json",
    "monomial_basis",
    "parse_poly",
    "substitute",
    "to_json",
    "try_divide",
    "ExactMatrix",
    "VectorSpaceBasis",
    "kernel_basis",
    "rank",
    "rref",
    "solve_particular",
    "Derivation",
    "DerivationError",
    "LocalizedElement",
    "dixmier",
    "exp_map",
    "kernel_graded",
    "preimage_graded",
    "wronskian",
    "CableError",
    "CablePrefix",
    "add",
    "exp_transport",
    "limit_combine",
    "phi_map",
    "scale",
    "shifted_sum",
    "BALANCED",
    "SMALL",
    "OmegaContext",
    "Dim5Context",
    "RobertsContext",
]

__version__ = "0.1.0"
