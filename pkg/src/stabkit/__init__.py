"""stabkit: stabilizer-code toolkit.

Pauli-group algebra in symplectic form, the paper-scale code zoo
(repetition, [[4,2,2]], nine-qubit, planar surface codes), lookup and
exact-MWPM decoders, a dense statevector oracle for cross-checking, and a
seeded Monte Carlo engine for logical error rates and threshold scans.
"""

__version__ = "0.1.0"

from .pauli import PauliOperator, commutes, from_support, identity, multiply, parse
from .stabilizer_code import (
    ResidualClass,
    StabilizerCode,
    Syndrome,
    correctable_weight,
    distance,
)
from .code_library import get_code, registered_names, surface_code

__all__ = [
    "PauliOperator",
    "ResidualClass",
    "StabilizerCode",
    "Syndrome",
    "__version__",
    "commutes",
    "correctable_weight",
    "distance",
    "from_support",
    "get_code",
    "identity",
    "multiply",
    "parse",
    "registered_names",
    "surface_code",
]
