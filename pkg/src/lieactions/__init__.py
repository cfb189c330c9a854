"""lieactions: exact Lie-algebra invariants, contractions, and
constructed group actions, with numerical verification.

Exact layers (structure constants, series, centers, derivations,
obstruction verdicts, polynomial vector fields) compute certificates
over Q. Numerical layers (deformation and action verification, flows)
cross-check the constructions with seeded sampling.
"""

__version__ = "0.1.0"

from .algebra import LieAlgebra, SeriesReport, direct_sum, from_json_dict, to_json_dict
from .catalog import catalog
from .constants import DEFAULT_SEED
from .linalg import RatMatrix, Rational, Subspace

__all__ = [
    "__version__",
    "LieAlgebra",
    "SeriesReport",
    "direct_sum",
    "from_json_dict",
    "to_json_dict",
    "catalog",
    "DEFAULT_SEED",
    "RatMatrix",
    "Rational",
    "Subspace",
]
