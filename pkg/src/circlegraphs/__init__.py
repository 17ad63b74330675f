"""Circle graphs through isotropic matroids, delta-matroids and 4-regular graphs."""

from .algebra import Gf2Matrix, IntMatrix, gf2_kernel, gf2_rank, int_det
from .errors import DimensionError, ParseError, PreconditionError, ResourceGuardError
from .fourregular import EulerSystem, FourRegularGraph, euler_system_from_dow, interlacement
from .graphs import LoopedGraph, canonical_form, is_vertex_minor, local_equivalence_orbit
from .isotropic import IsotropicPresentation, transverse_circuits, transverse_matroid
from .matroid import BinaryMatroid, automorphism_count, class_test, has_minor
from .deltamatroid import SetSystem, dm_from_matrix, is_delta_matroid
from .pu import is_pu, is_t_regular_isotropic, pu_sign
from .recognize import characterization_report, is_circle

__version__ = "0.1.0"

__all__ = [
    "Gf2Matrix", "IntMatrix", "gf2_kernel", "gf2_rank", "int_det",
    "DimensionError", "ParseError", "PreconditionError", "ResourceGuardError",
    "EulerSystem", "FourRegularGraph", "euler_system_from_dow", "interlacement",
    "LoopedGraph", "canonical_form", "is_vertex_minor", "local_equivalence_orbit",
    "IsotropicPresentation", "transverse_circuits", "transverse_matroid",
    "BinaryMatroid", "automorphism_count", "class_test", "has_minor",
    "SetSystem", "dm_from_matrix", "is_delta_matroid",
    "is_pu", "is_t_regular_isotropic", "pu_sign",
    "characterization_report", "is_circle",
    "__version__",
]
