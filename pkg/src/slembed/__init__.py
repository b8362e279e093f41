"""Exact piecewise-linear embeddings of triangulated disks.

Everything is computed over the rationals; results are exact or an error is
raised.
"""

from .disk import (KeyFinding, SLCircle, SLDisk, boundary_circle, find_key_or_twinkey, is_simple,
                   is_TrH, is_TrV, natural_edges, roof, spanning_simplices, validate)
from .errors import ConsistencyError, PreconditionError, SLError
from .extension import evaluation_bound, extend, obstructive_simplices, transpose, vertical_extend
from .geometry import Point, ProjectiveMap, signed_vol
from .oracle import embedding_violations, is_embedding
from .reduction import ReducedForm, reduce, reduction_map

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError", "KeyFinding", "Point", "PreconditionError", "ProjectiveMap", "ReducedForm",
    "SLCircle", "SLDisk", "SLError", "boundary_circle", "embedding_violations", "evaluation_bound",
    "extend", "find_key_or_twinkey", "is_TrH", "is_TrV", "is_embedding", "is_simple",
    "natural_edges", "obstructive_simplices", "reduce", "reduction_map", "roof", "signed_vol",
    "spanning_simplices", "transpose", "validate", "vertical_extend",
]
