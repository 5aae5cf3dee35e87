"""Regular and strongly regular sequences on finitely presented modules."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DegreeCapExceeded,
    GradingError,
    InconsistencyError,
    ParseError,
    PreconditionError,
    RegseqError,
    ResourceError,
    RingMismatchError,
)
from .polycore import GF, QQ, PolyRing, Polynomial, TermOrder  # noqa: E402
from .groebner import Ideal, buchberger, degree_cap  # noqa: E402
from .fpmodule import FPModule, free_module, present  # noqa: E402
from .koszul import build_koszul, depth_via_koszul, koszul_homology  # noqa: E402
from .criteria import (  # noqa: E402
    PrimeCandidate,
    corollary2_check,
    depth_ext,
    is_regular,
    is_strongly_regular,
    local_depth,
    monomial_ass,
    sop_regular_check,
    theorem_crosscheck,
)

__all__ = [
    "__version__", "RegseqError", "RingMismatchError", "ParseError", "GradingError",
    "PreconditionError", "ResourceError", "DegreeCapExceeded", "InconsistencyError",
    "GF", "QQ", "PolyRing", "Polynomial", "TermOrder", "Ideal", "buchberger", "degree_cap",
    "FPModule", "free_module", "present", "build_koszul", "depth_via_koszul", "koszul_homology",
    "PrimeCandidate", "corollary2_check", "depth_ext", "is_regular", "is_strongly_regular",
    "local_depth", "monomial_ass", "sop_regular_check", "theorem_crosscheck",
]
