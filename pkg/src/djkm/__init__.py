"""Exact computer algebra for the universal central extension of the DJKM algebra

    g ⊗ C[t, t^-1, u | u^2 = t^4 - 2c t^2 + 1]  ⊕  Omega/dR.
"""

from .algebra import ExtElement, PsiValue, bracket_closed, bracket_kassel, psi, sigma_ext
from .arith import (
    C,
    PolyC,
    PowerSeriesZ,
    RatFuncC,
    format_ratfunc,
    normalize_ratfunc,
    parse_ratfunc,
    series_formal_integrate,
    series_multiply,
    specialize_c,
)
from .liealg import SimpleLieAlgebra, build_sl2, killing_from_constants, load_structure_constants
from .omega import DiffNormalForm, LemmaRelation, OmegaClass, cocycle, lemma_relation, reduce, sigma_omega
from .pfamilies import (
    GegenbauerTable,
    PFamilyTable,
    check_funde,
    check_odes,
    gegenbauer,
    pfamily_recursion,
    pfamily_series,
)
from .ring import CurveSpec, RingElem, djkm_curve, parse_ring, ring_d, ring_mul, sigma_ring
from .verify import VerifyReport, verify

__version__ = "0.1.0"
