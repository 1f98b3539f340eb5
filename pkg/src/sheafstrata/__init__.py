"""Exact classification of one-dimensional plane sheaves with Hilbert
polynomial 6m + 3 into the nine cohomology strata of their moduli space.

Sheaves are handled through graded matrix presentations between sums of
line bundle twists; every computation is exact linear algebra over the
rationals or a prime field.
"""

from .blowdown import blow_down, delta7, delta10, fiber_consistency
from .builders import (PointSet, hilbert_burch, ideal_generators,
                       sextic_sheaf, twisted_ideal_sheaf, x5_normal_form,
                       x6_normal_form)
from .cohomology import (CohomologyTable, cohomology_table,
                         euler_characteristic, h0, h0_tensor_omega, h1,
                         hilbert_polynomial)
from .errors import (DegreeMismatchError, InternalCheckError,
                     InvalidPresentationError, NoStratumMatchError,
                     NotInjectiveError, ParseError, RetryBudgetError,
                     ShapeError, SheafStrataError, TwistMismatchError)
from .estimators import CohomologyFeatures, StratumClassifier
from .fields import GF, QQ
from .forms import Form, format_form, parse_form, random_form
from .kronecker import (KroneckerModule, dim_N, forbidden_block_shapes,
                        instability_witness_search, is_semistable_minors,
                        verify_witness)
from .presentation import (Presentation, apply_equivalence, determinant,
                           dualize, from_json, invert_automorphism,
                           maximal_minors, random_automorphism,
                           sigma_membership, validate)
from .strata import (TABLE, CheckResult, StratumId, StratumInfo,
                     StratumReport, classify, classify_report, codim_audit,
                     sample, verify_w)

__version__ = "0.1.0"

__all__ = [
    "CheckResult", "CohomologyFeatures", "CohomologyTable",
    "DegreeMismatchError", "Form", "GF", "InternalCheckError",
    "InvalidPresentationError", "KroneckerModule", "NoStratumMatchError",
    "NotInjectiveError", "ParseError", "PointSet", "Presentation", "QQ",
    "RetryBudgetError", "ShapeError", "SheafStrataError", "StratumClassifier",
    "StratumId", "StratumInfo", "StratumReport", "TABLE",
    "TwistMismatchError", "apply_equivalence", "blow_down", "classify",
    "classify_report", "codim_audit", "cohomology_table", "delta10",
    "delta7", "determinant", "dim_N", "dualize", "euler_characteristic",
    "fiber_consistency", "forbidden_block_shapes", "format_form",
    "from_json", "h0", "h0_tensor_omega", "h1", "hilbert_burch",
    "hilbert_polynomial", "ideal_generators", "instability_witness_search",
    "invert_automorphism", "is_semistable_minors", "maximal_minors",
    "parse_form", "random_automorphism", "random_form", "sample",
    "sextic_sheaf", "sigma_membership", "twisted_ideal_sheaf", "validate",
    "verify_w", "verify_witness", "x5_normal_form", "x6_normal_form",
]
