"""Exact certification of candidate maximum-principle quantities for
contracting surface flows with normal velocity K**sigma."""

__version__ = "0.1.0"

from .candidate import Candidate
from .case_analysis import (
    CaseParams,
    CaseVerdict,
    classify,
    cross_check,
    predicted_leading,
    theorem_sweep,
    verdict,
)
from .errors import *  # noqa: F401,F403
from .exact_algebra import (
    Interval,
    RhoPoly,
    SigmaLinear,
    certify_sign,
    certify_sign_on_halfline,
    isolate_real_roots,
    poly_arith,
    poly_derivative,
    sturm_count_roots,
)
from .flow_terms import (
    RTerms,
    compute_r_terms,
    constant_poly_C,
    gradient_poly_G1,
    gradient_poly_G2,
)
from .hk_polynomials import (
    HKPoly,
    LambdaPoly,
    dehomogenize,
    diagonal_sum,
    expand_lambda,
    first_positive_index,
    hk_mul,
    leading_term,
    partial_H,
    partial_K,
    second_partials,
)
from .mpf_checker import MPFReport, SearchConfig, Verdict, check_all, search
from .numeric import FunctionQuantity, RationalQuantity, numeric_terms
from .velocities import VelocitySpec, velocity
