"""Exact and numerical checks for mixture identities characterising exponential and Laplace laws."""

from .cf import CFModel, GridSpec, cf_eval, identity_residual, phisa_residual
from .dist import (
    MixtureLaw,
    ks_statistic,
    mixture_cdf,
    mixture_pdf,
    order_stat_cdf,
    renyi_check,
    sample_sum,
)
from .mixture import (
    ConditionReport,
    Family,
    MuVector,
    ThetaSet,
    check_condition,
    theta_exponential,
    theta_laplace,
    verify_lemma1,
    verify_lemma1_laplace,
)
from .moments import (
    MomentSeq,
    RecursionStep,
    classify_from_seed,
    forward_moments,
    moment_of_sum,
    reconstruct_moments,
)
from .symfunc import Rational, complete_homogeneous, compositions, multinomial, power_sum

__version__ = "0.1.0"
