"""Normalized Mittag-Leffler functions, their partial sums, and empirical
checks of lower bounds on their ratios over the closed unit disk."""

from .bounds import (
    TheoremBound,
    check_tail_inequality,
    lemma_derivative_bound,
    lemma_modulus_bound,
    theorem_bound,
    thresholds,
    w_witness,
)
from .errors import (
    DomainError,
    HypothesisError,
    MLPartialError,
    PreconditionError,
    SingularDenominatorError,
    TruncationError,
)
from .identities import SpecialCase, closed_form, closed_form_derivative, identity_residual
from .series import (
    RatioCase,
    RatioKind,
    eval_ml,
    eval_normalized,
    eval_normalized_derivative,
    eval_partial_sum,
    eval_partial_sum_derivative,
    eval_ratio,
)
from .special import CoefficientTable, MLParams, build_table, coefficient, log_gamma, pochhammer
from .verify import (
    BoundReport,
    Status,
    VerifyConfig,
    boundary_min_real,
    scan_beta,
    univalence_spot_check,
    verify_corollary,
    verify_lemma,
    verify_theorem,
)

__version__ = "0.1.0"
