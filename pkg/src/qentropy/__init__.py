"""Generalized entropies, q-deformed algebra and executable entropy axioms."""

from .audit import (
    AuditSuiteConfig,
    check_chain_rule,
    check_composability,
    check_expandability,
    check_info_additivity,
    check_maximality,
    check_normalization,
    parameter_grid,
    reproduce_counterexample,
    run_audit,
    search_violations,
)
from .conditional import (
    ChainRuleEvaluation,
    chain_rule,
    conditional_aczel_daroczy,
    conditional_corrected,
    conditional_entropy,
    conditional_jizba_korbel,
    conditional_nath,
    conditional_shannon,
)
from .core import (
    AuditReport,
    Distribution,
    DomainError,
    EmptyInput,
    EntropyError,
    EntropyParams,
    InvalidParameter,
    JointDistribution,
    LengthMismatch,
    NegativeProbability,
    NotNormalized,
    RaggedMatrix,
    direct_product,
    escort,
    expand,
    make_distribution,
    make_joint,
    product_joint,
    uniform,
)
from .entropies import (
    EntropyFamily,
    aczel_daroczy,
    corrected,
    entropy,
    g_class,
    info_content,
    jizba_korbel,
    nath,
    shannon,
    tsallis,
)
from .qalgebra import (
    DeformationMap,
    MapKind,
    f_h_inv,
    f_h_map,
    f_inv,
    f_map,
    g_h_inv,
    g_h_map,
    h_inv,
    h_map,
    q_add,
    quasilinear_mean,
)

__version__ = "0.1.0"
