"""Separability certificates and entanglement scans for 1D thermal chains."""

from .errors import (
    BudgetError,
    ChainsepError,
    ConfigError,
    EmptyIntersectionError,
    GeometryError,
)
from .linalg import (
    LocalOperator,
    embed,
    herm_exp,
    herm_fn,
    herm_log,
    identity,
    is_psd,
    min_eig,
    norms,
    op_norm,
    partial_trace,
    partial_transpose,
    trace_norm,
    zero,
)
from .model import (
    Interaction,
    ModelSpec,
    RegionsABC,
    builtin_models,
    hamiltonian,
    k_neighborhood,
    truncated_hamiltonian,
)
from .gibbs import (
    GibbsEnsemble,
    check_partition_ratios,
    correlation,
    entropy,
    factorization_error,
    gibbs,
    marginal,
    marginal_inverse_norm,
    mutual_information,
    mutual_information_of,
    partition_function,
    relative_entropy,
)
from .expansionals import (
    ContractionReport,
    ExpansionalReport,
    contraction_check,
    covering_bound,
    difference_decay,
    estimate_uniform_bound,
    expansional,
    factorial_decay_bound,
    truncated_expansional,
)
from .separability import (
    Certificate,
    CoreDecomposition,
    DecompositionReport,
    SeparableDecomposition,
    VERDICT_ENTANGLED,
    VERDICT_PPT,
    VERDICT_SEPARABLE,
    VERDICT_UNDETERMINED,
    ball_radius,
    certify_marginal,
    certificate_from_json,
    certificate_to_json,
    decompose_truncated_marginal,
    decomposition_from_dict,
    decomposition_to_dict,
    exact_sep_test,
    identity_ball_certificate,
    negativity,
    tail_norm_bound,
    tail_term,
    telescope_verify,
    validate_decomposition,
)

__version__ = "0.1.0"
