"""Entanglement of two-branch bipartite states with nonorthogonal components."""

__version__ = "0.1.0"

from .bipartite import (
    OverlapState,
    canonical_matrix,
    concurrence_closed_form,
    concurrence_oracle,
    entanglement_entropy,
    normalization_constant,
)
from .classification import (
    ClassificationReport,
    PhaseParameters,
    Reason,
    Verdict,
    is_disentangled,
    is_mes,
    k_prime,
    mes_residual,
    phase_parameters,
)
from .coherent import (
    CoherentPairState,
    antisymmetric_mes,
    as_overlap_state,
    coherent_overlap,
    parity_transform,
    quarter_phase_family,
    quartet,
    quartet_normalization,
    same_phase_family,
    theorem2_check,
)
from .errors import (
    ConstraintViolated,
    CutoffOverflow,
    DegenerateState,
    EntlabError,
    InvalidState,
    InvalidVariant,
    LinearlyDependent,
    NuZero,
    ZeroState,
)
from .fock import (
    bell_like_limit,
    fidelity,
    fock_coefficients,
    limit_convergence_scan,
    numeric_concurrence,
    truncation_cutoff,
)
