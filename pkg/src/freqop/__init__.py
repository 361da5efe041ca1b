"""Frequency operators on product ensembles, with verification tooling."""

from .frequency import (
    FrequencyReport,
    FrequencySpec,
    apply_frequency,
    cauchy_gap,
    cauchy_gap_grid,
    cross_orthogonality,
    deviation_norm,
)
from .hilbert import (
    HermitianOperator,
    Projector,
    StateVector,
    TruthValue,
    UnitaryMatrix,
    eig_hermitian,
    evolve,
    inner,
    random_hermitian,
    random_projector,
    random_state,
    random_unitary,
    transition_amplitude,
    truth_value,
)
from .oracle import (
    DenseVector,
    dense_apply_frequency,
    dense_deviation,
    dense_embed,
    dense_frequency_matrix,
    dense_spectrum,
    eigencheck_standard_basis,
    kron_power,
)
from .product import (
    ProductState,
    ProductTerm,
    TailOverlapRule,
    add,
    compress,
    ensemble,
    inner_infinite,
    norm,
    scale,
)
from .sampling import MeasurementRecord, sample_ensemble
from .scenarios import (
    BipartiteState,
    EprReport,
    WignerBranch,
    WignerReport,
    ZeroBranchError,
    branch_probability,
    condition_on,
    epr_check,
    epr_pair,
    subsystem_truth_value,
    wigner_friend_check,
)
from .sequential import (
    SequentialSpec,
    evolved_record_state,
    propagator,
    recorder_state,
    succession_frequency,
    succession_probabilities,
)

__all__ = [
    "BipartiteState",
    "DenseVector",
    "EprReport",
    "FrequencyReport",
    "FrequencySpec",
    "HermitianOperator",
    "MeasurementRecord",
    "ProductState",
    "ProductTerm",
    "Projector",
    "SequentialSpec",
    "StateVector",
    "TailOverlapRule",
    "TruthValue",
    "UnitaryMatrix",
    "WignerBranch",
    "WignerReport",
    "ZeroBranchError",
    "add",
    "apply_frequency",
    "branch_probability",
    "cauchy_gap",
    "cauchy_gap_grid",
    "compress",
    "condition_on",
    "cross_orthogonality",
    "dense_apply_frequency",
    "dense_deviation",
    "dense_embed",
    "dense_frequency_matrix",
    "dense_spectrum",
    "deviation_norm",
    "eig_hermitian",
    "eigencheck_standard_basis",
    "ensemble",
    "epr_check",
    "epr_pair",
    "evolve",
    "evolved_record_state",
    "inner",
    "inner_infinite",
    "kron_power",
    "norm",
    "propagator",
    "random_hermitian",
    "random_projector",
    "random_state",
    "random_unitary",
    "recorder_state",
    "sample_ensemble",
    "scale",
    "subsystem_truth_value",
    "succession_frequency",
    "succession_probabilities",
    "transition_amplitude",
    "truth_value",
    "wigner_friend_check",
]

__version__ = "0.1.0"
