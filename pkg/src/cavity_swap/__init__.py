"""
cavity-swap: entanglement swapping without joint measurement, simulated.

State-vector simulator for a cavity-QED swapping scheme: one resonant
atom-cavity interaction plus a single local measurement.
"""

from cavity_swap.errors import (
    CavitySwapError,
    ConfigError,
    DimensionMismatchError,
    InvalidParamsError,
    LabelCollisionError,
    LabelMismatchError,
    TruncationLeakError,
    UnknownLabelError,
    UnnormalizedInputError,
    ZeroNormError,
)
from cavity_swap.models.enums import Encoding, OutputFormat, SubsystemKind, Variant
from cavity_swap.models.params import GT_MAGIC, GT_SWAP, ProtocolParams
from cavity_swap.qstate import (
    MeasurementOutcome,
    MeasurementSpec,
    StateVector,
    SubsystemSpec,
    SystemLayout,
    apply_local_phase,
    fidelity_against_pure,
    make_state,
    measure,
    tensor,
)
from cavity_swap.dynamics import JCInteraction, jc_hamiltonian_matrix, jc_propagate, jc_propagate_oracle
from cavity_swap.protocol import ProtocolResult, bob_readout, exact_branch_decomposition, prepare_initial, run_swap
from cavity_swap.analysis import (
    fidelity_formula_A,
    fidelity_formula_B,
    fnew_formula,
    pnew_formula,
    sweep,
    timing_budget,
)

__version__ = "0.1.0"
__all__ = [
    "CavitySwapError",
    "ConfigError",
    "DimensionMismatchError",
    "InvalidParamsError",
    "LabelCollisionError",
    "LabelMismatchError",
    "TruncationLeakError",
    "UnknownLabelError",
    "UnnormalizedInputError",
    "ZeroNormError",
    "Encoding",
    "OutputFormat",
    "SubsystemKind",
    "Variant",
    "GT_MAGIC",
    "GT_SWAP",
    "ProtocolParams",
    "MeasurementOutcome",
    "MeasurementSpec",
    "StateVector",
    "SubsystemSpec",
    "SystemLayout",
    "apply_local_phase",
    "fidelity_against_pure",
    "make_state",
    "measure",
    "tensor",
    "JCInteraction",
    "jc_hamiltonian_matrix",
    "jc_propagate",
    "jc_propagate_oracle",
    "ProtocolResult",
    "bob_readout",
    "exact_branch_decomposition",
    "prepare_initial",
    "run_swap",
    "fidelity_formula_A",
    "fidelity_formula_B",
    "fnew_formula",
    "pnew_formula",
    "sweep",
    "timing_budget",
]
