"""Economical phase-covariant qubit cloning on a brick-wall chain.

A single equatorial qubit dropped on the vertex wire of a brick-wall circuit
of identical diag(1, V, 1) gates spreads into a train of approximate clones.
This package simulates that spread exactly in the one-excitation sector,
enumerates the circuit cuts (foliations <-> integer partitions) that define
who the clones are, optimizes the gate for any cut, and cross-checks it all
against dense statevectors.
"""

__version__ = "0.1.0"

from .evaluate import (
    CompiledFoliation,
    FidelityMap,
    compile_foliation,
    compiled_fidelity,
    fidelity_map,
    foliation_fidelity,
    run_circuit,
    run_two_gate,
)
from .fullspace import (
    FullState,
    check_phase_covariance,
    crosscheck_foliation,
    full_gate_matrix,
    prepare_input,
    reduced_density,
    reduced_fidelity_full,
    simulate_full,
)
from .geometry import (
    Foliation,
    GateSite,
    Partition,
    count_partitions,
    foliation_from_partition,
    gate_wires,
    partitions,
    rest_frame_gates,
    rest_frame_partition,
    validate_causal,
)
from .optimize import (
    OptConfig,
    OptimizationReport,
    optimize_gate,
    optimize_over_foliations,
    optimize_rest_frame,
    optimize_two_gate,
)
from .sector import (
    UPCC_ANGLES,
    GateUnitary,
    SectorState,
    apply_gate,
    average_fidelity,
    init_state,
    local_fidelity,
    unitarity_defect,
    unitary_from_params,
    upcc_gate,
)

__all__ = [
    "__version__",
    "CompiledFoliation",
    "FidelityMap",
    "Foliation",
    "FullState",
    "GateSite",
    "GateUnitary",
    "OptConfig",
    "OptimizationReport",
    "Partition",
    "SectorState",
    "UPCC_ANGLES",
    "apply_gate",
    "average_fidelity",
    "check_phase_covariance",
    "compile_foliation",
    "compiled_fidelity",
    "count_partitions",
    "crosscheck_foliation",
    "fidelity_map",
    "foliation_fidelity",
    "foliation_from_partition",
    "full_gate_matrix",
    "gate_wires",
    "init_state",
    "local_fidelity",
    "optimize_gate",
    "optimize_over_foliations",
    "optimize_rest_frame",
    "optimize_two_gate",
    "partitions",
    "prepare_input",
    "reduced_density",
    "reduced_fidelity_full",
    "rest_frame_gates",
    "rest_frame_partition",
    "run_circuit",
    "run_two_gate",
    "simulate_full",
    "unitarity_defect",
    "unitary_from_params",
    "upcc_gate",
    "validate_causal",
]
