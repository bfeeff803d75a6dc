"""Run foliations against gates and extract clone fidelities.

Everything public here goes through the dict-based sector state, which is
plenty for single circuits and fidelity maps.  The optimizer instead uses
compile_foliation + compiled_fidelity, which lower a foliation onto dense
arrays for the jitted kernels; the two routes compute the same numbers and
the tests hold them against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .geometry import (
    Foliation,
    Partition,
    foliation_from_partition,
    gate_wires,
    rest_frame_gates,
)
from .sector import (
    GateUnitary,
    SectorState,
    apply_gate,
    average_fidelity,
    init_state,
)

CloneSet = Literal["touched", "leaf"]


@dataclass(frozen=True)
class FidelityMap:
    """Local fidelity of every wire after each layer of the equal-time cone.

    values[j] is the row after layer j (row 0 is the input row), over the
    wires 1-N ... N listed in `wires`.  Wires outside the causal cone of the
    input hold exactly 0.5.
    """

    num_layers: int
    wires: tuple[int, ...]
    values: np.ndarray


def clone_wires(foliation: Foliation, clone_set: CloneSet = "touched") -> frozenset[int]:
    """The wires a fidelity average runs over.

    "touched" counts every wire some gate acted on; "leaf" widens to the full
    cone width at the deepest layer, idle wires scoring 1/2 each.
    """
    if clone_set == "touched":
        return foliation.touched_wires
    if clone_set == "leaf":
        return foliation.leaf_wires
    raise ValueError(f"unknown clone set {clone_set!r}")


def run_circuit(foliation: Foliation, gate: GateUnitary) -> SectorState:
    """Evolve the seeded chain through the foliation's gates in layer order.

    Gates within a layer commute (disjoint wire pairs), so any causally
    consistent order gives the same state.
    """
    state = init_state(0)
    for site in foliation.gates:
        left, _ = gate_wires(site)
        state = apply_gate(state, gate, left)
    return state


def foliation_fidelity(
    partition: Partition | Foliation,
    gate: GateUnitary,
    clone_set: CloneSet = "touched",
) -> float:
    """Average clone fidelity of one foliation with every gate set to `gate`."""
    fol = partition if isinstance(partition, Foliation) else foliation_from_partition(partition)
    state = run_circuit(fol, gate)
    return average_fidelity(state, clone_wires(fol, clone_set))


def run_two_gate(num_layers: int, gate_a: GateUnitary, gate_b: GateUnitary) -> SectorState:
    """Equal-time cone with gate A on odd layers and gate B on even layers."""
    fol = rest_frame_gates(num_layers)
    state = init_state(0)
    for site in fol.gates:
        left, _ = gate_wires(site)
        state = apply_gate(state, gate_a if site.layer % 2 == 1 else gate_b, left)
    return state


def fidelity_map(num_layers: int, gate: GateUnitary) -> FidelityMap:
    """Layer-by-layer fidelity profile of the equal-time cone.

    Row j is recorded after all gates of layer j; entries on wires that no
    gate has reached are exactly 1/2 (blank amplitude), which makes the
    causal cone visible with no tolerance at all.
    """
    if num_layers < 1:
        raise ValueError(f"need at least one layer, got {num_layers}")
    wires = tuple(range(1 - num_layers, num_layers + 1))
    values = np.empty((num_layers + 1, 2 * num_layers))
    state = init_state(0)
    values[0] = [0.5 * (1.0 + state.amplitude(w).real) for w in wires]
    for layer in range(1, num_layers + 1):
        for pos in range(1, layer + 1):
            state = apply_gate(state, gate, 2 * pos - layer - 1)
        values[layer] = [0.5 * (1.0 + state.amplitude(w).real) for w in wires]
    values.flags.writeable = False
    return FidelityMap(num_layers=num_layers, wires=wires, values=values)


# ---------------------------------------------------------------------------
# Lowering for the jitted kernels.

@dataclass(frozen=True)
class CompiledFoliation:
    """A foliation's gate list as dense array indices.

    Wire w maps to index w - (1 - max_layer), so every wire the circuit can
    reach fits in [0, num_wires).  `parity` is 1 on odd layers (gate A) and
    0 on even layers (gate B) for two-gate runs; single-gate kernels treat
    both the same.
    """

    left: np.ndarray
    parity: np.ndarray
    clone: np.ndarray
    num_wires: int
    input_index: int

    def __post_init__(self) -> None:
        for name in ("left", "parity", "clone"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=np.int64)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)


def compile_foliation(foliation: Foliation, clone_set: CloneSet = "touched") -> CompiledFoliation:
    top = foliation.max_layer
    base = 1 - top
    left = np.array([gate_wires(s)[0] - base for s in foliation.gates], dtype=np.int64)
    parity = np.array([s.layer & 1 for s in foliation.gates], dtype=np.int64)
    clone = np.array(
        sorted(w - base for w in clone_wires(foliation, clone_set)), dtype=np.int64
    )
    return CompiledFoliation(
        left=left, parity=parity, clone=clone, num_wires=2 * top, input_index=-base
    )


def compiled_fidelity(compiled: CompiledFoliation, params: Sequence[float]) -> float:
    """Kernel-route fidelity at the given angles (4 for one gate, 8 for two)."""
    from ._kernels import sector_fidelity

    x = np.ascontiguousarray(params, dtype=np.float64)
    if x.shape[0] not in (4, 8):
        raise ValueError(f"expected 4 or 8 angles, got {x.shape[0]}")
    return float(
        sector_fidelity(
            x,
            compiled.left,
            compiled.parity,
            compiled.clone,
            compiled.num_wires,
            compiled.input_index,
        )
    )
