"""Brute-force statevector cross-check for the sector simulation.

Everything in this module works on the full 2^n amplitude vector with no
excitation-number shortcut, so it can confirm (or refute) the sector route
from first principles: build diag(1, V, 1) explicitly, apply it pair by
pair, partial-trace single wires, and test phase covariance as an operator
identity.  n is capped well below where the dense vector gets expensive;
the point is trust, not scale.

Qubit 0 is the most significant bit of the basis index, so amplitudes
reshape to (2,) * n with axis i belonging to qubit i.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .sector import UNITARITY_TOL, GateUnitary

MAX_QUBITS = 14

# Operator-identity tolerance for the covariance commutator test.
COVARIANCE_TOL = 1e-10


@dataclass(frozen=True)
class FullState:
    """Dense amplitudes over all 2^num_qubits basis states."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if not 1 <= self.num_qubits <= MAX_QUBITS:
            raise ValueError(
                f"num_qubits must be in [1, {MAX_QUBITS}], got {self.num_qubits}"
            )
        amps = np.ascontiguousarray(self.amplitudes, dtype=complex)
        if amps.shape != (2**self.num_qubits,):
            raise ValueError(
                f"expected {2**self.num_qubits} amplitudes, got shape {amps.shape}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > UNITARITY_TOL:
            raise ValueError(f"state is not normalized (norm {norm!r})")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)


def full_gate_matrix(gate: GateUnitary) -> np.ndarray:
    """The four-level matrix diag(1, V, 1) on the pair basis |00>,|01>,|10>,|11>."""
    m = np.eye(4, dtype=complex)
    m[1:3, 1:3] = gate.matrix
    return m


def prepare_input(num_qubits: int, input_qubit: int, phi: float) -> FullState:
    """All wires in |0> except the input, which carries (|0> + e^{i phi}|1>)/sqrt(2)."""
    if not 0 <= input_qubit < num_qubits:
        raise ValueError(
            f"input_qubit {input_qubit} out of range for {num_qubits} qubits"
        )
    amps = np.zeros(2**num_qubits, dtype=complex)
    r = math.sqrt(0.5)
    amps[0] = r
    amps[1 << (num_qubits - 1 - input_qubit)] = r * cmath.exp(1j * phi)
    return FullState(num_qubits=num_qubits, amplitudes=amps)


def _apply_pair(amps: np.ndarray, num_qubits: int, matrix: np.ndarray, qa: int, qb: int) -> np.ndarray:
    """Apply a two-qubit matrix to qubits (qa, qb); qa indexes the matrix's
    more significant pair bit."""
    psi = amps.reshape((2,) * num_qubits)
    psi = np.moveaxis(psi, (qa, qb), (0, 1)).reshape(4, -1)
    psi = matrix @ psi
    psi = np.moveaxis(psi.reshape((2, 2) + (2,) * (num_qubits - 2)), (0, 1), (qa, qb))
    return np.ascontiguousarray(psi.reshape(2**num_qubits))


def simulate_full(
    qubit_pairs: Sequence[tuple[int, int]],
    gate: GateUnitary,
    num_qubits: int,
    phi: float,
    input_qubit: int = 0,
) -> FullState:
    """Apply diag(1, V, 1) to each qubit pair in order, from the seeded input.

    Pairs are (left, right) qubit indices; an empty list returns the input
    state untouched.
    """
    if num_qubits > MAX_QUBITS:
        raise ValueError(f"num_qubits {num_qubits} exceeds the cap {MAX_QUBITS}")
    state = prepare_input(num_qubits, input_qubit, phi)
    if not qubit_pairs:
        return state
    matrix = full_gate_matrix(gate)
    amps = np.array(state.amplitudes)
    for qa, qb in qubit_pairs:
        if qa == qb or not (0 <= qa < num_qubits and 0 <= qb < num_qubits):
            raise ValueError(f"bad qubit pair ({qa}, {qb}) for {num_qubits} qubits")
        amps = _apply_pair(amps, num_qubits, matrix, qa, qb)
    return FullState(num_qubits=num_qubits, amplitudes=amps)


def reduced_density(state: FullState, qubit: int) -> np.ndarray:
    """Partial trace down to one qubit's 2x2 density matrix."""
    if not 0 <= qubit < state.num_qubits:
        raise ValueError(f"qubit {qubit} out of range")
    psi = state.amplitudes.reshape((2,) * state.num_qubits)
    psi = np.moveaxis(psi, qubit, 0).reshape(2, -1)
    return psi @ psi.conj().T


def reduced_fidelity_full(state: FullState, qubit: int, phi: float) -> float:
    """Overlap of one wire's reduced state with the equatorial input qubit."""
    rho = reduced_density(state, qubit)
    v = np.array([1.0, cmath.exp(1j * phi)]) * math.sqrt(0.5)
    return float(np.real(v.conj() @ rho @ v))


def excitation_leakage(state: FullState) -> float:
    """Total probability outside the vacuum + one-excitation sector."""
    n = state.num_qubits
    weights = np.array([bin(i).count("1") for i in range(2**n)])
    return float(np.sum(np.abs(state.amplitudes[weights >= 2]) ** 2))


def check_phase_covariance(
    matrix: np.ndarray,
    chi_samples: Iterable[float] | None = None,
) -> bool:
    """Does the 4x4 gate commute with equal phase rotations on both wires?

    Tests [G, P_chi x P_chi] = 0 with P_chi = diag(1, e^{i chi}) over a grid
    of chi values (32 points if not supplied).  Gates of the form
    diag(1, V, 1) pass; anything mixing excitation sectors fails.
    """
    g = np.asarray(matrix, dtype=complex)
    if g.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {g.shape}")
    if chi_samples is None:
        chi_samples = np.linspace(0.0, 2.0 * math.pi, 32, endpoint=False)
    for chi in chi_samples:
        pp = np.diag([1.0, cmath.exp(1j * chi), cmath.exp(1j * chi), cmath.exp(2j * chi)])
        if float(np.abs(g @ pp - pp @ g).max()) > COVARIANCE_TOL:
            return False
    return True


# ---------------------------------------------------------------------------
# Glue between a foliation on chain wires and qubit indices here.

def foliation_qubit_layout(foliation) -> tuple[dict[int, int], list[tuple[int, int]]]:
    """Map touched wires (sorted ascending) onto qubits 0..n-1.

    Returns the wire -> qubit map and the foliation's gate list lowered to
    qubit pairs, ready for simulate_full.
    """
    from .geometry import gate_wires

    wires = sorted(foliation.touched_wires)
    qubit_of = {w: i for i, w in enumerate(wires)}
    pairs = [
        (qubit_of[gate_wires(s)[0]], qubit_of[gate_wires(s)[1]])
        for s in foliation.gates
    ]
    return qubit_of, pairs


def crosscheck_foliation(partition, gate: GateUnitary, phi: float) -> float:
    """Largest |sector - statevector| fidelity gap over a foliation's wires.

    Runs the same circuit down both routes and compares every touched wire's
    local fidelity.  Values above ~1e-12 mean one of the routes is wrong.
    """
    from .evaluate import run_circuit
    from .geometry import Foliation, foliation_from_partition
    from .sector import local_fidelity

    fol = partition if isinstance(partition, Foliation) else foliation_from_partition(partition)
    qubit_of, pairs = foliation_qubit_layout(fol)
    if len(qubit_of) > MAX_QUBITS:
        raise ValueError(
            f"foliation touches {len(qubit_of)} wires, above the {MAX_QUBITS}-qubit cap"
        )
    full = simulate_full(pairs, gate, len(qubit_of), phi, input_qubit=qubit_of[0])
    sector_state = run_circuit(fol, gate)
    return max(
        abs(local_fidelity(sector_state, w) - reduced_fidelity_full(full, q, phi))
        for w, q in qubit_of.items()
    )
