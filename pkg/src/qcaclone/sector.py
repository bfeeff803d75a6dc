"""Exact evolution in the one-excitation sector of a qubit chain.

Two-qubit gates of the form diag(1, V, 1), with V unitary on the span of
|01> and |10>, conserve the number of excited qubits.  Seeding the chain with
a single equatorial qubit (|0> + e^{i phi} |1>)/sqrt(2) therefore keeps the
full state in the form

    (|vacuum> + e^{i phi} sum_k alpha_k |k...one excitation on wire k...>) / sqrt(2)

for the whole evolution.  The vacuum amplitude never changes and the input
phase phi factors out of every local fidelity, so neither is stored: a state
here is just the map from wire position to excitation amplitude alpha_k.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

# Tolerance for matrices supplied from outside (optimizer output included).
UNITARITY_TOL = 1e-9

# Angles that reproduce the optimal economical 1->2 cloning gate below.
UPCC_ANGLES = (math.pi / 4, 0.0, 0.0, 0.0)


def unitarity_defect(matrix: np.ndarray) -> float:
    """Largest entrywise deviation of V^dagger V from the identity."""
    m = np.asarray(matrix, dtype=complex)
    return float(np.abs(m.conj().T @ m - np.eye(m.shape[0])).max())


@dataclass(frozen=True)
class GateUnitary:
    """The 2x2 unitary V on the {|01>, |10>} block of a two-qubit gate.

    V fixes the gate completely: the full four-level matrix is diag(1, V, 1)
    and is only materialized by the statevector cross-check code.  `params`
    optionally records the four angles the matrix was generated from.
    """

    matrix: np.ndarray
    params: tuple[float, float, float, float] | None = None

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        defect = unitarity_defect(m)
        if defect > UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary (defect {defect:.3e})")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        if self.params is not None:
            object.__setattr__(
                self, "params", tuple(float(p) for p in self.params)
            )

    @property
    def v11(self) -> complex:
        return complex(self.matrix[0, 0])

    @property
    def v12(self) -> complex:
        return complex(self.matrix[0, 1])

    @property
    def v21(self) -> complex:
        return complex(self.matrix[1, 0])

    @property
    def v22(self) -> complex:
        return complex(self.matrix[1, 1])


@dataclass(frozen=True)
class SectorState:
    """Excitation amplitudes keyed by wire position; absent wires hold 0."""

    amplitudes: dict[int, complex]
    input_wire: int

    def __post_init__(self) -> None:
        total = sum(abs(a) ** 2 for a in self.amplitudes.values())
        if abs(total - 1.0) > UNITARITY_TOL:
            raise ValueError(
                f"amplitudes are not normalized (sum |alpha|^2 = {total!r})"
            )

    def amplitude(self, wire: int) -> complex:
        return self.amplitudes.get(wire, 0j)

    def wires(self) -> frozenset[int]:
        """Wires that have ever carried amplitude (zeros included)."""
        return frozenset(self.amplitudes)

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self.amplitudes.values()))


def init_state(input_wire: int) -> SectorState:
    """Fresh chain: unit amplitude on the input wire, blanks everywhere else."""
    w = int(input_wire)
    return SectorState(amplitudes={w: 1.0 + 0j}, input_wire=w)


def apply_gate(state: SectorState, gate: GateUnitary, left_wire: int) -> SectorState:
    """Apply diag(1, V, 1) to the wire pair (left_wire, left_wire + 1).

    In the one-excitation sector the gate mixes exactly the two amplitudes
    under it:

        alpha'_j     = v22 alpha_j + v21 alpha_{j+1}
        alpha'_{j+1} = v12 alpha_j + v11 alpha_{j+1}

    with j = left_wire.  Wires the state has never seen enter as 0.
    """
    j = int(left_wire)
    aj = state.amplitude(j)
    ak = state.amplitude(j + 1)
    new = dict(state.amplitudes)
    new[j] = gate.v22 * aj + gate.v21 * ak
    new[j + 1] = gate.v12 * aj + gate.v11 * ak
    return SectorState(amplitudes=new, input_wire=state.input_wire)


def unitary_from_params(theta: float, a: float, b: float, d: float) -> GateUnitary:
    """Build V from four angles; the map covers all of U(2).

        V = e^{id} [[ e^{ia} cos(theta),  e^{ib} sin(theta)],
                    [-e^{-ib} sin(theta), e^{-ia} cos(theta)]]

    (pi/4, 0, 0, 0) gives the optimal 1->2 cloning gate, (0, 0, 0, 0) the
    identity.  The global phase d is physical here: paths through different
    numbers of gates interfere, so e^{id} shifts their relative phases.
    """
    ct, st = math.cos(theta), math.sin(theta)
    ph = cmath.exp(1j * d)
    m = np.array(
        [
            [ph * cmath.exp(1j * a) * ct, ph * cmath.exp(1j * b) * st],
            [-ph * cmath.exp(-1j * b) * st, ph * cmath.exp(-1j * a) * ct],
        ]
    )
    return GateUnitary(matrix=m, params=(theta, a, b, d))


def upcc_gate() -> GateUnitary:
    """The optimal economical 1->2 phase-covariant cloner, V = [[1,1],[-1,1]]/sqrt(2)."""
    r = math.sqrt(0.5)
    m = np.array([[r, r], [-r, r]], dtype=complex)
    return GateUnitary(matrix=m, params=UPCC_ANGLES)


def local_fidelity(state: SectorState, wire: int) -> float:
    """Overlap of the reduced state on `wire` with the input qubit.

    Tracing out everything else gives F_k = (1 + Re alpha_k)/2, independent
    of the input phase.  A blank wire scores exactly 1/2, as does a purely
    imaginary amplitude.
    """
    return 0.5 * (1.0 + state.amplitude(wire).real)


def average_fidelity(state: SectorState, wires: Iterable[int]) -> float:
    """Arithmetic mean of the local fidelity over a clone set."""
    ws = sorted({int(w) for w in wires})
    if not ws:
        raise ValueError("average_fidelity needs at least one wire")
    return sum(local_fidelity(state, w) for w in ws) / len(ws)
