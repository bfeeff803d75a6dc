"""Light-cone gate lattice, integer partitions, and the map between them.

The brick-wall circuit grows one gate per layer: layer j holds gates
(j, 1) ... (j, j), and gate (j, p) straddles the wire pair
(2p - j - 1, 2p - j), so consecutive layers interleave.  A set of gates is
realizable as "everything to the past of some cut" exactly when it is closed
under predecessors, i.e. downward closed in the lattice order.

Grouping gates into left-leaning diagonals (constant p, increasing j) turns
each such set into an integer partition: part d counts the gates on diagonal
d, and downward closure is precisely the non-increasing part condition.  The
partition {N, N-1, ..., 1} is the full N-layer cone, the equal-time slicing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True, order=True)
class GateSite:
    """A gate's slot in the cone: layer >= 1, position 1..layer within it."""

    layer: int
    pos: int

    def __post_init__(self) -> None:
        if self.layer < 1 or not 1 <= self.pos <= self.layer:
            raise ValueError(f"invalid gate site ({self.layer}, {self.pos})")


@dataclass(frozen=True)
class Partition:
    """Non-increasing positive parts; prints as {4,3,3}."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError("parts must be positive integers")
        if any(x < y for x, y in zip(parts, parts[1:])):
            raise ValueError(f"parts must be non-increasing, got {parts}")

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __str__(self) -> str:
        return "{" + ",".join(str(p) for p in self.parts) + "}"


@dataclass(frozen=True)
class Foliation:
    """A causally closed gate set, its source partition, and its wire support."""

    partition: Partition
    gates: tuple[GateSite, ...]
    touched_wires: frozenset[int]

    @property
    def max_layer(self) -> int:
        return max(s.layer for s in self.gates)

    @property
    def leaf_wires(self) -> frozenset[int]:
        """Full cone width at the deepest layer reached, idle wires included."""
        top = self.max_layer
        return frozenset(range(1 - top, top + 1))


def gate_wires(site: GateSite) -> tuple[int, int]:
    """Adjacent wire pair under a gate: (2 pos - layer - 1, 2 pos - layer)."""
    left = 2 * site.pos - site.layer - 1
    return left, left + 1


def rest_frame_partition(num_layers: int) -> Partition:
    if num_layers < 1:
        raise ValueError(f"need at least one layer, got {num_layers}")
    return Partition(tuple(range(num_layers, 0, -1)))


def rest_frame_gates(num_layers: int) -> Foliation:
    """Every gate down to the given depth: the equal-time slicing {N,...,1}."""
    return foliation_from_partition(rest_frame_partition(num_layers))


def partitions(total: int) -> list[Partition]:
    """All partitions of `total` in descending lexicographic order ({M} first)."""
    if total < 1:
        raise ValueError(f"total must be positive, got {total}")
    out: list[Partition] = []

    def rec(remaining: int, cap: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for part in range(min(cap, remaining), 0, -1):
            rec(remaining - part, part, prefix + (part,))

    rec(total, total, ())
    return out


def count_partitions(total: int) -> int:
    """Partition count by the bounded-largest-part recurrence.

    Shares no code with the generator above, so the two can check each other.
    """
    if total < 1:
        raise ValueError(f"total must be positive, got {total}")
    ways = [1] + [0] * total
    for part in range(1, total + 1):
        for n in range(part, total + 1):
            ways[n] += ways[n - part]
    return ways[total]


def foliation_from_partition(partition: Partition) -> Foliation:
    """Lay the parts along diagonals from the cone vertex.

    Part d (1-based) contributes the gates (d, d), (d+1, d), ...,
    (d + c_d - 1, d).  Non-increasing parts guarantee every predecessor is
    included, so the result always passes validate_causal.
    """
    gates: list[GateSite] = []
    for d, c in enumerate(partition.parts, start=1):
        gates.extend(GateSite(layer=d + i, pos=d) for i in range(c))
    gates.sort(key=lambda s: (s.layer, s.pos))
    touched = frozenset(w for s in gates for w in gate_wires(s))
    return Foliation(partition=partition, gates=tuple(gates), touched_wires=touched)


def validate_causal(gates: Iterable[GateSite]) -> bool:
    """True iff every in-cone predecessor of every gate is present.

    Gate (j, p) shares a wire with (j-1, p-1) and (j-1, p); whichever of
    those exist must come first.  The empty set passes vacuously.
    """
    have = set(gates)
    for g in have:
        if g.layer == 1:
            continue
        for pos in (g.pos - 1, g.pos):
            if 1 <= pos <= g.layer - 1 and GateSite(g.layer - 1, pos) not in have:
                return False
    return True
