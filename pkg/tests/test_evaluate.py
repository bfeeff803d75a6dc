"""Unit checks for circuit evaluation and the fidelity map."""

import dataclasses
import math

import numpy as np
import pytest

from qcaclone import (
    GateUnitary,
    Partition,
    compile_foliation,
    compiled_fidelity,
    fidelity_map,
    foliation_fidelity,
    foliation_from_partition,
    partitions,
    rest_frame_gates,
    run_circuit,
    run_two_gate,
    unitary_from_params,
    upcc_gate,
)
from qcaclone.evaluate import clone_wires

SQRT_HALF = math.sqrt(0.5)
ANCHOR = 0.5 * (1.0 + SQRT_HALF)
IDENTITY = GateUnitary(matrix=np.eye(2))


def random_gate(rng):
    return unitary_from_params(*rng.uniform(0.0, 2.0 * np.pi, 4))


class TestRunCircuit:
    def test_vertex_with_upcc_splits_evenly(self):
        state = run_circuit(foliation_from_partition(Partition((1,))), upcc_gate())
        assert state.amplitude(0) == pytest.approx(SQRT_HALF)
        assert state.amplitude(1) == pytest.approx(SQRT_HALF)

    def test_identity_gate_leaves_the_input(self):
        state = run_circuit(foliation_from_partition(Partition((1,))), IDENTITY)
        assert state.amplitude(0) == 1.0 + 0j

    def test_same_layer_gates_commute(self):
        fol = rest_frame_gates(3)
        swapped = list(fol.gates)
        swapped[1], swapped[2] = swapped[2], swapped[1]  # the two layer-2 bricks
        reordered = dataclasses.replace(fol, gates=tuple(swapped))
        rng = np.random.default_rng(5)
        gate = random_gate(rng)
        a, b = run_circuit(fol, gate), run_circuit(reordered, gate)
        for wire in fol.touched_wires:
            assert a.amplitude(wire) == b.amplitude(wire)

    def test_norm_survives_a_deep_cone(self):
        rng = np.random.default_rng(9)
        state = run_circuit(rest_frame_gates(7), random_gate(rng))
        assert abs(state.norm() - 1.0) < 1e-12


class TestFoliationFidelity:
    def test_single_gate_anchor(self):
        assert foliation_fidelity(Partition((1,)), upcc_gate()) == pytest.approx(ANCHOR)

    def test_identity_evolution_of_a_small_step(self):
        # {2,1} touches wires {-1, 0, 1, 2}; the identity leaves the whole
        # excitation on wire 0, so the mean is (1.0 + 3 * 0.5) / 4.
        assert foliation_fidelity(Partition((2, 1)), IDENTITY) == pytest.approx(0.625)

    def test_accepts_a_prebuilt_foliation(self):
        fol = foliation_from_partition(Partition((2, 1)))
        assert foliation_fidelity(fol, IDENTITY) == pytest.approx(0.625)

    def test_leaf_average_pads_idle_wires_at_one_half(self):
        rng = np.random.default_rng(17)
        part = Partition((2, 2, 2))
        fol = foliation_from_partition(part)
        gate = random_gate(rng)
        touched = foliation_fidelity(part, gate, "touched")
        leaf = foliation_fidelity(part, gate, "leaf")
        n_touched = len(clone_wires(fol, "touched"))
        n_leaf = len(clone_wires(fol, "leaf"))
        padded = (touched * n_touched + 0.5 * (n_leaf - n_touched)) / n_leaf
        assert leaf == pytest.approx(padded, abs=1e-12)

    def test_unknown_clone_set_is_rejected(self):
        with pytest.raises(ValueError, match="clone set"):
            foliation_fidelity(Partition((1,)), upcc_gate(), "everything")


class TestFidelityMap:
    def test_input_row_is_a_delta_on_the_input_wire(self):
        fm = fidelity_map(3, upcc_gate())
        assert fm.wires == tuple(range(-2, 4))
        for wire, value in zip(fm.wires, fm.values[0]):
            assert value == (1.0 if wire == 0 else 0.5)

    def test_first_layer_reaches_the_anchor_on_both_wires(self):
        fm = fidelity_map(1, upcc_gate())
        assert fm.values.shape == (2, 2)
        np.testing.assert_allclose(fm.values[1], [ANCHOR, ANCHOR])

    def test_out_of_cone_entries_are_exactly_one_half(self):
        rng = np.random.default_rng(2)
        fm = fidelity_map(6, random_gate(rng))
        for layer in range(7):
            for wire, value in zip(fm.wires, fm.values[layer]):
                if wire < 1 - layer or wire > layer:
                    assert value == 0.5

    def test_entries_stay_inside_the_unit_interval(self):
        rng = np.random.default_rng(4)
        for _ in range(5):
            fm = fidelity_map(5, random_gate(rng))
            assert np.all(fm.values >= -1e-12) and np.all(fm.values <= 1.0 + 1e-12)

    def test_zero_layers_are_rejected(self):
        with pytest.raises(ValueError, match="layer"):
            fidelity_map(0, upcc_gate())


class TestTwoGateRuns:
    def test_equal_gates_reduce_to_the_single_gate_cone(self):
        rng = np.random.default_rng(31)
        gate = random_gate(rng)
        paired = run_two_gate(3, gate, gate)
        single = run_circuit(rest_frame_gates(3), gate)
        for wire in single.wires():
            assert paired.amplitude(wire) == single.amplitude(wire)

    def test_identity_pair_is_a_no_op(self):
        state = run_two_gate(2, IDENTITY, IDENTITY)
        assert state.amplitude(0) == 1.0 + 0j
        assert abs(state.norm() - 1.0) < 1e-15

    def test_identity_even_layers_leave_the_first_layer_result(self):
        state = run_two_gate(2, upcc_gate(), IDENTITY)
        assert state.amplitude(0) == pytest.approx(SQRT_HALF)
        assert state.amplitude(1) == pytest.approx(SQRT_HALF)
        assert state.amplitude(-1) == 0j
        assert state.amplitude(2) == 0j


class TestCompiledRoute:
    def test_compiled_fidelity_matches_the_reference_path(self):
        rng = np.random.default_rng(23)
        for total in range(1, 9):
            for part in partitions(total):
                angles = rng.uniform(0.0, 2.0 * np.pi, 4)
                compiled = compile_foliation(foliation_from_partition(part))
                fast = compiled_fidelity(compiled, angles)
                slow = foliation_fidelity(part, unitary_from_params(*angles))
                assert fast == pytest.approx(slow, abs=1e-14)

    def test_compiled_leaf_average_matches_too(self):
        rng = np.random.default_rng(29)
        part = Partition((3, 1))
        fol = foliation_from_partition(part)
        angles = rng.uniform(0.0, 2.0 * np.pi, 4)
        fast = compiled_fidelity(compile_foliation(fol, "leaf"), angles)
        slow = foliation_fidelity(part, unitary_from_params(*angles), "leaf")
        assert fast == pytest.approx(slow, abs=1e-14)

    def test_eight_angles_drive_alternating_layers(self):
        rng = np.random.default_rng(37)
        x = rng.uniform(0.0, 2.0 * np.pi, 8)
        compiled = compile_foliation(rest_frame_gates(3))
        fast = compiled_fidelity(compiled, x)
        state = run_two_gate(3, unitary_from_params(*x[:4]), unitary_from_params(*x[4:]))
        slow = sum(
            0.5 * (1.0 + state.amplitude(w).real) for w in range(-2, 4)
        ) / 6.0
        assert fast == pytest.approx(slow, abs=1e-14)

    def test_odd_angle_counts_are_rejected(self):
        compiled = compile_foliation(foliation_from_partition(Partition((1,))))
        with pytest.raises(ValueError, match="4 or 8"):
            compiled_fidelity(compiled, [0.1, 0.2, 0.3])
