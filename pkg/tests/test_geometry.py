"""Unit checks for the cone lattice, partitions, and foliations."""

import pytest

from qcaclone import (
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


def all_foliations(total):
    return [foliation_from_partition(p) for p in partitions(total)]


class TestGateSites:
    def test_vertex_gate_sits_on_wires_zero_and_one(self):
        assert gate_wires(GateSite(1, 1)) == (0, 1)

    def test_second_layer_bricks_straddle_the_vertex(self):
        assert gate_wires(GateSite(2, 1)) == (-1, 0)
        assert gate_wires(GateSite(2, 2)) == (1, 2)

    def test_second_layer_bricks_each_share_one_vertex_wire(self):
        vertex = set(gate_wires(GateSite(1, 1)))
        for pos in (1, 2):
            overlap = vertex & set(gate_wires(GateSite(2, pos)))
            assert len(overlap) == 1

    def test_wires_are_always_adjacent(self):
        for layer in range(1, 9):
            for pos in range(1, layer + 1):
                left, right = gate_wires(GateSite(layer, pos))
                assert right == left + 1

    @pytest.mark.parametrize("layer, pos", [(0, 1), (1, 0), (1, 2), (3, 4), (-1, 1)])
    def test_out_of_cone_sites_are_rejected(self, layer, pos):
        with pytest.raises(ValueError, match="gate site"):
            GateSite(layer, pos)


class TestRestFrame:
    @pytest.mark.parametrize("layers, gates", [(1, 1), (3, 6), (7, 28)])
    def test_gate_count_is_triangular(self, layers, gates):
        assert len(rest_frame_gates(layers).gates) == gates

    def test_cone_touches_exactly_two_wires_per_layer(self):
        for layers in range(1, 8):
            touched = rest_frame_gates(layers).touched_wires
            assert touched == frozenset(range(1 - layers, layers + 1))
            assert len(touched) == 2 * layers
            assert 0 in touched

    def test_rest_partition_is_the_staircase(self):
        assert rest_frame_partition(4).parts == (4, 3, 2, 1)

    def test_rest_frame_matches_its_own_partition(self):
        for layers in range(1, 8):
            via_partition = foliation_from_partition(rest_frame_partition(layers))
            assert set(via_partition.gates) == set(rest_frame_gates(layers).gates)

    def test_zero_layers_are_rejected(self):
        with pytest.raises(ValueError, match="layer"):
            rest_frame_gates(0)


class TestPartitions:
    def test_three_has_exactly_three_partitions(self):
        assert [p.parts for p in partitions(3)] == [(3,), (2, 1), (1, 1, 1)]

    def test_six_has_eleven_partitions(self):
        assert len(partitions(6)) == 11

    def test_emission_order_is_descending_lexicographic(self):
        for total in range(1, 13):
            parts = [p.parts for p in partitions(total)]
            assert parts == sorted(parts, reverse=True)
            assert len(parts) == len(set(parts))

    def test_count_matches_enumeration(self):
        for total in range(1, 21):
            assert count_partitions(total) == len(partitions(total))

    def test_count_at_twenty_eight(self):
        assert count_partitions(28) == 3718

    def test_every_partition_sums_to_its_total(self):
        for total in range(1, 13):
            for p in partitions(total):
                assert sum(p.parts) == total == p.total

    def test_non_monotone_parts_are_rejected(self):
        with pytest.raises(ValueError, match="non-increasing"):
            Partition((1, 2))

    def test_non_positive_parts_are_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            Partition((2, 0))

    def test_invalid_totals_are_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            partitions(0)

    def test_string_form_uses_braces(self):
        assert str(Partition((4, 3, 3))) == "{4,3,3}"


class TestFoliations:
    def test_single_gate_foliation_is_the_vertex(self):
        fol = foliation_from_partition(Partition((1,)))
        assert [s for s in fol.gates] == [GateSite(1, 1)]
        assert fol.touched_wires == frozenset({0, 1})

    def test_single_diagonal_of_three(self):
        fol = foliation_from_partition(Partition((3,)))
        assert set(fol.gates) == {GateSite(1, 1), GateSite(2, 1), GateSite(3, 1)}
        assert fol.touched_wires == frozenset({-2, -1, 0, 1})

    def test_gate_count_equals_the_total(self):
        for total in range(1, 11):
            for fol in all_foliations(total):
                assert len(fol.gates) == total

    def test_gates_are_ordered_by_layer(self):
        for fol in all_foliations(8):
            layers = [s.layer for s in fol.gates]
            assert layers == sorted(layers)

    def test_distinct_partitions_give_distinct_gate_sets(self):
        for total in range(1, 13):
            seen = {frozenset(fol.gates) for fol in all_foliations(total)}
            assert len(seen) == count_partitions(total)

    def test_every_foliation_is_causally_closed(self):
        for total in range(1, 16):
            for fol in all_foliations(total):
                assert validate_causal(fol.gates)

    def test_mirror_images_are_also_causally_closed(self):
        for fol in all_foliations(10):
            mirrored = {GateSite(s.layer, s.layer + 1 - s.pos) for s in fol.gates}
            assert validate_causal(mirrored)

    def test_leaf_wires_span_the_widest_layer(self):
        fol = foliation_from_partition(Partition((2, 2, 2)))
        assert fol.max_layer == 4
        assert fol.touched_wires == frozenset({-1, 0, 1, 2, 3})
        assert fol.leaf_wires == frozenset(range(-3, 5))


class TestCausalValidation:
    def test_orphaned_gate_is_rejected(self):
        assert not validate_causal({GateSite(2, 1)})

    def test_full_cone_is_closed(self):
        assert validate_causal(rest_frame_gates(4).gates)

    def test_cone_without_its_vertex_is_not_closed(self):
        gates = set(rest_frame_gates(3).gates) - {GateSite(1, 1)}
        assert not validate_causal(gates)

    def test_cone_without_a_last_layer_gate_stays_closed(self):
        gates = set(rest_frame_gates(3).gates) - {GateSite(3, 2)}
        assert validate_causal(gates)

    def test_empty_set_is_trivially_closed(self):
        assert validate_causal(set())
