"""Spec validation, cyclic canonical forms, JSON forms, embedded graphs."""

import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from reebforge import (EmbeddedEdge, EmbeddedGraphDescription, GraphSpec,
                       SpecValidationError, TurnAngle, canonical_cyclic_form,
                       check_embedded_graph, embedded_graph_from_json,
                       graph_spec_from_json, graph_spec_to_json,
                       path_isomorphic, validate_spec, validated)
from conftest import circle_spec, line_spec, torus_spec


def kinds(spec):
    return [v.kind for v in validate_spec(spec)]


class TestCircleValidation:
    def test_valid_baseline(self):
        assert validate_spec(circle_spec((2, 2, 2))) == []
        assert validate_spec(torus_spec()) == []

    def test_k_below_three(self):
        assert "TooFewVertices" in kinds(circle_spec((1,)))
        assert "TooFewVertices" in kinds(circle_spec((2, 2)))

    def test_count_mismatch(self):
        spec = GraphSpec(mode="circle", vertices=4, multiplicities=(2, 2, 2),
                         dimension=2)
        assert "MultiplicityCountMismatch" in kinds(spec)

    def test_nonpositive_multiplicity(self):
        assert "NonpositiveMultiplicity" in kinds(circle_spec((2, 0, 2)))

    def test_adjacent_unit_pair(self):
        assert "AdjacentUnitPair" in kinds(circle_spec((1, 1, 2)))
        # wraparound pair: edges k and 1
        assert "AdjacentUnitPair" in kinds(circle_spec((1, 2, 1)))

    def test_unit_pair_rescued_by_handles(self):
        spec = circle_spec((1, 1, 2), dimension=5,
                           handles=(((2, 1), (1, 0)),))
        assert validate_spec(spec) == []

    def test_unit_pair_with_empty_handles_rejected(self):
        spec = circle_spec((1, 1, 2), dimension=5,
                           handles=(((3, 1), (1, 0)),))
        assert "AllZeroUnitPair" in kinds(spec)

    def test_handles_need_dimension(self):
        spec = circle_spec((2, 2, 2), handles=(((1, 1), (1,)),))
        assert "DimensionTooSmall" in kinds(spec)

    def test_wrong_sequence_length(self):
        spec = circle_spec((2, 2, 2), dimension=7,
                           handles=(((1, 1), (1, 0)),))
        assert "WrongSequenceLength" in kinds(spec)

    def test_bad_handle_edge(self):
        spec = circle_spec((2, 2, 2), dimension=5,
                           handles=(((1, 3), (1, 0)),))
        assert "BadHandleEdge" in kinds(spec)

    def test_duplicate_handle_edge(self):
        spec = circle_spec((2, 2, 2), dimension=5,
                           handles=(((1, 1), (1, 0)), ((1, 1), (0, 1))))
        assert "DuplicateHandleEdge" in kinds(spec)


class TestLineValidation:
    def test_valid(self):
        assert validate_spec(line_spec((1, 2, 1))) == []
        # single strip: just the two fold vertices of the outer ellipse
        assert validate_spec(line_spec((1,))) == []

    def test_two_unit_strips_rejected(self):
        # the shared interior wall would be a vertex with no event at it
        assert "AdjacentUnitPair" in kinds(line_spec((1, 1)))

    def test_end_multiplicity(self):
        assert "EndMultiplicityNotOne" in kinds(line_spec((2, 2, 1)))
        assert "EndMultiplicityNotOne" in kinds(line_spec((1, 2, 3)))

    def test_interior_unit_pair(self):
        assert "AdjacentUnitPair" in kinds(line_spec((1, 1, 1)))

    def test_no_handles_on_paths(self):
        spec = GraphSpec(mode="line", vertices=4, multiplicities=(1, 2, 1),
                         dimension=5, handles=(((2, 1), (1, 0)),))
        assert "HandlesUnsupported" in kinds(spec)


class TestValidated:
    def test_raises_with_all_violations(self):
        with pytest.raises(SpecValidationError) as info:
            validated(circle_spec((0, -1, 2)))
        assert len(info.value.violations) == 2

    def test_edge_multiplicity_one_based(self):
        v = validated(circle_spec((2, 3, 4)))
        assert [v.edge_multiplicity(j) for j in (1, 2, 3)] == [2, 3, 4]

    def test_handle_sequence_default(self):
        v = validated(circle_spec((2, 2, 2), dimension=5,
                                  handles=(((1, 1), (1, 0)),)))
        assert v.handle_sequence(1, 1) == (1, 0)
        assert v.handle_sequence(2, 1) == (0, 0)
        assert v.stages == 2

    def test_no_handles_no_stages(self):
        assert validated(circle_spec((2, 2, 2))).stages == 0


class TestCanonicalCyclicForm:
    def test_known(self):
        assert canonical_cyclic_form((2, 2, 1)) == (1, 2, 2)
        assert canonical_cyclic_form((3, 1, 2)) == (1, 2, 3)
        assert canonical_cyclic_form(()) == ()

    def test_reflection(self):
        assert canonical_cyclic_form((1, 2, 3)) == canonical_cyclic_form((3, 2, 1))

    @given(st.lists(st.integers(1, 9), min_size=1, max_size=8),
           st.integers(0, 7))
    def test_rotation_invariant(self, seq, shift):
        shift %= len(seq)
        rotated = seq[shift:] + seq[:shift]
        assert canonical_cyclic_form(seq) == canonical_cyclic_form(rotated)

    @given(st.lists(st.integers(1, 9), min_size=1, max_size=8))
    def test_reversal_invariant(self, seq):
        assert canonical_cyclic_form(seq) == canonical_cyclic_form(seq[::-1])

    @given(st.lists(st.integers(1, 9), min_size=1, max_size=8))
    def test_idempotent(self, seq):
        form = canonical_cyclic_form(seq)
        assert canonical_cyclic_form(form) == form


class TestPathIsomorphic:
    class FakeResult:
        def __init__(self, mults, nvc=False):
            self._mults = tuple(mults)
            self.no_vertex_circle = nvc

        def cyclic_multiplicities(self):
            return self._mults

    def test_matches_forward_and_reversed(self):
        v = validated(line_spec((1, 2, 1)))
        assert path_isomorphic(v, self.FakeResult((1, 2, 1, 0)))
        v2 = validated(line_spec((1, 3, 2, 1)))
        assert path_isomorphic(v2, self.FakeResult((1, 2, 3, 1, 0)))

    def test_rejects_wrong_shape(self):
        v = validated(line_spec((1, 2, 1)))
        assert not path_isomorphic(v, self.FakeResult((1, 2, 1)))
        assert not path_isomorphic(v, self.FakeResult((2, 1, 1, 0)))
        assert not path_isomorphic(v, self.FakeResult((), nvc=True))

    def test_circle_spec_rejected(self):
        with pytest.raises(ValueError):
            path_isomorphic(validated(circle_spec((2, 2, 2))),
                            self.FakeResult((2, 2, 2)))


class TestSpecJson:
    def test_round_trip(self):
        spec = circle_spec((2, 1, 3), dimension=5,
                           handles=(((1, 2), (1, 0)),))
        again = graph_spec_from_json(graph_spec_to_json(spec))
        assert again == spec

    def test_parses_text(self):
        text = json.dumps(graph_spec_to_json(line_spec((1, 2, 1))))
        assert graph_spec_from_json(text) == line_spec((1, 2, 1))

    def test_unknown_field(self):
        with pytest.raises(ValueError, match="unknown spec field"):
            graph_spec_from_json({"mode": "circle", "vertices": 0,
                                  "multiplicities": [], "dimension": 2,
                                  "extra": 1})

    def test_missing_field(self):
        with pytest.raises(ValueError, match="required"):
            graph_spec_from_json({"mode": "circle", "vertices": 0,
                                  "multiplicities": []})

    def test_bad_precision(self):
        with pytest.raises(ValueError, match="precision_bits"):
            graph_spec_from_json({"mode": "circle", "vertices": 0,
                                  "multiplicities": [], "dimension": 2,
                                  "precision_bits": 8})

    def test_bool_is_not_an_int(self):
        with pytest.raises(ValueError):
            graph_spec_from_json({"mode": "circle", "vertices": True,
                                  "multiplicities": [], "dimension": 2})

    @given(st.integers(3, 8), st.data())
    def test_round_trip_random(self, k, data):
        mults = data.draw(st.lists(st.integers(1, 5), min_size=k, max_size=k))
        spec = circle_spec(mults)
        assert graph_spec_from_json(graph_spec_to_json(spec)) == spec


def theta_graph():
    return EmbeddedGraphDescription(
        vertex_angles=((1, TurnAngle(0)), (2, TurnAngle(Fraction(1, 2)))),
        edges=(EmbeddedEdge(ends=(1, 2), sides=(1, -1)),
               EmbeddedEdge(ends=(1, 2), sides=(1, -1)),
               EmbeddedEdge(ends=(1, 2), sides=(-1, 1))))


class TestEmbeddedGraph:
    def test_theta_passes(self):
        report = check_embedded_graph(theta_graph())
        assert report.ok
        assert report.degrees_ok and report.angles_injective and report.sides_ok

    def test_degree_two_fails(self):
        desc = EmbeddedGraphDescription(
            vertex_angles=((1, TurnAngle(0)), (2, TurnAngle(Fraction(1, 2)))),
            edges=(EmbeddedEdge(ends=(1, 2), sides=(1, -1)),
                   EmbeddedEdge(ends=(1, 2), sides=(-1, 1))))
        report = check_embedded_graph(desc)
        assert not report.ok
        assert report.bad_degree_vertices == (1, 2)

    def test_angle_collision_fails(self):
        desc = EmbeddedGraphDescription(
            vertex_angles=((1, TurnAngle(0)), (2, TurnAngle(0))),
            edges=(EmbeddedEdge(ends=(1, 2), sides=(1, -1)),
                   EmbeddedEdge(ends=(1, 2), sides=(1, -1)),
                   EmbeddedEdge(ends=(1, 2), sides=(-1, 1))))
        report = check_embedded_graph(desc)
        assert not report.angles_injective
        assert report.angle_collisions == ((1, 2),)

    def test_one_sided_vertex_fails(self):
        desc = EmbeddedGraphDescription(
            vertex_angles=((1, TurnAngle(0)), (2, TurnAngle(Fraction(1, 2)))),
            edges=(EmbeddedEdge(ends=(1, 2), sides=(1, -1)),
                   EmbeddedEdge(ends=(1, 2), sides=(1, -1)),
                   EmbeddedEdge(ends=(1, 2), sides=(1, -1))))
        report = check_embedded_graph(desc)
        assert not report.sides_ok
        assert set(report.one_sided_vertices) == {1, 2}

    def test_json_form(self):
        data = {"vertices": [{"id": 1, "angle": "0/1 of 2pi"},
                             {"id": 2, "angle": "1/2 of 2pi"}],
                "edges": [{"ends": [1, 2], "sides": [1, -1]},
                          {"ends": [1, 2], "sides": [1, -1]},
                          {"ends": [1, 2], "sides": [-1, 1]}]}
        desc = embedded_graph_from_json(data)
        assert check_embedded_graph(desc).ok
        bad = {"vertices": data["vertices"],
               "edges": [{"ends": [1, 2], "sides": [2, -1]}]}
        with pytest.raises(ValueError):
            embedded_graph_from_json(bad)
