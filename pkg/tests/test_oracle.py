"""Sampled region oracle, graph smoothing, membership spot checks."""

import dataclasses
from fractions import Fraction

import pytest

from reebforge import (brute_oracle_reeb, build_arrangement, membership_check,
                       results_match, smooth_degree_two, sweep_reeb,
                       synthesize, validated)
from reebforge.oracle import _radical_inverse
from reebforge.sweep import ReebEdge, ReebGraphResult, ReebVertex
from conftest import HANDLE_CORPUS, LINE_CORPUS, NAMED_CORPUS, circle_spec, \
    line_spec


def tampered(model, grow=3):
    """Scale every removed disk in the polynomial without moving the
    arrangement, so the factor product and the geometry disagree."""
    stage0 = model.polynomial.stages[0]
    factors = tuple(
        dataclasses.replace(f, scale=f.scale * grow)
        if f.kind == "circle" and f.scale is not None else f
        for f in stage0.factors)
    poly = dataclasses.replace(
        model.polynomial,
        stages=(dataclasses.replace(stage0, factors=factors),)
        + model.polynomial.stages[1:])
    return dataclasses.replace(model, polynomial=poly)


class TestBruteOracle:
    @pytest.mark.parametrize("name,spec",
                             NAMED_CORPUS + HANDLE_CORPUS + LINE_CORPUS)
    def test_agrees_with_sweep(self, name, spec, corpus_models):
        model = corpus_models[name]
        swept = smooth_degree_two(
            sweep_reeb(model.arrangement, model.spec.dimension))
        sampled = brute_oracle_reeb(model.arrangement, 512, 256)
        assert results_match(swept, sampled)

    def test_sampled_graph_reports_no_angles(self):
        arr = build_arrangement(validated(circle_spec((2, 2, 1))))
        sampled = brute_oracle_reeb(arr, 512, 256)
        assert len(sampled.vertices) == 3
        assert sorted(v.degree for v in sampled.vertices) == [3, 3, 4]


class TestSmoothing:
    def test_keeps_true_saddles(self):
        arr = build_arrangement(validated(circle_spec((2, 2, 2))))
        res = sweep_reeb(arr, 2)
        assert smooth_degree_two(res) is res

    def test_drops_handle_only_vertices(self):
        v = validated(circle_spec((1, 1, 2), dimension=5,
                                  handles=(((2, 1), (1, 1)),)))
        res = sweep_reeb(build_arrangement(v), 5)
        assert [x.degree for x in res.vertices] == [3, 3, 2]
        sm = smooth_degree_two(res)
        assert [x.degree for x in sm.vertices] == [3, 3]
        assert len(sm.edges) == len(res.edges) - 1

    def test_concatenated_edge_keeps_fiber_words(self):
        v = validated(circle_spec((1, 1, 2), dimension=5,
                                  handles=(((2, 1), (1, 1)),)))
        sm = smooth_degree_two(sweep_reeb(build_arrangement(v), 5))
        assert "S^1 x S^3 # S^2 x S^2" in {e.fiber for e in sm.edges}

    def test_all_vertices_smoothable_gives_plain_circle(self):
        v = validated(circle_spec((1, 1, 1), dimension=3,
                                  handles=(((1, 1), (1,)), ((2, 1), (1,)),
                                           ((3, 1), (1,)))))
        sm = smooth_degree_two(sweep_reeb(build_arrangement(v), 3))
        assert sm.no_vertex_circle
        assert sm.vertices == ()

    def test_line_folds_are_not_smoothable(self):
        loop = ReebGraphResult(
            no_vertex_circle=False,
            vertices=(ReebVertex(left_channels=1, right_channels=1,
                                 angle=None, abscissa=Fraction(0)),),
            edges=(ReebEdge(channel=(1, 1), source=0, target=0,
                            fiber="S^1"),),
            mode="line")
        with pytest.raises(ValueError):
            smooth_degree_two(loop)


class TestResultsMatch:
    def test_reflexive(self):
        arr = build_arrangement(validated(circle_spec((2, 1, 2))))
        res = sweep_reeb(arr, 2)
        assert results_match(res, res)

    def test_accepts_rotated_listing(self):
        a = sweep_reeb(build_arrangement(validated(circle_spec((2, 2, 1)))), 2)
        b = sweep_reeb(build_arrangement(validated(circle_spec((2, 1, 2)))), 2)
        assert results_match(a, b)

    def test_accepts_reflected_listing(self):
        a = sweep_reeb(build_arrangement(
            validated(circle_spec((1, 2, 3, 2)))), 2)
        b = sweep_reeb(build_arrangement(
            validated(circle_spec((2, 3, 2, 1)))), 2)
        assert results_match(a, b)

    def test_detects_different_multiplicities(self):
        a = sweep_reeb(build_arrangement(validated(circle_spec((2, 2, 2)))), 2)
        b = sweep_reeb(build_arrangement(validated(circle_spec((2, 2, 1)))), 2)
        assert not results_match(a, b)

    def test_detects_vertex_count(self):
        a = sweep_reeb(build_arrangement(validated(circle_spec((2, 2, 2)))), 2)
        b = sweep_reeb(build_arrangement(
            validated(circle_spec((2, 2, 2, 2)))), 2)
        assert not results_match(a, b)

    def test_detects_mode(self):
        a = sweep_reeb(build_arrangement(validated(circle_spec((2, 2, 2)))), 2)
        b = sweep_reeb(build_arrangement(validated(line_spec((1, 2, 1)))), 2)
        assert not results_match(a, b)

    def test_detects_missing_circle(self):
        torus = sweep_reeb(build_arrangement(validated(
            circle_spec(()), )), 2)
        a = sweep_reeb(build_arrangement(validated(circle_spec((2, 2, 2)))), 2)
        assert not results_match(torus, a)


class TestMembership:
    @pytest.mark.parametrize("name,spec",
                             NAMED_CORPUS + HANDLE_CORPUS + LINE_CORPUS)
    def test_corpus_clean(self, name, spec, corpus_models):
        report = membership_check(corpus_models[name], count=4000)
        assert report.ok
        assert report.mismatches == ()
        assert 0 < report.inside < report.count

    def test_tampered_polynomial_caught(self):
        model = synthesize(validated(circle_spec((2, 2, 2))))
        report = membership_check(tampered(model), count=4000)
        assert not report.ok
        assert len(report.mismatches) > 100
        sample = report.mismatches[0]
        assert set(sample) == {"point", "sign_positive", "inside_region"}
        assert sample["sign_positive"] != sample["inside_region"]

    def test_report_json_shape(self):
        model = synthesize(validated(circle_spec((2, 2, 1))))
        blob = membership_check(model, count=2000).to_json()
        assert blob["points"] == 2000
        assert blob["mismatches"] == []
        assert set(blob) == {"points", "inside", "boundary_band",
                             "suspects_resolved_exactly", "band",
                             "mismatches"}

    def test_deterministic_for_a_seed(self):
        model = synthesize(validated(circle_spec((2, 1, 2))))
        a = membership_check(model, count=2000, seed=5).to_json()
        b = membership_check(model, count=2000, seed=5).to_json()
        assert a == b

    def test_seed_shifts_the_sample(self):
        model = synthesize(validated(circle_spec((2, 1, 2))))
        a = membership_check(model, count=2000, seed=0)
        b = membership_check(model, count=2000, seed=1)
        assert a.ok and b.ok
        assert a.inside != b.inside


class TestRadicalInverse:
    def test_base_two_bit_reversal(self):
        got = [_radical_inverse(i, 2) for i in range(1, 8)]
        assert got == [Fraction(1, 2), Fraction(1, 4), Fraction(3, 4),
                       Fraction(1, 8), Fraction(5, 8), Fraction(3, 8),
                       Fraction(7, 8)]

    def test_base_three(self):
        assert _radical_inverse(1, 3) == Fraction(1, 3)
        assert _radical_inverse(2, 3) == Fraction(2, 3)
        assert _radical_inverse(3, 3) == Fraction(1, 9)
        assert _radical_inverse(4, 3) == Fraction(4, 9)

    def test_values_stay_in_the_unit_interval(self):
        for i in range(1, 200):
            x = _radical_inverse(i, 2)
            assert 0 < x < 1
