"""Command line driver: files in, files out, exit codes."""

import json

import pytest

from reebforge.cli import main

THETA_GRAPH = {
    "vertices": [{"id": 0, "angle": "0/1 of 2pi"},
                 {"id": 1, "angle": "1/2 of 2pi"}],
    "edges": [{"ends": [0, 1], "sides": [1, -1]},
              {"ends": [0, 1], "sides": [1, -1]},
              {"ends": [0, 1], "sides": [-1, 1]}],
}


def write_json(path, obj):
    path.write_text(json.dumps(obj, indent=2) + "\n")


def spec_file(tmp_path, mults=(2, 2, 2), mode="circle", name="spec.json",
              **extra):
    data = {"mode": mode, "vertices": len(mults), "multiplicities":
            list(mults), "dimension": 2}
    if mode == "line":
        data["vertices"] = len(mults) + 1
    data.update(extra)
    path = tmp_path / name
    write_json(path, data)
    return path


def synthesized(tmp_path, **kw):
    spec = spec_file(tmp_path, **kw)
    out = tmp_path / "out"
    code = main(["synthesize", "--spec", str(spec), "--out", str(out)])
    assert code == 0
    return out


class TestSynthesize:
    def test_writes_artifacts(self, tmp_path, capsys):
        out = synthesized(tmp_path)
        for name in ("model.json", "arrangement.json", "certificate.json"):
            assert (out / name).exists()
        stdout = capsys.readouterr().out
        assert "degree: 10" in stdout
        cert = json.loads((out / "certificate.json").read_text())
        assert cert["degree"] == 10
        assert cert["isomorphic_to_spec"] is True
        assert cert["euler"]["genus"] == 4

    def test_torus(self, tmp_path):
        out = synthesized(tmp_path, mults=())
        cert = json.loads((out / "certificate.json").read_text())
        assert cert["degree"] == 4
        assert cert["euler"]["genus"] == 1
        assert "fibers" not in cert

    def test_line(self, tmp_path):
        out = synthesized(tmp_path, mults=(1, 2, 1), mode="line")
        model = json.loads((out / "model.json").read_text())
        assert model["spec"]["mode"] == "line"

    def test_invalid_spec_is_exit_two(self, tmp_path, capsys):
        spec = spec_file(tmp_path, mults=(1, 2, 1))
        code = main(["synthesize", "--spec", str(spec), "--out",
                     str(tmp_path / "o")])
        assert code == 2
        assert "invalid spec" in capsys.readouterr().err

    def test_unknown_field_is_exit_two(self, tmp_path):
        spec = spec_file(tmp_path, flavor="ripple")
        assert main(["synthesize", "--spec", str(spec), "--out",
                     str(tmp_path / "o")]) == 2

    def test_missing_file_is_exit_two(self, tmp_path):
        assert main(["synthesize", "--spec", str(tmp_path / "nope.json"),
                     "--out", str(tmp_path / "o")]) == 2

    def test_garbage_json_is_exit_two(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{]")
        assert main(["synthesize", "--spec", str(bad), "--out",
                     str(tmp_path / "o")]) == 2

    def test_impossible_packing_is_exit_three(self, tmp_path, capsys):
        spec = spec_file(tmp_path, mults=(4, 4, 4),
                         annulus_halfwidth="9/10")
        code = main(["synthesize", "--spec", str(spec), "--out",
                     str(tmp_path / "o")])
        assert code == 3
        assert "packing failed" in capsys.readouterr().err


class TestVerify:
    def test_clean_model_verifies(self, tmp_path):
        out = synthesized(tmp_path)
        code = main(["verify", "--model", str(out / "model.json"),
                     "--out", str(out), "--points", "2000"])
        assert code == 0
        cert = json.loads((out / "certificate.json").read_text())
        assert cert["verified"] is True
        assert cert["membership"]["mismatches"] == []
        assert cert["oracle"]["resolution"] == [512, 256]

    def test_tampered_multiplicity(self, tmp_path, capsys):
        out = synthesized(tmp_path)
        path = out / "model.json"
        data = json.loads(path.read_text())
        data["spec"]["multiplicities"][0] = 3
        write_json(path, data)
        code = main(["verify", "--model", str(path), "--points", "2000"])
        assert code == 4
        assert "certification failed" in capsys.readouterr().err

    def test_tampered_circle_position(self, tmp_path):
        out = synthesized(tmp_path)
        path = out / "model.json"
        data = json.loads(path.read_text())
        circle = data["arrangement"]["circles"][0]
        circle["d"] = "1/100"
        write_json(path, data)
        assert main(["verify", "--model", str(path),
                     "--points", "2000"]) == 4

    def test_tampered_factor_scale(self, tmp_path):
        out = synthesized(tmp_path)
        path = out / "model.json"
        data = json.loads(path.read_text())
        for stage in data["polynomial"]["stages"]:
            for factor in stage["factors"]:
                if factor["kind"] == "circle":
                    factor["scale"] = "3/2"
        write_json(path, data)
        assert main(["verify", "--model", str(path),
                     "--points", "2000"]) == 4


class TestPlot:
    def test_from_spec(self, tmp_path):
        spec = spec_file(tmp_path)
        out = tmp_path / "plots"
        assert main(["plot", "--spec", str(spec), "--out", str(out)]) == 0
        svg = (out / "plot.svg").read_text()
        assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")

    def test_from_model_and_arrangement(self, tmp_path):
        out = synthesized(tmp_path)
        assert main(["plot", "--model", str(out / "model.json"),
                     "--out", str(tmp_path / "p1")]) == 0
        assert main(["plot", "--arrangement",
                     str(out / "arrangement.json"),
                     "--out", str(tmp_path / "p2")]) == 0
        a = (tmp_path / "p1" / "plot.svg").read_text()
        b = (tmp_path / "p2" / "plot.svg").read_text()
        assert a == b

    def test_sources_are_exclusive(self, tmp_path):
        out = synthesized(tmp_path)
        code = main(["plot", "--model", str(out / "model.json"),
                     "--spec", str(tmp_path / "spec.json"),
                     "--out", str(tmp_path / "p")])
        assert code == 2


class TestExport:
    def test_json(self, tmp_path):
        out = synthesized(tmp_path, mults=())
        assert main(["export", "--model", str(out / "model.json"),
                     "--out", str(out)]) == 0
        data = json.loads((out / "expanded.json").read_text())
        assert data["ordering"] == "grlex"
        assert len(data["monomials"]) == 7

    def test_text(self, tmp_path):
        out = synthesized(tmp_path, mults=())
        assert main(["export", "--model", str(out / "model.json"),
                     "--out", str(out), "--format", "text"]) == 0
        text = (out / "expanded.txt").read_text()
        assert text.startswith("P(x1,x2,x3) = ")


class TestExtend:
    def test_writes_inequality(self, tmp_path):
        out = synthesized(tmp_path)
        assert main(["extend", "--model", str(out / "model.json"),
                     "--out", str(out)]) == 0
        data = json.loads((out / "extension.json").read_text())
        assert data["inequality"]["relation"] == ">= 0"
        assert data["no_singular_points_claimed"] is True


class TestCheckGraph:
    def test_good_graph(self, tmp_path, capsys):
        path = tmp_path / "graph.json"
        write_json(path, THETA_GRAPH)
        code = main(["check-graph", "--graph", str(path),
                     "--out", str(tmp_path)])
        assert code == 0
        assert capsys.readouterr().out.count(": pass") == 3
        report = json.loads((tmp_path / "graph_report.json").read_text())
        assert report["ok"] is True

    def test_degree_two_vertex_fails(self, tmp_path, capsys):
        bad = {"vertices": [{"id": 0, "angle": "0/1 of 2pi"},
                            {"id": 1, "angle": "1/2 of 2pi"}],
               "edges": [{"ends": [0, 1], "sides": [1, -1]},
                         {"ends": [0, 1], "sides": [-1, 1]}]}
        path = tmp_path / "graph.json"
        write_json(path, bad)
        assert main(["check-graph", "--graph", str(path)]) == 1
        assert "FAIL" in capsys.readouterr().out


class TestDeterminism:
    def test_byte_identical_artifacts(self, tmp_path):
        first = synthesized(tmp_path)
        spec = tmp_path / "spec.json"
        again = tmp_path / "again"
        assert main(["synthesize", "--spec", str(spec), "--out",
                     str(again)]) == 0
        for name in ("model.json", "arrangement.json", "certificate.json"):
            assert (first / name).read_bytes() == (again / name).read_bytes()


class TestPrecisionPlumbing:
    def test_environment_default(self, tmp_path, monkeypatch):
        monkeypatch.setenv("REEBFORGE_PRECISION", "256")
        out = synthesized(tmp_path)
        cert = json.loads((out / "certificate.json").read_text())
        assert cert["precision_bits"] == 256

    def test_flag_beats_spec_file(self, tmp_path):
        spec = spec_file(tmp_path, precision_bits=192)
        out = tmp_path / "out"
        assert main(["synthesize", "--spec", str(spec), "--out", str(out),
                     "--precision-bits", "320"]) == 0
        cert = json.loads((out / "certificate.json").read_text())
        assert cert["precision_bits"] == 320

    def test_spec_file_beats_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv("REEBFORGE_PRECISION", "256")
        spec = spec_file(tmp_path, precision_bits=192)
        out = tmp_path / "out"
        assert main(["synthesize", "--spec", str(spec),
                     "--out", str(out)]) == 0
        cert = json.loads((out / "certificate.json").read_text())
        assert cert["precision_bits"] == 192
