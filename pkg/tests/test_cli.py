import io
import json
from pathlib import Path

import pytest

from factories import (
    bad_triangle,
    hirzebruch_pair,
    rp4_template,
    s4_template,
    square,
)
from toricorigami import OrigamiTemplate, pair
from toricorigami.cli import main
from toricorigami.document import document_from_template

GALLERY = Path(__file__).resolve().parent.parent / "gallery"


def write_doc(tmp_path, T, name="t.json"):
    path = tmp_path / name
    path.write_text(json.dumps(document_from_template(T)), encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


class TestGalleryFiles:
    @pytest.mark.parametrize(
        "name",
        [
            "s4", "rp4", "hirzebruch_pair", "hexagon_3cycle",
            "torus_2segments", "sphere_fold_2segments", "unit_square",
            "trapezoid_chain",
        ],
    )
    def test_gallery_validates_or_reports(self, capsys, name):
        code, report = run(capsys, "validate", str(GALLERY / f"{name}.json"))
        assert code == 0 and report["valid"] is True


class TestValidateCommand:
    def test_valid_template(self, capsys, tmp_path):
        code, report = run(capsys, "validate", write_doc(tmp_path, s4_template(2)))
        assert code == 0
        assert report["valid"] and report["connected"]

    def test_invalid_template_exits_2(self, capsys, tmp_path):
        T = OrigamiTemplate((bad_triangle(),))
        code, report = run(capsys, "validate", write_doc(tmp_path, T))
        assert code == 2
        assert report["valid"] is False
        assert report["delzant_failures"][0]["polytope"] == 0

    def test_adjacency_reported(self, capsys, tmp_path):
        sq = square()
        T = OrigamiTemplate(
            (sq, sq), (pair((0, 2), (1, 2)), pair((0, 3), (1, 3)))
        )
        code, report = run(capsys, "validate", write_doc(tmp_path, T))
        assert code == 2 and report["adjacency_failures"]


class TestOrientCommand:
    def test_s4(self, capsys, tmp_path):
        code, report = run(capsys, "orient", write_doc(tmp_path, s4_template(2)))
        assert code == 0 and report["orientation"] == [1, -1]

    def test_rp4_witness(self, capsys, tmp_path):
        code, report = run(capsys, "orient", write_doc(tmp_path, rp4_template(2)))
        assert code == 2
        assert report["orientable"] is False
        assert report["witness"] == {"single": 0}

    def test_three_cycle_witness(self, capsys):
        code, report = run(capsys, "orient", str(GALLERY / "hexagon_3cycle.json"))
        assert code == 2
        assert len(report["witness"]["odd_cycle"]) % 2 == 1


class TestComputeCommands:
    def test_quantize_with_points(self, capsys, tmp_path):
        path = write_doc(tmp_path, s4_template(2))
        code, report = run(capsys, "quantize", path, "--points")
        assert code == 0
        assert report["virtual_dimension"] == 0
        assert {"point": [0, 0], "multiplicity": 0} in report["points"]

    def test_dh(self, capsys, tmp_path):
        path = write_doc(tmp_path, hirzebruch_pair())
        code, report = run(capsys, "dh", path, "--point", "5/2,1/4")
        assert code == 0
        assert report["density"] == -1 and report["generic"] is True
        assert report["point"] == ["5/2", "1/4"]

    def test_volume(self, capsys, tmp_path):
        path = write_doc(tmp_path, hirzebruch_pair())
        code, report = run(capsys, "volume", path)
        assert code == 0 and report["signed_volume"] == "-1"

    def test_classify(self, capsys):
        code, report = run(capsys, "classify", str(GALLERY / "torus_2segments.json"))
        assert code == 0
        assert report["family"] == "torus"
        assert report["fixed_points"] == 0
        assert report["fold_components"] == 2

    def test_classify_wrong_dimension_exits_2(self, capsys, tmp_path):
        code, report = run(capsys, "classify", write_doc(tmp_path, s4_template()))
        assert code == 2 and report["error"]["kind"] == "DimensionError"

    def test_cones(self, capsys, tmp_path):
        path = write_doc(tmp_path, s4_template(2))
        code, report = run(
            capsys, "cones", path, "--samples", "60", "--seed", "11"
        )
        assert code == 0
        assert report["success"] and report["agreements"] == 60
        assert report["v"] == [1, 2]

    def test_cones_explicit_vector(self, capsys, tmp_path):
        path = write_doc(tmp_path, hirzebruch_pair())
        code, report = run(capsys, "cones", path, "--v", "3,1", "--samples", "40")
        assert code == 0 and report["v"] == [3, 1]

    def test_cohomology(self, capsys, tmp_path):
        path = write_doc(tmp_path, s4_template(2))
        code, report = run(capsys, "cohomology", path, "--max-degree", "8")
        assert code == 0
        assert report["coefficients"] == [1, 0, 2, 0, 4, 0, 6, 0, 8]

    def test_cohomology_precondition_exits_2(self, capsys, tmp_path):
        path = write_doc(tmp_path, rp4_template(2))
        code, report = run(capsys, "cohomology", path)
        assert code == 2 and report["error"]["kind"] == "PreconditionError"

    def test_quantize_nonorientable_exits_2(self, capsys, tmp_path):
        path = write_doc(tmp_path, rp4_template(2))
        code, report = run(capsys, "quantize", path)
        assert code == 2 and report["error"]["kind"] == "NonorientableError"

    def test_invalid_template_never_exits_0(self, capsys, tmp_path):
        T = OrigamiTemplate((bad_triangle(),))
        path = write_doc(tmp_path, T)
        for argv in (
            ["quantize", path], ["volume", path], ["orient", path],
            ["dh", path, "--point", "0,0"],
        ):
            code, report = run(capsys, *argv)
            assert code == 2
            assert report["error"]["kind"] == "ValidationError"


class TestRenderCommand:
    def test_writes_svg(self, capsys, tmp_path):
        path = write_doc(tmp_path, s4_template(2))
        out = tmp_path / "fig.svg"
        code, report = run(capsys, "render", path, "--out", str(out))
        assert code == 0
        text = out.read_text()
        assert text.startswith("<?xml") and "<svg" in text
        assert report["bytes"] == len(text.encode())

    def test_lattice_markers(self, capsys, tmp_path):
        path = write_doc(tmp_path, hirzebruch_pair())
        out = tmp_path / "fig.svg"
        code, _ = run(capsys, "render", path, "--out", str(out), "--lattice")
        assert code == 0
        text = out.read_text()
        # (2,1) and (3,0) carry multiplicity -1: hollow circles
        assert text.count('fill="#ffffff" stroke="#000000"') == 2

    def test_dimension_1_exits_2(self, capsys, tmp_path):
        path = str(GALLERY / "torus_2segments.json")
        code, report = run(capsys, "render", path, "--out", str(tmp_path / "x.svg"))
        assert code == 2 and report["error"]["kind"] == "DimensionError"


class TestDeterminism:
    def test_byte_identical_reports(self, capsys, tmp_path):
        path = write_doc(tmp_path, hirzebruch_pair())
        main(["cones", path, "--samples", "50", "--seed", "9"])
        first = capsys.readouterr().out
        main(["cones", path, "--samples", "50", "--seed", "9"])
        second = capsys.readouterr().out
        assert first == second

    def test_byte_identical_svg(self, capsys, tmp_path):
        path = write_doc(tmp_path, s4_template(2))
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        assert main(["render", path, "--out", str(a)]) == 0
        assert main(["render", path, "--out", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()


class TestExitCodes:
    def test_missing_file_is_parse_error(self, capsys):
        code, report = run(capsys, "validate", "/no/such/file.json")
        assert code == 1 and report["error"]["kind"] == "parse"

    def test_malformed_json(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        code, report = run(capsys, "validate", str(path))
        assert code == 1 and "invalid JSON" in report["error"]["message"]

    def test_schema_error(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"dimension": 2, "polytopes": []}))
        code, report = run(capsys, "validate", str(path))
        assert code == 1

    def test_usage_errors_exit_1(self, capsys, tmp_path):
        assert main(["no-such-command"]) == 1
        capsys.readouterr()
        path = write_doc(tmp_path, s4_template(2))
        assert main(["cohomology", path, "--max-degree", "7"]) == 1
        capsys.readouterr()
        assert main(["dh", path, "--point", "1,fish"]) == 1
        capsys.readouterr()
        assert main(["cones", path, "--samples", "0"]) == 1
        capsys.readouterr()

    def test_stdin_input(self, capsys, monkeypatch):
        doc = document_from_template(s4_template(2))
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(doc)))
        code, report = run(capsys, "validate", "-")
        assert code == 0 and report["valid"]
