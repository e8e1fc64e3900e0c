"""Command-line interface: exit codes, golden outputs, file formats."""

import json
from pathlib import Path

import pytest

from kolmosphere.cli import main

ROOT = Path(__file__).resolve().parent.parent
FIXDIR = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"

FIELD = str(FIXDIR / "demo3d_field.json")
FORM = str(FIXDIR / "demo3d_form.json")
SEED = str(FIXDIR / "rotation_seed.json")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def golden(name):
    return (GOLDEN / name).read_text()


def test_check_json_golden(capsys):
    code, out, err = run(
        capsys, "check", "--field", FIELD, "--format", "json"
    )
    assert code == 0
    assert err == ""
    assert out == golden("check_demo3d.json")
    assert json.loads(out)["kolmogorov"] is True


def test_check_text_golden(capsys):
    code, out, _ = run(capsys, "check", "--field", FIELD)
    assert code == 0
    assert out == golden("check_demo3d.txt")


def test_check_exit_one_for_non_members(capsys, tmp_path):
    bad = tmp_path / "rot.json"
    bad.write_text(json.dumps({"dim": 2, "components": ["x2", "-x1"]}))
    code, out, _ = run(capsys, "check", "--field", str(bad), "--format", "json")
    assert code == 1
    assert json.loads(out)["kolmogorov"] is False


def test_cofactor_golden(capsys):
    code, out, _ = run(
        capsys,
        "cofactor",
        "--field", FIELD,
        "--surface", "x1^2 + x2^2 + x3^2 - 1",
        "--format", "json",
    )
    assert code == 0
    assert out == golden("cofactor_sphere.json")


def test_cofactor_exit_one_when_not_invariant(capsys):
    code, out, _ = run(
        capsys, "cofactor", "--field", FIELD, "--surface", "x1 + x2",
        "--format", "json",
    )
    assert code == 1
    assert json.loads(out)["invariant"] is False


def test_darboux_golden(capsys):
    code, out, _ = run(
        capsys,
        "darboux",
        "--form", FORM,
        "--g", "1 - x1^2 - x2^2 - x3^2",
        "--format", "json",
    )
    assert code == 0
    assert out == golden("darboux_demo3d.json")
    payload = json.loads(out)
    assert payload["invariant"] is True
    assert len(payload["integrals"]) == 2


def test_syzygy_golden(capsys):
    code, out, _ = run(
        capsys, "syzygy-fi", "--form", FORM, "--format", "json"
    )
    assert code == 0
    assert out == golden("syzygy_demo3d.json")


def test_classify_hyperplane_golden_negative(capsys):
    code, out, _ = run(
        capsys,
        "classify-hyperplane",
        "--form", FORM,
        "--a0", "1",
        "--a", "1,0,1",
        "--format", "json",
    )
    assert code == 1
    assert out == golden("classify_offset.json")


def test_classify_hyperplane_positive(capsys):
    code, out, _ = run(
        capsys,
        "classify-hyperplane",
        "--form", FORM,
        "--a0", "0",
        "--a", "1,0,-1",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["invariant"] is True
    assert payload["case"] == "through_origin"


def test_construct_complete_golden(capsys):
    code, out, _ = run(
        capsys,
        "construct", "complete",
        "--n", "2", "--m", "4", "--atilde", "x1",
        "--format", "json",
    )
    assert code == 0
    assert out == golden("construct_complete.json")


def test_construct_linear_fi_conserves_the_plane(capsys):
    code, out, _ = run(
        capsys,
        "construct", "linear-fi",
        "--a0", "5", "--a", "1,2,3", "--seed", SEED,
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["first_integral"] == "x1 + 2*x2 + 3*x3 + 5"


def test_construct_cubic_round_trip(capsys):
    from kolmosphere import parse

    code, out, _ = run(
        capsys, "construct", "cubic", "--form", FORM, "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    with open(FIELD) as fh:
        source = json.load(fh)["components"]
    assert [parse(c, 3) for c in payload["components"]] == [
        parse(c, 3) for c in source
    ]


def test_hamiltonian_field_verdicts(capsys, tmp_path):
    rot = tmp_path / "rot.json"
    rot.write_text(json.dumps({"dim": 2, "components": ["x2", "-x1"]}))
    code, out, _ = run(
        capsys, "hamiltonian", "--field", str(rot), "--format", "json"
    )
    assert code == 0
    assert json.loads(out)["is_hamiltonian"] is True

    rad = tmp_path / "rad.json"
    rad.write_text(json.dumps({"dim": 2, "components": ["x1", "2*x2"]}))
    code, out, _ = run(
        capsys, "hamiltonian", "--field", str(rad), "--format", "json"
    )
    assert code == 1
    assert json.loads(out)["is_hamiltonian"] is False


def test_hamiltonian_constraint_space_golden(capsys):
    code, out, _ = run(
        capsys, "hamiltonian", "--constraint-space", "--n", "2",
        "--format", "json",
    )
    assert code == 0
    assert out == golden("constraint_n2.json")


def test_hamiltonian_constraint_space_reports_the_planar_family(capsys):
    code, out, _ = run(
        capsys, "hamiltonian", "--constraint-space", "--n", "1",
        "--format", "json",
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["dimension"] == 1
    assert payload["basis"] == [["1", "-1", "-2"]]


def test_integrate_dump_writes_csv(capsys, tmp_path):
    dump = tmp_path / "traj.csv"
    code, out, _ = run(
        capsys,
        "integrate",
        "--field", FIELD,
        "--x0", "0.5,0.5,0.5",
        "--h", "0.001",
        "--steps", "100",
        "--watch", "x1^2 + x2^2 + x3^2 - 1",
        "--dump", str(dump),
        "--format", "json",
    )
    assert code == 0
    lines = dump.read_text().strip().splitlines()
    assert lines[0] == "t,x1,x2,x3"
    assert len(lines) == 102
    payload = json.loads(out)
    assert payload["t_final"] == pytest.approx(0.1)
    assert len(payload["x_final"]) == 3
    assert payload["watch"][0]["poly"] == "x1^2 + x2^2 + x3^2 - 1"


def test_certify_roundtrip_suite(capsys):
    code, out, _ = run(
        capsys,
        "certify", "--suite", "roundtrip", "--seed", "3",
        "--instances", "20", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert payload["suite"] == "roundtrip"


def test_certify_determinant_suite(capsys):
    code, out, _ = run(
        capsys, "certify", "--suite", "cor44", "--instances", "4",
        "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_certify_constraint_suite_reports_the_planar_family(capsys):
    code, out, _ = run(capsys, "certify", "--suite", "thm13", "--format", "json")
    assert code == 1
    payload = json.loads(out)
    assert payload["passed"] is False
    assert "n=1" in payload["failures"][0]


def test_exit_code_two_for_unreadable_files(capsys):
    code, out, err = run(capsys, "check", "--field", "/definitely/not/here.json")
    assert code == 2
    assert "error:" in err


def test_exit_code_two_for_parse_errors(capsys):
    code, _, err = run(
        capsys, "cofactor", "--field", FIELD, "--surface", "x1 + "
    )
    assert code == 2
    assert "position" in err


def test_exit_code_two_for_dimension_mismatch(capsys):
    code, _, err = run(
        capsys, "check", "--field", FIELD, "--dim", "4"
    )
    assert code == 2
    assert "disagrees" in err


def test_construct_complete_rejects_wrong_degree(capsys):
    code, _, err = run(
        capsys,
        "construct", "complete",
        "--n", "2", "--m", "5", "--atilde", "x1",
    )
    assert code == 2
    assert "degree" in err
