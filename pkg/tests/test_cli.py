import json
from fractions import Fraction as F

import pytest

from eulercert.cli import run

SQUARE = {
    "dimension": 2,
    "terms": [
        {"coeff": 1, "polytope": {"vertices": [["0", "0"], ["1", "0"], ["0", "1"], ["1", "1"]]}}
    ],
}
RECT = {
    "dimension": 2,
    "terms": [
        {"coeff": 1, "polytope": {"vertices": [["0", "2"], ["1", "2"], ["0", "3"], ["1", "3"]]}}
    ],
}
DOUBLE = {
    "dimension": 2,
    "terms": [
        {"coeff": 2, "polytope": {"vertices": [["0", "0"], ["1", "0"], ["0", "1"], ["1", "1"]]}}
    ],
}


@pytest.fixture
def square(tmp_path):
    path = tmp_path / "square.json"
    path.write_text(json.dumps(SQUARE))
    return str(path)


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_integrate(square, capsys):
    assert run(["integrate", square]) == 0
    assert capsys.readouterr().out == "1\n"


def test_oracle_integrate(square, capsys):
    assert run(["oracle-integrate", square]) == 0
    assert capsys.readouterr().out == "1\n"


def test_pushforward(square, tmp_path, capsys):
    mp = _write(tmp_path, "map.json", {"matrix": [["1", "0"]], "offset": ["0"]})
    assert run(["pushforward", square, "--map", mp]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == {
        "dimension": 1,
        "terms": [{"coeff": 1, "polytope": {"vertices": [["0"], ["1"]]}}],
    }


def test_chi_of_flag_sheaf(tmp_path, capsys):
    poly = _write(tmp_path, "seg.json", {"vertices": [["0"], ["4"]]})
    assert run(["flag", poly, "--center", "0", "--steps", "4"]) == 0
    flag_out = json.loads(capsys.readouterr().out)
    assert flag_out["eta"] == "1.000000000000"
    sheaf = _write(tmp_path, "sheaf.json", flag_out["sheaf"])
    assert run(["chi", sheaf]) == 0
    chi = json.loads(capsys.readouterr().out)
    assert chi == {
        "dimension": 1,
        "terms": [{"coeff": 1, "polytope": {"vertices": [["0"], ["4"]]}}],
    }


def test_bound_output(tmp_path, capsys):
    left = _write(
        tmp_path,
        "left.json",
        {
            "dimension": 1,
            "summands": [
                {"outer": {"vertices": [["0"], ["1"]]}, "inner": None, "shift": 0, "multiplicity": 1},
                {
                    "outer": {"vertices": [["0"], ["2"]]},
                    "inner": {"vertices": [["0"], ["1"]]},
                    "shift": 0,
                    "multiplicity": 1,
                },
            ],
        },
    )
    right = _write(
        tmp_path,
        "right.json",
        {
            "dimension": 1,
            "summands": [
                {"outer": {"vertices": [["0"], ["2"]]}, "inner": None, "shift": 0, "multiplicity": 1}
            ],
        },
    )
    assert run(["bound", left, right]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "1.000000000000"
    assert out[1] == "pairs 0-0"
    assert out[2] == "unmatched_f 1"
    assert out[3] == "unmatched_g "


def test_link_verify_round_trip(square, tmp_path, capsys):
    rect = _write(tmp_path, "rect.json", RECT)
    cert = str(tmp_path / "cert.json")
    assert run(["link", square, rect, "--epsilon", "0.25", "--out", cert]) == 0
    assert run(["verify", cert]) == 0
    assert capsys.readouterr().out.strip().endswith("PASS")


def test_link_integral_mismatch_exits_2(square, tmp_path, capsys):
    double = _write(tmp_path, "double.json", DOUBLE)
    assert run(["link", square, double, "--epsilon", "0.25"]) == 2
    err = capsys.readouterr().err
    assert "integral mismatch: 1 != 2" in err


def test_verify_fails_on_tampered_bound(square, tmp_path, capsys):
    rect = _write(tmp_path, "rect.json", RECT)
    cert_path = str(tmp_path / "cert.json")
    assert run(["link", square, rect, "--epsilon", "0.25", "--out", cert_path]) == 0
    blob = json.loads(open(cert_path).read())
    blob["steps"][0]["bound"] = "0.000000000001"
    tampered = _write(tmp_path, "tampered.json", blob)
    assert run(["verify", tampered]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "bound understated at step 0" in out


def test_concentrate_default_origin(square, capsys):
    assert run(["concentrate", square, "--epsilon", "0.5"]) == 0
    cert = json.loads(capsys.readouterr().out)
    assert cert["target"]["terms"][0]["polytope"]["vertices"] == [["0", "0"]]
    assert len(cert["steps"]) == 3


def test_probe_csv(square, capsys):
    assert run(["probe", square, "--metric", "l1", "--schedule", "0.5,0.25,0.125"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "epsilon,dc_bound,delta"
    assert lines[1] == "0.500000000000,0.500000000000,1.000000000000"
    assert lines[3] == "0.125000000000,0.125000000000,1.000000000000"


def test_probe_gap_metric(square, capsys):
    assert run(["probe", square, "--metric", "gap", "--schedule", "0.5,0.25"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert all(line.endswith(",0.000000000000") for line in lines[1:])


def test_malformed_json_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["integrate", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "bad.json" in err and "malformed JSON" in err


def test_missing_file_exit_2(capsys):
    assert run(["integrate", "/nonexistent/f.json"]) == 2
    assert "no such file" in capsys.readouterr().err


def test_schema_error_names_path(tmp_path, capsys):
    bad = _write(tmp_path, "bad.json", {"dimension": 2})
    assert run(["integrate", bad]) == 2
    assert "bad.json" in capsys.readouterr().err


def test_norm_flag_changes_bounds(tmp_path, capsys):
    seg = _write(tmp_path, "seg.json", {"vertices": [["0", "0"], ["1", "1"]]})
    assert run(["flag", seg, "--center", "0,0", "--steps", "1"]) == 0
    l2 = json.loads(capsys.readouterr().out)["eta"]
    assert run(["--norm", "l1", "flag", seg, "--center", "0,0", "--steps", "1"]) == 0
    l1 = json.loads(capsys.readouterr().out)["eta"]
    assert l1 == "2.000000000000"
    assert l2.startswith("1.4142135623")


def test_config_file_with_flag_override(square, tmp_path, capsys):
    cfg = _write(tmp_path, "cfg.json", {"norm": "l1", "dimension": 2})
    assert run(["--config", cfg, "integrate", square]) == 0
    capsys.readouterr()
    cfg3 = _write(tmp_path, "cfg3.json", {"dimension": 3, "equality_mode": "exact"})
    assert run(["--config", cfg3, "integrate", square]) == 2
    assert "exact equality mode" in capsys.readouterr().err


def test_dimension_validation(square, capsys):
    assert run(["--dimension", "1", "integrate", square]) == 2
    assert "dimension" in capsys.readouterr().err


def test_deterministic_output(square, tmp_path, capsys):
    rect = _write(tmp_path, "rect.json", RECT)
    assert run(["link", square, rect, "--epsilon", "0.125"]) == 0
    first = capsys.readouterr().out
    assert run(["link", square, rect, "--epsilon", "0.125"]) == 0
    assert capsys.readouterr().out == first
