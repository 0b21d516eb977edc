import json
import os
import subprocess
import sys

import pytest

from fujita_lab.cli import main
from fujita_lab.errors import SchemaError
from fujita_lab.schema import SUPPORTED_FAMILIES, parse_document, parse_entry
from fujita_lab.verdict import FujitaVerdict

ROW47 = ["-|A_4", "A_5+A_1|-", "D_5|-", "E_6|-"]


def _write(tmp_path, obj, name="in.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj, encoding="utf-8")
    return str(p)


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("doc, value", [
    ({"family": "hirzebruch", "params": {"n": 4}}, 2),
    ({"family": "k3", "params": {"has_special_fibration": False}}, 0),
    ({"family": "enriques", "params": {"fibrations": ROW47}}, 1),
])
def test_classify_examples(tmp_path, capsys, doc, value):
    code, out, _ = _run(capsys, "classify", _write(tmp_path, doc), "--json")
    assert code == 0
    v = FujitaVerdict.from_json(out)
    assert (v.lower, v.upper) == (value, value)


def test_printed_json_round_trips(tmp_path, capsys):
    code, out, _ = _run(capsys, "classify", _write(tmp_path, {"family": "isotrivial-example"}), "--json")
    v = FujitaVerdict.from_json(out)
    assert json.loads(v.to_json()) == json.loads(out)


def test_interval_exit_code(tmp_path, capsys):
    doc = {"family": "double-cover-ppav", "params": {"assume_picard_number_one": False}}
    code, out, _ = _run(capsys, "classify", _write(tmp_path, doc))
    assert code == 3 and "unknown-per-paper" in out


def test_unknown_family(tmp_path, capsys):
    code, _, err = _run(capsys, "classify", _write(tmp_path, {"family": "quartic"}))
    assert code == 1
    assert "family" in err and all(f in err for f in SUPPORTED_FAMILIES)


@pytest.mark.parametrize("doc, field", [
    ({"family": "hirzebruch", "params": {}}, "params.n"),
    ({"family": "hirzebruch", "params": {"n": -2}}, "params.n"),
    ({"family": "hirzebruch", "params": {"n": 1, "m": 2}}, "params.m"),
    ({"family": "k3", "params": {"has_special_fibration": "yes"}}, "params.has_special_fibration"),
    ({"params": {}}, "family"),
    ({"batch": [{"family": "godeaux"}, {"family": "sym-square", "params": {"g": -1}}]}, "batch[1].params.g"),
    ({"family": "enriques", "params": {"fibrations": ["A_9|B_2"]}}, "params"),
    ({"family": "proj-bundle-curve", "params": {"rank": 2, "degree": 1, "hn_slopes": [["1/3", 2]]}}, "params"),
])
def test_diagnostics_name_the_field(doc, field):
    with pytest.raises(SchemaError) as exc:
        parse_document(doc)
    assert exc.value.field == field
    assert field in str(exc.value)


def test_bad_json(tmp_path, capsys):
    code, _, err = _run(capsys, "classify", _write(tmp_path, "{not json"))
    assert code == 1 and "invalid JSON" in err
    code, _, err = _run(capsys, "classify", str(tmp_path / "missing.json"))
    assert code == 1


def test_batch(tmp_path, capsys):
    doc = {"batch": [{"family": "godeaux"}, {"family": "hirzebruch", "params": {"n": 0}},
                     {"family": "proj-bundle-curve", "params": {"rank": 3, "degree": 1}}]}
    code, out, _ = _run(capsys, "classify", _write(tmp_path, doc), "--json", "--workers", "2")
    verdicts = [FujitaVerdict.from_dict(d) for d in json.loads(out)]
    assert [v.interval() for v in verdicts] == [(3, 3), (2, 2), (4, 4)]
    assert verdicts[2].dimension == 3
    assert code == 0


def test_every_family_has_a_description():
    samples = {
        "projective-plane": {}, "hirzebruch": {"n": 1},
        "proj-bundle-curve": {"rank": 2, "degree": 3, "hn_slopes": [["3/2", 2]]},
        "abelian": {"min_ample_selfint": 2}, "bielliptic": {"group": "μ4×Z/2"},
        "k3": {"has_special_fibration": True}, "enriques": {"unnodal": True},
        "elliptic-kod1": {"has_section": True, "all_fibers_irreducible_reduced": True, "chi_O_even": True,
                          "chi_O": 2, "base_genus": 1},
        "isotrivial-example": {}, "product-of-curves": {"g1": 2, "g2": 3}, "godeaux": {},
        "hypersurface": {"d": 5}, "double-cover-ppav": {}, "sym-square": {"g": 2},
        "pencil-blowup": {"d": 3},
        "lattice": {"basis": ["h"], "gram": [[1]], "canonical": [-3], "chi_O": 1},
    }
    assert set(samples) == set(SUPPORTED_FAMILIES)
    for fam, params in samples.items():
        d = parse_entry({"family": fam, "params": params})
        assert d.classify() is not None
        assert parse_entry(d.to_dict()).to_dict() == d.to_dict()


def test_enriques_object_fibrations():
    d = parse_entry({"family": "enriques", "params": {"fibrations": [
        {"singular_nonmultiple": ["A_1"], "half_fibers": [], "has_allcomponent_bisection": True}]}})
    assert d.classify().value == 2


def test_rr_command(tmp_path, capsys):
    path = _write(tmp_path, {"family": "hirzebruch", "params": {"n": 1}})
    code, out, _ = _run(capsys, "rr", path, "--class", "1,2", "--json")
    data = json.loads(out)
    # (S + 2F)^2 = -1 + 4, K.(S + 2F) = (-2S - 3F).(S + 2F) = 2 - 4 - 3
    assert code == 0 and data["L_sq"] == 3 and data["K_dot_L"] == -5
    assert data["chi"] == 1 + (3 + 5) // 2 and data["ample"] is True
    code, _, err = _run(capsys, "rr", path, "--class", "1,x")
    assert code == 1
    code, _, err = _run(capsys, "rr", path, "--class", "1,2,3")
    assert code == 1


def test_rr_rational_class(tmp_path, capsys):
    path = _write(tmp_path, {"family": "isotrivial-example"})
    code, out, _ = _run(capsys, "rr", path, "--class", "1/4,1/2", "--json")
    data = json.loads(out)
    assert data["L_sq"] == 1 and data["K_dot_L"] == 1


def test_table_command(capsys):
    code, out, _ = _run(capsys, "table", "bielliptic", "--format", "csv")
    assert code == 0 and out.splitlines()[1].startswith("μ2,2,μ2,2,2,")


def test_verify_command(capsys, monkeypatch):
    code, out, _ = _run(capsys, "verify", "--budget", "1")
    assert code == 0
    code, out, _ = _run(capsys, "verify", "--budget", "3", "--mutate")
    assert code != 0 and "first counterexample" in out
    monkeypatch.setenv("FUJITA_LAB_BUDGET", "2")
    code, out, _ = _run(capsys, "verify")
    assert code == 0 and "budget 2" in out
    code, _, _ = _run(capsys, "verify", "--budget", "0")
    assert code == 1
    monkeypatch.setenv("FUJITA_LAB_BUDGET", "lots")
    code, _, _ = _run(capsys, "verify")
    assert code == 1


def test_bad_command_line_is_input_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["table", "nonexistent"])
    assert exc.value.code == 1


def test_console_entry_point(tmp_path):
    path = _write(tmp_path, {"family": "projective-plane"})
    r = subprocess.run([sys.executable, "-m", "fujita_lab", "classify", path], capture_output=True,
                       text=True, encoding="utf-8", env={**os.environ, "PYTHONIOENCODING": "ascii"})
    assert r.returncode == 0 and "conFN = 3" in r.stdout and "≤" in r.stdout
