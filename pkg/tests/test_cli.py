import json
import subprocess
import sys

import pytest

from catho.category import validate_category
from catho.cli import main
from catho.fileformat import Loader, category_from_doc, category_to_doc, verdict_from_doc
from catho.homotopy import verify_verdict


@pytest.fixture
def run(fixtures, monkeypatch, capsys):
    monkeypatch.chdir(fixtures)
    monkeypatch.delenv("CATHO_MAX_DIM", raising=False)
    monkeypatch.delenv("CATHO_SEARCH_BOUND", raising=False)

    def go(*argv):
        code = main(list(argv))
        out = capsys.readouterr()
        doc = json.loads(out.out) if out.out else None
        return code, doc, out.err

    return go


def test_homology_of_z2(run):
    code, doc, _ = run("homology", "bz2.cat", "--max-dim", "3")
    assert code == 0
    p = doc["result"]["profile"]
    assert p["betti"] == [1, 0, 0, 0]
    assert p["torsion"] == {"1": [2], "3": [2]}
    assert doc["inputs"] == {"category": "bz2.cat"}
    assert doc["config"] == {"max_dim": 3, "search_bound": 2}


def test_loop_space_pullback(run):
    code, doc, _ = run("hopullback", "e.fun", "e.fun", "--n", "1")
    assert code == 1
    assert doc["result"]["conclusion"] == "StrictIsNot"
    assert doc["result"]["k"]["answer"] == "No"
    assert doc["config"]["n"] == 1


def test_positive_pullback(run):
    code, doc, _ = run("hopullback", "id_i.fun", "pick1.fun")
    assert code == 0
    assert doc["result"]["conclusion"] == "StrictIsHomotopyPullback"


def test_validate_broken(run):
    code, doc, _ = run("validate", "broken.cat")
    assert code == 1
    assert doc["result"]["ok"] is False
    assert "associativity" in {v["law"] for v in doc["result"]["violations"]}


@pytest.mark.parametrize("name,kind", [("bz2.cat", "category"), ("e.fun", "functor"), ("swap_bz2.dia", "diagram")])
def test_validate_good_files(run, name, kind):
    code, doc, _ = run("validate", name)
    assert code == 0
    assert doc["result"] == {"kind": kind, "ok": True, "violations": []}


def test_input_errors_exit_two(run):
    code, doc, err = run("validate", "unknown_t.cat")
    assert code == 2 and doc is None
    assert "'t'" in err and "usage:" in err
    code, _, err = run("homology", "missing.cat")
    assert code == 2 and "file not found" in err
    code, _, err = run("homology", "syntax.cat")
    assert code == 2 and "syntax.cat:4:1" in err
    code, _, err = run("homology", "broken.cat")
    assert code == 2 and "associativity" in err


def test_usage_errors(run):
    with pytest.raises(SystemExit) as exc:
        run("homology", "bz2.cat", "--bogus")
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run("frobnicate")
    assert exc.value.code == 2
    code, _, err = run("comma", "e.fun", "--n", "0")
    assert code == 2
    code, _, err = run("slice", "e.fun")
    assert code == 2 and "exactly one" in err
    code, _, err = run("hofib", "e.fun", "--at", "nowhere")
    assert code == 2
    code, _, err = run("pullback", "e.fun", "id_i.fun")
    assert code == 2 and "same target" in err


def test_environment_and_flags(run, monkeypatch):
    monkeypatch.setenv("CATHO_MAX_DIM", "1")
    code, doc, _ = run("homology", "bz2.cat")
    assert doc["config"]["max_dim"] == 1
    assert doc["result"]["profile"]["betti"] == [1, 0]
    code, doc, _ = run("homology", "bz2.cat", "--max-dim", "2")
    assert doc["config"]["max_dim"] == 2
    monkeypatch.setenv("CATHO_SEARCH_BOUND", "0")
    code, doc, _ = run("we", "e.fun")
    assert doc["config"]["search_bound"] == 0
    monkeypatch.setenv("CATHO_MAX_DIM", "lots")
    code, _, err = run("homology", "bz2.cat")
    assert code == 2 and "CATHO_MAX_DIM" in err


def test_out_flag(run, tmp_path, capsys):
    target = tmp_path / "report.json"
    code, doc, _ = run("homology", "bz2.cat", "--out", str(target))
    assert code == 0 and doc is None
    written = json.loads(target.read_text())
    assert written["result"]["profile"]["betti"] == [1, 0, 0, 0]


@pytest.mark.parametrize(
    "argv,key",
    [
        (("groth", "swap_bz2.dia"), "total"),
        (("groth", "ez2_to_bz2.dia"), "total"),
        (("comma", "v_to_i.fun", "--n", "2"), "category"),
        (("comma", "e.fun", "e.fun", "--n", "3"), "category"),
        (("comma", "e.fun", "e.fun", "--n", "3"), "strict"),
        (("pullback", "ez2_to_bz2.fun", "e.fun"), "category"),
        (("slice", "v_to_i.fun", "--target", "1", "--n", "2"), "category"),
        (("slice", "v_to_i.fun", "--source", "c", "--n", "3"), "category"),
        (("slice", "i_to_i2.fun", "id_i2.fun", "--z", "1", "--n", "2"), "category"),
    ],
)
def test_emitted_categories_round_trip(run, argv, key):
    code, doc, _ = run(*argv)
    assert code == 0
    emitted = doc["result"][key]
    c = category_from_doc(json.loads(json.dumps(emitted)))
    assert validate_category(c).ok
    assert category_to_doc(c) == emitted


def test_property_reports(run):
    code, doc, _ = run("check-cn", "i.cat")
    assert code == 1 and doc["result"]["overall"] == "Fails"
    code, doc, _ = run("check-cn", "i.cat", "--n", "2")
    assert code == 0 and doc["result"]["overall"] == "Holds"
    code, doc, _ = run("check-bn", "pick1.fun")
    assert code == 1
    code, doc, _ = run("check-q", "swap_bz2.dia")
    assert code == 0 and doc["result"]["overall"] == "Holds"
    code, doc, _ = run("check-q", "o_to_bz2.dia")
    assert code == 1
    code, doc, _ = run("hofib", "v_to_i.fun", "--at", "1")
    assert code == 0 and doc["result"]["is_homotopy_fibre"] == "Holds"


def test_we_evidence_is_rechecked(run, fixtures):
    for name, code_expected in (("ez2_to_bz2.fun", 1), ("e.fun", 1), ("v_to_i.fun", 0), ("id_k.fun", 0)):
        code, doc, _ = run("we", name)
        assert code == code_expected
        F = Loader().functor(fixtures / name)
        v = verdict_from_doc(doc["result"], F)
        assert verify_verdict(F, v).ok


def test_module_entry_point(fixtures):
    out = subprocess.run(
        [sys.executable, "-m", "catho", "homology", "bz2.cat"], cwd=fixtures, capture_output=True, text=True
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["result"]["profile"]["torsion"] == {"1": [2], "3": [2]}
