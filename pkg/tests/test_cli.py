import io
import json
import subprocess
import sys

import pytest

from conftest import philosophers_text
from weakspec import hml
from weakspec.cli import NOT_OK, OK, SCHEMA, USAGE, admissible_for_simplified, main
from weakspec.lts import Lts
from weakspec.spectrum import lookup


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def ccs_file(tmp_path):
    path = tmp_path / "phil.ccs"
    path.write_text(philosophers_text())
    return str(path)


@pytest.fixture
def ex5_file(tmp_path):
    path = tmp_path / "ex5.lts"
    path.write_text("p tau p1\np tau p2\np2 a z\nq tau q1\nq1 a z2\n")
    return str(path)


def test_check_weak_bisimulation_fails_with_certificate(ccs_file):
    code, out, _ = run("--format", "structured", "check", ccs_file, "P_c", "P_p", "--notion",
                       "weak-bisimulation", "--certificates")
    assert code == NOT_OK
    doc = json.loads(out)
    assert doc["schema"] == SCHEMA and doc["holds"] is False
    [cert] = doc["certificates"]
    assert cert["verified"] and cert["notion"] == "wb"
    parsed = json.loads(run("parse", ccs_file, "--format", "structured")[1])
    l = Lts(parsed["processes"], [tuple(t) for t in parsed["transitions"]])
    f = hml.parse_formula(cert["formula"])
    phi_cp = hml.parse_formula("<e><op><e>/\\{<e><aEats>T, <e><bEats>T}")
    assert hml.eval(f, l) == hml.eval(phi_cp, l)


def test_check_contrasimulation_holds(ccs_file):
    assert run("check", ccs_file, "--left", "P_c", "--right", "P_p", "--notion", "c")[0] == OK


def test_spectrum_mode_reflexive(ex5_file):
    code, out, _ = run("check", ex5_file, "p", "p", "--equivalence")
    assert code == OK
    assert "result: holds" in out


def test_human_spectrum_report(ccs_file):
    code, out, _ = run("check", ccs_file, "P_c", "P_p", "--certificates")
    assert code == NOT_OK
    assert "(2,0,1,0,0,1,0,0)" in out
    assert "certificate against ws (verified)" in out
    assert "NOT VERIFIED" not in out


def test_budgets(ccs_file):
    code, out, _ = run("budgets", ccs_file, "P_c", "P_p", "--format", "structured")
    assert code == OK
    assert [0, 0, 0, 0, 0, 0, 0, 0] not in json.loads(out)["budgets"]
    assert [2, 0, 1, 0, 0, 1, 0, 0] in json.loads(out)["budgets"]
    code, out, _ = run("budgets", ccs_file, "P_c", "P_p", "--dump")
    assert "attacker | (P_c,{P_p})_a | (2,0,1,0,0,1,0,0)" in out


def test_structured_output_is_deterministic(ccs_file):
    a = run("--format", "structured", "check", ccs_file, "P_c", "P_p", "--certificates")[1]
    b = run("--format", "structured", "check", ccs_file, "P_c", "P_p", "--certificates")[1]
    assert a == b


def test_formula_price():
    code, out, _ = run("formula-price", "<e>/\\{~<e><a>T}")
    assert code == OK and out.splitlines() == ["<e>/\\{~<e><a>T}", "(1,0,1,0,0,0,1,1)"]
    code, out, _ = run("--format", "structured", "formula-price", "T")
    assert json.loads(out)["price"] == [0] * 8


def test_parse_with_preprocessing(ex5_file):
    code, out, _ = run("parse", ex5_file, "--preprocess", "completion,divergence")
    assert code == OK
    assert "p1 tick bot" in out and "z tick bot" in out


def test_verify_agrees(ex5_file):
    code, out, _ = run("verify", ex5_file, "p", "q")
    assert code == OK
    assert out.strip().endswith("agree")


@pytest.mark.parametrize(
    "argv",
    [
        ("check",),
        ("check", "{missing}", "p", "q"),
        ("check", "{ex5}", "p"),
        ("check", "{ex5}", "p", "nope"),
        ("check", "{ex5}", "p", "q", "--notion", "nope"),
        ("parse", "{bad}"),
        ("parse", "{ex5}", "--preprocess", "magic"),
        ("parse", "{ex5}", "--max-states", "2"),
        ("formula-price", "<e><e>T"),
        ("verify", "{big}", "s0", "s1"),
    ],
)
def test_usage_errors(argv, ex5_file, tmp_path):
    bad = tmp_path / "bad.lts"
    bad.write_text("p a q\np a\n")
    big = tmp_path / "big.lts"
    big.write_text("".join(f"s{i} a s{i + 1}\n" for i in range(12)))
    paths = {"ex5": ex5_file, "missing": str(tmp_path / "missing.lts"), "bad": str(bad), "big": str(big)}
    code, out, err = run(*(a.format(**paths) for a in argv))
    assert code == USAGE


def test_line_numbers_in_errors(tmp_path):
    bad = tmp_path / "bad.lts"
    bad.write_text("p a q\np a\n")
    _, _, err = run("parse", str(bad))
    assert "line 2" in err and "bad.lts" in err


def test_simplified_admissibility():
    assert admissible_for_simplified(lookup("wb").coordinate)
    assert admissible_for_simplified(lookup("bb").coordinate)
    assert not admissible_for_simplified((1, 1, 1, 0, 0, 0, 0, 0))


def test_module_entry_point(ex5_file):
    proc = subprocess.run([sys.executable, "-m", "weakspec", "check", ex5_file, "q", "p", "--notion", "wb"],
                          capture_output=True, text=True)
    assert proc.returncode == OK
    proc = subprocess.run([sys.executable, "-m", "weakspec", "check", ex5_file, "p", "q", "--notion", "wb"],
                          capture_output=True, text=True)
    assert proc.returncode == NOT_OK
