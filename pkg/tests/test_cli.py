import io
import json
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest

from solcalc import example_path
from solcalc.cli import parse_element, run

SCHEMA = json.loads((resources.files("solcalc") / "schema" / "output.schema.json").read_text())
DYADIC, FIB, EX4X, EX4Y = (example_path(n) for n in ("dyadic", "fibonacci", "ex4x", "ex4y"))


def call(*argv, json_out=True):
    out, err = io.StringIO(), io.StringIO()
    args = list(argv) + (["--json"] if json_out and argv and argv[0] in _SUBS else [])
    code = run(args, out, err)
    if json_out and out.getvalue():
        doc = json.loads(out.getvalue())
        jsonschema.validate(doc, SCHEMA)
        assert doc["exit_code"] == code
        return code, doc
    return code, out.getvalue() + err.getvalue()


_SUBS = {"validate", "invariants", "bruschlinsky", "axioms", "sign", "equal", "interpolate", "compare", "solve"}


def test_parse_element():
    e = parse_element(" 2 : -1, 3 ")
    assert e.level == 2 and e.vector == (-1, 3)


def test_validate(tmp_path):
    code, doc = call("validate", DYADIC)
    assert code == 0 and doc["result"]["valid"]
    bad = tmp_path / "bad.sol"
    lines = open(DYADIC).read().splitlines()
    at = next(i for i, l in enumerate(lines) if "edge e1 ->" in l)
    lines[at] = lines[at].replace("e1 e2", "e1 e1")
    bad.write_text("\n".join(lines) + "\n")
    code, doc = call("validate", str(bad))
    assert code == 1
    (f,) = doc["findings"]
    assert f["check"] == "parse" and f["line"] == at + 1


def test_bruschlinsky_dyadic():
    code, doc = call("bruschlinsky", DYADIC)
    assert code == 0
    r = doc["result"]
    assert r["group"] == "Z[1/2]" and r["limit"] == "lim(Z, ×2)"
    assert r["perron"]["interval"]["lo"] == "2" == r["perron"]["interval"]["hi"]
    assert r["simplicity"] == "holds"


def test_invariants_ex4y_is_marked_inferred():
    code, doc = call("invariants", EX4Y)
    assert code == 0 and doc["inferred"] is True
    assert doc["result"]["adjacency"]["group"] == "Z^3"
    code, text = call("invariants", EX4Y, json_out=False)
    assert text.startswith("inferred: yes")


def test_compare_ex4():
    code, doc = call("compare", EX4X, EX4Y)
    r = doc["result"]
    assert code == 0
    assert r["matrix_level"]["left"]["eventual_rank"] == 2
    assert r["matrix_level"]["right"]["eventual_rank"] == 3
    assert not r["matrix_level"]["equal"]
    assert r["bruschlinsky_level"]["equal"] and r["bruschlinsky_level"]["perron_roots_equal"]
    assert r["note"] == "necessary-condition check only"
    assert Fraction(r["right"]["perron"]["interval"]["width"]) <= Fraction(1, 100)


def test_sign_and_oracle():
    code, doc = call("sign", FIB, "--level", "0", "--vec", "1,-2", "--oracle")
    assert code == 0
    assert doc["result"]["sign"] == "negative" and doc["result"]["oracle_agrees"]
    code, text = call("sign", FIB, "--level", "0", "--vec", "1,-2", json_out=False)
    assert "sign: negative" in text


def test_equal_and_interpolate():
    _, doc = call("equal", DYADIC, "--lhs", "0:1,0", "--rhs", "0:0,1")
    assert doc["result"]["equal"] is True
    _, doc = call("interpolate", FIB, "--a1", "0:1,0", "--a2", "0:0,1", "--b1", "0:2,2", "--b2", "0:2,2")
    assert doc["result"]["c"] == "0:1,1"


def test_axioms():
    code, doc = call("axioms", FIB)
    assert code == 0
    assert doc["result"]["flattening"]["holds"] is False
    assert doc["result"]["nonfolding"]["status"] == "holds"


def test_solve_reproduces_bundled_ex4y():
    code, doc = call("solve", "--vertices", "2", "--word", "alpha=gamma alpha beta", "--word", "beta=gamma",
                     "--word", "gamma=beta gamma alpha beta")
    assert code == 0
    assert len(doc["result"]["solutions"]) == 4
    assert "provenance inferred" in doc["result"]["first"]


def test_inconclusive_bound(monkeypatch):
    args = ("interpolate", FIB, "--a1", "0:0,0", "--a2", "0:0,0", "--b1", "0:2,-3", "--b2", "0:2,-3")
    code, doc = call(*args, "--bound", "0")
    assert code == 2 and doc["result"] is None
    monkeypatch.setenv("SOLCALC_BOUND", "0")
    assert call(*args)[0] == 2
    # the flag wins over the environment
    assert call(*args, "--bound", "10")[0] == 0


def test_short_tower_is_inconclusive(tmp_path):
    f = tmp_path / "t.sol"
    f.write_text("solenoid v1\nlevel 0:\n vertex p\n edge a p p\n")
    assert call("invariants", str(f))[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["nonsense"],
        ["sign", FIB],
        ["sign", FIB, "--vec", "1,x"],
        ["equal", DYADIC, "--lhs", "1,0", "--rhs", "0:0,1"],
        ["validate", "/nonexistent/file.sol"],
        ["sign", FIB, "--vec", "1,0", "--bound", "-1"],
    ],
)
def test_usage_errors(argv):
    code, _ = call(*argv, json_out=False)
    assert code == 3


def test_bad_env_bound(monkeypatch):
    monkeypatch.setenv("SOLCALC_BOUND", "lots")
    code, _ = call("interpolate", FIB, "--a1", "0:0,0", "--a2", "0:0,0", "--b1", "0:1,0", "--b2", "0:1,0",
                   json_out=False)
    assert code == 3


def test_validation_errors_exit_1(tmp_path):
    assert call("sign", FIB, "--vec", "1,2,3")[0] == 1  # dimension mismatch
    loop = tmp_path / "l.sol"
    loop.write_text("solenoid v1\ngraph:\n vertex p\n edge a p p\n edge b p p\nmap:\n edge a -> b\n edge b -> a\n")
    assert call("sign", str(loop), "--vec", "1,0")[0] == 1  # not primitive


def test_signed_input_is_reoriented(tmp_path):
    f = tmp_path / "flip.sol"
    f.write_text("solenoid v1\ngraph:\n vertex v1\n vertex v2\n edge e1 v1 v2\n edge e2 v1 v2\n"
                 "map:\n edge e1 -> e1 e2'\n edge e2 -> e2 e1'\n")
    code, doc = call("sign", str(f), "--vec", "1,1")
    assert code == 0
    assert any(x["check"] == "reoriented" for x in doc["findings"])
    # with e2 reversed, (1, 1) becomes (1, -1), the dyadic zero class
    assert doc["result"]["sign"] == "zero"


def test_output_is_deterministic():
    a = call("compare", EX4X, EX4Y)[1]
    b = call("compare", EX4X, EX4Y)[1]
    assert a == b
    assert a["input_digest"] != call("compare", EX4Y, EX4X)[1]["input_digest"]


def test_module_entry_point():
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-m", "solcalc", "validate", DYADIC, "--json"],
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["result"]["valid"] is True
