import io
import json
import subprocess
import sys

import pytest

from frobkh.algebra import ZZ
from frobkh.cli import emit_json, run
from frobkh.homology import BigradedHomology

TREFOIL = ["--braid", "1,1,1", "--strands", "2"]


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_homology_text():
    code, out, _ = call("homology", *TREFOIL)
    assert code == 0
    assert out.splitlines() == ["H^0,1 = Z", "H^0,3 = Z", "H^2,5 = Z", "H^3,7 = Z/(2)",
                                "H^3,9 = Z"]


def test_homology_json_torsion_and_determinism():
    code, out, _ = call("homology", *TREFOIL, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["input"]["components"] == 1 and data["coefficients"] == "Z"
    cell = next(r for r in data["homology"] if (r["i"], r["q"]) == (3, 7))
    assert cell["rank"] == 0
    assert cell["torsion"] == [{"factor": "2", "power": 1, "gen_q": 7}]
    assert call("homology", *TREFOIL, "--format", "json")[1] == out


def test_homology_no_simplify_matches():
    a = call("homology", *TREFOIL, "--format", "json")[1]
    b = call("homology", *TREFOIL, "--format", "json", "--no-simplify")[1]
    assert json.loads(a)["homology"] == json.loads(b)["homology"]


def test_homology_q_x():
    code, out, _ = call("homology", *TREFOIL, "--system", "F5", "--coeffs", "Q[X]")
    assert code == 0
    assert out.splitlines() == ["H^0,3 = Q[X]", "H^3,9 = Q[X]/(X)"]


def test_homology_with_map():
    code, out, _ = call("homology", *TREFOIL, "--system", "F5", "--coeffs", "Q",
                        "--map", "h=0,t=1", "--format", "json")
    assert code == 0
    rows = json.loads(out)["homology"]
    assert sum(r["rank"] for r in rows) == 2


def test_empty_homology_list():
    H = BigradedHomology(ZZ, True)
    data = json.loads(emit_json({"homology": H.rows()}).decode("utf-8"))
    assert data == {"homology": []}


def test_unknot_homology_json():
    data = json.loads(call("homology", "--braid", "", "--strands", "1", "--format", "json")[1])
    assert [(r["i"], r["q"], r["rank"]) for r in data["homology"]] == [(0, -1, 1), (0, 1, 1)]


def test_jones():
    code, out, _ = call("jones", *TREFOIL)
    assert code == 0 and out.strip() == "q + q^3 + q^5 - q^9"
    code, out, _ = call("jones", "--pd", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
    assert out.strip() == "-q^-9 + q^-5 + q^-3 + q^-1"


def test_s_and_lee_rank():
    assert call("s", *TREFOIL)[1].strip() == "2"
    data = json.loads(call("s", *TREFOIL, "--format", "json")[1])
    assert data["s"] == 2
    assert call("lee-rank", "--braid", "1,1", "--strands", "2")[1].strip() == "4"


def test_s_on_link_is_usage_error():
    code, _, err = call("s", "--braid", "1,-1", "--strands", "2")
    assert code == 2 and "knot" in err


def test_parse_error_exit_2():
    code, _, err = call("homology", "--pd", "X[1,2")
    assert code == 2 and "unclosed bracket" in err


def test_bad_arguments_exit_2():
    assert call("homology")[0] == 2
    assert call("homology", "--braid", "1,1")[0] == 2
    assert call("homology", *TREFOIL, "--system", "F9")[0] == 2
    assert call("bogus")[0] == 2


def test_unsupported_domain_exit_1():
    code, _, err = call("decompose", *TREFOIL, "--coeffs", "Z")
    assert code == 1 and err


def test_decompose_json():
    data = json.loads(call("decompose", *TREFOIL, "--format", "json")[1])
    assert data["pieces"]["pieces"] == [{"m": 1, "i": 3, "q_source": 7, "q_target": 9,
                                         "qtop": 9}]
    assert data["pieces"]["free"] == [{"i": 0, "q": 3}]
    assert data["s"] == 2


def test_verify_axioms():
    code, out, _ = call("verify-axioms", "--system", "F5")
    assert code == 0 and "counit: pass" in out
    code, out, _ = call("verify-axioms", "--system", "custom:h=h,t=t,ring=Z[h,t]",
                        "--format", "json")
    assert code == 0 and json.loads(out)


def test_twist_and_mirror_checks():
    code, out, _ = call("twist-check", "--braid", "1,1", "--strands", "2", "--system", "F2")
    assert code == 0 and "isomorphic" in out
    code, out, _ = call("mirror-check", *TREFOIL)
    assert code == 0 and "fail" not in out


def test_simplify_dump():
    code, out, _ = call("simplify", "--braid", "1,1,-1", "--strands", "2")
    assert code == 0 and "-> 2 generators" in out
    code, out, _ = call("simplify", "--braid", "1,1,-1", "--strands", "2", "--dump")
    assert code == 0 and "complex over" in out


@pytest.mark.parametrize("cmd", ["homology", "jones", "s", "lee-rank", "decompose"])
def test_json_is_deterministic(cmd):
    a = call(cmd, *TREFOIL, "--format", "json")[1]
    assert a == call(cmd, *TREFOIL, "--format", "json")[1]
    json.loads(a)


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "frobkh.cli", "jones", *TREFOIL],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "q + q^3 + q^5 - q^9"
