from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from blglue.cli import SUBCOMMANDS, build_parser, dumps, main, run

GOLDEN = Path(__file__).parent / "golden"
F5 = '{"type":"Fp","p":5}'
GEO = [[{"val": -1, "coeffs": [1] * 17, "prec": 16}]]


def call(argv: list[str]) -> tuple[int, object]:
    code, doc = run(build_parser().parse_args(argv))
    # every document must survive the JSON writer
    return code, json.loads(dumps(doc))


def test_factorize_example():
    code, doc = call(["factorize", "--ring", F5, "--prec", "16", "--input", json.dumps(GEO)])
    assert code == 0
    assert doc["g"] == [[{"num": {"val": -1, "coeffs": [1, 1], "prec": None},
                          "den": {"val": 0, "coeffs": [1], "prec": None}}]]
    assert doc["truncation_order"] == 1
    assert doc["certificates"]["det_g"]["kind"] == "unit"


def test_invert_nilpotent_exit_code():
    ring = '{"type":"dual","base":{"type":"Fp","p":2},"k":2}'
    code, doc = call(["invert", "--ring", ring, "--input", '{"val":0,"coeffs":[[0,1]],"prec":null}'])
    assert code == 2 and doc["error"]["code"] == "not_a_unit"


def test_splitting_example():
    code, doc = call(["splitting", "--ring", F5, "--input", '[[{"val":-2,"coeffs":[1],"prec":null}]]'])
    assert code == 0 and doc == [2]


def test_precision_exit_code():
    gamma = [[{"val": -1, "coeffs": [1, 0], "prec": 1}]]
    code, doc = call(["factorize", "--ring", F5, "--prec", "4", "--input", json.dumps(gamma)])
    assert code == 3 and doc["error"]["code"] == "precision_exhausted"


@pytest.mark.parametrize("argv", [
    ["factorize", "--ring", F5, "--input", json.dumps(GEO)],
    ["random", "--ring", F5],
    ["splitting", "--ring", '{"type":"GF"}', "--input", "[[1]]"],
    ["splitting", "--ring", "{not json", "--input", "[[1]]"],
    ["splitting", "--ring", F5, "--input", "[[1, 2]]"],
    ["coset", "--ring", F5, "--input", "[[1]]"],
    ["splitting", "--ring", F5, "--input", "/nonexistent/file.json"],
])
def test_schema_errors_exit_4(argv):
    code, doc = call(argv)
    assert code == 4
    assert doc["error"]["code"] in ("schema_error", "unsupported_ring", "unsupported_transition")


def test_usage_error_exit_4(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nosuchcommand"])
    assert exc.value.code == 4
    assert json.loads(capsys.readouterr().err)["error"]["code"] == "usage_error"


def test_unsupported_transition_exit_4():
    code, doc = call(["h1", "--ring", F5, "--input", '[[{"val":0,"coeffs":[1,1],"prec":null}]]'])
    assert code == 4 and doc["error"]["code"] == "unsupported_transition"


def test_factorization_output_feeds_back():
    _, fact = call(["factorize", "--ring", F5, "--prec", "16", "--input", json.dumps(GEO)])
    code, mem = call(["membership", "--ring", F5, "--prec", "16", "--input", json.dumps(fact)])
    assert code == 0 and mem == {"result": "yes"}
    pair = {"gamma1": GEO, "gamma2": fact["g"]}
    code, out = call(["coset", "--ring", F5, "--prec", "16", "--input", json.dumps(pair)])
    assert code == 0 and out == {"result": "equal"}
    # z^-1 + 1 has a non-monomial determinant, so it is no two-chart transition
    code, err = call(["splitting", "--ring", F5, "--input", json.dumps(fact)])
    assert code == 4 and err["error"]["code"] == "unsupported_transition"
    mono = [[{"val": -2, "coeffs": [1, 0, 0, 0], "prec": 2}]]
    _, fact = call(["factorize", "--ring", F5, "--prec", "2", "--input", json.dumps(mono)])
    code, st = call(["splitting", "--ring", F5, "--input", json.dumps(fact)])
    assert code == 0 and st == [2]


def test_triple_output_feeds_back():
    g = '[[{"val":-1,"coeffs":[1,1],"prec":null}]]'
    _, triple = call(["glue", "--ring", F5, "--input", g])
    code, back = call(["transition", "--ring", F5, "--input", json.dumps(triple)])
    assert code == 0 and back["g"] == triple["g"]
    shifted = [[{"val": -1, "coeffs": [1, 0, 2, 0], "prec": 3}]]
    _, formal = call(["formal", "--ring", F5, "--prec", "3", "--input", json.dumps(shifted)])
    code, h0 = call(["sections", "--ring", F5, "--input", json.dumps(formal)])
    assert code == 0 and h0["dimension"] == 2


def test_random_output_feeds_factorize():
    _, doc = call(["random", "--ring", F5, "--seed", "3", "--n", "2", "--kind", "product"])
    code, fact = call(["factorize", "--ring", F5, "--prec", "32", "--input", json.dumps(doc)])
    assert code == 0 and fact["truncation_order"] >= 1


def test_out_flag(tmp_path):
    out = tmp_path / "st.json"
    assert main(["splitting", "--ring", F5, "--input", '[[{"val":-2,"coeffs":[1],"prec":null}]]',
                 "--out", str(out)]) == 0
    assert json.loads(out.read_text()) == [2]


def _golden_cases():
    return json.loads((GOLDEN / "cases.json").read_text(encoding="utf-8"))


def run_case(case: dict) -> str:
    inp = [] if case["input"] is None else ["--input", json.dumps(case["input"])]
    proc = subprocess.run([sys.executable, "-m", "blglue.cli", *case["args"], *inp],
                          capture_output=True, text=True, check=False)
    body = proc.stdout if proc.returncode == 0 else proc.stderr
    return f"exit {proc.returncode}\n" + body


def test_golden_covers_every_subcommand():
    assert {c["args"][0] for c in _golden_cases()} == set(SUBCOMMANDS)


@pytest.mark.parametrize("case", _golden_cases(), ids=lambda c: c["name"])
def test_golden(case):
    expected = (GOLDEN / f"{case['name']}.out").read_text(encoding="utf-8")
    assert run_case(case) == expected
