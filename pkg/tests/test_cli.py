import io
import json
import os
from pathlib import Path

import pytest

from algden.cli import main

GOLDEN_DIR = Path(__file__).parent / "golden"
GAUSS = "Q[x]/(x^2+1)"

# one file per worked example; regenerate with ALGDEN_UPDATE_GOLDEN=1 and review the diff
GOLDEN = {
    "invariants_5x2-4x+1": ["invariants", "5*x^2-4*x+1"],
    "xy_inv_2+i_over_Q": ["xy", "--field", GAUSS, "--gamma", "1/(2+x)"],
    "xy_inv_2+i_over_Qi": ["xy", "--field", GAUSS, "--gamma", "1/(2+x)", "--K", "x"],
    "member_fifth_over_Q": ["member", "--field", GAUSS, "--gamma", "1/(2+x)", "--alpha", "1/5"],
    "member_fifth_over_Qi": ["member", "--field", GAUSS, "--gamma", "1/(2+x)", "--K", "x", "--alpha", "1/5"],
    "xy_inv_60+15i_over_Q": ["xy", "--field", GAUSS, "--gamma", "1/(60+15*x)"],
    "xy_inv_60+15i_over_Qi": ["xy", "--field", GAUSS, "--gamma", "1/(60+15*x)", "--K", "x"],
    "genset_inv_60+15i": ["genset", "--field", GAUSS, "--gamma", "1/(60+15*x)"],
    "classgroup_sqrt-5": ["classgroup", "Q[x]/(x^2+5)"],
    "ring_sqrt-5_half": ["ring", "--field", "Q[x]/(x^2+5)", "--gamma", "1/2", "--K", "x"],
    "same_denom_conjugate": ["same-denom", "--field", GAUSS, "--gamma", "1/(2+x)", "--gamma2", "1/(2-x)"],
    "same_denom_3+4i": ["same-denom", "--field", GAUSS, "--gamma", "1/(2+x)", "--gamma2", "1/(3+4*x)"],
    "tuple_check_4212": ["tuple", "check", "4", "2", "1", "2"],
    "tuple_witness_2222": ["tuple", "witness", "2", "2", "2", "2"],
}


def run(argv, env=None):
    out = io.StringIO()
    old = {k: os.environ.get(k) for k in (env or {})}
    os.environ.update(env or {})
    try:
        code = main(argv, out=out)
    finally:
        for k, v in old.items():
            if v is None:
                os.environ.pop(k, None)
            else:
                os.environ[k] = v
    return code, out.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines()]


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden(name):
    code, text = run(GOLDEN[name])
    assert code == 0
    path = GOLDEN_DIR / f"{name}.jsonl"
    if os.environ.get("ALGDEN_UPDATE_GOLDEN") == "1":
        path.write_text(text, encoding="utf-8")
    assert text == path.read_text(encoding="utf-8")


def test_config_record_first():
    _, text = run(["invariants", "5*x^2-4*x+1", "--seed", "9"])
    first = records(text)[0]
    assert first == {"record": "config", "command": "invariants", "seed": 9, "max_degree": 64,
                     "effort": 200000, "version": "0.1.0"}


def test_reruns_are_byte_identical():
    argv = ["verify", "membership", "--count", "15", "--seed", "3"]
    assert run(argv) == run(argv)


def test_env_defaults_and_flag_precedence():
    _, text = run(["invariants", "x^2+1"], env={"ALGDEN_SEED": "5", "ALGDEN_EFFORT": "1000"})
    cfg = records(text)[0]
    assert (cfg["seed"], cfg["effort"]) == (5, 1000)
    _, text = run(["invariants", "x^2+1", "--seed", "6"], env={"ALGDEN_SEED": "5"})
    assert records(text)[0]["seed"] == 6
    _, text = run(["invariants", "x^2+1"], env={"ALGDEN_FORMAT": "human"})
    assert text.startswith("command=invariants")


def test_bad_env_value_is_input_error():
    code, text = run(["invariants", "x^2+1"], env={"ALGDEN_SEED": "abc"})
    assert code == 1
    assert records(text)[-1]["record"] == "error"


def test_parse_error_exit_code_and_position():
    code, text = run(["invariants", "5*x^2-4*y+1"])
    assert code == 1
    err = records(text)[-1]
    assert err["record"] == "error"
    assert err["position"] == 8 and err["token"] == "y"


def test_verification_failure_exit_code(monkeypatch):
    from algden import verify
    from algden.verify import CheckResult

    def broken(**_):
        yield CheckResult("examples", "forced", "worked example", False, {})

    monkeypatch.setitem(verify.SUITES, "examples", broken)
    code, text = run(["verify", "examples"])
    assert code == 2
    assert "worked example" in text


def test_verify_examples_passes():
    code, text = run(["verify", "examples"])
    assert code == 0
    assert all(r["ok"] for r in records(text)[1:] if "ok" in r)


def test_human_format():
    code, text = run(["tuple", "check", "4", "2", "1", "2", "--format", "human"])
    assert code == 0
    assert "realizable=false" in text


def test_field_commands():
    code, text = run(["field", "info", "x^4+1"])
    assert code == 0 and records(text)[1]["discriminant"] == 256
    code, text = run(["field", "factor", "x^2+1", "-p", "5"])
    assert code == 0
    assert [(r["prime"], r["e"], r["f"]) for r in records(text)[1:]] == [("(5, x+2)", 1, 1), ("(5, x-2)", 1, 1)]


def test_remaining_commands_run():
    for argv in (
        ["kernel-ideal", "--field", GAUSS, "--gamma", "1/(60+15*x)", "--K", "x"],
        ["local", "--field", GAUSS, "--gamma", "1/(2+x)", "--p", "5"],
        ["tuple", "atlas", "--n", "2", "--max-c", "4"],
        ["genset", "--minpoly", "5*x^2-4*x+1", "--check"],
    ):
        code, _ = run(argv)
        assert code == 0, argv
