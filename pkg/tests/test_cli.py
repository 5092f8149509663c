import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from catent.cli import VERBS, nats, run

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "golden"


def call(*args):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in args], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def ok(*args):
    code, out, err = call(*args)
    assert code == 0, err
    return json.loads(out)


GOLDEN_RUNS = [
    ("magnitude_chain2.json", ["magnitude", "--category", DATA / "chain2.json"]),
    ("entropy_quarter.json", ["entropy", "--triple", DATA / "finprob_quarter.json"]),
    ("check_props_42.json", ["check", "--suite", "props", "--seed", "42"]),
]


@pytest.mark.parametrize("golden,args", GOLDEN_RUNS, ids=[g for g, _ in GOLDEN_RUNS])
def test_golden(golden, args):
    expected = (GOLDEN / golden).read_text()
    for _ in range(2):
        code, out, _ = call(*args)
        assert code == 0
        assert out == expected


def test_golden_values():
    assert ok("magnitude", "--category", DATA / "chain2.json") == {
        "magnitude": "1", "weighting": ["0", "1"], "coweighting": ["1", "0"]}
    assert ok("entropy", "--triple", DATA / "finprob_quarter.json")["nats"] == pytest.approx(
        0.5623351446, abs=1e-10)
    report = ok("check", "--suite", "props", "--seed", "42")
    assert report["failed"] == 0 and report["passed"] == 400


def test_console_script_subprocess():
    args = [sys.executable, "-m", "catent", "magnitude", "--category", str(DATA / "chain2.json")]
    proc = subprocess.run(args, capture_output=True, text=True, check=True)
    assert proc.stdout == (GOLDEN / "magnitude_chain2.json").read_text()


def test_nats_rounding():
    assert nats(0.56233514461880001) == 0.562335144619
    assert nats(0.0) == 0.0


def test_magnitude_explain():
    out = ok("magnitude", "--matrix", DATA / "similarity.json", "--explain")
    assert out["magnitude"] == "4/3"
    assert out["nonnegative_weighting"] == ["2/3", "2/3"]
    assert out["has_nonnegative_weighting"] is True


def test_weightings_and_mobius():
    assert ok("weighting", "--category", DATA / "chain2.json") == {"weighting": ["0", "1"]}
    assert ok("coweighting", "--category", DATA / "chain2.json") == {"coweighting": ["1", "0"]}
    assert ok("mobius", "--category", DATA / "chain2.json") == {"mobius": [["1", "-1"], ["0", "1"]]}


def test_entropy_explain_and_signed():
    out = ok("entropy", "--triple", DATA / "chain2_half.json", "--explain")
    assert out["exact_inner_sums"] == ["1", "1/2"]
    out = ok("entropy", "--triple", DATA / "signed.json")
    assert out["nats"] == pytest.approx(-1.38629436112)


def test_decompose_and_step():
    out = ok("decompose", "--triple", DATA / "indiscrete2_transition.json")
    assert out["p_hat"] == ["5/12", "7/12"]
    assert out["nats"] == pytest.approx(out["shannon"] - out["divergence"], abs=1e-11)
    assert ok("step", "--triple", DATA / "indiscrete2_transition.json") == {"p_hat": ["5/12", "7/12"]}


def test_pushforward_and_loss():
    out = ok("pushforward", "--morphism", DATA / "collapse_quarter.json")
    assert out["p"] == ["1"] and out["phi"] == [["1"]]
    loss = ok("loss", "--morphism", DATA / "collapse_quarter.json")["loss"]
    assert loss == ok("loss", "--triple", DATA / "finprob_quarter.json")["loss"] == 0.562335144619


def test_tensor_and_sum():
    a, b = DATA / "finprob_quarter.json", DATA / "chain2_half.json"
    out = ok("tensor", "--triple", a, "--triple", b)
    assert out["p"] == ["1/8", "1/8", "3/8", "3/8"]
    out = ok("sum", "--triple", a, "--triple", b, "--lambda", "1/3")
    assert out["p"] == ["1/12", "1/4", "1/3", "1/3"]
    out = ok("sum", "--triple", a, "--triple", b, "--triple", a, "--lambdas", "1/2,1/4,1/4")
    assert len(out["p"]) == 6


def test_maxent():
    out = ok("maxent", "--triple", DATA / "chain2_half.json")
    assert out["nonsymmetric_kernel"] is True
    assert out["sup_entropy"] == 0.0
    assert out["numeric_estimate"] == pytest.approx(0.3678794411714, abs=1e-4)
    out = ok("maxent", "--matrix", DATA / "similarity.json")
    assert out["subset_magnitude"] == "4/3" and "numeric_estimate" not in out
    out = ok("maxent", "--matrix", DATA / "similarity.json", "--grid", "100")
    assert out["numeric_estimate"] == pytest.approx(out["sup_entropy"], abs=1e-3)


def test_validate():
    assert ok("validate", "--category", DATA / "chain2.json")["valid"] is True
    assert ok("validate", "--triple", DATA / "signed.json")["triple"]["signed"] is True
    assert ok("validate", "--morphism", DATA / "collapse_quarter.json")["valid"] is True


def test_composition_strictness():
    code, out, err = call("validate", "--category", DATA / "bad_composition.json")
    assert code == 1 and out == ""
    assert json.loads(err)["error_kind"] == "CompositionViolation"
    code, out, err = call("validate", "--category", DATA / "bad_composition.json", "--no-strict")
    assert code == 0 and err.startswith("warning:")


@pytest.mark.parametrize("args,kind", [
    (["entropy", "--triple", DATA / "float_entry.json"], "FormatError"),
    (["entropy", "--triple", DATA / "signed.json", "--triple", DATA / "signed.json"], None),
    (["decompose", "--triple", DATA / "chain2_half.json"], "NotTransitionKernel"),
    (["sum", "--triple", DATA / "finprob_quarter.json", "--triple", DATA / "chain2_half.json",
      "--lambda", "3/2"], "LambdaOutOfRange"),
])
def test_domain_errors(args, kind):
    code, out, err = call(*args)
    if kind is None:
        assert code == 2
    else:
        assert code == 1 and json.loads(err)["error_kind"] == kind


@pytest.mark.parametrize("args", [
    [],
    ["frobnicate"],
    ["entropy"],
    ["magnitude"],
    ["tensor", "--triple", DATA / "finprob_quarter.json"],
    ["sum", "--triple", DATA / "finprob_quarter.json"],
    ["check", "--suite", "nope"],
    ["entropy", "--triple", DATA / "missing.json"],
])
def test_usage_errors(args):
    code, out, _ = call(*args)
    assert code == 2 and out == ""


def test_every_verb_is_wired():
    assert len(VERBS) == 14
    for verb in VERBS:
        code, _, _ = call(verb, "--help")
        assert code == 0


def test_check_suites_reproducible():
    first = ok("check", "--suite", "all", "--seed", "7", "--trials", "5")
    assert first == ok("check", "--suite", "all", "--seed", "7", "--trials", "5")
    assert first["failed"] == 0 and first["passed"] == 15 * 5
