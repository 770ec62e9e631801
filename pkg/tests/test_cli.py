import csv
import io
import json
import os
import tempfile

import pytest

from motstats import acceptance, cli


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_vakil_wood_json():
    code, out, _ = run("density", "vakil-wood", "--space", "P1", "--format", "json")
    assert code == 0
    assert out.startswith('{"exact":{"coeffs":{"0":1,"-1":-1,"-2":-1,"-3":1}}')


def test_ghost_example():
    assert run("witt", "ghost", "--class", "P2", "--q", "2", "--k", "3")[:2] == (0, "73\n")


def test_euler_expand_bundled_spec():
    code, out, _ = run("euler", "expand", "--spec", "examples/a1-minus-t.json", "--maxdeg", "5",
                       "--format", "json")
    assert code == 0
    assert json.loads(out) == {"variables": ["t"], "maxdeg": 5,
                               "coeffs": {"0": {"coeffs": {"0": 1}}, "1": {"coeffs": {"1": -1}}}}
    code, pretty, _ = run("euler", "expand", "--spec", "examples/a1-minus-t.json", "--maxdeg", "5")
    assert pretty.startswith("1 + (-L)*t")


def test_class_expressions():
    assert run("class", "eval", "(L^2-1)*(L^2-L)", "--q", "2")[1] == "L^4 - L^3 - L^2 + L\nat L=2: 6\n"
    assert run("class", "gl", "1")[1] == "L^4 - L^3 - L^2 + L\n"
    assert run("class", "lnk", "1", "1")[1] == "1 - L^-1\n"
    assert run("class", "p1-smooth", "3")[1] == "L^4 - L^3 - L^2 + L\n"
    assert run("class", "eval", "sym(P1, 2) - conf(P1, 2)")[1] == "L + 1\n"


@pytest.mark.parametrize("expr", ["__import__('os')", "L.__class__", "open('x')", "L ** L", "1/L"])
def test_unsafe_or_invalid_expressions_are_usage_errors(expr):
    assert run("class", "eval", expr)[0] == 2


def test_usage_errors():
    assert run("density")[0] == 2
    assert run("witt", "ghost", "--class", "P2", "--k", "3")[0] == 2
    assert run("class", "lnk", "2", "5")[0] == 2
    assert run("euler", "expand", "--spec", "/nonexistent/spec.json")[0] == 2


def test_divergence_exit_code():
    code, _, err = run("zeta", "special", "--class", "P2", "--N", "2")
    assert code == 3
    assert "diverge" in err
    spec = '{"variables":["t"],"strata":[{"base":{"coeffs":{"1":1}},"terms":[{"monomial":{"t":1},"coeff":{"coeffs":{"0":1}}}]}]}'
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "pos.json")
        with open(path, "w") as fh:
            fh.write(spec)
        assert run("euler", "evaluate", "--spec", path, "--N", "0")[0] == 3


def test_verification_failure_exit_code(monkeypatch):
    bad = acceptance.CriterionResult("x", "always false", False, "forced")
    known = acceptance.CriterionResult("y", "known", False, "literal", known_failure=True)
    monkeypatch.setattr(acceptance, "run_all", lambda keys=None: [bad])
    assert run("verify", "suite")[0] == 1
    monkeypatch.setattr(acceptance, "run_all", lambda keys=None: [known])
    assert run("verify", "suite")[0] == 1
    code, out, _ = run("verify", "suite", "--allow-known")
    assert code == 0
    assert out.startswith("FAIL [y]")


def test_verify_commands():
    assert run("verify", "inclusion-exclusion", "--count", "10", "--seed", "1")[0] == 0
    assert run("verify", "zeta-pole", "--count", "10")[0] == 0
    code, out, _ = run("verify", "ff-config", "--space", "P1", "--q", "2", "--total", "3")
    assert code == 0 and "all agree" in out
    code, out, _ = run("verify", "ff-smooth", "--n", "1", "--d", "3,4", "--q", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["gap"] for r in rows] == ["0", "0"]


def test_csv_and_json_density_tables():
    code, out, _ = run("density", "complete-intersection", "--n", "1,2", "--k", "1", "--floor", "-8",
                       "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["n"] for r in rows] == ["1", "2"]
    code, out, _ = run("density", "m-singular", "--space", "P2", "--m", "0,1", "--floor", "-8",
                       "--format", "json")
    assert len(json.loads(out)) == 2
    code, out, _ = run("density", "surjection", "--n", "2", "--floor", "-10", "--format", "json")
    assert json.loads(out)["inverse_residual"] == {"coeffs": {}}


def test_witt_commands():
    code, out, _ = run("witt", "conjecture-p1", "--d", "1,2,3", "--q", "2", "--format", "json")
    data = json.loads(out)
    assert [r["hadamard"] for r in data] == ["5/8", "3/8", "0"]
    assert run("witt", "specialize", "--class", "P1", "--q", "3")[1] == "1[3] + 1[1]\n"
    assert run("witt", "sigma", "--class", "A1", "--q", "2", "--maxdeg", "2")[1] == \
        "s^0: 1[1]\ns^1: 1[2]\ns^2: 1[4]\n"
    assert run("witt", "dist", "--class", "P1", "--other", "P1", "--q", "2")[1] == \
        "witt 0, weight 0, hadamard 0\n"


def test_other_commands():
    assert run("conf", "class", "--class", "P1", "--groups", "3")[1] == "L^3 - L\n"
    assert run("conf", "kapranov-m", "--class", "P1", "--m", "0", "--maxdeg", "3")[0] == 0
    assert run("zeta", "kapranov", "--class", "A1", "--maxdeg", "2")[1].startswith("1 + (L)*t + (L^2)*t^2")
    code, out, _ = run("zeta", "special", "--class", "P1", "--N", "2", "--inverse", "--format", "json")
    assert json.loads(out)["exact"] == {"coeffs": {"0": 1, "-1": -1, "-2": -1, "-3": 1}}
    code, out, _ = run("euler", "evaluate", "--spec", "examples/a1-minus-t.json", "--assign", "t=2")
    assert out == "1 - L^-1 + O(L^-30)\n"
    code, out, _ = run("euler", "substitute", "--spec", "examples/a1-minus-t.json", "--matrix", "2",
                       "--targets", "s", "--maxdeg", "4")
    assert out.startswith("1 + (-L)*s^2")


def test_output_is_deterministic():
    argv = ("verify", "inclusion-exclusion", "--count", "15", "--seed", "9", "--format", "json")
    assert run(*argv) == run(*argv)
    argv = ("density", "m-singular", "--space", "P2", "--m", "1", "--floor", "-10", "--format", "csv")
    assert run(*argv) == run(*argv)
