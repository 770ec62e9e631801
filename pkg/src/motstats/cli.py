"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 divergence
or unreachable precision.
"""

from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import acceptance, ffverify as ff
from .config import conf_class, kapranov_m
from .euler import EulerFactorSpec, PrecisionError, evaluate_at, expand, substitute_monomial
from .motring import (
    PRESET_DIMS, PRESETS, DivergenceError, FilteredClass, LClass, TSeries, gl_class,
    kapranov_special_value, resolve_class, sigma_series, sym_n,
)
from .theorems import (
    DensityReport, complete_intersection_density, lnk, m_singular_density, p1_smooth_class,
    reports_to_csv, surjection_density, vakil_wood_density,
)
from .witt import (
    WittDivisor, conjecture_p1_distances, ghost, hadamard_dist, sigma_s, specialize, weight_dist,
    witt_dist,
)


class UsageError(ValueError):
    pass


class VerificationFailed(Exception):
    def __init__(self, output: "Output"):
        super().__init__("verification failed")
        self.output = output


@dataclass
class Output:
    data: Any
    pretty: str
    rows: list[dict] | None = None


# ---------------------------------------------------------------------------
# parsing helpers


_FUNCS = {
    "gl": lambda n: gl_class(int(n)),
    "lnk": lambda n, k: lnk(int(n), int(k)),
    "p1smooth": lambda d: p1_smooth_class(int(d)),
    "sym": lambda c, n: sym_n(LClass.coerce(c), int(n)),
    "conf": lambda c, *ms: conf_class(LClass.coerce(c), [int(m) for m in ms]),
}


def eval_class(text: str) -> LClass:
    """Evaluate ``+ - * **`` expressions over ``L``, presets, integers and helpers."""
    src = text.replace("^", "**").replace("𝕃", "L")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"cannot parse {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id == "L":
                return LClass({1: 1})
            if node.id.upper() in PRESETS:
                return PRESETS[node.id.upper()]
            raise UsageError(f"unknown name {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return LClass.coerce(a) + b if isinstance(a, int) else a + b
            if isinstance(node.op, ast.Sub):
                return LClass.coerce(a) - b if isinstance(a, int) else a - b
            if isinstance(node.op, ast.Mult):
                return LClass.coerce(a) * b if isinstance(a, int) else a * b
            if isinstance(node.op, ast.Pow):
                if not isinstance(b, int):
                    raise UsageError("exponents must be integers")
                if isinstance(a, int):
                    if b < 0:
                        raise UsageError("negative powers of integers are not classes")
                    return a ** b
                return a ** b
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
            return _FUNCS[node.func.id](*[ev(a) for a in node.args])
        raise UsageError(f"unsupported expression in {text!r}")

    return LClass.coerce(ev(tree))


def parse_class(text: str) -> LClass:
    try:
        return resolve_class(text)
    except ValueError:
        return eval_class(text)


def parse_ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def space_dim(name: str, dim: int | None) -> int:
    if dim is not None:
        return dim
    key = name.strip().upper()
    if key in PRESET_DIMS:
        return PRESET_DIMS[key]
    raise UsageError(f"--dim is required for non-preset space {name!r}")


def need_q(args) -> int:
    if args.q is None:
        raise UsageError("--q is required")
    return args.q


def load_spec(path: str) -> EulerFactorSpec:
    p = Path(path)
    if p.exists():
        return EulerFactorSpec.load(p)
    bundled = resources.files("motstats") / "data" / p.name
    if bundled.is_file():
        return EulerFactorSpec.from_json(json.loads(bundled.read_text()))
    raise UsageError(f"spec file {path!r} not found")


def frac(x) -> str:
    return str(Fraction(x))


def series_json(s: TSeries) -> dict:
    return s.to_json()


def divisor_pretty(f: WittDivisor) -> str:
    if not f:
        return "0"
    return " + ".join(f"{m}[{a}]" for a, m in f.items())


# ---------------------------------------------------------------------------
# handlers


def cmd_class(args) -> Output:
    if args.action == "eval":
        c = eval_class(args.expr)
    elif args.action == "gl":
        c = gl_class(args.n)
    elif args.action == "lnk":
        c = lnk(args.n, args.k)
    else:
        c = p1_smooth_class(args.d)
    data: dict = {"class": c.to_json()}
    pretty = str(c)
    if args.q is not None:
        v = c.evaluate(args.q)
        data["value"] = frac(v)
        pretty += f"\nat L={args.q}: {v}"
    return Output(data, pretty, [{"class": str(c), "value": data.get("value", "")}])


def cmd_zeta(args) -> Output:
    x = parse_class(args.cls)
    if args.action == "kapranov":
        s = sigma_series(x, args.maxdeg)
        rows = [{"n": n, "coeff": str(c)} for n, c in enumerate(s.to_list())]
        return Output(series_json(s), str(s), rows)
    value = kapranov_special_value(x, args.N)
    if args.inverse:
        value = value.inverse()
    exp = value.expansion(args.floor)
    data = {"factors": [[e, m] for e, m in value.factors], "expansion": exp.to_json()}
    if value.exact is not None:
        data["exact"] = value.exact.to_json()
    factors = " * ".join(f"(1 - L^{e})^{-m}" for e, m in value.factors) or "1"
    return Output(data, f"{factors}\n= {exp}", [{"floor": args.floor, "expansion": str(exp.terms)}])


def cmd_conf(args) -> Output:
    x = parse_class(args.cls)
    if args.action == "class":
        groups = parse_ints(args.groups)
        c = conf_class(x, groups)
        return Output({"groups": sorted(groups), "class": c.to_json()}, str(c),
                      [{"groups": " ".join(map(str, sorted(groups))), "class": str(c)}])
    s = kapranov_m(x, args.m, args.maxdeg)
    rows = [{"n": n, "coeff": str(c)} for n, c in enumerate(s.to_list())]
    return Output(series_json(s), str(s), rows)


def _assignment(args, spec: EulerFactorSpec):
    if args.assign:
        out = {}
        for part in args.assign.split(","):
            name, _, val = part.partition("=")
            if name not in spec.variables or not val:
                raise UsageError(f"bad assignment {part!r}")
            out[name] = int(val)
        return out
    return args.N


def cmd_euler(args) -> Output:
    spec = load_spec(args.spec)
    if args.action == "expand":
        s = expand(spec, args.maxdeg, method=args.method)
        rows = [{"monomial": " ".join(map(str, m)), "coeff": str(c)} for m, c in s.items()]
        return Output(series_json(s), str(s), rows)
    if args.action == "evaluate":
        value = evaluate_at(spec, _assignment(args, spec), args.floor, method=args.method)
        return Output(value.to_json(), str(value), [{"floor": args.floor, "value": str(value.terms)}])
    matrix = [parse_ints(r) for r in args.matrix.split(";")]
    twists = parse_ints(args.twists) if args.twists else [0] * len(matrix)
    targets = args.targets.split(",")
    s = expand(spec, args.maxdeg, method=args.method)
    out = substitute_monomial(s, matrix, twists, targets, args.maxdeg)
    rows = [{"monomial": " ".join(map(str, m)), "coeff": str(c)} for m, c in out.items()]
    return Output(series_json(out), str(out), rows)


def cmd_density(args) -> Output:
    if args.action == "surjection":
        reps = [surjection_density(n, args.floor) for n in parse_ints(args.n)]
        data = [r.to_json() for r in reps]
        pretty = "\n".join(
            f"n={r.n}: euler {r.euler.truncated}\n  prod Z(L^-k)^-1 residual {r.inverse_residual or 0}"
            f"\n  prod Z(L^-k) residual {r.residual or 0}" for r in reps)
        rows = [{"n": r.n, "floor": r.floor, "euler": str(r.euler.truncated.terms),
                 "residual": str(r.residual), "inverse_residual": str(r.inverse_residual)}
                for r in reps]
        return Output(data[0] if len(data) == 1 else data, pretty, rows)
    reports: list[DensityReport] = []
    if args.action == "vakil-wood":
        x = parse_class(args.space)
        reports.append(vakil_wood_density(x, space_dim(args.space, args.dim), args.floor))
    elif args.action == "complete-intersection":
        for n in parse_ints(args.n):
            for k in parse_ints(args.k):
                reports.append(complete_intersection_density(n, k, args.floor))
    else:
        x = parse_class(args.space)
        dim = space_dim(args.space, args.dim)
        for m in parse_ints(args.m):
            reports.append(m_singular_density(x, dim, m, args.floor))
    data = [r.to_json() for r in reports]
    if args.action == "vakil-wood" and args.format == "json":
        data = [{"exact": r.exact.to_json()} if r.exact is not None else r.to_json() for r in reports]
    pretty = "\n".join(
        (str(r.exact) if r.exact is not None else str(r.truncated))
        + ("" if len(reports) == 1 else f"   {dict((k, v) for k, v in r.metadata.items() if k not in ('problem', 'class'))}")
        for r in reports)
    return Output(data[0] if len(data) == 1 else data, pretty,
                  list(csv.DictReader(io.StringIO(reports_to_csv(reports)))))


def cmd_witt(args) -> Output:
    q = Fraction(need_q(args))
    if args.action == "conjecture-p1":
        rows = []
        for d in parse_ints(args.d):
            w, r, h = conjecture_p1_distances(d, q, args.N)
            rows.append({"d": d, "q": frac(q), "witt": frac(w), "weight": frac(r), "hadamard": frac(h)})
        pretty = "\n".join(f"d={r['d']}: witt {r['witt']}, weight {r['weight']}, hadamard {r['hadamard']}"
                           for r in rows)
        return Output(rows[0] if len(rows) == 1 else rows, pretty, rows)
    f = specialize(parse_class(args.cls), q)
    if args.action == "specialize":
        return Output(f.to_json(), divisor_pretty(f),
                      [{"point": str(a), "multiplicity": m} for a, m in f.items()])
    if args.action == "ghost":
        v = ghost(f, args.k)
        return Output({"ghost": frac(v), "k": args.k}, str(v), [{"k": args.k, "ghost": frac(v)}])
    if args.action == "sigma":
        coeffs = sigma_s(f, args.maxdeg)
        data = [c.to_json() for c in coeffs]
        pretty = "\n".join(f"s^{k}: {divisor_pretty(c)}" for k, c in enumerate(coeffs))
        rows = [{"k": k, "divisor": divisor_pretty(c)} for k, c in enumerate(coeffs)]
        return Output(data, pretty, rows)
    g = specialize(parse_class(args.other), q)
    res = {"witt": frac(witt_dist(f, g, args.N)), "weight": frac(weight_dist(f, g)),
           "hadamard": frac(hadamard_dist(f, g))}
    return Output(res, ", ".join(f"{k} {v}" for k, v in res.items()), [res])


def _verify_output(ok: bool, data, pretty: str, rows=None) -> Output:
    out = Output(data, pretty, rows)
    if not ok:
        raise VerificationFailed(out)
    return out


def cmd_verify(args) -> Output:
    if args.action == "ff-smooth":
        rows = ff.density_table(args.n, parse_ints(args.d), need_q(args), args.mode,
                                samples=args.samples, seed=args.seed, budget=args.budget)
        rows = [{k: (frac(v) if isinstance(v, Fraction) else v) for k, v in r.items()} for r in rows]
        pretty = "\n".join(f"d={r['d']}: {r['smooth_count']}/{r['total']} = {r['density']}"
                           f" (prediction {r['prediction']}, gap {r['gap']})" for r in rows)
        return Output(rows, pretty, rows)
    if args.action == "ff-config":
        from .config import partitions
        q = need_q(args)
        x = parse_class(args.space)
        X = ff.frobset_for_preset(args.space, q, args.total)
        rows = []
        for total in range(1, args.total + 1):
            for M in partitions(total):
                a = ff.conf_count(X, M)
                b = conf_class(x, M).evaluate(q)
                rows.append({"groups": " ".join(map(str, M)), "count": a, "class_at_q": frac(b),
                             "agree": a == b})
        ok = all(r["agree"] for r in rows)
        pretty = "\n".join(f"{r['groups']}: {r['count']} vs {r['class_at_q']}" for r in rows)
        return _verify_output(ok, rows, pretty + f"\n{'all agree' if ok else 'MISMATCH'}", rows)
    rng = np.random.default_rng(args.seed)
    if args.action == "inclusion-exclusion":
        results = [ff.check_inclusion_exclusion(ff.random_frobmap(rng, 8), args.kmax)
                   for _ in range(args.count)]
    else:
        results = [ff.check_zeta_pole(ff.random_frobset(rng, 7), args.kmax) for _ in range(args.count)]
    passed = sum(results)
    data = {"passed": passed, "total": args.count, "seed": args.seed}
    return _verify_output(passed == args.count, data, f"{passed}/{args.count} passed", [data])


def cmd_suite(args) -> Output:
    results = acceptance.run_all()
    rows = [{"key": r.key, "passed": r.passed, "known_failure": r.known_failure, "detail": r.detail}
            for r in results]
    pretty = "\n".join(r.line() for r in results)
    failed = [r for r in results if not r.passed and not (args.allow_known and r.known_failure)]
    return _verify_output(not failed, rows, pretty, rows)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["pretty", "json", "csv"], default="pretty")
    common.add_argument("--floor", type=int, default=-30, help="filtration floor (default -30)")
    common.add_argument("--maxdeg", type=int, default=10, help="series truncation degree (default 10)")
    common.add_argument("--q", type=int, help="field size or realization value of L")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1, help="worker processes for enumeration")
    common.add_argument("--budget", type=int, help="exhaustive enumeration budget (env MOTSTATS_FF_BUDGET)")

    parser = argparse.ArgumentParser(prog="motstats", description="Motivic statistics engine")
    sub = parser.add_subparsers(dest="command", required=True)

    def group(name, help_text):
        p = sub.add_parser(name, help=help_text)
        return p.add_subparsers(dest="action", required=True)

    def add(g, name, **kw):
        return g.add_parser(name, parents=[common], **kw)

    g = group("class", "Laurent-polynomial classes")
    add(g, "eval").add_argument("expr")
    add(g, "gl").add_argument("n", type=int)
    p = add(g, "lnk")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    add(g, "p1-smooth").add_argument("d", type=int)

    g = group("zeta", "Kapranov zeta functions")
    add(g, "kapranov").add_argument("--class", dest="cls", required=True)
    p = add(g, "special")
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--inverse", action="store_true")

    g = group("conf", "configuration spaces")
    p = add(g, "class")
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--groups", required=True, help="group sizes, e.g. 2,1,1")
    p = add(g, "kapranov-m")
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--m", type=int, required=True)

    g = group("euler", "motivic Euler products")
    for name in ("expand", "evaluate", "substitute"):
        p = add(g, name)
        p.add_argument("--spec", required=True)
        p.add_argument("--method", choices=["configurations", "power"],
                       default="power" if name == "evaluate" else "configurations")
        if name == "evaluate":
            p.add_argument("--N", type=int, default=0, help="t = L^-N for every variable")
            p.add_argument("--assign", help="per-variable N, e.g. t=2,s=0")
        if name == "substitute":
            p.add_argument("--matrix", required=True, help="rows per source variable, e.g. '1;1'")
            p.add_argument("--twists", help="L-twists per source variable")
            p.add_argument("--targets", required=True, help="target variable names")

    g = group("density", "asymptotic densities")
    p = add(g, "vakil-wood")
    p.add_argument("--space", required=True)
    p.add_argument("--dim", type=int)
    p = add(g, "complete-intersection")
    p.add_argument("--n", required=True)
    p.add_argument("--k", required=True)
    p = add(g, "m-singular")
    p.add_argument("--space", required=True)
    p.add_argument("--dim", type=int)
    p.add_argument("--m", required=True)
    add(g, "surjection").add_argument("--n", required=True)

    g = group("witt", "rational Witt vectors")
    for name in ("specialize", "ghost", "sigma", "dist"):
        p = add(g, name)
        p.add_argument("--class", dest="cls", required=True)
        if name == "ghost":
            p.add_argument("--k", type=int, required=True)
        if name == "dist":
            p.add_argument("--other", required=True)
            p.add_argument("--N", type=int, default=16, help="Taylor depth for the Witt distance")
    p = add(g, "conjecture-p1")
    p.add_argument("--d", required=True)
    p.add_argument("--N", type=int, default=16)

    g = group("verify", "finite-field verification")
    p = add(g, "ff-smooth")
    p.add_argument("--n", type=int, choices=[1, 2], required=True)
    p.add_argument("--d", required=True)
    p.add_argument("--mode", choices=["exhaustive", "sample"], default="exhaustive")
    p.add_argument("--samples", type=int, default=10_000)
    p = add(g, "ff-config")
    p.add_argument("--space", required=True)
    p.add_argument("--total", type=int, default=5)
    for name, count in (("inclusion-exclusion", 100), ("zeta-pole", 50)):
        p = add(g, name)
        p.add_argument("--count", type=int, default=count)
        p.add_argument("--kmax", type=int, default=12)
    p = add(g, "suite")
    p.add_argument("--allow-known", action="store_true",
                   help="do not fail on the two criteria known to be false as stated")
    return parser


HANDLERS = {"class": cmd_class, "zeta": cmd_zeta, "conf": cmd_conf, "euler": cmd_euler,
            "density": cmd_density, "witt": cmd_witt}


def render(out: Output, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(out.data, separators=(",", ":"))
    if fmt == "csv":
        rows = out.rows
        if rows is None:
            rows = [out.data] if isinstance(out.data, dict) else list(out.data)
        fields: list[str] = []
        for r in rows:
            fields.extend(k for k in r if k not in fields)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: (json.dumps(v, separators=(",", ":")) if isinstance(v, (dict, list)) else v)
                             for k, v in r.items()})
        return buf.getvalue().rstrip("\n")
    return out.pretty


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "verify":
            out = cmd_suite(args) if args.action == "suite" else cmd_verify(args)
        else:
            out = HANDLERS[args.command](args)
    except VerificationFailed as exc:
        print(render(exc.output, args.format), file=stdout)
        print("verification failed", file=stderr)
        return 1
    except (DivergenceError, PrecisionError) as exc:
        print(f"divergence: {exc}", file=stderr)
        return 3
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    print(render(out, args.format), file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "build_parser", "eval_class"]
