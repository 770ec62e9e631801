"""Motivic Euler products with stratum-constant Laurent coefficients.

A spec describes the factor ``1 + sum_i a_i t^{m_i}`` over each stratum of a
variety; the product over all points is expanded as a truncated power series.

Two expansion routes are provided:

``configurations``
    Split each coefficient into signed unit cells ``+-L^j``.  Distinct
    cells label distinct points; positive cells contribute one group each,
    negative cells expand ``Sym^n(-a)`` over compositions.  Every
    combination contributes a configuration-space class.

``power``
    Factor ``1 + sum a t^m = prod_m sigma_{t^m}(c_m)`` with ``c_m`` in
    Z[L, L^-1].  Since the product over points of ``sigma_{t^m}(L^j)`` is
    ``Z_X(L^j t^m)``, the Euler product equals ``prod_m sigma_{t^m}(c_m [X])``.

Both routes are exact and are cross-checked in the test suite.
"""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .config import GroupMultiset, composition_counts, conf_class
from .motring import (
    NEG_INF, ONE, ZERO, DivergenceError, FilteredClass, LClass, TSeries,
    iter_monomials, sigma_list,
)

DEFAULT_DEGREE_LIMIT = 24
DEFAULT_STRATUM_LIMIT = 16
DEFAULT_EVAL_DEGREE_LIMIT = 64


class PrecisionError(ValueError):
    """The requested floor cannot be reached within the degree limit."""


@dataclass(frozen=True)
class SignedCell:
    sign: int
    exponent: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


def signed_cells(c: LClass) -> list[SignedCell]:
    """``c`` as a list of unit cells, one per unit of each coefficient."""
    out = []
    for j, v in c.items():
        out.extend([SignedCell(1 if v > 0 else -1, j)] * abs(v))
    return out


@dataclass(frozen=True)
class Term:
    monomial: tuple[int, ...]
    coeff: LClass


@dataclass(frozen=True)
class Stratum:
    base: LClass
    terms: tuple[Term, ...]

    def factor(self, variables: Sequence[str], D: int) -> TSeries:
        series = TSeries.one(variables, D)
        for t in self.terms:
            series = series + TSeries(variables, D, {t.monomial: t.coeff})
        return series


@dataclass(frozen=True)
class EulerFactorSpec:
    """``prod_{x in X} (1 + sum a_i t^{m_i})`` with ``X`` split into strata."""

    variables: tuple[str, ...]
    strata: tuple[Stratum, ...]
    stratum_limit: int = field(default=DEFAULT_STRATUM_LIMIT, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "strata", tuple(self.strata))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        if len(self.strata) > self.stratum_limit:
            raise ValueError(f"more than {self.stratum_limit} strata")
        n = len(self.variables)
        for s in self.strata:
            if not s.base:
                raise ValueError("stratum base classes must be nonzero")
            for t in s.terms:
                if len(t.monomial) != n:
                    raise ValueError("monomial length does not match the variables")
                if min(t.monomial, default=0) < 0 or sum(t.monomial) < 1:
                    raise ValueError("monomials must have total degree >= 1")

    @classmethod
    def single(cls, base: LClass, terms: Iterable[tuple[int | Sequence[int], LClass]],
               variables: Sequence[str] = ("t",)) -> "EulerFactorSpec":
        """One stratum; monomials may be given as an int for a single variable."""
        ts = []
        for m, c in terms:
            m = (m,) if isinstance(m, int) else tuple(m)
            ts.append(Term(m, LClass.coerce(c)))
        return cls(tuple(variables), (Stratum(LClass.coerce(base), tuple(ts)),))

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "strata": [
                {
                    "base": s.base.to_json(),
                    "terms": [
                        {
                            "monomial": {v: a for v, a in zip(self.variables, t.monomial) if a},
                            "coeff": t.coeff.to_json(),
                        }
                        for t in s.terms
                    ],
                }
                for s in self.strata
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "EulerFactorSpec":
        variables = tuple(data["variables"])
        index = {v: i for i, v in enumerate(variables)}
        strata = []
        for s in data["strata"]:
            terms = []
            for t in s.get("terms", []):
                mono = [0] * len(variables)
                for name, a in t["monomial"].items():
                    if name not in index:
                        raise ValueError(f"term uses undeclared variable {name!r}")
                    mono[index[name]] = int(a)
                terms.append(Term(tuple(mono), LClass.from_json(t["coeff"])))
            strata.append(Stratum(LClass.from_json(s["base"]), tuple(terms)))
        return cls(variables, tuple(strata))

    @classmethod
    def load(cls, path: str | Path) -> "EulerFactorSpec":
        return cls.from_json(json.loads(Path(path).read_text()))


# ---------------------------------------------------------------------------
# configuration route


def _stratum_expand_configurations(stratum: Stratum, variables: Sequence[str], D: int) -> TSeries:
    nvars = len(variables)
    labels: list[tuple[tuple[int, ...], SignedCell]] = []
    for t in stratum.terms:
        for cell in signed_cells(t.coeff):
            labels.append((t.monomial, cell))

    # state: monomial -> {(groups, scalar exponent): integer weight}
    zero = (0,) * nvars
    states: dict[tuple[int, ...], dict[tuple[GroupMultiset, int], int]] = {
        zero: {(GroupMultiset(), 0): 1}
    }
    for mono, cell in labels:
        deg = sum(mono)
        nxt: dict[tuple[int, ...], dict] = defaultdict(lambda: defaultdict(int))
        for m, table in states.items():
            room = D - sum(m)
            for n in range(0, room // deg + 1):
                target = tuple(a + n * b for a, b in zip(m, mono))
                if n == 0:
                    options = [(GroupMultiset(), 1)]
                elif cell.sign > 0:
                    options = [(GroupMultiset([n]), 1)]
                else:
                    options = [((g), (-1) ** len(g) * cnt) for g, cnt in composition_counts(n).items()]
                slot = nxt[target]
                for (groups, e), w in table.items():
                    for g, sgn in options:
                        slot[(groups + g, e + cell.exponent * n)] += w * sgn
        states = {m: {k: v for k, v in t.items() if v} for m, t in nxt.items()}

    coeffs: dict[tuple[int, ...], LClass] = {}
    for m, table in states.items():
        total = ZERO
        for (groups, e), w in table.items():
            total = total + conf_class(stratum.base, groups).shift(e) * w
        if total:
            coeffs[m] = total
    return TSeries(variables, D, coeffs)


# ---------------------------------------------------------------------------
# power-structure route


def power_factorization(factor: TSeries) -> list[tuple[tuple[int, ...], LClass]]:
    """Write a series with constant term 1 as ``prod_m sigma_{t^m}(c_m)``.

    Returns the nonzero ``(m, c_m)`` in graded order.
    """
    if factor.constant() != ONE:
        raise ValueError("factor must have constant term 1")
    D = factor.maxdeg
    variables = factor.variables
    rem = factor
    out = []
    for m in iter_monomials(len(variables), D):
        if not any(m):
            continue
        c = rem[m]
        if c:
            out.append((m, c))
            rem = rem * _sigma_at_monomial(-c, m, variables, D)
    return out


def _sigma_at_monomial(c: LClass, m: tuple[int, ...], variables, D: int) -> TSeries:
    deg = sum(m)
    coeffs = sigma_list(c, D // deg)
    return TSeries(variables, D, {tuple(i * a for a in m): v for i, v in enumerate(coeffs)})


def _stratum_expand_power(stratum: Stratum, variables: Sequence[str], D: int) -> TSeries:
    out = TSeries.one(variables, D)
    for m, c in power_factorization(stratum.factor(variables, D)):
        out = out * _sigma_at_monomial(c * stratum.base, m, variables, D)
    return out


def expand(spec: EulerFactorSpec, D: int, method: str = "configurations") -> TSeries:
    """Expand the Euler product up to total degree ``D``."""
    if D < 0:
        raise ValueError("D must be nonnegative")
    if method == "configurations":
        one_stratum = _stratum_expand_configurations
    elif method == "power":
        one_stratum = _stratum_expand_power
    else:
        raise ValueError(f"unknown method {method!r}")
    out = TSeries.one(spec.variables, D)
    for s in spec.strata:
        out = out * one_stratum(s, spec.variables, D)
    return out


def substitute_monomial(series: TSeries, A: Sequence[Sequence[int]], twists: Sequence[int],
                        targets: Sequence[str] = ("t",), maxdeg: int | None = None) -> TSeries:
    """Apply ``t_i -> L^{twists[i]} prod_j s_j^{A[i][j]}``.

    Only monomial images are accepted, so substitutions like ``t -> -t`` or
    ``t -> s1 + s2`` cannot be expressed.
    """
    return series.substitute_monomial(A, twists, targets, maxdeg)


def substitute_spec(spec: EulerFactorSpec, A: Sequence[Sequence[int]], twists: Sequence[int],
                    targets: Sequence[str] = ("t",)) -> EulerFactorSpec:
    """The EulerFactorSpec whose factor is the substituted factor, term by term."""
    strata = []
    for s in spec.strata:
        terms = []
        for t in s.terms:
            image = [0] * len(targets)
            shift = 0
            for a, row, n in zip(t.monomial, A, twists):
                shift += a * n
                for j, r in enumerate(row):
                    image[j] += a * r
            terms.append(Term(tuple(image), t.coeff.shift(shift)))
        strata.append(Stratum(s.base, tuple(terms)))
    for row in A:
        if not any(row) or any(a < 0 for a in row):
            raise ValueError("each variable must map to a nonconstant monomial")
    return EulerFactorSpec(tuple(targets), tuple(strata))


# ---------------------------------------------------------------------------
# dimension bounds and evaluation


def _ratio(stratum: Stratum, t: Term, weights: Sequence[int] | None = None) -> Fraction:
    shift = sum(a * n for a, n in zip(t.monomial, weights)) if weights else 0
    return Fraction(stratum.base.dim() + t.coeff.dim() - shift, sum(t.monomial))


def dim_bound(spec: EulerFactorSpec, k: int):
    """Upper bound for the dimension of every total-degree-``k`` coefficient.

    Valid when every stratum base has dimension ``>= 0``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    ratios = [_ratio(s, t) for s in spec.strata for t in s.terms]
    if not ratios:
        return NEG_INF
    return math.floor(k * max(ratios))


def evaluation_slope(spec: EulerFactorSpec, weights: Sequence[int]) -> Fraction | float:
    """Max over terms of ``(dim base + dim a - N.m) / |m|``.

    After substituting ``t_i -> L^{-N_i}``, every degree-``k`` coefficient has
    dimension at most ``k`` times this slope.
    """
    ratios = [_ratio(s, t, weights) for s in spec.strata for t in s.terms]
    return max(ratios) if ratios else NEG_INF


def degree_cutoff(slope, floor: int) -> int:
    """Largest degree that can still reach above ``floor``."""
    if slope == NEG_INF:
        return 0
    if slope >= 0:
        raise DivergenceError(f"evaluation point is outside the radius of convergence (slope {slope})")
    # need k * slope <= floor for all k > K
    return max(0, math.ceil(Fraction(floor) / slope) - 1)


def _assignment_weights(spec: EulerFactorSpec, assignment: Mapping[str, int] | int) -> list[int]:
    if isinstance(assignment, int):
        weights = [assignment] * len(spec.variables)
    else:
        unknown = set(assignment) - set(spec.variables)
        if unknown:
            raise ValueError(f"assignment names undeclared variables {sorted(unknown)}")
        missing = set(spec.variables) - set(assignment)
        if missing:
            raise ValueError(f"assignment missing variables {sorted(missing)}")
        weights = [int(assignment[v]) for v in spec.variables]
    if any(n < 0 for n in weights):
        raise ValueError("evaluation points must be L^-N with N >= 0")
    return weights


def collapse_to_one_variable(spec: EulerFactorSpec, weights: Sequence[int],
                             var: str = "s") -> EulerFactorSpec:
    """Substitute ``t_i -> L^{-N_i} s`` in every term."""
    n = len(spec.variables)
    return substitute_spec(spec, [[1]] * n, [-w for w in weights], (var,))


def _lmul_above(x: LClass, y: LClass, floor) -> LClass:
    c: dict[int, int] = {}
    for e1, v1 in x._c.items():
        for e2, v2 in y._c.items():
            e = e1 + e2
            if e > floor:
                c[e] = c.get(e, 0) + v1 * v2
    return LClass(c)


def _series_mul_above(a: Sequence[LClass], b: Sequence[LClass], K: int, floor) -> list[LClass]:
    out: list[dict[int, int]] = [dict() for _ in range(K + 1)]
    for i, x in enumerate(a[: K + 1]):
        if not x:
            continue
        for j, y in enumerate(b[: K + 1 - i]):
            if not y:
                continue
            slot = out[i + j]
            for e1, v1 in x._c.items():
                for e2, v2 in y._c.items():
                    e = e1 + e2
                    if e > floor:
                        slot[e] = slot.get(e, 0) + v1 * v2
    return [LClass(c) for c in out]


def _sigma_spread(c: LClass, k: int, K: int, floor) -> list[LClass]:
    coeffs = sigma_list(c, K // k)
    out = [ZERO] * (K + 1)
    for i, v in enumerate(coeffs):
        out[i * k] = v.above(floor)
    return out


def _filtered_power_stratum(base: LClass, factor: list[LClass], K: int, floor: int) -> list[LClass]:
    """Expansion of ``prod_x factor`` modulo ``Fil_floor`` in every coefficient.

    Requires every non-constant coefficient ``b`` of ``factor`` (already
    twisted) to satisfy ``dim b + dim base < 0``; then every intermediate
    series has coefficients of dimension ``<= 0`` and truncation commutes
    with the products below.
    """
    dx = base.dim()
    inner = floor - dx
    rem = [v.above(inner) for v in factor]
    out = [ONE] + [ZERO] * K
    for k in range(1, K + 1):
        c = rem[k]
        if not c:
            continue
        rem = _series_mul_above(rem, _sigma_spread(-c, k, K, inner), K, inner)
        out = _series_mul_above(out, _sigma_spread(_lmul_above(c, base, floor - 0), k, K, floor), K, floor)
    return out


def evaluate_at(spec: EulerFactorSpec, assignment: Mapping[str, int] | int, floor: int, *,
                max_degree: int = DEFAULT_EVAL_DEGREE_LIMIT, method: str = "power") -> FilteredClass:
    """Value of the Euler product at ``t_i = L^{-N_i}``, modulo ``Fil_floor``.

    ``assignment`` maps each variable to ``N_i >= 0`` (an int applies to all).
    Every coefficient of total degree ``k`` has dimension at most
    ``k * slope`` after the substitution, so degrees beyond
    ``degree_cutoff(slope, floor)`` cannot contribute above the floor.
    """
    weights = _assignment_weights(spec, assignment)
    for s in spec.strata:
        if s.base.dim() < 0:
            raise ValueError("evaluation needs stratum bases of dimension >= 0")
    slope = evaluation_slope(spec, weights)
    K = degree_cutoff(slope, floor)
    if K > max_degree:
        raise PrecisionError(f"floor {floor} needs degree {K} > limit {max_degree}")
    flat = collapse_to_one_variable(spec, weights)
    if floor >= 0:
        # every non-constant term has negative dimension
        return FilteredClass(ONE, floor)
    if method == "power":
        total = [ONE] + [ZERO] * K
        for s in flat.strata:
            factor = s.factor(flat.variables, K).to_list()
            part = _filtered_power_stratum(s.base, factor, K, floor)
            total = _series_mul_above(total, part, K, floor)
        value = ZERO
        for v in total:
            value = value + v
        return FilteredClass(value, floor)
    series = expand(flat, K, method=method)
    value = ZERO
    for v in series.to_list():
        value = value + v
    return FilteredClass(value, floor)


def realize(spec: EulerFactorSpec, assignment: Mapping[str, int] | int, q, K: int
            ) -> tuple[Fraction, Fraction]:
    """Point-count realization at ``L = q``: partial sum through degree ``K`` and a tail bound.

    The bound majorizes each local factor ``1 + sum b`` by
    ``prod_cells (1 - |cell| u)^(-1)`` and each base by its zeta function,
    so every stratum base must have nonnegative coefficients (a genuine
    point count).
    """
    q = Fraction(q)
    weights = _assignment_weights(spec, assignment)
    flat = collapse_to_one_variable(spec, weights)
    series = expand(flat, K, method="power")
    partial = sum((v.evaluate(q) for v in series.to_list()), Fraction(0))
    # majorant: prod over strata, cells (k, j, mult) and base monomials i of
    # (1 - q^(i+j) s^k)^(-x_i * mult), evaluated at s = 1
    factors: list[tuple[int, Fraction, int]] = []
    for s in flat.strata:
        if any(v < 0 for _, v in s.base.items()):
            raise ValueError("realize needs bases with nonnegative coefficients")
        for t in s.terms:
            k = t.monomial[0]
            for j, c in t.coeff.items():
                for i, xi in s.base.items():
                    r = q ** (i + j)
                    if r >= 1:
                        raise DivergenceError("majorant diverges at this point")
                    factors.append((k, r, xi * abs(c)))
    full = Fraction(1)
    series_coeffs = [Fraction(1)] + [Fraction(0)] * K
    for k, r, mult in factors:
        full /= (1 - r) ** mult
        # (1 - r u^k)^(-mult) = sum_i binom(mult+i-1, i) r^i u^(k i)
        local = [Fraction(0)] * (K + 1)
        for i in range(0, K // k + 1):
            local[i * k] = math.comb(mult + i - 1, i) * r ** i
        series_coeffs = [
            sum((series_coeffs[a] * local[n - a] for a in range(n + 1)), Fraction(0))
            for n in range(K + 1)
        ]
    tail = full - sum(series_coeffs, Fraction(0))
    return partial, tail


__all__ = [
    "SignedCell", "Term", "Stratum", "EulerFactorSpec", "PrecisionError", "signed_cells",
    "expand", "power_factorization", "substitute_monomial", "substitute_spec", "dim_bound",
    "evaluation_slope", "degree_cutoff", "evaluate_at", "realize",
    "collapse_to_one_variable", "DEFAULT_DEGREE_LIMIT", "DEFAULT_STRATUM_LIMIT",
    "DEFAULT_EVAL_DEGREE_LIMIT",
]
