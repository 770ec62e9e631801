"""The acceptance battery: one check per criterion, shared by the CLI and the tests.

Criteria 6 and 7 are stated in a form that is false as written; their
literal checks are kept and reported, next to corrected checks ``6b``/``7b``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import config, ffverify as ff
from .config import conf_class, partitions
from .euler import EulerFactorSpec, expand, realize
from .motring import (
    ONE, ZERO, FilteredClass, L, LClass, TSeries, affine_class, gl_class, projective_class,
    sigma_series,
)
from .theorems import (
    complete_intersection_density, complete_intersection_spec, m_singular_density,
    p1_smooth_class, surjection_density, vakil_wood_density,
)
from .witt import (
    conjecture_p1_distances, ghost, hadamard_dist, kapranov_special_witt, sigma_s, specialize,
    witt_add, witt_mul, WittDivisor,
)


@dataclass(frozen=True)
class CriterionResult:
    key: str
    title: str
    passed: bool
    detail: str
    known_failure: bool = False

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} [{self.key}] {self.title}: {self.detail}"


def _vw_product(n: int) -> LClass:
    out = ONE
    for j in range(1, n + 2):
        out = out * (ONE - LClass({-j: 1}))
    return out


def criterion_1() -> CriterionResult:
    config.clear_cache()
    start = time.perf_counter()
    ok = all(conf_class(L, [d]) == LClass({d: 1, d - 1: -1}) for d in range(2, 13))
    ok &= all(conf_class(projective_class(1), [d]) == LClass({d: 1, d - 2: -1})
              for d in range(3, 13))
    elapsed = time.perf_counter() - start
    return CriterionResult("1", "configuration classes", ok and elapsed < 1.0,
                           f"formulas {'hold' if ok else 'fail'}, {elapsed:.3f}s")


def criterion_2() -> CriterionResult:
    minus = expand(EulerFactorSpec.single(L, [(1, -ONE)]), 10)
    ok_minus = minus == TSeries.univariate([ONE, -L], "t", 10)
    plus = expand(EulerFactorSpec.single(L, [(1, ONE)]), 10)
    num = TSeries.univariate([ONE, ZERO, -L], "t", 10)
    den = TSeries.univariate([ONE, -L], "t", 10)
    ok_plus = plus == num * den.inverse()
    return CriterionResult("2", "Euler engine sharp identities", ok_minus and ok_plus,
                           f"prod(1-t)={'ok' if ok_minus else 'bad'}, prod(1+t)={'ok' if ok_plus else 'bad'}")


def criterion_3() -> CriterionResult:
    bad = []
    for name, x in (("A1", L), ("P1", projective_class(1)), ("P2", projective_class(2)),
                    ("A2", affine_class(2))):
        prod = expand(EulerFactorSpec.single(x, [(1, -ONE)]), 10) * sigma_series(x, 10)
        if prod != TSeries.one(("t",), 10):
            bad.append(name)
    return CriterionResult("3", "Kapranov inverse", not bad, "all equal 1" if not bad else f"bad: {bad}")


def criterion_4() -> CriterionResult:
    start = time.perf_counter()
    ok = all(vakil_wood_density(projective_class(n), n).exact == _vw_product(n) for n in range(0, 5))
    gl = vakil_wood_density(projective_class(1), 1).exact == gl_class(1).shift(-4)
    elapsed = time.perf_counter() - start
    return CriterionResult("4", "Vakil-Wood densities", ok and gl and elapsed < 1.0,
                           f"products {'ok' if ok else 'bad'}, GL2 {'ok' if gl else 'bad'}, {elapsed:.3f}s")


def criterion_5() -> CriterionResult:
    notes = []
    ok = True
    for n in range(1, 4):
        ci = complete_intersection_density(n, 1, -30).truncated
        vw = vakil_wood_density(projective_class(n), n, -30).truncated
        if not ci.agrees_above(vw, -30):
            ok = False
            notes.append(f"CI({n},1) != VW")
    a = complete_intersection_density(2, 2, -20).truncated
    b = complete_intersection_density(2, 2, -25).truncated
    if not a.agrees_above(b, -20):
        ok = False
        notes.append("CI(2,2) unstable")
    spec = complete_intersection_spec(1, 1)
    for q in (2, 3):
        partial, tail = realize(spec, 0, q, 20)
        B = 14 if q == 2 else 9
        head, bound = ff.classical_euler_product(spec, q, 0, B,
                                                 counts=[ff.closed_point_counts("P1", q, B)])
        gap = abs(partial - head)
        if gap > tail + bound:
            ok = False
            notes.append(f"q={q} gap {float(gap):.3g} > {float(tail + bound):.3g}")
        else:
            notes.append(f"q={q} gap {float(gap):.2e} <= {float(tail + bound):.2e}")
    return CriterionResult("5", "complete intersections", ok, "; ".join(notes))


def _m_singular_partial(M: int, floor: int) -> FilteredClass:
    total = FilteredClass(ZERO, floor)
    for m in range(M + 1):
        total = total + m_singular_density(projective_class(2), 2, m, floor).truncated
    return total


def criterion_6() -> CriterionResult:
    r0 = m_singular_density(projective_class(2), 2, 0, -10)
    vw = vakil_wood_density(projective_class(2), 2, -10)
    first = r0.truncated.agrees_above(vw.truncated, -10)
    diff = (FilteredClass(ONE, -10) - _m_singular_partial(4, -10)).terms
    second = not diff
    return CriterionResult(
        "6", "m-singular (as stated: sum_{m<=4} = 1 above floor -10)", first and second,
        f"m=0 {'= VW' if first else '!= VW'}; 1 - sum = {diff if diff else 0} above -10",
        known_failure=True)


def criterion_6b() -> CriterionResult:
    M = 4
    r0 = m_singular_density(projective_class(2), 2, 0, -10)
    vw = vakil_wood_density(projective_class(2), 2, -10)
    first = r0.truncated.agrees_above(vw.truncated, -10)
    diff = (FilteredClass(ONE, -10) - _m_singular_partial(M, -10)).terms
    # the omitted terms m > M lie in Fil_{(M+1)(dim - N)} = Fil_{-(M+1)}
    ok = first and (not diff or diff.dim() <= -(M + 1))
    return CriterionResult("6b", "m-singular (corrected: agreement above -(M+1))", ok,
                           f"1 - sum_{{m<=4}} = {diff} + O(L^-10), top exponent {diff.dim()}")


def criterion_7() -> CriterionResult:
    residuals = []
    for n in range(1, 4):
        rep = surjection_density(n, -25)
        residuals.append(rep.residual)
    ok = all(not r for r in residuals)
    return CriterionResult(
        "7", "surjections (as stated: Euler product = prod Z(L^-k))", ok,
        "residuals " + ", ".join("0" if not r else f"top {r.dim()}" for r in residuals),
        known_failure=True)


def criterion_7b() -> CriterionResult:
    residuals = [surjection_density(n, -25).inverse_residual for n in range(1, 4)]
    ok = all(not r for r in residuals)
    return CriterionResult("7b", "surjections (corrected: Euler product = prod Z(L^-k)^-1)", ok,
                           "residuals " + ", ".join(str(r or 0) for r in residuals))


def criterion_8(samples: int = 10_000, seed: int = 0) -> CriterionResult:
    start = time.perf_counter()
    notes = []
    ok = True
    for q in (2, 3, 5):
        for d in range(3, 7):
            smooth, total = ff.count_smooth_forms(1, d, q)
            expected = Fraction(q ** (d + 1)) * (1 - Fraction(1, q)) * (1 - Fraction(1, q * q))
            if smooth != expected or total != q ** (d + 1):
                ok = False
                notes.append(f"q={q} d={d}: {smooth} != {expected}")
        for d in (1, 2):
            smooth, _ = ff.count_smooth_forms(1, d, q)
            if smooth != p1_smooth_class(d).evaluate(q):
                ok = False
                notes.append(f"q={q} d={d} disagrees with p1_smooth_class")
    table = {d: ff.count_smooth_forms(2, d, 2) for d in (1, 2, 3)}
    rng = np.random.default_rng(seed)
    field = ff.get_field(2)
    cache: dict = {}
    disagreements = 0
    for _ in range(samples):
        d = int(rng.integers(1, 4))
        coeffs = tuple(int(c) for c in rng.integers(0, 2, size=(d + 1) * (d + 2) // 2))
        key = (d, coeffs)
        if key not in cache:
            a = bool(ff.plane_singular_search(field, d, np.array([coeffs]))[0])
            b = ff.plane_singular_groebner(field, d, coeffs)
            cache[key] = a == b
        disagreements += not cache[key]
    if disagreements:
        ok = False
    elapsed = time.perf_counter() - start
    notes.append("plane q=2: " + ", ".join(f"d={d} {s}/{t}" for d, (s, t) in table.items()))
    notes.append(f"oracle disagreements {disagreements}/{samples}")
    notes.append(f"{elapsed:.1f}s")
    return CriterionResult("8", "finite-field exhaustive", ok and elapsed < 60, "; ".join(notes))


def criterion_9() -> CriterionResult:
    bad = []
    for q in (2, 3):
        for name, x in (("A1", affine_class(1)), ("P1", projective_class(1)),
                        ("P2", projective_class(2))):
            X = ff.frobset_for_preset(name, q, 5)
            for total in range(1, 6):
                for M in partitions(total):
                    if ff.conf_count(X, M) != conf_class(x, M).evaluate(q):
                        bad.append((q, name, M))
    return CriterionResult("9", "oracle equivalence", not bad,
                           "all multisets agree" if not bad else f"bad: {bad[:5]}")


def criterion_10(seed: int = 0) -> CriterionResult:
    start = time.perf_counter()
    f = ff.quadratic_point_map()
    collapse = True
    for k in range(1, 13):
        lhs, terms = ff.inclusion_exclusion_terms(f, k)
        expected = {(1,): 2, (2,): 1, (1, 1): -2} if k % 2 == 0 else {(1,): 0, (2,): 1, (1, 1): 0}
        collapse &= lhs == 1 and terms == expected
    collapse &= ff.check_zeta_pole(f.source, 12)
    rng = np.random.default_rng(seed)
    maps_ok = sum(ff.check_inclusion_exclusion(ff.random_frobmap(rng, 8), 12) for _ in range(100))
    sets_ok = sum(ff.check_zeta_pole(ff.random_frobset(rng, 7), 12) for _ in range(50))
    elapsed = time.perf_counter() - start
    ok = collapse and maps_ok == 100 and sets_ok == 50 and elapsed < 10
    return CriterionResult("10", "inclusion-exclusion and zeta pole identity", ok,
                           f"worked example {'ok' if collapse else 'bad'}, maps {maps_ok}/100, "
                           f"sets {sets_ok}/50, {elapsed:.2f}s")


def _random_divisor(rnd: random.Random) -> WittDivisor:
    return WittDivisor({Fraction(rnd.randint(1, 9), rnd.randint(1, 9)): rnd.randint(-3, 3)
                        for _ in range(rnd.randint(0, 4))})


def criterion_11(seed: int = 0) -> CriterionResult:
    ok_ghost = all(
        ghost(specialize(projective_class(n), q), k) == sum(q ** (j * k) for j in range(n + 1))
        for q in (2, 3) for n in range(0, 6) for k in range(1, 6))
    ok_sigma = True
    for q in (2, 3):
        coeffs = sigma_s(specialize(projective_class(1), q), 4)
        ok_sigma &= all(coeffs[k] == specialize(projective_class(k), q) for k in range(5))
    rnd = random.Random(seed)
    ok_ring = True
    for _ in range(100):
        f, g = _random_divisor(rnd), _random_divisor(rnd)
        k = rnd.randint(1, 6)
        ok_ring &= ghost(witt_add(f, g), k) == ghost(f, k) + ghost(g, k)
        ok_ring &= ghost(witt_mul(f, g), k) == ghost(f, k) * ghost(g, k)
    ok = ok_ghost and ok_sigma and ok_ring
    return CriterionResult("11", "Witt ring", ok,
                           f"ghost {ok_ghost}, sigma {ok_sigma}, ring morphism {ok_ring}")


def criterion_12() -> CriterionResult:
    zeros = all(conjecture_p1_distances(d, q) == (0, 0, 0) for d in range(3, 9) for q in (2, 3, 5))
    h1 = conjecture_p1_distances(1, 2)[2]
    h2 = conjecture_p1_distances(2, 2)[2]
    # recomputed by hand: d=1 leaves {1/2: 1, 1/8: -1}, d=2 leaves {1/4: 1, 1/8: -1}
    manual1 = hadamard_dist(WittDivisor({1: 1, Fraction(1, 4): -1}),
                            WittDivisor({1: 1, Fraction(1, 2): -1, Fraction(1, 4): -1, Fraction(1, 8): 1}))
    manual2 = hadamard_dist(WittDivisor({1: 1, Fraction(1, 2): -1}),
                            WittDivisor({1: 1, Fraction(1, 2): -1, Fraction(1, 4): -1, Fraction(1, 8): 1}))
    values = h1 == Fraction(5, 8) == manual1 and h2 == Fraction(3, 8) == manual2
    decreasing = h1 > h2 > conjecture_p1_distances(3, 2)[2]
    ok = zeros and values and decreasing
    return CriterionResult("12", "P1 conjecture distances", ok,
                           f"d>=3 zero {zeros}, d=1 {h1}, d=2 {h2}, decreasing {decreasing}")


def criterion_13() -> CriterionResult:
    x = projective_class(1)
    K = 10
    notes = []
    ok = True
    for q in (2, 3):
        v = kapranov_special_witt(x, q, 2, K)
        w = kapranov_special_witt(x, q, 2, K + 5)
        step = hadamard_dist(v.head, w.head)
        target = specialize((ONE - LClass({-1: 1})) * (ONE - LClass({-2: 1})), q)
        inv = hadamard_dist(v.inverse_head(), target)
        ok &= step <= v.tail_bound and inv <= v.tail_bound
        notes.append(f"q={q}: step {float(step):.3g}, inverse {float(inv):.3g}, "
                     f"bound {float(v.tail_bound):.3g}")
    return CriterionResult("13", "Kapranov special value (Hadamard)", ok, "; ".join(notes))


CRITERIA: dict[str, Callable[[], CriterionResult]] = {
    "1": criterion_1, "2": criterion_2, "3": criterion_3, "4": criterion_4, "5": criterion_5,
    "6": criterion_6, "6b": criterion_6b, "7": criterion_7, "7b": criterion_7b,
    "8": criterion_8, "9": criterion_9, "10": criterion_10, "11": criterion_11,
    "12": criterion_12, "13": criterion_13,
}


def run_all(keys=None) -> list[CriterionResult]:
    return [CRITERIA[k]() for k in (keys or CRITERIA)]


__all__ = ["CriterionResult", "CRITERIA", "run_all"] + [f"criterion_{k}" for k in CRITERIA]
