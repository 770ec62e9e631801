"""Rational Witt vectors represented by finite divisors.

A ``WittDivisor`` ``{a: k_a}`` stands for the rational function
``f(t) = prod_a (1 - a t)^(-k_a)``.  Witt addition multiplies functions (adds
divisors); Witt multiplication is the group-ring product ``[a][b] = [ab]``.
Zeta functions of cellular classes specialize to such divisors via
``L^j -> [q^j]``.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .motring import DivergenceError, LClass, sym_n
from .theorems import gl_class, p1_smooth_class


class WittDivisor:
    """Finitely supported divisor on nonzero rationals."""

    __slots__ = ("_k",)

    def __init__(self, support: Mapping | None = None):
        k: dict[Fraction, int] = {}
        for a, m in (support or {}).items():
            a = Fraction(a)
            if a == 0:
                raise ValueError("divisor support must avoid 0")
            m = int(m)
            if m:
                k[a] = k.get(a, 0) + m
                if not k[a]:
                    del k[a]
        self._k = k

    @property
    def support(self) -> dict[Fraction, int]:
        return dict(self._k)

    def items(self):
        return sorted(self._k.items(), key=lambda kv: kv[0], reverse=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WittDivisor):
            return NotImplemented
        return self._k == other._k

    def __hash__(self) -> int:
        return hash(frozenset(self._k.items()))

    def __bool__(self) -> bool:
        return bool(self._k)

    def __add__(self, other: "WittDivisor") -> "WittDivisor":
        return witt_add(self, other)

    def __neg__(self) -> "WittDivisor":
        return WittDivisor({a: -m for a, m in self._k.items()})

    def __sub__(self, other: "WittDivisor") -> "WittDivisor":
        return witt_add(self, -other)

    def __mul__(self, other: "WittDivisor") -> "WittDivisor":
        return witt_mul(self, other)

    def scale_support(self, c) -> "WittDivisor":
        """Multiply every support point by ``c``: ``f(t) -> f(c t)``."""
        c = Fraction(c)
        return WittDivisor({a * c: m for a, m in self._k.items()})

    def to_json(self) -> dict:
        return {"support": {str(a): m for a, m in self.items()}}

    @classmethod
    def from_json(cls, data: Mapping) -> "WittDivisor":
        return cls({Fraction(a): int(m) for a, m in data["support"].items()})

    def __repr__(self) -> str:
        body = ", ".join(f"{a}: {m}" for a, m in self.items())
        return f"WittDivisor({{{body}}})"


UNIT = WittDivisor({1: 1})
EMPTY = WittDivisor()


def specialize(c: LClass, q) -> WittDivisor:
    """``L^j -> [q^j]``: the zeta function of the class over ``F_q``."""
    q = Fraction(q)
    if q <= 1:
        raise ValueError("q must exceed 1")
    return WittDivisor({q ** j: v for j, v in c.items()})


def witt_add(f: WittDivisor, g: WittDivisor) -> WittDivisor:
    out = dict(f._k)
    for a, m in g._k.items():
        out[a] = out.get(a, 0) + m
    return WittDivisor(out)


def witt_mul(f: WittDivisor, g: WittDivisor) -> WittDivisor:
    out: dict[Fraction, int] = defaultdict(int)
    for a, m in f._k.items():
        for b, n in g._k.items():
            out[a * b] += m * n
    return WittDivisor(out)


def ghost(f: WittDivisor, k: int) -> Fraction:
    """``sum_a k_a a^k``; for a zeta function, the point count over ``F_{q^k}``."""
    if k < 1:
        raise ValueError("ghost index must be >= 1")
    return sum((m * a ** k for a, m in f._k.items()), Fraction(0))


def _witt_pow_series(a: Fraction, m: int, D: int) -> list[WittDivisor]:
    """Coefficients of ``(1 - s[a])^(-m)`` in the group ring."""
    out = []
    for i in range(D + 1):
        if m >= 0:
            b = math.comb(m + i - 1, i) if i else 1
        else:
            b = (-1) ** i * math.comb(-m, i)
        out.append(WittDivisor({a ** i: b}) if b else EMPTY)
    return out


def _gr_series_mul(x: list[WittDivisor], y: list[WittDivisor], D: int) -> list[WittDivisor]:
    out = [EMPTY] * (D + 1)
    for i in range(D + 1):
        if not x[i]:
            continue
        for j in range(D + 1 - i):
            if y[j]:
                out[i + j] = out[i + j] + x[i] * y[j]
    return out


def sigma_s(f: WittDivisor, D: int) -> list[WittDivisor]:
    """Coefficients of ``sigma_s(f) = prod_a (1 - s[a])^(-k_a)`` up to ``s^D``.

    The coefficient of ``s^0`` is the Witt unit ``[1]``.
    """
    if D < 0:
        raise ValueError("D must be nonnegative")
    out = [UNIT] + [EMPTY] * D
    for a, m in f._k.items():
        out = _gr_series_mul(out, _witt_pow_series(a, m, D), D)
    return out


def hadamard_norm(f: WittDivisor) -> Fraction:
    return sum((abs(m) * abs(a) for a, m in f._k.items()), Fraction(0))


def hadamard_dist(f: WittDivisor, g: WittDivisor) -> Fraction:
    return hadamard_norm(f - g)


def weight_dist(f: WittDivisor, g: WittDivisor) -> Fraction:
    diff = f - g
    return max((abs(a) for a in diff._k), default=Fraction(0))


def taylor_coeffs(f: WittDivisor, N: int) -> list[Fraction]:
    """First ``N`` Taylor coefficients at 0, from the Newton recurrence.

    ``t f'/f = sum_k ghost(f, k) t^k`` gives ``n c_n = sum_i g_i c_{n-i}``.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N == 0:
        return []
    ghosts = [Fraction(0)] + [ghost(f, k) for k in range(1, N)]
    c = [Fraction(1)]
    for n in range(1, N):
        c.append(sum((ghosts[i] * c[n - i] for i in range(1, n + 1)), Fraction(0)) / n)
    return c


def witt_dist(f: WittDivisor, g: WittDivisor, N: int) -> Fraction:
    """``2^-j`` for the first Taylor index ``j <= N`` where ``f`` and ``g`` differ."""
    cf = taylor_coeffs(f, N + 1)
    cg = taylor_coeffs(g, N + 1)
    for j in range(N + 1):
        if cf[j] != cg[j]:
            return Fraction(1, 2 ** j)
    return Fraction(0)


@dataclass(frozen=True)
class HadamardValue:
    """Truncated Witt sum ``head`` with ``hadamard_norm(value - head) <= tail_bound``."""

    head: WittDivisor
    tail_bound: Fraction
    K: int
    q: Fraction
    N: int

    def inverse_head(self, M: int | None = None) -> WittDivisor:
        """Multiplicative Witt inverse of ``head``, kept on the support ``q^-m``, ``m <= M``.

        ``head`` is ``[1]`` plus points ``q^-m`` with ``m >= 1``, i.e. a power
        series ``P(u)`` in ``u = [q^-1]`` with ``P(0) = 1``; the inverse is
        ``1/P(u)`` truncated after ``u^M`` (default ``4 N (K + 1)``).
        """
        M = 4 * self.N * (self.K + 1) if M is None else M
        P = [0] * (M + 1)
        for a, m in self.head.items():
            e = _neg_log(a, self.q)
            if e <= M:
                P[e] += m
        if P[0] != 1:
            raise ValueError("head is not a unit of the form [1] + O([q^-1])")
        inv = [1] + [0] * M
        for n in range(1, M + 1):
            inv[n] = -sum(P[i] * inv[n - i] for i in range(1, n + 1) if P[i])
        return WittDivisor({self.q ** -n: c for n, c in enumerate(inv) if c})


def _neg_log(a: Fraction, q: Fraction) -> int:
    """``m`` with ``a = q^-m``, ``m >= 0``."""
    m = 0
    while a < 1:
        a *= q
        m += 1
    if a != 1:
        raise ValueError(f"{a} is not a nonpositive power of {q}")
    return m


def kapranov_special_witt(x: LClass, q, N: int, K: int) -> HadamardValue:
    """``Z^Kap_x([q^-N]) = sum_k sigma^k(Z_x) [q^-kN]`` truncated after ``k = K``.

    Terms ``k = 0..K`` are kept (``k = 0`` is the unit ``[1]``).  The tail is
    bounded in the Hadamard norm by the coefficientwise majorant
    ``g(u) = prod_j (1 - q^j u)^(-|c_j|)``: the ``k``-th Witt summand has norm
    at most ``[u^k] g(u) q^(-kN)``, and ``g(q^-N)`` is finite because
    ``N > dim x``.
    """
    q = Fraction(q)
    if x and x.dim() >= N:
        raise DivergenceError(f"Kapranov special value at [q^-{N}] diverges for dim {x.dim()}")
    if K < 0:
        raise ValueError("K must be nonnegative")
    a = q ** -N
    head = EMPTY
    for k in range(K + 1):
        head = head + specialize(sym_n(x, k), q).scale_support(a ** k)
    # majorant series coefficients up to K and its closed-form value at u = a
    full = Fraction(1)
    partial = [Fraction(1)] + [Fraction(0)] * K
    for j, c in x.items():
        r = q ** j
        m = abs(c)
        full /= (1 - r * a) ** m
        local = [math.comb(m + i - 1, i) * r ** i for i in range(K + 1)]
        partial = [sum((partial[i] * local[n - i] for i in range(n + 1)), Fraction(0))
                   for n in range(K + 1)]
    tail = full - sum((partial[k] * a ** k for k in range(K + 1)), Fraction(0))
    return HadamardValue(head, tail, K, q, N)


def conjecture_p1_distances(d: int, q, N: int = 16) -> tuple[Fraction, Fraction, Fraction]:
    """Distances between the normalized smooth-form zeta function and its limit.

    Compares ``specialize(p1_smooth_class(d) L^-(d+1), q)`` with
    ``specialize(gl_class(1) L^-4, q)``; returns ``(witt, weight, hadamard)``
    where the Witt distance looks at Taylor coefficients up to index ``N``.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    f = specialize(p1_smooth_class(d).shift(-(d + 1)), q)
    g = specialize(gl_class(1).shift(-4), q)
    return witt_dist(f, g, N), weight_dist(f, g), hadamard_dist(f, g)


__all__ = [
    "WittDivisor", "HadamardValue", "UNIT", "EMPTY", "specialize", "witt_add", "witt_mul",
    "ghost", "sigma_s", "hadamard_norm", "hadamard_dist", "weight_dist", "taylor_coeffs",
    "witt_dist", "kapranov_special_witt", "conjecture_p1_distances",
]
