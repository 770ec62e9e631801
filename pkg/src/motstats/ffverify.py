"""Finite-field brute-force oracles.

Everything here counts points directly: smooth forms by exhaustive or
sampled enumeration, closed points by Moebius inversion, and labeled
configurations on finite sets carrying a Frobenius permutation.  None of it
calls the symbolic engine, so agreement with the engine is evidence.
"""

from __future__ import annotations

import math
import os
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .config import compositions, composition_counts

DEFAULT_BUDGET = 2 ** 30
MAX_FIELD_SIZE = 2 ** 20
ADD_TABLE_LIMIT = 1024


class BudgetExceeded(ValueError):
    """An exhaustive enumeration would exceed the configured budget."""


def ff_budget(budget: int | None = None) -> int:
    """Explicit budget, else ``MOTSTATS_FF_BUDGET``, else ``2^30``."""
    if budget is not None:
        return int(budget)
    env = os.environ.get("MOTSTATS_FF_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """``(p, k)`` with ``q = p^k``."""
    q = int(q)
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = _prime_factors(q)[0]
    k = 0
    n = q
    while n % p == 0:
        n //= p
        k += 1
    if n != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius needs n >= 1")
    out = 1
    for p in _prime_factors(n):
        if n % (p * p) == 0:
            return 0
        out = -out
    return out


# ---------------------------------------------------------------------------
# finite fields


def _polymulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    """Product of residues mod the monic ``f`` (coefficient lists, low first)."""
    k = len(f) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c:
            for j in range(k + 1):
                prod[i - k + j] = (prod[i - k + j] - c * f[j]) % p
    return prod[:k]


def _polypowmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    k = len(f) - 1
    result = [1] + [0] * (k - 1)
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    return result


def _is_primitive(f: list[int], p: int) -> bool:
    """``x`` generates the unit group of ``F_p[x]/f`` (so ``f`` is irreducible)."""
    k = len(f) - 1
    q = p ** k
    x = [0] * k
    if k == 1:
        x = [(-f[0]) % p]
    else:
        x[1] = 1
    one = [1] + [0] * (k - 1)
    if _polypowmod(x, q - 1, f, p) != one:
        return False
    return all(_polypowmod(x, (q - 1) // r, f, p) != one for r in _prime_factors(q - 1))


def primitive_modulus(p: int, k: int) -> tuple[int, ...]:
    """First monic primitive polynomial of degree ``k`` over ``F_p``.

    Candidates ``x^k + c_{k-1} x^{k-1} + ... + c_0`` are ordered by the
    integer ``sum c_i p^i``; the result is returned low coefficient first,
    including the leading 1.
    """
    for idx in range(1, p ** k):
        low = [(idx // p ** i) % p for i in range(k)]
        if low[0] == 0:
            continue
        f = low + [1]
        if _is_primitive(f, p):
            return tuple(f)
    raise ValueError(f"no primitive polynomial of degree {k} over F_{p}")


class FqField:
    """``F_q`` with ``q = p^k``; elements are ints whose base-``p`` digits are
    the coefficients of a polynomial in the generator ``x`` (low first).
    """

    def __init__(self, p: int, k: int = 1):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("k must be >= 1")
        q = p ** k
        if q > MAX_FIELD_SIZE:
            raise ValueError(f"field size {q} exceeds {MAX_FIELD_SIZE}")
        self.p, self.k, self.q = p, k, q
        self.modulus = primitive_modulus(p, k)
        self._pows = [p ** i for i in range(k)]
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        f = self.modulus
        if k == 1:
            g = (-f[0]) % p
            v = 1
            for i in range(q - 1):
                exp[i] = v
                log[v] = i
                v = v * g % p
        else:
            digits = [1] + [0] * (k - 1)
            for i in range(q - 1):
                v = sum(d * w for d, w in zip(digits, self._pows))
                exp[i] = v
                log[v] = i
                top = digits[-1]
                digits = [0] + digits[:-1]
                if top:
                    digits = [(d - top * c) % p for d, c in zip(digits, f)]
        exp[q - 1:] = exp[:q - 1]
        self._exp = exp
        self._log = log
        self._exp_list = exp.tolist()
        self._log_list = log.tolist()
        self._add_table = None
        if k > 1 and p > 2 and q <= ADD_TABLE_LIMIT:
            idx = np.arange(q, dtype=np.int64)
            self._add_table = self._add_digits(idx[:, None], idx[None, :]).tolist()

    def __repr__(self) -> str:
        return f"FqField(p={self.p}, k={self.k})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FqField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    @property
    def elements(self) -> range:
        return range(self.q)

    # scalar arithmetic

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        return int(self._add_digits(np.int64(a), np.int64(b)))

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        if self.k == 1:
            return self.p - a
        p = self.p
        return sum(((p - (a // w) % p) % p) * w for w in self._pows)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        return self._exp_list[self._log_list[a] + self._log_list[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self._exp_list[(-self._log_list[a]) % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            return 0
        return self._exp_list[(self._log_list[a] * n) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` (an element of the prime field)."""
        return n % self.p

    # vectorized arithmetic on int64 arrays

    def _add_digits(self, a, b):
        p = self.p
        out = 0
        for w in self._pows:
            out = out + (((a // w) % p + (b // w) % p) % p) * w
        return out

    def add_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.k == 1:
            return (a + b) % self.p
        return self._add_digits(a, b)

    def mul_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow_arr(self, a: np.ndarray, n: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if n == 0:
            return np.ones_like(a)
        out = self._exp[(self._log[a] * n) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def digits_arr(self, a: np.ndarray) -> np.ndarray:
        """Base-``p`` digits along a new last axis."""
        a = np.asarray(a, dtype=np.int64)
        return np.stack([(a // w) % self.p for w in self._pows], axis=-1)

    def check_frobenius(self, samples: int = 64, seed: int = 0) -> bool:
        """``a^q = a`` on sampled elements."""
        rng = np.random.default_rng(seed)
        a = rng.integers(0, self.q, size=samples)
        return bool(np.all(self.pow_arr(a, self.q) == a))


@lru_cache(maxsize=None)
def get_field(q: int) -> FqField:
    p, k = prime_power(q)
    return FqField(p, k)


def as_field(field: FqField | int) -> FqField:
    return field if isinstance(field, FqField) else get_field(int(field))


@lru_cache(maxsize=None)
def _embedding_cached(small: FqField, big: FqField) -> tuple[int, ...]:
    if small.p != big.p or big.k % small.k:
        raise ValueError(f"{small} does not embed in {big}")
    if small.k == 1:
        return tuple(range(small.p))
    # root of the defining polynomial of `small` inside `big`
    ys = np.arange(big.q, dtype=np.int64)
    val = np.zeros_like(ys)
    for c in reversed(small.modulus):
        val = big.add_arr(big.mul_arr(val, ys), np.full_like(ys, c))
    beta = int(np.flatnonzero(val == 0)[0])
    out = [0] * small.q
    for j in range(small.q - 1):
        out[small._exp_list[j]] = big.pow(beta, j)
    return tuple(out)


def embedding(small: FqField, big: FqField) -> np.ndarray:
    """Field embedding ``F_small -> F_big`` as a lookup array."""
    return np.array(_embedding_cached(small, big), dtype=np.int64)


def extension(field: FqField, e: int) -> FqField:
    return FqField(field.p, field.k * e)


# ---------------------------------------------------------------------------
# univariate polynomials over a field (coefficient lists, low first)


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def _poly_divmod_rem(F: FqField, a: list[int], b: list[int]) -> list[int]:
    a = _trim(list(a))
    b = _trim(b)
    inv_lead = F.inv(b[-1])
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = F.mul(a[-1], inv_lead)
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            if bi:
                a[shift + i] = F.sub(a[shift + i], F.mul(c, bi))
        a = _trim(a)
    return a


def poly_gcd(F: FqField, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Monic gcd (``[]`` for ``gcd(0, 0)``)."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_divmod_rem(F, a, b)
    if a:
        inv = F.inv(a[-1])
        a = [F.mul(c, inv) for c in a]
    return a


def poly_derivative(F: FqField, a: Sequence[int]) -> list[int]:
    return _trim([F.mul(F.from_int(i), c) for i, c in enumerate(a)][1:])


def _det(F: FqField, rows: list[list[int]]) -> int:
    """Determinant by Gaussian elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = F.neg(det)
        det = F.mul(det, m[col][col])
        inv = F.inv(m[col][col])
        for r in range(col + 1, n):
            if m[r][col]:
                factor = F.mul(m[r][col], inv)
                m[r] = [F.sub(x, F.mul(factor, y)) for x, y in zip(m[r], m[col])]
    return det


def sylvester_resultant(F: FqField, a: Sequence[int], b: Sequence[int], da: int, db: int) -> int:
    """Resultant with formal degrees ``da``, ``db`` (coefficients padded with zeros)."""
    if da == 0 and db == 0:
        return 1
    a = list(a) + [0] * (da + 1 - len(a))
    b = list(b) + [0] * (db + 1 - len(b))
    n = da + db
    rows = []
    for i in range(db):
        row = [0] * n
        for j, c in enumerate(reversed(a[:da + 1])):
            row[i + j] = c
        rows.append(row)
    for i in range(da):
        row = [0] * n
        for j, c in enumerate(reversed(b[:db + 1])):
            row[i + j] = c
        rows.append(row)
    return _det(F, rows)


# ---------------------------------------------------------------------------
# binary forms: F = sum_i a_i X^i Y^(d-i)


def binary_singular_gcd(F: FqField, coeffs: Sequence[int]) -> bool:
    """Common zero of ``F``, ``F_X``, ``F_Y`` in ``P^1`` via gcds."""
    a = list(coeffs)
    d = len(a) - 1
    if not any(a):
        return True
    # the point (1:0): F = a_d, F_X = d a_d, F_Y = a_{d-1}
    if a[d] == 0 and (d == 0 or a[d - 1] == 0):
        return True
    f = a
    fx = [F.mul(F.from_int(i), c) for i, c in enumerate(a)][1:]
    fy = [F.mul(F.from_int(d - i), c) for i, c in enumerate(a)]
    g = poly_gcd(F, poly_gcd(F, f, fx), fy)
    return len(g) > 1


def binary_singular_resultant(F: FqField, coeffs: Sequence[int]) -> bool:
    """Vanishing of ``Res(f, f')`` with formal degrees, after the root at infinity."""
    a = list(coeffs)
    d = len(a) - 1
    if not any(a):
        return True
    if a[d]:
        m = d
    elif d >= 1 and a[d - 1]:
        # a simple root at infinity; the affine part has degree d-1
        m = d - 1
    else:
        return True
    if m == 0:
        return False
    f = a[:m + 1]
    return sylvester_resultant(F, f, poly_derivative(F, f), m, m - 1) == 0


# ---------------------------------------------------------------------------
# plane curves


def plane_monomials(d: int) -> list[tuple[int, int, int]]:
    """Degree-``d`` monomials in ``X, Y, Z``, lexicographically decreasing."""
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


def plane_emax(d: int) -> int:
    return max(1, (d - 1) ** 2)


def _search_degrees(emax: int) -> list[int]:
    """Extension degrees whose fields together contain every ``F_{q^e}``, ``e <= emax``."""
    return [e for e in range(1, emax + 1) if 2 * e > emax]


def projective_points(field: FqField, n: int) -> np.ndarray:
    """Normalized points of ``P^n(F)`` as an ``(N, n+1)`` array."""
    q = field.q
    blocks = []
    for lead in range(n + 1):
        free = n - lead
        grid = np.indices((q,) * free).reshape(free, -1).T if free else np.zeros((1, 0), dtype=np.int64)
        block = np.zeros((grid.shape[0], n + 1), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = grid
        blocks.append(block)
    return np.concatenate(blocks, axis=0)


def _scalar_times(F: FqField, n: int, arr: np.ndarray) -> np.ndarray:
    return F.mul_arr(np.full_like(arr, F.from_int(n)), arr)


def _monomial_values(F: FqField, pts: np.ndarray, mono: Sequence[int]) -> np.ndarray:
    out = np.ones(pts.shape[0], dtype=np.int64)
    for i, a in enumerate(mono):
        if a:
            out = F.mul_arr(out, F.pow_arr(pts[:, i], a))
    return out


def _gradient_values(F: FqField, pts: np.ndarray, mono: Sequence[int]) -> list[np.ndarray]:
    """Values of the monomial and its partial derivatives at ``pts``."""
    vals = [_monomial_values(F, pts, mono)]
    for i, a in enumerate(mono):
        if a % F.p == 0:
            vals.append(np.zeros(pts.shape[0], dtype=np.int64))
        else:
            lowered = list(mono)
            lowered[i] -= 1
            vals.append(_scalar_times(F, a, _monomial_values(F, pts, lowered)))
    return vals


@lru_cache(maxsize=32)
def _plane_design(field: FqField, d: int, e: int) -> tuple[np.ndarray, int]:
    """F_p-linear evaluation matrix for forms over ``field`` at ``P^2(F_{q^e})``.

    Rows index (monomial, F_p-basis element of ``field``); columns index
    (point, polynomial in {F, F_X, F_Y, F_Z}, F_p-digit).  A form with
    coefficient digits ``c`` has ``c @ D mod p`` equal to the digits of the
    four values at every point.
    """
    big = extension(field, e)
    emb = embedding(field, big)
    pts = projective_points(big, 2)
    basis = [int(emb[field.p ** j]) for j in range(field.k)]
    rows = []
    for mono in plane_monomials(d):
        grads = _gradient_values(big, pts, mono)
        for b in basis:
            vals = np.stack([big.mul_arr(np.full_like(g, b), g) for g in grads], axis=1)
            rows.append(big.digits_arr(vals).reshape(-1))
    return np.array(rows, dtype=np.float64), pts.shape[0]


def _form_digits(field: FqField, indices: np.ndarray, ncoef: int) -> np.ndarray:
    """Base-``p`` digits of form indices, ``ncoef * k`` of them, low first."""
    p = field.p
    out = np.empty((indices.shape[0], ncoef * field.k), dtype=np.float64)
    rem = indices.astype(object) if field.q ** ncoef >= 2 ** 62 else indices.astype(np.int64)
    for i in range(ncoef * field.k):
        out[:, i] = rem % p
        rem = rem // p
    return out


def _coeff_digits(field: FqField, coeffs: np.ndarray) -> np.ndarray:
    """Digits of explicit coefficient rows ``(N, ncoef)``."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    return field.digits_arr(coeffs).reshape(coeffs.shape[0], -1).astype(np.float64)


def plane_singular_search(field: FqField, d: int, coeff_rows: np.ndarray) -> np.ndarray:
    """Boolean array: each form has a common zero of ``F`` and its partials.

    Searches ``P^2(F_{q^e})`` for ``e <= (d-1)^2``: a singular point of a
    reduced curve lies in the intersection of two partials without a common
    component, of degree at most ``(d-1)^2``; a positive-dimensional
    singular locus meets an ``F_q``-line in points of degree at most ``d``.
    """
    digits = _coeff_digits(field, coeff_rows)
    return _plane_search_digits(field, d, digits)


def _plane_search_digits(field: FqField, d: int, digits: np.ndarray) -> np.ndarray:
    n = digits.shape[0]
    singular = np.zeros(n, dtype=bool)
    for e in _search_degrees(plane_emax(d)):
        D, npts = _plane_design(field, d, e)
        width = D.shape[1] // npts
        chunk = max(1, 4_000_000 // D.shape[1])
        for s in range(0, n, chunk):
            block = digits[s:s + chunk]
            vals = np.mod(block @ D, field.p).reshape(block.shape[0], npts, width)
            singular[s:s + chunk] |= ~vals.any(axis=2).all(axis=1)
    return singular


def conic_discriminant(F: FqField, coeffs: Sequence[int]) -> int:
    """``4abc + def - af^2 - be^2 - cd^2`` for ``aX^2+bY^2+cZ^2+dXY+eXZ+fYZ``.

    ``coeffs`` follow :func:`plane_monomials` order: X^2, XY, XZ, Y^2, YZ, Z^2.
    """
    x2, xy, xz, y2, yz, z2 = coeffs
    m = F.mul
    terms = [
        m(F.from_int(4), m(x2, m(y2, z2))),
        m(xy, m(xz, yz)),
        F.neg(m(x2, m(yz, yz))),
        F.neg(m(y2, m(xz, xz))),
        F.neg(m(z2, m(xy, xy))),
    ]
    out = 0
    for t in terms:
        out = F.add(out, t)
    return out


# homogeneous Groebner bases in grevlex order


def _grevlex(m: tuple[int, ...]) -> tuple:
    return (sum(m),) + tuple(-e for e in reversed(m[1:]))


def _lead(poly: dict) -> tuple[int, ...]:
    return max(poly, key=_grevlex)


def _monic(F: FqField, poly: dict) -> dict:
    inv = F.inv(poly[_lead(poly)])
    return {m: F.mul(c, inv) for m, c in poly.items()}


def _sub_scaled(F: FqField, a: dict, b: dict, c: int, shift: tuple[int, ...]) -> dict:
    """``a - c * x^shift * b``."""
    out = dict(a)
    for m, v in b.items():
        key = tuple(x + y for x, y in zip(m, shift))
        nv = F.sub(out.get(key, 0), F.mul(c, v))
        if nv:
            out[key] = nv
        else:
            out.pop(key, None)
    return out


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _reduce(F: FqField, poly: dict, basis: list[dict], leads: list[tuple[int, ...]]) -> dict:
    rem: dict = {}
    poly = dict(poly)
    while poly:
        lm = _lead(poly)
        for g, lg in zip(basis, leads):
            if _divides(lg, lm):
                shift = tuple(x - y for x, y in zip(lm, lg))
                poly = _sub_scaled(F, poly, g, poly[lm], shift)
                break
        else:
            rem[lm] = poly.pop(lm)
    return rem


def groebner_basis(F: FqField, polys: Iterable[dict]) -> list[dict]:
    """Buchberger's algorithm (monic generators, grevlex)."""
    basis = [_monic(F, p) for p in polys if p]
    leads = [_lead(g) for g in basis]
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        i, j = pairs.pop()
        li, lj = leads[i], leads[j]
        if all(x == 0 or y == 0 for x, y in zip(li, lj)):
            continue
        lcm = tuple(max(x, y) for x, y in zip(li, lj))
        s = _sub_scaled(F, _sub_scaled(F, {}, basis[i], F.neg(1),
                                       tuple(x - y for x, y in zip(lcm, li))),
                        basis[j], 1, tuple(x - y for x, y in zip(lcm, lj)))
        r = _reduce(F, s, basis, leads)
        if r:
            r = _monic(F, r)
            basis.append(r)
            leads.append(_lead(r))
            pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    return basis


def _plane_gradient_polys(F: FqField, d: int, coeffs: Sequence[int]) -> list[dict]:
    polys: list[dict] = [{}, {}, {}, {}]
    for mono, c in zip(plane_monomials(d), coeffs):
        if not c:
            continue
        polys[0][mono] = F.add(polys[0].get(mono, 0), c)
        for i in range(3):
            if mono[i] % F.p:
                low = list(mono)
                low[i] -= 1
                low = tuple(low)
                v = F.mul(F.from_int(mono[i]), c)
                polys[i + 1][low] = F.add(polys[i + 1].get(low, 0), v)
    return [{m: c for m, c in p.items() if c} for p in polys]


def plane_singular_groebner(F: FqField, d: int, coeffs: Sequence[int]) -> bool:
    """Common projective zero of ``F`` and its partials, by elimination.

    The zero set in ``P^2`` is empty iff the leading-term ideal of a
    Groebner basis contains a pure power of every variable.
    """
    basis = groebner_basis(F, _plane_gradient_polys(F, d, coeffs))
    leads = [_lead(g) for g in basis]
    for v in range(3):
        if not any(all(e == 0 for i, e in enumerate(lm) if i != v) for lm in leads):
            return True
    return False


# ---------------------------------------------------------------------------
# smooth form counts


def form_count(n: int, d: int, q: int) -> int:
    return q ** math.comb(d + n, n)


def _binary_range_count(q: int, d: int, oracle: str, lead: int) -> int:
    F = get_field(q)
    test = binary_singular_gcd if oracle == "gcd" else binary_singular_resultant
    smooth = 0
    for rest in product(range(q), repeat=d):
        if not test(F, rest + (lead,)):
            smooth += 1
    return smooth


def _plane_range_count(q: int, d: int, lead: int) -> int:
    F = get_field(q)
    ncoef = math.comb(d + 2, 2)
    per_lead = q ** (ncoef - 1)
    total = 0
    step = 1 << 14
    for s in range(0, per_lead, step):
        idx = np.arange(s, min(per_lead, s + step), dtype=np.int64) + lead * per_lead
        digits = _form_digits(F, idx, ncoef)
        total += int((~_plane_search_digits(F, d, digits)).sum())
    return total


def count_smooth_forms(n: int, d: int, field: FqField | int, mode: str = "exhaustive", *,
                       samples: int = 10_000, seed: int = 0, budget: int | None = None,
                       oracle: str | None = None, workers: int = 1) -> tuple[int, int]:
    """``(smooth_count, total)`` for degree-``d`` forms in ``n + 1`` variables.

    ``mode="exhaustive"`` enumerates every coefficient vector (total
    ``q^binom(d+n, n)``, bounded by the budget).  ``mode="sample"`` draws
    ``samples`` uniform forms with the given seed; ``total`` is then the
    sample size.  Work is split by the last coefficient, so the count does
    not depend on ``workers``.
    """
    if n not in (1, 2):
        raise ValueError("only n = 1 (binary forms) and n = 2 (plane curves) are supported")
    if d < 1:
        raise ValueError("d must be >= 1")
    F = as_field(field)
    q = F.q
    ncoef = math.comb(d + n, n)
    oracle = oracle or ("gcd" if n == 1 else "search")
    if n == 1 and oracle not in ("gcd", "resultant"):
        raise ValueError("binary-form oracles are 'gcd' and 'resultant'")
    if n == 2 and oracle not in ("search", "groebner"):
        raise ValueError("plane-curve oracles are 'search' and 'groebner'")
    if mode == "sample":
        rng = np.random.default_rng(seed)
        rows = rng.integers(0, q, size=(samples, ncoef))
        if n == 2 and oracle == "search":
            singular = plane_singular_search(F, d, rows)
            return int((~singular).sum()), samples
        test = _singular_test(n, d, oracle)
        return sum(1 for r in rows.tolist() if not test(F, r)), samples
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")
    total = q ** ncoef
    limit = ff_budget(budget)
    if total > limit:
        raise BudgetExceeded(f"{total} forms exceed the budget {limit}")
    if n == 2 and oracle == "groebner":
        smooth = sum(1 for r in product(range(q), repeat=ncoef)
                     if not plane_singular_groebner(F, d, r))
        return smooth, total
    if n == 1:
        jobs = [(q, d, oracle, lead) for lead in range(q)]
        fn = _binary_range_count
    else:
        jobs = [(q, d, lead) for lead in range(q)]
        fn = _plane_range_count
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(fn, *zip(*jobs)))
    else:
        counts = [fn(*job) for job in jobs]
    return sum(counts), total


def _singular_test(n: int, d: int, oracle: str):
    if n == 1:
        return binary_singular_gcd if oracle == "gcd" else binary_singular_resultant
    if oracle == "groebner":
        return lambda F, r: plane_singular_groebner(F, d, r)
    return lambda F, r: bool(plane_singular_search(F, d, np.array([r]))[0])


def is_smooth(n: int, d: int, field: FqField | int, coeffs: Sequence[int],
              oracle: str | None = None) -> bool:
    """Smoothness of one form; coefficients in :func:`plane_monomials` order
    for ``n = 2`` and ``a_0 .. a_d`` (``a_i X^i Y^(d-i)``) for ``n = 1``.
    """
    F = as_field(field)
    oracle = oracle or ("gcd" if n == 1 else "search")
    return not _singular_test(n, d, oracle)(F, list(coeffs))


def density_table(n: int, d_range: Iterable[int], q: int, mode: str = "exhaustive", *,
                  samples: int = 10_000, seed: int = 0, budget: int | None = None) -> list[dict]:
    """Rows ``(d, smooth_count, total, density, prediction, gap)``.

    ``prediction = prod_{j=1}^{n+1} (1 - q^-j)``.
    """
    prediction = Fraction(1)
    for j in range(1, n + 2):
        prediction *= 1 - Fraction(1, q ** j)
    rows = []
    for d in d_range:
        smooth, total = count_smooth_forms(n, d, q, mode, samples=samples, seed=seed, budget=budget)
        density = Fraction(smooth, total)
        rows.append({"d": d, "smooth_count": smooth, "total": total, "density": density,
                     "prediction": prediction, "gap": density - prediction})
    return rows


# ---------------------------------------------------------------------------
# point counts of presets


@dataclass(frozen=True)
class Preset:
    """``affine(n)``, ``projective(n)``, ``gl(n)`` (``GL_n``), ``binary_form_space(d)``,
    or ``hypersurface`` (a form on ``P^n`` given by monomial exponents).
    """

    kind: str
    n: int = 0
    form: tuple[tuple[tuple[int, ...], int], ...] = ()

    def __post_init__(self):
        if self.kind not in ("affine", "projective", "gl", "binary_form_space", "hypersurface"):
            raise ValueError(f"unknown preset kind {self.kind!r}")
        if self.n < 0:
            raise ValueError("preset parameter must be nonnegative")

    @classmethod
    def hypersurface(cls, form: Mapping[tuple[int, ...], int]) -> "Preset":
        items = tuple(sorted((tuple(m), int(c)) for m, c in form.items() if c))
        if not items:
            raise ValueError("the zero form does not define a hypersurface")
        nvars = {len(m) for m, _ in items}
        if len(nvars) != 1 or len({sum(m) for m, _ in items}) != 1:
            raise ValueError("form must be homogeneous in a fixed number of variables")
        return cls("hypersurface", nvars.pop() - 1, items)

    @classmethod
    def parse(cls, text: str) -> "Preset":
        t = text.strip()
        m = re.fullmatch(r"(A|P|GL)(\d+)", t.upper())
        if m:
            kind = {"A": "affine", "P": "projective", "GL": "gl"}[m.group(1)]
            return cls(kind, int(m.group(2)))
        m = re.fullmatch(r"(affine|projective|gl|binary_form_space)\((\d+)\)", t)
        if m:
            return cls(m.group(1), int(m.group(2)))
        if t.upper() == "POINT":
            return cls("affine", 0)
        raise ValueError(f"unknown preset {text!r}")


def _gl_by_rows(q: int, n: int) -> int:
    # the i-th row avoids the span of the previous ones
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def _count_gl(q: int, n: int) -> int:
    if n == 0:
        return 1
    if n == 1:
        return q - 1
    if n == 2 and q ** 4 <= 1 << 20:
        F = get_field(q)
        g = np.indices((q,) * 4).reshape(4, -1)
        ad = F.mul_arr(g[0], g[3])
        bc = F.mul_arr(g[1], g[2])
        neg_bc = F.mul_arr(np.full_like(bc, F.neg(1)), bc)
        return int(np.count_nonzero(F.add_arr(ad, neg_bc)))
    return _gl_by_rows(q, n)


def count_points(preset: Preset | str, field: FqField | int) -> int:
    """Exact number of ``F_q``-points.

    ``GL_2`` over small fields and hypersurfaces are enumerated; the other
    presets are counted by their defining parametrization.
    """
    if isinstance(preset, str):
        preset = Preset.parse(preset)
    q = field.q if isinstance(field, FqField) else int(field)
    prime_power(q)
    if preset.kind == "affine":
        return q ** preset.n
    if preset.kind == "projective":
        # nonzero vectors modulo scalars
        return (q ** (preset.n + 1) - 1) // (q - 1)
    if preset.kind == "gl":
        return _count_gl(q, preset.n)
    if preset.kind == "binary_form_space":
        return q ** (preset.n + 1)
    F = as_field(field)
    pts = projective_points(F, preset.n)
    val = np.zeros(pts.shape[0], dtype=np.int64)
    for mono, c in preset.form:
        term = F.mul_arr(np.full(pts.shape[0], c % F.q, dtype=np.int64), _monomial_values(F, pts, mono))
        val = F.add_arr(val, term)
    return int(np.count_nonzero(val == 0))


def closed_point_counts(preset: Preset | str, q: int, B: int, *,
                        budget: int | None = None) -> list[int]:
    """Numbers of closed points of degree ``1..B`` (Moebius inversion)."""
    if isinstance(preset, str):
        preset = Preset.parse(preset)
    if B < 0:
        raise ValueError("B must be nonnegative")
    if q ** B > ff_budget(budget):
        raise BudgetExceeded(f"q^B = {q ** B} exceeds the budget")
    counts = {e: count_points(preset, q ** e) for e in range(1, B + 1)}
    out = []
    for d in range(1, B + 1):
        s = sum(mobius(d // e) * counts[e] for e in range(1, d + 1) if d % e == 0)
        out.append(s // d)
    return out


def effective_cycle_counts(preset: Preset | str, q: int, D: int, *,
                           budget: int | None = None) -> list[int]:
    """Numbers of effective zero-cycles of degree ``0..D`` over ``F_q``.

    A cycle picks a multiplicity for each closed point; the count is the
    coefficient of ``t^n`` in ``prod_x (1 - t^deg x)^-1``.
    """
    points = closed_point_counts(preset, q, D, budget=budget)
    out = [1] + [0] * D
    for e, a in enumerate(points, start=1):
        for _ in range(a):
            for n in range(e, D + 1):
                out[n] += out[n - e]
    return out


# ---------------------------------------------------------------------------
# Frobenius sets


@dataclass(frozen=True)
class FrobSet:
    """A finite set ``{0, .., n-1}`` with a permutation ``sigma``."""

    sigma: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(int(s) for s in self.sigma))
        if sorted(self.sigma) != list(range(len(self.sigma))):
            raise ValueError("sigma must be a permutation of 0..n-1")

    @classmethod
    def from_cycles(cls, lengths: Iterable[int]) -> "FrobSet":
        sigma: list[int] = []
        for ln in lengths:
            if ln < 1:
                raise ValueError("cycle lengths must be positive")
            start = len(sigma)
            sigma.extend(start + (i + 1) % ln for i in range(ln))
        return cls(tuple(sigma))

    @property
    def size(self) -> int:
        return len(self.sigma)

    def __len__(self) -> int:
        return len(self.sigma)

    def apply(self, x: int, k: int = 1) -> int:
        for _ in range(k):
            x = self.sigma[x]
        return x

    def power(self, k: int) -> tuple[int, ...]:
        return tuple(self.apply(x, k) for x in range(self.size))

    def fixed_points(self, k: int = 1) -> list[int]:
        return [x for x, y in enumerate(self.power(k)) if x == y]

    def cycles(self) -> list[list[int]]:
        seen = [False] * self.size
        out = []
        for s in range(self.size):
            if seen[s]:
                continue
            cyc = []
            x = s
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.sigma[x]
            out.append(cyc)
        return out

    def cycle_type(self, k: int = 1) -> Counter:
        """Cycle lengths of ``sigma^k``: a cycle of length ``L`` splits into
        ``gcd(L, k)`` cycles of length ``L / gcd(L, k)``."""
        out: Counter = Counter()
        for cyc in self.cycles():
            g = math.gcd(len(cyc), k)
            out[len(cyc) // g] += g
        return out

    def restrict(self, subset: Iterable[int], k: int = 1) -> "FrobSet":
        """``sigma^k`` on a stable subset, relabeled ``0..m-1`` in sorted order."""
        sub = sorted(subset)
        index = {x: i for i, x in enumerate(sub)}
        perm = self.power(k)
        try:
            return FrobSet(tuple(index[perm[x]] for x in sub))
        except KeyError:
            raise ValueError("subset is not stable") from None


@dataclass(frozen=True)
class FrobMap:
    source: FrobSet
    target: FrobSet
    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(int(m) for m in self.mapping))
        if len(self.mapping) != self.source.size:
            raise ValueError("mapping length must equal the source size")
        if any(not 0 <= y < self.target.size for y in self.mapping):
            raise ValueError("mapping leaves the target")
        for x in range(self.source.size):
            if self.mapping[self.source.sigma[x]] != self.target.sigma[self.mapping[x]]:
                raise ValueError("mapping is not Frobenius-equivariant")

    def fiber(self, y: int) -> list[int]:
        return [x for x, fx in enumerate(self.mapping) if fx == y]

    def image(self) -> set[int]:
        return set(self.mapping)


def frobset_from_counts(counts: Sequence[int]) -> FrobSet:
    """``counts[d-1]`` closed points of degree ``d``, each a ``d``-cycle."""
    lengths = []
    for d, a in enumerate(counts, start=1):
        if a < 0:
            raise ValueError("counts must be nonnegative")
        lengths.extend([d] * a)
    return FrobSet.from_cycles(lengths)


def frobset_for_preset(preset: Preset | str, q: int, B: int) -> FrobSet:
    """Geometric points of closed points of degree ``<= B``."""
    return frobset_from_counts(closed_point_counts(preset, q, B))


def _conf_from_cycle_type(ctype: Mapping[int, int], M: Sequence[int]) -> int:
    """Labelings of cycles with labels ``M`` (0 = unused) filling each label exactly."""
    target = tuple(M)
    r = len(target)
    states: dict[tuple[int, ...], int] = {target: 1}
    for ln in sorted(ctype):
        c = ctype[ln]
        if ln > max(target, default=0):
            continue
        new: Counter = Counter()
        for rem, ways in states.items():
            # distribute j_i cycles of this length to label i
            def rec(i, left, cur, w):
                if i == r:
                    new[tuple(cur)] += ways * w
                    return
                top = min(left, cur[i] // ln)
                for j in range(top + 1):
                    cur[i] -= j * ln
                    rec(i + 1, left - j, cur, w * math.comb(left, j))
                    cur[i] += j * ln
            rec(0, c, list(rem), 1)
        states = dict(new)
    return states.get((0,) * r, 0)


def conf_count(X: FrobSet, M: Iterable[int], k: int = 1, method: str = "cycles") -> int:
    """``sigma^k``-fixed ``M``-labeled configurations on ``X``.

    A configuration is a tuple of pairwise disjoint subsets with sizes
    ``M`` (groups distinguishable, points in a group unordered); it is fixed
    iff each subset is ``sigma^k``-stable.  ``method="brute"`` enumerates the
    subsets directly.
    """
    M = tuple(int(m) for m in M)
    if any(m < 1 for m in M):
        raise ValueError("group sizes must be positive")
    if k < 1:
        raise ValueError("k must be >= 1")
    if method == "cycles":
        return _conf_cycles_cached(tuple(sorted(X.cycle_type(k).items())), tuple(sorted(M)))
    if method != "brute":
        raise ValueError(f"unknown method {method!r}")
    perm = X.power(k)

    def stable(s) -> bool:
        return all(perm[x] in s for x in s)

    def rec(i: int, used: frozenset) -> int:
        if i == len(M):
            return 1
        free = [x for x in range(X.size) if x not in used]
        total = 0
        for sub in combinations(free, M[i]):
            s = frozenset(sub)
            if stable(s):
                total += rec(i + 1, used | s)
        return total

    return rec(0, frozenset())


@lru_cache(maxsize=1 << 16)
def _conf_cycles_cached(ctype: tuple[tuple[int, int], ...], M: tuple[int, ...]) -> int:
    return _conf_from_cycle_type(dict(ctype), M)


def inclusion_exclusion_terms(f: FrobMap, k: int) -> tuple[int, dict[tuple[int, ...], int]]:
    """``#image^{sigma^k}`` and the signed relative-configuration term of every composition."""
    fixed_y = [y for y in f.target.fixed_points(k)]
    lhs = sum(1 for y in fixed_y if f.fiber(y))
    terms: Counter = Counter()
    for y in fixed_y:
        fib = f.fiber(y)
        if not fib:
            continue
        sub = f.source.restrict(fib, k)
        for size in range(1, len(fib) + 1):
            for mu in compositions(size):
                terms[tuple(mu)] += (-1) ** (len(mu) - 1) * conf_count(sub, mu)
    return lhs, dict(terms)


def check_inclusion_exclusion(f: FrobMap, kmax: int = 12) -> bool:
    """``#image(f)^{sigma^k} = sum_mu (-1)^(|mu|-1) #Conf^mu_{X/Y}`` for ``k <= kmax``.

    The relative configurations of ``mu`` are those lying in a single
    fiber; over a ``sigma^k``-fixed ``y`` they are configurations on the
    fiber with ``sigma^k`` restricted to it.
    """
    for k in range(1, kmax + 1):
        lhs, terms = inclusion_exclusion_terms(f, k)
        if lhs != sum(terms.values()):
            return False
    return True


def zeta_pole_sum(X: FrobSet, k: int) -> int:
    """``sum_mu (-1)^|mu| conf_count(X, mu, k)`` over all compositions, empty included."""
    total = 0
    for size in range(0, X.size + 1):
        for mu, count in composition_counts(size).items():
            total += count * (-1) ** len(mu) * (conf_count(X, mu, k) if mu else 1)
    return total


def check_zeta_pole(X: FrobSet, kmax: int = 12) -> bool:
    """``(1 - t)^{[X]}`` vanishes at ``t = 1`` in every ghost coordinate."""
    if X.size == 0:
        raise ValueError("the empty set gives 1, not 0")
    return all(zeta_pole_sum(X, k) == 0 for k in range(1, kmax + 1))


def quadratic_point_map() -> FrobMap:
    """``Spec F_{q^2} -> Spec F_q``: one 2-cycle over one fixed point."""
    return FrobMap(FrobSet((1, 0)), FrobSet((0,)), (0, 0))


def random_frobset(rng: np.random.Generator, max_size: int, *, min_size: int = 1) -> FrobSet:
    n = int(rng.integers(min_size, max_size + 1))
    return FrobSet(tuple(int(v) for v in rng.permutation(n)))


def random_frobmap(rng: np.random.Generator, max_source: int = 8) -> FrobMap:
    """Each source cycle of length ``L`` wraps around a target cycle of length
    dividing ``L``; some target cycles may stay outside the image."""
    target_lengths = [int(v) for v in rng.integers(1, 4, size=int(rng.integers(1, 5)))]
    target = FrobSet.from_cycles(target_lengths)
    tcycles = target.cycles()
    budget = int(rng.integers(1, max_source + 1))
    src_lengths: list[int] = []
    images: list[tuple[int, int]] = []
    while budget > 0:
        ci = int(rng.integers(0, len(tcycles)))
        ell = len(tcycles[ci])
        mults = [m for m in range(1, budget // ell + 1)]
        if not mults:
            if all(len(c) > budget for c in tcycles):
                break
            continue
        m = int(rng.choice(mults))
        src_lengths.append(ell * m)
        images.append((ci, int(rng.integers(0, ell))))
        budget -= ell * m
    source = FrobSet.from_cycles(src_lengths)
    mapping = []
    for (ci, offset), ln in zip(images, src_lengths):
        cyc = tcycles[ci]
        mapping.extend(cyc[(offset + i) % len(cyc)] for i in range(ln))
    return FrobMap(source, target, tuple(mapping))


# ---------------------------------------------------------------------------
# classical Euler products over closed points


def _class_closed_points(base, q: int, B: int) -> list[int]:
    counts = {e: int(base.evaluate(q ** e)) for e in range(1, B + 1)}
    return [sum(mobius(d // e) * counts[e] for e in range(1, d + 1) if d % e == 0) // d
            for d in range(1, B + 1)]


def closed_point_series(spec, q: int, D: int, counts: Sequence[Sequence[int]] | None = None
                        ) -> list[Fraction]:
    """Coefficients of ``prod_x (1 + sum_i a_i(q^deg x) t^(m_i deg x))`` up to ``t^D``.

    ``spec`` must have one variable.  ``counts[s]`` lists closed-point
    numbers of stratum ``s`` by degree; by default they come from the
    point counts of the base class.
    """
    if len(spec.variables) != 1:
        raise ValueError("closed_point_series needs a one-variable spec")
    q = int(q)
    series = [Fraction(1)] + [Fraction(0)] * D
    for si, stratum in enumerate(spec.strata):
        pts = counts[si] if counts is not None else _class_closed_points(stratum.base, q, D)
        for e in range(1, D + 1):
            a_e = pts[e - 1]
            if not a_e:
                continue
            local = [Fraction(1)] + [Fraction(0)] * D
            for term in stratum.terms:
                deg = term.monomial[0] * e
                if deg <= D:
                    local[deg] += term.coeff.evaluate(q ** e)
            for _ in range(a_e):
                series = [sum((series[i] * local[n - i] for i in range(n + 1)), Fraction(0))
                          for n in range(D + 1)]
    return series


def classical_euler_product(spec, q: int, N: int, B: int,
                            counts: Sequence[Sequence[int]] | None = None
                            ) -> tuple[Fraction, Fraction]:
    """``prod_x (1 + sum_i a_i(q^e) q^(-N m_i e))`` over closed points of degree ``<= B``.

    Returns ``(head, bound)`` with ``|full - head| <= bound``.  The points
    of degree ``e > B`` have local factors ``1 + c`` with ``|c| <= s_e``;
    with ``S = sum_{e>B} a_e s_e < 1`` their product lies in
    ``[1 - S, 1/(1 - S)]``.  ``S`` is bounded using ``a_e <= #X(F_{q^e})``
    and ``|#X(F_{q^e})| <= sum |x_i| q^(e i)``.
    """
    if len(spec.variables) != 1:
        raise ValueError("classical_euler_product needs a one-variable spec")
    q = Fraction(q)
    head = Fraction(1)
    S = Fraction(0)
    for si, stratum in enumerate(spec.strata):
        pts = counts[si] if counts is not None else _class_closed_points(stratum.base, int(q), B)
        for e in range(1, B + 1):
            local = Fraction(1)
            for term in stratum.terms:
                local += term.coeff.evaluate(q ** e) * q ** (-N * term.monomial[0] * e)
            head *= local ** pts[e - 1]
        for term in stratum.terms:
            w = N * term.monomial[0]
            for i, xi in stratum.base.items():
                for j, cj in term.coeff.items():
                    r = q ** (i + j - w)
                    if r >= 1:
                        raise ValueError("the classical product does not converge absolutely")
                    S += abs(xi) * abs(cj) * r ** (B + 1) / (1 - r)
    if S >= 1:
        raise ValueError("tail too large; raise B")
    return head, abs(head) * S / (1 - S)


__all__ = [
    "FqField", "get_field", "as_field", "embedding", "extension", "prime_power", "mobius",
    "primitive_modulus", "BudgetExceeded", "ff_budget", "poly_gcd", "sylvester_resultant",
    "binary_singular_gcd", "binary_singular_resultant", "plane_monomials",
    "plane_singular_search", "plane_singular_groebner", "conic_discriminant", "groebner_basis",
    "projective_points", "count_smooth_forms", "is_smooth", "density_table", "form_count",
    "Preset", "count_points", "closed_point_counts", "effective_cycle_counts", "FrobSet", "FrobMap",
    "frobset_from_counts", "frobset_for_preset", "conf_count", "inclusion_exclusion_terms",
    "check_inclusion_exclusion", "zeta_pole_sum", "check_zeta_pole", "quadratic_point_map",
    "random_frobset", "random_frobmap", "closed_point_series", "classical_euler_product",
]
