"""Exact arithmetic in Z[L, L^-1] and its dimension completion.

``LClass`` is an integer Laurent polynomial in the Lefschetz symbol ``L``.
``FilteredClass`` is a Laurent series in ``L^-1`` known modulo classes of
dimension at most ``floor``.  ``TSeries`` holds truncated multivariate power
series with ``LClass`` coefficients.

Symmetric powers follow the cellular lambda-structure
``sigma_t(L^j) = 1 / (1 - L^j t)``, extended to all of Z[L, L^-1] as a group
morphism from addition to multiplication.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

NEG_INF = -math.inf


class LClass:
    """Integer Laurent polynomial in ``L``; immutable and hashable."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = int(v)
        self._c = c
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LClass":
        return cls({exponent: coeff})

    @classmethod
    def coerce(cls, value) -> "LClass":
        if isinstance(value, LClass):
            return value
        if isinstance(value, int):
            return cls({0: value})
        raise TypeError(f"cannot interpret {value!r} as an LClass")

    # -- inspection -------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def __getitem__(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def items(self) -> Iterator[tuple[int, int]]:
        """Terms ``(exponent, coefficient)`` in decreasing exponent order."""
        return iter(sorted(self._c.items(), reverse=True))

    def dim(self):
        return max(self._c) if self._c else NEG_INF

    def low(self):
        return min(self._c) if self._c else math.inf

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    # -- ring structure ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LClass({0: other})
        if not isinstance(other, LClass):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __neg__(self) -> "LClass":
        return LClass({e: -v for e, v in self._c.items()})

    def __add__(self, other) -> "LClass":
        try:
            other = LClass.coerce(other)
        except TypeError:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LClass(c)

    __radd__ = __add__

    def __sub__(self, other) -> "LClass":
        try:
            other = LClass.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LClass":
        return LClass.coerce(other) - self

    def __mul__(self, other) -> "LClass":
        if isinstance(other, int):
            return LClass({e: v * other for e, v in self._c.items()})
        if not isinstance(other, LClass):
            return NotImplemented
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LClass(c)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LClass":
        if n < 0:
            if len(self._c) == 1:
                (e, v), = self._c.items()
                if v in (1, -1):
                    return LClass({e * n: v ** (-n)})
            raise ValueError("only units +-L^j have negative powers")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, m: int) -> "LClass":
        """Multiply by ``L^m``."""
        return LClass({e + m: v for e, v in self._c.items()})

    def adams(self, k: int) -> "LClass":
        """Adams operation ``L -> L^k``."""
        return LClass({e * k: v for e, v in self._c.items()})

    def above(self, floor: int) -> "LClass":
        """Drop every term of exponent ``<= floor``."""
        return LClass({e: v for e, v in self._c.items() if e > floor})

    def evaluate(self, q) -> Fraction:
        q = Fraction(q)
        if q == 0:
            raise ValueError("cannot substitute L = 0")
        return sum((v * q ** e for e, v in self._c.items()), Fraction(0))

    # -- formatting -------------------------------------------------------

    def to_json(self) -> dict:
        return {"coeffs": {str(e): v for e, v in self.items()}}

    @classmethod
    def from_json(cls, data: Mapping) -> "LClass":
        if "coeffs" not in data:
            raise ValueError("LClass JSON needs a 'coeffs' object")
        return cls({int(k): int(v) for k, v in data["coeffs"].items()})

    def __str__(self) -> str:
        if not self._c:
            return "0"
        out = []
        for e, v in self.items():
            sign = "-" if v < 0 else "+"
            a = abs(v)
            if e == 0:
                body = str(a)
            else:
                mono = "L" if e == 1 else f"L^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LClass({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "LClass":
        """Parse strings such as ``"L^2 - L + 1"`` or ``"3*L^-2 - 1"``."""
        s = text.replace(" ", "").replace("**", "^").replace("𝕃", "L")
        if not s:
            raise ValueError("empty class expression")
        if s[0] not in "+-":
            s = "+" + s
        term_re = re.compile(r"([+-])(\d*)(\*?L(?:\^\(?(-?\d+)\)?)?)?")
        pos = 0
        c: dict[int, int] = {}
        while pos < len(s):
            m = term_re.match(s, pos)
            if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
                raise ValueError(f"cannot parse class expression {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            coeff = int(m.group(2)) if m.group(2) else 1
            if m.group(3):
                if m.group(3).startswith("*") and not m.group(2):
                    raise ValueError(f"cannot parse class expression {text!r}")
                exp = int(m.group(4)) if m.group(4) is not None else 1
            else:
                exp = 0
            c[exp] = c.get(exp, 0) + sign * coeff
            pos = m.end()
        return cls(c)


ZERO = LClass()
ONE = LClass({0: 1})
L = LClass({1: 1})


def dim(c: LClass):
    """Top exponent of ``c``; ``-inf`` for the zero class."""
    return c.dim()


def affine_class(n: int) -> LClass:
    return LClass({n: 1})


def projective_class(n: int) -> LClass:
    return LClass({j: 1 for j in range(n + 1)})


def evaluate_at_prime_power(c: LClass, q) -> Fraction:
    """Substitute ``L = q`` exactly."""
    return c.evaluate(q)


# ---------------------------------------------------------------------------
# Filtered classes


@dataclass(frozen=True)
class FilteredClass:
    """A class known modulo ``Fil_floor``.

    Only exponents strictly above ``floor`` are stored.  ``floor`` may be
    ``-inf`` for an exact class.
    """

    terms: LClass
    floor: float | int

    def __post_init__(self):
        if self.floor != NEG_INF:
            object.__setattr__(self, "floor", int(self.floor))
            object.__setattr__(self, "terms", self.terms.above(self.floor))

    @classmethod
    def exact(cls, c: LClass) -> "FilteredClass":
        return cls(c, NEG_INF)

    @classmethod
    def coerce(cls, value) -> "FilteredClass":
        if isinstance(value, FilteredClass):
            return value
        return cls.exact(LClass.coerce(value))

    def dim(self):
        return self.terms.dim()

    def _effective_dim(self):
        # unknown part has dim <= floor, so the whole element does too
        return max(self.terms.dim(), self.floor)

    def __add__(self, other) -> "FilteredClass":
        other = FilteredClass.coerce(other)
        return FilteredClass(self.terms + other.terms, max(self.floor, other.floor))

    __radd__ = __add__

    def __neg__(self) -> "FilteredClass":
        return FilteredClass(-self.terms, self.floor)

    def __sub__(self, other) -> "FilteredClass":
        return self + (-FilteredClass.coerce(other))

    def __rsub__(self, other) -> "FilteredClass":
        return FilteredClass.coerce(other) - self

    def __mul__(self, other) -> "FilteredClass":
        other = FilteredClass.coerce(other)
        floor = max(self.floor + other._effective_dim(), other.floor + self._effective_dim())
        if math.isnan(floor):
            floor = NEG_INF
        return FilteredClass(self.terms * other.terms, floor)

    __rmul__ = __mul__

    def inverse(self) -> "FilteredClass":
        """Invert a unit ``+-L^d (1 + e)`` with ``dim e < 0``.

        The result is known modulo ``Fil_{floor - 2d}``.
        """
        if self.floor == NEG_INF:
            raise ValueError("exact classes need an explicit floor to invert")
        if not self.terms:
            raise ZeroDivisionError("class is zero modulo its floor")
        d = self.terms.dim()
        lead = self.terms[d]
        if lead not in (1, -1):
            raise ValueError("leading coefficient must be +-1 to invert")
        floor = self.floor - 2 * d
        # u = lead * L^d * (1 + e)
        e = (self.terms.shift(-d) * lead) - ONE
        if e and e.dim() >= 0:
            raise ValueError("not a unit of the completed ring")
        result = ONE
        power = ONE
        target = floor + d
        while True:
            power = (power * (-e)).above(target)
            if not power:
                break
            result = result + power
        return FilteredClass(result.shift(-d) * lead, floor)

    def agrees_above(self, other, floor: int) -> bool:
        other = FilteredClass.coerce(other)
        if self.floor > floor or other.floor > floor:
            raise ValueError("requested floor is below a known precision")
        return self.terms.above(floor) == other.terms.above(floor)

    def with_floor(self, floor: int) -> "FilteredClass":
        if floor < self.floor:
            raise ValueError("cannot lower the floor of an inexact class")
        return FilteredClass(self.terms, floor)

    def evaluate(self, q) -> Fraction:
        return self.terms.evaluate(q)

    def to_json(self) -> dict:
        d = self.terms.to_json()
        d["floor"] = None if self.floor == NEG_INF else self.floor
        return d

    @classmethod
    def from_json(cls, data: Mapping) -> "FilteredClass":
        floor = data.get("floor")
        return cls(LClass.from_json(data), NEG_INF if floor is None else int(floor))

    def __str__(self) -> str:
        if self.floor == NEG_INF:
            return str(self.terms)
        return f"{self.terms} + O(L^{self.floor})"


# ---------------------------------------------------------------------------
# Truncated power series


Monomial = tuple[int, ...]


class TSeries:
    """Truncated power series in ordered variables with ``LClass`` coefficients."""

    __slots__ = ("variables", "maxdeg", "_c")

    def __init__(self, variables: Sequence[str], maxdeg: int,
                 coeffs: Mapping[Monomial, LClass] | None = None):
        self.variables = tuple(variables)
        self.maxdeg = int(maxdeg)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        c: dict[Monomial, LClass] = {}
        n = len(self.variables)
        for m, v in (coeffs or {}).items():
            m = tuple(int(a) for a in m)
            if len(m) != n or min(m, default=0) < 0:
                raise ValueError(f"bad exponent vector {m}")
            if sum(m) <= self.maxdeg:
                v = LClass.coerce(v)
                if v:
                    c[m] = v
        self._c = c

    @classmethod
    def one(cls, variables: Sequence[str], maxdeg: int) -> "TSeries":
        return cls(variables, maxdeg, {(0,) * len(variables): ONE})

    @classmethod
    def univariate(cls, coeffs: Sequence[LClass], var: str = "t",
                   maxdeg: int | None = None) -> "TSeries":
        maxdeg = len(coeffs) - 1 if maxdeg is None else maxdeg
        return cls((var,), maxdeg, {(i,): c for i, c in enumerate(coeffs)})

    def _key(self, m) -> Monomial:
        if isinstance(m, int):
            if len(self.variables) != 1:
                raise KeyError("integer index needs a univariate series")
            return (m,)
        return tuple(m)

    def __getitem__(self, m) -> LClass:
        return self._c.get(self._key(m), ZERO)

    def items(self):
        return sorted(self._c.items(), key=lambda kv: (sum(kv[0]), tuple(-a for a in kv[0])))

    def monomials(self) -> list[Monomial]:
        return [m for m, _ in self.items()]

    def to_list(self) -> list[LClass]:
        """Univariate coefficient list of length ``maxdeg + 1``."""
        if len(self.variables) != 1:
            raise ValueError("to_list needs a univariate series")
        return [self[i] for i in range(self.maxdeg + 1)]

    def _compatible(self, other: "TSeries") -> int:
        if self.variables != other.variables:
            raise ValueError("series have different variables")
        return min(self.maxdeg, other.maxdeg)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TSeries):
            return NotImplemented
        return (self.variables == other.variables and self.maxdeg == other.maxdeg
                and self._c == other._c)

    def __add__(self, other: "TSeries") -> "TSeries":
        D = self._compatible(other)
        c = dict(self._c)
        for m, v in other._c.items():
            c[m] = c.get(m, ZERO) + v
        return TSeries(self.variables, D, c)

    def __neg__(self) -> "TSeries":
        return TSeries(self.variables, self.maxdeg, {m: -v for m, v in self._c.items()})

    def __sub__(self, other: "TSeries") -> "TSeries":
        return self + (-other)

    def scale(self, c) -> "TSeries":
        c = LClass.coerce(c)
        return TSeries(self.variables, self.maxdeg, {m: v * c for m, v in self._c.items()})

    def __mul__(self, other) -> "TSeries":
        if isinstance(other, (int, LClass)):
            return self.scale(other)
        D = self._compatible(other)
        acc: dict[Monomial, dict[int, int]] = {}
        for m1, v1 in self._c.items():
            d1 = sum(m1)
            if d1 > D:
                continue
            for m2, v2 in other._c.items():
                if d1 + sum(m2) > D:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                slot = acc.setdefault(m, {})
                for e1, c1 in v1._c.items():
                    for e2, c2 in v2._c.items():
                        e = e1 + e2
                        slot[e] = slot.get(e, 0) + c1 * c2
        return TSeries(self.variables, D, {m: LClass(v) for m, v in acc.items()})

    __rmul__ = __mul__

    def truncate(self, maxdeg: int) -> "TSeries":
        return TSeries(self.variables, min(maxdeg, self.maxdeg), self._c)

    def constant(self) -> LClass:
        return self[(0,) * len(self.variables)]

    def inverse(self) -> "TSeries":
        """Multiplicative inverse; the constant term must be ``+-1``."""
        zero = (0,) * len(self.variables)
        c0 = self.constant()
        if c0 not in (ONE, -ONE):
            raise ValueError("constant term must be +-1 to invert")
        inv0 = c0
        rest = TSeries(self.variables, self.maxdeg,
                       {m: v * inv0 for m, v in self._c.items() if m != zero})
        # 1/(c0 (1 + r)) = c0 * sum (-r)^k
        result = TSeries.one(self.variables, self.maxdeg)
        power = TSeries.one(self.variables, self.maxdeg)
        for _ in range(self.maxdeg):
            power = power * (-rest)
            if not power._c:
                break
            result = result + power
        return result.scale(inv0)

    def dims_by_degree(self) -> dict[int, object]:
        """Top exponent among coefficients of each total degree."""
        out: dict[int, object] = {}
        for m, v in self._c.items():
            k = sum(m)
            out[k] = max(out.get(k, NEG_INF), v.dim())
        return out

    def substitute_monomial(self, matrix: Sequence[Sequence[int]], twists: Sequence[int],
                            targets: Sequence[str], maxdeg: int | None = None) -> "TSeries":
        """Apply ``t_i -> L^{n_i} prod_j s_j^{a_ij}`` coefficientwise.

        Row ``i`` of ``matrix`` gives the exponents of the image of variable
        ``i``.  Every row must be nonzero.  The result is truncated at
        ``maxdeg`` (default: the largest degree that is fully determined).
        """
        rows = [tuple(int(a) for a in row) for row in matrix]
        twists = [int(n) for n in twists]
        targets = tuple(targets)
        if len(rows) != len(self.variables) or len(twists) != len(self.variables):
            raise ValueError("need one matrix row and one twist per source variable")
        for row in rows:
            if len(row) != len(targets):
                raise ValueError("matrix rows must have one entry per target variable")
            if any(a < 0 for a in row):
                raise ValueError("monomial substitution exponents must be nonnegative")
            if not any(row):
                raise ValueError("each variable must map to a nonconstant monomial")
        # a source monomial of degree > maxdeg maps to target degree >= deg + 1 > maxdeg
        # only if every row has degree >= 1, which holds, so maxdeg is safe
        D = self.maxdeg if maxdeg is None else min(maxdeg, self.maxdeg)
        c: dict[Monomial, LClass] = {}
        for m, v in self._c.items():
            image = [0] * len(targets)
            shift = 0
            for a, row, n in zip(m, rows, twists):
                if a:
                    shift += a * n
                    for j, r in enumerate(row):
                        image[j] += a * r
            image = tuple(image)
            if sum(image) <= D:
                c[image] = c.get(image, ZERO) + v.shift(shift)
        return TSeries(targets, D, c)

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "maxdeg": self.maxdeg,
            "coeffs": {",".join(map(str, m)): v.to_json() for m, v in self.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TSeries":
        variables = data["variables"]
        coeffs = {}
        for key, v in data["coeffs"].items():
            m = tuple(int(a) for a in key.split(",")) if key else ()
            coeffs[m] = LClass.from_json(v)
        return cls(variables, data["maxdeg"], coeffs)

    def __str__(self) -> str:
        parts = []
        for m, v in self.items():
            mono = "*".join(
                (var if a == 1 else f"{var}^{a}") for var, a in zip(self.variables, m) if a
            )
            if not mono:
                parts.append(f"({v})" if len(v) > 1 else str(v))
            elif v == ONE:
                parts.append(mono)
            else:
                parts.append(f"({v})*{mono}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(deg {self.maxdeg + 1})"

    def __repr__(self) -> str:
        return f"TSeries({self})"


# ---------------------------------------------------------------------------
# lambda-structure


def _binomial_series(j: int, c: int, D: int) -> list[LClass]:
    """Coefficients of ``(1 - L^j t)^(-c)`` up to ``t^D``."""
    out = []
    for i in range(D + 1):
        if c >= 0:
            b = math.comb(c + i - 1, i) if i else 1
        else:
            b = (-1) ** i * math.comb(-c, i)
        out.append(LClass({j * i: b}) if b else ZERO)
    return out


def _poly_mul(a: Sequence[LClass], b: Sequence[LClass], D: int) -> list[LClass]:
    out = [ZERO] * (D + 1)
    for i, x in enumerate(a[: D + 1]):
        if not x:
            continue
        for k, y in enumerate(b[: D + 1 - i]):
            if y:
                out[i + k] = out[i + k] + x * y
    return out


@lru_cache(maxsize=4096)
def _sigma_list(c: LClass, D: int) -> tuple[LClass, ...]:
    result: list[LClass] = [ONE] + [ZERO] * D
    for j, cj in c.items():
        result = _poly_mul(result, _binomial_series(j, cj, D), D)
    return tuple(result)


def sigma_series(c: LClass, D: int, var: str = "t") -> TSeries:
    """``sum_n Sym^n(c) t^n`` truncated at degree ``D``."""
    if D < 0:
        raise ValueError("D must be nonnegative")
    return TSeries.univariate(list(_sigma_list(LClass.coerce(c), D)), var, D)


def sigma_list(c: LClass, D: int) -> list[LClass]:
    """Coefficient list of :func:`sigma_series`."""
    if D < 0:
        raise ValueError("D must be nonnegative")
    return list(_sigma_list(LClass.coerce(c), D))


def sym_n(c: LClass, n: int) -> LClass:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _sigma_list(LClass.coerce(c), n)[n]


# ---------------------------------------------------------------------------
# Kapranov special values


@dataclass(frozen=True)
class SpecialValue:
    """``prod_e (1 - L^e)^(-m)`` over ``factors = ((e, m), ...)``, all ``e <= -1``."""

    factors: tuple[tuple[int, int], ...]

    def inverse(self) -> "SpecialValue":
        return SpecialValue(tuple((e, -m) for e, m in self.factors))

    @property
    def exact(self) -> LClass | None:
        """The value as a Laurent polynomial when the product is finite."""
        if any(m > 0 for _, m in self.factors):
            return None
        out = ONE
        for e, m in self.factors:
            out = out * (ONE - LClass({e: 1})) ** (-m)
        return out

    def expansion(self, floor: int) -> FilteredClass:
        exact = self.exact
        if exact is not None:
            return FilteredClass(exact, floor)
        out = FilteredClass(ONE, floor)
        for e, m in self.factors:
            if m < 0:
                factor = FilteredClass((ONE - LClass({e: 1})) ** (-m), floor)
            else:
                # geometric series 1/(1 - L^e) truncated at the floor
                geo = LClass({e * i: 1 for i in range(0, (-floor) // (-e) + 2) if e * i > floor})
                factor = FilteredClass(geo ** m, floor)
            out = FilteredClass((out.terms * factor.terms), floor)
        return out


def kapranov_special_value(c: LClass, N: int) -> SpecialValue:
    """``Z_c(L^-N) = prod_j (1 - L^(j-N))^(-c_j)`` in factored form."""
    c = LClass.coerce(c)
    if c and c.dim() >= N:
        raise DivergenceError(f"Z(L^-{N}) diverges: need N > dim = {c.dim()}")
    return SpecialValue(tuple((j - N, cj) for j, cj in c.items()))


class DivergenceError(ArithmeticError):
    """A series or special value is evaluated outside its radius of convergence."""


def gl_class(n: int) -> LClass:
    """``[GL_{n+1}] = prod_{i=0}^{n} (L^{n+1} - L^i)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = ONE
    for i in range(n + 1):
        out = out * (LClass({n + 1: 1}) - LClass({i: 1}))
    return out


PRESETS: dict[str, LClass] = {
    "A1": affine_class(1),
    "A2": affine_class(2),
    "A3": affine_class(3),
    "P1": projective_class(1),
    "P2": projective_class(2),
    "P3": projective_class(3),
    "P4": projective_class(4),
    "GL2": gl_class(1),
    "POINT": ONE,
}

PRESET_DIMS: dict[str, int] = {"A1": 1, "A2": 2, "A3": 3, "P1": 1, "P2": 2, "P3": 3,
                               "P4": 4, "GL2": 4, "POINT": 0}


def resolve_class(text: str) -> LClass:
    """A preset name (``P2``), a JSON object, or a polynomial string."""
    key = text.strip().upper()
    if key in PRESETS:
        return PRESETS[key]
    if text.strip().startswith("{"):
        import json
        return LClass.from_json(json.loads(text))
    return LClass.parse(text)


def iter_monomials(nvars: int, maxdeg: int) -> Iterator[Monomial]:
    """Exponent vectors of total degree ``<= maxdeg``, graded."""
    for d in range(maxdeg + 1):
        yield from _monomials_of_degree(nvars, d)


def _monomials_of_degree(nvars: int, d: int) -> Iterable[Monomial]:
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, d - a):
            yield (a,) + rest


__all__ = [
    "LClass", "FilteredClass", "TSeries", "SpecialValue", "DivergenceError",
    "ZERO", "ONE", "L", "NEG_INF", "dim", "sigma_series", "sigma_list", "sym_n",
    "kapranov_special_value", "evaluate_at_prime_power", "gl_class",
    "affine_class", "projective_class", "PRESETS", "PRESET_DIMS", "resolve_class",
    "iter_monomials",
]
