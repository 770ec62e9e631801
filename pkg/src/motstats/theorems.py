"""Asymptotic motivic densities with closed forms or certified truncations."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from .config import conf_class, kapranov_m
from .euler import EulerFactorSpec, evaluate_at
from .motring import (
    ONE, ZERO, FilteredClass, L, LClass, gl_class, kapranov_special_value, projective_class,
)

DEFAULT_FLOOR = -30

P1_CLASS = projective_class(1)


@dataclass(frozen=True)
class DensityReport:
    """A density known exactly (``exact``) and/or modulo ``Fil_floor`` (``truncated``)."""

    truncated: FilteredClass
    exact: LClass | None = None
    spec: EulerFactorSpec | None = None
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.exact is not None and not self.truncated.agrees_above(
                FilteredClass.exact(self.exact), self.truncated.floor):
            raise ValueError("truncation disagrees with the exact value")

    def to_json(self) -> dict:
        out: dict[str, Any] = {}
        if self.exact is not None:
            out["exact"] = self.exact.to_json()
        out["truncated"] = self.truncated.to_json()
        if self.spec is not None:
            out["spec"] = self.spec.to_json()
        out["metadata"] = {k: _jsonable(v) for k, v in self.metadata.items()}
        return out

    def csv_row(self) -> dict[str, str]:
        row = {k: str(v) for k, v in self.metadata.items()}
        row["floor"] = str(self.truncated.floor)
        row["exact"] = "" if self.exact is None else str(self.exact)
        row["truncated"] = str(self.truncated.terms)
        return row


def _jsonable(v):
    if isinstance(v, (LClass, FilteredClass)):
        return v.to_json()
    if isinstance(v, (list, tuple)):
        return [_jsonable(a) for a in v]
    return v


def reports_to_csv(reports: Iterable[DensityReport]) -> str:
    rows = [r.csv_row() for r in reports]
    fields: list[str] = []
    for r in rows:
        fields.extend(k for k in r if k not in fields)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def vakil_wood_density(x: LClass, dimX: int, floor: int = DEFAULT_FLOOR) -> DensityReport:
    """``Z_x(L^-(dimX+1))^-1 = prod_j (1 - L^(j-dimX-1))^(c_j)``."""
    x = LClass.coerce(x)
    N = dimX + 1
    value = kapranov_special_value(x, N).inverse()
    spec = EulerFactorSpec.single(x, [(1, -LClass({-N: 1}))]) if x else None
    return DensityReport(
        truncated=value.expansion(floor),
        exact=value.exact,
        spec=spec,
        metadata={"problem": "vakil-wood", "class": x, "dim": dimX},
    )


def lnk(n: int, k: int) -> LClass:
    """``L(n, k) = prod_{j=0}^{k-1} (1 - L^(j-n))``."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    out = ONE
    for j in range(k):
        out = out * (ONE - LClass({j - n: 1}))
    return out


def complete_intersection_spec(n: int, k: int) -> EulerFactorSpec:
    coeff = -(ONE - lnk(n, k)).shift(-k)
    return EulerFactorSpec.single(projective_class(n), [(1, coeff)])


def complete_intersection_density(n: int, k: int, floor: int = DEFAULT_FLOOR) -> DensityReport:
    """``prod_{x in P^n} (1 - L^-k (1 - L(n,k)) t)`` at ``t = 1``, truncated.

    No closed form is claimed, even for ``k = 1`` where it agrees with the
    Vakil-Wood density: that agreement is checked, not assumed.
    """
    spec = complete_intersection_spec(n, k)
    return DensityReport(
        truncated=evaluate_at(spec, 0, floor),
        spec=spec,
        metadata={"problem": "complete-intersection", "n": n, "k": k},
    )


def _m_singular_numerator(x: LClass, N: int, m: int, floor: int) -> FilteredClass:
    """``Z^{[m]}_x(L^-N)`` modulo ``Fil_floor``.

    The coefficient of ``t^n`` has dimension at most ``m dim x`` and is
    zero for ``n < m``, so the term ``n`` lies in ``Fil_{m dim x - N n}``.
    """
    if m == 0:
        return FilteredClass(ONE, floor)
    top = m * max(x.dim(), 0)
    # largest n whose term can reach above the floor
    K = (top - floor - 1) // N
    if K < m:
        return FilteredClass(ZERO, floor)
    series = kapranov_m(x, m, K)
    value = ZERO
    for n in range(m, K + 1):
        value = value + series[n].shift(-N * n)
    return FilteredClass(value, floor)


def m_singular_density(x: LClass, dimX: int, m: int, floor: int = DEFAULT_FLOOR) -> DensityReport:
    """``Z^{[m]}_x(L^-(dimX+1)) / Z_x(L^-(dimX+1))`` modulo ``Fil_floor``."""
    x = LClass.coerce(x)
    if m < 0:
        raise ValueError("m must be nonnegative")
    N = dimX + 1
    inverse = kapranov_special_value(x, N).inverse()
    base = inverse.expansion(floor)
    if not x:
        numerator = FilteredClass(ONE if m == 0 else ZERO, floor)
    else:
        numerator = _m_singular_numerator(x, N, m, floor)
    value = (numerator * base).with_floor(floor)
    exact = inverse.exact if m == 0 else None
    return DensityReport(
        truncated=value,
        exact=exact,
        metadata={"problem": "m-singular", "class": x, "dim": dimX, "m": m},
    )


@dataclass(frozen=True)
class SurjectionReport:
    """Both sides of the surjection density identity, modulo ``Fil_floor``.

    ``euler`` is the Euler product, ``zeta_product`` is
    ``prod_{k=2}^{n+1} Z(L^-k)``, ``inverse_zeta_product`` its inverse.
    """

    n: int
    floor: int
    euler: DensityReport
    zeta_product: FilteredClass
    inverse_zeta_product: FilteredClass

    @property
    def residual(self) -> LClass:
        """``euler - zeta_product`` above the floor."""
        return (self.euler.truncated - self.zeta_product).with_floor(self.floor).terms

    @property
    def inverse_residual(self) -> LClass:
        """``euler - inverse_zeta_product`` above the floor."""
        return (self.euler.truncated - self.inverse_zeta_product).with_floor(self.floor).terms

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "floor": self.floor,
            "euler": self.euler.to_json(),
            "zeta_product": self.zeta_product.to_json(),
            "inverse_zeta_product": self.inverse_zeta_product.to_json(),
            "residual": self.residual.to_json(),
            "inverse_residual": self.inverse_residual.to_json(),
        }


def surjection_spec(n: int, curve: LClass = P1_CLASS) -> EulerFactorSpec:
    prod = ONE
    for i in range(2, n + 2):
        prod = prod * (ONE - LClass({-i: 1}))
    return EulerFactorSpec.single(curve, [(1, -(ONE - prod))])


def surjection_density(n: int, floor: int = DEFAULT_FLOOR, curve: LClass = P1_CLASS) -> SurjectionReport:
    """Density of surjections onto a rank-``n`` bundle on a rational curve.

    The Euler product is computed by the engine; the special values
    ``Z(L^-k)`` come from their factored form.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    curve = LClass.coerce(curve)
    if curve != P1_CLASS:
        raise ValueError(
            f"curve class {curve} is not 1 + L: only genus-0 curves have classes in Z[L]")
    spec = surjection_spec(n, curve)
    euler = DensityReport(
        truncated=evaluate_at(spec, 0, floor),
        spec=spec,
        metadata={"problem": "surjection", "n": n},
    )
    zeta = FilteredClass(ONE, floor)
    inv = FilteredClass(ONE, floor)
    for k in range(2, n + 2):
        value = kapranov_special_value(curve, k)
        zeta = (zeta * value.expansion(floor)).with_floor(floor)
        inv = (inv * value.inverse().expansion(floor)).with_floor(floor)
    return SurjectionReport(n, floor, euler, zeta, inv)


def p1_smooth_class(d: int) -> LClass:
    """Class of smooth (squarefree) binary forms of degree ``d``.

    A nonzero squarefree form is a scalar times the product of its ``d``
    distinct roots in ``P^1``.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1:
        return LClass({2: 1, 0: -1})
    return (L - ONE) * conf_class(P1_CLASS, [d])


__all__ = [
    "DensityReport", "SurjectionReport", "vakil_wood_density", "lnk",
    "complete_intersection_spec", "complete_intersection_density", "m_singular_density",
    "surjection_spec", "surjection_density", "gl_class", "p1_smooth_class",
    "reports_to_csv", "DEFAULT_FLOOR",
]
