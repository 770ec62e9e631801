import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import lclasses, small_q
from motstats import ffverify as ff
from motstats.motring import (
    NEG_INF, ONE, PRESETS, ZERO, DivergenceError, FilteredClass, L, LClass, TSeries,
    evaluate_at_prime_power, gl_class, kapranov_special_value, resolve_class, sigma_series, sym_n,
)


def test_evaluation_examples():
    assert evaluate_at_prime_power((L ** 2 - 1) * (L ** 2 - L), 2) == 6
    assert evaluate_at_prime_power(LClass({-1: 1}), 4) == Fraction(1, 4)
    assert evaluate_at_prime_power(L ** 3 - L, 3) == 24


def test_gl2_class():
    assert gl_class(1) == (L ** 2 - 1) * (L ** 2 - L)
    assert str(gl_class(1)) == "L^4 - L^3 - L^2 + L"


def test_parse_and_render():
    assert LClass.parse("L^2 - L") == L ** 2 - L
    assert LClass.parse("3*L^-2 - 1") == LClass({-2: 3, 0: -1})
    assert str(L ** 2 - L) == "L^2 - L"
    assert str(ZERO) == "0"
    with pytest.raises(ValueError):
        LClass.parse("L^^2")


@given(lclasses)
def test_string_roundtrip(a):
    assert LClass.parse(str(a)) == a


@given(lclasses)
def test_json_roundtrip(a):
    assert LClass.from_json(json.loads(json.dumps(a.to_json()))) == a


def test_json_is_ordered_by_decreasing_exponent():
    c = LClass({-3: 1, 0: 1, -1: -1, -2: -1})
    assert json.dumps(c.to_json(), separators=(",", ":")) == '{"coeffs":{"0":1,"-1":-1,"-2":-1,"-3":1}}'


def test_presets_resolve():
    assert resolve_class("P2") == 1 + L + L ** 2
    assert resolve_class("a1") == L
    assert resolve_class('{"coeffs":{"2":1}}') == L ** 2
    assert resolve_class("L^2 + 1") == L ** 2 + 1


@given(lclasses, lclasses, small_q)
def test_evaluation_is_a_ring_map(a, b, q):
    assert (a + b).evaluate(q) == a.evaluate(q) + b.evaluate(q)
    assert (a * b).evaluate(q) == a.evaluate(q) * b.evaluate(q)
    assert (-a).evaluate(q) == -a.evaluate(q)


@given(lclasses, lclasses, st.integers(0, 8))
def test_sigma_is_a_homomorphism(a, b, D):
    assert sigma_series(a + b, D) == sigma_series(a, D) * sigma_series(b, D)
    assert sigma_series(-a, D) * sigma_series(a, D) == TSeries.one(("t",), D)


@given(lclasses, st.integers(-3, 3), st.integers(0, 6))
def test_localization_identity(a, m, D):
    s = sigma_series(a.shift(m), D)
    for n in range(D + 1):
        assert s[n] == sym_n(a, n).shift(n * m)


@pytest.mark.parametrize("name", ["A1", "P1", "P2", "A2"])
@pytest.mark.parametrize("q", [2, 3])
def test_sym_counts_effective_cycles(name, q):
    counts = ff.effective_cycle_counts(name, q, 5)
    assert [sym_n(PRESETS[name], n).evaluate(q) for n in range(6)] == counts


def test_sym_of_affine_line():
    # Sym^n A^1 = A^n
    assert [sym_n(L, n) for n in range(5)] == [L ** n for n in range(5)]


@given(lclasses, lclasses, st.integers(-8, -1), st.integers(-8, -1))
def test_filtered_arithmetic_respects_floor(a, b, fa, fb):
    x, y = FilteredClass(a, fa), FilteredClass(b, fb)
    for z in (x + y, x - y, x * y, -x):
        assert all(e > z.floor for e, _ in z.terms.items())


def test_filtered_product_floor_rule():
    x = FilteredClass(ONE, -3)
    y = FilteredClass(L, -2)
    assert (x * y).floor == max(-3 + 1, -2 + 0)


@given(st.dictionaries(st.integers(-4, -1), st.integers(-2, 2), max_size=3), st.integers(-12, -2))
def test_filtered_inverse(e, floor):
    u = FilteredClass(ONE + LClass(e), floor)
    v = u.inverse()
    prod = (u * v).with_floor(floor)
    assert prod.agrees_above(FilteredClass.exact(ONE), floor)


def test_exact_filtered_class():
    assert FilteredClass.exact(L).floor == NEG_INF


def test_special_value_divergence():
    with pytest.raises(DivergenceError):
        kapranov_special_value(PRESETS["P2"], 2)


def test_special_value_of_p1():
    v = kapranov_special_value(1 + L, 2)
    assert v.exact is None
    assert v.inverse().exact == (1 - LClass({-1: 1})) * (1 - LClass({-2: 1}))
