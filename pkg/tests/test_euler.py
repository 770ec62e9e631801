import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from motstats import ffverify as ff
from motstats.euler import (
    EulerFactorSpec, PrecisionError, dim_bound, evaluate_at, expand, realize, substitute_monomial,
    substitute_spec,
)
from motstats.motring import ONE, DivergenceError, FilteredClass, L, LClass, TSeries, sigma_series

P1 = 1 + L
P2 = 1 + L + L ** 2
Li = LClass({-1: 1})


def test_a1_minus_t_is_a_polynomial():
    s = expand(EulerFactorSpec.single(L, [(1, -ONE)]), 10)
    assert s == TSeries.univariate([ONE, -L], maxdeg=10)


def test_a1_plus_t():
    s = expand(EulerFactorSpec.single(L, [(1, ONE)]), 10)
    num = TSeries.univariate([ONE, LClass(), -L], maxdeg=10)
    assert s == num * TSeries.univariate([ONE, -L], maxdeg=10).inverse()


@pytest.mark.parametrize("x", [L, P1, P2])
def test_kapranov_inverse(x):
    assert expand(EulerFactorSpec.single(x, [(1, -ONE)]), 10) * sigma_series(x, 10) \
        == TSeries.one(("t",), 10)


def test_p1_density_example():
    spec = EulerFactorSpec.single(P1, [(1, -LClass({-2: 1}))])
    value = evaluate_at(spec, 0, -30)
    assert value.agrees_above(FilteredClass.exact((1 - Li) * (1 - Li ** 2)), -30)


def test_finite_evaluation():
    spec = EulerFactorSpec.single(L, [(1, -ONE)])
    assert evaluate_at(spec, 2, -40).terms == 1 - Li


def test_divergence():
    with pytest.raises(DivergenceError):
        evaluate_at(EulerFactorSpec.single(L, [(1, ONE)]), 0, -10)


def test_precision_limit():
    spec = EulerFactorSpec.single(P1, [(1, -LClass({-2: 1}))])
    with pytest.raises(PrecisionError):
        evaluate_at(spec, 0, -200, max_degree=8)


terms = st.lists(st.tuples(st.integers(1, 3), st.dictionaries(st.integers(-2, 1), st.integers(-2, 2),
                                                              min_size=1, max_size=2).map(LClass)),
                 min_size=1, max_size=2)


@given(terms)
def test_methods_agree(ts):
    spec = EulerFactorSpec.single(P1, ts)
    assert expand(spec, 6, method="configurations") == expand(spec, 6, method="power")


@given(terms)
def test_strata_split_multiplicatively(ts):
    whole = EulerFactorSpec.single(P1, ts)
    parts = EulerFactorSpec(("t",), (whole.strata[0].__class__(L, whole.strata[0].terms),
                                     whole.strata[0].__class__(ONE, whole.strata[0].terms)))
    assert expand(whole, 8) == expand(parts, 8)


@st.composite
def refined_specs(draw):
    r = draw(st.integers(1, 3))
    k = draw(st.integers(1, 2))
    variables = [f"t{i}" for i in range(r)]
    nterms = draw(st.integers(1, 3))
    ts = []
    for _ in range(nterms):
        mono = [draw(st.integers(0, 2)) for _ in range(r)]
        if sum(mono) == 0:
            mono[0] = 1
        coeff = LClass(draw(st.dictionaries(st.integers(-1, 1), st.integers(-2, 2), min_size=1, max_size=2)))
        if coeff:
            ts.append((tuple(mono), coeff))
    if not ts:
        ts = [((1,) + (0,) * (r - 1), -ONE)]
    base = draw(st.sampled_from([L, P1, ONE]))
    A = [[draw(st.integers(0, 2)) for _ in range(k)] for _ in range(r)]
    for row in A:
        if not any(row):
            row[0] = 1
    twists = [draw(st.integers(-1, 1)) for _ in range(r)]
    return EulerFactorSpec.single(base, ts, variables), A, twists, [f"s{j}" for j in range(k)]


@given(refined_specs())
def test_substitution_coherence(data):
    spec, A, twists, targets = data
    D = 6
    left = substitute_monomial(expand(spec, D), A, twists, targets, D)
    right = expand(substitute_spec(spec, A, twists, targets), D)
    assert left == right


def test_non_monomial_substitutions_rejected():
    spec = EulerFactorSpec.single(L, [(1, -ONE)])
    with pytest.raises(ValueError):
        substitute_spec(spec, [[0]], [0], ["s"])
    with pytest.raises(ValueError):
        substitute_spec(spec, [[-1]], [0], ["s"])


@pytest.mark.parametrize("name", ["A1", "P1", "P2"])
@pytest.mark.parametrize("q", [2, 3])
def test_realization_matches_closed_points(name, q):
    from motstats.motring import PRESETS
    x = PRESETS[name]
    spec = EulerFactorSpec.single(x, [(1, L - 2), (2, LClass({-1: 1, 0: 3}))])
    D = 4
    counts = [ff.closed_point_counts(name, q, D)]
    classical = ff.closed_point_series(spec, q, D, counts)
    engine = [c.evaluate(q) for c in expand(spec, D).to_list()]
    assert engine == classical


def test_realize_tail_bound():
    spec = EulerFactorSpec.single(P1, [(1, -LClass({-2: 1}))])
    head, bound = realize(spec, 0, 2, 20)
    exact = (1 - Fraction(1, 2)) * (1 - Fraction(1, 4))
    assert abs(head - exact) <= bound


def test_dim_bound_is_respected():
    spec = EulerFactorSpec.single(P1, [(1, LClass({-1: 1})), (2, -ONE)])
    s = expand(spec, 6)
    for k in range(1, 7):
        c = s[k]
        if c:
            assert c.dim() <= dim_bound(spec, k)


def test_json_roundtrip_and_bundled_spec():
    from importlib import resources
    spec = EulerFactorSpec.single(P1, [(1, -LClass({-2: 1}))])
    assert EulerFactorSpec.from_json(json.loads(json.dumps(spec.to_json()))) == spec
    data = json.loads((resources.files("motstats") / "data" / "a1-minus-t.json").read_text())
    assert EulerFactorSpec.from_json(data) == EulerFactorSpec.single(L, [(1, -ONE)])


def test_spec_validation():
    with pytest.raises(ValueError):
        EulerFactorSpec.single(LClass(), [(1, ONE)])
    with pytest.raises(ValueError):
        EulerFactorSpec.from_json({"variables": ["t"], "strata": [
            {"base": {"coeffs": {"1": 1}}, "terms": [{"monomial": {"u": 1}, "coeff": {"coeffs": {"0": 1}}}]}]})


def test_per_variable_assignment():
    spec = EulerFactorSpec.single(L, [((1, 0), -ONE), ((0, 1), -ONE)], ("t", "s"))
    # the factor 1 - t - s at t = s collapses to 1 - 2t
    a = evaluate_at(spec, {"t": 3, "s": 3}, -12)
    b = evaluate_at(EulerFactorSpec.single(L, [(1, -2 * ONE)]), 3, -12)
    assert a.terms == b.terms
