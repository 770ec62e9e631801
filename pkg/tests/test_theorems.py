import pytest

from motstats import ffverify as ff
from motstats.motring import ONE, FilteredClass, L, LClass, gl_class, projective_class
from motstats.theorems import (
    DensityReport, complete_intersection_density, lnk, m_singular_density, p1_smooth_class,
    reports_to_csv, surjection_density, vakil_wood_density,
)

Li = LClass({-1: 1})
P1 = 1 + L
P2 = 1 + L + L ** 2


def prod_one_minus(js):
    out = ONE
    for j in js:
        out = out * (1 - Li ** j)
    return out


def test_vakil_wood_p1_is_gl2():
    assert vakil_wood_density(P1, 1).exact.shift(4) == gl_class(1)


@pytest.mark.parametrize("n", range(5))
def test_vakil_wood_projective(n):
    assert vakil_wood_density(projective_class(n), n).exact == prod_one_minus(range(1, n + 2))


def test_lnk():
    assert lnk(1, 1) == 1 - Li
    assert lnk(2, 2) == (1 - Li ** 2) * (1 - Li)
    assert lnk(5, 3)[0] == 1
    with pytest.raises(ValueError):
        lnk(2, 3)


@pytest.mark.parametrize("n", range(1, 5))
def test_complete_intersection_hypersurface_case(n):
    ci = complete_intersection_density(n, 1, -20)
    assert ci.exact is None
    assert ci.truncated.agrees_above(FilteredClass.exact(vakil_wood_density(projective_class(n), n).exact), -20)


def test_complete_intersection_stable():
    a = complete_intersection_density(2, 2, -20).truncated
    b = complete_intersection_density(2, 2, -25).truncated
    assert a.agrees_above(b, -20)


def test_m_singular_zero_is_vakil_wood():
    assert m_singular_density(P2, 2, 0).exact == vakil_wood_density(P2, 2).exact


def test_m_singular_one_point():
    # Z^[1] has coefficient x in every degree n >= 1, so the density is
    # x L^-3 / (1 - L^-3) * (1 - L^-1)(1 - L^-2)(1 - L^-3) = x L^-3 (1 - L^-1)(1 - L^-2)
    expected = P2 * Li ** 3 * (1 - Li) * (1 - Li ** 2)
    got = m_singular_density(P2, 2, 1, -12).truncated
    assert got.agrees_above(FilteredClass.exact(expected), -12)
    assert got.terms.dim() == -1


def test_m_singular_partial_sums_converge():
    floor = -14
    errors = []
    for M in range(5):
        total = sum((m_singular_density(P2, 2, m, floor).truncated for m in range(M + 1)),
                    FilteredClass(LClass(), floor))
        errors.append((total - ONE).with_floor(floor).terms.dim())
    assert all(b < a for a, b in zip(errors, errors[1:]))


def test_surjection_n1():
    rep = surjection_density(1, -20)
    assert rep.euler.truncated.agrees_above(FilteredClass.exact((1 - Li) * (1 - Li ** 2)), -20)
    assert not rep.inverse_residual


def test_surjection_rejects_higher_genus():
    with pytest.raises(ValueError, match="genus"):
        surjection_density(1, -10, curve=1 + 2 * L + L ** 2)


def test_p1_smooth_examples():
    assert p1_smooth_class(1) == L ** 2 - 1
    assert p1_smooth_class(2) == L ** 3 - L ** 2
    assert p1_smooth_class(3) == L ** 4 - L ** 3 - L ** 2 + L


@pytest.mark.parametrize("q", [2, 3, 5])
def test_p1_smooth_counts(q):
    for d in range(1, 7):
        smooth, total = ff.count_smooth_forms(1, d, q)
        assert total == q ** (d + 1)
        assert smooth == p1_smooth_class(d).evaluate(q)


def test_report_validation_and_output():
    with pytest.raises(ValueError):
        DensityReport(FilteredClass(ONE, -5), exact=1 - Li)
    rep = vakil_wood_density(P1, 1, -6)
    data = rep.to_json()
    assert data["exact"] == {"coeffs": {"0": 1, "-1": -1, "-2": -1, "-3": 1}}
    assert set(data) == {"exact", "truncated", "spec", "metadata"}
    text = reports_to_csv([rep, complete_intersection_density(1, 1, -6)])
    header = text.splitlines()[0].split(",")
    assert {"floor", "exact", "truncated"} <= set(header)
