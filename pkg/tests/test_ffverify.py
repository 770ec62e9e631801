import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from motstats import ffverify as ff
from motstats.motring import PRESETS, L, affine_class, gl_class, projective_class

FIELDS = [2, 3, 4, 5, 8, 9, 16, 25, 27, 49]


# -- fields ----------------------------------------------------------------


@pytest.mark.parametrize("q", FIELDS)
def test_field_frobenius_and_modulus(q):
    F = ff.get_field(q)
    assert F.check_frobenius(samples=64)
    # exp/log tables cover every unit once: the generator is primitive
    assert sorted(set(F._exp_list[: q - 1])) == list(range(1, q))


@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(q, data):
    F = ff.get_field(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
    arr = np.array([a, b, c])
    assert F.mul_arr(arr, arr).tolist() == [F.mul(v, v) for v in (a, b, c)]


@pytest.mark.parametrize("small,big", [(2, 4), (2, 16), (4, 16), (3, 9), (3, 27)])
def test_embedding_is_a_homomorphism(small, big):
    S, B = ff.get_field(small), ff.get_field(big)
    emb = ff.embedding(S, B)
    for a in range(small):
        for b in range(small):
            assert emb[S.add(a, b)] == B.add(int(emb[a]), int(emb[b]))
            assert emb[S.mul(a, b)] == B.mul(int(emb[a]), int(emb[b]))


def test_prime_power_and_mobius():
    assert ff.prime_power(27) == (3, 3)
    with pytest.raises(ValueError):
        ff.prime_power(12)
    assert [ff.mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


# -- point counts ----------------------------------------------------------


def test_point_count_examples():
    assert ff.count_points("projective(2)", 4) == 21
    assert ff.count_points("GL2", 2) == 6
    assert ff.count_points("affine(3)", 3) == 27


@pytest.mark.parametrize("name,cls", [("A1", affine_class(1)), ("A3", affine_class(3)),
                                      ("P2", projective_class(2)), ("GL2", gl_class(1)),
                                      ("POINT", affine_class(0))])
@pytest.mark.parametrize("q", [2, 3])
def test_point_counts_match_classes(name, cls, q):
    for k in range(1, 4):
        assert ff.count_points(name, q ** k) == cls.evaluate(q ** k)


def test_hypersurface_count():
    # the conic XY - Z^2 is a P^1
    conic = ff.Preset.hypersurface({(1, 1, 0): 1, (0, 0, 2): -1})
    for q in (2, 3, 5, 7):
        assert ff.count_points(conic, q) == q + 1


def test_closed_point_counts():
    assert ff.closed_point_counts("P1", 2, 3) == [3, 1, 2]
    assert ff.closed_point_counts("A1", 5, 1) == [5]
    assert ff.closed_point_counts("P2", 2, 1) == [7]
    with pytest.raises(ff.BudgetExceeded):
        ff.closed_point_counts("P1", 2, 40)


# -- smoothness oracles ----------------------------------------------------


def test_smooth_count_examples():
    assert ff.count_smooth_forms(1, 3, 2) == (6, 16)
    for q in (2, 3, 5):
        assert ff.count_smooth_forms(1, 1, q) == (q * q - 1, q * q)
    assert ff.count_smooth_forms(2, 1, 3) == (26, 27)


def test_smooth_count_errors():
    with pytest.raises(ValueError):
        ff.count_smooth_forms(1, 0, 2)
    with pytest.raises(ff.BudgetExceeded):
        ff.count_smooth_forms(2, 4, 3, budget=1000)
    with pytest.raises(ValueError):
        ff.count_smooth_forms(3, 2, 2)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_binary_oracles_agree(q):
    F = ff.get_field(q)
    rng = np.random.default_rng(q)
    for _ in range(10_000):
        d = int(rng.integers(1, 7))
        coeffs = rng.integers(0, q, size=d + 1).tolist()
        assert ff.binary_singular_gcd(F, coeffs) == ff.binary_singular_resultant(F, coeffs)


@pytest.mark.parametrize("q", [2, 3])
def test_conic_oracles_agree_exhaustively(q):
    F = ff.get_field(q)
    rows = np.array(list(np.ndindex(*(q,) * 6)))
    search = ff.plane_singular_search(F, 2, rows)
    for r, s in zip(rows.tolist(), search.tolist()):
        assert s == (ff.conic_discriminant(F, r) == 0)
        assert s == ff.plane_singular_groebner(F, 2, r)


def test_plane_cubic_table_q2():
    # both oracles enumerate all 1024 cubics and must agree
    assert ff.count_smooth_forms(2, 3, 2) == (336, 1024)
    assert ff.count_smooth_forms(2, 3, 2, oracle="groebner") == (336, 1024)


def test_plane_emax():
    assert ff.plane_emax(1) == 1
    assert ff.plane_emax(3) == 4


def test_worker_count_does_not_change_counts():
    assert ff.count_smooth_forms(1, 4, 3, workers=2) == ff.count_smooth_forms(1, 4, 3)


def test_sampled_mode_within_four_sigma():
    N = 4000
    exact_s, exact_t = ff.count_smooth_forms(1, 4, 3)
    p = exact_s / exact_t
    s, t = ff.count_smooth_forms(1, 4, 3, "sample", samples=N, seed=11)
    assert t == N
    assert abs(s / N - p) <= 4 * math.sqrt(p * (1 - p) / N)
    s2, t2 = ff.count_smooth_forms(2, 2, 2, "sample", samples=N, seed=5)
    exact2 = ff.count_smooth_forms(2, 2, 2)
    p2 = exact2[0] / exact2[1]
    assert abs(s2 / N - p2) <= 4 * math.sqrt(p2 * (1 - p2) / N)


def test_density_table():
    rows = ff.density_table(1, range(3, 7), 2)
    assert all(r["gap"] == 0 for r in rows)
    plane = ff.density_table(2, [1, 3], 2)
    assert plane[0]["density"] == Fraction(7, 8)
    assert plane[1]["prediction"] == Fraction(1, 2) * Fraction(3, 4) * Fraction(7, 8)


# -- Frobenius sets ----------------------------------------------------------


def test_conf_count_examples():
    X = ff.FrobSet((0, 1, 2))
    for k in (1, 2, 3):
        assert ff.conf_count(X, [1, 1], k) == 6
    Y = ff.FrobSet.from_cycles([2])
    assert [ff.conf_count(Y, [1], k) for k in (1, 2, 3, 4)] == [0, 2, 0, 2]
    assert ff.conf_count(ff.frobset_for_preset("P1", 2, 4), [2]) == 4


frobsets = st.lists(st.integers(1, 4), min_size=1, max_size=4).map(ff.FrobSet.from_cycles)
multisets = st.lists(st.integers(1, 3), min_size=1, max_size=3)


@given(frobsets, multisets, st.integers(1, 6))
def test_conf_count_methods_agree(X, M, k):
    if sum(M) <= X.size:
        assert ff.conf_count(X, M, k) == ff.conf_count(X, M, k, method="brute")


@given(frobsets, multisets, st.integers(1, 6), st.randoms(use_true_random=False))
def test_conf_count_depends_on_cycle_type(X, M, k, rnd):
    perm = list(range(X.size))
    rnd.shuffle(perm)
    inv = {v: i for i, v in enumerate(perm)}
    conj = ff.FrobSet(tuple(perm[X.sigma[inv[i]]] for i in range(X.size)))
    assert conj.cycle_type(k) == X.cycle_type(k)
    if sum(M) <= X.size:
        assert ff.conf_count(conj, M, k) == ff.conf_count(X, M, k)


def test_frobset_validation():
    with pytest.raises(ValueError):
        ff.FrobSet((0, 0))
    with pytest.raises(ValueError):
        ff.FrobMap(ff.FrobSet((1, 0)), ff.FrobSet((0, 1)), (0, 1))


def test_quadratic_point_collapse():
    f = ff.quadratic_point_map()
    for k in range(1, 13):
        lhs, terms = ff.inclusion_exclusion_terms(f, k)
        assert lhs == 1
        single = terms[(1,)]
        assert single == (2 if k % 2 == 0 else 0)
        assert sum(terms.values()) == 1
    assert ff.check_inclusion_exclusion(f, 12)


def test_inclusion_exclusion_identity_map():
    X = ff.FrobSet.from_cycles([1, 2, 3])
    f = ff.FrobMap(X, X, tuple(range(X.size)))
    for k in range(1, 7):
        _, terms = ff.inclusion_exclusion_terms(f, k)
        assert set(mu for mu, v in terms.items() if v) <= {(1,)}
    assert ff.check_inclusion_exclusion(f, 12)


def test_random_inclusion_exclusion():
    rng = np.random.default_rng(3)
    assert all(ff.check_inclusion_exclusion(ff.random_frobmap(rng, 8), 12) for _ in range(30))


def test_zeta_pole():
    assert ff.check_zeta_pole(ff.FrobSet((0,)), 12)
    assert ff.check_zeta_pole(ff.FrobSet.from_cycles([2]), 12)
    with pytest.raises(ValueError):
        ff.check_zeta_pole(ff.FrobSet(()), 3)
    assert ff.zeta_pole_sum(ff.FrobSet(()), 1) == 1
    rng = np.random.default_rng(4)
    assert all(ff.check_zeta_pole(ff.random_frobset(rng, 7), 12) for _ in range(20))


def test_classical_product_bound():
    from motstats.euler import EulerFactorSpec
    from motstats.motring import LClass
    spec = EulerFactorSpec.single(1 + L, [(1, -LClass({-2: 1}))])
    head, bound = ff.classical_euler_product(spec, 2, 0, 12)
    exact = Fraction(1, 2) * Fraction(3, 4)
    assert abs(head - exact) <= bound
