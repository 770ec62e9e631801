import math
import threading

import pytest
from hypothesis import given, strategies as st

from conftest import cellular
from motstats import ffverify as ff
from motstats.config import (
    GroupMultiset, clear_cache, compositions, composition_counts, conf_class, conf_generating,
    kapranov_m, multiplicity_vectors, partitions,
)
from motstats.motring import ONE, L, LClass, TSeries, sigma_list, sigma_series, sym_n

P1 = 1 + L
P2 = 1 + L + L ** 2


def test_group_multiset_serialization():
    assert GroupMultiset([3, 1, 2]).to_json() == [1, 2, 3]
    assert GroupMultiset([]).total == 0


def test_compositions_and_partitions():
    for n in range(1, 8):
        assert sum(1 for _ in compositions(n)) == 2 ** (n - 1)
        assert sum(composition_counts(n).values()) == 2 ** (n - 1)
    assert sum(1 for _ in partitions(7)) == 15


def test_kapranov_m_examples():
    x = P1
    assert kapranov_m(x, 0, 5).to_list() == [ONE] + [LClass()] * 5
    assert kapranov_m(x, 1, 4)[2] == x
    # two distinct points of P^1: conf_count over F_2 gives 4 = 2^2
    assert ff.conf_count(ff.frobset_for_preset("P1", 2, 4), [2]) == 4
    assert kapranov_m(P1, 2, 2)[2] == L ** 2


def test_configuration_closed_forms():
    for d in range(2, 9):
        assert conf_class(L, [d]) == L ** d - L ** (d - 1)
    for d in range(3, 9):
        assert conf_class(P1, [d]) == L ** d - L ** (d - 2)


@pytest.mark.parametrize("x", [L, P1, P2, L ** 2])
def test_generating_identity(x):
    D = 10
    zt = sigma_series(x, D)
    z2 = TSeries.univariate([sigma_list(x, D // 2)[n // 2] if n % 2 == 0 else LClass()
                             for n in range(D + 1)])
    assert conf_generating(x, D) == zt * z2.inverse()


@given(cellular)
def test_falling_factorial(x):
    for n in range(1, 7):
        expected = ONE
        for i in range(n):
            expected = expected * (x - i)
        assert conf_class(x, [1] * n) == expected


@pytest.mark.parametrize("x", [L, P1, P2, 2 * L - 1])
def test_multiplicity_stratification_closes(x):
    for n in range(9):
        total = sum((kapranov_m(x, m, n)[n] for m in range(n + 1)), LClass())
        assert total == sym_n(x, n)


def test_multiplicity_vectors():
    vs = list(multiplicity_vectors(2, 4))
    assert sorted(vs) == sorted([(1, 0, 1), (0, 2)])
    assert all(sum(v) == 2 and sum((i + 1) * m for i, m in enumerate(v)) == 4 for v in vs)


@given(cellular, st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_product_and_incremental_agree(x, M):
    assert conf_class(x, M, method="product") == conf_class(x, M, method="incremental")


@pytest.mark.parametrize("q", [2, 3])
def test_point_count_realization_on_p1(q):
    X = ff.frobset_for_preset("P1", q, 5)
    for total in range(1, 6):
        for M in partitions(total):
            assert conf_class(P1, M).evaluate(q) == ff.conf_count(X, M)


def test_limit_enforced():
    with pytest.raises(ValueError):
        conf_class(L, [65])


def test_threaded_results_agree():
    clear_cache()
    expected = {tuple(M): conf_class(P2, M) for M in partitions(6)}
    clear_cache()
    errors = []

    def work():
        for M in partitions(6):
            if conf_class(P2, M) != expected[tuple(M)]:
                errors.append(M)

    threads = [threading.Thread(target=work) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors


def test_ordered_pairs_are_falling_factorial_number():
    assert conf_class(P1, [1, 1]).evaluate(5) == math.perm(6, 2)
