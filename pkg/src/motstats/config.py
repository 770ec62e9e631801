"""Classes of configuration spaces of distinct labeled points.

``conf_class(x, M)`` is the class of the open subset of
``prod_s Sym^{n_s} X`` where all points, across all groups, are pairwise
distinct.  It is computed by stratifying the full product by collision
pattern: a point of ``prod_s Sym^{n_s} X`` is a finite set of distinct
points ``y``, each carrying a nonzero multiplicity vector ``v(y)`` with
``sum_y v(y) = (n_1, ..., n_r)``.  Grouping the points by their vector ``v``
gives one stratum per function ``nu`` with ``sum_v nu(v) v = n``; that
stratum is itself a configuration space with groups of sizes ``nu(v)``.
"""

from __future__ import annotations

import threading
from collections import Counter
from math import factorial
from typing import Iterable, Iterator, Sequence

from .motring import ONE, ZERO, LClass, TSeries, sym_n

DEFAULT_TOTAL_LIMIT = 64


class GroupMultiset(tuple):
    """Sorted multiset of positive group sizes."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = sorted(int(p) for p in parts)
        if parts and parts[0] < 1:
            raise ValueError("group sizes must be positive")
        return super().__new__(cls, parts)

    @property
    def total(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def __add__(self, other) -> "GroupMultiset":
        return GroupMultiset(tuple(self) + tuple(other))

    def to_json(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return f"GroupMultiset({list(self)})"


class Composition(tuple):
    """Ordered tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError("composition parts must be positive")
        return super().__new__(cls, parts)

    @property
    def total(self) -> int:
        return sum(self)


def compositions(n: int) -> Iterator[Composition]:
    """All compositions of ``n`` (the empty one for ``n = 0``)."""
    if n == 0:
        yield Composition()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield Composition((first,) + rest)


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` as nonincreasing tuples."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def composition_counts(n: int) -> dict[GroupMultiset, int]:
    """Number of compositions of ``n`` with each multiset of parts."""
    out: dict[GroupMultiset, int] = {}
    for p in partitions(n):
        mult = Counter(p)
        count = factorial(len(p))
        for m in mult.values():
            count //= factorial(m)
        out[GroupMultiset(p)] = count
    return out


# ---------------------------------------------------------------------------
# collision strata


_strata_cache: dict[tuple[int, ...], dict[GroupMultiset, int]] = {}
_strata_lock = threading.Lock()


def _dominated(n: Sequence[int]) -> list[tuple[int, ...]]:
    """Nonzero vectors ``v <= n`` in decreasing lexicographic order."""
    vecs: list[tuple[int, ...]] = [()]
    for a in n:
        vecs = [v + (i,) for v in vecs for i in range(a + 1)]
    vecs = [v for v in vecs if any(v)]
    vecs.sort(reverse=True)
    return vecs


def collision_strata(n: Sequence[int]) -> dict[GroupMultiset, int]:
    """Count the functions ``nu`` with ``sum nu(v) v = n`` by their multiset of values.

    The result maps each multiset ``{nu(v)}`` to the number of ``nu``
    producing it.
    """
    key = tuple(sorted(n))
    with _strata_lock:
        hit = _strata_cache.get(key)
    if hit is not None:
        return hit
    cands = _dominated(key)
    r = len(key)
    counts: Counter = Counter()

    def dfs(remaining: tuple[int, ...], start: int, acc: list[int]) -> None:
        if not any(remaining):
            counts[GroupMultiset(acc)] += 1
            return
        # the first nonzero coordinate must be covered by a vector at or after `start`
        pivot = next(i for i in range(r) if remaining[i])
        for idx in range(start, len(cands)):
            v = cands[idx]
            if any(v[i] > remaining[i] for i in range(r)):
                continue
            if not v[pivot] and not _coverable(remaining, pivot, idx):
                continue
            c = 1
            rem = remaining
            while True:
                rem = tuple(a - b for a, b in zip(rem, v))
                if min(rem) < 0:
                    break
                acc.append(c)
                dfs(rem, idx + 1, acc)
                acc.pop()
                c += 1

    def _coverable(remaining, pivot, idx) -> bool:
        # some later vector must still be able to hit the pivot coordinate
        for w in cands[idx + 1:]:
            if w[pivot] and all(w[i] <= remaining[i] for i in range(r)):
                return True
        return False

    dfs(key, 0, [])
    result = dict(counts)
    with _strata_lock:
        _strata_cache[key] = result
    return result


# ---------------------------------------------------------------------------
# configuration classes


class _ConfMemo:
    """Per-ambient-class memo tables guarded by a lock."""

    def __init__(self):
        self._tables: dict[LClass, dict[GroupMultiset, LClass]] = {}
        self._lock = threading.Lock()

    def get(self, x: LClass, M: GroupMultiset):
        with self._lock:
            return self._tables.get(x, {}).get(M)

    def put(self, x: LClass, M: GroupMultiset, value: LClass) -> None:
        with self._lock:
            self._tables.setdefault(x, {})[M] = value

    def clear(self) -> None:
        with self._lock:
            self._tables.clear()


_memo = _ConfMemo()
_memo_product = _ConfMemo()


def clear_cache() -> None:
    _memo.clear()
    _memo_product.clear()
    with _strata_lock:
        _strata_cache.clear()
        _attach_cache.clear()


def conf_class(x: LClass, M: Iterable[int], *, limit: int = DEFAULT_TOTAL_LIMIT,
               method: str = "incremental") -> LClass:
    """Class of the configuration space of distinct points with group sizes ``M``.

    ``method="product"`` stratifies ``prod_s Sym^{n_s} X`` by collision
    vectors in one step.  ``method="incremental"`` (the default) stratifies
    ``C^{M'} x Sym^n X`` where ``n`` is the smallest group of ``M`` and
    ``M'`` the rest; it has far fewer strata when ``M`` has many parts.
    Both recursions are exact and agree.
    """
    x = LClass.coerce(x)
    M = M if isinstance(M, GroupMultiset) else GroupMultiset(M)
    if M.total > limit:
        raise ValueError(f"total {M.total} exceeds the configured limit {limit}")
    if method == "incremental":
        return _conf(x, M, _memo, _incremental_strata)
    if method == "product":
        return _conf(x, M, _memo_product, _product_strata)
    raise ValueError(f"unknown method {method!r}")


def _product_strata(M: GroupMultiset) -> tuple[LClass | None, dict[GroupMultiset, int]]:
    return None, collision_strata(M)


def _incremental_strata(M: GroupMultiset):
    n = M[0]
    rest = GroupMultiset(M[1:])
    return rest, attachment_strata(rest, n)


def _conf(x: LClass, M: GroupMultiset, memo: "_ConfMemo", strata) -> LClass:
    if not M:
        return ONE
    if not x:
        return ZERO
    hit = memo.get(x, M)
    if hit is not None:
        return hit
    if len(M) == 1 and M[0] == 1:
        value = x
    else:
        base, table = strata(M)
        if base is None:
            full = ONE
            for n in M:
                full = full * sym_n(x, n)
        else:
            full = _conf(x, base, memo, strata) * sym_n(x, M[0])
        rest = ZERO
        for stratum, count in table.items():
            if stratum == M:
                # only the stratum of fresh distinct points has full total
                count -= 1
            if count:
                rest = rest + _conf(x, stratum, memo, strata) * count
        value = full - rest
    memo.put(x, M, value)
    return value


_attach_cache: dict[tuple[GroupMultiset, int], dict[GroupMultiset, int]] = {}


def _bounded_partitions(w: int, max_parts: int) -> list[tuple[int, ...]]:
    return [p for p in partitions(w) if len(p) <= max_parts]


def attachment_strata(base: GroupMultiset, n: int) -> dict[GroupMultiset, int]:
    """Strata of ``C^{base} x Sym^n X`` counted by their group multiset.

    Each of the ``n`` new points either lands on an existing point (raising
    its multiplicity) or is fresh.  An existing group of size ``m`` whose
    points receive extra multiplicities ``lambda`` (a partition with at most
    ``m`` parts) splits into ``m - len(lambda)`` untouched points plus one
    group per distinct part; fresh points split by multiplicity.
    """
    key = (base, n)
    with _strata_lock:
        hit = _attach_cache.get(key)
    if hit is not None:
        return hit
    counts: Counter = Counter()

    def groups_of(lam: tuple[int, ...]) -> list[int]:
        return [c for c in Counter(lam).values()]

    def rec(i: int, left: int, acc: list[int]) -> None:
        if i == len(base):
            for lam in partitions(left):
                counts[GroupMultiset(acc + groups_of(lam))] += 1
            return
        m = base[i]
        for w in range(left + 1):
            for lam in _bounded_partitions(w, m):
                untouched = [m - len(lam)] if m > len(lam) else []
                rec(i + 1, left - w, acc + untouched + groups_of(lam))

    rec(0, n, [])
    result = dict(counts)
    with _strata_lock:
        _attach_cache[key] = result
    return result


def conf_generating(x: LClass, D: int, var: str = "t") -> TSeries:
    """``sum_{n <= D} [C^n X] t^n``."""
    if D < 0:
        raise ValueError("D must be nonnegative")
    return TSeries.univariate([conf_class(x, [n]) if n else ONE for n in range(D + 1)], var, D)


def multiplicity_vectors(m: int, n: int) -> Iterator[tuple[int, ...]]:
    """Vectors ``(m_1, m_2, ...)`` with ``sum m_i = m`` and ``sum i m_i = n``.

    ``m_i`` counts the points of multiplicity ``i``; trailing zeros dropped.
    """
    def rec(i: int, m_left: int, n_left: int) -> Iterator[tuple[int, ...]]:
        if m_left == 0:
            if n_left == 0:
                yield ()
            return
        if i > n_left:
            return
        # remaining m_left points each have multiplicity >= i
        if m_left * i > n_left:
            return
        for mi in range(m_left, -1, -1):
            if mi * i > n_left:
                continue
            for rest in rec(i + 1, m_left - mi, n_left - mi * i):
                yield (mi,) + rest

    yield from rec(1, m, n)


def kapranov_m(x: LClass, m: int, D: int, var: str = "t") -> TSeries:
    """Generating series of effective zero-cycles supported on exactly ``m`` points."""
    if m < 0 or D < 0:
        raise ValueError("m and D must be nonnegative")
    x = LClass.coerce(x)
    coeffs = []
    for n in range(D + 1):
        c = ZERO
        for vec in multiplicity_vectors(m, n):
            c = c + conf_class(x, [mi for mi in vec if mi])
        coeffs.append(c)
    return TSeries.univariate(coeffs, var, D)


__all__ = [
    "GroupMultiset", "Composition", "compositions", "partitions", "composition_counts",
    "collision_strata", "attachment_strata", "conf_class", "conf_generating", "kapranov_m",
    "multiplicity_vectors", "clear_cache", "DEFAULT_TOTAL_LIMIT",
]
