"""
Exact class sizes and pattern popularities for consecutive avoidance classes.

Two independent routes are provided: backtracking enumeration (the oracle) and
a left-to-right suffix-signature dynamic program. Length-3 pattern sets run on
the prefix-summed kernel from :mod:`conpop.kernel`; anything else (longer
patterns, or a target longer than the avoided patterns) runs on a generic
dictionary DP whose state is the rank tuple of the last L-1 letters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Iterable, Iterator

from . import kernel
from .errors import DomainError, InvalidQueryError
from .perm import (
    LENGTH3, Pattern, PatternSet, Permutation, _matches, count_occurrences,
)

__all__ = [
    "enumerate_class", "brute_class_size", "brute_popularity",
    "class_size", "popularity_exact", "popularity_record", "popularity_table",
    "PopularityRecord", "Class11Refined", "refined_counts_class11",
    "generic_dp",
]

_CODE = {p: i for i, p in enumerate(LENGTH3)}


def _as_set(ps) -> PatternSet:
    return ps if isinstance(ps, PatternSet) else PatternSet(ps)


def _check_n(n: int):
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")


# -- oracle -----------------------------------------------------------------

def enumerate_class(n: int, ps) -> Iterator[Permutation]:
    """Members of Av_n(ps) in lexicographic order.

    Branches are cut as soon as the newest letters complete an avoided pattern.
    """
    _check_n(n)
    pats = [tuple(p) for p in _as_set(ps)]
    word: list[int] = []
    used = [False] * (n + 1)

    def bad() -> bool:
        k = len(word)
        for q in pats:
            m = len(q)
            if k >= m and _matches(word, k - m, q):
                return True
        return False

    def rec():
        if len(word) == n:
            yield Permutation(tuple(word))
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            word.append(v)
            if not bad():
                used[v] = True
                yield from rec()
                used[v] = False
            word.pop()

    yield from rec()


def brute_class_size(n: int, ps) -> int:
    return sum(1 for _ in enumerate_class(n, ps))


def brute_popularity(n: int, ps, q) -> int:
    q = Pattern.of(q)
    return sum(count_occurrences(p, q) for p in enumerate_class(n, ps))


# -- dynamic programs -------------------------------------------------------

def generic_dp(n: int, ps, targets: Iterable = ()) -> tuple[int, list[int]]:
    """Class size and target popularities at size ``n`` for arbitrary lengths.

    The state is the tuple of ranks (within the current prefix) of the last
    L-1 letters, where L is the longest pattern involved. Cost grows like
    n^L, so this is meant for short patterns and moderate n.
    """
    _check_n(n)
    pats = [tuple(p) for p in _as_set(ps)]
    tg = [tuple(Pattern.of(q)) for q in targets]
    L = max([len(p) for p in pats] + [len(q) for q in tg] + [1])
    keep = L - 1
    # state -> [count, occ_0, occ_1, ...]
    states = {(): [1] + [0] * len(tg)}
    for k in range(n):
        nxt: dict[tuple, list[int]] = {}
        for st, w in states.items():
            for r in range(1, k + 2):
                tail = tuple(a + (a >= r) for a in st) + (r,)
                t = len(tail)
                if any(t >= len(p) and _matches(tail, t - len(p), p) for p in pats):
                    continue
                key = tail[-keep:] if keep else ()
                acc = nxt.get(key)
                if acc is None:
                    acc = nxt[key] = [0] * (1 + len(tg))
                acc[0] += w[0]
                for j, q in enumerate(tg):
                    hit = w[0] if t >= len(q) and _matches(tail, t - len(q), q) else 0
                    acc[j + 1] += w[j + 1] + hit
        states = nxt
    size = sum(w[0] for w in states.values())
    occ = [sum(w[j + 1] for w in states.values()) for j in range(len(tg))]
    return size, occ


def _mask(ps: PatternSet) -> int:
    return sum(1 << _CODE[p] for p in ps)


def _length3(ps: PatternSet) -> bool:
    return ps.m in (None, 3)


@lru_cache(maxsize=64)
def _run3(n_max: int, mask: int, targets: tuple[int, ...]):
    sizes, occ, _ = kernel.dp3(n_max, mask, targets)
    return tuple(sizes), tuple(tuple(o) for o in occ)


def popularity_table(n_max: int, ps, targets=None) -> tuple[list[int], dict[Pattern, list[int]]]:
    """Class sizes and popularities for every size 0..n_max in one DP pass.

    ``targets`` defaults to the length-3 patterns outside ``ps``. Returns
    ``(sizes, {pattern: [occurrences at n for n in 0..n_max]})``.
    """
    _check_n(n_max)
    ps = _as_set(ps)
    if targets is None:
        targets = [q for q in LENGTH3 if q not in ps]
    targets = [Pattern.of(q) for q in targets]
    for q in targets:
        if q in ps:
            raise InvalidQueryError(f"pattern {q} is avoided by the class")
    if _length3(ps) and all(q.m == 3 for q in targets):
        sizes, occ = _run3(n_max, _mask(ps), tuple(_CODE[q] for q in targets))
        return list(sizes), {q: list(o) for q, o in zip(targets, occ)}
    if not ps and not targets:
        return [factorial(n) for n in range(n_max + 1)], {}
    sizes, occ = [], {q: [] for q in targets}
    for n in range(n_max + 1):
        s, o = generic_dp(n, ps, targets)
        sizes.append(s)
        for q, v in zip(targets, o):
            occ[q].append(v)
    return sizes, occ


def class_size(n: int, ps) -> int:
    """|Av_n(ps)| by the suffix-signature DP."""
    _check_n(n)
    ps = _as_set(ps)
    if not ps:
        return factorial(n)
    if _length3(ps):
        return _run3(n, _mask(ps), ())[0][n]
    return generic_dp(n, ps)[0]


def popularity_exact(n: int, ps, q) -> int:
    """Total number of consecutive occurrences of ``q`` over Av_n(ps)."""
    _check_n(n)
    ps = _as_set(ps)
    q = Pattern.of(q)
    if q in ps:
        raise InvalidQueryError(f"pattern {q} is avoided by the class")
    if _length3(ps) and q.m == 3:
        return _run3(n, _mask(ps), (_CODE[q],))[1][0][n]
    return generic_dp(n, ps, [q])[1][0]


@dataclass
class PopularityRecord:
    n: int
    class_size: int
    occurrences: dict[Pattern, int] = field(default_factory=dict)

    def window_total(self) -> int:
        return sum(self.occurrences.values())


def popularity_record(n: int, ps) -> PopularityRecord:
    """Class size and popularity of every non-avoided pattern of the class length."""
    ps = _as_set(ps)
    if ps.m not in (None, 3):
        targets = [Pattern(w) for w in permutations(range(1, ps.m + 1))
                   if Pattern(w) not in ps]
        size, occ = generic_dp(n, ps, targets)
        return PopularityRecord(n, size, dict(zip(targets, occ)))
    sizes, occ = popularity_table(n, ps)
    return PopularityRecord(n, sizes[n], {q: v[n] for q, v in occ.items()})


# -- refined counts for Av(123, 132, 321) -----------------------------------

@dataclass
class Class11Refined:
    """Split of Av_n(123,132,321) by where the value 1 sits.

    ``right``: 1 is the last letter. ``left``: 1 is second to last.
    ``by_last[k]`` is (size, 312-total) of the left part ending in k.
    """
    n: int
    size_right: int
    size_left: int
    p312_right: int
    p312_left: int
    by_last: dict[int, tuple[int, int]]


CLASS11 = PatternSet.parse("123,132,321")


def refined_counts_class11(n: int) -> Class11Refined:
    if n < 2:
        raise DomainError("refined counts need n >= 2")
    _, _, final = kernel.dp3(n, _mask(CLASS11), (_CODE[Pattern.parse("312")],), True)
    cnt, (o312,) = final
    size_r = p_r = size_l = p_l = 0
    by_last: dict[int, tuple[int, int]] = {}
    for (prev, last), c in cnt.items():
        o = o312[(prev, last)]
        if last == 1:
            size_r += c
            p_r += o
        elif prev == 1:
            size_l += c
            p_l += o
            by_last[last] = (c, o)
        elif c:
            raise AssertionError(f"member of Av_{n}(123,132,321) with 1 at neither end")
    return Class11Refined(n, size_r, size_l, p_r, p_l, dict(sorted(by_last.items())))
