from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from conpop import counting, kernel
from conpop.classes import CLASSES
from conpop.counting import (
    brute_class_size, brute_popularity, class_size, enumerate_class, generic_dp,
    popularity_exact, popularity_record, popularity_table, refined_counts_class11,
)
from conpop.errors import DomainError, InvalidQueryError
from conpop.perm import (
    LENGTH3, Pattern, PatternSet, Permutation, SYMMETRIES, all_permutations, avoids,
    count_occurrences,
)

ALL_SETS = [PatternSet(c) for k in range(0, 7) for c in combinations(LENGTH3, k)]
pattern_sets = st.sampled_from(ALL_SETS)


def filtered(n, ps):
    # independent oracle: filter the whole of S_n
    return [p for p in all_permutations(n) if avoids(p, ps)]


class TestEnumeration:
    def test_class11_n4(self):
        got = [p.compact() for p in enumerate_class(4, PatternSet.parse("123,132,321"))]
        assert got == ["2314", "2413", "3241", "3412", "4231"]

    def test_class4_empty(self):
        assert list(enumerate_class(5, CLASSES[4])) == []

    def test_n0(self):
        assert list(enumerate_class(0, CLASSES[11])) == [Permutation(())]

    @given(pattern_sets, st.integers(0, 6))
    def test_equals_filter(self, ps, n):
        assert list(enumerate_class(n, ps)) == filtered(n, ps)

    def test_negative_n(self):
        with pytest.raises(DomainError):
            list(enumerate_class(-1, CLASSES[11]))


class TestExamples:
    def test_sizes(self):
        assert class_size(4, PatternSet.parse("123,132,321")) == 5
        assert class_size(6, PatternSet.parse("123,132")) == 76
        assert class_size(5, PatternSet.parse("132,231")) == 16

    def test_popularities(self):
        ps = PatternSet.parse("123,132,321")
        got = tuple(popularity_exact(4, ps, q) for q in ("231", "312", "213"))
        assert got == (5, 3, 2)
        assert sum(got) == (4 - 2) * 5

    def test_avoided_query(self):
        with pytest.raises(InvalidQueryError):
            popularity_exact(5, CLASSES[11], "123")

    def test_empty_set_is_sym_group(self):
        assert class_size(6, PatternSet()) == 720
        assert popularity_exact(5, PatternSet(), "123") == brute_popularity(5, PatternSet(), "123")


class TestOracleEquivalence:
    @given(pattern_sets, st.integers(0, 8), st.sampled_from(LENGTH3))
    def test_dp_vs_brute(self, ps, n, q):
        assert class_size(n, ps) == brute_class_size(n, ps)
        if q not in ps:
            assert popularity_exact(n, ps, q) == brute_popularity(n, ps, q)

    @given(pattern_sets, st.integers(0, 7), st.sampled_from(LENGTH3))
    def test_generic_dp_vs_kernel(self, ps, n, q):
        targets = [q] if q not in ps else []
        size, occ = generic_dp(n, ps, targets)
        assert size == class_size(n, ps)
        if targets:
            assert occ[0] == popularity_exact(n, ps, q)

    @pytest.mark.parametrize("ps,q", [("123,132", "2314"), ("1234", "1243"),
                                      ("2143,1324", "1234"), ("12", "21")])
    def test_mixed_and_longer_lengths(self, ps, q):
        ps = PatternSet.parse(ps)
        for n in range(7):
            assert class_size(n, ps) == brute_class_size(n, ps)
            assert popularity_exact(n, ps, q) == brute_popularity(n, ps, q)

    @given(pattern_sets, st.integers(0, 9))
    def test_combined_pass_equals_single(self, ps, n):
        sizes, occ = popularity_table(n, ps)
        for q, v in occ.items():
            assert v[n] == popularity_exact(n, ps, q)
        assert sizes[n] == class_size(n, ps)

    def test_backends_agree(self):
        compiled = kernel.compiled_dp3()
        if compiled is None:
            pytest.skip("compiled kernel not built")
        for ps in ALL_SETS:
            mask = sum(1 << LENGTH3.index(p) for p in ps)
            targets = tuple(i for i, p in enumerate(LENGTH3) if p not in ps)
            a = compiled(30, mask, targets, True)
            b = kernel.python_dp3(30, mask, targets, True)
            assert a == b


class TestProperties:
    @given(pattern_sets, st.integers(3, 25))
    def test_window_identity(self, ps, n):
        rec = popularity_record(n, ps)
        assert rec.window_total() == (n - 2) * rec.class_size

    @given(pattern_sets, st.integers(0, 20), st.sampled_from(sorted(SYMMETRIES)))
    def test_symmetry_transport(self, ps, n, name):
        T = SYMMETRIES[name]
        Tps = ps.map(T)
        assert class_size(n, ps) == class_size(n, Tps)
        for q in LENGTH3:
            if q not in ps:
                assert popularity_exact(n, ps, q) == popularity_exact(n, Tps, T(q))

    @pytest.mark.parametrize("n", range(2, 16))
    def test_class_structure(self, n):
        for k in (1, 2, 3):
            assert class_size(n, CLASSES[k]) == 2
        if n > 2:
            assert class_size(n, CLASSES[5]) == n - 1
        if n > 3:
            assert class_size(n, CLASSES[4]) == 0
            assert class_size(n, CLASSES[8]) == n

    def test_deterministic(self):
        a = popularity_table(60, CLASSES[13])
        counting._run3.cache_clear()
        b = popularity_table(60, CLASSES[13])
        assert a == b

    def test_record_other_length(self):
        rec = popularity_record(6, PatternSet.parse("1234"))
        assert rec.window_total() == 3 * rec.class_size


class TestRefined:
    def test_small(self):
        r3 = refined_counts_class11(3)
        assert (r3.size_left, r3.p312_left) == (2, 1)
        r4 = refined_counts_class11(4)
        assert (r4.size_right, r4.size_left) == (2, 3)
        assert refined_counts_class11(5).p312_left == 9

    @pytest.mark.parametrize("n", range(2, 9))
    def test_against_enumeration(self, n):
        q = Pattern.parse("312")
        members = list(enumerate_class(n, CLASSES[11]))
        right = [p for p in members if p[-1] == 1]
        left = [p for p in members if p[-2] == 1]
        r = refined_counts_class11(n)
        assert (r.size_right, r.size_left) == (len(right), len(left))
        assert r.p312_right == sum(count_occurrences(p, q) for p in right)
        assert r.p312_left == sum(count_occurrences(p, q) for p in left)
        for k, (size, occ) in r.by_last.items():
            part = [p for p in left if p[-1] == k]
            assert (size, occ) == (len(part), sum(count_occurrences(p, q) for p in part))

    def test_domain(self):
        with pytest.raises(DomainError):
            refined_counts_class11(1)


def test_pure_python_fallback_selected():
    import os
    import subprocess
    import sys
    env = dict(os.environ, CONPOP_PURE_PYTHON="1")
    code = ("from conpop import kernel, class_size; "
            "print(kernel.BACKEND, class_size(9, '123,132'))")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    assert out == ["python", "2620"]
