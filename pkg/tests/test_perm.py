from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from conpop.errors import MalformedInputError
from conpop.perm import (
    LENGTH3, Pattern, PatternSet, Permutation, SYMMETRIES, all_permutations, avoids,
    complement, consecutive_occurrences, count_occurrences, reverse, reverse_complement,
    standardize,
)


def perms(max_n=9):
    return st.integers(0, max_n).flatmap(
        lambda n: st.permutations(list(range(1, n + 1))).map(lambda w: Permutation(tuple(w))))


def naive_occurrences(word, q):
    # sort-rank each window and compare
    m = len(q)
    out = []
    for i in range(len(word) - m + 1):
        win = word[i:i + m]
        ranks = tuple(sorted(win).index(a) + 1 for a in win)
        if ranks == tuple(q):
            out.append(i + 1)
    return out


class TestParsing:
    def test_comma_and_digit_forms(self):
        assert Permutation.parse("3,5,2,1,4") == Permutation.parse("35214")
        assert str(Permutation.parse("35214")) == "3,5,2,1,4"

    def test_long_digit_form_rejected(self):
        with pytest.raises(MalformedInputError):
            Permutation.parse("12345678910")

    def test_ten_letters_with_commas(self):
        p = Permutation.parse("10,9,8,7,6,5,4,3,2,1")
        assert p.n == 10
        with pytest.raises(MalformedInputError):
            p.compact()

    @pytest.mark.parametrize("bad", ["1,1,2", "0,1", "a,b", "124", "1,,2"])
    def test_malformed(self, bad):
        with pytest.raises(MalformedInputError):
            Permutation.parse(bad)

    def test_empty(self):
        assert Permutation.parse("").n == 0

    def test_pattern_needs_a_letter(self):
        with pytest.raises(MalformedInputError):
            Pattern(())

    def test_pattern_set(self):
        ps = PatternSet.parse("132,123")
        assert str(ps) == "123,132" and ps.m == 3
        assert PatternSet("123,132") == ps
        with pytest.raises(MalformedInputError):
            PatternSet.parse("123,123")
        with pytest.raises(MalformedInputError):
            PatternSet.parse("123,2314")

    @given(perms())
    def test_round_trip(self, p):
        assert Permutation.parse(str(p)) == p


class TestStandardize:
    @pytest.mark.parametrize("window,expected", [((3, 5, 2), "231"), ((1, 2, 3), "123"),
                                                 ((9, 6, 8), "312")])
    def test_examples(self, window, expected):
        assert str(standardize(window)) == expected

    def test_repeats_rejected(self):
        with pytest.raises(MalformedInputError):
            standardize((1, 1, 2))

    @given(perms(7))
    def test_idempotent(self, p):
        if p.n:
            s = standardize(p.word)
            assert standardize(s.word) == s == Pattern(p.word)


class TestOccurrences:
    def test_hat_word_321(self):
        occ = consecutive_occurrences(Permutation.parse("968542317"), Pattern.parse("321"))
        assert occ == [3, 4]  # windows 854 and 542

    def test_hat_word_321_contains_854(self):
        occ = consecutive_occurrences(Permutation.parse("968542317"), Pattern.parse("321"))
        assert 3 in occ  # window 8,5,4
        assert occ == naive_occurrences((9, 6, 8, 5, 4, 2, 3, 1, 7), (3, 2, 1))

    def test_increasing(self):
        assert consecutive_occurrences(Permutation.parse("12345"), Pattern.parse("321")) == []

    def test_2413(self):
        assert consecutive_occurrences(Permutation.parse("2413"), Pattern.parse("231")) == [1]

    def test_avoids(self):
        ps = PatternSet.parse("123,132,321")
        assert avoids(Permutation.parse("2413"), ps)
        assert not avoids(Permutation.parse("2143"), ps)
        assert avoids(Permutation(()), ps)

    @given(perms(), st.sampled_from(LENGTH3 + (Pattern.parse("2314"), Pattern.parse("12"))))
    def test_matches_sort_rank_oracle(self, p, q):
        assert consecutive_occurrences(p, q) == naive_occurrences(p.word, q.word)

    @given(perms())
    def test_window_total(self, p):
        total = sum(count_occurrences(p, q) for q in LENGTH3)
        assert total == max(p.n - 2, 0)


class TestSymmetries:
    def test_examples(self):
        p = Permutation.parse("35214")
        assert reverse(p).compact() == "41253"
        assert complement(p).compact() == "31452"
        assert reverse_complement(p).compact() == "25413"

    def test_pattern_images_stay_patterns(self):
        assert isinstance(reverse(Pattern.parse("132")), Pattern)
        assert str(complement(Pattern.parse("132"))) == "312"

    @given(perms(), st.sampled_from(sorted(SYMMETRIES)))
    def test_involutive(self, p, name):
        T = SYMMETRIES[name]
        assert T(T(p)) == p

    @pytest.mark.parametrize("name", sorted(SYMMETRIES))
    def test_transport_exhaustive(self, name):
        T = SYMMETRIES[name]
        for n in range(8):
            for p in all_permutations(n):
                Tp = T(p)
                for q in LENGTH3:
                    assert count_occurrences(p, q) == count_occurrences(Tp, T(q))


def test_all_permutations_lexicographic():
    got = [p.word for p in all_permutations(4)]
    assert got == sorted(permutations(range(1, 5)))


def test_inverse_and_involution():
    p = Permutation.parse("732458169")
    assert p.is_involution() and p.inverse() == p
    q = Permutation.parse("2314")
    assert not q.is_involution()
    assert q.inverse().inverse() == q
