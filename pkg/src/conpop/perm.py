"""
Permutations, consecutive patterns and the three symmetries R, C, R∘C.

Permutations are stored as tuples of ranks ``1..n``. Positions exposed by the
public functions are 1-based.

>>> p = Permutation.parse("35214")
>>> str(reverse(p)), str(complement(p)), str(reverse_complement(p))
('4,1,2,5,3', '3,1,4,5,2', '2,5,4,1,3')
>>> consecutive_occurrences(Permutation.parse("968542317"), Pattern.parse("321"))
[3, 4]
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _itperms
from typing import Iterable, Iterator, Sequence

from .errors import MalformedInputError

__all__ = [
    "Permutation", "Pattern", "PatternSet", "LENGTH3",
    "standardize", "consecutive_occurrences", "count_occurrences", "avoids",
    "reverse", "complement", "reverse_complement", "SYMMETRIES",
    "all_permutations",
]


@dataclass(frozen=True, order=True)
class Permutation:
    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(self.word)
        object.__setattr__(self, "word", word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise MalformedInputError(f"not a permutation of 1..{len(word)}: {word}")

    @property
    def n(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self) -> Iterator[int]:
        return iter(self.word)

    def __getitem__(self, i):
        return self.word[i]

    def __str__(self) -> str:
        return ",".join(map(str, self.word))

    def compact(self) -> str:
        """Digit form such as ``35214``; only defined for n <= 9."""
        if self.n > 9:
            raise MalformedInputError("compact form needs n <= 9")
        return "".join(map(str, self.word))

    @classmethod
    def parse(cls, text: str):
        """Parse ``"3,5,2,1,4"`` or, for n <= 9, the digit form ``"35214"``."""
        text = text.strip()
        if not text:
            return cls(())
        try:
            if "," in text:
                word = tuple(int(tok) for tok in text.split(","))
            elif text.isdigit() and len(text) <= 9:
                word = tuple(int(ch) for ch in text)
            elif text.isdigit():
                raise MalformedInputError(
                    f"digit form is ambiguous for n > 9, use commas: {text!r}")
            else:
                raise MalformedInputError(f"cannot parse permutation {text!r}")
        except ValueError as exc:
            if isinstance(exc, MalformedInputError):
                raise
            raise MalformedInputError(f"cannot parse permutation {text!r}") from exc
        return cls(word)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, a in enumerate(self.word, 1):
            inv[a - 1] = i
        return Permutation(tuple(inv))

    def is_involution(self) -> bool:
        return all(self.word[a - 1] == i for i, a in enumerate(self.word, 1))


@dataclass(frozen=True, order=True)
class Pattern(Permutation):
    """A permutation of length m >= 1 used as a consecutive pattern."""

    def __post_init__(self):
        super().__post_init__()
        if self.n < 1:
            raise MalformedInputError("a pattern has length at least 1")

    @property
    def m(self) -> int:
        return self.n

    def __str__(self) -> str:
        # patterns are short, the digit form is the conventional name
        return self.compact() if self.n <= 9 else super().__str__()

    @classmethod
    def of(cls, p) -> "Pattern":
        if isinstance(p, Pattern):
            return p
        if isinstance(p, Permutation):
            return cls(p.word)
        if isinstance(p, str):
            return cls.parse(p)
        if isinstance(p, int):
            return cls.parse(str(p))
        return cls(tuple(p))


LENGTH3 = tuple(Pattern(w) for w in _itperms((1, 2, 3)))


class PatternSet(frozenset):
    """A set of consecutive patterns sharing one length."""

    def __new__(cls, patterns: Iterable = ()):
        if isinstance(patterns, str):
            patterns = [tok for tok in patterns.replace(" ", "").split(",") if tok]
        pats = [Pattern.of(p) for p in patterns]
        if len(set(pats)) != len(pats):
            raise MalformedInputError("duplicate pattern in set")
        if len({p.m for p in pats}) > 1:
            raise MalformedInputError("patterns in a set must share one length")
        return super().__new__(cls, pats)

    @property
    def m(self) -> int | None:
        for p in self:
            return p.m
        return None

    @classmethod
    def parse(cls, text: str) -> "PatternSet":
        text = text.strip()
        if not text:
            return cls()
        return cls(Pattern.parse(tok) for tok in text.split(","))

    def sorted(self) -> list[Pattern]:
        return sorted(self)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.sorted())

    def __repr__(self) -> str:
        return f"PatternSet({str(self)!r})"

    def map(self, f) -> "PatternSet":
        return PatternSet(f(p) for p in self)


def standardize(window: Sequence[int]) -> Pattern:
    """Return the pattern order-isomorphic to ``window``.

    >>> str(standardize((9, 6, 8)))
    '312'
    """
    window = tuple(window)
    if len(set(window)) != len(window):
        raise MalformedInputError(f"window has repeated entries: {window}")
    order = sorted(range(len(window)), key=window.__getitem__)
    ranks = [0] * len(window)
    for r, i in enumerate(order, 1):
        ranks[i] = r
    return Pattern(tuple(ranks))


def _matches(word, i, q) -> bool:
    # window word[i:i+m] is order-isomorphic to q iff the pairwise comparisons agree
    m = len(q)
    for s in range(m):
        for t in range(s + 1, m):
            if (word[i + s] < word[i + t]) != (q[s] < q[t]):
                return False
    return True


def consecutive_occurrences(p: Permutation, q: Pattern) -> list[int]:
    """1-based start indices of the consecutive occurrences of ``q`` in ``p``."""
    word, qw = tuple(p), tuple(q)
    m = len(qw)
    return [i + 1 for i in range(len(word) - m + 1) if _matches(word, i, qw)]


def count_occurrences(p: Permutation, q: Pattern) -> int:
    return len(consecutive_occurrences(p, q))


def avoids(p: Permutation, ps: Iterable[Pattern]) -> bool:
    return all(not consecutive_occurrences(p, q) for q in ps)


def _kind(p):
    # images of patterns stay patterns; anything else becomes a plain permutation
    return Pattern if isinstance(p, Pattern) else Permutation


def reverse(p: Permutation) -> Permutation:
    return _kind(p)(tuple(reversed(p.word)))


def complement(p: Permutation) -> Permutation:
    n1 = p.n + 1
    return _kind(p)(tuple(n1 - a for a in p.word))


def reverse_complement(p: Permutation) -> Permutation:
    return reverse(complement(p))


SYMMETRIES = {"R": reverse, "C": complement, "RC": reverse_complement}


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic order."""
    for w in _itperms(range(1, n + 1)):
        yield Permutation(w)
