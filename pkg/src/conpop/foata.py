"""
Foata's hat map between involutions and Av(123, 132).

An involution is written in standard form (each cycle least element first,
cycles by decreasing least element); erasing the parentheses gives the hat
word. The cycle starts are exactly the left-to-right minima of that word,
which is how the inverse map reads the cycles back.

>>> inv = Involution.parse("732458169")
>>> format_standard_form(standard_form(inv))
'(9)(6 8)(5)(4)(2 3)(1 7)'
>>> str(foata_hat(inv))
'9,6,8,5,4,2,3,1,7'
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from .errors import DomainError, MalformedInputError
from .perm import Pattern, PatternSet, Permutation, avoids

__all__ = [
    "Involution", "standard_form", "format_standard_form", "parse_standard_form",
    "foata_hat", "foata_unhat", "involutions", "window_shapes", "classify_windows",
    "ShapeTotals", "alpha_beta_gamma_totals",
    "ALPHA", "BETA", "GAMMA", "SHAPE_PATTERN", "LISTED_SHAPES", "UNLISTED_SHAPES",
]

CLASS17 = PatternSet.parse("123,132")

StandardForm = list[tuple[int, ...]]


class Involution(Permutation):
    """A permutation equal to its own inverse."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_involution():
            raise DomainError(f"{self} is not an involution")

    @property
    def cycles(self) -> list[tuple[int, ...]]:
        return [(i,) if a == i else (i, a)
                for i, a in enumerate(self.word, 1) if a >= i]

    @property
    def fixed_points(self) -> int:
        return sum(1 for i, a in enumerate(self.word, 1) if a == i)

    @classmethod
    def from_cycles(cls, cycles) -> "Involution":
        n = sum(len(c) for c in cycles)
        word = [0] * n
        for c in cycles:
            if len(c) == 1:
                (a,) = c
                _place(word, a, a)
            elif len(c) == 2:
                a, b = c
                _place(word, a, b)
                _place(word, b, a)
            else:
                raise DomainError(f"cycle {c} is longer than 2")
        return cls(tuple(word))


def _place(word, i, v):
    if not 1 <= i <= len(word) or word[i - 1]:
        raise MalformedInputError("cycles do not describe a permutation of 1..n")
    word[i - 1] = v


def standard_form(inv) -> StandardForm:
    if not isinstance(inv, Involution):
        inv = Involution(tuple(inv))
    return sorted(inv.cycles, key=lambda c: -c[0])


def format_standard_form(form: StandardForm) -> str:
    return "".join("(" + " ".join(map(str, c)) + ")" for c in form)


def parse_standard_form(text: str) -> Involution:
    """Parse cycle text like ``(9)(6 8)(5)``; any cycle order is accepted."""
    text = text.strip()
    if not re.fullmatch(r"(\(\s*\d+(\s*[ ,]\s*\d+)*\s*\)\s*)*", text):
        raise MalformedInputError(f"cannot parse cycle notation {text!r}")
    cycles = [tuple(int(t) for t in re.split(r"[ ,]+", body.strip()))
              for body in re.findall(r"\(([^)]*)\)", text)]
    return Involution.from_cycles(cycles)


def foata_hat(inv) -> Permutation:
    return Permutation(tuple(a for c in standard_form(inv) for a in c))


def _starts(word) -> list[bool]:
    out, low = [], None
    for a in word:
        is_min = low is None or a < low
        out.append(is_min)
        if is_min:
            low = a
    return out


def foata_unhat(p) -> Involution:
    """Inverse of the hat map on Av(123, 132)."""
    p = p if isinstance(p, Permutation) else Permutation(tuple(p))
    if not avoids(p, CLASS17):
        raise DomainError(f"{p} contains a consecutive 123 or 132")
    cycles: list[list[int]] = []
    for a, start in zip(p.word, _starts(p.word)):
        if start:
            cycles.append([a])
        else:
            cycles[-1].append(a)
    # avoiding 123 and 132 keeps every segment between minima at length <= 2
    return Involution.from_cycles(cycles)


def involutions(n: int) -> Iterator[Involution]:
    """All involutions of size n (pair the smallest free point, or fix it)."""
    word = [0] * n

    def rec(i):
        while i <= n and word[i - 1]:
            i += 1
        if i > n:
            yield Involution(tuple(word))
            return
        word[i - 1] = i
        yield from rec(i + 1)
        for j in range(i + 1, n + 1):
            if not word[j - 1]:
                word[i - 1], word[j - 1] = j, i
                yield from rec(i + 1)
                word[j - 1] = 0
        word[i - 1] = 0

    yield from rec(1)


# -- window shapes ----------------------------------------------------------
# a < b < c are the window letters; "*" is a partner outside the window.

ALPHA = "(b c)(a *)"
BETA = "(* b)(a c)"
GAMMA = "(* c)(a b)"

SHAPE_PATTERN = {
    "(c)(b)(a)": "321",
    "(c)(b)(a *)": "321",
    "(* c)(b)(a)": "321",
    "(* c)(b)(a *)": "321",
    "(b c)(a)": "231",
    ALPHA: "231",
    "(b)(a c)": "213",
    BETA: "213",
    "(c)(a b)": "312",
    GAMMA: "312",
}

# (* c)(b)(a *) is a 321 shape outside the three usually listed; it occurs from n = 5
UNLISTED_SHAPES = frozenset({"(* c)(b)(a *)"})
LISTED_SHAPES = tuple(s for s in SHAPE_PATTERN if s not in UNLISTED_SHAPES)
FIXED_POINT_FREE = frozenset({ALPHA, BETA, GAMMA})


def window_shapes(inv) -> list[str]:
    """Cycle shape of each consecutive length-3 window of the hat word."""
    word = foata_hat(inv).word
    n = len(word)
    start = _starts(word)
    paired_next = [i + 1 < n and not start[i + 1] for i in range(n)]
    shapes = []
    for i in range(n - 2):
        roles = "".join("S" if start[i + j] else "E" for j in range(3))
        tail = " *" if paired_next[i + 2] else ""
        if roles == "SSS":
            shapes.append("(c)(b)(a" + tail + ")")
        elif roles == "ESS":
            shapes.append("(* c)(b)(a" + tail + ")")
        elif roles == "SES":
            shapes.append("(b c)(a" + tail + ")")
        elif roles == "ESE":
            shapes.append(BETA if word[i] < word[i + 2] else GAMMA)
        elif roles == "SSE":
            shapes.append("(b)(a c)" if word[i] < word[i + 2] else "(c)(a b)")
        else:  # pragma: no cover - SEE/EE* cannot come from an involution
            raise AssertionError(f"impossible roles {roles} in {word}")
    return shapes


def classify_windows(inv) -> Counter:
    """Counts of each window shape, plus ``"delta"`` for windows touching a fixed point."""
    c = Counter(window_shapes(inv))
    c["delta"] = sum(v for s, v in c.items() if s not in FIXED_POINT_FREE)
    return c


@dataclass
class ShapeTotals:
    n: int
    alpha: int
    beta: int
    gamma: int
    delta: int
    by_shape: dict[str, int] = field(default_factory=dict)
    fixed_points: int = 0
    count: int = 0

    def pattern_totals(self, listed_only: bool = False) -> dict[str, int]:
        """Window totals per length-3 pattern, grouped by the pattern each shape produces."""
        out = {"213": 0, "231": 0, "312": 0, "321": 0}
        for s, v in self.by_shape.items():
            if listed_only and s in UNLISTED_SHAPES:
                continue
            out[SHAPE_PATTERN[s]] += v
        return out


def alpha_beta_gamma_totals(n: int) -> ShapeTotals:
    """Totals of every window shape over all involutions of size n (brute force)."""
    if n < 0:
        raise DomainError("n must be >= 0")
    total: Counter = Counter()
    fp = count = 0
    for inv in involutions(n):
        total.update(window_shapes(inv))
        fp += inv.fixed_points
        count += 1
    by_shape = {s: total.get(s, 0) for s in SHAPE_PATTERN}
    delta = sum(v for s, v in by_shape.items() if s not in FIXED_POINT_FREE)
    return ShapeTotals(n, by_shape[ALPHA], by_shape[BETA], by_shape[GAMMA], delta,
                       by_shape, fp, count)


def pattern_of(shape: str) -> Pattern:
    return Pattern.parse(SHAPE_PATTERN[shape])
