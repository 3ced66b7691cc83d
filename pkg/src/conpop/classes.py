"""The eighteen avoidance classes of two or more length-3 consecutive patterns.

Classes are numbered 1..18 in the customary order. ``CLAIMED_LIMITS`` holds the asymptotic
popularities of the non-avoided patterns: a Fraction, ``"N/A"`` where the class
is empty for large n, or ``None`` where the value is open.
"""

from fractions import Fraction

from .perm import LENGTH3, Pattern, PatternSet

_AVOID = {
    1: "123,132,312,321",
    2: "123,132,213,312",
    3: "132,213,231,312",
    4: "123,132,231,321",
    5: "132,213,312,321",
    6: "123,132,213,321",
    7: "123,132,213",
    8: "123,132,231",
    9: "132,213,231",
    10: "123,132,312",
    11: "123,132,321",
    12: "123,231,312",
    13: "123,231",
    14: "213,231",
    15: "132,213",
    16: "123,321",
    17: "123,132",
    18: "132,231",
}

CLASSES = {k: PatternSet.parse(v) for k, v in _AVOID.items()}

OPEN_CLASSES = (10, 12, 13, 14, 15)

_h, _q = Fraction(1, 2), Fraction(1, 4)
_CLAIMS = {
    1: {"213": _h, "231": _h},
    2: {"231": 0, "321": 1},
    3: {"123": _h, "321": _h},
    4: {"213": "N/A", "312": "N/A"},
    5: {"123": 1, "231": 0},
    6: {"231": _h, "312": _h},
    7: {"231": _h, "312": _h, "321": 0},
    8: {"213": 0, "312": 0, "321": 1},
    9: {"123": _h, "312": 0, "321": _h},
    11: {"213": _q, "231": _h, "312": _q},
    16: {"132": _q, "213": _q, "231": _q, "312": _q},
    17: {"213": _q, "231": _h, "312": _q, "321": 0},
    18: {"123": _h, "213": 0, "312": 0, "321": _h},
}


def free_patterns(ps: PatternSet) -> list[Pattern]:
    """Length-3 patterns not in ``ps``, in lexicographic order."""
    return [q for q in LENGTH3 if q not in ps]


def _claims():
    out = {}
    for k, ps in CLASSES.items():
        row = _CLAIMS.get(k, {})
        out[k] = {q: (Fraction(row[str(q)]) if isinstance(row.get(str(q)), int) else row.get(str(q)))
                  for q in free_patterns(ps)}
    return out


CLAIMED_LIMITS = _claims()


def class_number(ps: PatternSet):
    """Class number of ``ps``, or None if it is not one of the eighteen."""
    for k, v in CLASSES.items():
        if v == ps:
            return k
    return None
