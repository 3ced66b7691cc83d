"""
Exact closed forms and recurrences for the solved classes.

Everything here is integer or :class:`fractions.Fraction` arithmetic. Notation:
``p231(n)`` is the total number of consecutive 231 occurrences over
Av_n(123,132,321), and ``p312_l`` / ``p312_r`` split the 312 total by whether
the value 1 is second to last or last.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm

from .errors import DomainError

__all__ = [
    "double_factorial", "harmonic_parity_sum", "class11_size",
    "count_231_class11", "count_312_class11", "count_213_class11",
    "count_312_l", "count_312_r", "count_312_l_rec", "count_312_r_rec",
    "u_ratio", "u_ratio_rec",
    "involutions_count", "fixed_points_total", "count_321_class18",
    "class18_counts", "count_2314_class17", "class11_counts_upto",
]


def double_factorial(n: int) -> int:
    """n!! with 0!! = (-1)!! = 1."""
    if n < -1:
        raise DomainError(f"double factorial undefined for n={n}")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def harmonic_parity_sum(n: int, parity: int) -> Fraction:
    """Sum of 1/k over 1 <= k <= n with k % 2 == parity."""
    if n < 1:
        return Fraction(0)
    ks = range(2 if parity % 2 == 0 else 1, n + 1, 2)
    # one common denominator instead of a gcd per term
    den = lcm(*ks) if len(ks) else 1
    return Fraction(sum(den // k for k in ks), den)


def _require(n, lo, what):
    if n < lo:
        raise DomainError(f"{what} is defined for n >= {lo}, got {n}")


def class11_size(n: int) -> int:
    # (n-2)!! needs n >= 2; the (-1)!! = 1 extension would give 2 at n = 1, not 1
    _require(n, 2, "|Av_n(123,132,321)|")
    return double_factorial(n - 1) + double_factorial(n - 2)


def count_231_class11(n: int) -> int:
    _require(n, 3, "231 count")
    # ceil((n-3)/2) and ceil((n-2)/2) in integer arithmetic
    return double_factorial(n - 1) * ((n - 2) // 2) + double_factorial(n - 2) * ((n - 1) // 2)


def _l_factor(n: int) -> Fraction:
    # coefficient of (n-1)!! in the 312 count of the left part
    return (Fraction((-1) ** (n - 1) + n - 3, 4)
            + harmonic_parity_sum(n - 1, (n + 1) % 2) / 2)


def _r_factor(n: int) -> Fraction:
    return (Fraction((-1) ** n + n - 4, 4)
            + harmonic_parity_sum(n - 2, n % 2) / 2)


def count_312_l(n: int) -> int:
    _require(n, 3, "left 312 count")
    v = double_factorial(n - 1) * _l_factor(n)
    assert v.denominator == 1, (n, v)
    return v.numerator


def count_312_r(n: int) -> int:
    _require(n, 3, "right 312 count")
    v = double_factorial(n - 2) * _r_factor(n)
    assert v.denominator == 1, (n, v)
    return v.numerator


def count_312_class11(n: int) -> int:
    return count_312_l(n) + count_312_r(n)


def count_213_class11(n: int) -> int:
    _require(n, 3, "213 count")
    v = (n - 2) * class11_size(n) - count_231_class11(n) - count_312_class11(n)
    if v < 0:
        raise AssertionError(f"negative 213 count at n={n}")
    return v


@lru_cache(maxsize=None)
def count_312_l_rec(n: int) -> int:
    """Left 312 count from the two-step recurrence, seeded at n = 3, 4."""
    _require(n, 3, "left 312 recurrence")
    if n == 3:
        return 1
    if n == 4:
        return 2
    prev = count_312_l_rec(n - 2)
    return ((n - 1) * (prev + double_factorial(n - 3))
            - double_factorial(n - 5) * (n - 3) * (n - 2) // 2)


def count_312_r_rec(n: int) -> int:
    _require(n, 4, "right 312 recurrence")
    return count_312_l_rec(n - 1)


def u_ratio(n: int) -> Fraction:
    """Left 312 count over (n-1)!!, from the closed form."""
    return Fraction(count_312_l(n), double_factorial(n - 1))


def u_ratio_rec(n_max: int) -> dict[int, Fraction]:
    """u_3..u_{n_max} from u_n = u_{n-2} + 1 - (n-2)/(2(n-1)), seeded u_3=1/2, u_4=2/3."""
    u = {3: Fraction(1, 2), 4: Fraction(2, 3)}
    for n in range(5, n_max + 1):
        u[n] = u[n - 2] + 1 - Fraction(n - 2, 2 * (n - 1))
    return {n: v for n, v in u.items() if n <= n_max}


_INV = [1, 1]
_INV_LOCK = threading.Lock()


def involutions_count(n: int) -> int:
    """I_n, the number of involutions of size n."""
    if n < 0:
        raise DomainError("n must be >= 0")
    if n >= len(_INV):
        with _INV_LOCK:
            while len(_INV) <= n:
                k = len(_INV)
                _INV.append(_INV[k - 1] + (k - 1) * _INV[k - 2])
    return _INV[n]


def fixed_points_total(n: int) -> int:
    """Total number of fixed points over all involutions of size n."""
    if n < 0:
        raise DomainError("n must be >= 0")
    return n * involutions_count(n - 1) if n else 0


def count_321_class18(n: int) -> int:
    _require(n, 2, "321 count in Av(132,231)")
    return (n - 1) * 2 ** (n - 2) - 2 ** (n - 1) + 1


def class18_counts(n: int) -> dict[str, int]:
    """All four popularities in Av_n(132,231).

    Reversal fixes the class and swaps 123<->321 and 213<->312, so the
    remaining windows split evenly between 213 and 312.
    """
    _require(n, 2, "Av(132,231) counts")
    c321 = count_321_class18(n)
    rest = (n - 2) * 2 ** (n - 1) - 2 * c321
    return {"123": c321, "213": rest // 2, "312": rest // 2, "321": c321}


@lru_cache(maxsize=None)
def _p2314(n: int) -> int:
    if n == 4:
        return 1
    if n == 5:
        return 4
    return _p2314(n - 1) + (n - 1) * _p2314(n - 2) + comb(n - 2, 2) * involutions_count(n - 4)


def count_2314_class17(n: int) -> int:
    """Consecutive 2314 occurrences over Av_n(123,132)."""
    _require(n, 4, "2314 count")
    for k in range(4, n):  # warm the cache bottom-up; avoids deep recursion
        _p2314(k)
    return _p2314(n)


def class11_counts_upto(n_max: int) -> dict[str, list[int | None]]:
    """The 231, 312 and 213 totals for n = 0..n_max (None below n = 3).

    Same formulas as the per-n functions, with the double factorials and
    parity-restricted harmonic sums carried along incrementally.
    """
    df = [1, 1]  # df[j] = (j-1)!!
    for j in range(2, n_max + 2):
        df.append(df[j - 2] * (j - 1))
    # harm[p][j] = sum of 1/k, k <= j, k % 2 == p
    harm = [[Fraction(0)], [Fraction(0)]]
    for j in range(1, n_max + 1):
        for p in (0, 1):
            harm[p].append(harm[p][j - 1] + (Fraction(1, j) if j % 2 == p else 0))
    out = {"231": [None] * (n_max + 1), "312": [None] * (n_max + 1), "213": [None] * (n_max + 1)}
    for n in range(3, n_max + 1):
        d1, d2 = df[n], df[n - 1]  # (n-1)!!, (n-2)!!
        c231 = d1 * ((n - 2) // 2) + d2 * ((n - 1) // 2)
        lf = Fraction((-1) ** (n - 1) + n - 3, 4) + harm[(n + 1) % 2][n - 1] / 2
        rf = Fraction((-1) ** n + n - 4, 4) + harm[n % 2][n - 2] / 2
        c312 = d1 * lf + d2 * rf
        assert c312.denominator == 1
        c312 = c312.numerator
        out["231"][n] = c231
        out["312"][n] = c312
        out["213"][n] = (n - 2) * (d1 + d2) - c231 - c312
    return out
