"""
Truncated power series over the rationals, and the series-level checks.

A :class:`RationalSeries` stores coefficients ``c_0..c_N`` exactly; ``N`` is
its truncation order. Binary operations truncate to the smaller order, and
differentiation loses one order.

>>> z = RationalSeries.z(6)
>>> (z + z * z / 2).exp().coeffs[:5]
(Fraction(1, 1), Fraction(1, 1), Fraction(1, 1), Fraction(2, 3), Fraction(5, 12))
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath

from .closed_forms import count_2314_class17, involutions_count, fixed_points_total, u_ratio_rec
from .errors import DomainError, NumericalError, VerificationError

DEFAULT_ORDER = int(os.environ.get("CONPOP_TRUNCATION", "64"))
PRECISION_DIGITS = 50


class RationalSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise DomainError("truncation order must be >= 0")
        cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> "RationalSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "RationalSeries":
        return cls([1], order)

    @classmethod
    def z(cls, order: int) -> "RationalSeries":
        return cls([0, 1], order)

    @classmethod
    def log1m(cls, order: int) -> "RationalSeries":
        """ln(1 - z)."""
        return cls([0] + [Fraction(-1, k) for k in range(1, order + 1)], order)

    @classmethod
    def from_egf(cls, seq, order: int) -> "RationalSeries":
        """Series with coefficients seq[n] / n!."""
        return cls([Fraction(a, factorial(n)) for n, a in enumerate(seq)], order)

    # -- access -------------------------------------------------------------
    def __getitem__(self, n: int) -> Fraction:
        if n < 0 or n > self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.order > 5 else ""
        return f"RationalSeries([{head}{tail}], order={self.order})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, order: int) -> "RationalSeries":
        return RationalSeries(self.coeffs, min(order, self.order))

    def egf_sequence(self) -> list[Fraction]:
        """n! * c_n for each n."""
        return [c * factorial(n) for n, c in enumerate(self.coeffs)]

    # -- ring operations ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RationalSeries):
            return other
        return RationalSeries([other], self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return RationalSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)], n)

    __radd__ = __add__

    def __neg__(self):
        return RationalSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalSeries):
            c = Fraction(other)
            return RationalSeries([a * c for a in self.coeffs], self.order)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            s = Fraction(0)
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    s += a[i] * b[k - i]
            out.append(s)
        return RationalSeries(out, n)

    __rmul__ = __mul__

    def inverse(self) -> "RationalSeries":
        a = self.coeffs
        if a[0] == 0:
            raise DomainError("series with zero constant term is not invertible")
        inv0 = 1 / a[0]
        b = [inv0]
        for k in range(1, self.order + 1):
            s = sum((a[i] * b[k - i] for i in range(1, k + 1)), Fraction(0))
            b.append(-s * inv0)
        return RationalSeries(b, self.order)

    def __truediv__(self, other):
        if isinstance(other, RationalSeries):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def derivative(self) -> "RationalSeries":
        if self.order == 0:
            return RationalSeries([0], 0)
        return RationalSeries([k * self.coeffs[k] for k in range(1, self.order + 1)],
                              self.order - 1)

    def integral(self) -> "RationalSeries":
        """Antiderivative vanishing at 0; gains one order."""
        return RationalSeries([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)],
                              self.order + 1)

    def exp(self) -> "RationalSeries":
        a = self.coeffs
        if a[0] != 0:
            raise DomainError("exp needs a zero constant term")
        # E' = A'E  =>  n e_n = sum_{k=1}^n k a_k e_{n-k}
        e = [Fraction(1)]
        for n in range(1, self.order + 1):
            e.append(sum((k * a[k] * e[n - k] for k in range(1, n + 1) if a[k]), Fraction(0)) / n)
        return RationalSeries(e, self.order)

    def log(self) -> "RationalSeries":
        if self.coeffs[0] != 1:
            raise DomainError("log needs constant term 1")
        return (self.derivative() * self.truncate(self.order - 1).inverse()).integral()


# -- the series of the class-17 / class-11 analysis --------------------------

def _quadratic_exponent(order: int, sign: int = 1) -> RationalSeries:
    z = RationalSeries.z(order)
    return (z + z * z / 2) * sign


def egf_involutions(order: int = DEFAULT_ORDER) -> RationalSeries:
    """exp(z + z^2/2), whose n-th coefficient is I_n / n!."""
    return _quadratic_exponent(order).exp()


def series_F(order: int = DEFAULT_ORDER, check: bool = True) -> RationalSeries:
    """The solution of F' = (1+z)F + 1, F(0) = 0.

    With ``check`` the claim that n! [z^n]F is a nonnegative integer is
    verified for every coefficient, raising VerificationError otherwise.
    """
    c = [Fraction(0)]
    if order >= 1:
        c.append(Fraction(1))
    for n in range(1, order):
        c.append((c[n] + c[n - 1]) / (n + 1))
    F = RationalSeries(c, order)
    if check:
        for n, v in enumerate(F.egf_sequence()):
            if v.denominator != 1 or v < 0:
                raise VerificationError(f"n! [z^{n}]F = {v} is not a nonnegative integer")
    return F


def series_F_product(order: int = DEFAULT_ORDER) -> RationalSeries:
    """F as exp(z + z^2/2) * integral_0^z exp(-t - t^2/2) dt, computed by series arithmetic."""
    up = _quadratic_exponent(order).exp()
    down = _quadratic_exponent(order, -1).exp().integral().truncate(order)
    return up * down


def series_G(order: int = DEFAULT_ORDER) -> RationalSeries:
    """EGF of the 2314 counts over Av_n(123,132), from their recurrence."""
    return RationalSeries([0, 0, 0, 0] + [Fraction(count_2314_class17(n), factorial(n))
                                          for n in range(4, order + 1)], order)


def verify_G_cauchy(order: int = 30, check: bool = True) -> RationalSeries:
    """Residual of G'' - (1+z)G' - G - (z^2/2) exp(z + z^2/2), through order - 2.

    Also requires G(0) = G'(0) = 0. With ``check`` a nonzero residual raises.
    """
    if order < 6:
        raise DomainError("need order >= 6")
    G = series_G(order)
    z = RationalSeries.z(order)
    rhs = z * z / 2 * egf_involutions(order)
    d1 = G.derivative()
    res = d1.derivative() - (1 + z) * d1 - G - rhs
    if check:
        if G[0] != 0 or d1[0] != 0:
            raise VerificationError("initial conditions G(0) = G'(0) = 0 fail")
        if not res.is_zero():
            bad = next(k for k, c in enumerate(res.coeffs) if c)
            raise VerificationError(f"Cauchy residual nonzero at z^{bad}: {res[bad]}")
    return res


def G_closed_form(order: int) -> RationalSeries:
    """F/2 + z(z-2) exp(z + z^2/2) / 4.

    The factors exp(+-1/2) in exp((1+z)^2/2) * integral exp(-(1+t)^2/2) cancel,
    leaving the rational series ``series_F_product``.
    """
    z = RationalSeries.z(order)
    return series_F_product(order) / 2 + z * (z - 2) * egf_involutions(order) / 4


def verify_G_closed_form(order: int = 30) -> bool:
    if order < 6:
        raise DomainError("need order >= 6")
    return series_G(order) == G_closed_form(order)


def f_closed_form(order: int) -> RationalSeries:
    """z(2(z-1)ln(1-z) + z^3 + 3z^2 - 2z) / (4(1-z)^2(1+z))."""
    z = RationalSeries.z(order)
    num = z * (2 * (z - 1) * RationalSeries.log1m(order) + z * z * z + 3 * z * z - 2 * z)
    den = 4 * (1 - z) * (1 - z) * (1 + z)
    return num / den


def u_series(order: int) -> RationalSeries:
    u = u_ratio_rec(order)
    return RationalSeries([u.get(n, 0) for n in range(order + 1)], order)


def verify_f_closed_form(order: int = 30) -> bool:
    if order < 5:
        raise DomainError("need order >= 5")
    return f_closed_form(order) == u_series(order)


# -- numeric side: saddle-point bound and asymptotic diagnostics --------------

@dataclass
class SaddleReport:
    """Saddle-point bound F(sqrt n)/n^(n/2) against n I_n / n!, in log space."""
    n: int
    log_bound: mpmath.mpf
    log_reference: mpmath.mpf
    ratio: float
    coefficient: Fraction | None = None

    @property
    def bound(self):
        return mpmath.exp(self.log_bound)

    @property
    def reference(self):
        return mpmath.exp(self.log_reference)


def F_numeric(x, dps: int = PRECISION_DIGITS):
    """F(x) = exp((1+x)^2/2) * integral_0^x exp(-(1+t)^2/2) dt by adaptive quadrature."""
    with mpmath.workdps(dps + 10):
        x = mpmath.mpf(x)
        if x == 0:
            return mpmath.mpf(0)
        integral, err = mpmath.quad(lambda t: mpmath.exp(-(1 + t) ** 2 / 2), [0, x], error=True)
        if not err < mpmath.mpf(10) ** (-30):
            raise NumericalError(f"quadrature error estimate {err} above 1e-30")
        return +(mpmath.exp((1 + x) ** 2 / 2) * integral)


def log_exact(v) -> mpmath.mpf:
    """Natural log of a positive int or Fraction at working precision."""
    v = Fraction(v)
    return mpmath.log(v.numerator) - mpmath.log(v.denominator)


def saddle_bound(n: int, exact_upto: int = 50) -> SaddleReport:
    """Evaluate the bound with zeta = sqrt(n); check it against the exact coefficient.

    The exact [z^n]F is compared for ``n <= exact_upto``; a violation raises
    VerificationError.
    """
    if n < 1:
        raise DomainError("saddle bound needs n >= 1")
    with mpmath.workdps(PRECISION_DIGITS):
        x = mpmath.sqrt(n)
        log_bound = mpmath.log(F_numeric(x)) - mpmath.mpf(n) / 2 * mpmath.log(n)
        log_ref = log_exact(Fraction(n * involutions_count(n), factorial(n)))
        ratio = float(mpmath.exp(log_bound - log_ref))
        coef = None
        if n <= exact_upto:
            coef = series_F(n, check=False)[n]
            if log_exact(coef) > log_bound:
                raise VerificationError(f"[z^{n}]F = {coef} exceeds the saddle bound")
    return SaddleReport(n, log_bound, log_ref, ratio, coef)


def involution_asymptotic_ratio(n: int) -> float:
    """(I_n/n!) divided by n^(-n/2) exp(n/2 + sqrt n - 1/4) / (2 sqrt(pi n))."""
    with mpmath.workdps(PRECISION_DIGITS):
        n_ = mpmath.mpf(n)
        log_asym = (-n_ / 2 * mpmath.log(n_) + n_ / 2 + mpmath.sqrt(n_) - mpmath.mpf(1) / 4
                    - mpmath.log(2 * mpmath.sqrt(mpmath.pi * n_)))
        return float(mpmath.exp(log_exact(Fraction(involutions_count(n), factorial(n))) - log_asym))


def fixed_point_mean(n: int) -> Fraction:
    """Average number of fixed points of an involution of size n, exactly."""
    return Fraction(fixed_points_total(n), involutions_count(n))


def fixed_point_sqrt_ratio(n: int) -> float:
    """fp_n / I_n / sqrt(n)."""
    with mpmath.workdps(PRECISION_DIGITS):
        m = fixed_point_mean(n)
        return float(mpmath.mpf(m.numerator) / m.denominator / mpmath.sqrt(n))
