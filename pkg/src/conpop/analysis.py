"""
Finite-n popularity ratios, limit estimation, the eighteen-class report and the
conjecture harness.

The ratio at size n is ``p_n / (n * |A_n|)`` as an exact Fraction; it is
absent (None) when the class is empty or n is below the pattern length.

Limit estimates use Aitken's delta-squared on three tail terms at sizes
``a < b < c`` with ``b*b == a*c`` (spacing ratio near 1.25). A tail
``L + k * n**-s`` is geometric along such a grid, so the transform removes the
leading correction whatever the exponent s; on consecutive terms it would
barely help with the slow ``1/sqrt(n)`` corrections of classes 7 and 17.
Wider spacing lets the next correction term leak in more.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

from . import closed_forms as cf
from .classes import CLASSES, CLAIMED_LIMITS, OPEN_CLASSES, class_number, free_patterns
from .counting import popularity_table
from .errors import InsufficientDataError, InvalidQueryError
from .perm import Pattern, PatternSet

TOL_CLOSED = float(os.environ.get("CONPOP_TOL_CLOSED", "0.005"))
TOL_DP = float(os.environ.get("CONPOP_TOL_DP", "0.03"))
N_CLOSED = 2000
N_DP = 200

CLASS11 = CLASSES[11]
CLASS17 = CLASSES[17]
CLASS18 = CLASSES[18]


@dataclass
class PopularitySequence:
    avoid: PatternSet
    pattern: Pattern
    values: list[tuple[int, Fraction | None]]
    backend: str = "dp"

    def defined(self) -> list[tuple[int, Fraction]]:
        return [(n, v) for n, v in self.values if v is not None]

    def at(self, n: int) -> Fraction | None:
        for k, v in self.values:
            if k == n:
                return v
        raise KeyError(n)


def closed_form_available(ps, q) -> bool:
    ps, q = PatternSet(ps), Pattern.of(q)
    return ((ps == CLASS11 and str(q) in ("213", "231", "312"))
            or (ps == CLASS18 and str(q) in ("123", "213", "312", "321"))
            or (ps == CLASS17 and str(q) == "2314"))


def _closed_counts(ps, q, ns) -> dict[int, tuple[int, int]]:
    """{n: (occurrences, class size)} from the closed forms."""
    key = str(q)
    out = {}
    if ps == CLASS11:
        counts = cf.class11_counts_upto(max(ns))[key]
        for n in ns:
            out[n] = (counts[n], cf.class11_size(n))
    elif ps == CLASS18:
        for n in ns:
            out[n] = (cf.class18_counts(n)[key], 2 ** (n - 1))
    else:
        for n in ns:
            out[n] = (cf.count_2314_class17(n), cf.involutions_count(n))
    return out


def popularity_sequence(ps, q, n_max: int, backend: str = "dp", ns=None) -> PopularitySequence:
    """Exact ratios p_n / (n |A_n|) for n in ``ns`` (default ``m..n_max``).

    ``backend`` is ``"dp"``, ``"closed-form"`` or ``"auto"`` (closed form
    where one exists).
    """
    ps, q = PatternSet(ps), Pattern.of(q)
    if q in ps:
        raise InvalidQueryError(f"pattern {q} is avoided by the class")
    if backend == "auto":
        backend = "closed-form" if closed_form_available(ps, q) else "dp"
    ns = list(range(q.m, n_max + 1)) if ns is None else sorted(set(ns))
    values: list[tuple[int, Fraction | None]] = []
    if backend == "closed-form":
        if not closed_form_available(ps, q):
            raise InvalidQueryError(f"no closed form for pattern {q} in Av({ps})")
        counts = _closed_counts(ps, q, [n for n in ns if n >= q.m])
        for n in ns:
            if n < q.m:
                values.append((n, None))
            else:
                occ, size = counts[n]
                values.append((n, Fraction(occ, n * size) if size else None))
    elif backend == "dp":
        sizes, occ = popularity_table(max(ns), ps, [q])
        for n in ns:
            size = sizes[n]
            ok = n >= q.m and size > 0
            values.append((n, Fraction(occ[q][n], n * size) if ok else None))
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return PopularitySequence(ps, q, values, backend)


@dataclass
class LimitEstimate:
    raw: Fraction
    extrapolated: Fraction | None
    n_max: int
    grid: tuple[int, ...]
    confident: bool
    monotone: bool
    diff_ratio: float | None
    note: str = ""

    @property
    def value(self) -> Fraction:
        return self.extrapolated if self.extrapolated is not None else self.raw


# spacing windows tried in turn; the first admits the preferred ratio ~1.25
GRID_WINDOWS = ((Fraction(6, 5), Fraction(27, 20)), (Fraction(21, 20), Fraction(5, 2)))
GRID_TARGET = 1.25


def _grid(defined: dict[int, Fraction], n_max: int) -> tuple[list[int], bool]:
    """Three tail indices a < b < c with b*b == a*c and equal parity.

    Exact geometric spacing is what makes the transform exact on a pure
    power-law tail. Returns ``(grid, exact)``; without any exact triple in the
    upper half of the range, the last three same-parity terms are returned
    with ``exact=False``.
    """
    for lo, hi in GRID_WINDOWS:
        for c in sorted((n for n in defined if 2 * n >= n_max), reverse=True):
            best = None
            for b in defined:
                if b >= c or b * b % c or not lo <= Fraction(c, b) <= hi:
                    continue
                a = b * b // c
                if a in defined and a % 2 == b % 2 == c % 2:
                    key = abs(c / b - GRID_TARGET)
                    if best is None or key < best[0]:
                        best = (key, [a, b, c])
            if best:
                return best[1], True
    same = [n for n in sorted(defined) if n % 2 == n_max % 2]
    return same[-3:], False


def estimate_limit(seq: PopularitySequence | list, min_entries: int = 5) -> LimitEstimate:
    """Aitken delta-squared on a geometric grid of the tail.

    Falls back to the last raw value, flagged not confident, when the three
    grid differences are not of one sign and shrinking.
    """
    pairs = seq.defined() if isinstance(seq, PopularitySequence) else \
        [(n, Fraction(v)) for n, v in seq if v is not None]
    if len(pairs) < min_entries:
        raise InsufficientDataError(f"need at least {min_entries} defined entries, got {len(pairs)}")
    defined = dict(pairs)
    n_max = max(defined)
    raw = defined[n_max]
    same = [defined[n] for n in sorted(defined) if n % 2 == n_max % 2][-6:]
    steps = [b - a for a, b in zip(same, same[1:])]
    monotone = all(s >= 0 for s in steps) or all(s <= 0 for s in steps)

    grid, exact = _grid(defined, n_max)
    if len(grid) < 3:
        return LimitEstimate(raw, None, n_max, tuple(grid), False, monotone, None,
                             "grid too short for extrapolation")
    x1, x2, x3 = (defined[n] for n in grid)
    d1, d2 = x2 - x1, x3 - x2
    if d1 == 0 and d2 == 0:
        return LimitEstimate(raw, None, n_max, tuple(grid), True, monotone, 0.0, "constant tail")
    if d1 == 0 or d2 - d1 == 0:
        return LimitEstimate(raw, None, n_max, tuple(grid), False, monotone, None,
                             "vanishing Aitken denominator")
    rho = d2 / d1
    if not 0 < rho < 1:
        note = "differences alternate in sign" if rho <= 0 else "differences not shrinking"
        return LimitEstimate(raw, None, n_max, tuple(grid), False, monotone, float(rho), note)
    ext = x3 - d2 * d2 / (d2 - d1)
    return LimitEstimate(raw, ext, n_max, tuple(grid), exact, monotone, float(rho),
                         "" if exact else "no geometric grid; consecutive terms used")


# -- report ------------------------------------------------------------------

@dataclass
class Table1Row:
    klass: int
    pattern: str
    claimed: str
    backend: str
    n_max: int | None
    estimate: float | None
    raw: float | None
    tolerance: float | None
    status: str  # pass | fail | open | n/a
    note: str = ""


def _fmt_claim(v) -> str:
    if v is None:
        return "?"
    return str(v)


def table1_report(n_max: dict[int, int] | int | None = None,
                  n_closed: int = N_CLOSED,
                  tol_closed: float = TOL_CLOSED, tol_dp: float = TOL_DP,
                  classes=None) -> list[Table1Row]:
    """Finite-n estimates for every class and free pattern against the claimed limits.

    Classes with closed forms (11, 18) are evaluated at ``n_closed``; the rest
    run the DP to ``n_max`` (per class, or one value for all) and extrapolate.
    """
    rows: list[Table1Row] = []
    for k in (classes or sorted(CLASSES)):
        ps = CLASSES[k]
        nm = n_max.get(k, N_DP) if isinstance(n_max, dict) else (n_max or N_DP)
        qs = free_patterns(ps)
        closed = all(closed_form_available(ps, q) for q in qs)
        if not closed:
            sizes, occ = popularity_table(nm, ps, qs)
        for q in qs:
            claim = CLAIMED_LIMITS[k][q]
            if claim == "N/A":
                rows.append(Table1Row(k, str(q), "N/A", "dp", nm, None, None, None, "n/a",
                                      "class empty for n > 3"))
                continue
            if closed:
                seq = popularity_sequence(ps, q, n_closed, "closed-form",
                                          ns=range(max(3, n_closed - 20), n_closed + 1))
                est = seq.defined()[-1][1]
                raw, tol, backend, used_n, note = est, tol_closed, "closed-form", n_closed, ""
            else:
                vals = [(n, Fraction(occ[q][n], n * sizes[n]) if n >= 3 and sizes[n] else None)
                        for n in range(nm + 1)]
                try:
                    le = estimate_limit(vals)
                except InsufficientDataError as exc:
                    rows.append(Table1Row(k, str(q), _fmt_claim(claim), "dp", nm, None, None,
                                          None, "n/a", str(exc)))
                    continue
                est, raw, tol, backend, used_n = le.value, le.raw, tol_dp, "dp+aitken", nm
                note = le.note
            if claim is None or k in OPEN_CLASSES:
                status = "open"
                tol = None
            else:
                status = "pass" if abs(float(est) - float(claim)) <= tol else "fail"
            rows.append(Table1Row(k, str(q), _fmt_claim(claim), backend, used_n,
                                  float(est), float(raw), tol, status, note))
    return rows


# -- conjecture harness --------------------------------------------------------

@dataclass
class Comparison:
    pattern: str
    estimate_a: float
    estimate_b: float
    difference: float
    agree: bool


@dataclass
class ConjectureReport:
    base: str
    removed: str
    enlarged: str
    n_max: int
    tolerance: float
    hypothesis_estimate: float | None
    hypothesis_plausible: bool
    degenerate: bool
    comparisons: list[Comparison] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return all(c.agree for c in self.comparisons)


def conjecture_check(base, removed, targets=None, n_max: int = N_DP,
                     tolerance: float = TOL_DP) -> ConjectureReport:
    """Compare pop_A(q) with pop_B(q) for A = Av(base), B = Av(base + removed).

    The hypothesis pop_A(removed) = 0 is estimated too; an implausible
    hypothesis is flagged but the comparison is still reported.
    """
    ps_a = PatternSet(base)
    p = Pattern.of(removed)
    if p in ps_a:
        raise InvalidQueryError(f"{p} is already avoided by the base class")
    ps_b = PatternSet(list(ps_a) + [p])
    if targets is None:
        targets = [q for q in free_patterns(ps_b)] if p.m == 3 else []
    targets = [Pattern.of(q) for q in targets]
    for q in targets:
        if q in ps_b:
            raise InvalidQueryError(f"target {q} is avoided by the enlarged class")
    tag = lambda ps: f"Av({ps})" + (f" [class {class_number(ps)}]" if class_number(ps) else "")
    report = ConjectureReport(tag(ps_a), str(p), tag(ps_b), n_max, tolerance, None, False, False)

    sizes_a, occ_a = popularity_table(n_max, ps_a, [p] + targets)
    sizes_b, occ_b = popularity_table(n_max, ps_b, targets)
    if not any(occ_a[p]):
        report.degenerate = True
        report.notes.append(f"{p} never occurs in Av({ps_a}) up to n={n_max}; the classes coincide")

    def est(sizes, occ, q):
        vals = [(n, Fraction(occ[q][n], n * sizes[n]) if n >= q.m and sizes[n] else None)
                for n in range(n_max + 1)]
        return estimate_limit(vals)

    try:
        h = est(sizes_a, occ_a, p)
        report.hypothesis_estimate = float(h.value)
        report.hypothesis_plausible = abs(float(h.value)) <= tolerance
        if not report.hypothesis_plausible:
            report.notes.append(f"pop({p}) in Av({ps_a}) estimated {float(h.value):.4f}, not near 0")
    except InsufficientDataError as exc:
        report.notes.append(f"hypothesis not estimable: {exc}")
    for q in targets:
        try:
            ea, eb = est(sizes_a, occ_a, q), est(sizes_b, occ_b, q)
        except InsufficientDataError as exc:
            report.notes.append(f"{q}: {exc}")
            continue
        d = abs(float(ea.value) - float(eb.value))
        report.comparisons.append(Comparison(str(q), float(ea.value), float(eb.value), d,
                                             d <= tolerance))
    return report
