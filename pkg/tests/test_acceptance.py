"""Acceptance suite: one test per criterion, each logging a PASS/FAIL line."""

import time
from fractions import Fraction
from itertools import combinations

from conpop import closed_forms as cf
from conpop import foata as F
from conpop import series as S
from conpop.analysis import CLASS11, CLASS17, CLASS18, conjecture_check, popularity_sequence
from conpop.classes import CLASSES
from conpop.counting import (
    class_size, enumerate_class, popularity_exact, refined_counts_class11,
)
from conpop.perm import LENGTH3, Pattern, count_occurrences

TOL_CLOSED = 0.005
TOL_DP = 0.03


def brute_table(n, ps):
    """Class size and every length-3 popularity by one pass of enumeration."""
    size, occ = 0, {q: 0 for q in LENGTH3}
    for p in enumerate_class(n, ps):
        size += 1
        for q in LENGTH3:
            occ[q] += count_occurrences(p, q)
    return size, occ


def test_c01_oracle_equivalence(acceptance_log):
    mismatches, checked = [], 0
    for k in (2, 3, 4):
        for combo in combinations(LENGTH3, k):
            ps = frozenset(combo)
            for n in range(10):
                size, occ = brute_table(n, ps)
                checked += 1
                if class_size(n, ps) != size:
                    mismatches.append((sorted(map(str, ps)), n, "size"))
                for q in LENGTH3:
                    if q not in ps and popularity_exact(n, ps, q) != occ[q]:
                        mismatches.append((sorted(map(str, ps)), n, str(q)))
    ok = not mismatches
    acceptance_log("C1 oracle equivalence, 50 sets x n<=9", ok,
                   f"{checked} (set, n) cases, {len(mismatches)} mismatches")
    assert ok, mismatches[:5]


def test_c02_class_sizes(acceptance_log):
    bad = []
    for n in range(0, 15):
        # the double factorials in the formula are defined from n = 2 on
        if n >= 2 and class_size(n, CLASS11) != cf.double_factorial(n - 1) + cf.double_factorial(n - 2):
            bad.append((11, n))
        if n >= 1 and class_size(n, CLASS18) != 2 ** (n - 1):
            bad.append((18, n))
        if n > 1:
            bad += [(k, n) for k in (1, 2, 3) if class_size(n, CLASSES[k]) != 2]
        if n > 2 and class_size(n, CLASSES[5]) != n - 1:
            bad.append((5, n))
        if n > 3 and class_size(n, CLASSES[4]) != 0:
            bad.append((4, n))
        if n > 3 and class_size(n, CLASSES[8]) != n:
            bad.append((8, n))
    # I_n from its recurrence, not from closed_forms
    inv = [1, 1]
    for n in range(2, 13):
        inv.append(inv[-1] + (n - 1) * inv[-2])
    bad += [(17, n) for n in range(13) if class_size(n, CLASS17) != inv[n]]
    ok = not bad
    acceptance_log("C2 class sizes (11, 17, 18, 1-5, 8)", ok, f"failures {bad}" if bad else "")
    assert ok


def test_c03_class11_closed_forms(acceptance_log):
    bad = []
    for n in range(3, 15):
        got = tuple(popularity_exact(n, CLASS11, q) for q in ("231", "312", "213"))
        want = (cf.count_231_class11(n), cf.count_312_class11(n), cf.count_213_class11(n))
        if got != want:
            bad.append(("closed form", n, got, want))
    for n in range(5, 15):
        r, r1 = refined_counts_class11(n), refined_counts_class11(n - 1)
        if r.p312_right != r1.p312_left or r.p312_right != cf.count_312_r_rec(n):
            bad.append(("rec r", n))
        if r.p312_left != cf.count_312_l_rec(n):
            bad.append(("rec l", n))
    _, occ = brute_table(4, CLASS11)
    triple = (occ[Pattern.parse("231")], occ[Pattern.parse("312")], occ[Pattern.parse("213")])
    if triple != (5, 3, 2):
        bad.append(("n=4 brute", triple))
    ok = not bad
    acceptance_log("C3 class 11 closed forms and 312 recurrences", ok,
                   f"n=4 brute triple {triple}" + (f"; failures {bad}" if bad else ""))
    assert ok


def test_c04_class11_limits(acceptance_log):
    target = {"231": Fraction(1, 2), "312": Fraction(1, 4), "213": Fraction(1, 4)}
    errs = {}
    for q, lim in target.items():
        v = popularity_sequence(CLASS11, q, 2000, "closed-form", ns=[2000]).at(2000)
        errs[q] = abs(float(v - lim))
    ok = all(e <= TOL_CLOSED for e in errs.values())
    acceptance_log("C4 class 11 ratios at n=2000", ok,
                   ", ".join(f"{q}: |err|={e:.5f}" for q, e in errs.items()))
    assert ok


def test_c05_class18(acceptance_log):
    bad = [n for n in range(2, 11) if cf.count_321_class18(n) != popularity_exact(n, CLASS18, "321")]
    v = popularity_sequence(CLASS18, "321", 2000, "closed-form", ns=[2000]).at(2000)
    err = abs(float(v) - 0.5)
    ok = not bad and err <= TOL_CLOSED
    acceptance_log("C5 class 18 count and ratio at n=2000", ok, f"|err|={err:.5f}")
    assert ok


def test_c06_foata(acceptance_log):
    bad = []
    for n in range(0, 10):
        invs = list(F.involutions(n))
        hats = [F.foata_hat(i) for i in invs]
        if len(set(hats)) != len(invs):
            bad.append(("injective", n))
        if sorted(hats) != list(enumerate_class(n, CLASS17)):
            bad.append(("image", n))
        if any(F.foata_unhat(h) != i for i, h in zip(invs, hats)):
            bad.append(("inverse", n))
        if n >= 3:
            direct = {s: 0 for s in ("213", "231", "312", "321")}
            for h in hats:
                for s in direct:
                    direct[s] += count_occurrences(h, Pattern.parse(s))
            if F.alpha_beta_gamma_totals(n).pattern_totals() != direct:
                bad.append(("rows", n))
    i9 = [1, 1]
    for n in range(2, 10):
        i9.append(i9[-1] + (n - 1) * i9[-2])
    n9 = sum(1 for _ in F.involutions(9))
    if n9 != i9[9] or n9 != 2620:
        bad.append(("I_9", n9))
    unlisted = F.alpha_beta_gamma_totals(9).by_shape["(* c)(b)(a *)"]
    ok = not bad
    acceptance_log("C6 Foata bijection, image and row totals, n<=9", ok,
                   f"|I_9|={n9}; unlisted 321 shape windows at n=9: {unlisted}"
                   + (f"; failures {bad}" if bad else ""))
    assert ok


def test_c07_class17(acceptance_log):
    bad = []
    for n in range(3, 12):
        t = F.alpha_beta_gamma_totals(n)
        if t.alpha != t.beta + t.gamma:
            bad.append(("alpha", n))
        if t.delta > 3 * cf.fixed_points_total(n):
            bad.append(("delta", n))
        if 4 <= n <= 10 and t.beta != cf.count_2314_class17(n):
            bad.append(("beta", n))
    q = Pattern.parse("2314")
    for n in range(4, 11):
        brute = sum(count_occurrences(p, q) for p in enumerate_class(n, CLASS17))
        if brute != cf.count_2314_class17(n):
            bad.append(("2314", n))
    seeds = (cf.count_2314_class17(4), cf.count_2314_class17(5))
    ok = not bad and seeds == (1, 4)
    acceptance_log("C7 class 17 alpha/beta/gamma, delta bound, 2314 recurrence", ok,
                   f"seeds {seeds}" + (f"; failures {bad}" if bad else ""))
    assert ok


def test_c08_series(acceptance_log):
    timings, bad = {}, []

    def timed(name, fn):
        t0 = time.perf_counter()
        ok = fn()
        timings[name] = time.perf_counter() - t0
        if not ok or timings[name] >= 1.0:
            bad.append(name)

    timed("cauchy", lambda: S.verify_G_cauchy(30).is_zero())
    timed("G closed form", lambda: S.verify_G_closed_form(30))
    timed("f closed form", lambda: S.verify_f_closed_form(30))
    timed("F positivity", lambda: all(v.denominator == 1 and v >= 0
                                      for v in S.series_F(50).egf_sequence()))
    ok = not bad
    acceptance_log("C8 series verifications at N=30", ok,
                   ", ".join(f"{k} {v * 1000:.0f} ms" for k, v in timings.items()))
    assert ok


def test_c09_asymptotics(acceptance_log):
    bad = []
    for n in range(1, 51):
        rep = S.saddle_bound(n)  # raises if the exact coefficient exceeds the bound
        if rep.coefficient is None or S.log_exact(rep.coefficient) > rep.log_bound:
            bad.append(("bound", n))
    ratios = [S.saddle_bound(n).ratio for n in (20, 40, 80, 160)]
    if not all(a > b for a, b in zip(ratios, ratios[1:])):
        bad.append(("monotone", ratios))
    fp = [S.fixed_point_sqrt_ratio(n) for n in range(100, 2001)]
    if not all(0.8 < r < 1.2 for r in fp):
        bad.append(("fp", min(fp), max(fp)))
    ok = not bad
    acceptance_log("C9 saddle bound and fixed-point ratio", ok,
                   f"ratios {[round(r, 4) for r in ratios]}, fp/I/sqrt n in [{min(fp):.4f}, {max(fp):.4f}]")
    assert ok


def test_c10_conjecture(acceptance_log):
    rep = conjecture_check(CLASS17, "321", targets=["213", "231", "312"], n_max=200, tolerance=TOL_DP)
    ok = rep.consistent and len(rep.comparisons) == 3
    acceptance_log("C10 conjecture harness, class 17 vs class 11", ok,
                   ", ".join(f"{c.pattern}: |diff|={c.difference:.4f}" for c in rep.comparisons))
    assert ok


def test_c11_class16_symmetry(acceptance_log):
    bad = []
    for n in range(0, 13):
        vals = {popularity_exact(n, CLASSES[16], q) for q in ("132", "213", "231", "312")}
        if len(vals) != 1:
            bad.append(n)
    ok = not bad
    acceptance_log("C11 class 16 four counts identical, n<=12", ok, f"failures {bad}" if bad else "")
    assert ok
