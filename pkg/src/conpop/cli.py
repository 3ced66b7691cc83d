"""Command-line front end.

Every subcommand builds ``(params, results, text_lines)``; the writer then
renders JSON, CSV or plain text. Ratios are exact ``num/den`` strings unless
``--float`` is given, and big integers are written as decimal strings in JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import analysis, closed_forms as cf, counting, foata, series
from .classes import class_number
from .errors import ConpopError, VerificationError
from .perm import Pattern, PatternSet, Permutation

CSV_COLUMNS = ["n", "class", "pattern", "count", "class_size", "ratio_num", "ratio_den", "ratio_float"]
ENV_KEYS = ("CONPOP_TRUNCATION", "CONPOP_TOL_CLOSED", "CONPOP_TOL_DP", "CONPOP_PURE_PYTHON")


class UsageError(ConpopError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse's own usage errors also go out as one JSON line
    def error(self, message):
        print(json.dumps({"error": "UsageError", "message": message}), file=sys.stderr)
        sys.exit(2)


# -- argument helpers ----------------------------------------------------------

def _avoid(text: str) -> PatternSet:
    ps = PatternSet.parse(text)
    if not ps:
        raise UsageError("--avoid needs at least one pattern")
    return ps


def _n_values(args) -> list[int]:
    if args.n is not None and args.n_range:
        raise UsageError("give either --n or --n-range, not both")
    if args.n_range:
        try:
            lo, hi = (int(t) for t in args.n_range.split(":"))
        except ValueError:
            raise UsageError(f"--n-range must look like A:B, got {args.n_range!r}") from None
        if lo < 0 or hi < lo:
            raise UsageError(f"empty or negative n-range {args.n_range!r}")
        return list(range(lo, hi + 1))
    if args.n is None:
        raise UsageError("--n or --n-range is required")
    if args.n < 0:
        raise UsageError("n must be >= 0")
    return [args.n]


def _ratio(v: Fraction | None, as_float: bool):
    if v is None:
        return "N/A"
    return float(v) if as_float else f"{v.numerator}/{v.denominator}"


def _class_label(ps: PatternSet) -> str:
    k = class_number(ps)
    return str(k) if k else str(ps)


def _row(n, ps, q, count, size, ratio, as_float):
    r = {"n": n, "class": _class_label(ps), "pattern": str(q) if q else "",
         "count": str(count) if count is not None else "", "class_size": str(size)}
    if ratio is not None:
        r.update(ratio_num=str(ratio.numerator), ratio_den=str(ratio.denominator),
                 ratio_float=float(ratio), value=_ratio(ratio, as_float))
    return r


# -- subcommands ---------------------------------------------------------------

def cmd_count(args):
    ps = _avoid(args.avoid)
    fn = counting.brute_class_size if args.method == "brute" else counting.class_size
    results, lines = [], []
    for n in _n_values(args):
        v = fn(n, ps)
        r = _row(n, ps, None, None, v, None, args.float)
        r["value"] = str(v)
        results.append(r)
        lines.append(str(v) if len(results) == 1 and args.n is not None else f"{n}\t{v}")
    return {"avoid": str(ps), "method": args.method}, results, lines


def cmd_enumerate(args):
    ps = _avoid(args.avoid)
    if args.n is None or args.n < 0:
        raise UsageError("--n (>= 0) is required")
    perms = list(counting.enumerate_class(args.n, ps))
    results = [{"n": args.n, "index": i, "value": str(p)} for i, p in enumerate(perms, 1)]
    return {"avoid": str(ps), "n": args.n}, results, [str(p) for p in perms]


def cmd_popularity(args):
    ps = _avoid(args.avoid)
    q = Pattern.parse(args.pattern)
    results, lines = [], []
    for n in _n_values(args):
        if args.method == "brute":
            size, occ = counting.brute_class_size(n, ps), counting.brute_popularity(n, ps, q)
        else:
            size, occ = counting.class_size(n, ps), counting.popularity_exact(n, ps, q)
        ratio = Fraction(occ, n * size) if size and n >= q.m else None
        r = _row(n, ps, q, occ, size, ratio, args.float)
        if ratio is None:
            r["value"] = "N/A"
        results.append(r)
        if args.counts:
            lines.append(f"{n}\t{occ}\t{size}\t{_ratio(ratio, args.float)}")
        else:
            lines.append(str(_ratio(ratio, args.float)) if args.n is not None
                         else f"{n}\t{_ratio(ratio, args.float)}")
    return {"avoid": str(ps), "pattern": str(q), "method": args.method}, results, lines


def cmd_sequence(args):
    ps = _avoid(args.avoid)
    q = Pattern.parse(args.pattern)
    seq = analysis.popularity_sequence(ps, q, args.n_max, args.backend)
    results, lines = [], []
    for n, v in seq.values:
        r = {"n": n, "class": _class_label(ps), "pattern": str(q), "value": _ratio(v, args.float)}
        if v is not None:
            r.update(ratio_num=str(v.numerator), ratio_den=str(v.denominator), ratio_float=float(v))
        results.append(r)
        lines.append(f"{n}\t{_ratio(v, args.float)}")
    params = {"avoid": str(ps), "pattern": str(q), "n_max": args.n_max, "backend": seq.backend}
    if args.estimate:
        le = analysis.estimate_limit(seq)
        est = {"raw": _ratio(le.raw, True), "extrapolated": _ratio(le.extrapolated, True)
               if le.extrapolated is not None else None, "grid": list(le.grid),
               "confident": le.confident, "monotone": le.monotone,
               "diff_ratio": le.diff_ratio, "note": le.note}
        params["estimate"] = est
        lines.append(f"# estimate {float(le.value):.6f} (raw {float(le.raw):.6f}, grid {le.grid},"
                     f" confident={le.confident}) {le.note}".rstrip())
    return params, results, lines


def cmd_table1(args):
    classes = [int(t) for t in args.classes.split(",")] if args.classes else None
    rows = analysis.table1_report(args.n_max, args.n_closed, args.tol_closed, args.tol_dp, classes)
    results = [dict(vars(r)) for r in rows]
    for r in results:
        r["class"] = r.pop("klass")
    lines = [f"{'class':>5} {'pattern':>7} {'claimed':>7} {'estimate':>10} {'raw':>10} {'status':>6}  backend"]
    for r in rows:
        est = "" if r.estimate is None else f"{r.estimate:.5f}"
        raw = "" if r.raw is None else f"{r.raw:.5f}"
        lines.append(f"{r.klass:>5} {r.pattern:>7} {r.claimed:>7} {est:>10} {raw:>10} {r.status:>6}  "
                     f"{r.backend} n={r.n_max} {r.note}".rstrip())
    failed = sum(r.status == "fail" for r in rows)
    params = {"n_max": args.n_max, "n_closed": args.n_closed, "tol_closed": args.tol_closed,
              "tol_dp": args.tol_dp, "classes": classes, "failed": failed}
    return params, results, lines


def _check(name, ok, detail=""):
    return {"check": name, "ok": bool(ok), "detail": detail}


def cmd_verify(args):
    N = args.n_max
    A11, A17, A18 = analysis.CLASS11, analysis.CLASS17, analysis.CLASS18
    checks = []
    for n in range(3, N + 1):
        sizes, occ = counting.popularity_table(n, A11)
        got = {str(q): v[n] for q, v in occ.items()}
        want = {"231": cf.count_231_class11(n), "312": cf.count_312_class11(n),
                "213": cf.count_213_class11(n)}
        checks.append(_check(f"class11 closed forms n={n}", got == want and sizes[n] == cf.class11_size(n),
                             f"dp={got} closed={want}"))
    for n in range(5, N + 1):
        r = counting.refined_counts_class11(n)
        ok = r.p312_left == cf.count_312_l_rec(n) and r.p312_right == cf.count_312_r_rec(n)
        checks.append(_check(f"312 recurrences n={n}", ok))
    for n in range(2, min(N, 14) + 1):
        checks.append(_check(f"class18 321 n={n}",
                             counting.popularity_exact(n, A18, "321") == cf.count_321_class18(n)))
    for n in range(0, min(N, 12) + 1):
        checks.append(_check(f"class17 size n={n}",
                             counting.class_size(n, A17) == cf.involutions_count(n)))
    for n in range(4, min(N, 10) + 1):
        checks.append(_check(f"2314 recurrence n={n}",
                             counting.generic_dp(n, A17, ["2314"])[1][0] == cf.count_2314_class17(n)))
    results = checks
    lines = [f"{'ok ' if c['ok'] else 'FAIL'} {c['check']}" for c in checks]
    return {"n_max": N}, results, lines


_SERIES = {
    "F": lambda N: series.series_F(N),
    "G": lambda N: series.series_G(N),
    "f": lambda N: series.u_series(N),
    "I": lambda N: series.egf_involutions(N),
}


def cmd_series(args):
    N = args.order
    params = {"order": N}
    results, lines = [], []
    if args.check:
        params["check"] = True
        checks = []
        try:
            series.verify_G_cauchy(N)
            checks.append(_check("G Cauchy problem", True))
        except VerificationError as exc:
            checks.append(_check("G Cauchy problem", False, str(exc)))
        checks.append(_check("G closed form", series.verify_G_closed_form(N)))
        checks.append(_check("f closed form", series.verify_f_closed_form(N)))
        try:
            series.series_F(max(N, 50))
            checks.append(_check("n! [z^n]F nonnegative integers", True, f"n <= {max(N, 50)}"))
        except VerificationError as exc:
            checks.append(_check("n! [z^n]F nonnegative integers", False, str(exc)))
        results = checks
        lines = [f"{'ok ' if c['ok'] else 'FAIL'} {c['check']}" for c in checks]
        return params, results, lines
    name = args.which
    params["series"] = name
    s = _SERIES[name](N)
    for n, c in enumerate(s.coeffs):
        nf = c * series.factorial(n)
        results.append({"n": n, "coefficient": _ratio(c, args.float),
                        "n_factorial_times": str(nf)})
        lines.append(f"{n}\t{_ratio(c, args.float)}\t{nf}")
    return params, results, lines


def cmd_saddle(args):
    results, lines = [], []
    for n in args.n:
        rep = series.saddle_bound(n, exact_upto=args.exact_upto)
        r = {"n": n, "log_bound": str(rep.log_bound), "log_reference": str(rep.log_reference),
             "ratio": rep.ratio}
        if rep.coefficient is not None:
            r["coefficient"] = _ratio(rep.coefficient, args.float)
            r["coefficient_below_bound"] = True
        results.append(r)
        lines.append(f"{n}\tlog_bound={float(rep.log_bound):.6f}\tlog_ref={float(rep.log_reference):.6f}"
                     f"\tratio={rep.ratio:.6f}")
    return {"n": args.n, "precision_digits": series.PRECISION_DIGITS}, results, lines


def cmd_foata(args):
    given = [a for a in (args.to_perm, args.from_perm, args.from_cycles) if a]
    if len(given) != 1:
        raise UsageError("give exactly one of --to-perm, --from-perm, --from-cycles")
    if args.to_perm:
        inv = foata.Involution.parse(args.to_perm)
    elif args.from_cycles:
        inv = foata.parse_standard_form(args.from_cycles)
    else:
        inv = foata.foata_unhat(Permutation.parse(args.from_perm))
    form = foata.format_standard_form(foata.standard_form(inv))
    hat = foata.foata_hat(inv)
    res = {"involution": str(Permutation(inv.word)), "standard_form": form, "hat": str(hat)}
    if args.classify:
        res["windows"] = foata.window_shapes(inv)
    if args.to_perm or args.from_cycles:
        lines = [str(hat)]
    else:
        lines = [str(Permutation(inv.word))]
    if args.verbose or args.classify:
        lines += [f"standard form: {form}"]
        if args.classify:
            lines += [f"windows: {', '.join(res['windows'])}"]
    return {k: v for k, v in (("to_perm", args.to_perm), ("from_perm", args.from_perm),
                              ("from_cycles", args.from_cycles)) if v}, [res], lines


def cmd_conjecture(args):
    ps = _avoid(args.avoid)
    targets = [Pattern.parse(t) for t in args.targets.split(",")] if args.targets else None
    rep = analysis.conjecture_check(ps, args.remove, targets, args.n_max, args.tolerance)
    results = [dict(vars(c)) for c in rep.comparisons]
    params = {"avoid": str(ps), "remove": args.remove, "n_max": args.n_max,
              "tolerance": args.tolerance, "base": rep.base, "enlarged": rep.enlarged,
              "hypothesis_estimate": rep.hypothesis_estimate,
              "hypothesis_plausible": rep.hypothesis_plausible, "degenerate": rep.degenerate,
              "notes": rep.notes}
    lines = [f"A = {rep.base}, B = {rep.enlarged}",
             f"pop_A({rep.removed}) estimate: {rep.hypothesis_estimate}"
             f" ({'plausibly 0' if rep.hypothesis_plausible else 'NOT near 0'})"]
    for c in rep.comparisons:
        lines.append(f"{c.pattern}\tA={c.estimate_a:.5f}\tB={c.estimate_b:.5f}\t|diff|={c.difference:.5f}"
                     f"\t{'agree' if c.agree else 'DIFFER'}")
    lines += [f"note: {n}" for n in rep.notes]
    return params, results, lines


# -- parser and output -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--float", action="store_true", help="print ratios as floats")
    common.add_argument("--output", help="write results to this file instead of stdout")

    p = _Parser(prog="conpop", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    def n_args(sp):
        sp.add_argument("--n", type=int)
        sp.add_argument("--n-range", help="inclusive range A:B")

    sp = add("count", cmd_count, "class size |Av_n(avoid)|")
    sp.add_argument("--avoid", required=True)
    n_args(sp)
    sp.add_argument("--method", choices=["dp", "brute"], default="dp")

    sp = add("enumerate", cmd_enumerate, "list the members of Av_n(avoid)")
    sp.add_argument("--avoid", required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = add("popularity", cmd_popularity, "popularity ratio of a pattern")
    sp.add_argument("--avoid", required=True)
    sp.add_argument("--pattern", required=True)
    n_args(sp)
    sp.add_argument("--method", choices=["dp", "brute"], default="dp")
    sp.add_argument("--counts", action="store_true", help="also print count and class size")

    sp = add("sequence", cmd_sequence, "ratios for n up to --n-max")
    sp.add_argument("--avoid", required=True)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--backend", choices=["dp", "closed-form", "auto"], default="auto")
    sp.add_argument("--estimate", action="store_true", help="append a limit estimate")

    sp = add("table1", cmd_table1, "estimates for all eighteen classes")
    sp.add_argument("--n-max", type=int, default=analysis.N_DP)
    sp.add_argument("--n-closed", type=int, default=analysis.N_CLOSED)
    sp.add_argument("--tol-closed", type=float, default=analysis.TOL_CLOSED)
    sp.add_argument("--tol-dp", type=float, default=analysis.TOL_DP)
    sp.add_argument("--classes", help="comma-separated class numbers")

    sp = add("verify-closed-forms", cmd_verify, "closed forms and recurrences against the DP")
    sp.add_argument("--n-max", type=int, default=14)

    sp = add("series", cmd_series, "coefficient tables and series identities")
    sp.add_argument("--which", choices=sorted(_SERIES), default="F")
    sp.add_argument("--order", type=int, default=series.DEFAULT_ORDER)
    sp.add_argument("--check", action="store_true", help="run the series verifications")

    sp = add("saddle", cmd_saddle, "saddle-point bound with zeta = sqrt(n)")
    sp.add_argument("--n", type=int, nargs="+", required=True)
    sp.add_argument("--exact-upto", type=int, default=50)

    sp = add("foata", cmd_foata, "convert between involutions and Av(123,132)")
    sp.add_argument("--to-perm", help="involution in one-line form -> hat word")
    sp.add_argument("--from-perm", help="word in Av(123,132) -> involution")
    sp.add_argument("--from-cycles", help='standard form text such as "(2 3)(1)" -> hat word')
    sp.add_argument("--classify", action="store_true", help="list the window shapes")
    sp.add_argument("--verbose", action="store_true")

    sp = add("conjecture", cmd_conjecture, "compare pop_A(q) and pop_B(q) for B = A + removed")
    sp.add_argument("--avoid", required=True)
    sp.add_argument("--remove", required=True)
    sp.add_argument("--targets")
    sp.add_argument("--n-max", type=int, default=analysis.N_DP)
    sp.add_argument("--tolerance", type=float, default=analysis.TOL_DP)
    return p


def _jsonable(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, int) and not isinstance(v, bool) and abs(v) >= 2 ** 53:
        return str(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def render(command: str, fmt: str, params: dict, results: list, lines: list) -> str:
    if fmt == "json":
        env = {k: os.environ[k] for k in ENV_KEYS if os.environ.get(k)}
        if env:
            params = dict(params, env=env)
        doc = {"command": command, "params": _jsonable(params), "results": _jsonable(results)}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        keys = CSV_COLUMNS if results and any(k in results[0] for k in ("class_size", "ratio_num")) \
            else list(dict.fromkeys(k for r in results for k in r))
        w = csv.DictWriter(buf, fieldnames=keys, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in results:
            w.writerow({k: (";".join(map(str, v)) if isinstance(v, list) else v)
                        for k, v in r.items()})
        return buf.getvalue()
    return "".join(line + "\n" for line in lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        params, results, lines = args.func(args)
    except (ConpopError, ValueError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(err), file=sys.stderr)
        return 2
    out = render(args.command, args.format, params, results, lines)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    if args.command in ("verify-closed-forms", "series") and any(
            r.get("ok") is False for r in results):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
