"""Compare the compiled and pure-Python suffix-signature kernels.

    python3 benchmarks/bench_kernel.py --n 40 80 120 --repeat 3
"""

import argparse
import statistics
import time

from conpop import kernel
from conpop.classes import CLASSES
from conpop.perm import LENGTH3


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.mean(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[40, 80, 120])
    ap.add_argument("--klass", type=int, default=17, help="class whose free patterns are targets")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    compiled = kernel.compiled_dp3()
    ps = CLASSES[args.klass]
    mask = sum(1 << i for i, p in enumerate(LENGTH3) if p in ps)
    targets = tuple(i for i, p in enumerate(LENGTH3) if p not in ps)
    print(f"class {args.klass} ({ps}), {len(targets)} targets, compiled kernel: "
          f"{'yes' if compiled else 'not built'}")
    print(f"{'n':>5} {'python s':>10} {'cython s':>10} {'speedup':>8}  identical")
    for n in args.n:
        tp, _, rp = best_time(lambda: kernel.python_dp3(n, mask, targets), args.repeat)
        if compiled is None:
            print(f"{n:>5} {tp:>10.3f} {'-':>10} {'-':>8}  -")
            continue
        tc, _, rc = best_time(lambda: compiled(n, mask, targets), args.repeat)
        print(f"{n:>5} {tp:>10.3f} {tc:>10.3f} {tp / tc:>7.1f}x  {rp == rc}")


if __name__ == "__main__":
    main()
