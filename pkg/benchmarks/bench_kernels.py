"""Time the compiled kernels against the pure-Python reference.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload is checked for identical output before it is timed.
"""

from __future__ import annotations

import argparse
import timeit

from fujita_lab.kernels import backends


def _workloads():
    weights = sorted([1, 1, 2, 2, 3, 3, 4, 5, 5, 6, 7, 8])
    values = [[a, 2 * a - b] for a in range(0, 7) for b in range(0, 7)]
    # non-negative values: nothing fails, so the scan is exhaustive
    return [
        ("tuples_with_sum_at_most(12 weights, length 5, bound 20)",
         "tuples_with_sum_at_most", (weights, 5, 20)),
        ("first_failing_tuple(49 candidates, length 3)",
         "first_failing_tuple", ([[abs(v) for v in row] for row in values], 3, [0, 0])),
        ("min_form_in_box(rank 3, bound 8)",
         "min_form_in_box", ([[2, 1, 0], [1, -2, 1], [0, 1, 2]], [[1, 1, 1]], 8)),
        ("min_form_in_box(rank 2 Hirzebruch F_3, bound 40)",
         "min_form_in_box", ([[-3, 1], [1, 0]], [[1, 0], [-3, 1]], 40)),
    ]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    impls = backends()
    if "compiled" not in impls:
        print("compiled extension not built; timing the python backend only")
    names = list(impls)
    print(f"{'workload':58s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn, fargs in _workloads():
        results = {n: getattr(impls[n], fn)(*fargs) for n in names}
        if len({repr(r) for r in results.values()}) != 1:
            raise SystemExit(f"backends disagree on {label}")
        times = {n: min(timeit.repeat(lambda f=getattr(impls[n], fn): f(*fargs), number=1, repeat=args.repeat))
                 for n in names}
        row = f"{label:58s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if len(names) > 1:
            row += f"{times['python'] / times['compiled']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
