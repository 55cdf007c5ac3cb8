"""Compare the compiled and numpy scan backends on full (witness-free) scans.

    python benchmarks/bench_kernels.py [--repeat 3] [--threads 1]
"""

import argparse
import time

from triplesys import kernels
from triplesys.constructions import anti_double, field_mendelsohn, projective_sts, spectrum_construct
from triplesys.designs import mts_to_quasigroup


def cases():
    yield "medial_witness", "field 31", field_mendelsohn(31, 1).table, ()
    yield "medial_witness", "spectrum 49", spectrum_construct(49).table, ()
    yield "left_distributive_witness", "field 43", field_mendelsohn(43, 1).table, ()
    yield "right_distributive_witness", "field 43", field_mendelsohn(43, 1).table, ()
    Q = mts_to_quasigroup(anti_double(projective_sts(4)))
    yield "antidistributive_witness", "double PG(3,2) strict", Q.table, (True,)
    yield "antidistributive_witness", "double PG(3,2)", Q.table, (False,)


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    if kernels.BACKEND != "compiled":
        print("compiled extension not built; only the numpy backend is available")
    print(f"{'kernel':28s} {'input':24s} {'compiled':>10s} {'python':>10s} {'speedup':>8s}")
    for name, label, T, extra in cases():
        py = best_of(lambda: kernels.scan(name, T, *extra, backend="python",
                                          threads=args.threads), args.repeat)
        if kernels.BACKEND == "compiled":
            c = best_of(lambda: kernels.scan(name, T, *extra, backend="compiled",
                                             threads=args.threads), args.repeat)
            print(f"{name:28s} {label:24s} {c:10.4f} {py:10.4f} {py / c:8.1f}")
        else:
            print(f"{name:28s} {label:24s} {'-':>10s} {py:10.4f} {'-':>8s}")


if __name__ == "__main__":
    main()
