"""Timing comparison of the compiled and pure-NumPy kernel backends.

Runs a handful of representative workloads through each available backend,
checks the outputs agree exactly, and prints a timing table.  Invoke as

    python -m psl2coset.bench [--repeat N]

Nothing here asserts a speed ratio - machines differ - but the equality
checks make the run double as an end-to-end cross-backend test.
"""

from __future__ import annotations

import argparse
import time

from . import backend
from .ffield import make_field
from .oracle import build_trace_set
from .search import brute_search, variety_search
from .subgrp import klein_four, normalizer
from .variety import count_points_X, count_points_Y


def _fmt_ms(dt: float) -> str:
    return f"{dt * 1000.0:9.1f}"


def _witness_sig(w):
    return None if w is None else (w.g.text, tuple(o for _, o in w.audit))


WORKLOADS = [
    ("klein coset scan q=53 (all)",
     lambda: sorted(w.g.text for w in brute_search(
         klein_four(make_field(53)), 2, mode="all"))),
    ("normalizer of klein four q=139",
     lambda: [pt.text for pt in normalizer(klein_four(make_field(139))).elements]),
    ("a4-coset scan q=139 (first)",
     lambda: _witness_sig(brute_search(
         normalizer(klein_four(make_field(139))), 2, mode="first"))),
    ("variety witness q=499 p=3",
     lambda: _witness_sig(variety_search(make_field(499), 3))),
    ("point count X q=499 p=3",
     lambda: count_points_X(make_field(499), 3)),
    ("point count Y q=499 p=3",
     lambda: count_points_Y(make_field(499), 3)),
    ("trace set build q=997 p=3",
     lambda: build_trace_set(make_field(997), 3).dump()),
]


def run(repeat: int = 1) -> int:
    names = backend.available_backends()
    if len(names) < 2:
        print("only the pure-python backend is built; timing it alone")
    results = {}
    timings = {}
    for name in names:
        backend.use(name)
        for label, job in WORKLOADS:
            job()                      # warm caches (tables, field ctx)
            best = min(_timed(job, results, (label, name))
                       for _ in range(repeat))
            timings[(label, name)] = best
    backend.use("auto")

    width = max(len(label) for label, _ in WORKLOADS)
    header = f"{'workload'.ljust(width)}  " + "  ".join(
        f"{n + ' (ms)':>12}" for n in names)
    print(header)
    print("-" * len(header))
    ok = True
    for label, _ in WORKLOADS:
        cells = [f"{timings[(label, n)] * 1000.0:12.1f}" for n in names]
        print(f"{label.ljust(width)}  " + "  ".join(cells))
        outs = [results[(label, n)] for n in names]
        if any(o != outs[0] for o in outs[1:]):
            print(f"  ** backends DISAGREE on {label!r}")
            ok = False
    if ok and len(names) > 1:
        print("all workload outputs identical across backends")
    return 0 if ok else 1


def _timed(job, results, key) -> float:
    t0 = time.perf_counter()
    out = job()
    dt = time.perf_counter() - t0
    results[key] = out
    return dt


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=1,
                    help="take the best of N timings per workload")
    ns = ap.parse_args(argv)
    return run(max(1, ns.repeat))


if __name__ == "__main__":
    raise SystemExit(main())
