#!/usr/bin/env python3
"""Benchmark the compiled term-arithmetic kernel against the pure-Python twin.

The workload is the package's real hot path: reduced Groebner bases, a
graded free resolution, and a batch of normal forms.  Both backends must
produce identical outputs; timings are wall-clock medians over --repeat runs.

Run after an editable install:

    python benchmarks/bench_kernel.py [--repeat 3]
"""

import argparse
import importlib
import json
import statistics
import sys
import time


def _fresh_cak(backend):
    """(Re)import the package with the requested kernel backend."""
    import os

    os.environ["CAK_KERNEL"] = backend
    for name in [m for m in sys.modules if m == "cak" or m.startswith("cak.")]:
        del sys.modules[name]
    return importlib.import_module("cak")


def workload(tag):
    from cak import RingPresentation, parse_poly_list
    from cak.groebner import IdealHandle, RingMap, ring_map_kernel
    from cak.resolve import PresentedModule, minimal_free_resolution

    out = {}

    # 1) toric kernels by elimination (Groebner-heavy)
    kernels = []
    for expos in ((10, 14, 16, 23), (6, 11, 16, 26), (12, 13, 17, 20), (9, 11, 14, 25)):
        S = RingPresentation(["X", "Y", "Z", "W"], list(expos))
        T = RingPresentation(["t"], [1], S.field)
        images = [T.var("t") ** a for a in expos]
        ker = ring_map_kernel(RingMap(S, T, images))
        kernels.append([str(g) for g in ker.groebner_basis()])
    out["kernel"] = kernels

    # 2) graded free resolution of a square-plus-linear model (syzygy-heavy)
    names = [f"X{i}" for i in range(1, 7)]
    R6 = RingPresentation(names, [1] * 6)
    gens = []
    for i in range(4):
        for j in range(i, 4):
            gens.append(R6.var(names[i]) * R6.var(names[j]))
    gens += [R6.var(names[4]), R6.var(names[5])]
    res = minimal_free_resolution(PresentedModule.cyclic(R6, gens))
    out["betti"] = list(res.total_ranks())

    # 3) batch normal forms against a fixed basis
    A = RingPresentation(["x", "y", "z"], [1, 1, 1])
    I = IdealHandle(A, parse_poly_list("x^3 - y*z; y^3 - x*z; z^3 - x*y", A))
    acc = []
    f = A.var("x") + A.var("y") + A.var("z")
    g = f
    for _ in range(9):
        g = g * f
    for i in range(120):
        acc.append(str(I.normal_form(g * A.var("x") ** (i % 3))))
    out["nf_tail"] = acc[-1]
    return out


def bench(backend, repeat):
    mod = _fresh_cak(backend)
    assert mod.KERNEL_BACKEND == backend, f"wanted {backend}, got {mod.KERNEL_BACKEND}"
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = workload(backend)
        times.append(time.perf_counter() - t0)
    return statistics.median(times), result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rows = []
    results = {}
    for backend in ("pure", "compiled"):
        try:
            t, res = bench(backend, args.repeat)
        except ImportError:
            print(f"{backend:>9}: unavailable (extension not built)")
            continue
        results[backend] = res
        rows.append((backend, t))
        print(f"{backend:>9}: {t:.3f}s median of {args.repeat}")
    if len(results) == 2:
        same = json.dumps(results["pure"], sort_keys=True) == json.dumps(
            results["compiled"], sort_keys=True
        )
        print(f"outputs identical: {same}")
        if not same:
            sys.exit(1)
        speedup = rows[0][1] / rows[1][1]
        print(f"speedup (pure/compiled): {speedup:.2f}x")


if __name__ == "__main__":
    main()
