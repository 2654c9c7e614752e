"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N] [--full]

``--full`` also times the complete subloop enumeration, which takes about
half a minute on the Python backend.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from moufang_lattice import kernels
from moufang_lattice.autgroup import _DTYPE, generating_triple
from moufang_lattice.lattice import paige_lattice
from moufang_lattice.loopcore import straight_line_program
from moufang_lattice.paige import build_paige2


def saturate(k, table, identity):
    known = {1 << identity}
    frontier = list(known)
    while frontier:
        fresh = {m for h in frontier for m in k.extensions(table, h) if m not in known}
        known |= fresh
        frontier = sorted(fresh)
    return len(known)


def workloads(k, full):
    c = build_paige2()
    t = c.table.table
    rng = np.random.default_rng(0)
    pairs = rng.integers(0, c.n, size=(500, 2))
    masks = [s.mask for s in paige_lattice().subs[::10]]
    triple = generating_triple(c)
    levels, domains = straight_line_program(c.table, triple)
    start = np.full(c.n, -1, dtype=_DTYPE)
    start[c.identity] = c.identity
    start[list(triple)] = list(triple)
    perm = np.arange(c.n)[::-1].copy()

    def hom():
        img = start.copy()
        for steps, dom in zip(levels, domains):
            k.extend_hom(t, t, steps, dom, img)

    jobs = {
        "closure x500": lambda: [k.closure(t, (int(x), int(y))) for x, y in pairs],
        f"extensions x{len(masks)}": lambda: [k.extensions(t, m) for m in masks],
        "moufang_violation": lambda: k.moufang_violation(t),
        "extend_hom (identity)": hom,
        f"image_mask x{len(masks)}": lambda: [k.image_mask(perm, m) for m in masks],
    }
    if full:
        jobs["full enumeration"] = lambda: saturate(k, t, c.identity)
    return jobs


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--full", action="store_true", help="include the full subloop enumeration")
    args = p.parse_args()

    backends = kernels.available_backends()
    results = {}
    for name in backends:
        k = kernels.load_backend(name)
        for job, fn in workloads(k, args.full).items():
            results.setdefault(job, {})[name] = best_of(fn, 1 if job == "full enumeration" else args.repeat)

    print(f"{'kernel':<24}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for job, row in results.items():
        line = f"{job:<24}" + "".join(f"{row[b] * 1e3:>10.2f}ms" for b in backends)
        if len(backends) > 1:
            line += f"{row['python'] / row['cython']:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
