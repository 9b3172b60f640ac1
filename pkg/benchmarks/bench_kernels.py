#!/usr/bin/env python3
"""Benchmark the canonical-form kernels: compiled extension vs pure Python.

Times the minimum-code computation (the hot loop behind isomorphism,
automorphism groups and classification) on catalog maps of increasing
size.  Run after `pip install -e .`:

    python benchmarks/bench_kernels.py
"""
from __future__ import annotations

import time

from semap import _certpure
from semap.catalog import entry_by_name
from semap.flags import flag_system

try:
    from semap import _certfast
except ImportError:
    _certfast = None

CASES = [
    "tetrahedron",
    "icosahedron",
    "snub-cube",
    "icosidodecahedron",
    "truncated-icosahedron",
    "great-rhombicosidodecahedron",
]


def _time(kernel, fs, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = kernel.min_code(fs.s0, fs.s1, fs.s2)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> None:
    kernels = [("pure", _certpure)]
    if _certfast is not None:
        kernels.append(("compiled", _certfast))
    else:
        print("compiled kernel not built; showing pure numbers only\n")

    header = f"{'map':32s} {'flags':>6s}" + "".join(f" {name:>12s}" for name, _ in kernels)
    if len(kernels) == 2:
        header += f" {'speedup':>9s}"
    print(header)
    print("-" * len(header))
    for name in CASES:
        entry = entry_by_name(name)
        fs = flag_system(entry.map)
        repeats = 3 if fs.flag_count > 400 else 10
        times = []
        codes = []
        for _, kernel in kernels:
            elapsed, result = _time(kernel, fs, repeats)
            times.append(elapsed)
            codes.append(result)
        assert len({code for code, _ in codes}) == 1, "kernels disagree"
        row = f"{name:32s} {fs.flag_count:6d}"
        for elapsed in times:
            row += f" {elapsed * 1e3:10.2f}ms"
        if len(times) == 2:
            row += f" {times[0] / times[1]:8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
