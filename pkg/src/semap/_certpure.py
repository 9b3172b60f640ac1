"""Pure-Python canonical-form kernel.

Reference implementation of the hot loops; the compiled module
``semap._certfast`` exports the same four functions.  Selection happens
in :mod:`semap.symmetry` at import time.

A breadth-first traversal of the flag graph from a fixed start flag,
labelling flags in discovery order with moves tried in the order
s0, s1, s2, produces a code: for each flag in label order, the labels
of its three neighbours.  The code is independent of the input
labelling given the start flag, so the minimum over all starts is a
canonical form.
"""
from __future__ import annotations

import struct

KERNEL_NAME = "pure"


def _bfs_ints(s0, s1, s2, start, best=None):
    """Code from one start as a list of ints; None if it exceeds ``best``."""
    count = len(s0)
    label = [-1] * count
    order = [0] * count
    label[start] = 0
    order[0] = start
    filled = 1
    out = []
    comparing = best is not None
    pos = 0
    for t in range(count):
        fl = order[t]
        for table in (s0, s1, s2):
            u = table[fl]
            lu = label[u]
            if lu < 0:
                lu = filled
                label[u] = filled
                order[filled] = u
                filled += 1
            if comparing:
                b = best[pos]
                if lu > b:
                    return None
                if lu < b:
                    comparing = False
            out.append(lu)
            pos += 1
    return out


def _pack(code_ints) -> bytes:
    return struct.pack(f">{len(code_ints)}H", *code_ints)


def min_code(s0, s1, s2) -> tuple[bytes, int]:
    """Lexicographically least code over all start flags, and its start."""
    count = len(s0)
    if count >= 1 << 16:
        raise OverflowError("flag count exceeds 16-bit code labels")
    best = _bfs_ints(s0, s1, s2, 0)
    best_start = 0
    for g in range(1, count):
        cand = _bfs_ints(s0, s1, s2, g, best)
        if cand is not None and cand < best:
            best = cand
            best_start = g
    return _pack(best), best_start


def code_from(s0, s1, s2, start) -> bytes:
    if len(s0) >= 1 << 16:
        raise OverflowError("flag count exceeds 16-bit code labels")
    return _pack(_bfs_ints(s0, s1, s2, start))


def bfs_order(s0, s1, s2, start) -> list[int]:
    """Flags in discovery order of the BFS from ``start``."""
    count = len(s0)
    label = [-1] * count
    order = [0] * count
    label[start] = 0
    order[0] = start
    filled = 1
    for t in range(count):
        fl = order[t]
        for table in (s0, s1, s2):
            u = table[fl]
            if label[u] < 0:
                label[u] = filled
                order[filled] = u
                filled += 1
    return order


def matching_starts(s0, s1, s2) -> list[int]:
    """Starts whose code equals the code from flag 0 (flag images of 0)."""
    count = len(s0)
    ref = _bfs_ints(s0, s1, s2, 0)
    out = [0]
    for g in range(1, count):
        cand = _bfs_ints_equal(s0, s1, s2, g, ref)
        if cand:
            out.append(g)
    return out


def _bfs_ints_equal(s0, s1, s2, start, ref) -> bool:
    count = len(s0)
    label = [-1] * count
    order = [0] * count
    label[start] = 0
    order[0] = start
    filled = 1
    pos = 0
    for t in range(count):
        fl = order[t]
        for table in (s0, s1, s2):
            u = table[fl]
            lu = label[u]
            if lu < 0:
                lu = filled
                label[u] = filled
                order[filled] = u
                filled += 1
            if lu != ref[pos]:
                return False
            pos += 1
    return True
