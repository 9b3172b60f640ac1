# cython: language_level=3
"""Compiled canonical-form kernel; same contract as semap._certpure."""

from libc.stdlib cimport free, malloc
from libc.string cimport memset

import struct

KERNEL_NAME = "compiled"


cdef void _bfs_fill(const int* s0, const int* s1, const int* s2, int count,
                    int start, int* label, int* order, int* out) noexcept nogil:
    cdef int filled = 1, t, pos = 0, fl, u, lu, k
    memset(label, 0xff, count * sizeof(int))
    label[start] = 0
    order[0] = start
    for t in range(count):
        fl = order[t]
        for k in range(3):
            if k == 0:
                u = s0[fl]
            elif k == 1:
                u = s1[fl]
            else:
                u = s2[fl]
            lu = label[u]
            if lu < 0:
                lu = filled
                label[u] = filled
                order[filled] = u
                filled += 1
            out[pos] = lu
            pos += 1


cdef int _bfs_compare(const int* s0, const int* s1, const int* s2, int count,
                      int start, int* label, int* order, int* out,
                      const int* best) noexcept nogil:
    """-1: strictly smaller (out fully filled); 0: equal; 1: aborted, greater."""
    cdef int filled = 1, t, pos = 0, fl, u, lu, k, verdict = 0
    memset(label, 0xff, count * sizeof(int))
    label[start] = 0
    order[0] = start
    for t in range(count):
        fl = order[t]
        for k in range(3):
            if k == 0:
                u = s0[fl]
            elif k == 1:
                u = s1[fl]
            else:
                u = s2[fl]
            lu = label[u]
            if lu < 0:
                lu = filled
                label[u] = filled
                order[filled] = u
                filled += 1
            if verdict == 0:
                if lu > best[pos]:
                    return 1
                if lu < best[pos]:
                    verdict = -1
            out[pos] = lu
            pos += 1
    return verdict


cdef class _Buffers:
    cdef int* s0
    cdef int* s1
    cdef int* s2
    cdef int* label
    cdef int* order
    cdef int* work
    cdef int* best
    cdef int count

    def __cinit__(self, seq0, seq1, seq2):
        cdef int count = len(seq0), i
        self.count = count
        self.s0 = <int*> malloc(count * sizeof(int))
        self.s1 = <int*> malloc(count * sizeof(int))
        self.s2 = <int*> malloc(count * sizeof(int))
        self.label = <int*> malloc(count * sizeof(int))
        self.order = <int*> malloc(count * sizeof(int))
        self.work = <int*> malloc(3 * count * sizeof(int))
        self.best = <int*> malloc(3 * count * sizeof(int))
        if (self.s0 == NULL or self.s1 == NULL or self.s2 == NULL or
                self.label == NULL or self.order == NULL or
                self.work == NULL or self.best == NULL):
            raise MemoryError()
        for i in range(count):
            self.s0[i] = seq0[i]
            self.s1[i] = seq1[i]
            self.s2[i] = seq2[i]

    def __dealloc__(self):
        free(self.s0)
        free(self.s1)
        free(self.s2)
        free(self.label)
        free(self.order)
        free(self.work)
        free(self.best)


def _check_size(seq):
    if len(seq) >= 1 << 16:
        raise OverflowError("flag count exceeds 16-bit code labels")


def min_code(s0, s1, s2):
    """Lexicographically least code over all start flags, and its start."""
    _check_size(s0)
    cdef _Buffers buf = _Buffers(s0, s1, s2)
    cdef int count = buf.count
    cdef int g, verdict, best_start = 0
    cdef int* tmp
    _bfs_fill(buf.s0, buf.s1, buf.s2, count, 0, buf.label, buf.order, buf.best)
    with nogil:
        for g in range(1, count):
            verdict = _bfs_compare(buf.s0, buf.s1, buf.s2, count, g,
                                   buf.label, buf.order, buf.work, buf.best)
            if verdict < 0:
                tmp = buf.best
                buf.best = buf.work
                buf.work = tmp
                best_start = g
    code = struct.pack(f">{3 * count}H", *[buf.best[i] for i in range(3 * count)])
    return code, best_start


def code_from(s0, s1, s2, start):
    _check_size(s0)
    cdef _Buffers buf = _Buffers(s0, s1, s2)
    cdef int count = buf.count
    _bfs_fill(buf.s0, buf.s1, buf.s2, count, start, buf.label, buf.order, buf.work)
    return struct.pack(f">{3 * count}H", *[buf.work[i] for i in range(3 * count)])


def bfs_order(s0, s1, s2, start):
    """Flags in discovery order of the BFS from ``start``."""
    _check_size(s0)
    cdef _Buffers buf = _Buffers(s0, s1, s2)
    cdef int count = buf.count
    _bfs_fill(buf.s0, buf.s1, buf.s2, count, start, buf.label, buf.order, buf.work)
    return [buf.order[i] for i in range(count)]


def matching_starts(s0, s1, s2):
    """Starts whose code equals the code from flag 0 (flag images of 0)."""
    _check_size(s0)
    cdef _Buffers buf = _Buffers(s0, s1, s2)
    cdef int count = buf.count
    cdef int g, verdict
    _bfs_fill(buf.s0, buf.s1, buf.s2, count, 0, buf.label, buf.order, buf.best)
    out = [0]
    matches = []
    with nogil:
        for g in range(1, count):
            verdict = _bfs_compare(buf.s0, buf.s1, buf.s2, count, g,
                                   buf.label, buf.order, buf.work, buf.best)
            if verdict == 0:
                with gil:
                    matches.append(g)
    out.extend(matches)
    return out
