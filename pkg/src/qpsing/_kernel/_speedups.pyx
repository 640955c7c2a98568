# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of qpsing._kernel.pure; same contract, same results."""

from math import gcd

KERNEL_NAME = "compiled"


def reduce_columns(cols):
    """Reduce columns left to right; return per-column final low rows."""
    cdef dict lowmap = {}
    cdef dict store = {}
    cdef list lows = []
    cdef dict col, other, new
    cdef Py_ssize_t j = 0
    cdef object lo, owner, a, b, g, ca, cb, r, v, s, content, low

    for col_in in cols:
        col = dict(col_in)
        low = -1
        while col:
            lo = max(col)
            owner = lowmap.get(lo)
            if owner is None:
                lowmap[lo] = j
                store[j] = col
                low = lo
                break
            other = store[owner]
            a = col[lo]
            b = other[lo]
            g = gcd(a, b)
            ca = b // g
            cb = a // g
            if ca == 1:
                for r, v in other.items():
                    s = col.get(r, 0) - cb * v
                    if s:
                        col[r] = s
                    else:
                        col.pop(r, None)
            else:
                new = {}
                for r, v in col.items():
                    new[r] = ca * v
                for r, v in other.items():
                    s = new.get(r, 0) - cb * v
                    if s:
                        new[r] = s
                    else:
                        new.pop(r, None)
                col = new
                if col:
                    content = 0
                    for v in col.values():
                        content = gcd(content, v)
                        if content == 1:
                            break
                    if content > 1:
                        col = {r: v // content for r, v in col.items()}
        lows.append(low)
        j += 1
    return lows


def rank(cols):
    """Rank of the integer matrix whose columns are given as dicts."""
    cdef Py_ssize_t n = 0
    for lo in reduce_columns(cols):
        if lo >= 0:
            n += 1
    return n
