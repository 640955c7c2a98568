"""Pure-Python sparse column reduction over Z (exact, fraction-free).

This is the hot kernel behind homology and kernel/image dimension counts.
Columns are dicts {row index: nonzero int}.  Reduction is the classic
left-to-right pairing scheme: repeatedly cancel a column's largest row
against the stored column owning that row.  Column rescaling by a nonzero
integer keeps the arithmetic in Z and changes no rank or pairing data.
"""

from math import gcd

KERNEL_NAME = "pure"


def reduce_columns(cols):
    """Reduce columns left to right; return per-column final low rows.

    cols: iterable of dict {int row: int coeff}.  Returns a list with, for
    each column, the row index of its surviving pivot entry, or -1 when the
    column reduced to zero.  The prefix of the result for the first k
    columns equals the result of reducing those k columns alone.
    """
    lowmap = {}
    store = {}
    lows = []
    for j, col_in in enumerate(cols):
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
                new = {r: ca * v for r, v in col.items()}
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
    return lows


def rank(cols):
    """Rank of the integer matrix whose columns are given as dicts."""
    return sum(1 for lo in reduce_columns(cols) if lo >= 0)
