"""Sparse exact Gauss-Jordan elimination on rows stored as ``{col: value}``.

Shared by the rational path of :mod:`brauergraph.exactla` and by the
pure-Python kernel fallback for GF(p). ``normalize`` reduces an element
(identity over Q, ``x % p`` over GF(p)); ``inv`` inverts a nonzero element.
"""

from __future__ import annotations


def echelon(rows, normalize, inv):
    """Return ``{pivot_col: row}`` with every row monic at its pivot.

    Each stored row's pivot is its smallest column, and it carries no pivot
    column that existed when it was inserted.
    """
    pivots: dict[int, dict] = {}
    for src in rows:
        row = {c: v for c, v in src.items() if normalize(v) != 0}
        row = {c: normalize(v) for c, v in row.items()}
        while row:
            hits = [c for c in row if c in pivots]
            if not hits:
                break
            c = min(hits)
            f = row[c]
            for k, v in pivots[c].items():
                nv = normalize(row.get(k, 0) - f * v)
                if nv == 0:
                    row.pop(k, None)
                else:
                    row[k] = nv
        if not row:
            continue
        c = min(row)
        f = inv(row[c])
        pivots[c] = {k: normalize(v * f) for k, v in row.items()}
    return pivots


def back_substitute(pivots, normalize):
    """Turn an :func:`echelon` result into reduced row echelon form in place."""
    order = sorted(pivots, reverse=True)
    for c in order:
        prow = pivots[c]
        for c2 in order:
            if c2 >= c:
                continue
            r = pivots[c2]
            f = r.get(c)
            if f is None:
                continue
            for k, v in prow.items():
                nv = normalize(r.get(k, 0) - f * v)
                if nv == 0:
                    r.pop(k, None)
                else:
                    r[k] = nv
    return pivots


def null_vectors(pivots, ncols, one, normalize):
    """Basis of the kernel from a reduced pivot map, one vector per free column."""
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = {f: one}
        for pc, row in pivots.items():
            x = row.get(f)
            if x is not None:
                v[pc] = normalize(-x)
        basis.append(v)
    return basis
