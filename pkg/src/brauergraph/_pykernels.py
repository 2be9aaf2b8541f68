"""Pure-Python implementations of the compiled kernels in ``_ckernels.pyx``.

Signatures and results match the Cython versions exactly; tests run both.
"""

from __future__ import annotations

import numpy as np

from brauergraph._elim import back_substitute, echelon


def rref_mod_p(a, p):
    """Reduce the int64 matrix ``a`` (entries in ``[0, p)``) to RREF in place.

    Returns ``(rank, pivot_columns)``; pivot rows occupy ``a[:rank]``.
    """
    p = int(p)
    rows = []
    for r in a.tolist():
        rows.append({c: v for c, v in enumerate(r) if v})
    norm = (lambda x: x % p)
    piv = back_substitute(echelon(rows, norm, lambda x: pow(x, -1, p)), norm)
    cols = sorted(piv)
    a[:, :] = 0
    for i, c in enumerate(cols):
        for k, v in piv[c].items():
            a[i, k] = v
    return len(cols), tuple(cols)


def assoc_violations(idx, num, den, p):
    """Count triples (b, c, d) with (bc)d != b(cd) in a monomial table.

    ``idx[b, c]`` is the basis index of ``b*c`` (-1 for zero) and
    ``num/den`` its coefficient. With ``p > 0`` coefficients live in GF(p)
    and ``den`` is ignored; with ``p == 0`` they are rationals compared by
    cross-multiplication. Returns ``(count, first_triple)`` where the triple
    is ``(-1, -1, -1)`` when there are no violations.
    """
    idx = np.asarray(idx).tolist()
    num = np.asarray(num).tolist()
    den = np.asarray(den).tolist()
    n = len(idx)
    p = int(p)
    count = 0
    first = (-1, -1, -1)
    for b in range(n):
        ib, nb, db = idx[b], num[b], den[b]
        for c in range(n):
            bc = ib[c]
            icd, ncd, dcd = idx[c], num[c], den[c]
            for d in range(n):
                cd = icd[d]
                if bc < 0:
                    left = -1
                else:
                    left = idx[bc][d]
                right = -1 if cd < 0 else ib[cd]
                if left < 0 and right < 0:
                    continue
                ok = left == right
                if ok:
                    ln, ld = nb[c] * num[bc][d], db[c] * den[bc][d]
                    rn, rd = ncd[d] * nb[cd], dcd[d] * db[cd]
                    if p:
                        ok = (ln - rn) % p == 0
                    else:
                        ok = ln * rd == rn * ld
                if not ok:
                    if count == 0:
                        first = (b, c, d)
                    count += 1
    return count, first


def assoc_violations_at(idx, num, den, p, triples):
    """:func:`assoc_violations` restricted to the rows of the ``(k, 3)`` array ``triples``."""
    idx = np.asarray(idx).tolist()
    num = np.asarray(num).tolist()
    den = np.asarray(den).tolist()
    p = int(p)
    count = 0
    first = (-1, -1, -1)
    for b, c, d in np.asarray(triples).tolist():
        bc, cd = idx[b][c], idx[c][d]
        left = -1 if bc < 0 else idx[bc][d]
        right = -1 if cd < 0 else idx[b][cd]
        if left < 0 and right < 0:
            continue
        ok = left == right
        if ok:
            ln, ld = num[b][c] * num[bc][d], den[b][c] * den[bc][d]
            rn, rd = num[c][d] * num[b][cd], den[c][d] * den[b][cd]
            ok = (ln - rn) % p == 0 if p else ln * rd == rn * ld
        if not ok:
            if count == 0:
                first = (b, c, d)
            count += 1
    return count, first
