"""Exact linear algebra over Q and GF(p), and Smith normal form over Z.

Rational elimination runs on sparse rows of ``Fraction``; GF(p) elimination
goes through :mod:`brauergraph.kernels` (compiled when available).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from brauergraph import kernels
from brauergraph._elim import back_substitute, echelon, null_vectors
from brauergraph.fields import Q, FieldSpec


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix of exact entries (ints, ``Fraction`` or GF(p) residues)."""

    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "ExactMatrix":
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(rows, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(tuple(zip(*self.rows)) if self.rows else (), len(self.rows))

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i)
        )

    def sparse_rows(self) -> list[dict]:
        return [{j: v for j, v in enumerate(r) if v} for r in self.rows]


def _as_sparse(m) -> tuple[list[dict], int]:
    if isinstance(m, ExactMatrix):
        return m.sparse_rows(), m.ncols
    m = [list(r) for r in m]
    ncols = len(m[0]) if m else 0
    return [{j: v for j, v in enumerate(r) if v} for r in m], ncols


def _dense_mod_p(rows: list[dict], ncols: int, field: FieldSpec) -> np.ndarray:
    a = np.zeros((max(len(rows), 1), max(ncols, 1)), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, v in r.items():
            a[i, j] = field(v)
    return a


def _rref_sparse(rows, ncols, field: FieldSpec, reduce: bool = True) -> dict[int, dict]:
    """Pivot map ``{col: row}`` of the (reduced) echelon form over ``field``."""
    if field.is_rational:
        norm = (lambda x: x)
        piv = echelon(
            ({j: Fraction(v) for j, v in r.items()} for r in rows), norm, lambda x: 1 / x
        )
        return back_substitute(piv, norm) if reduce else piv
    if not rows or ncols == 0:
        return {}
    if kernels.compiled_kernels is None:
        # the Python twin is sparse inside; skip the dense round trip
        p = field.p
        norm = (lambda x: x % p)
        piv = echelon(({j: field(v) for j, v in r.items()} for r in rows), norm, field.inv)
        return back_substitute(piv, norm) if reduce else piv
    a = _dense_mod_p(rows, ncols, field)
    rank, cols = kernels.rref_mod_p(a, field.p)
    piv = {}
    for i, c in enumerate(cols):
        nz = np.nonzero(a[i])[0]
        piv[c] = {int(k): int(a[i, k]) for k in nz}
    return piv


def rank_sparse(rows: list[dict], ncols: int, field: FieldSpec = Q) -> int:
    return len(_rref_sparse(rows, ncols, field, reduce=False))


def nullspace_sparse(rows: list[dict], ncols: int, field: FieldSpec = Q) -> list[dict]:
    """Kernel basis of a sparse system, as sparse vectors ``{col: value}``."""
    piv = _rref_sparse(rows, ncols, field)
    return null_vectors(piv, ncols, field.one, field.normalize)


def rank_exact(m, field: FieldSpec = Q) -> int:
    """Rank over ``field``; integer or rational entries are coerced."""
    rows, ncols = _as_sparse(m)
    return rank_sparse(rows, ncols, field)


def nullspace(m, field: FieldSpec = Q) -> tuple[int, list[list]]:
    """Return ``(dim, basis)`` of the right kernel ``{v : m v = 0}``."""
    rows, ncols = _as_sparse(m)
    vecs = nullspace_sparse(rows, ncols, field)
    basis = []
    for v in vecs:
        dense = [field.zero] * ncols
        for j, x in v.items():
            dense[j] = x
        basis.append(dense)
    return len(basis), basis


def smith_normal_form(m) -> list[int]:
    """Invariant factors ``d_1 | d_2 | ...`` of an integer matrix.

    The result has ``min(rows, cols)`` entries, nonnegative, with zeros last.
    """
    a = [[int(x) for x in r] for r in (m.rows if isinstance(m, ExactMatrix) else m)]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    diag = []
    for t in range(min(nr, nc)):
        # pick the smallest nonzero entry of the trailing block as pivot
        while True:
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                diag.extend([0] * (min(nr, nc) - t))
                return _fix_chain(diag)
            i, j = best
            a[t], a[i] = a[i], a[t]
            for r in a:
                r[t], r[j] = r[j], r[t]
            piv = a[t][t]
            done = True
            for i in range(t + 1, nr):
                q = a[i][t] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, nc):
                q = a[t][j] // piv
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                if a[t][j]:
                    done = False
            if not done:
                continue
            # pivot must divide the whole trailing block
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        diag.append(abs(a[t][t]))
    return _fix_chain(diag)


def _fix_chain(diag: list[int]) -> list[int]:
    nz = sorted(d for d in diag if d)
    return nz + [0] * (len(diag) - len(nz))
