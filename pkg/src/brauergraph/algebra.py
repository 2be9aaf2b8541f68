"""The finite-dimensional algebra kQ/I of a (possibly deformed) Brauer graph.

Basis: one idempotent and one socle element per Q0-vertex, plus every
proper subpath of every retained cycle power ``C^m``. Any product of two
basis elements is a scalar multiple of a basis element (or zero), so the
table is stored as a rule rather than as dim**2 structure constants.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from brauergraph import kernels
from brauergraph.exactla import ExactMatrix, nullspace_sparse, rank_sparse
from brauergraph.fields import FieldSpec, Q
from brauergraph.quiver import Presentation, ReducedPresentation

IDEM, PATH, SOC = 0, 1, 2

# exhaustive associativity up to this dimension, sampled above it
EXHAUSTIVE_ASSOC_DIM = 60
ASSOC_SAMPLES = 10_000


class BasisElement(NamedTuple):
    kind: int
    vertex: int  # start vertex in Q0
    cycle: int = -1
    start: int = -1  # position of the first arrow in its cycle
    length: int = 0


@dataclass
class AlgebraTable:
    presentation: Presentation
    reduced: ReducedPresentation
    field: FieldSpec
    basis: list[BasisElement]
    end: list[int]
    ts: dict[tuple[int, int], object]  # (cycle, position) of a deformed loop -> t
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        p = self.presentation
        self._idem = {b.vertex: i for i, b in enumerate(self.basis) if b.kind == IDEM}
        self._soc = {b.vertex: i for i, b in enumerate(self.basis) if b.kind == SOC}
        self._path = {
            (b.cycle, b.start, b.length): i for i, b in enumerate(self.basis) if b.kind == PATH
        }
        self._clen = [len(c) for c in p.cycles]
        self._full = [len(c) * m for c, m in zip(p.cycles, p.mult)]
        n = len(p.q0)
        self.starts_at: list[list[int]] = [[] for _ in range(n)]
        self.ends_at: list[list[int]] = [[] for _ in range(n)]
        for i, b in enumerate(self.basis):
            self.starts_at[b.vertex].append(i)
            self.ends_at[self.end[i]].append(i)
        self._one = self.field.one

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def excluded_symmetry_case(self) -> bool:
        p = self.presentation
        return len(p.q0) == 1 and len(p.cycles) == 1 and p.mult == (1,) and len(p.deformed) == 2

    def idem(self, v: int) -> int:
        return self._idem[v]

    def soc(self, v: int) -> int:
        return self._soc[v]

    def path(self, cycle: int, start: int, length: int) -> int:
        """Index of a path element, or of the socle when ``length`` is the full power."""
        start %= self._clen[cycle]
        if length == self._full[cycle]:
            return self._soc[self.presentation.source[self.presentation.cycles[cycle][start]]]
        return self._path[(cycle, start, length)]

    def arrows(self) -> list[int]:
        return [i for i, b in enumerate(self.basis) if b.kind == PATH and b.length == 1]

    def label(self, i: int) -> str:
        b = self.basis[i]
        p = self.presentation
        if b.kind == IDEM:
            return f"e[{p.q0[b.vertex]}]"
        if b.kind == SOC:
            return f"s[{p.q0[b.vertex]}]"
        cyc = p.cycles[b.cycle]
        word = [p.arrows[cyc[(b.start + k) % len(cyc)]] for k in range(b.length)]
        return "*".join(word)

    # -- multiplication ---------------------------------------------------

    def product(self, i: int, j: int):
        """``(k, coef)`` with ``b_i * b_j = coef * b_k``, or ``None`` for zero."""
        bi, bj = self.basis[i], self.basis[j]
        if bi.kind == IDEM:
            return (j, self._one) if bj.vertex == bi.vertex else None
        if bj.kind == IDEM:
            return (i, self._one) if self.end[i] == bj.vertex else None
        if bi.kind == SOC or bj.kind == SOC:
            return None
        c = bi.cycle
        if bj.cycle != c:
            return None
        L = self._clen[c]
        if (bi.start + bi.length) % L != bj.start:
            if bi.length == bj.length == 1 and bi.start == bj.start:
                t = self.ts.get((c, bi.start))
                if t is not None:
                    return (self._soc[bi.vertex], t)
            return None
        tot = bi.length + bj.length
        full = self._full[c]
        if tot < full:
            return (self._path[(c, bi.start, tot)], self._one)
        if tot == full:
            return (self._soc[bi.vertex], self._one)
        return None

    def mul(self, x: dict, y: dict) -> dict:
        """Product of sparse vectors ``{basis index: coefficient}``."""
        out: dict = {}
        norm = self.field.normalize
        for i, a in x.items():
            for j in self.starts_at[self.end[i]]:
                b = y.get(j)
                if b is None:
                    continue
                r = self.product(i, j)
                if r is None:
                    continue
                k, c = r
                v = norm(out.get(k, 0) + a * b * c)
                if v == 0:
                    out.pop(k, None)
                else:
                    out[k] = v
        return out

    def one(self) -> dict:
        return {self._idem[v]: self._one for v in self._idem}

    def nonzero_products(self):
        """Yield ``(i, j, k, coef)`` for every nonzero product of basis elements."""
        for i in range(self.dim):
            for j in self.starts_at[self.end[i]]:
                r = self.product(i, j)
                if r is not None:
                    yield i, j, r[0], r[1]

    def to_dict(self) -> dict:
        return {
            "field": str(self.field),
            "dimension": self.dim,
            "basis": [self.label(i) for i in range(self.dim)],
            "products": [
                [i, j, k, str(c)] for i, j, k, c in self.nonzero_products()
            ],
            "notes": list(self.notes),
        }


def build_table(r: ReducedPresentation, f: FieldSpec = Q) -> AlgebraTable:
    p = r.presentation
    ts = {}
    cyc_of = p.cycle_of
    notes = []
    for a, t in sorted(p.deformed.items()):
        c, k = cyc_of[a]
        assert c in r.retained, "deformed loop lies on a truncated cycle"
        try:
            tv = f(t)
        except ZeroDivisionError:
            tv = 0
        if tv == 0:
            raise ValueError(f"deformation parameter of {p.arrows[a]} is zero in {f}")
        ts[(c, k)] = tv
    if p.deformed and f.characteristic != 2:
        notes.append(
            "deformed loops over a field of characteristic != 2: the algebra is isomorphic "
            "to the undeformed one"
        )
    basis = [BasisElement(IDEM, v) for v in range(len(p.q0))]
    end = list(range(len(p.q0)))
    for c in r.retained:
        cyc = p.cycles[c]
        L = len(cyc)
        full = L * p.mult[c]
        for s in range(L):
            for ln in range(1, full):
                basis.append(BasisElement(PATH, p.source[cyc[s]], c, s, ln))
                end.append(p.target[cyc[(s + ln - 1) % L]])
    for v in range(len(p.q0)):
        basis.append(BasisElement(SOC, v))
        end.append(v)
    return AlgebraTable(p, r, f, basis, end, ts, notes)


def dimension_formula(r: ReducedPresentation) -> int:
    """2|E| plus val(v) * (m_v val(v) - 1) over the non-truncated vertices."""
    p = r.presentation
    if r.two_dim:
        return 2
    return 2 * len(p.q0) + sum(
        len(p.cycles[c]) * (p.mult[c] * len(p.cycles[c]) - 1) for c in r.retained
    )


# -- symmetrizing form ------------------------------------------------------


class GramResult(NamedTuple):
    rank: int
    dim: int
    nondegenerate: bool
    symmetric: bool
    inconclusive: bool


def gram_rows(t: AlgebraTable) -> list[dict]:
    """Rows of G[b, c] = phi(b c), with phi = 1 on socle elements, 0 elsewhere."""
    rows = []
    soc_kind = SOC
    for i in range(t.dim):
        row = {}
        for j in t.starts_at[t.end[i]]:
            r = t.product(i, j)
            if r is not None and t.basis[r[0]].kind == soc_kind:
                row[j] = r[1]
        rows.append(row)
    return rows


def gram_form(t: AlgebraTable) -> GramResult:
    rows = gram_rows(t)
    symmetric = all(rows[j].get(i) == v for i, row in enumerate(rows) for j, v in row.items())
    rank = rank_sparse(rows, t.dim, t.field)
    nondeg = rank == t.dim
    return GramResult(rank, t.dim, nondeg, symmetric, (not nondeg) and t.excluded_symmetry_case)


# -- center -----------------------------------------------------------------


class CenterSolution(NamedTuple):
    dim: int
    basis: list[dict]


def generators(t: AlgebraTable) -> list[int]:
    """Idempotents, arrows and socle elements: together they generate A."""
    return [i for i, b in enumerate(t.basis) if b.kind != PATH or b.length == 1]


def center_solve(t: AlgebraTable) -> CenterSolution:
    """Solve z g = g z for every generator g, exactly."""
    rows = []
    norm = t.field.normalize
    for g in generators(t):
        eq: dict[int, dict] = {}
        gv = t.basis[g].vertex
        for b in t.ends_at[gv]:  # b * g
            r = t.product(b, g)
            if r is not None:
                row = eq.setdefault(r[0], {})
                row[b] = norm(row.get(b, 0) + r[1])
        for b in t.starts_at[t.end[g]]:  # g * b
            r = t.product(g, b)
            if r is not None:
                row = eq.setdefault(r[0], {})
                row[b] = norm(row.get(b, 0) - r[1])
        for k in sorted(eq):
            row = {b: v for b, v in eq[k].items() if v != 0}
            if row:
                rows.append(row)
    basis = nullspace_sparse(rows, t.dim, t.field)
    return CenterSolution(len(basis), basis)


class CenterPrediction(NamedTuple):
    dim: int
    elements: list[tuple[str, dict]]
    quotient: tuple[int, ...] | None  # multiplicities m > 1; None when suppressed


def predicted_center_dim(p: Presentation, r: ReducedPresentation) -> int:
    """1 + sum(m - 1 over cycles with m > 1) + #free loops + |Q0|."""
    return 1 + sum(m - 1 for m in p.mult if m > 1) + len(p.free_loops()) + len(p.q0)


def center_predicted(t: AlgebraTable) -> CenterPrediction:
    p, r = t.presentation, t.reduced
    one = t.field.one
    elems: list[tuple[str, dict]] = [("1", t.one())]
    mults = []
    for c in r.retained:
        m = p.mult[c]
        if m <= 1:
            continue
        mults.append(m)
        L = len(p.cycles[c])
        name = p.cycle_names[c] if p.cycle_names else str(c)
        for k in range(1, m):
            vec = {t.path(c, s, k * L): one for s in range(L)}
            elems.append((f"m[{name},{k}]", vec))
    cyc_of = p.cycle_of
    for a in p.free_loops():
        c, j = cyc_of[a]
        full = len(p.cycles[c]) * p.mult[c]
        elems.append((f"q[{p.arrows[a]}]", {t.path(c, j + 1, full - 1): one}))
    for v in range(len(p.q0)):
        elems.append((f"s[{p.q0[v]}]", {t.soc(v): one}))
    a_inf = len(p.q0) == 1 and len(p.cycles) == 1 and p.mult == (1,) and len(p.cycles[0]) == 2
    quotient = None if a_inf else tuple(sorted(mults))
    return CenterPrediction(predicted_center_dim(p, r), elems, quotient)


def commutes(t: AlgebraTable, z: dict, b: int) -> bool:
    return t.mul(z, {b: t.field.one}) == t.mul({b: t.field.one}, z)


# -- structural checks --------------------------------------------------------


def _monomial_arrays(t: AlgebraTable):
    n = t.dim
    idx = np.full((n, n), -1, dtype=np.int32)
    num = np.zeros((n, n), dtype=np.int64)
    den = np.ones((n, n), dtype=np.int64)
    exact_ok = True
    for i, j, k, c in t.nonzero_products():
        idx[i, j] = k
        if t.field.is_rational:
            c = Fraction(c)
            if abs(c.numerator) >= 1 << 15 or c.denominator >= 1 << 15:
                exact_ok = False
            num[i, j] = c.numerator
            den[i, j] = c.denominator
        else:
            num[i, j] = c
    return idx, num, den, exact_ok


def _assoc_triple(t: AlgebraTable, b: int, c: int, d: int) -> bool:
    one = t.field.one
    x, y, z = {b: one}, {c: one}, {d: one}
    return t.mul(t.mul(x, y), z) == t.mul(x, t.mul(y, z))


def associativity_violations(t: AlgebraTable, seed: int = 0) -> tuple[int, int, tuple]:
    """``(violations, triples_checked, first_bad)``.

    Exhaustive up to ``EXHAUSTIVE_ASSOC_DIM``, otherwise ``ASSOC_SAMPLES``
    seeded random triples.
    """
    n = t.dim
    if n <= EXHAUSTIVE_ASSOC_DIM:
        triples = None
    else:
        rng = random.Random(seed)
        triples = [tuple(rng.randrange(n) for _ in range(3)) for _ in range(ASSOC_SAMPLES)]
    idx, num, den, exact_ok = _monomial_arrays(t)
    if exact_ok:
        if triples is None:
            count, first = kernels.assoc_violations(idx, num, den, t.field.p)
            return count, n**3, first
        arr = np.array(triples, dtype=np.int32).reshape(-1, 3)
        count, first = kernels.assoc_violations_at(idx, num, den, t.field.p, arr)
        return count, len(triples), first
    # coefficients too large for the fixed-width kernel
    if triples is None:
        triples = [(b, c, d) for b in range(n) for c in range(n) for d in range(n)]
    bad = [tr for tr in triples if not _assoc_triple(t, *tr)]
    return len(bad), len(triples), bad[0] if bad else (-1, -1, -1)


def unit_checks(t: AlgebraTable) -> list[str]:
    """Orthogonal idempotents summing to 1, socle killed by the radical."""
    problems = []
    one = t.field.one
    ids = [t.idem(v) for v in range(len(t.presentation.q0))]
    for a in ids:
        for b in ids:
            want = {a: one} if a == b else {}
            if t.mul({a: one}, {b: one}) != want:
                problems.append(f"idempotents {t.label(a)} {t.label(b)} not orthogonal")
    u = t.one()
    for i in range(t.dim):
        if t.mul(u, {i: one}) != {i: one} or t.mul({i: one}, u) != {i: one}:
            problems.append(f"1 does not act as identity on {t.label(i)}")
    for v in range(len(t.presentation.q0)):
        s = t.soc(v)
        for i in range(t.dim):
            if t.basis[i].kind == IDEM:
                continue
            if t.product(s, i) is not None or t.product(i, s) is not None:
                problems.append(f"socle {t.label(s)} not annihilated by {t.label(i)}")
    return problems


def cartan_counts(t: AlgebraTable) -> ExactMatrix:
    n = len(t.presentation.q0)
    c = [[0] * n for _ in range(n)]
    for i, b in enumerate(t.basis):
        c[b.vertex][t.end[i]] += 1
    return ExactMatrix.from_rows(c)
