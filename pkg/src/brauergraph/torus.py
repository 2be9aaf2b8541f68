"""Rank of the maximal torus of Out^0(A), by closed formula and by lattice.

The diagonal parts of automorphisms fixing the idempotents form the group
cut out of the torus with coordinates ``k_alpha`` (one per arrow of the
unreduced quiver) and ``kbar`` by the binomial equations

    prod_{alpha in C} k_alpha^m(C) = kbar     for each pi-cycle C
    k_alpha^2 = t_alpha * kbar                for each deformed loop alpha

Its dimension is the number of coordinates minus the rank of the exponent
matrix; inner automorphisms contribute a torus of rank |Q0| - 1.
"""

from __future__ import annotations

from typing import NamedTuple

from brauergraph.exactla import ExactMatrix, rank_exact
from brauergraph.fields import FieldSpec, Q
from brauergraph.quiver import Presentation, detect_caterpillar


class HypothesisError(ValueError):
    """The torus-rank formula does not apply to this input."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


class CrossCheckError(AssertionError):
    pass


def exponent_matrix(p: Presentation) -> ExactMatrix:
    n = p.n_arrows
    rows = []
    for cyc, m in zip(p.cycles, p.mult):
        row = [0] * (n + 1)
        for a in cyc:
            row[a] = m
        row[n] = -1
        rows.append(row)
    for a in sorted(p.deformed):
        row = [0] * (n + 1)
        row[a] = 2
        row[n] = -1
        rows.append(row)
    return ExactMatrix.from_rows(rows, n + 1)


def check_hypotheses(p: Presentation, field: FieldSpec = Q):
    """Raise :class:`HypothesisError` naming the first failed condition."""
    if len(p.q0) < 2:
        raise HypothesisError("local: fewer than two simple modules")
    cat = detect_caterpillar(p)
    if cat is not None:
        raise HypothesisError(f"caterpillar: torus-rank hypotheses fail (length {cat.length})")
    if p.deformed and field.characteristic != 2:
        raise HypothesisError(
            f"{len(p.deformed)} deformed loop(s) over a field of characteristic "
            f"{field.characteristic}: the formula needs characteristic 2"
        )


class LatticeRank(NamedTuple):
    matrix_rank: int
    dim_group: int  # dimension of the diagonal group of H'
    rank: int  # torus rank of Out^0(A)


def torus_rank_lattice(p: Presentation, field: FieldSpec = Q, enforce: bool = True) -> LatticeRank:
    """Torus rank from the exponent lattice.

    ``enforce=False`` skips the hypothesis check and returns the bare lattice
    arithmetic, which carries no claim about Out^0(A) for excluded inputs.
    """
    if enforce:
        check_hypotheses(p, field)
    m = exponent_matrix(p)
    rk = rank_exact(m, Q)
    expected = len(p.cycles) + len(p.deformed)
    if rk != expected:
        raise CrossCheckError(f"exponent matrix has rank {rk}, expected |V| + d = {expected}")
    dim_group = m.ncols - rk
    return LatticeRank(rk, dim_group, dim_group - (len(p.q0) - 1))


def torus_rank_formula(p: Presentation, field: FieldSpec = Q, enforce: bool = True) -> int:
    """|E| - |V| - d + 2."""
    if enforce:
        check_hypotheses(p, field)
    return len(p.q0) - len(p.cycles) - len(p.deformed) + 2


class TorusReport(NamedTuple):
    formula: int
    lattice: int
    matrix_rank: int
    dim_group: int
    n_edges: int
    n_vertices: int
    deformed: int


def cross_check(p: Presentation, field: FieldSpec = Q) -> TorusReport:
    """Both routes must agree; any disagreement raises :class:`CrossCheckError`."""
    lat = torus_rank_lattice(p, field)
    f = torus_rank_formula(p, field)
    if lat.rank != f:
        raise CrossCheckError(f"lattice torus rank {lat.rank} != formula {f}")
    return TorusReport(f, lat.rank, lat.matrix_rank, lat.dim_group, len(p.q0), len(p.cycles),
                       len(p.deformed))
