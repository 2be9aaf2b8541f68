"""Cartan data and the derived-invariant fingerprint of a ribbon graph."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

from brauergraph.algebra import AlgebraTable, build_table, cartan_counts, center_solve
from brauergraph.exactla import ExactMatrix, rank_exact, smith_normal_form
from brauergraph.fields import FieldSpec, Q
from brauergraph.quiver import classify_special, detect_caterpillar, reduce, to_presentation
from brauergraph.ribbon import RibbonGraph, euler_genus, faces, is_bipartite
from brauergraph.torus import HypothesisError, cross_check


def cartan_matrix(t: AlgebraTable) -> ExactMatrix:
    """C[i][j] = dim e_i A e_j."""
    return cartan_counts(t)


class CartanDiagnostics(NamedTuple):
    rank: int
    snf: list[int]
    rule_ok: bool
    expected_rank: int


def cartan_diagnostics(c: ExactMatrix, g: RibbonGraph) -> CartanDiagnostics:
    """Rank over Q, invariant factors, and the bipartite rank rule.

    The nonzero invariant factors present K0 of the stable category; zero
    entries are free summands.
    """
    rank = rank_exact(c, Q)
    expected = g.n_vertices - 1 if is_bipartite(g) else g.n_vertices
    return CartanDiagnostics(rank, smith_normal_form(c), rank == expected, expected)


# fields compared by default: the graph invariants plus deformation count and torus rank
DEFAULT_FIELDS = (
    "n_vertices",
    "n_edges",
    "n_faces",
    "perimeters",
    "multiplicities",
    "bipartite",
    "genus",
    "deformed_count",
    "torus_rank",
)
EXTENDED_FIELDS = ("dim_algebra", "dim_center", "cartan_snf")


@dataclass(frozen=True)
class Fingerprint:
    field: str
    n_vertices: int
    n_edges: int
    n_faces: int
    perimeters: tuple[int, ...]
    multiplicities: tuple[int, ...]
    bipartite: bool
    genus: int
    deformed_count: int
    torus_rank: int | None
    torus_note: str | None
    dim_algebra: int
    dim_center: int
    cartan_snf: tuple[int, ...]
    flags: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in ("perimeters", "multiplicities", "cartan_snf"):
            d[k] = list(d[k])
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "Fingerprint":
        d = dict(d)
        for k in ("perimeters", "multiplicities", "cartan_snf"):
            d[k] = tuple(d[k])
        return cls(**d)


def fingerprint(g: RibbonGraph, f: FieldSpec | None = None) -> Fingerprint:
    f = f or g.field or Q
    p = to_presentation(g)
    table = build_table(reduce(p), f)
    fs = faces(g)
    _, genus = euler_genus(g)
    special = classify_special(g)
    cat = detect_caterpillar(p)
    try:
        rank, note = cross_check(p, f).lattice, None
    except HypothesisError as exc:
        rank, note = None, exc.reason
    return Fingerprint(
        field=str(f),
        n_vertices=g.n_vertices,
        n_edges=g.n_edges,
        n_faces=len(fs),
        perimeters=tuple(sorted(x.perimeter for x in fs)),
        multiplicities=tuple(sorted(g.mults)),
        bipartite=is_bipartite(g),
        genus=genus,
        deformed_count=len(g.deformed),
        torus_rank=rank,
        torus_note=note,
        dim_algebra=table.dim,
        dim_center=center_solve(table).dim,
        cartan_snf=tuple(smith_normal_form(cartan_matrix(table))),
        flags={
            "caterpillar": cat is not None,
            "local": special.local,
            "exceptional_presentation": special.exceptional_presentation,
            "excluded_symmetry_case": special.excluded_symmetry_case,
        },
    )


class Verdict(NamedTuple):
    distinguished: bool
    fields: list[str]

    def __str__(self) -> str:
        if self.distinguished:
            return f"distinguished (fields: {', '.join(self.fields)})"
        return "not distinguished by these invariants"


class FieldMismatch(ValueError):
    pass


def compare(f1: Fingerprint, f2: Fingerprint, extended: bool = False) -> Verdict:
    """List every differing invariant. Never asserts derived equivalence."""
    if f1.field != f2.field:
        raise FieldMismatch(f"fingerprints over different fields: {f1.field} vs {f2.field}")
    keys = DEFAULT_FIELDS + (EXTENDED_FIELDS if extended else ())
    diff = [k for k in keys if getattr(f1, k) != getattr(f2, k)]
    return Verdict(bool(diff), diff)
