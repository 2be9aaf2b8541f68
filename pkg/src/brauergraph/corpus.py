"""Seeded random ribbon graphs and the property suites run over them."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from brauergraph.algebra import (
    associativity_violations,
    build_table,
    center_predicted,
    center_solve,
    commutes,
    dimension_formula,
    generators,
    gram_form,
    unit_checks,
)
from brauergraph.exactla import rank_sparse
from brauergraph.fields import GF2, FieldSpec, Q
from brauergraph.invariants import cartan_diagnostics, cartan_matrix
from brauergraph.quiver import classify_special, detect_caterpillar, reduce, to_presentation, to_ribbon
from brauergraph.ribbon import RibbonGraph, euler_genus, faces, parse_bg
from brauergraph.torus import HypothesisError, cross_check

_RATIONAL_TS = (Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2), Fraction(3))


@dataclass(frozen=True)
class CorpusSpec:
    seed: int = 1
    count: int = 200
    max_edges: int = 8
    max_mult: int = 3
    deform_probability: float = 0.5
    field: FieldSpec = GF2

    def __post_init__(self):
        if self.count < 0 or self.max_edges < 1 or self.max_mult < 1:
            raise ValueError("count >= 0, max_edges >= 1 and max_mult >= 1 required")
        if not 0.0 <= self.deform_probability <= 1.0:
            raise ValueError("deform probability must lie in [0, 1]")


def is_connected_rotation(sigma) -> bool:
    """Whether sigma and the pairing (0 1)(2 3)... act transitively."""
    n = len(sigma)
    seen = {0}
    stack = [0]
    while stack:
        h = stack.pop()
        for k in (sigma[h], h ^ 1):
            if k not in seen:
                seen.add(k)
                stack.append(k)
    return len(seen) == n


def _random_t(rng: random.Random, field: FieldSpec) -> Fraction:
    if field.is_rational:
        return rng.choice(_RATIONAL_TS)
    return Fraction(rng.randrange(1, field.p))


def rotation_cycles(sigma) -> list[list[int]]:
    out, seen = [], set()
    for h in range(len(sigma)):
        if h in seen:
            continue
        cyc, k = [], h
        while k not in seen:
            seen.add(k)
            cyc.append(k)
            k = sigma[k]
        out.append(cyc)
    return out


def ribbon_from_rotation(sigma, mults, marks=None, field=None) -> RibbonGraph:
    """Graph with rotation ``sigma`` and edges ``{2e, 2e+1}``.

    ``mults[i]`` goes to the i-th vertex in order of smallest half-edge;
    ``marks`` maps raw half-edge numbers to deformation parameters.
    Half-edges are renamed ``h0, h1, ...`` in vertex order.
    """
    n = len(sigma)
    cycles = rotation_cycles(sigma)
    order = [h for cyc in cycles for h in cyc]
    name = {h: f"h{i}" for i, h in enumerate(order)}
    pos = {h: i for i, h in enumerate(order)}
    vertices = [(f"v{i}", mults[i], [name[h] for h in cyc]) for i, cyc in enumerate(cycles)]
    pairs = sorted((sorted((2 * e, 2 * e + 1), key=pos.get) for e in range(n // 2)), key=lambda pr: pos[pr[0]])
    edges = [(f"e{i}", [name[a], name[b]]) for i, (a, b) in enumerate(pairs)]
    deformed = [(name[h], t) for h, t in sorted((marks or {}).items(), key=lambda kv: pos[kv[0]])]
    return RibbonGraph.build(vertices, edges, deformed, field)


def random_ribbon_graph(
    rng: random.Random,
    n_edges: int,
    max_mult: int = 3,
    deform_probability: float = 0.0,
    field: FieldSpec | None = None,
) -> RibbonGraph:
    """Uniform rotation on 2E half-edges paired as (0 1)(2 3)..., resampled until connected."""
    n = 2 * n_edges
    while True:
        sigma = list(range(n))
        rng.shuffle(sigma)
        if is_connected_rotation(sigma):
            break
    cycles = rotation_cycles(sigma)
    mults = [rng.randint(1, max_mult) for _ in cycles]
    marks = {}
    for h in (h for cyc in cycles for h in cyc):
        if sigma[h] == h ^ 1 and rng.random() < deform_probability:
            marks[h] = _random_t(rng, field or Q)
    return ribbon_from_rotation(sigma, mults, marks, field)


def generate(spec: CorpusSpec) -> list[RibbonGraph]:
    rng = random.Random(spec.seed)
    return [
        random_ribbon_graph(
            rng, rng.randint(1, spec.max_edges), spec.max_mult, spec.deform_probability, spec.field
        )
        for _ in range(spec.count)
    ]


# -- property suites ----------------------------------------------------------


class Check(NamedTuple):
    suite: str
    field: str  # "-" for field-independent suites
    status: str  # "pass", "fail" or "skip"
    detail: str = ""


SUITES = (
    "surface",
    "roundtrip",
    "presentation",
    "dimension",
    "associativity",
    "units",
    "center",
    "gram",
    "cartan",
    "torus",
)


def _result(suite: str, field: str, problems: list[str]) -> Check:
    if problems:
        return Check(suite, field, "fail", "; ".join(problems))
    return Check(suite, field, "pass")


def check_surface(g: RibbonGraph) -> list[str]:
    out = []
    fs = faces(g)
    per = [f.perimeter for f in fs]
    if sum(per) != 2 * g.n_edges:
        out.append(f"perimeters sum to {sum(per)}, not 2|E| = {2 * g.n_edges}")
    twos = per.count(2)
    if 2 * twos != 2 * g.n_edges - sum(p for p in per if p != 2):
        out.append("perimeter-2 count disagrees with the remaining perimeters")
    chi = g.n_vertices - g.n_edges + len(fs)
    if chi % 2 or chi > 2:
        out.append(f"Euler characteristic {chi} is not even and at most 2")
    else:
        _, genus = euler_genus(g)
        if genus < 0:
            out.append(f"negative genus {genus}")
    # a mark on h names the one-element face {iota(h)}
    loops = {f.cycle[0] for f in fs if f.perimeter == 1}
    for h in g.marks:
        if g.iota[h] not in loops:
            out.append(f"mark on {g.halfedges[h]} outside a perimeter-1 face")
        if g.sigma[h] != g.iota[h]:
            out.append(f"mark on {g.halfedges[h]} breaks sigma(h) = iota(h)")
    return out


def check_roundtrip(g: RibbonGraph) -> list[str]:
    out = []
    if parse_bg(g.to_bg()).key() != g.key():
        out.append(".bg round trip changed the graph")
    if RibbonGraph.from_json(g.to_json()).key() != g.key():
        out.append("JSON round trip changed the graph")
    # the presentation carries no field, so compare everything else
    if to_ribbon(to_presentation(g)).key()[:-1] != g.key()[:-1]:
        out.append("to_ribbon(to_presentation(g)) differs from g")
    return out


def check_presentation(g: RibbonGraph) -> list[str]:
    out = []
    p = to_presentation(g)
    p.validate()
    if not (p.n_arrows == 2 * len(p.q0) == 2 * g.n_edges):
        out.append(f"|Q1| = {p.n_arrows}, |Q0| = {len(p.q0)}, |E| = {g.n_edges}")
    if len(p.cycles) != g.n_vertices:
        out.append(f"{len(p.cycles)} pi-cycles for {g.n_vertices} vertices")
    ell = sum(1 for f in faces(g) if f.perimeter == 1)
    if len(p.free_loops()) != ell:
        out.append(f"{len(p.free_loops())} free loops but {ell} perimeter-1 faces")
    if detect_caterpillar(p) is not None and p.deformed:
        out.append("caterpillar with deformed loops")
    return out


def check_algebra(g: RibbonGraph, f: FieldSpec) -> dict[str, list[str]]:
    """Field-dependent suites sharing one multiplication table."""
    p = to_presentation(g)
    r = reduce(p)
    t = build_table(r, f)
    res: dict[str, list[str]] = {}

    want = dimension_formula(r)
    res["dimension"] = [] if want == t.dim else [f"table dim {t.dim}, formula {want}"]

    bad, checked, first = associativity_violations(t)
    res["associativity"] = [] if bad == 0 else [f"{bad}/{checked} triples fail, first {first}"]
    res["units"] = unit_checks(t)

    center = []
    solved = center_solve(t)
    pred = center_predicted(t)
    ell = sum(1 for fc in faces(g) if fc.perimeter == 1)
    closed = 1 + sum(m - 1 for m in g.mults if m > 1) + ell + g.n_edges
    if not solved.dim == pred.dim == closed:
        center.append(f"solved {solved.dim}, predicted {pred.dim}, closed form {closed}")
    gens = generators(t)
    for label, z in pred.elements:
        if not all(commutes(t, z, b) for b in gens):
            center.append(f"{label} is not central")
    if rank_sparse([z for _, z in pred.elements], t.dim, f) != len(pred.elements):
        center.append("predicted central elements are dependent")
    res["center"] = center

    gram = gram_form(t)
    res["gram"] = []
    if not gram.symmetric:
        res["gram"].append("Gram matrix not symmetric")
    if not classify_special(g).excluded_symmetry_case and gram.rank != t.dim:
        res["gram"].append(f"Gram rank {gram.rank} < dim {t.dim}")

    c = cartan_matrix(t)
    diag = cartan_diagnostics(c, g)
    res["cartan"] = []
    if not c.is_symmetric():
        res["cartan"].append("Cartan matrix not symmetric")
    if not diag.rule_ok:
        res["cartan"].append(f"Cartan rank {diag.rank}, bipartite rule wants {diag.expected_rank}")
    return res


def check_torus(g: RibbonGraph, f: FieldSpec) -> Check:
    p = to_presentation(g)
    try:
        rep = cross_check(p, f)
    except HypothesisError as exc:
        return Check("torus", str(f), "skip", exc.reason)
    except AssertionError as exc:
        return Check("torus", str(f), "fail", str(exc))
    problems = []
    d = len(p.deformed)
    if rep.matrix_rank != g.n_vertices + d:
        problems.append(f"exponent rank {rep.matrix_rank} != |V| + d")
    if rep.dim_group != 2 * g.n_edges - g.n_vertices - d + 1:
        problems.append(f"group dimension {rep.dim_group} != 2|E| - |V| - d + 1")
    if rep.lattice != g.n_edges - g.n_vertices - d + 2:
        problems.append(f"lattice rank {rep.lattice} != |E| - |V| - d + 2")
    return _result("torus", str(f), problems)


def _vanishes(f: FieldSpec, t: Fraction) -> bool:
    try:
        return f(t) == f.zero
    except ZeroDivisionError:
        return True


def run_suites(g: RibbonGraph, fields: tuple[FieldSpec, ...]) -> list[Check]:
    """Every suite on one graph; the order of the returned checks is fixed."""
    out = [
        _result("surface", "-", check_surface(g)),
        _result("roundtrip", "-", check_roundtrip(g)),
        _result("presentation", "-", check_presentation(g)),
    ]
    for f in fields:
        fs = str(f)
        if any(_vanishes(f, t) for t in g.marks.values()):
            for s in SUITES[3:]:
                out.append(Check(s, fs, "skip", "a deformation parameter vanishes in this field"))
            continue
        res = check_algebra(g, f)
        for s in SUITES[3:-1]:
            out.append(_result(s, fs, res[s]))
        out.append(check_torus(g, f))
    return out


class SuiteSummary(NamedTuple):
    suite: str
    field: str
    passed: int
    failed: int
    skipped: int


def summarize(results: list[list[Check]]) -> list[SuiteSummary]:
    tally: dict[tuple[str, str], list[int]] = {}
    for checks in results:
        for c in checks:
            row = tally.setdefault((c.suite, c.field), [0, 0, 0])
            row[("pass", "fail", "skip").index(c.status)] += 1
    return [SuiteSummary(s, f, *v) for (s, f), v in tally.items()]
