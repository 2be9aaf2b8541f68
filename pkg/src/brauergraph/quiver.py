"""Quiver presentations (Q, pi, m, deformed loops, t) of ribbon graphs.

Arrows are indexed by half-edges: arrow ``a_h`` runs from ``edge(h)`` to
``edge(sigma(h))`` and ``pi(a_h) = a_sigma(h)``, so pi is literally the
vertex rotation and its cycles are the vertices of the graph.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple

from brauergraph.ribbon import BGError, RibbonGraph, faces


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    q0: tuple[str, ...]
    arrows: tuple[str, ...]
    source: tuple[int, ...]
    target: tuple[int, ...]
    pi: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]
    mult: tuple[int, ...]
    cycle_names: tuple[str, ...] = ()
    deformed: dict = field(default_factory=dict)  # arrow -> t

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    @property
    def cycle_of(self) -> dict[int, tuple[int, int]]:
        """Arrow -> (cycle index, position in cycle)."""
        return {a: (i, k) for i, cyc in enumerate(self.cycles) for k, a in enumerate(cyc)}

    def is_loop(self, a: int) -> bool:
        return self.source[a] == self.target[a]

    def free_loops(self) -> list[int]:
        """Loops ``a`` with ``pi(a) != a``; these may carry deformations."""
        return [a for a in range(self.n_arrows) if self.is_loop(a) and self.pi[a] != a]

    def validate(self):
        n = self.n_arrows
        if sorted(self.pi) != list(range(n)):
            raise PresentationError("pi is not a permutation of the arrows")
        out = Counter(self.source)
        inc = Counter(self.target)
        for v in range(len(self.q0)):
            if out[v] != 2 or inc[v] != 2:
                raise PresentationError(
                    f"vertex {self.q0[v]} has {out[v]} outgoing and {inc[v]} incoming arrows; "
                    "need exactly 2 and 2"
                )
        for a in range(n):
            if self.target[a] != self.source[self.pi[a]]:
                raise PresentationError(
                    f"arrow {self.arrows[a]} ends at {self.q0[self.target[a]]} but pi of it "
                    f"starts at {self.q0[self.source[self.pi[a]]]}"
                )
        seen = sorted(a for cyc in self.cycles for a in cyc)
        if seen != list(range(n)):
            raise PresentationError("cycles do not partition the arrows")
        for cyc in self.cycles:
            for k, a in enumerate(cyc):
                if self.pi[a] != cyc[(k + 1) % len(cyc)]:
                    raise PresentationError("listed cycles disagree with pi")
        if len(self.mult) != len(self.cycles) or any(m < 1 for m in self.mult):
            raise PresentationError("need a positive multiplicity per cycle")
        for a in self.deformed:
            if not self.is_loop(a) or self.pi[a] == a:
                raise PresentationError(f"deformed arrow {self.arrows[a]} is not a loop moved by pi")


def to_presentation(g: RibbonGraph) -> Presentation:
    n = len(g.halfedges)
    return Presentation(
        q0=tuple(e.name for e in g.edges),
        arrows=g.halfedges,
        source=g.edge_of,
        target=tuple(g.edge_of[g.sigma[h]] for h in range(n)),
        pi=g.sigma,
        cycles=tuple(tuple(g.index[h] for h in v.halfedges) for v in g.vertices),
        mult=g.mults,
        cycle_names=tuple(v.name for v in g.vertices),
        deformed=dict(g.marks),
    )


def cycles_of(pi) -> tuple[tuple[int, ...], ...]:
    """Cycles of a permutation, each starting at its smallest element."""
    seen = set()
    out = []
    for a in range(len(pi)):
        if a in seen:
            continue
        cyc = []
        b = a
        while b not in seen:
            seen.add(b)
            cyc.append(b)
            b = pi[b]
        out.append(tuple(cyc))
    return tuple(out)


def to_ribbon(p: Presentation) -> RibbonGraph:
    """Rebuild the ribbon graph: pi-cycles become vertices, Q0 becomes edges."""
    p.validate()
    names = p.cycle_names or tuple(f"v{i}" for i in range(len(p.cycles)))
    outgoing: dict[int, list[int]] = {v: [] for v in range(len(p.q0))}
    for a in range(p.n_arrows):
        outgoing[p.source[a]].append(a)
    vertices = [
        (names[i], p.mult[i], [p.arrows[a] for a in cyc]) for i, cyc in enumerate(p.cycles)
    ]
    edges = [(p.q0[v], [p.arrows[a] for a in outgoing[v]]) for v in range(len(p.q0))]
    deformed = [(p.arrows[a], t) for a, t in p.deformed.items()]
    try:
        return RibbonGraph.build(vertices, edges, deformed)
    except BGError as exc:
        raise PresentationError(str(exc)) from None


@dataclass(frozen=True)
class ReducedPresentation:
    """Presentation with truncated cycles removed.

    ``occurrences[v]`` lists ``(cycle, position)`` for every retained cycle
    position whose arrow starts at Q0-vertex ``v``.
    """

    presentation: Presentation
    retained: tuple[int, ...]
    deleted_arrows: tuple[int, ...]
    occurrences: tuple[tuple[tuple[int, int], ...], ...]
    two_dim: bool


def is_truncated(p: Presentation, c: int) -> bool:
    cyc = p.cycles[c]
    return len(cyc) == 1 and p.mult[c] == 1


def reduce(p: Presentation) -> ReducedPresentation:
    retained = tuple(c for c in range(len(p.cycles)) if not is_truncated(p, c))
    deleted = tuple(p.cycles[c][0] for c in range(len(p.cycles)) if is_truncated(p, c))
    occ: list[list[tuple[int, int]]] = [[] for _ in p.q0]
    for c in retained:
        for k, a in enumerate(p.cycles[c]):
            occ[p.source[a]].append((c, k))
    two_dim = len(p.q0) == 1 and not retained
    return ReducedPresentation(p, retained, deleted, tuple(map(tuple, occ)), two_dim)


class Caterpillar(NamedTuple):
    length: int
    variant: str  # "one_cycle" or "two_cycles"
    mults: tuple[int, ...]


def detect_caterpillar(p: Presentation) -> Caterpillar | None:
    """Match Q against the doubled directed n-cycle, n > 1."""
    n = len(p.q0)
    if n < 2:
        return None
    nxt = {}
    for a in range(p.n_arrows):
        s, t = p.source[a], p.target[a]
        if nxt.setdefault(s, t) != t:
            return None
    if len(nxt) != n or sorted(nxt.values()) != list(range(n)):
        return None
    v, steps = 0, 0
    while True:
        v = nxt[v]
        steps += 1
        if v == 0:
            break
    if steps != n:
        return None
    if len(p.cycles) == 1:
        return Caterpillar(n, "one_cycle", (p.mult[0],))
    return Caterpillar(n, "two_cycles", tuple(p.mult))


class SpecialFlags(NamedTuple):
    local: bool
    exceptional_presentation: bool
    excluded_symmetry_case: bool


def _is_loop_graph(g: RibbonGraph) -> bool:
    return g.n_edges == 1 and g.n_vertices == 1


def classify_special(g: RibbonGraph) -> SpecialFlags:
    local = g.n_edges == 1
    mult1_loop = _is_loop_graph(g) and g.mults == (1,)
    edge22 = g.n_edges == 1 and g.n_vertices == 2 and g.mults == (2, 2)
    available = sum(1 for f in faces(g) if f.perimeter == 1)
    excluded = mult1_loop and len(g.deformed) == available == 2
    return SpecialFlags(local, mult1_loop or edge22, excluded)


def is_a_infinity(g: RibbonGraph) -> bool:
    """One Q0-vertex, two loops, one pi-cycle of multiplicity 1."""
    return _is_loop_graph(g) and g.mults == (1,)

