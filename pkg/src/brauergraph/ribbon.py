"""Ribbon graphs with vertex multiplicities and deformed-loop marks.

A ribbon graph is stored as a half-edge map: ``sigma`` rotates half-edges
around their vertex, ``iota`` swaps the two halves of each edge. Half-edges
are indexed in the order they are listed in the vertex lines, so every
vertex is a contiguous index range starting at its first listed half-edge.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from brauergraph.fields import FieldSpec, parse_field


class BGError(ValueError):
    """Invalid ribbon-graph data; ``line`` is the 1-based source line if known."""

    def __init__(self, message: str, line: int | None = None, where: tuple | None = None):
        self.line = line
        self.message = message
        self.where = where
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Vertex(NamedTuple):
    name: str
    mult: int
    halfedges: tuple[str, ...]


class Edge(NamedTuple):
    name: str
    halfedges: tuple[str, str]


class Mark(NamedTuple):
    halfedge: str
    t: Fraction


class Face(NamedTuple):
    cycle: tuple[int, ...]

    @property
    def perimeter(self) -> int:
        return len(self.cycle)


@dataclass(frozen=True)
class RibbonGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    deformed: tuple[Mark, ...] = ()
    field: FieldSpec | None = None

    def __post_init__(self):
        _validate(self)

    @classmethod
    def build(cls, vertices, edges, deformed=(), field=None) -> "RibbonGraph":
        """Construct from plain tuples; marks are sorted by half-edge index."""
        vs = tuple(Vertex(str(n), int(m), tuple(map(str, hs))) for n, m, hs in vertices)
        es = tuple(Edge(str(n), tuple(map(str, hs))) for n, hs in edges)
        order = {h: i for i, h in enumerate(h for v in vs for h in v.halfedges)}
        ms = [Mark(str(h), Fraction(t)) for h, t in deformed]
        ms.sort(key=lambda mk: order.get(mk.halfedge, len(order)))
        return cls(vs, es, tuple(ms), field)

    # -- half-edge permutations -------------------------------------------

    @cached_property
    def halfedges(self) -> tuple[str, ...]:
        return tuple(h for v in self.vertices for h in v.halfedges)

    @cached_property
    def index(self) -> dict[str, int]:
        return {h: i for i, h in enumerate(self.halfedges)}

    @cached_property
    def sigma(self) -> tuple[int, ...]:
        out = []
        start = 0
        for v in self.vertices:
            k = len(v.halfedges)
            out.extend(start + (i + 1) % k for i in range(k))
            start += k
        return tuple(out)

    @cached_property
    def iota(self) -> tuple[int, ...]:
        out = [0] * len(self.halfedges)
        for e in self.edges:
            a, b = (self.index[h] for h in e.halfedges)
            out[a], out[b] = b, a
        return tuple(out)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.vertices) for _ in v.halfedges)

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        out = [0] * len(self.halfedges)
        for i, e in enumerate(self.edges):
            for h in e.halfedges:
                out[self.index[h]] = i
        return tuple(out)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def mults(self) -> tuple[int, ...]:
        return tuple(v.mult for v in self.vertices)

    def valency(self, v: int) -> int:
        return len(self.vertices[v].halfedges)

    @cached_property
    def marks(self) -> dict[int, Fraction]:
        """Deformed marks keyed by half-edge index."""
        return {self.index[m.halfedge]: m.t for m in self.deformed}

    def with_marks(self, deformed) -> "RibbonGraph":
        return RibbonGraph.build(
            [tuple(v) for v in self.vertices], [tuple(e) for e in self.edges], deformed, self.field
        )

    def key(self) -> tuple:
        """Combinatorial data up to the order of half-edges within edge lines."""
        return (
            self.halfedges,
            self.sigma,
            self.iota,
            tuple((v.name, v.mult) for v in self.vertices),
            tuple(e.name for e in self.edges),
            tuple(sorted(self.marks.items())),
            self.field,
        )

    def is_loop(self, e: int) -> bool:
        a, b = (self.index[h] for h in self.edges[e].halfedges)
        return self.vertex_of[a] == self.vertex_of[b]

    # -- serialization ----------------------------------------------------

    def to_bg(self) -> str:
        lines = []
        if self.field is not None:
            lines.append(f"field {self.field}")
        for v in self.vertices:
            lines.append(f"vertex {v.name} mult {v.mult}: {' '.join(v.halfedges)}")
        for e in self.edges:
            lines.append(f"edge {e.name}: {' '.join(e.halfedges)}")
        for m in self.deformed:
            lines.append(f"deformed {m.halfedge} t {m.t}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "field": None if self.field is None else str(self.field),
            "vertices": [
                {"name": v.name, "mult": v.mult, "halfedges": list(v.halfedges)}
                for v in self.vertices
            ],
            "edges": [{"name": e.name, "halfedges": list(e.halfedges)} for e in self.edges],
            "deformed": [{"halfedge": m.halfedge, "t": str(m.t)} for m in self.deformed],
            "sigma": list(self.sigma),
            "iota": list(self.iota),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "RibbonGraph":
        field = None if d.get("field") is None else parse_field(d["field"])
        return cls.build(
            [(v["name"], v["mult"], v["halfedges"]) for v in d["vertices"]],
            [(e["name"], e["halfedges"]) for e in d["edges"]],
            [(m["halfedge"], Fraction(m["t"])) for m in d.get("deformed", [])],
            field,
        )

    @classmethod
    def from_json(cls, text: str) -> "RibbonGraph":
        return cls.from_dict(json.loads(text))


def _validate(g: RibbonGraph):
    """Check the half-edge map; errors carry ``where = (kind, position)``."""

    def at(kind, i):
        return None, (kind, i)

    if not g.vertices:
        raise BGError("graph has no vertices")
    seen: dict[str, int] = {}
    for i, v in enumerate(g.vertices):
        if v.mult < 1:
            raise BGError(f"vertex {v.name}: multiplicity {v.mult} < 1", *at("vertex", i))
        if not v.halfedges:
            raise BGError(f"vertex {v.name} has no half-edges", *at("vertex", i))
        for h in v.halfedges:
            if h in seen:
                raise BGError(f"half-edge {h} used at two vertex positions", *at("vertex", i))
            seen[h] = i
    in_edge: dict[str, int] = {}
    for i, e in enumerate(g.edges):
        if len(e.halfedges) != 2:
            raise BGError(f"edge {e.name} must have exactly two half-edges", *at("edge", i))
        for h in e.halfedges:
            if h in in_edge:
                raise BGError(f"half-edge {h} used in two edges", *at("edge", i))
            if h not in seen:
                raise BGError(f"half-edge {h} of edge {e.name} is at no vertex", *at("edge", i))
            in_edge[h] = i
    for h, i in seen.items():
        if h not in in_edge:
            raise BGError(f"half-edge {h} is in no edge", *at("vertex", i))
    names = [v.name for v in g.vertices]
    if len(set(names)) != len(names):
        raise BGError("duplicate vertex name")
    enames = [e.name for e in g.edges]
    if len(set(enames)) != len(enames):
        raise BGError("duplicate edge name")

    # connectivity: orbit of <sigma, iota> from half-edge 0
    sigma, iota = g.sigma, g.iota
    reach = {0}
    stack = [0]
    while stack:
        h = stack.pop()
        for k in (sigma[h], iota[h]):
            if k not in reach:
                reach.add(k)
                stack.append(k)
    if len(reach) != len(sigma):
        lost = min(set(range(len(sigma))) - reach)
        raise BGError("graph is disconnected", *at("vertex", g.vertex_of[lost]))

    marked = set()
    for i, m in enumerate(g.deformed):
        if m.halfedge not in seen:
            raise BGError(f"deformed mark on unknown half-edge {m.halfedge}", *at("mark", i))
        if m.halfedge in marked:
            raise BGError(f"half-edge {m.halfedge} marked twice", *at("mark", i))
        marked.add(m.halfedge)
        h = g.index[m.halfedge]
        if sigma[h] != iota[h]:
            raise BGError(
                f"deformed mark on {m.halfedge}: its successor at the vertex is not its "
                "edge partner, so the arrow is not a deformable loop",
                *at("mark", i),
            )
        if m.t == 0:
            raise BGError(f"deformed mark on {m.halfedge}: t must be nonzero", *at("mark", i))
        if g.field is not None:
            try:
                ok = g.field(m.t) != 0
            except ZeroDivisionError:
                ok = False
            if not ok:
                raise BGError(
                    f"deformed mark on {m.halfedge}: t = {m.t} is zero in GF({g.field.p})",
                    *at("mark", i),
                )


def parse_bg(text: str) -> RibbonGraph:
    """Parse the line-oriented ``.bg`` format.

    ::

        field q | 2 | p:<prime>
        vertex <name> mult <int>: <halfedge> ...
        edge <name>: <halfedge> <halfedge>
        deformed <halfedge> [t <value>]
    """
    vertices, edges, marks = [], [], []
    lines: dict = {}
    field = None
    field_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "vertex":
            left, colon, hs = rest.partition(":")
            parts = left.split()
            if not colon or len(parts) != 3 or parts[1] != "mult":
                raise BGError("expected 'vertex <name> mult <int>: <halfedges>'", lineno)
            try:
                mult = int(parts[2])
            except ValueError:
                raise BGError(f"multiplicity {parts[2]!r} is not an integer", lineno) from None
            lines[("vertex", len(vertices))] = lineno
            vertices.append(Vertex(parts[0], mult, tuple(hs.split())))
        elif head == "edge":
            left, colon, hs = rest.partition(":")
            if not colon or len(left.split()) != 1:
                raise BGError("expected 'edge <name>: <halfedge> <halfedge>'", lineno)
            hs = tuple(hs.split())
            if len(hs) != 2:
                raise BGError(f"edge {left.strip()} needs exactly two half-edges", lineno)
            if hs[0] == hs[1]:
                raise BGError(f"edge {left.strip()} uses half-edge {hs[0]} twice", lineno)
            lines[("edge", len(edges))] = lineno
            edges.append(Edge(left.strip(), hs))
        elif head == "deformed":
            parts = rest.split()
            if len(parts) == 1:
                t = Fraction(1)
            elif len(parts) == 3 and parts[1] == "t":
                try:
                    t = Fraction(parts[2])
                except (ValueError, ZeroDivisionError):
                    raise BGError(f"bad field element {parts[2]!r}", lineno) from None
            else:
                raise BGError("expected 'deformed <halfedge> [t <value>]'", lineno)
            lines[("mark", len(marks))] = lineno
            marks.append(Mark(parts[0], t))
        elif head == "field":
            if field is not None:
                raise BGError(f"field already declared on line {field_line}", lineno)
            try:
                field = parse_field(rest)
            except ValueError as exc:
                raise BGError(str(exc), lineno) from None
            field_line = lineno
        else:
            raise BGError(f"unknown directive {head!r}", lineno)

    # build() orders marks by half-edge index; do it here so positions match
    order = {h: i for i, h in enumerate(h for v in vertices for h in v.halfedges)}
    perm = sorted(range(len(marks)), key=lambda i: order.get(marks[i].halfedge, len(order)))
    mark_lines = [lines.pop(("mark", i)) for i in range(len(marks))]
    for new, old in enumerate(perm):
        lines[("mark", new)] = mark_lines[old]
    marks = [marks[i] for i in perm]
    try:
        return RibbonGraph.build(vertices, edges, marks, field)
    except BGError as exc:
        raise BGError(exc.message, lines.get(exc.where), exc.where) from None


# -- surface combinatorics --------------------------------------------------


def faces(g: RibbonGraph) -> list[Face]:
    """Orbits of ``sigma o iota`` (cross the edge, then rotate).

    Each face starts at its smallest half-edge; faces are sorted by it.
    """
    sigma, iota = g.sigma, g.iota
    seen = [False] * len(sigma)
    out = []
    for h in range(len(sigma)):
        if seen[h]:
            continue
        cyc = []
        k = h
        while not seen[k]:
            seen[k] = True
            cyc.append(k)
            k = sigma[iota[k]]
        out.append(Face(tuple(cyc)))
    return out


def perimeters(g: RibbonGraph) -> list[int]:
    return sorted(f.perimeter for f in faces(g))


def euler_genus(g: RibbonGraph) -> tuple[int, int]:
    chi = g.n_vertices - g.n_edges + len(faces(g))
    if chi % 2 or chi > 2:
        raise BGError(f"Euler characteristic {chi} impossible for a connected orientable map")
    return chi, (2 - chi) // 2


def is_bipartite(g: RibbonGraph) -> bool:
    color = {0: 0}
    adj: dict[int, list[int]] = {i: [] for i in range(g.n_vertices)}
    for e in range(g.n_edges):
        a, b = (g.vertex_of[g.index[h]] for h in g.edges[e].halfedges)
        if a == b:
            return False
        adj[a].append(b)
        adj[b].append(a)
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in color:
                color[w] = 1 - color[v]
                stack.append(w)
            elif color[w] == color[v]:
                return False
    return True
