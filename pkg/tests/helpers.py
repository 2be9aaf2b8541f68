"""Fixtures and hypothesis strategies shared by the test modules."""

from fractions import Fraction
from pathlib import Path

from hypothesis import assume
from hypothesis import strategies as st

from brauergraph.corpus import is_connected_rotation, ribbon_from_rotation, rotation_cycles
from brauergraph.ribbon import parse_bg

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def sample(name: str):
    return parse_bg((SAMPLES / f"{name}.bg").read_text())


def bg(*lines: str):
    return parse_bg("\n".join(lines) + "\n")


def single_edge(k: int, l: int):
    return bg(f"vertex u mult {k}: a", f"vertex w mult {l}: b", "edge x: a b")


def loop(m: int = 1, marks: str = ""):
    lines = [f"vertex v mult {m}: a b", "edge x: a b"]
    lines += [f"deformed {h}" for h in marks.split()]
    return bg(*lines)


# the self-folded triangle in the layout a1, b1, b2 | a2 with loop b
SFT_LINES = ("vertex v1 mult 1: a1 b1 b2", "vertex v2 mult 1: a2", "edge a: a1 a2", "edge b: b1 b2")


def self_folded_triangle(deformed: bool = False):
    lines = list(SFT_LINES)
    if deformed:
        lines = ["field 2"] + lines + ["deformed b1"]
    return bg(*lines)


def polygon(n: int, m: int = 1):
    """Cycle graph with n vertices of valency 2."""
    lines = [f"vertex v{i} mult {m}: in{i} out{i}" for i in range(n)]
    lines += [f"edge e{i}: out{i} in{(i + 1) % n}" for i in range(n)]
    return bg(*lines)


@st.composite
def ribbon_graphs(draw, max_edges=5, max_mult=3, deform=False, field=None, min_edges=1):
    n_edges = draw(st.integers(min_edges, max_edges))
    sigma = draw(st.permutations(range(2 * n_edges)))
    assume(is_connected_rotation(sigma))
    cycles = rotation_cycles(sigma)
    mults = draw(st.lists(st.integers(1, max_mult), min_size=len(cycles), max_size=len(cycles)))
    marks = {}
    if deform:
        for h in range(2 * n_edges):
            if sigma[h] == h ^ 1 and draw(st.booleans()):
                marks[h] = Fraction(1)
    return ribbon_from_rotation(sigma, mults, marks, field)
