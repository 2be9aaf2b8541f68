from dataclasses import replace

import pytest
from hypothesis import given

from brauergraph.fields import GF2
from brauergraph.quiver import (
    PresentationError,
    classify_special,
    detect_caterpillar,
    is_a_infinity,
    reduce,
    to_presentation,
    to_ribbon,
)
from brauergraph.ribbon import faces
from helpers import bg, loop, polygon, ribbon_graphs, sample, self_folded_triangle, single_edge


def test_single_edge_presentation():
    p = to_presentation(single_edge(1, 1))
    assert len(p.q0) == 1 and p.n_arrows == 2
    assert p.pi == (0, 1)
    assert all(p.is_loop(a) for a in range(2))
    assert p.cycles == ((0,), (1,)) and p.mult == (1, 1)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_loop_presentation(m):
    p = to_presentation(loop(m))
    assert len(p.q0) == 1 and p.n_arrows == 2
    assert p.cycles == ((0, 1),) and p.mult == (m,)
    assert p.free_loops() == [0, 1]


def test_self_folded_triangle_presentation():
    p = to_presentation(self_folded_triangle())
    assert len(p.q0) == 2 and p.n_arrows == 4
    assert sorted(map(len, p.cycles)) == [1, 3]
    b1 = p.arrows.index("b1")
    assert p.is_loop(b1) and p.pi[b1] != b1
    assert p.free_loops() == [b1]


def test_round_trip_examples():
    for g in [loop(2), self_folded_triangle(), sample("star3"), sample("caterpillar_one_vertex")]:
        assert to_ribbon(to_presentation(g)).key()[:-1] == g.key()[:-1]


def test_to_ribbon_rejects_bad_pi():
    p = to_presentation(sample("path2"))
    with pytest.raises(PresentationError, match="permutation"):
        to_ribbon(replace(p, pi=(1, 1, 2, 3)))
    # listed cycles that pi does not close up
    with pytest.raises(PresentationError):
        to_ribbon(replace(p, cycles=((0, 1), (2,), (3,))))


def test_to_ribbon_rejects_out_degree_three():
    p = to_presentation(sample("path2"))
    # route a third arrow out of the first Q0-vertex
    src = list(p.source)
    src[src.index(1)] = 0
    with pytest.raises(PresentationError, match="outgoing"):
        to_ribbon(replace(p, source=tuple(src)))


def test_reduce_star():
    r = reduce(to_presentation(sample("star3")))
    p = r.presentation
    assert len(r.deleted_arrows) == 3
    assert len(r.retained) == 1 and len(p.cycles[r.retained[0]]) == 3
    assert all(len(o) == 1 for o in r.occurrences)
    assert not r.two_dim


def test_reduce_single_edges():
    assert reduce(to_presentation(single_edge(1, 1))).two_dim
    r = reduce(to_presentation(single_edge(2, 2)))
    assert r.deleted_arrows == () and not r.two_dim


def test_caterpillar_fixtures():
    one = detect_caterpillar(to_presentation(sample("caterpillar_one_vertex")))
    two = detect_caterpillar(to_presentation(sample("caterpillar_two_vertices")))
    assert one == (3, "one_cycle", (2,))
    assert two == (3, "two_cycles", (4, 4))
    assert detect_caterpillar(to_presentation(sample("parallel_pair"))).length == 2


@pytest.mark.parametrize("name", ["star3", "path2", "self_folded_triangle"])
def test_not_caterpillars(name):
    assert detect_caterpillar(to_presentation(sample(name))) is None


def test_opposite_rotations_are_not_a_caterpillar():
    g = sample("caterpillar_two_vertices")
    h = bg("vertex u mult 4: a b c", "vertex w mult 4: a2 c2 b2",
           "edge x: a a2", "edge y: b b2", "edge z: c c2")
    assert detect_caterpillar(to_presentation(h)) is None
    assert detect_caterpillar(to_presentation(g)) is not None


def test_classify_special():
    assert classify_special(loop()) == (True, True, False)
    assert classify_special(single_edge(2, 2)) == (True, True, False)
    assert classify_special(sample("path2")) == (False, False, False)
    assert classify_special(single_edge(2, 3)) == (True, False, False)
    assert classify_special(loop(1, "a b")) == (True, True, True)
    assert classify_special(loop(1, "a")) == (True, True, False)
    assert is_a_infinity(loop()) and not is_a_infinity(loop(2))


@given(ribbon_graphs(max_edges=7, deform=True, field=GF2))
def test_presentation_properties(g):
    p = to_presentation(g)
    p.validate()
    assert p.n_arrows == 2 * len(p.q0) == 2 * g.n_edges
    assert len(p.cycles) == g.n_vertices
    assert len(p.free_loops()) == sum(1 for f in faces(g) if f.perimeter == 1)
    if detect_caterpillar(p) is not None:
        assert not p.deformed
    assert to_ribbon(p).key()[:-1] == g.key()[:-1]


def test_polygons():
    # two vertices of valency 2 admit one rotation only: the parallel pair
    assert detect_caterpillar(to_presentation(polygon(2))).length == 2
    for n in (3, 4, 5):
        assert detect_caterpillar(to_presentation(polygon(n))) is None
