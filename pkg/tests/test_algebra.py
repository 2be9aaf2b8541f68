from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from brauergraph.algebra import (
    EXHAUSTIVE_ASSOC_DIM,
    IDEM,
    SOC,
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
from brauergraph.fields import GF2, FieldSpec, Q
from brauergraph.invariants import cartan_matrix
from brauergraph.quiver import reduce, to_presentation
from helpers import bg, loop, ribbon_graphs, sample, self_folded_triangle, single_edge
from path_oracle import quotient_cartan


def table(g, f=Q):
    return build_table(reduce(to_presentation(g)), f)


# -- dimensions ----------------------------------------------------------------------


@pytest.mark.parametrize("k", range(1, 5))
@pytest.mark.parametrize("l", range(1, 5))
def test_single_edge_is_a_kl(k, l):
    # k[x, y]/(xy, x^k - y^l) has basis 1, x..x^k, y..y^(l-1)
    t = table(single_edge(k, l))
    assert t.dim == dimension_formula(t.reduced) == k + l
    one = t.field.one
    for i in range(t.dim):
        for j in range(t.dim):
            assert t.mul({i: one}, {j: one}) == t.mul({j: one}, {i: one})


@pytest.mark.parametrize(
    "g, dim",
    [(loop(1), 4), (loop(2), 8), (single_edge(1, 1), 2), (single_edge(2, 2), 4), (sample("star3"), 12),
     (self_folded_triangle(), 10), (sample("path2"), 6)],
)
def test_golden_dimensions(g, dim):
    t = table(g)
    assert t.dim == dimension_formula(t.reduced) == dim


def test_single_edge_11_is_dual_numbers():
    t = table(single_edge(1, 1))
    assert t.reduced.two_dim
    assert [b.kind for b in t.basis] == [IDEM, SOC]
    s = t.soc(0)
    assert t.product(s, s) is None


@settings(max_examples=40)
@given(ribbon_graphs(max_edges=3, max_mult=2, deform=True, field=GF2), st.sampled_from([Q, GF2]))
def test_table_matches_quotient_oracle(g, f):
    # the oracle enumerates all paths up to the longest cycle power; keep that short
    assume(max(v.mult * len(v.halfedges) for v in g.vertices) <= 8)
    t = table(g, f)
    want = quotient_cartan(t.presentation, f)
    assert cartan_matrix(t).tolist() == want
    assert t.dim == sum(map(sum, want)) == dimension_formula(t.reduced)


def test_rational_deformation_oracle():
    g = bg("vertex v1 mult 2: a1 b1 b2", "vertex v2 mult 1: a2", "edge a: a1 a2", "edge b: b1 b2",
           "deformed b1 t 3/5")
    t = table(g)
    assert cartan_matrix(t).tolist() == quotient_cartan(t.presentation, Q)
    assert any("characteristic" in n for n in t.notes)


# -- structure checks ------------------------------------------------------------------


@given(ribbon_graphs(max_edges=6, deform=True, field=GF2), st.sampled_from([Q, GF2, FieldSpec(3)]))
def test_associative_with_unit(g, f):
    t = table(g, f)
    bad, checked, first = associativity_violations(t)
    assert bad == 0, first
    assert checked == (t.dim**3 if t.dim <= EXHAUSTIVE_ASSOC_DIM else 10_000)
    assert unit_checks(t) == []


def test_sampled_associativity_above_threshold():
    t = table(sample("caterpillar_one_vertex"))
    assert t.dim > EXHAUSTIVE_ASSOC_DIM
    assert associativity_violations(t) == (0, 10_000, (-1, -1, -1))


def test_associativity_checker_catches_a_bad_table():
    t = table(loop(2))
    a, b = t.arrows()
    honest = t.product

    def broken(i, j):  # drop the single product a * b
        return None if (i, j) == (a, b) else honest(i, j)

    t.product = broken
    bad, _, first = associativity_violations(t)
    assert bad > 0 and a in first


def test_deformed_loop_square():
    t = table(loop(1, "a"), GF2)
    a, b = t.arrows()
    assert t.product(a, a) == (t.soc(0), 1)
    assert t.product(b, b) is None
    t2 = table(bg("vertex v mult 1: a b", "edge x: a b", "deformed a t -2"), Q)
    assert t2.product(a, a) == (t2.soc(0), Fraction(-2))


def test_zero_parameter_rejected():
    g = bg("vertex v mult 1: a b", "edge x: a b", "deformed a t 3")
    with pytest.raises(ValueError):
        table(g, FieldSpec(3))


# -- symmetrizing form -------------------------------------------------------------------


@given(ribbon_graphs(max_edges=6, deform=True, field=GF2), st.sampled_from([Q, GF2]))
def test_gram_nondegenerate_and_symmetric(g, f):
    t = table(g, f)
    gr = gram_form(t)
    assert gr.symmetric
    if not t.excluded_symmetry_case:
        assert gr.rank == t.dim and gr.nondegenerate and not gr.inconclusive


def test_gram_excluded_case_gf2():
    gr = gram_form(table(sample("loop_deformed")))
    assert (gr.rank, gr.dim, gr.inconclusive) == (3, 4, True)


@pytest.mark.parametrize(
    "tx, ty, rank", [(1, 1, 3), (-1, -1, 3), (Fraction(1, 2), 2, 3), (1, -1, 4), (2, 3, 4)]
)
def test_gram_excluded_case_rational(tx, ty, rank):
    # the arrow block of the Gram matrix is [[tx, 1], [1, ty]], determinant tx*ty - 1
    g = bg("vertex v mult 1: a b", "edge x: a b", f"deformed a t {tx}", f"deformed b t {ty}")
    gr = gram_form(table(g))
    assert gr.rank == rank
    assert gr.inconclusive == (rank < 4)


# -- center -------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "g, dim, labels",
    [
        (sample("star3"), 4, ["1", "s[x1]", "s[x2]", "s[x3]"]),
        (single_edge(2, 2), 4, ["1", "m[u,1]", "m[w,1]", "s[x]"]),
        (self_folded_triangle(), 4, ["1", "q[b1]", "s[a]", "s[b]"]),
        (loop(1), 4, ["1", "q[a]", "q[b]", "s[x]"]),
        (loop(2), 5, ["1", "m[v,1]", "q[a]", "q[b]", "s[x]"]),
    ],
)
def test_center_examples(g, dim, labels):
    t = table(g)
    pred = center_predicted(t)
    assert center_solve(t).dim == pred.dim == dim
    assert [lab for lab, _ in pred.elements] == labels


def test_center_quotient_multiset():
    assert center_predicted(table(single_edge(2, 2))).quotient == (2, 2)
    assert center_predicted(table(loop(3))).quotient == (3,)
    assert center_predicted(table(loop(1))).quotient is None


def test_edge_22_is_commutative():
    t = table(single_edge(2, 2))
    assert center_solve(t).dim == t.dim


@given(ribbon_graphs(max_edges=6, max_mult=3, deform=True, field=GF2), st.sampled_from([Q, GF2]))
def test_center_matches_prediction(g, f):
    t = table(g, f)
    pred = center_predicted(t)
    ell = sum(1 for x in t.presentation.free_loops())
    closed = 1 + sum(m - 1 for m in g.mults if m > 1) + ell + g.n_edges
    assert center_solve(t).dim == pred.dim == closed
    gens = generators(t)
    for label, z in pred.elements:
        assert all(commutes(t, z, b) for b in gens), label


def test_solved_center_commutes_with_everything():
    t = table(self_folded_triangle(), Q)
    one = t.field.one
    for z in center_solve(t).basis:
        for b in range(t.dim):
            assert t.mul(z, {b: one}) == t.mul({b: one}, z)
