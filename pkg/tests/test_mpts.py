from __future__ import annotations

import itertools
import random
from math import comb, gcd

import pytest

from codegree_bound.bounds import compute_g, cycle_lengths
from codegree_bound.core import Multigraph, TripleSystem, graph_matching_number, leave, max_codegree
from codegree_bound.designs import construct_sts, construct_ts
from codegree_bound.errors import ConstructionError, ParameterError
from codegree_bound.mpts import (
    construct_mpts,
    cycle_length,
    delete_point,
    relabel,
    substitute_and_double,
    union_systems,
    verify_mpts,
)


def is_perfect_matching(g: Multigraph, size: int) -> bool:
    return g.is_simple() and g.size == size and graph_matching_number(g) == size


def test_case_i_leave_is_perfect_matching():
    r = construct_mpts(8, 1, 4)
    assert r.system.edge_count == 8 and r.case_tag == "I"
    assert is_perfect_matching(r.leave_graph, 4)


def test_case_iii_leave_shape():
    r = construct_mpts(10, 1, 5)
    g = r.leave_graph
    assert r.system.edge_count == 12 and r.case_tag == "III"
    deg3 = [v for v in range(10) if g.degree(v) == 3]
    assert len(deg3) == 4
    assert all(g.multiplicity(u, v) == 1 for u, v in itertools.combinations(deg3, 2))
    rest = [p for p in g.edges if not set(p) <= set(deg3)]
    assert len(rest) == 3 and len({v for p in rest for v in p}) == 6


def test_case_vi_doubled_edge():
    r = construct_mpts(8, 2, 1)
    assert r.system.edge_count == 18 and r.case_tag == "VI"
    assert r.leave_graph.size == 2 and len(r.leave_graph.counts) == 1


def test_small_points_give_empty_system():
    r = construct_mpts(2, 9, 1)
    assert r.system.edge_count == 0 and r.case_tag == "SMALL"
    assert construct_mpts(1, 3, 0).system.edge_count == 0


def test_case_2_union_keeps_sub_leave():
    r = construct_mpts(8, 9, 4)
    assert r.case_tag == "CASE2"
    assert r.system.edge_count == 56 + compute_g(8, 3, 4)
    assert r.leave_graph == construct_mpts(8, 3, 4).leave_graph


@pytest.mark.parametrize("nu, lam, s", [(9, 4, 2), (11, 5, 5), (14, 13, 7), (7, 3, 3)])
def test_case_2_spot_checks(nu, lam, s):
    r = construct_mpts(nu, lam, s)
    d = gcd(nu - 2, 6)
    t = (lam - 1) % d
    assert r.system.edge_count == compute_g(nu, lam, s)
    assert r.leave_graph == construct_mpts(nu, t + 1, s).leave_graph


@pytest.mark.parametrize("nu", range(3, 17))
def test_case_1_range(nu):
    for lam in range(1, gcd(nu - 2, 6) + 1):
        for s in range(nu // 2 + 1):
            r = construct_mpts(nu, lam, s)
            g = r.leave_graph
            assert r.system.edge_count == compute_g(nu, lam, s)
            assert 3 * r.system.edge_count + g.size == lam * comb(nu, 2)
            assert graph_matching_number(g) >= s
            assert max(r.system.pair_counts.values(), default=0) <= lam


@pytest.mark.parametrize("nu, lam, bad", [(7, 1, [3, 3]), (9, 1, [4, 5]), (6, 2, [3, 3])])
def test_exceptional_leaves_never_emitted(nu, lam, bad):
    for s in range(nu // 2 + 1):
        g = construct_mpts(nu, lam, s).leave_graph
        if g.is_simple() and all(d in (0, 2) for d in g.degrees):
            assert cycle_lengths(g) != bad


def test_cycle_length_choice():
    assert cycle_length(9, 1, 4) == 9
    assert cycle_length(7, 1, 0) == 0
    assert cycle_length(7, 1, 1) == 3


def test_verify_mpts_rejects_short_system():
    ts = construct_sts(7)
    with pytest.raises(ConstructionError):
        verify_mpts(TripleSystem(7, 1, ts.triples[1:]), 0)


def test_seeds_are_reproducible():
    a = construct_mpts(13, 1, 6, seed=5).system.to_json()
    b = construct_mpts(13, 1, 6, seed=5).system.to_json()
    assert a == b


# --- surgery ------------------------------------------------------------


def test_delete_point_examples():
    ts = delete_point(construct_sts(9), 0)
    assert ts.nu == 8 and ts.edge_count == 8
    assert is_perfect_matching(leave(ts), 4)
    assert delete_point(construct_sts(7), 3).edge_count == 4
    assert delete_point(TripleSystem(5, 1), 0) == TripleSystem(4, 1)


def test_union_examples():
    sts = construct_sts(7)
    doubled = union_systems(sts, sts)
    assert doubled.lam == 2 and leave(doubled).size == 0
    assert union_systems(sts, TripleSystem(7, 1), lam=1) == sts


def test_union_two_case_iii_systems():
    half = construct_mpts(10, 1, 5).system
    g = leave(half)
    x, y, z, w = [v for v in range(10) if g.degree(v) == 3]
    both = union_systems(half, half, extra=((x, y, z), (x, y, w)))
    lv = leave(both)
    assert both.edge_count == compute_g(10, 2, 5)
    assert lv.multiplicity(z, w) == 2 and lv.multiplicity(x, y) == 0
    assert all(lv.multiplicity(a, b) == 1 for a in (x, y) for b in (z, w))
    assert graph_matching_number(lv) == 5


def test_union_rejects_overfull():
    sts = construct_sts(7)
    with pytest.raises(ParameterError):
        union_systems(sts, sts, lam=1)


def test_substitute_and_double():
    sts = construct_sts(9)
    a, b, c = sts.triples[0]
    rest = [v for v in range(9) if v not in (a, b, c)]
    perm = [0] * 9
    for i, v in enumerate([a, b, c, *rest]):
        perm[v] = i
    sts = relabel(sts, perm)
    ts = substitute_and_double(sts, 0, 1, 2)
    assert ts.nu == 8 and ts.lam == 2 and ts.edge_count == 18
    assert leave(ts) == Multigraph(8, ((0, 1), (0, 1)))


@pytest.mark.parametrize("nu", [7, 13])
def test_substitute_and_double_needs_residue(nu):
    sts = construct_sts(nu)
    x, y, z = sts.triples[0]
    with pytest.raises(ParameterError):
        substitute_and_double(sts, x, y, z)


def test_relabel_examples():
    ts = construct_mpts(9, 1, 3).system
    assert relabel(ts, list(range(9))) == ts
    rng = random.Random(1)
    for _ in range(10):
        perm = list(range(9))
        rng.shuffle(perm)
        moved = relabel(ts, perm)
        assert moved.edge_count == ts.edge_count
        assert max_codegree(moved.as_hypergraph()) == max_codegree(ts.as_hypergraph())
        assert leave(moved) == leave(ts).relabel(perm)


def test_relabel_rejects_non_bijection():
    with pytest.raises(ParameterError):
        relabel(construct_ts(7, 1), [0] * 7)
