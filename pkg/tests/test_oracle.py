from __future__ import annotations

import itertools
import random

import pytest

from codegree_bound.bounds import compute_g
from codegree_bound.core import Hypergraph3, matching_number, max_codegree
from codegree_bound.errors import ParameterError
from codegree_bound.extremal import construct_extremal
from codegree_bound.mpts import verify_mpts
from codegree_bound.oracle import enumerate_matchings, oracle_extremal, oracle_mpts


@pytest.mark.parametrize(
    "args, expected", [((4, 1, 2), 0), ((4, 1, 1), 1), ((6, 1, 0), 4), ((3, 2, 0), 2), ((5, 1, 0), 2)]
)
def test_mpts_examples(args, expected):
    report = oracle_mpts(*args)
    assert report.exhausted and report.optimum == expected
    assert report.witness.edge_count == expected
    verify_mpts(report.witness, args[2])


@pytest.mark.parametrize("nu, lam, s", [(6, 1, 2), (7, 1, 1), (5, 2, 2), (6, 2, 3), (4, 3, 2)])
def test_order_independence(nu, lam, s):
    base = oracle_mpts(nu, lam, s)
    rng = random.Random(nu * 100 + lam * 10 + s)
    for _ in range(3):
        perm = list(range(nu))
        rng.shuffle(perm)
        assert oracle_mpts(nu, lam, s, order=perm).optimum == base.optimum
    assert oracle_mpts(nu, lam, s, symmetry=False).optimum == base.optimum == compute_g(nu, lam, s)


def test_threads_do_not_change_result():
    one = oracle_mpts(6, 2, 1)
    many = oracle_mpts(6, 2, 1, threads=3)
    assert one.to_dict() == many.to_dict()


def test_budget_exhaustion_is_reported():
    report = oracle_mpts(7, 1, 0, budget=5)
    assert not report.exhausted and report.optimum <= 7


def test_soft_limits():
    with pytest.raises(ParameterError):
        oracle_mpts(9, 1, 0)
    with pytest.raises(ParameterError):
        oracle_extremal(10, 1, 1)


def test_extremal_fano(fano):
    report = oracle_extremal(7, 1, 1)
    assert report.exhausted and report.optimum == 7
    w = report.witness
    assert max_codegree(w) == 1 and matching_number(w) == 1


def test_extremal_small_examples():
    assert oracle_extremal(4, 1, 1).optimum == 1
    report = oracle_extremal(6, 2, 2)
    assert report.exhausted
    assert report.optimum == 10
    assert max_codegree(report.witness) <= 2 and matching_number(report.witness) <= 2


@pytest.mark.parametrize("n, nu, d2", [(8, 1, 1), (9, 1, 1), (8, 2, 1)])
def test_extremal_dominates_construction(n, nu, d2):
    h, _ = construct_extremal(n, nu, d2, force=True)
    report = oracle_extremal(n, nu, d2)
    assert report.exhausted and report.optimum >= h.edge_count


def test_extremal_dominates_hand_witnesses():
    # a star of disjoint pairs through one vertex
    star = Hypergraph3(9, [(0, 1, 2), (0, 3, 4), (0, 5, 6), (0, 7, 8)])
    assert oracle_extremal(9, 1, 1).optimum >= star.edge_count
    # the complete 3-graph on 5 points: codegree 3, matching number 1
    k5 = Hypergraph3(5, list(itertools.combinations(range(5), 3)))
    assert oracle_extremal(5, 1, 3).optimum >= k5.edge_count


def test_enumerate_examples(fano):
    assert enumerate_matchings(fano, 2) == 0
    assert enumerate_matchings(Hypergraph3(6, [(0, 1, 2), (3, 4, 5)]), 2) == 1
    assert enumerate_matchings(Hypergraph3(0), 0) == 1


def test_enumerate_limit():
    big = Hypergraph3(7, list(itertools.combinations(range(7), 3)))
    with pytest.raises(ParameterError):
        enumerate_matchings(big, 1)


def test_report_json_is_stable():
    a = oracle_mpts(5, 1, 1).to_dict()
    assert "elapsed" not in a
    assert "elapsed" in oracle_mpts(5, 1, 1).to_dict(timing=True)
    assert a == oracle_mpts(5, 1, 1).to_dict()
