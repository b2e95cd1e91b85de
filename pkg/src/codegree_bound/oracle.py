"""Brute-force ground truth at tiny scale.

Both searches walk the triples of ``{0..n-1}`` in a fixed canonical order and
choose a multiplicity for each, so every multiset is visited once. Symmetry
is broken at the top: any nonempty answer can be relabelled to contain
{0,1,2}, and any two of its blocks to be {0,1,2} plus one representative per
intersection size. Those top-level branches are independent and may run in
worker processes; the reduction (largest optimum, then lexicographically
least witness) does not depend on scheduling.
"""

from __future__ import annotations

import itertools
import time
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .core import Hypergraph3, Triple, TripleSystem
from .errors import ParameterError

DEFAULT_BUDGET = 10**9

_REPS: tuple[Triple, ...] = ((0, 1, 2), (0, 1, 3), (0, 3, 4), (3, 4, 5))


@dataclass(frozen=True)
class SearchReport:
    optimum: int
    witness: TripleSystem | Hypergraph3 | None
    nodes: int
    elapsed: float
    exhausted: bool

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "optimum": self.optimum,
            "exhausted": self.exhausted,
            "nodes": self.nodes,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }
        if timing:
            out["elapsed"] = self.elapsed
        return out


@dataclass
class _Branch:
    best: int
    witness: tuple[Triple, ...]
    nodes: int
    exhausted: bool


def _ordered_triples(n: int, order: Sequence[int] | None) -> list[Triple]:
    triples = list(itertools.combinations(range(n), 3))
    if order is not None:
        if sorted(order) != list(range(n)):
            raise ParameterError("order must be a permutation of the vertices")
        triples.sort(key=lambda t: sorted(order[v] for v in t))
    return triples


def _top_branches(n: int, cap: int) -> list[dict[Triple, int]]:
    branches = []
    for rep in _REPS:
        if max(rep) >= n:
            continue
        forced = {(0, 1, 2): 1}
        forced[rep] = forced.get(rep, 0) + 1
        if max(forced.values()) <= cap:
            branches.append(forced)
    return branches


def _reduce(results: list[_Branch]) -> _Branch:
    best = max(r.best for r in results)
    witness = min(r.witness for r in results if r.best == best)
    return _Branch(
        best,
        witness,
        sum(r.nodes for r in results),
        all(r.exhausted for r in results),
    )


def _run_branches(worker, jobs: list, threads: int) -> list[_Branch]:
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(worker, jobs))
    return [worker(job) for job in jobs]


# ---------------------------------------------------------------------------
# maximum partial triple systems


@lru_cache(maxsize=1 << 16)
def _graph_matching(edges: frozenset[tuple[int, int]]) -> int:
    if not edges:
        return 0
    u, v = min(edges)
    without_u = frozenset(e for e in edges if u not in e)
    best = _graph_matching(without_u)
    for e in edges:
        if u in e:
            w = e[0] if e[1] == u else e[1]
            rest = frozenset(f for f in without_u if w not in f)
            best = max(best, 1 + _graph_matching(rest))
    return best


def _mpts_branch(job) -> _Branch:
    nu, lam, s, triples, forced, budget = job
    pairs = {p: i for i, p in enumerate(itertools.combinations(range(nu), 2))}
    tp = [tuple(pairs[p] for p in itertools.combinations(t, 2)) for t in triples]
    pair_list = list(pairs)
    resid = [lam] * len(pairs)
    deg = [lam * (nu - 1)] * nu
    chosen: list[Triple] = []
    state = _Branch(-1, (), 0, True)
    mins = [forced.get(t, 0) for t in triples]
    suffix_forced = list(itertools.accumulate(reversed(mins), initial=0))[::-1]

    def leave_edges() -> frozenset[tuple[int, int]]:
        return frozenset(pair_list[i] for i, r in enumerate(resid) if r)

    def leave_floor() -> int:
        odd = sum(d & 1 for d in deg)
        need = odd + 2 * max(0, 2 * s - odd)
        return max(s, (need + 1) // 2)

    def dfs(i: int, blocks: int, total: int) -> None:
        if not state.exhausted:
            return
        state.nodes += 1
        if state.nodes > budget:
            state.exhausted = False
            return
        if suffix_forced[i] == 0 and blocks > state.best:
            state.best = blocks
            state.witness = tuple(chosen)
        if i == len(triples):
            return
        if blocks + (total - leave_floor()) // 3 <= state.best:
            return
        a, b, c = triples[i]
        pa, pb, pc = tp[i]
        room = min(resid[pa], resid[pb], resid[pc])
        for k in range(room, mins[i] - 1, -1):
            for _ in range(k):
                resid[pa] -= 1
                resid[pb] -= 1
                resid[pc] -= 1
                deg[a] -= 2
                deg[b] -= 2
                deg[c] -= 2
                chosen.append(triples[i])
            if k == 0 or _graph_matching(leave_edges()) >= s:
                dfs(i + 1, blocks + k, total - 3 * k)
            for _ in range(k):
                resid[pa] += 1
                resid[pb] += 1
                resid[pc] += 1
                deg[a] += 2
                deg[b] += 2
                deg[c] += 2
                chosen.pop()
            if not state.exhausted:
                return

    dfs(0, 0, lam * len(pairs))
    return state


def oracle_mpts(
    nu: int,
    lam: int,
    s: int,
    budget: int = DEFAULT_BUDGET,
    *,
    order: Sequence[int] | None = None,
    symmetry: bool = True,
    allow_large: bool = False,
    threads: int = 1,
) -> SearchReport:
    """Exact maximum size of a PTS(nu, lam) whose leave has s independent edges.

    ``budget`` caps the nodes of each top-level branch; running out yields
    ``exhausted=False`` and an uncertified lower bound.
    """
    if nu < 1 or lam < 1 or not 0 <= s <= nu // 2:
        raise ParameterError("need nu >= 1, lambda >= 1 and 0 <= s <= nu/2")
    if not allow_large and (nu > 8 or lam > 3):
        raise ParameterError("oracle_mpts is limited to nu <= 8, lambda <= 3 (pass allow_large)")
    start = time.perf_counter()
    triples = _ordered_triples(nu, order)
    # the empty system always qualifies: its leave is lam*K_nu
    results = [_Branch(0, (), 1, True)]
    if triples:
        rest = frozenset(p for p in itertools.combinations(range(nu), 2) if lam > 1 or not set(p) <= {0, 1, 2})
        if _graph_matching(rest) >= s:
            results.append(_Branch(1, ((0, 1, 2),), 1, True))
    if symmetry:
        jobs = [(nu, lam, s, triples, forced, budget) for forced in _top_branches(nu, lam)]
    else:
        jobs = [(nu, lam, s, triples, {}, budget)]
    results += [r for r in _run_branches(_mpts_branch, jobs, threads) if r.best >= 0 or not r.exhausted]
    final = _reduce(results)
    witness = TripleSystem(nu, lam, final.witness)
    return SearchReport(final.best, witness, final.nodes, time.perf_counter() - start, final.exhausted)


# ---------------------------------------------------------------------------
# extremal 3-graphs


def _has_matching(masks: list[int], k: int) -> bool:
    if k <= 0:
        return True
    if len(masks) < k:
        return False
    first, rest = masks[0], masks[1:]
    if _has_matching([m for m in rest if not m & first], k - 1):
        return True
    return _has_matching(rest, k)


def _extremal_branch(job) -> _Branch:
    n, nu, cap, triples, forced, budget = job
    pairs = {p: i for i, p in enumerate(itertools.combinations(range(n), 2))}
    tp = [tuple(pairs[p] for p in itertools.combinations(t, 2)) for t in triples]
    masks = [(1 << a) | (1 << b) | (1 << c) for a, b, c in triples]
    resid = [cap] * len(pairs)
    chosen: list[Triple] = []
    distinct: list[int] = []
    state = _Branch(-1, (), 0, True)
    mins = [forced.get(t, 0) for t in triples]
    suffix_forced = list(itertools.accumulate(reversed(mins), initial=0))[::-1]

    def dfs(i: int, blocks: int, total: int) -> None:
        if not state.exhausted:
            return
        state.nodes += 1
        if state.nodes > budget:
            state.exhausted = False
            return
        if suffix_forced[i] == 0 and blocks > state.best:
            state.best = blocks
            state.witness = tuple(chosen)
        if i == len(triples) or blocks + total // 3 <= state.best:
            return
        pa, pb, pc = tp[i]
        room = min(resid[pa], resid[pb], resid[pc])
        if room and mins[i] <= room:
            # a new distinct triple raises the matching number iff the triples
            # avoiding it already hold nu disjoint ones
            disjoint = [m for m in distinct if not m & masks[i]]
            if _has_matching(disjoint, nu):
                room = 0
        for k in range(room, mins[i] - 1, -1):
            if k:
                distinct.append(masks[i])
                for _ in range(k):
                    resid[pa] -= 1
                    resid[pb] -= 1
                    resid[pc] -= 1
                    chosen.append(triples[i])
            dfs(i + 1, blocks + k, total - 3 * k)
            if k:
                distinct.pop()
                for _ in range(k):
                    resid[pa] += 1
                    resid[pb] += 1
                    resid[pc] += 1
                    chosen.pop()
            if not state.exhausted:
                return

    dfs(0, 0, cap * len(pairs))
    return state


def oracle_extremal(
    n: int,
    nu: int,
    delta2: int,
    budget: int = DEFAULT_BUDGET,
    *,
    order: Sequence[int] | None = None,
    symmetry: bool = True,
    allow_large: bool = False,
    threads: int = 1,
) -> SearchReport:
    """Exact maximum edge count of a 3-graph on n vertices with codegree <= delta2
    and matching number <= nu."""
    if n < 0 or nu < 0 or delta2 < 1:
        raise ParameterError("need n >= 0, nu >= 0 and delta2 >= 1")
    if not allow_large and n > 9:
        raise ParameterError("oracle_extremal is limited to n <= 9 (pass allow_large)")
    start = time.perf_counter()
    triples = _ordered_triples(n, order)
    results = [_Branch(0, (), 1, True)]
    if triples and nu >= 1:
        results.append(_Branch(1, ((0, 1, 2),), 1, True))
    if symmetry:
        jobs = [(n, nu, delta2, triples, forced, budget) for forced in _top_branches(n, delta2)]
        if nu < 2:
            # two disjoint forced blocks would already break the matching cap
            jobs = [j for j in jobs if j[4].get((3, 4, 5), 0) == 0]
    else:
        jobs = [(n, nu, delta2, triples, {}, budget)]
    if nu >= 1:
        results += [r for r in _run_branches(_extremal_branch, jobs, threads) if r.best >= 0 or not r.exhausted]
    final = _reduce(results)
    return SearchReport(
        final.best, Hypergraph3(n, final.witness), final.nodes, time.perf_counter() - start, final.exhausted
    )


# ---------------------------------------------------------------------------
# matchings by enumeration


def enumerate_matchings(h: Hypergraph3, k: int) -> int:
    """Number of k-sets of distinct, pairwise disjoint triples of ``h``."""
    distinct = sorted(set(h.triples))
    if len(distinct) > 20:
        raise ParameterError(f"{len(distinct)} distinct triples exceeds the limit of 20")
    if k < 0:
        return 0
    masks = [(1 << a) | (1 << b) | (1 << c) for a, b, c in distinct]
    count = 0
    for combo in itertools.combinations(masks, k):
        used = 0
        for m in combo:
            if used & m:
                break
            used |= m
        else:
            count += 1
    return count


def matching_number_by_enumeration(h: Hypergraph3) -> int:
    k = 0
    while enumerate_matchings(h, k + 1):
        k += 1
    return k
