"""Extremal 3-graphs with bounded codegree and matching number.

The construction puts a maximum partial triple system on a core ``V0`` of
``nu`` vertices and hangs off each core vertex ``v_i`` a nearly
``delta2``-regular graph ``G_i`` on the remaining vertices ``V1``; the
graphs ``G_i`` are pairwise edge-disjoint so pairs inside ``V1`` keep
codegree at most ``delta2``. When ``(n - nu) * delta2`` is odd, each
``G_i`` misses one unit of degree at a chosen vertex and a few triples
meeting ``V0`` in two points use up the slack.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import comb

from .bounds import compute_f, compute_g
from .core import (
    DEFAULT_NODE_BUDGET,
    Certificate,
    Hypergraph3,
    Multigraph,
    Triple,
    graph_matching_number,
    leave,
    matching_number,
    max_codegree,
)
from .errors import ConstructionError, ParameterError
from .graph_matching import maximum_matching
from .mpts import construct_mpts, relabel


def threshold(nu: int, delta2: int) -> int:
    """Smallest n for which :func:`construct_extremal` runs without ``force``."""
    return nu + max(2 * nu * delta2 + 4, 4 * delta2 + 8, 12)


# ---------------------------------------------------------------------------
# factor extraction


@dataclass(frozen=True)
class FactorSpec:
    """Degree targets on ``V1 = {0..m-1}`` for each of the factors, in order."""

    m: int
    targets: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for i, t in enumerate(self.targets):
            if len(t) != self.m:
                raise ParameterError(f"factor {i} has {len(t)} targets, expected {self.m}")
            if any(d < 0 or d > self.m - 1 for d in t):
                raise ParameterError(f"factor {i} has an unrealizable degree target")
            if sum(t) % 2:
                raise ParameterError(f"factor {i} has an odd degree sum")

    @property
    def count(self) -> int:
        return len(self.targets)

    @property
    def top_degree(self) -> int:
        return max((max(t) for t in self.targets if t), default=0)

    def deficient(self, i: int) -> list[int]:
        top = self.top_degree
        return [v for v, d in enumerate(self.targets[i]) if d < top]

    @classmethod
    def _with_deficits(cls, m: int, delta2: int, deficits: list[list[int]]) -> FactorSpec:
        rows = []
        for ys in deficits:
            row = [delta2] * m
            for y in ys:
                row[y] -= 1
            rows.append(tuple(row))
        return cls(m, tuple(rows))

    @classmethod
    def regular(cls, m: int, nu: int, delta2: int) -> FactorSpec:
        return cls._with_deficits(m, delta2, [[] for _ in range(nu)])

    @classmethod
    def paired(cls, m: int, nu: int, delta2: int) -> FactorSpec:
        """One deficient vertex per factor; factors 2i and 2i+1 share vertex i."""
        return cls._with_deficits(m, delta2, [[i // 2] for i in range(nu)])

    @classmethod
    def star(cls, m: int, nu: int, delta2: int) -> FactorSpec:
        """Paired deficits for the first nu-4 factors; the last factor is short at
        vertices 0, 1, 2, which are also the deficits of factors nu-2, nu-3, nu-4."""
        if nu < 4 or nu % 2:
            raise ParameterError("the star variant needs an even nu >= 4")
        deficits = [[i // 2] for i in range(nu - 4)]
        deficits += [[2], [1], [0], [0, 1, 2]]
        return cls._with_deficits(m, delta2, deficits)


def _round_robin(m: int) -> list[list[tuple[int, int]]]:
    """Circle-method 1-factorization of K_m, m even."""
    k = m - 1
    rounds = []
    for r in range(k):
        pairs = [(r, k)]
        for j in range(1, m // 2):
            a, b = (r + j) % k, (r - j) % k
            pairs.append((min(a, b), max(a, b)))
        rounds.append(sorted((min(p), max(p)) for p in pairs))
    return rounds


def _f_factor(m: int, edges: list[tuple[int, int]], target: tuple[int, ...]) -> list[tuple[int, int]] | None:
    """Degree-exact subgraph via the edge-splitting gadget and a perfect matching.

    Vertex v gets target[v] copies; edge e = uv becomes a_e - b_e with a_e
    joined to every copy of u and b_e to every copy of v. A perfect matching
    either pairs a_e with b_e (edge unused) or sends both to copies (edge used).
    """
    offsets = list(itertools.accumulate(target, initial=0))
    base = offsets[-1]
    gadget: list[tuple[int, int]] = []
    for i, (u, v) in enumerate(edges):
        a, b = base + 2 * i, base + 2 * i + 1
        gadget.append((a, b))
        gadget.extend((a, c) for c in range(offsets[u], offsets[u + 1]))
        gadget.extend((b, c) for c in range(offsets[v], offsets[v + 1]))
    size = base + 2 * len(edges)
    matching = maximum_matching(size, gadget)
    if 2 * len(matching) != size:
        return None
    mate = {}
    for a, b in matching:
        mate[a] = b
        mate[b] = a
    return [e for i, e in enumerate(edges) if mate[base + 2 * i] != base + 2 * i + 1]


def extract_factors(
    spec: FactorSpec, seed: int = 0, *, enforce_threshold: bool = True
) -> list[Multigraph]:
    """Pairwise edge-disjoint simple graphs on V1 realizing each degree map exactly."""
    m, nu, delta2 = spec.m, spec.count, spec.top_degree
    need = max(2 * nu * delta2 + 4, 4 * delta2 + 8, 12)
    if enforce_threshold and m < need:
        raise ParameterError(f"m={m} is below the factor-extraction threshold {need}")

    regular = all(set(t) <= {delta2} for t in spec.targets)
    if regular and m % 2 == 0 and nu * delta2 <= m - 1:
        rounds = _round_robin(m)
        factors = [
            [e for r in rounds[i * delta2 : (i + 1) * delta2] for e in r] for i in range(nu)
        ]
    else:
        rng = random.Random(seed)
        pool = set(itertools.combinations(range(m), 2))
        factors = []
        for i, target in enumerate(spec.targets):
            order = list(range(m))
            rng.shuffle(order)
            rank = {v: j for j, v in enumerate(order)}
            edges = sorted(pool, key=lambda e: (rank[e[0]] + rank[e[1]], e))
            chosen = _f_factor(m, edges, target)
            if chosen is None:
                raise ConstructionError(f"no factor {i} with the requested degrees in the remaining graph")
            pool.difference_update(chosen)
            factors.append(sorted(chosen))

    graphs = [Multigraph(m, tuple(f)) for f in factors]
    used: set[tuple[int, int]] = set()
    for i, g in enumerate(graphs):
        if not g.is_simple() or g.degrees != spec.targets[i]:
            raise ConstructionError(f"factor {i} misses its degree targets")
        if used & set(g.edges):
            raise ConstructionError(f"factor {i} reuses an edge")
        used.update(g.edges)
    return graphs


# ---------------------------------------------------------------------------
# partition bookkeeping


@dataclass(frozen=True)
class ExtremalPartition:
    v0: tuple[int, ...]
    v1: tuple[int, ...]
    e1: tuple[Triple, ...]
    e2: tuple[Triple, ...]
    e3: tuple[Triple, ...]
    overflow: tuple[Triple, ...] = ()
    delta2: int = 0
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def eps1(self) -> int:
        return len(self.e1)

    @property
    def eps2(self) -> int:
        return len(self.e2)

    @property
    def eps3(self) -> int:
        return len(self.e3)

    @property
    def valid(self) -> bool:
        return not self.overflow

    @property
    def ineq2_slack(self) -> int:
        """C(nu,2)*delta2 - (3*eps3 + eps2)."""
        return comb(len(self.v0), 2) * self.delta2 - (3 * self.eps3 + self.eps2)

    @property
    def ineq3_slack(self) -> int:
        """nu*(n-nu)*delta2 - 2*(eps1 + eps2)."""
        return len(self.v0) * len(self.v1) * self.delta2 - 2 * (self.eps1 + self.eps2)

    @property
    def inequalities_hold(self) -> bool:
        return self.ineq2_slack >= 0 and self.ineq3_slack >= 0


def partition_diagnostics(h: Hypergraph3, v0, delta2: int | None = None) -> ExtremalPartition:
    """Split the edges of ``h`` by how many vertices they share with ``v0``.

    Edges missing ``v0`` entirely go to ``overflow`` and mark the partition
    invalid. ``diagnostics`` carries the core pair graph L (pairs e & V0 of
    class-2 edges), its degrees d_i, the odd/even counts p and q, and the
    per-core-vertex link sizes e(L_i) on V1.
    """
    core = tuple(sorted(set(v0)))
    if any(not 0 <= v < h.n for v in core):
        raise ParameterError("core vertices out of range")
    inside = set(core)
    rest = tuple(v for v in range(h.n) if v not in inside)
    classes: dict[int, list[Triple]] = {0: [], 1: [], 2: [], 3: []}
    for t in h.triples:
        classes[sum(v in inside for v in t)].append(t)
    cap = delta2 if delta2 is not None else (max_codegree(h) if h.n >= 2 else 0)

    pair_graph = [tuple(v for v in t if v in inside) for t in classes[2]]
    d = {v: 0 for v in core}
    for a, b in pair_graph:
        d[a] += 1
        d[b] += 1
    link_sizes = {v: 0 for v in core}
    for t in classes[1]:
        link_sizes[next(v for v in t if v in inside)] += 1
    diagnostics = {
        "L": sorted(pair_graph),
        "d": d,
        "p": sum(1 for x in d.values() if x % 2),
        "q": sum(1 for x in d.values() if x % 2 == 0),
        "link_sizes": link_sizes,
    }
    return ExtremalPartition(
        v0=core,
        v1=rest,
        e1=tuple(classes[1]),
        e2=tuple(classes[2]),
        e3=tuple(classes[3]),
        overflow=tuple(classes[0]),
        delta2=cap,
        diagnostics=diagnostics,
    )


# ---------------------------------------------------------------------------
# construction


def _star_layout(g: Multigraph) -> tuple[int, list[int], list[tuple[int, int]]] | None:
    """If g is K_{1,3} plus a perfect matching of the rest, return its parts."""
    centers = [v for v in range(g.n) if g.degree(v) == 3]
    if len(centers) != 1 or not g.is_simple():
        return None
    c = centers[0]
    arms = sorted(v for p in g.edges if c in p for v in p if v != c)
    others = [p for p in g.edges if c not in p]
    covered = [v for p in others for v in p]
    if len(set(covered)) != len(covered) or set(covered) & set(arms + [c]):
        return None
    if len(covered) + 4 != g.n:
        return None
    return c, arms, others


def construct_extremal(
    n: int, nu: int, delta2: int, seed: int = 0, *, force: bool = False
) -> tuple[Hypergraph3, ExtremalPartition]:
    """Build a 3-graph on n vertices with codegree <= delta2, matching number nu
    and exactly f(n, nu, delta2) edges. Core vertices are 0..nu-1.

    ``force`` skips the threshold check; the output is still verified.
    """
    if nu < 1 or delta2 < 1:
        raise ParameterError("nu and delta2 must be positive")
    n0 = threshold(nu, delta2)
    if n < n0 and not force:
        raise ParameterError(f"n={n} is below the construction threshold n0={n0}")
    if n < nu:
        raise ParameterError(f"n={n} is smaller than nu={nu}")
    m = n - nu
    ell = nu // 2

    if (m * delta2) % 2 == 0:
        e3 = construct_mpts(nu, delta2, 0, seed).system
        spec = FactorSpec.regular(m, nu, delta2)
        variant = "regular"
    else:
        s = ell
        if nu % 2 == 0 and compute_g(nu, delta2, ell) != compute_g(nu, delta2, 0):
            s = 0
        e3 = construct_mpts(nu, delta2, s, seed).system
        lv = leave(e3)
        if graph_matching_number(lv) >= ell:
            variant = "paired"
            matched = maximum_matching(nu, lv.simple_edges())[:ell]
            src = [v for p in matched for v in p]
            spec = FactorSpec.paired(m, nu, delta2)
        else:
            layout = _star_layout(lv)
            if layout is None or lv.size != nu // 2 + 1:
                raise ConstructionError("core leave is neither matchable nor a star plus a matching")
            c, arms, others = layout
            variant = "star"
            # arms land on v_{nu-3}, v_{nu-2}, v_{nu-1} (0-based nu-4..nu-2), centre on nu-1
            src = [v for p in others for v in p] + arms + [c]
            spec = FactorSpec.star(m, nu, delta2)
        perm = _mapping_perm_full(nu, src)
        e3 = relabel(e3, perm)

    factors = extract_factors(spec, seed, enforce_threshold=not force)
    e1 = [(i, nu + a, nu + b) for i, g in enumerate(factors) for a, b in g.edges]
    e2: list[Triple] = []
    if variant == "paired":
        e2 = [(2 * i, 2 * i + 1, nu + i) for i in range(ell)]
    elif variant == "star":
        e2 = [(2 * i, 2 * i + 1, nu + i) for i in range(ell - 2)]
        e2 += [(nu - 1 - t, nu - 1, nu + t - 1) for t in (1, 2, 3)]

    h = Hypergraph3(n, tuple(e1 + e2) + e3.triples)
    target = compute_f(n, nu, delta2)
    if h.edge_count != target:
        raise ConstructionError(f"built {h.edge_count} edges, f = {target}")
    if max_codegree(h) > delta2:
        raise ConstructionError(f"codegree {max_codegree(h)} exceeds {delta2}")
    part = partition_diagnostics(h, range(nu), delta2)
    part.diagnostics["variant"] = variant
    return h, part


def _mapping_perm_full(nu: int, src: list[int]) -> list[int]:
    """Send src[j] to j and the remaining points to the labels after them."""
    perm = [-1] * nu
    for j, v in enumerate(src):
        perm[v] = j
    nxt = len(src)
    for v in range(nu):
        if perm[v] == -1:
            perm[v] = nxt
            nxt += 1
    return perm


def verify_extremal(
    h: Hypergraph3, nu: int, delta2: int, budget: int = DEFAULT_NODE_BUDGET
) -> Certificate:
    bound = compute_f(h.n, nu, delta2)
    cd = max_codegree(h) if h.n >= 2 else 0
    mn = matching_number(h, budget)
    notes = []
    if h.edge_count != bound:
        notes.append(f"edge count {h.edge_count} differs from f={bound}")
    if cd > delta2:
        notes.append(f"codegree {cd} exceeds {delta2}")
    if mn > nu:
        notes.append(f"matching number {mn} exceeds {nu}")
    return Certificate(h.edge_count, bound, cd, delta2, mn, nu, "; ".join(notes))
