"""Hypergraph, triple-system and multigraph types plus exact measurements.

Vertices are dense integers ``0..n-1``. Every container keeps its edges in
canonical form: each triple/pair strictly increasing, the list sorted
lexicographically with repeated edges adjacent.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from math import comb

from .errors import ParameterError, ResourceError
from .graph_matching import matching_size

Triple = tuple[int, int, int]
Pair = tuple[int, int]

DEFAULT_NODE_BUDGET = 10**8


def _canonical_triples(n: int, triples: Iterable[Iterable[int]]) -> tuple[Triple, ...]:
    out = []
    for t in triples:
        t = tuple(t)
        if len(t) != 3:
            raise ParameterError(f"triple {t} does not have 3 entries")
        a, b, c = sorted(int(v) for v in t)
        if a == b or b == c:
            raise ParameterError(f"triple {tuple(t)} has repeated vertices")
        if a < 0 or c >= n:
            raise ParameterError(f"triple {tuple(t)} out of range for n={n}")
        out.append((a, b, c))
    out.sort()
    return tuple(out)


def _canonical_pairs(n: int, pairs: Iterable[Iterable[int]]) -> tuple[Pair, ...]:
    out = []
    for p in pairs:
        p = tuple(p)
        if len(p) != 2:
            raise ParameterError(f"edge {p} does not have 2 endpoints")
        u, v = sorted(int(x) for x in p)
        if u == v:
            raise ParameterError(f"loop at vertex {u}")
        if u < 0 or v >= n:
            raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
        out.append((u, v))
    out.sort()
    return tuple(out)


def _pair_counter(triples: Iterable[Triple]) -> Counter[Pair]:
    cov: Counter[Pair] = Counter()
    for a, b, c in triples:
        cov[(a, b)] += 1
        cov[(a, c)] += 1
        cov[(b, c)] += 1
    return cov


@dataclass(frozen=True)
class Hypergraph3:
    """A 3-uniform multi-hypergraph on vertices ``0..n-1``."""

    n: int
    triples: tuple[Triple, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ParameterError("vertex count must be nonnegative")
        object.__setattr__(self, "triples", _canonical_triples(self.n, self.triples))

    @property
    def edge_count(self) -> int:
        return len(self.triples)

    def __len__(self) -> int:
        return len(self.triples)

    @cached_property
    def pair_counts(self) -> Counter[Pair]:
        return _pair_counter(self.triples)

    @cached_property
    def triple_counts(self) -> Counter[Triple]:
        return Counter(self.triples)

    def to_dict(self) -> dict:
        return {"format": "h3-v1", "n": self.n, "triples": [list(t) for t in self.triples]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Mapping) -> Hypergraph3:
        if data.get("format") != "h3-v1":
            raise ParameterError(f"expected format h3-v1, got {data.get('format')!r}")
        return cls(int(data["n"]), tuple(tuple(t) for t in data["triples"]))

    @classmethod
    def from_json(cls, text: str) -> Hypergraph3:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class TripleSystem:
    """A partial triple system PTS(nu, lam): every pair in at most ``lam`` triples."""

    nu: int
    lam: int
    triples: tuple[Triple, ...] = ()

    def __post_init__(self) -> None:
        if self.nu < 0:
            raise ParameterError("point count must be nonnegative")
        if self.lam < 1:
            raise ParameterError("lambda must be at least 1")
        object.__setattr__(self, "triples", _canonical_triples(self.nu, self.triples))
        over = [p for p, c in self.pair_counts.items() if c > self.lam]
        if over:
            raise ParameterError(
                f"pair {over[0]} covered {self.pair_counts[over[0]]} times, cap is {self.lam}"
            )

    @property
    def edge_count(self) -> int:
        return len(self.triples)

    def __len__(self) -> int:
        return len(self.triples)

    @cached_property
    def pair_counts(self) -> Counter[Pair]:
        return _pair_counter(self.triples)

    def as_hypergraph(self) -> Hypergraph3:
        return Hypergraph3(self.nu, self.triples)

    def to_dict(self) -> dict:
        return {
            "format": "pts-v1",
            "nu": self.nu,
            "lambda": self.lam,
            "triples": [list(t) for t in self.triples],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Mapping) -> TripleSystem:
        if data.get("format") != "pts-v1":
            raise ParameterError(f"expected format pts-v1, got {data.get('format')!r}")
        return cls(int(data["nu"]), int(data["lambda"]), tuple(tuple(t) for t in data["triples"]))

    @classmethod
    def from_json(cls, text: str) -> TripleSystem:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Multigraph:
    """Loopless multigraph; ``edges`` lists each pair once per unit of multiplicity."""

    n: int
    edges: tuple[Pair, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ParameterError("vertex count must be nonnegative")
        object.__setattr__(self, "edges", _canonical_pairs(self.n, self.edges))

    @classmethod
    def from_counts(cls, n: int, counts: Mapping[Pair, int]) -> Multigraph:
        edges = []
        for p, m in counts.items():
            if m < 0:
                raise ParameterError(f"negative multiplicity on {p}")
            edges.extend([p] * m)
        return cls(n, tuple(edges))

    @cached_property
    def counts(self) -> Counter[Pair]:
        return Counter(self.edges)

    @property
    def size(self) -> int:
        return len(self.edges)

    def multiplicity(self, u: int, v: int) -> int:
        return self.counts.get((min(u, v), max(u, v)), 0)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def simple_edges(self) -> list[Pair]:
        return sorted(self.counts)

    def is_simple(self) -> bool:
        return all(m == 1 for m in self.counts.values())

    def relabel(self, perm: list[int]) -> Multigraph:
        return Multigraph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))


@dataclass(frozen=True)
class Certificate:
    """Verification report for a claimed extremal hypergraph."""

    edge_count: int
    bound: int
    max_codegree: int
    codegree_cap: int
    matching_number: int
    matching_cap: int
    notes: str = ""
    passed: bool = field(init=False)

    def __post_init__(self) -> None:
        ok = (
            self.edge_count == self.bound
            and self.max_codegree <= self.codegree_cap
            and self.matching_number <= self.matching_cap
        )
        object.__setattr__(self, "passed", ok)

    def to_dict(self) -> dict:
        return {
            "e": self.edge_count,
            "f": self.bound,
            "max_codegree": self.max_codegree,
            "delta2": self.codegree_cap,
            "matching": self.matching_number,
            "nu": self.matching_cap,
            "passed": self.passed,
            "notes": self.notes,
        }


# ---------------------------------------------------------------------------
# measurements


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        raise ParameterError(f"vertex {v} out of range for n={n}")


def codegree(h: Hypergraph3, u: int, v: int) -> int:
    """Number of triples (with multiplicity) containing both ``u`` and ``v``."""
    _check_vertex(h.n, u)
    _check_vertex(h.n, v)
    if u == v:
        raise ParameterError("codegree needs two distinct vertices")
    return h.pair_counts.get((min(u, v), max(u, v)), 0)


def max_codegree(h: Hypergraph3) -> int:
    if h.n < 2:
        raise ParameterError("max_codegree needs at least two vertices")
    return max(h.pair_counts.values(), default=0)


def _greedy_cover_size(masks: list[int]) -> int:
    # size of a greedily built vertex cover; any cover bounds the matching
    remaining = masks
    size = 0
    while remaining:
        tally: Counter[int] = Counter()
        for m in remaining:
            while m:
                low = m & -m
                tally[low] += 1
                m ^= low
        best = max(tally, key=lambda b: (tally[b], -b))
        remaining = [m for m in remaining if not m & best]
        size += 1
    return size


def _greedy_packing(masks: list[int]) -> int:
    used = 0
    count = 0
    for m in masks:
        if not m & used:
            used |= m
            count += 1
    return count


def matching_number(h: Hypergraph3, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Exact size of a maximum set of pairwise disjoint triples.

    Branch and bound: branch on a triple meeting the fewest others (include
    it, or discard it), pruning with the smaller of floor(|vertices|/3) and a
    greedy vertex-cover size. Raises ResourceError past ``budget`` nodes.
    """
    masks = sorted({(1 << a) | (1 << b) | (1 << c) for a, b, c in h.triples})
    best = _greedy_packing(masks)
    nodes = 0

    def upper(ms: list[int]) -> int:
        union = 0
        for m in ms:
            union |= m
        ub = min(len(ms), union.bit_count() // 3)
        if ub <= 1:
            return ub
        return min(ub, _greedy_cover_size(ms))

    def search(ms: list[int], depth: int) -> None:
        nonlocal best, nodes
        while ms:
            nodes += 1
            if nodes > budget:
                raise ResourceError(f"matching search exceeded {budget} nodes")
            if depth + upper(ms) <= best:
                return
            pivot = min(ms, key=lambda t: sum(1 for o in ms if o & t))
            rest = [m for m in ms if not m & pivot]
            if depth + 1 > best:
                best = depth + 1
            search(rest, depth + 1)
            ms = [m for m in ms if m != pivot]

    search(masks, 0)
    return best


def leave(ts: TripleSystem) -> Multigraph:
    """Multigraph with pair {x,y} repeated lam minus (its coverage) times."""
    cov = ts.pair_counts
    counts = {
        p: ts.lam - cov.get(p, 0)
        for p in itertools.combinations(range(ts.nu), 2)
        if cov.get(p, 0) < ts.lam
    }
    g = Multigraph.from_counts(ts.nu, counts)
    assert 3 * ts.edge_count + g.size == ts.lam * comb(ts.nu, 2)
    return g


def link_graph(h: Hypergraph3, x: int) -> Multigraph:
    _check_vertex(h.n, x)
    edges = [tuple(v for v in t if v != x) for t in h.triples if x in t]
    return Multigraph(h.n, tuple(edges))


def graph_matching_number(g: Multigraph) -> int:
    """Maximum matching of the underlying simple graph."""
    return matching_size(g.n, g.simple_edges())
