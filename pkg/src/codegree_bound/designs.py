"""Base designs: Steiner and lambda-fold triple systems, PBD(v, {3,5*}, 1),
and a seeded hill-climbing completion that realizes a prescribed leave.

Every constructor re-verifies its output before returning it.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb, gcd

from .bounds import check_leave_feasible, existence
from .core import Multigraph, Triple, TripleSystem, leave
from .errors import ConstructionError, ParameterError, ResourceError

DEFAULT_MAX_RESTARTS = 200


@dataclass(frozen=True)
class PBD35:
    """Pairwise balanced design with one 5-block and all other blocks triples."""

    nu: int
    five_block: tuple[int, int, int, int, int]
    triples: tuple[Triple, ...]

    def to_dict(self) -> dict:
        return {
            "format": "pts-v1",
            "nu": self.nu,
            "lambda": 1,
            "triples": [list(t) for t in sorted(self.triples)],
            "five_block": list(self.five_block),
        }

    @classmethod
    def from_dict(cls, data) -> PBD35:
        ts = TripleSystem.from_dict(data)
        if ts.lam != 1 or "five_block" not in data:
            raise ParameterError("a PBD needs lambda 1 and a five_block field")
        five = tuple(sorted(int(v) for v in data["five_block"]))
        if len(set(five)) != 5 or five[0] < 0 or five[-1] >= ts.nu:
            raise ParameterError("five_block must list 5 distinct points")
        return cls(ts.nu, five, ts.triples)


# ---------------------------------------------------------------------------
# Steiner triple systems


def _bose(nu: int) -> list[Triple]:
    m = nu // 3  # odd order of the idempotent commutative quasigroup
    half = (m + 1) // 2

    def op(a: int, b: int) -> int:
        return (a + b) * half % m

    def pt(x: int, i: int) -> int:
        return x + i * m

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(m)]
    for x, y in itertools.combinations(range(m), 2):
        for i in range(3):
            blocks.append((pt(x, i), pt(y, i), pt(op(x, y), (i + 1) % 3)))
    return blocks


def _skolem(nu: int) -> list[Triple]:
    k = (nu - 1) // 6
    m = 2 * k  # order of the half-idempotent commutative quasigroup
    inf = nu - 1

    def op(a: int, b: int) -> int:
        s = (a + b) % m
        return s // 2 if s % 2 == 0 else (s - 1) // 2 + k

    def pt(x: int, i: int) -> int:
        return x + i * m

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(k)]
    for x in range(k):
        for i in range(3):
            blocks.append((inf, pt(x + k, i), pt(x, (i + 1) % 3)))
    for x, y in itertools.combinations(range(m), 2):
        for i in range(3):
            blocks.append((pt(x, i), pt(y, i), pt(op(x, y), (i + 1) % 3)))
    return blocks


def _require_exact_cover(ts: TripleSystem, lam: int) -> None:
    cov = ts.pair_counts
    for p in itertools.combinations(range(ts.nu), 2):
        if cov.get(p, 0) != lam:
            raise ConstructionError(f"pair {p} covered {cov.get(p, 0)} times, expected {lam}")


@lru_cache(maxsize=None)
def construct_sts(nu: int) -> TripleSystem:
    """Bose construction for nu = 3 (mod 6), Skolem for nu = 1 (mod 6)."""
    if not existence("STS", nu):
        raise ParameterError(f"STS({nu}) exists iff ν≡1,3 (mod 6)")
    blocks = _bose(nu) if nu % 6 == 3 else _skolem(nu)
    ts = TripleSystem(nu, 1, tuple(blocks))
    _require_exact_cover(ts, 1)
    return ts


# ---------------------------------------------------------------------------
# hill-climbing completion


class _Climber:
    """Mutable state for decomposing a demand multigraph into triangles."""

    def __init__(self, nu: int, demand: list[list[int]], rng: random.Random):
        self.nu = nu
        self.cap = demand
        self.rng = rng
        self.resid = [row[:] for row in demand]
        self.third: list[list[Counter[int]]] = [[Counter() for _ in range(nu)] for _ in range(nu)]
        self.blocks = 0
        self.live: list[tuple[int, int]] = []
        self.pos: dict[tuple[int, int], int] = {}
        for u, v in itertools.combinations(range(nu), 2):
            if demand[u][v] > 0:
                self._mark_live(u, v)

    def _mark_live(self, u: int, v: int) -> None:
        self.pos[(u, v)] = len(self.live)
        self.live.append((u, v))

    def _unmark_live(self, u: int, v: int) -> None:
        i = self.pos.pop((u, v))
        last = self.live.pop()
        if i < len(self.live):
            self.live[i] = last
            self.pos[last] = i

    def _touch(self, u: int, v: int, delta: int) -> None:
        if u > v:
            u, v = v, u
        before = self.resid[u][v]
        after = before + delta
        self.resid[u][v] = after
        self.resid[v][u] = after
        if before == 0 and after > 0:
            self._mark_live(u, v)
        elif before > 0 and after == 0:
            self._unmark_live(u, v)

    def add(self, a: int, b: int, c: int) -> None:
        for u, v, w in ((a, b, c), (a, c, b), (b, c, a)):
            self._touch(u, v, -1)
            self.third[u][v][w] += 1
            self.third[v][u][w] += 1
        self.blocks += 1

    def remove(self, a: int, b: int, c: int) -> None:
        for u, v, w in ((a, b, c), (a, c, b), (b, c, a)):
            self._touch(u, v, 1)
            for t in (self.third[u][v], self.third[v][u]):
                t[w] -= 1
                if not t[w]:
                    del t[w]
        self.blocks -= 1

    def evict_on(self, u: int, v: int) -> None:
        thirds = self.third[u][v]
        keys = sorted(thirds)
        w = self.rng.choices(keys, weights=[thirds[k] for k in keys])[0]
        self.remove(u, v, w)

    def step(self) -> bool:
        x, y = self.live[self.rng.randrange(len(self.live))]
        best: list[int] = []
        best_conf = 3
        for z in range(self.nu):
            if z == x or z == y or not self.cap[x][z] or not self.cap[y][z]:
                continue
            conf = (self.resid[x][z] == 0) + (self.resid[y][z] == 0)
            if conf < best_conf:
                best_conf = conf
                best = [z]
            elif conf == best_conf:
                best.append(z)
        if not best:
            return False
        z = self.rng.choice(best)
        if self.resid[x][z] == 0:
            self.evict_on(x, z)
        if self.resid[y][z] == 0:
            self.evict_on(y, z)
        self.add(x, y, z)
        return True

    def triples(self) -> list[Triple]:
        out = []
        for u, v in itertools.combinations(range(self.nu), 2):
            for w, m in self.third[u][v].items():
                if w > v:
                    out.extend([(u, v, w)] * m)
        return out


def _check_leave_target(nu: int, lam: int, target: Multigraph) -> None:
    if target.n != nu:
        raise ParameterError(f"target has {target.n} vertices, expected {nu}")
    for p, m in target.counts.items():
        if m > lam:
            raise ParameterError(f"target multiplicity {m} on {p} exceeds lambda={lam}")
    parity = lam * (nu - 1) % 2
    bad = [v for v in range(nu) if target.degree(v) % 2 != parity]
    if bad:
        raise ParameterError(
            f"leave degrees must be ≡ {parity} (mod 2); vertex {bad[0]} has degree {target.degree(bad[0])}"
        )
    if (lam * comb(nu, 2) - target.size) % 3:
        raise ParameterError("lambda*C(nu,2) - e(target) must be divisible by 3")
    if nu > 2 and target.is_simple() and all(d in (0, 2) for d in target.degrees):
        ok, reason = check_leave_feasible(nu, lam, target)
        if not ok:
            raise ParameterError(reason)


def complete_to_leave(
    nu: int,
    lam: int,
    target: Multigraph,
    seed: int = 0,
    *,
    initial: tuple[Triple, ...] = (),
    max_restarts: int = DEFAULT_MAX_RESTARTS,
) -> TripleSystem:
    """Find a PTS(nu, lam) whose leave is exactly ``target``.

    Stochastic hill-climbing: cover a random uncovered pair with a third point
    of fewest conflicts, evicting conflicting blocks. Attempt ``j`` uses seed
    ``seed + j`` and restarts after 50*nu^2 moves without a new best.
    ``initial`` warm-starts the first attempt.
    """
    _check_leave_target(nu, lam, target)
    demand = [[0] * nu for _ in range(nu)]
    for u, v in itertools.combinations(range(nu), 2):
        d = lam - target.multiplicity(u, v)
        demand[u][v] = demand[v][u] = d
    goal = (lam * comb(nu, 2) - target.size) // 3
    stall_limit = 50 * nu * nu

    for attempt in range(max_restarts):
        climber = _Climber(nu, demand, random.Random(seed + attempt))
        if attempt == 0:
            for t in initial:
                climber.add(*sorted(t))
            if any(climber.resid[u][v] < 0 for u in range(nu) for v in range(nu)):
                raise ParameterError("initial blocks exceed the demand")
        best = climber.blocks
        stalled = 0
        while climber.blocks < goal and stalled < stall_limit:
            if not climber.step():
                break
            if climber.blocks > best:
                best = climber.blocks
                stalled = 0
            else:
                stalled += 1
        if climber.blocks == goal:
            ts = TripleSystem(nu, lam, tuple(climber.triples()))
            if leave(ts) != target:
                raise ConstructionError("hill-climbing produced a wrong leave")
            return ts
    raise ResourceError(
        f"no PTS({nu},{lam}) with the requested leave found in {max_restarts} restarts"
    )


# ---------------------------------------------------------------------------
# lambda-fold systems and PBDs


@lru_cache(maxsize=None)
def _base_ts(nu: int, seed: int) -> TripleSystem:
    d = gcd(nu - 2, 6)
    if d == 1:
        return construct_sts(nu) if nu >= 3 else TripleSystem(nu, 1)
    if nu - 2 == d:
        return TripleSystem(nu, d, tuple(itertools.combinations(range(nu), 3)))
    return complete_to_leave(nu, d, Multigraph(nu), seed)


def construct_ts(nu: int, lam: int, seed: int = 0) -> TripleSystem:
    """TS(nu, lam) as a union of copies of a base system of index gcd(nu-2, 6)."""
    if nu < 1 or lam < 1 or not existence("TS", nu, lam):
        raise ParameterError(f"TS({nu},{lam}) exists iff nu ≠ 2 and lambda ≡ 0 (mod gcd(nu-2,6))")
    base = _base_ts(nu, seed)
    copies = lam // base.lam
    ts = TripleSystem(nu, lam, base.triples * copies)
    _require_exact_cover(ts, lam)
    return ts


@lru_cache(maxsize=None)
def construct_pbd35(nu: int, seed: int = 0) -> PBD35:
    """PBD(nu, {3,5*}, 1) with the 5-block pinned on points 0..4.

    nu == 5 gives the lone 5-block.
    """
    if nu < 5 or not existence("PBD35", nu):
        raise ParameterError(f"PBD({nu},{{3,5*}},1) with nu > 5 exists iff nu ≡ 5 (mod 6)")
    five = (0, 1, 2, 3, 4)
    k5 = Multigraph(nu, tuple(itertools.combinations(five, 2)))
    ts = complete_to_leave(nu, 1, k5, seed)
    pbd = PBD35(nu, five, ts.triples)
    verify_pbd35(pbd)
    return pbd


def verify_pbd35(pbd: PBD35) -> None:
    """Raise ConstructionError unless the blocks cover every pair exactly once."""
    blocks = [*pbd.triples, pbd.five_block]
    cov = Counter(p for b in blocks for p in itertools.combinations(b, 2))
    bad = [p for p in itertools.combinations(range(pbd.nu), 2) if cov.get(p, 0) != 1]
    if bad:
        raise ConstructionError(f"pair {bad[0]} covered {cov.get(bad[0], 0)} times in the PBD")
