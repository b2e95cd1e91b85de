"""Maximum partial triple systems whose leave keeps s independent edges.

``construct_mpts(nu, lam, s)`` returns a PTS(nu, lam) with exactly
``compute_g(nu, lam, s)`` triples and a leave holding a matching of size s.
Small indices ``lam <= gcd(nu-2, 6)`` are built case by case (tags I..XI);
larger ones stack a full triple system on top of a small-index solution
(tag CASE2). Every result passes through :func:`verify_mpts`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, gcd

from .bounds import compute_g, leave_profile
from .core import Multigraph, Triple, TripleSystem, graph_matching_number, leave
from .designs import complete_to_leave, construct_pbd35, construct_sts, construct_ts
from .errors import ConstructionError, ParameterError


@dataclass(frozen=True)
class MptsResult:
    system: TripleSystem
    leave_graph: Multigraph
    case_tag: str

    def certificate(self, s: int) -> dict:
        return {
            "case_tag": self.case_tag,
            "nu": self.system.nu,
            "lambda": self.system.lam,
            "s": s,
            "e": self.system.edge_count,
            "g": compute_g(self.system.nu, self.system.lam, s),
            "leave": [list(p) for p in self.leave_graph.edges],
        }


# ---------------------------------------------------------------------------
# system surgery


def relabel(ts: TripleSystem, perm: list[int]) -> TripleSystem:
    """Map point ``i`` to ``perm[i]``."""
    if sorted(perm) != list(range(ts.nu)):
        raise ParameterError("relabeling must be a bijection on 0..nu-1")
    return TripleSystem(ts.nu, ts.lam, tuple(tuple(perm[v] for v in t) for t in ts.triples))


def delete_point(ts: TripleSystem, x: int) -> TripleSystem:
    """Drop every triple through ``x`` and close the gap in the labels."""
    if not 0 <= x < ts.nu:
        raise ParameterError(f"point {x} out of range for nu={ts.nu}")

    def down(v: int) -> int:
        return v - 1 if v > x else v

    kept = tuple(tuple(down(v) for v in t) for t in ts.triples if x not in t)
    return TripleSystem(ts.nu - 1, ts.lam, kept)


def union_systems(
    a: TripleSystem,
    b: TripleSystem,
    extra: tuple[Triple, ...] = (),
    lam: int | None = None,
) -> TripleSystem:
    """Multiset union of two systems plus extra triples, with cap ``lam``.

    ``lam`` defaults to ``a.lam + b.lam``; the result constructor rejects any
    pair covered more often than that.
    """
    if a.nu != b.nu:
        raise ParameterError(f"point counts differ: {a.nu} vs {b.nu}")
    cap = a.lam + b.lam if lam is None else lam
    return TripleSystem(a.nu, cap, a.triples + b.triples + tuple(extra))


def _mapping_perm(nu: int, src: list[int], dst: list[int]) -> list[int]:
    """Permutation sending src[i] to dst[i]; other points fill the gaps in order."""
    perm = [-1] * nu
    for a, b in zip(src, dst):
        perm[a] = b
    free = iter(sorted(set(range(nu)) - set(dst)))
    for v in range(nu):
        if perm[v] == -1:
            perm[v] = next(free)
    return perm


def _doubled_pair(g: Multigraph) -> tuple[int, int]:
    pairs = [p for p, m in g.counts.items() if m == 2]
    if len(pairs) != 1:
        raise ConstructionError("expected a leave with exactly one doubled pair")
    return pairs[0]


def substitute_and_double(sts: TripleSystem, x: int, y: int, z: int, seed: int = 0) -> TripleSystem:
    """PTS(nu, 2) with leave a doubled edge on {x, y}, from an STS(nu + 1).

    In every block through z other than {x, y, z}, z is replaced by y; blocks
    missing y are doubled; z is deleted. That alone leaves the pairs opposite
    y and z in their old blocks covered once (an even 2-regular residue), so a
    seeded hill-climb warm-started from the result finishes the job.
    Labels above z shift down by one.
    """
    nu = sts.nu - 1
    if sts.lam != 1 or 3 * sts.edge_count != comb(sts.nu, 2):
        raise ParameterError("input must be a Steiner triple system")
    if nu % 6 != 2:
        raise ParameterError(f"needs nu ≡ 2 (mod 6), got nu={nu}")
    block = tuple(sorted((x, y, z)))
    if len({x, y, z}) != 3 or block not in sts.triples:
        raise ParameterError(f"{{{x},{y},{z}}} is not a block")
    partial = []
    for t in sts.triples:
        if t == block:
            continue
        if z in t:
            t = tuple(sorted(y if v == z else v for v in t))
        partial.append(t)
        if y not in t:
            partial.append(t)

    def down(v: int) -> int:
        return v - 1 if v > z else v

    relabeled = tuple(tuple(down(v) for v in t) for t in partial)
    target = Multigraph(nu, ((down(x), down(y)), (down(x), down(y))))
    return complete_to_leave(nu, 2, target, seed, initial=relabeled)


# ---------------------------------------------------------------------------
# case constructions (nu >= 3, lam <= gcd(nu - 2, 6))


def cycle_length(nu: int, lam: int, s: int) -> int:
    """Shortest cycle length >= 2s that a PTS(nu, lam) leave can have; 0 = empty."""
    k = 2 * s
    while (lam * comb(nu, 2) - k) % 3 or k in (1, 2):
        k += 1
    return k


def _cycle(nu: int, k: int, start: int = 0) -> Multigraph:
    pts = list(range(start, start + k))
    return Multigraph(nu, tuple((pts[i], pts[(i + 1) % k]) for i in range(k)))


def _cycle_case(nu: int, lam: int, s: int, seed: int) -> TripleSystem:
    k = cycle_length(nu, lam, s)
    if k == 0:
        return construct_ts(nu, lam, seed)
    if k > nu:
        raise ConstructionError(f"cycle leave C{k} does not fit on {nu} points")
    return complete_to_leave(nu, lam, _cycle(nu, k), seed)


def _case_i(nu: int) -> TripleSystem:
    return delete_point(construct_sts(nu + 1), nu)


def _case_iii(nu: int, s: int, seed: int) -> TripleSystem:
    pbd = construct_pbd35(nu + 1, seed)
    u, w, x, y, z = pbd.five_block
    full = TripleSystem(nu + 1, 1, pbd.triples + ((u, w, z), (u, x, y)))
    return delete_point(full, x if 2 * s < nu else u)


def _case_iv(nu: int, seed: int) -> TripleSystem:
    base = _case_iii(nu, nu // 2, seed)
    g = leave(base)
    x, y, z, w = [v for v in range(nu) if g.degree(v) == 3]
    return union_systems(base, base, ((x, y, z), (x, y, w)), lam=2)


@lru_cache(maxsize=None)
def _case_vi(nu: int, seed: int) -> TripleSystem:
    """PTS(nu, 2) whose leave is one doubled edge."""
    if nu % 6 == 2:
        sts = construct_sts(nu + 1)
        x, y, z = sts.triples[0]
        return substitute_and_double(sts, x, y, z, seed)
    x, y, z, w = 0, 1, 2, 3
    first = complete_to_leave(nu, 1, Multigraph(nu, ((x, y), (y, z), (z, w), (w, x))), seed)
    second = complete_to_leave(nu, 1, Multigraph(nu, ((x, y), (y, w), (w, z), (z, x))), seed)
    return union_systems(first, second, ((x, y, z), (x, y, w)), lam=2)


def _doubled_on(nu: int, p: int, q: int, seed: int) -> TripleSystem:
    ts = _case_vi(nu, seed)
    a, b = _doubled_pair(leave(ts))
    return relabel(ts, _mapping_perm(nu, [a, b], [p, q]))


def _case_vii(nu: int, seed: int) -> TripleSystem:
    ring = complete_to_leave(nu, 1, _cycle(nu, nu - 1), seed)
    x, y = nu - 1, 0
    return union_systems(ring, _doubled_on(nu, x, y, seed), lam=3)


def _case_viii(nu: int, seed: int) -> TripleSystem:
    base = _case_i(nu)
    x, y = leave(base).edges[0]
    return union_systems(base, _doubled_on(nu, x, y, seed), lam=3)


def _case_ix(nu: int, seed: int) -> TripleSystem:
    return union_systems(_case_i(nu), _case_viii(nu, seed), lam=4)


def _case_x(nu: int, s: int, seed: int) -> TripleSystem:
    base = _case_i(nu)
    (x, y), (z, w) = leave(base).edges[:2]
    if 2 * s < nu:
        four = union_systems(_doubled_on(nu, x, z, seed), _doubled_on(nu, y, z, seed), lam=4)
        return union_systems(four, base, ((x, y, z),), lam=5)
    four = union_systems(_doubled_on(nu, x, y, seed), _doubled_on(nu, z, w, seed), lam=4)
    return union_systems(four, base, lam=5)


def _case_xi(nu: int, seed: int) -> TripleSystem:
    ring = complete_to_leave(nu, 2, _cycle(nu, nu), seed)
    x, y, z, w = 0, 1, 2, 3
    four = union_systems(ring, _doubled_on(nu, x, z, seed), lam=4)
    return union_systems(four, _doubled_on(nu, y, w, seed), ((x, y, z),), lam=6)


@lru_cache(maxsize=None)
def _small_index(nu: int, lam: int, s: int, seed: int) -> tuple[TripleSystem, str]:
    r = nu % 6
    full = s == nu // 2
    if r in (1, 3):
        return _cycle_case(nu, lam, s, seed), "II"
    if r == 0:
        return (_case_i(nu), "I") if lam == 1 else (_cycle_case(nu, lam, s, seed), "II")
    if r == 4:
        if lam == 1:
            return _case_iii(nu, s, seed), "III"
        return (_case_iv(nu, seed), "IV") if full else (_cycle_case(nu, lam, s, seed), "II")
    if r == 5:
        if lam == 1:
            return _cycle_case(nu, lam, s, seed), "V"
        if lam == 2:
            return (_case_vi(nu, seed), "VI") if s <= 1 else (_cycle_case(nu, lam, s, seed), "VI")
        return (_case_vii(nu, seed), "VII") if full else (_cycle_case(nu, lam, s, seed), "II")
    # r == 2
    if lam == 1:
        return _case_i(nu), "I"
    if lam == 2:
        return (_case_vi(nu, seed), "VI") if s <= 1 else (_cycle_case(nu, lam, s, seed), "VI")
    if lam == 3:
        return _case_viii(nu, seed), "VIII"
    if lam == 4:
        return (_case_ix(nu, seed), "IX") if full else (_cycle_case(nu, lam, s, seed), "V")
    if lam == 5:
        return _case_x(nu, s, seed), "X"
    return (_case_xi(nu, seed), "XI") if full else (_cycle_case(nu, lam, s, seed), "II")


# ---------------------------------------------------------------------------
# public entry points


def verify_mpts(ts: TripleSystem, s: int) -> Multigraph:
    """Gate: size equals g, leave matching >= s, leave parity/residue as forced.

    Returns the leave; raises ConstructionError on any mismatch.
    """
    nu, lam = ts.nu, ts.lam
    expected = compute_g(nu, lam, s)
    if ts.edge_count != expected:
        raise ConstructionError(f"MPTS({nu},{lam},{s}) has {ts.edge_count} triples, g = {expected}")
    g = leave(ts)
    if graph_matching_number(g) < s:
        raise ConstructionError(f"leave of MPTS({nu},{lam},{s}) lacks {s} independent edges")
    if nu >= 3:
        prof = leave_profile(nu, lam)
        if any(d % 2 != prof.degree_parity for d in g.degrees) or g.size % 3 != prof.size_mod3:
            raise ConstructionError("leave violates the forced degree parity or size residue")
    return g


def construct_mpts(nu: int, lam: int, s: int, seed: int = 0) -> MptsResult:
    if nu < 1 or lam < 1:
        raise ParameterError("nu and lambda must be positive")
    if not 0 <= s <= nu // 2:
        raise ParameterError(f"s must lie in 0..{nu // 2}, got {s}")
    if nu <= 2:
        ts, tag = TripleSystem(nu, lam), "SMALL"
    else:
        d = gcd(nu - 2, 6)
        if lam <= d:
            ts, tag = _small_index(nu, lam, s, seed)
        else:
            t = (lam - 1) % d
            top = construct_ts(nu, lam - 1 - t, seed)
            sub, _ = _small_index(nu, t + 1, s, seed)
            ts, tag = union_systems(top, sub, lam=lam), "CASE2"
    return MptsResult(ts, verify_mpts(ts, s), tag)
