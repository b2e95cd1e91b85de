"""Closed-form bounds g and f, design existence predicates, leave profiles."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd

from .core import Multigraph
from .errors import ParameterError


@dataclass(frozen=True)
class Params:
    nu: int
    lam: int
    s: int
    n: int
    delta2: int

    def __post_init__(self) -> None:
        if min(self.nu, self.lam, self.s, self.n, self.delta2) < 0:
            raise ParameterError("parameters must be nonnegative")
        if self.s > self.nu // 2:
            raise ParameterError(f"s={self.s} exceeds floor(nu/2)={self.nu // 2}")
        if self.n < self.nu:
            raise ParameterError(f"n={self.n} is smaller than nu={self.nu}")


@dataclass(frozen=True)
class LeaveProfile:
    degree_parity: int
    size_mod3: int
    case1: bool


def g_branch(nu: int, lam: int, s: int) -> str:
    """Name of the piecewise branch that defines g(nu, lam, s).

    One of ``"small"`` (nu <= 2), ``"a"`` (floor(lam*C/3 - nu/6)),
    ``"b"`` (that minus one), ``"c"`` (floor(lam*C/3) - 1), ``"d"`` (otherwise).
    """
    if lam < 1:
        raise ParameterError("lambda must be at least 1")
    if s < 0 or s > nu // 2:
        raise ParameterError(f"s must lie in 0..{nu // 2}, got {s}")
    if nu <= 2:
        return "small"
    r = nu % 6
    full = 2 * s == nu
    if (
        (r == 0 and lam % 2 == 1)
        or (r == 2 and lam % 6 in (1, 3))
        or (r == 2 and lam % 6 == 5 and not full)
        or (r == 4 and lam % 2 == 1 and not full)
    ):
        return "a"
    if (r == 2 and lam % 6 == 5 and full) or (r == 4 and lam % 2 == 1 and full):
        return "b"
    if (r == 2 and lam % 6 == 4 and s == 0) or (r == 5 and lam % 3 == 1 and s == 0):
        return "c"
    return "d"


def compute_g(nu: int, lam: int, s: int) -> int:
    """Maximum number of triples in a PTS(nu, lam) whose leave has s independent edges."""
    branch = g_branch(nu, lam, s)
    if branch == "small":
        return 0
    total = lam * comb(nu, 2)
    if branch == "a":
        # floor(total/3 - nu/6) == floor((2*total - nu)/6)
        return (2 * total - nu) // 6
    if branch == "b":
        return (2 * total - nu) // 6 - 1
    if branch == "c":
        return total // 3 - 1
    return (total - 2 * s) // 3


def compute_f(n: int, nu: int, delta2: int) -> int:
    if nu < 1 or delta2 < 1:
        raise ParameterError("nu and delta2 must be positive")
    if n < nu:
        raise ParameterError(f"n={n} is smaller than nu={nu}")
    base = nu * (n - nu) * delta2 // 2
    if ((n - nu) * delta2) % 2 == 0 or nu % 2 == 0:
        return base + compute_g(nu, delta2, 0)
    return base + compute_g(nu, delta2, nu // 2)


def existence(kind: str, nu: int, lam: int = 1) -> bool:
    """Existence of TS(nu, lam), STS(nu), or PBD(nu, {3,5*}, 1)."""
    kind = kind.upper()
    if kind == "TS":
        return nu != 2 and lam % gcd(nu - 2, 6) == 0
    if kind == "STS":
        return nu % 6 in (1, 3)
    if kind == "PBD35":
        # nu == 5 is the lone 5-block; the nontrivial designs need nu > 5
        return nu % 6 == 5
    raise ParameterError(f"unknown design kind {kind!r}")


def leave_profile(nu: int, lam: int) -> LeaveProfile:
    if nu < 3:
        raise ParameterError("leave profiles need nu >= 3")
    if lam < 1:
        raise ParameterError("lambda must be at least 1")
    return LeaveProfile(
        degree_parity=lam * (nu - 1) % 2,
        size_mod3=lam * comb(nu, 2) % 3,
        case1=lam <= gcd(nu - 2, 6),
    )


def cycle_lengths(g: Multigraph) -> list[int]:
    """Sorted cycle lengths of a simple graph whose degrees are all 0 or 2."""
    if not g.is_simple():
        raise ParameterError("graph must be simple")
    if any(d not in (0, 2) for d in g.degrees):
        raise ParameterError("every vertex must have degree 0 or 2")
    adj: dict[int, list[int]] = {}
    for u, v in g.edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen: set[int] = set()
    lengths = []
    for start in adj:
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        size = 0
        while stack:
            v = stack.pop()
            size += 1
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        lengths.append(size)
    return sorted(lengths)


_EXCEPTIONS = {(1, 7): [3, 3], (1, 9): [4, 5], (2, 6): [3, 3]}


def check_leave_feasible(nu: int, lam: int, g: Multigraph) -> tuple[bool, str]:
    """Decide whether a 2-regular-or-isolated simple graph is a PTS(nu, lam) leave."""
    if g.n > nu:
        raise ParameterError(f"graph has {g.n} vertices, more than nu={nu}")
    if nu <= 2:
        raise ParameterError("needs nu > 2")
    lengths = cycle_lengths(g)
    if lam % 2 == 1 and nu % 2 == 0:
        return False, "lambda odd and nu even forces odd leave degrees"
    if (lam * comb(nu, 2) - g.size) % 3:
        return False, "lambda*C(nu,2) - e(G) is not divisible by 3"
    if _EXCEPTIONS.get((lam, nu)) == lengths:
        shape = " + ".join(f"C{k}" for k in lengths)
        return False, f"{shape} is an exceptional non-leave for lambda={lam}, nu={nu}"
    return True, "ok"
