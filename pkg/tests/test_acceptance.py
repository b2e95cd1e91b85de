"""The eight acceptance criteria, each reported as one PASS/FAIL line."""

from __future__ import annotations

import itertools
import random
import time
from math import comb, gcd

from codegree_bound import designs, mpts
from codegree_bound.bounds import check_leave_feasible, compute_f, compute_g, leave_profile
from codegree_bound.core import Hypergraph3, Multigraph, graph_matching_number, leave, matching_number
from codegree_bound.designs import complete_to_leave, construct_sts
from codegree_bound.extremal import construct_extremal, partition_diagnostics, threshold, verify_extremal
from codegree_bound.mpts import construct_mpts, verify_mpts
from codegree_bound.oracle import enumerate_matchings, oracle_extremal, oracle_mpts

from conftest import FANO_TRIPLES


def record(log: list[str], k: int, title: str, failures: list[str], elapsed: float, limit: float | None):
    if limit is not None and elapsed >= limit:
        failures = failures + [f"took {elapsed:.2f}s, limit {limit}s"]
    status = "PASS" if not failures else "FAIL"
    budget = f"limit {limit:g}s" if limit is not None else "no limit"
    detail = "ok" if not failures else "; ".join(failures[:5])
    if len(failures) > 5:
        detail += f" (+{len(failures) - 5} more)"
    line = f"criterion {k} {status}: {title} [{elapsed:.2f}s, {budget}] {detail}"
    log.append(line)
    print(line)
    assert not failures, line


def clear_caches() -> None:
    for module in (designs, mpts):
        for obj in vars(module).values():
            if hasattr(obj, "cache_clear"):
                obj.cache_clear()


def cycle_graph(nu: int, lengths) -> Multigraph:
    edges, start = [], 0
    for k in lengths:
        edges += [(start + i, start + (i + 1) % k) for i in range(k)]
        start += k
    return Multigraph(nu, tuple(edges))


def cycle_partitions(total: int, smallest: int = 3):
    if total == 0:
        yield ()
        return
    for k in range(smallest, total + 1):
        for rest in cycle_partitions(total - k, k):
            yield (k, *rest)


def test_criterion_1_sts(acceptance_log):
    clear_caches()
    failures = []
    start = time.perf_counter()
    for nu in (7, 9, 13, 15, 19, 21, 25, 27):
        ts = construct_sts(nu)
        cover = ts.pair_counts
        if ts.edge_count != nu * (nu - 1) // 6:
            failures.append(f"STS({nu}) has {ts.edge_count} triples")
        if len(cover) != comb(nu, 2) or set(cover.values()) != {1}:
            failures.append(f"STS({nu}) pair coverage is not exactly one")
    record(acceptance_log, 1, "STS correctness", failures, time.perf_counter() - start, 1)


def test_criterion_2_mpts_grid(acceptance_log):
    clear_caches()
    failures = []
    grid = [
        (nu, lam, s)
        for nu in range(3, 15)
        for lam in range(1, gcd(nu - 2, 6) + 1)
        for s in range(nu // 2 + 1)
    ]
    grid += [(nu, lam, s) for nu, lam in ((8, 9), (9, 4), (11, 5)) for s in range(nu // 2 + 1)]
    start = time.perf_counter()
    for nu, lam, s in grid:
        ts = construct_mpts(nu, lam, s).system
        g = leave(ts)
        prof = leave_profile(nu, lam)
        problems = []
        if ts.edge_count != compute_g(nu, lam, s):
            problems.append("size")
        if max(ts.pair_counts.values(), default=0) > lam:
            problems.append("pair multiplicity")
        if graph_matching_number(g) < s:
            problems.append("leave matching")
        if 3 * ts.edge_count + g.size != lam * comb(nu, 2):
            problems.append("leave identity")
        if any(d % 2 != prof.degree_parity for d in g.degrees) or g.size % 3 != prof.size_mod3:
            problems.append("leave profile")
        if problems:
            failures.append(f"({nu},{lam},{s}): {', '.join(problems)}")
    record(acceptance_log, 2, f"MPTS grid ({len(grid)} cases)", failures, time.perf_counter() - start, 120)


def test_criterion_3_oracle_equivalence(acceptance_log):
    failures = []
    pairs = [(3, 1), (4, 1), (5, 1), (6, 1), (7, 1), (3, 2), (4, 2), (5, 2), (6, 2), (3, 3)]
    count = 0
    start = time.perf_counter()
    for nu, lam in pairs:
        for s in range(nu // 2 + 1):
            count += 1
            report = oracle_mpts(nu, lam, s)
            if not report.exhausted:
                failures.append(f"({nu},{lam},{s}) not certified")
            elif report.optimum != compute_g(nu, lam, s):
                failures.append(f"({nu},{lam},{s}) oracle {report.optimum} vs g {compute_g(nu, lam, s)}")
            else:
                verify_mpts(report.witness, s)
    record(acceptance_log, 3, f"oracle == g ({count} cases)", failures, time.perf_counter() - start, 600)


def extremal_grid():
    for nu in (1, 2, 3, 4):
        for d2 in (1, 2, 3):
            n0 = threshold(nu, d2)
            for n in range(n0, n0 + 4):
                yield n, nu, d2


def test_criterion_4_extremal(acceptance_log):
    failures = []
    start = time.perf_counter()
    for n, nu, d2 in extremal_grid():
        h, _ = construct_extremal(n, nu, d2)
        cert = verify_extremal(h, nu, d2)
        if not cert.passed or cert.edge_count != compute_f(n, nu, d2) or cert.matching_number != nu:
            failures.append(f"({n},{nu},{d2}): {cert.to_dict()}")
    record(acceptance_log, 4, "extremal constructions (48 cases)", failures, time.perf_counter() - start, 300)


def test_criterion_5_partition_accounting(acceptance_log):
    failures = []
    start = time.perf_counter()
    for n, nu, d2 in extremal_grid():
        h, _ = construct_extremal(n, nu, d2)
        part = partition_diagnostics(h, range(nu), d2)
        m = n - nu
        if not part.valid:
            failures.append(f"({n},{nu},{d2}) has an edge missing V0")
        if (m * d2) % 2 == 0:
            if part.eps2 != 0 or 2 * part.eps1 != nu * d2 * m:
                failures.append(f"({n},{nu},{d2}) Case 1: eps1={part.eps1}, eps2={part.eps2}")
        # compared as 2*(eps1+eps2) == nu*m*d2 - 1 to stay in integers
        elif 2 * (part.eps1 + part.eps2) != nu * m * d2 - 1:
            failures.append(f"({n},{nu},{d2}) Case 2: eps1+eps2={part.eps1 + part.eps2}, want ({nu * m * d2}-1)/2")
        if not part.inequalities_hold:
            failures.append(f"({n},{nu},{d2}) inequality slack {part.ineq2_slack}, {part.ineq3_slack}")
    record(acceptance_log, 5, "partition accounting", failures, time.perf_counter() - start, None)


def test_criterion_6_leave_exceptions(acceptance_log):
    failures = []
    exceptions = {(1, 7, (3, 3)), (1, 9, (4, 5)), (2, 6, (3, 3))}
    start = time.perf_counter()
    rejected, realized = set(), 0
    for nu in range(3, 14):
        for lam in range(1, 7):
            for total in range(nu + 1):
                for lengths in cycle_partitions(total):
                    g = cycle_graph(nu, lengths)
                    ok, _ = check_leave_feasible(nu, lam, g)
                    necessary = (lam % 2 == 0 or nu % 2 == 1) and (lam * comb(nu, 2) - total) % 3 == 0
                    if necessary and not ok:
                        rejected.add((lam, nu, lengths))
                    if ok:
                        ts = complete_to_leave(nu, lam, g, seed=0)
                        realized += 1
                        if leave(ts) != g:
                            failures.append(f"leave mismatch for ({lam},{nu},{lengths})")
    if rejected != exceptions:
        failures.append(f"rejected {sorted(rejected)} instead of the three exceptions")
    if not check_leave_feasible(9, 1, cycle_graph(9, (9,)))[0]:
        failures.append("C9 rejected for (1,9)")
    ok7, why7 = check_leave_feasible(7, 1, cycle_graph(7, (7,)))
    if not ok7:
        failures.append(f"C7 rejected for (1,7): {why7}")
    title = f"leave exceptions ({realized} targets realized)"
    record(acceptance_log, 6, title, failures, time.perf_counter() - start, 60)


def test_criterion_7_matching_cross_validation(acceptance_log):
    failures = []
    start = time.perf_counter()
    for i in range(200):
        rng = random.Random(7000 + i)
        n = rng.randint(3, 9)
        pool = list(itertools.combinations(range(n), 3))
        distinct = rng.sample(pool, rng.randint(0, min(12, len(pool))))
        triples = distinct + [rng.choice(distinct) for _ in range(rng.randint(0, 4))] if distinct else []
        h = Hypergraph3(n, triples)
        k = 0
        while enumerate_matchings(h, k + 1):
            k += 1
        if matching_number(h) != k:
            failures.append(f"seed {7000 + i}: {matching_number(h)} vs {k}")
    record(acceptance_log, 7, "matching cross-validation (200 hypergraphs)", failures, time.perf_counter() - start, 30)


def test_criterion_8_fano_anchor(acceptance_log):
    failures = []
    start = time.perf_counter()
    report = oracle_extremal(7, 1, 1)
    w = report.witness
    if not report.exhausted or report.optimum != 7:
        failures.append(f"optimum {report.optimum}, exhausted={report.exhausted}")
    else:
        fano = set(FANO_TRIPLES)
        target = set(w.triples)
        iso = any(
            {tuple(sorted(p[v] for v in t)) for t in target} == fano
            for p in itertools.permutations(range(7))
        )
        if not iso or len(w.triples) != 7:
            failures.append("witness is not a Fano plane")
        if any(not set(a) & set(b) for a, b in itertools.combinations(w.triples, 2)):
            failures.append("witness has disjoint triples")
    record(acceptance_log, 8, "Fano oracle anchor", failures, time.perf_counter() - start, 60)
