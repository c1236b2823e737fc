"""Verification campaigns and their reports.

Every campaign is deterministic in (command, seed): per-instance seeds are
derived by a fixed mix, results are aggregated in instance-id order, and
wall time is confined to a trailer section excluded from the
byte-reproducibility contract.  Counterexample candidates are written to
disk before re-verification so nothing is lost on a crash.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .digraph import (
    CycleSeq,
    Digraph,
    InputError,
    Instance,
    Mode,
    PathSeq,
    UnderlyingGraphView,
    degree_threshold,
    degrees,
    hypothesis_check,
    lambda_parity,
    mask_of,
    partition_degree_bound,
    seq_violations,
)
from .instance_io import format_instance, parse_instance
from .generators import (
    N6_GROUPS,
    build_bn,
    bn_instance,
    bn_unsat_partition,
    count_dense_n6,
    enumerate_dense_n6,
    n6_instance,
    random_dense,
    random_digraph,
)
from .solver import (
    Certificate,
    Verdict,
    oracle_family,
    oracle_solve,
    solve,
    validate_certificate,
)
from .paths import (
    Outcome,
    alternating_or_pair,
    close_path_to_dicycle,
    extend_path_endpoint_sum,
    extend_path_one,
    extend_path_two,
    insert_into_cycle,
    rotation_closure,
)
from . import brute


def default_jobs() -> int:
    raw = os.environ.get("DICYCLEPAIR_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InputError(f"DICYCLEPAIR_JOBS must be an integer, got {raw!r}")


def _mix(seed: int, *parts: int) -> int:
    """Stable per-instance seed derivation."""
    h = seed & 0xFFFFFFFFFFFFFFFF
    for p in parts:
        h = (h * 1_000_003 + p + 0x9E3779B9) & 0xFFFFFFFFFFFFFFFF
    return h


def parallel_map(fn, items, jobs: int):
    """Order-preserving map, optionally over a process pool."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


@dataclass
class CampaignReport:
    campaign: str
    seed: int | None
    params: dict[str, str] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)
    extras: dict[str, str] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    counterexamples: list[str] = field(default_factory=list)
    wall_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures and not self.counterexamples


def format_report(rep: CampaignReport) -> str:
    """Fixed-order structured text; only the trailer varies between runs."""
    lines = [f"campaign: {rep.campaign}",
             f"verdict: {'PASS' if rep.passed else 'FAIL'}",
             f"seed: {rep.seed if rep.seed is not None else '-'}"]
    if rep.params:
        lines.append("params: " + " ".join(f"{k}={v}" for k, v in rep.params.items()))
    for key in ("total", "sat", "unsat", "unknown", "stalled"):
        if key in rep.counts:
            lines.append(f"{key}: {rep.counts[key]}")
    for k, v in rep.extras.items():
        lines.append(f"{k}: {v}")
    lines.append(f"failures: {len(rep.failures)}")
    lines.extend(f"  - {f}" for f in rep.failures)
    lines.append(f"counterexamples: {len(rep.counterexamples)}")
    lines.extend(f"  - {c}" for c in rep.counterexamples)
    lines.append("--- timing ---")
    lines.append(f"wall_seconds: {rep.wall_seconds:.3f}")
    return "\n".join(lines) + "\n"


def _persist(out_dir: str, name: str, text: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return path


# ---------------------------------------------------------------------------
# verify-n6


def _n6_group_worker(group: int) -> tuple[int, int, int, list[str]]:
    visited = sat = 0
    bad: list[str] = []
    for d in enumerate_dense_n6(group):
        inst = n6_instance(d)
        visited += 1
        out = oracle_solve(inst)
        if out.verdict is Verdict.SAT:
            sat += 1
        else:
            bad.append(format_instance(inst))
    return (group, visited, sat, bad)


def verify_n6(jobs: int | None = None, out_dir: str = ".") -> CampaignReport:
    """Exhaustively oracle-solve every 6-vertex digraph with all degrees >= 8
    under W = V and partition (3,3); the visited count must equal the
    independent combinatorial counter.
    """
    t0 = time.perf_counter()
    jobs = default_jobs() if jobs is None else jobs
    rep = CampaignReport("verify-n6", seed=None,
                         params={"n": "6", "partition": "3+3"})
    results = parallel_map(_n6_group_worker, range(N6_GROUPS), jobs)
    results.sort(key=lambda r: r[0])
    visited = sum(r[1] for r in results)
    sat = sum(r[2] for r in results)
    expected = count_dense_n6()
    rep.counts = {"total": visited, "sat": sat, "unsat": visited - sat,
                  "unknown": 0, "stalled": 0}
    rep.extras["expected_count"] = str(expected)
    if visited != expected:
        rep.failures.append(f"visited {visited} != independent count {expected}")
    idx = 0
    for _, _, _, bad in results:
        for text in bad:
            path = _persist(out_dir, f"n6_counterexample_{idx}.txt", text)
            inst = parse_instance(text)
            again = oracle_solve(inst)
            if again.verdict is Verdict.SAT:
                rep.failures.append(f"{path}: did not re-fail on reload")
            else:
                rep.counterexamples.append(path)
            idx += 1
    rep.wall_seconds = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# verify-random


def _vr_instance(seed: int, n: int, idx: int) -> Instance:
    rng = random.Random(_mix(seed, n, idx))
    target = None if rng.random() < 0.5 else rng.randint(2 * n, n * (n - 1))
    return random_dense(n, seed=rng.getrandbits(63), target_arcs=target)


def _vr_worker(args: tuple[int, int, int]) -> tuple[int, int, str, str, str]:
    """Returns (n, idx, status, method, instance-text-if-bad)."""
    seed, n, idx = args
    inst = _vr_instance(seed, n, idx)
    out = solve(inst)
    method = out.certificate.method if out.certificate else "-"
    stalled = "y" if out.stalls else "n"
    if out.verdict is not Verdict.SAT:
        return (n, idx, f"non-sat:{out.verdict.value}", method + ":" + stalled,
                format_instance(inst))
    ok, problems = validate_certificate(inst, out.certificate)
    if not ok:
        return (n, idx, "invalid-cert:" + problems[0], method + ":" + stalled,
                format_instance(inst))
    return (n, idx, "sat", method + ":" + stalled, "")


def verify_random(seed: int = 0, trials: int = 500,
                  n_values: tuple[int, ...] = (7, 8, 9, 10, 11),
                  jobs: int | None = None, out_dir: str = ".") -> CampaignReport:
    """Randomized guarantee check: every hypothesis-satisfying instance
    must be SAT with a validating certificate."""
    t0 = time.perf_counter()
    jobs = default_jobs() if jobs is None else jobs
    rep = CampaignReport("verify-random", seed=seed,
                         params={"n": ",".join(map(str, n_values)),
                                 "trials": str(trials)})
    work = [(seed, n, i) for n in n_values for i in range(trials)]
    results = parallel_map(_vr_worker, work, jobs)
    results.sort(key=lambda r: (r[0], r[1]))
    total = len(results)
    sat = sum(1 for r in results if r[2] == "sat")
    stalled = sum(1 for r in results if r[3].endswith(":y"))
    fallback = sum(1 for r in results if r[3].startswith("ORACLE"))
    rep.counts = {"total": total, "sat": sat, "unsat": 0, "unknown": 0,
                  "stalled": stalled}
    rep.counts["unsat"] = sum(1 for r in results if r[2] == "non-sat:UNSAT")
    rep.counts["unknown"] = sum(1 for r in results if r[2] == "non-sat:UNKNOWN")
    rep.extras["proof_guided"] = str(total - fallback)
    rep.extras["fallback_rate"] = f"{fallback / total:.4f}" if total else "0.0000"
    for n, idx, status, _, text in results:
        if status != "sat":
            name = f"verify_random_counterexample_n{n}_{idx}.txt"
            path = _persist(out_dir, name, text)
            inst = parse_instance(text)
            again = solve(inst)
            ok = again.verdict is Verdict.SAT
            if ok and again.certificate is not None:
                ok = validate_certificate(inst, again.certificate)[0]
            if ok:
                rep.failures.append(f"{path}: did not re-fail on reload")
            else:
                rep.counterexamples.append(f"{path} ({status})")
    rep.wall_seconds = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# sharpness


def sharpness(n_values: tuple[int, ...] = (8, 10, 12)) -> CampaignReport:
    """Check the tight family: min degree one under the threshold, longest
    dicycle exactly half the order rounded up, and the oversized partition
    UNSAT while the balanced one is SAT."""
    from . import kernels

    t0 = time.perf_counter()
    rep = CampaignReport("sharpness", seed=None,
                         params={"n": ",".join(map(str, n_values))})
    total = sat = unsat = 0
    for n in n_values:
        big, small = bn_unsat_partition(n)
        if small < 3:
            raise InputError(f"bn partition ({big},{small}) has a part below 3")
        d = build_bn(n)
        mind = min(d.total_degree(v) for v in range(n))
        want_min = (3 * n - 4) // 2
        if mind != want_min:
            rep.failures.append(f"n={n}: min degree {mind} != {want_min}")
        if mind != degree_threshold(n) - 1:
            rep.failures.append(
                f"n={n}: min degree {mind} not one below threshold {degree_threshold(n)}")
        longest = kernels.longest_dicycle(d.out_masks, n)
        want_longest = (n + 1) // 2
        if longest != want_longest:
            rep.failures.append(f"n={n}: longest dicycle {longest} != {want_longest}")
        out = oracle_solve(bn_instance(n, (big, small)))
        total += 1
        if out.verdict is Verdict.UNSAT:
            unsat += 1
        else:
            rep.failures.append(f"n={n}: partition ({big},{small}) gave {out.verdict.value}")
        balanced = (n // 2, n - n // 2)
        out2 = oracle_solve(bn_instance(n, balanced))
        total += 1
        if out2.verdict is Verdict.SAT:
            sat += 1
        else:
            rep.failures.append(f"n={n}: partition {balanced} gave {out2.verdict.value}")
        rep.extras[f"n{n}"] = (f"min_degree={mind} threshold={degree_threshold(n)} "
                               f"longest_dicycle={longest} "
                               f"unsat_partition={big}+{small} sat_partition={balanced[0]}+{balanced[1]}")
    rep.counts = {"total": total, "sat": sat, "unsat": unsat, "unknown": 0,
                  "stalled": 0}
    rep.wall_seconds = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# conjecture-e (k >= 3 disjoint dicycles)


def format_family(d: Digraph, w: frozenset[int], parts: tuple[int, ...]) -> str:
    """Instance text with a k-way partition line (same shape as the 2-way
    format, line 3 just carries k sizes)."""
    lines = [str(d.n), " ".join(str(v) for v in sorted(w)),
             " ".join(str(p) for p in parts)]
    lines.extend(f"{u} {v}" for u, v in d.arcs())
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> tuple[Digraph, frozenset[int], tuple[int, ...]]:
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    n = int(rows[0])
    w = frozenset(int(t) for t in rows[1].split())
    parts = tuple(int(t) for t in rows[2].split())
    arcs = [tuple(int(t) for t in ln.split()) for ln in rows[3:]]
    return Digraph.from_arcs(n, arcs), w, parts


def _ce_worker(args: tuple[int, int, int, int, int, int]) -> tuple[int, str, str]:
    """Returns (idx, status, family-text-if-unsat)."""
    seed, idx, k, n_lo, n_hi, budget = args
    rng = random.Random(_mix(seed, idx, k))
    lo = max(n_lo, 3 * k)
    n = rng.randint(lo, max(lo, n_hi))
    w_size = rng.randint(max(6, 3 * k), n)
    parts = []
    remaining = w_size
    for i in range(k - 1):
        hi = remaining - 3 * (k - 1 - i)
        parts.append(rng.randint(3, hi))
        remaining -= parts[-1]
    parts.append(remaining)
    inst = random_dense(n, seed=rng.getrandbits(63), w_size=w_size,
                        partition=(3, w_size - 3))
    out = oracle_family(inst.d, inst.w, tuple(parts), budget=budget)
    if out.verdict is Verdict.SAT:
        return (idx, "sat", "")
    if out.verdict is Verdict.UNKNOWN:
        return (idx, "unknown", "")
    return (idx, "unsat", format_family(inst.d, inst.w, tuple(parts)))


def conjecture_e(k: int = 3, seed: int = 0, trials: int = 200,
                 n_values: tuple[int, ...] = (9, 10, 11, 12),
                 jobs: int | None = None, out_dir: str = ".",
                 budget: int = 300_000) -> CampaignReport:
    """Search for hypothesis-satisfying instances without k disjoint
    dicycles of the prescribed witness counts.

    No ground-truth expectation exists; the contract is only that every
    reported counterexample survives re-verification by the independent
    cycle-DFS brute force.
    """
    t0 = time.perf_counter()
    if k < 3:
        raise InputError(f"conjecture-e needs k >= 3, got {k}")
    jobs = default_jobs() if jobs is None else jobs
    n_lo, n_hi = min(n_values), max(n_values)
    rep = CampaignReport("conjecture-e", seed=seed,
                         params={"k": str(k), "n": f"{n_lo}..{n_hi}",
                                 "trials": str(trials)})
    work = [(seed, i, k, n_lo, n_hi, budget) for i in range(trials)]
    results = parallel_map(_ce_worker, work, jobs)
    results.sort(key=lambda r: r[0])
    sat = sum(1 for r in results if r[1] == "sat")
    unknown = sum(1 for r in results if r[1] == "unknown")
    unsat = sum(1 for r in results if r[1] == "unsat")
    rep.counts = {"total": len(results), "sat": sat, "unsat": unsat,
                  "unknown": unknown, "stalled": 0}
    for idx, status, text in results:
        if status != "unsat":
            continue
        path = _persist(out_dir, f"conjecture_e_candidate_{idx}.txt", text)
        d, w, parts = parse_family(text)
        if not hypothesis_check(Instance(d=d, w=w, n1=3, n2=len(w) - 3)).ok:
            rep.failures.append(f"{path}: hypothesis does not hold on reload")
        elif brute.family_exists(d.out_masks, d.n, mask_of(w), parts):
            rep.failures.append(f"{path}: brute force finds a family; oracle bug")
        else:
            rep.counterexamples.append(path)
    rep.wall_seconds = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# oracle cross-validation corpus (acceptance support)


def _xv_worker(args: tuple[int, int]) -> tuple[int, str]:
    seed, idx = args
    rng = random.Random(_mix(seed, idx))
    n = rng.randint(6, 7)
    p = rng.choice((0.15, 0.3, 0.45, 0.6, 0.75, 0.9, 1.0))
    d = random_digraph(n, p, rng)
    w_size = rng.randint(6, n)
    w = frozenset(rng.sample(range(n), w_size))
    n1 = rng.randint(3, w_size - 3)
    inst = Instance(d=d, w=w, n1=n1, n2=w_size - n1)
    out = oracle_solve(inst)
    ref = brute.two_disjoint_exist(d.out_masks, n, inst.w_mask, inst.n1, inst.n2)
    if (out.verdict is Verdict.SAT) != ref:
        return (idx, f"disagree oracle={out.verdict.value} brute={'SAT' if ref else 'UNSAT'}")
    if out.verdict is Verdict.SAT:
        ok, problems = validate_certificate(inst, out.certificate)
        if not ok:
            return (idx, "invalid-cert:" + problems[0])
    return (idx, "ok")


def oracle_cross_validation(seed: int = 0, trials: int = 10_000,
                            jobs: int | None = None) -> CampaignReport:
    """Oracle verdicts vs the cycle-DFS brute force on small random digraphs."""
    t0 = time.perf_counter()
    jobs = default_jobs() if jobs is None else jobs
    rep = CampaignReport("oracle-cross-validation", seed=seed,
                         params={"trials": str(trials), "n": "6..7"})
    results = parallel_map(_xv_worker, [(seed, i) for i in range(trials)], jobs)
    results.sort(key=lambda r: r[0])
    bad = [(i, s) for i, s in results if s != "ok"]
    rep.counts = {"total": len(results), "sat": 0, "unsat": 0, "unknown": 0,
                  "stalled": 0}
    rep.extras["disagreements"] = str(len(bad))
    for i, s in bad:
        rep.failures.append(f"trial {i}: {s}")
    rep.wall_seconds = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# lemma suite


def _induced_und(d: Digraph, mask: int) -> UnderlyingGraphView:
    out = tuple((m & mask) if mask >> v & 1 else 0 for v, m in enumerate(d.out_masks))
    inn = tuple((m & mask) if mask >> v & 1 else 0 for v, m in enumerate(d.in_masks))
    return UnderlyingGraphView(Digraph(d.n, out, inn))


def _connected_mask(und: UnderlyingGraphView, mask: int) -> bool:
    if not mask:
        return True
    start = (mask & -mask).bit_length() - 1
    seen = 1 << start
    frontier = [start]
    while frontier:
        v = frontier.pop()
        new = und.und_masks[v] & mask & ~seen
        while new:
            low = new & -new
            seen |= low
            frontier.append(low.bit_length() - 1)
            new ^= low
    return seen == mask


def _is_cut_vertex(und: UnderlyingGraphView, scope_mask: int, v: int) -> bool:
    rest = scope_mask & ~(1 << v)
    if rest.bit_count() < 2:
        return False
    return _component_count(und, rest) > _component_count(und, scope_mask)


def _component_count(und: UnderlyingGraphView, mask: int) -> int:
    count = 0
    left = mask
    while left:
        start = (left & -left).bit_length() - 1
        comp = _component_containing(und, left, start)
        left &= ~comp
        count += 1
    return count


def _component_containing(und: UnderlyingGraphView, mask: int, v: int) -> int:
    seen = 1 << v
    frontier = [v]
    while frontier:
        u = frontier.pop()
        new = und.und_masks[u] & mask & ~seen
        while new:
            low = new & -new
            seen |= low
            frontier.append(low.bit_length() - 1)
            new ^= low
    return seen


def _longest_path_from(und: UnderlyingGraphView, start: int, scope_mask: int) -> tuple[int, ...]:
    """Exhaustive longest path with one fixed end; first-found among equals."""
    best = (start,)
    stack = [((start,), 1 << start)]
    while stack:
        path, mask = stack.pop()
        if len(path) > len(best):
            best = path
        nxt = und.und_masks[path[-1]] & scope_mask & ~mask
        while nxt:
            low = nxt & -nxt
            u = low.bit_length() - 1
            nxt ^= low
            stack.append((path + (u,), mask | low))
    return best


def _spine_digraph(rng: random.Random, n: int, p: float) -> tuple[Digraph, list[int]]:
    """Random digraph with a guaranteed bidirected path to host lemma inputs."""
    arcs = set()
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p:
                arcs.add((u, v))
    verts = list(range(n))
    rng.shuffle(verts)
    klen = rng.randint(1, n - 1)
    spine = verts[:klen]
    for a, b in zip(spine, spine[1:]):
        arcs.add((a, b))
        arcs.add((b, a))
    return Digraph.from_arcs(n, sorted(arcs)), spine


_LEMMA_KEYS = ("one", "pair_or_alt", "endpoint_sum", "two", "cycle_insert",
               "close", "rotation")


def _check_path_lemmas(rng: random.Random, hits: dict, fails: list[str]) -> None:
    d, spine = _spine_digraph(rng, rng.randint(3, 8), rng.choice((0.3, 0.5, 0.7)))
    g = d.und
    p = PathSeq(tuple(spine), Mode.UND_PATH)
    k = p.length
    outside = [v for v in range(d.n) if v not in p]
    if outside:
        y = outside[0]
        dy = g.degree(y, p.vset_mask)
        res = extend_path_one(g, p, y)
        if 2 * dy >= k:
            hits["one"] += 1
            if not res.ok:
                fails.append(f"one: no witness {d.out_masks} {spine} {y}")
        if res.ok and (seq_violations(d, res.witness)
                       or sorted(res.witness.vertices) != sorted(spine + [y])):
            fails.append(f"one: bad witness {d.out_masks} {spine} {y}")
        res = alternating_or_pair(g, p, y)
        if 2 * dy > k:
            hits["pair_or_alt"] += 1
            if res.outcome is Outcome.NOT_APPLICABLE:
                fails.append(f"pair_or_alt: missed {d.out_masks} {spine} {y}")
        if res.outcome is Outcome.ALTERNATING_CERT:
            want = frozenset(spine[0::2])
            if k % 2 == 0 or res.cert != want or dy != (k + 1) // 2:
                fails.append(f"pair_or_alt: bad cert {d.out_masks} {spine} {y}")
        if res.ok and seq_violations(d, res.witness):
            fails.append(f"pair_or_alt: bad witness {d.out_masks} {spine} {y}")
        dx1 = g.degree(p.front, p.vset_mask)
        res = extend_path_endpoint_sum(g, p, y)
        if dx1 + dy >= k:
            hits["endpoint_sum"] += 1
            if not res.ok:
                fails.append(f"endpoint_sum: no witness {d.out_masks} {spine} {y}")
        if res.ok and (seq_violations(d, res.witness)
                       or sorted(res.witness.vertices) != sorted(spine + [y])):
            fails.append(f"endpoint_sum: bad witness {d.out_masks} {spine} {y}")
    if len(outside) >= 2:
        y, z = outside[0], outside[1]
        dy = g.degree(y, p.vset_mask)
        dz = g.degree(z, p.vset_mask)
        res = extend_path_two(g, p, y, z)
        if dy + dz >= k + 2:
            hits["two"] += 1
            if not res.ok:
                fails.append(f"two: no witness {d.out_masks} {spine} {y} {z}")
        if res.ok and (seq_violations(d, res.witness)
                       or sorted(res.witness.vertices) != sorted(spine + [y, z])):
            fails.append(f"two: bad witness {d.out_masks} {spine} {y} {z}")
    if k >= 3:
        spm = p.vset_mask
        a_plus = ((d.out_masks[p.front] & spm & ~(1 << p.front)).bit_count()
                  + (d.out_masks[p.back] & spm & ~(1 << p.back)).bit_count())
        a_minus = ((d.in_masks[p.front] & spm & ~(1 << p.front)).bit_count()
                   + (d.in_masks[p.back] & spm & ~(1 << p.back)).bit_count())
        res = close_path_to_dicycle(d, p)
        if a_plus >= k or a_minus >= k:
            hits["close"] += 1
            if not res.ok:
                fails.append(f"close: no witness {d.out_masks} {spine}")
        if a_plus + a_minus >= 2 * k - 1 and not (a_plus >= k or a_minus >= k):
            fails.append(f"close: combined-form arithmetic broken {d.out_masks} {spine}")
        if res.ok and (seq_violations(d, res.witness)
                       or sorted(res.witness.vertices) != sorted(spine)):
            fails.append(f"close: bad witness {d.out_masks} {spine}")
    # cycle insertion on a bidirected cycle built from the spine
    if k >= 3 and outside:
        cyc_ok = d.und.has_edge(spine[-1], spine[0])
        if cyc_ok:
            c = CycleSeq(tuple(spine), Mode.DICYCLE)
            y = outside[0]
            dyc = g.degree(y, c.vset_mask)
            res = insert_into_cycle(d, c, y)
            if 2 * dyc >= k:
                hits["cycle_insert"] += 1
                if res.outcome is Outcome.NOT_APPLICABLE:
                    fails.append(f"cycle_insert: missed {d.out_masks} {spine} {y}")
            if res.ok and seq_violations(d, res.witness):
                fails.append(f"cycle_insert: bad witness {d.out_masks} {spine} {y}")
            if res.outcome is Outcome.ALTERNATING_CERT:
                if k % 2 == 1 or len(res.cert) != k // 2:
                    fails.append(f"cycle_insert: bad cert {d.out_masks} {spine} {y}")


def _check_rotation_lemma(rng: random.Random, hits: dict, fails: list[str]) -> None:
    n = rng.randint(4, 7)
    d, _ = _spine_digraph(rng, n, rng.choice((0.5, 0.7, 0.9)))
    g = d.und
    scope = (1 << n) - 1
    start = rng.randrange(n)
    q = _longest_path_from(g, start, scope)
    t = len(q)
    if t < 3:
        return
    p = PathSeq(q, Mode.UND_PATH)
    rc = rotation_closure(g, p, start)
    if rc.violation is not None:
        fails.append(f"rotation: violation on a longest path {d.out_masks} {q}")
        return
    for end, wit in rc.witnesses.items():
        if (seq_violations(d, wit) or wit.vertices[0] != start
                or wit.vertices[-1] != end or len(wit) != t):
            fails.append(f"rotation: bad witness {d.out_masks} {q} {end}")
            return
    c = min(g.degree(v) for v in rc.endpoints)
    if 2 * c <= t:
        return
    hits["rotation"] += 1
    # positions: x_j = q[t - j] (x_1 is the free end, x_t the fixed one)
    found_r = None
    for r in range(c + 1, t + 1):
        low = q[t - r + 1:]
        xr = q[t - r]
        region = mask_of(low) | (1 << xr)
        if any(g.und_masks[v] & ~region for v in low):
            continue
        if any(g.degree(v) < c for v in low):
            continue
        sub = _induced_und(d, region)
        subpath = PathSeq(q[t - r:], Mode.UND_PATH)
        src = rotation_closure(sub, subpath, xr)
        if src.violation is not None or not src.endpoints >= set(low):
            continue
        if t > r and not _is_cut_vertex(g, scope, xr):
            continue
        found_r = r
        break
    if found_r is None:
        fails.append(f"rotation: no valid r {d.out_masks} start={start} path={q} c={c}")


def _fresh_arithmetic_instance(rng: random.Random) -> tuple[Instance, str | None]:
    """New hypothesis instance plus a check of the basic underlying-degree
    consequence: every witness vertex has d(x,G) >= (n - lam) / 2."""
    n = rng.randint(7, 10)
    inst = random_dense(n, seed=rng.getrandbits(63))
    lam = lambda_parity(n)
    for x in sorted(inst.w):
        if inst.d.und.degree(x) < (n - lam) // 2:
            return (inst, f"deg(x,G) below (n-lam)/2 at x={x}, n={n}")
    return (inst, None)


def _check_arithmetic_triple(inst: Instance, rng: random.Random) -> tuple[bool, str | None]:
    """One (u, X, Y) sample; returns (hit, failure)."""
    n = inst.d.n
    u = rng.choice(sorted(inst.w))
    others = [v for v in range(n) if v != u]
    x_side = {u} | set(rng.sample(others, rng.randint(0, n - 2)))
    rep = partition_degree_bound(inst.d, u, x_side)
    if not rep.ok:
        return (False, None)
    y_side = [v for v in range(n) if v not in x_side]
    _, _, a_uy, d_uy = degrees(inst.d, u, y_side)
    if a_uy < rep.a_u_y_lower:
        return (True, f"a(u,Y)={a_uy} below bound {rep.a_u_y_lower}")
    if d_uy < rep.bound:
        return (True, f"d(u,Y)={d_uy} below bound {rep.bound}")
    return (True, None)


def _self_test() -> str:
    """Corrupt a witness and a certificate; both validators must object."""
    d = Digraph.from_arcs(4, [(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2)])
    good = PathSeq((0, 1, 2, 3), Mode.UND_PATH)
    if seq_violations(d, good):
        return "fail: clean path rejected"
    bad = PathSeq((0, 2, 1, 3), Mode.UND_PATH)
    if not seq_violations(d, bad):
        return "fail: corrupted path accepted"
    inst = random_dense(7, seed=99)
    out = solve(inst)
    ok, _ = validate_certificate(inst, out.certificate)
    if not ok:
        return "fail: clean certificate rejected"
    tampered = Certificate(c1=out.certificate.c1, c2=out.certificate.c1,
                           method=out.certificate.method)
    ok2, _ = validate_certificate(inst, tampered)
    if ok2:
        return "fail: tampered certificate accepted"
    return "pass"


def lemma_suite(seed: int = 0, trials: int = 10_000, min_hits: int = 100,
                max_escalations: int = 50) -> CampaignReport:
    """Randomized property checks for every constructive lemma operation,
    plus the partition-degree arithmetic, plus a validator self-test.

    If any per-lemma hypothesis-hit count is short of min_hits after the
    given trials, the budget escalates in blocks until every count is met.
    """
    t0 = time.perf_counter()
    rep = CampaignReport("lemmas", seed=seed, params={"trials": str(trials)})
    hits = {k: 0 for k in _LEMMA_KEYS}
    fails: list[str] = []
    rng = random.Random(_mix(seed, 1))
    ran = 0
    block = trials
    escalations = 0
    while True:
        for _ in range(block):
            _check_path_lemmas(rng, hits, fails)
            _check_rotation_lemma(rng, hits, fails)
        ran += block
        if all(hits[k] >= min_hits for k in _LEMMA_KEYS):
            break
        escalations += 1
        if escalations > max_escalations:
            short = [k for k in _LEMMA_KEYS if hits[k] < min_hits]
            fails.append(f"hit counts below {min_hits} after {ran} trials: {short}")
            break
        block = max(trials // 2, 1)
    triples = 0
    triple_rng = random.Random(_mix(seed, 2))
    attempts = 0
    inst = None
    while triples < 10_000 and attempts < 400_000:
        if attempts % 8 == 0:
            inst, failure = _fresh_arithmetic_instance(triple_rng)
            if failure:
                fails.append(f"arithmetic: {failure}")
        attempts += 1
        hit, failure = _check_arithmetic_triple(inst, triple_rng)
        if failure:
            fails.append(f"arithmetic: {failure}")
        if hit:
            triples += 1
    if triples < 10_000:
        fails.append(f"arithmetic: only {triples} precondition-hitting triples")
    st = _self_test()
    if st != "pass":
        fails.append(f"self-test: {st}")
    rep.counts = {"total": ran, "sat": 0, "unsat": 0, "unknown": 0, "stalled": 0}
    for k in _LEMMA_KEYS:
        rep.extras[f"hits_{k}"] = str(hits[k])
    rep.extras["arithmetic_triples"] = str(triples)
    rep.extras["self_test"] = st
    rep.failures = fails
    rep.wall_seconds = time.perf_counter() - t0
    return rep
