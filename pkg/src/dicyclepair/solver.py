"""Two-dicycle solver: proof-guided construction with an exact fallback.

The constructive pipeline mirrors the existence argument: cover the
witness set W by one underlying-graph path, split it into two paths with
the prescribed W-lengths, locally optimize (shorter first, then more
bidirected edges), and close each path into a directed cycle either
directly, through a reservoir connector, or by a drop-and-reinsert
repair.  Whenever a step stalls, the exact oracle takes over; UNSAT can
only come from the oracle's exhaustion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

from .digraph import (
    CycleSeq,
    Digraph,
    InputError,
    Instance,
    Mode,
    PathSeq,
    common_directed,
)
from .paths import (
    Outcome,
    close_path_to_dicycle,
    extend_path_endpoint_sum,
    extend_path_one,
    extend_path_two,
    insert_into_cycle,
)
from . import kernels


class Verdict(Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    UNKNOWN = "UNKNOWN"


METHOD_PROOF_GUIDED = "PROOF_GUIDED"
METHOD_ORACLE = "ORACLE"


@dataclass(frozen=True)
class Certificate:
    c1: CycleSeq
    c2: CycleSeq
    method: str
    stats: dict = field(default_factory=dict, compare=False)


@dataclass
class SolveOutcome:
    verdict: Verdict
    certificate: Certificate | None = None
    stalls: tuple[str, ...] = ()
    oracle_stats: dict = field(default_factory=dict)

    @property
    def sat(self) -> bool:
        return self.verdict is Verdict.SAT


# ---------------------------------------------------------------------------
# Covering path


@dataclass(frozen=True)
class WCover:
    path: PathSeq | None
    stalls: tuple[str, ...]
    steps: int


def _attach(inst: Instance, p: PathSeq, x0: int) -> PathSeq | None:
    """One covering step: absorb the witness vertex x0 into the path.

    Tried in order: direct endpoint edge, the endpoint-sum reroute in both
    orientations, then a two-arc detour through an outside common
    neighbor.  Returns the grown path or None.
    """
    g = inst.d.und
    vs = p.vertices
    nx = g.und_masks[x0]
    if nx >> vs[0] & 1:
        return PathSeq((x0,) + vs, Mode.UND_PATH, p.w_mask)
    if nx >> vs[-1] & 1:
        return PathSeq(vs + (x0,), Mode.UND_PATH, p.w_mask)
    r = extend_path_endpoint_sum(g, p, x0)
    if r.ok:
        return r.witness
    r = extend_path_endpoint_sum(g, p.reversed(), x0)
    if r.ok:
        return r.witness
    outside = ~p.vset_mask & ~(1 << x0) & ((1 << g.n) - 1)
    for end, flip in ((vs[0], True), (vs[-1], False)):
        mid = nx & g.und_masks[end] & outside
        if mid:
            u = (mid & -mid).bit_length() - 1
            if flip:
                return PathSeq((x0, u) + vs, Mode.UND_PATH, p.w_mask)
            return PathSeq(vs + (u, x0), Mode.UND_PATH, p.w_mask)
    return None


def w_cover_path(inst: Instance) -> WCover:
    """Build one underlying-graph path containing all of W.

    Grows the covered-W count one vertex at a time; a round in which no
    uncovered witness attaches is a stall (the exact oracle takes over in
    solve).
    """
    w_sorted = sorted(inst.w)
    p = PathSeq((w_sorted[0],), Mode.UND_PATH, inst.w_mask)
    steps = 0
    while True:
        uncovered = [v for v in w_sorted if v not in p]
        if not uncovered:
            return WCover(p, (), steps)
        for x0 in uncovered:
            grown = _attach(inst, p, x0)
            if grown is not None:
                p = grown
                steps += 1
                break
        else:
            return WCover(p, ("cover:no_extension",), steps)


# ---------------------------------------------------------------------------
# Split state


@dataclass(frozen=True)
class SplitState:
    p1: PathSeq
    p2: PathSeq
    reservoir: frozenset[int]

    @property
    def s(self) -> int:
        return self.p1.length

    @property
    def t(self) -> int:
        return self.p2.length

    @property
    def r(self) -> int:
        return len(self.reservoir)

    def potential(self, g) -> tuple[int, int]:
        """(pot_len, -pot_edges): smaller is lexicographically better."""
        e = g.edges_within(self.p1.vset_mask) + g.edges_within(self.p2.vset_mask)
        return (self.s + self.t, -e)

    @classmethod
    def build(cls, inst: Instance, p1: PathSeq, p2: PathSeq) -> "SplitState":
        if p1.vset_mask & p2.vset_mask:
            raise InputError("split paths overlap")
        if p1.w_len != inst.n1 or p2.w_len != inst.n2:
            raise InputError(
                f"split W-lengths ({p1.w_len},{p2.w_len}) != ({inst.n1},{inst.n2})")
        used = p1.vset_mask | p2.vset_mask
        res = frozenset(v for v in range(inst.d.n) if not used >> v & 1)
        if any(v in inst.w for v in res):
            raise InputError("reservoir contains witness vertices")
        return cls(p1=p1, p2=p2, reservoir=res)


def split_cover(p: PathSeq, inst: Instance) -> SplitState:
    """Cut the covering path after its n1-th witness vertex and trim
    non-witness vertices hanging off the cut ends.
    """
    missing = [v for v in inst.w if v not in p]
    if missing:
        raise InputError(f"path does not cover W; missing {sorted(missing)}")
    vs = p.vertices
    wpos = [i for i, v in enumerate(vs) if inst.w_mask >> v & 1]
    left = vs[wpos[0]:wpos[inst.n1 - 1] + 1]
    right_raw = vs[wpos[inst.n1 - 1] + 1:]
    rpos = [i for i, v in enumerate(right_raw) if inst.w_mask >> v & 1]
    right = right_raw[rpos[0]:rpos[-1] + 1]
    p1 = PathSeq(left, Mode.UND_PATH, inst.w_mask)
    p2 = PathSeq(right, Mode.UND_PATH, inst.w_mask)
    return SplitState.build(inst, p1, p2)


# ---------------------------------------------------------------------------
# Local optimization


def _drop_pass(g, p: PathSeq, w_mask: int) -> PathSeq | None:
    """First droppable non-witness vertex: a non-W endpoint, or an interior
    non-W vertex whose path neighbors are adjacent (splice-out)."""
    vs = p.vertices
    if len(vs) >= 2 and not w_mask >> vs[0] & 1:
        return PathSeq(vs[1:], Mode.UND_PATH, w_mask)
    if len(vs) >= 2 and not w_mask >> vs[-1] & 1:
        return PathSeq(vs[:-1], Mode.UND_PATH, w_mask)
    for i in range(1, len(vs) - 1):
        if not w_mask >> vs[i] & 1 and g.und_masks[vs[i - 1]] >> vs[i + 1] & 1:
            return PathSeq(vs[:i] + vs[i + 1:], Mode.UND_PATH, w_mask)
    return None


def optimize_split(st: SplitState, inst: Instance, stats: dict | None = None) -> SplitState:
    """Drive the split to a local optimum of (total length down, then
    bidirected edge count up).

    Moves: (M1) drop a droppable non-witness vertex to the reservoir;
    (M2) swap one endpoint between the paths when both rebuilt paths are
    traceable; (M3) swap both endpoint pairs, rebuilt via the two-vertex
    absorption.  Exchanges must pair witness with witness (or not with
    not) so W-lengths never move.  Only strict improvements are accepted,
    so termination is immediate from the integer potential.
    """
    if stats is None:
        stats = {}
    g = inst.d.und
    w_mask = inst.w_mask
    cur = st
    while True:
        moved = False
        # M1
        for which in (1, 2):
            p = cur.p1 if which == 1 else cur.p2
            dropped = _drop_pass(g, p, w_mask)
            if dropped is not None:
                if which == 1:
                    cur = SplitState.build(inst, dropped, cur.p2)
                else:
                    cur = SplitState.build(inst, cur.p1, dropped)
                stats["m1"] = stats.get("m1", 0) + 1
                moved = True
                break
        if moved:
            continue
        key = cur.potential(g)
        # M2
        for x in (cur.p1.front, cur.p1.back):
            for y in (cur.p2.front, cur.p2.back):
                if (w_mask >> x & 1) != (w_mask >> y & 1):
                    continue
                if cur.s < 2 or cur.t < 2:
                    continue
                r1 = extend_path_one(g, cur.p1.drop_end(x), y)
                if not r1.ok:
                    continue
                r2 = extend_path_one(g, cur.p2.drop_end(y), x)
                if not r2.ok:
                    continue
                cand = SplitState.build(inst, r1.witness, r2.witness)
                if cand.potential(g) < key:
                    cur = cand
                    stats["m2"] = stats.get("m2", 0) + 1
                    moved = True
                    break
            if moved:
                break
        if moved:
            continue
        # M3
        if cur.s >= 3 and cur.t >= 3:
            x1, xs = cur.p1.front, cur.p1.back
            y1, yt = cur.p2.front, cur.p2.back
            w_out = (w_mask >> x1 & 1) + (w_mask >> xs & 1)
            w_in = (w_mask >> y1 & 1) + (w_mask >> yt & 1)
            if w_out == w_in:
                mid1 = PathSeq(cur.p1.vertices[1:-1], Mode.UND_PATH, w_mask)
                mid2 = PathSeq(cur.p2.vertices[1:-1], Mode.UND_PATH, w_mask)
                r1 = extend_path_two(g, mid1, y1, yt)
                r2 = extend_path_two(g, mid2, x1, xs) if r1.ok else None
                if r1.ok and r2 is not None and r2.ok:
                    cand = SplitState.build(inst, r1.witness, r2.witness)
                    if cand.potential(g) < key:
                        cur = cand
                        stats["m3"] = stats.get("m3", 0) + 1
                        moved = True
        if not moved:
            return cur


# ---------------------------------------------------------------------------
# Closing


def _path_closures(inst: Instance, p: PathSeq, reservoir: frozenset[int],
                   cap: int = 32) -> list[tuple[CycleSeq, frozenset[int], str]]:
    """Candidate dicycle closures of one path, each with the reservoir
    vertices it consumes.

    Routes: C1 direct crossing-pair closure; C2 a reservoir connector z
    with arcs (back,z),(z,front), either orientation; C3 drop one witness
    endpoint, close the remainder (directly or with a connector), then
    splice the endpoint back in.
    """
    d = inst.d
    out: list[tuple[CycleSeq, frozenset[int], str]] = []
    res_sorted = sorted(reservoir)

    def emit(cyc: CycleSeq, used: frozenset[int], route: str) -> None:
        if len(out) < cap:
            out.append((cyc.rotated_to_min(), used, route))

    if p.length >= 3:
        r = close_path_to_dicycle(d, p)
        if r.ok:
            emit(r.witness, frozenset(), "C1")
    for q, route in ((p, "C2"), (p.reversed(), "C2r")):
        for z in res_sorted:
            if d.has_arc(q.back, z) and d.has_arc(z, q.front):
                cyc = CycleSeq(q.vertices + (z,), Mode.DICYCLE, p.w_mask)
                emit(cyc, frozenset((z,)), route)
    for end in (p.front, p.back):
        if p.length < 3:
            break
        rem = p.drop_end(end)
        closed: list[tuple[CycleSeq, frozenset[int]]] = []
        if rem.length >= 3:
            r = close_path_to_dicycle(d, rem)
            if r.ok:
                closed.append((r.witness, frozenset()))
        for q in (rem, rem.reversed()):
            for z in res_sorted:
                if d.has_arc(q.back, z) and d.has_arc(z, q.front):
                    closed.append((CycleSeq(q.vertices + (z,), Mode.DICYCLE, p.w_mask),
                                   frozenset((z,))))
        for cyc0, used in closed:
            r = insert_into_cycle(d, cyc0, end)
            if r.ok:
                emit(r.witness, used, "C3")
    return out


def close_split(st: SplitState, inst: Instance, stats: dict | None = None) -> SolveOutcome:
    """Close both paths into disjoint dicycles; reservoir connectors used
    by the two closures must not collide."""
    if stats is None:
        stats = {}
    cands1 = _path_closures(inst, st.p1, st.reservoir)
    cands2 = _path_closures(inst, st.p2, st.reservoir)
    stalls = []
    if not cands1:
        stalls.append("close:p1:no_route")
    if not cands2:
        stalls.append("close:p2:no_route")
    if not stalls:
        for c1, used1, route1 in cands1:
            for c2, used2, route2 in cands2:
                if used1 & used2:
                    continue
                stats["close_route"] = f"{route1}+{route2}"
                cert = Certificate(c1=c1, c2=c2, method=METHOD_PROOF_GUIDED,
                                   stats=dict(stats))
                return SolveOutcome(Verdict.SAT, cert)
        stalls.append("close:pair:conflict")
    return SolveOutcome(Verdict.UNKNOWN, stalls=tuple(stalls))


# ---------------------------------------------------------------------------
# Exact oracle

ORACLE_NMAX = 24
ORACLE_BUDGET = 5_000_000


def oracle_solve(inst: Instance, budget: int = ORACLE_BUDGET) -> SolveOutcome:
    """Exhaustive decision by candidate vertex-set enumeration.

    Order (fixes the certificate deterministically): total extra vertex
    count ascending; witness splits in lexicographic combination order
    (for equal part sizes only splits whose first part holds the smallest
    witness, killing the swap symmetry); extra sets in lexicographic
    order, first side first.  Each candidate set is tested for a spanning
    dicycle by the bitmask kernel, memoized per instance.  UNSAT only
    after the whole space is exhausted; blowing the budget yields UNKNOWN.
    """
    n = inst.d.n
    if n > ORACLE_NMAX:
        return SolveOutcome(Verdict.UNKNOWN, stalls=("oracle:n_cap",),
                            oracle_stats={"n": n, "cap": ORACLE_NMAX})
    out_masks = inst.d.out_masks
    w_sorted = sorted(inst.w)
    extras_pool = [v for v in range(n) if v not in inst.w]
    cache: dict[int, tuple[int, ...] | None] = {}
    effort = {"sets": 0, "pairs": 0}

    def cyc_of(vs: tuple[int, ...]):
        mask = 0
        for v in vs:
            mask |= 1 << v
        if mask not in cache:
            effort["sets"] += 1
            cache[mask] = kernels.spanning_dicycle(out_masks, vs)
        return cache[mask]

    splits = []
    for comb in itertools.combinations(w_sorted, inst.n1):
        if inst.n1 == inst.n2 and comb[0] != w_sorted[0]:
            continue
        w1 = comb
        w2 = tuple(v for v in w_sorted if v not in set(comb))
        splits.append((w1, w2))

    for total_extra in range(len(extras_pool) + 1):
        for w1, w2 in splits:
            for e1 in range(total_extra + 1):
                e2 = total_extra - e1
                for extras1 in itertools.combinations(extras_pool, e1):
                    s1 = tuple(sorted(w1 + extras1))
                    c1 = cyc_of(s1)
                    if c1 is None:
                        continue
                    taken = set(extras1)
                    rem = [v for v in extras_pool if v not in taken]
                    for extras2 in itertools.combinations(rem, e2):
                        effort["pairs"] += 1
                        if effort["pairs"] > budget:
                            return SolveOutcome(Verdict.UNKNOWN,
                                                stalls=("oracle:budget",),
                                                oracle_stats=dict(effort))
                        s2 = tuple(sorted(w2 + extras2))
                        c2 = cyc_of(s2)
                        if c2 is None:
                            continue
                        cert = Certificate(
                            c1=CycleSeq(c1, Mode.DICYCLE, inst.w_mask),
                            c2=CycleSeq(c2, Mode.DICYCLE, inst.w_mask),
                            method=METHOD_ORACLE, stats=dict(effort))
                        return SolveOutcome(Verdict.SAT, cert,
                                            oracle_stats=dict(effort))
    return SolveOutcome(Verdict.UNSAT, oracle_stats=dict(effort))


def oracle_family(d: Digraph, w: frozenset[int], parts: tuple[int, ...],
                  budget: int = ORACLE_BUDGET) -> SolveOutcome:
    """k-way variant: disjoint dicycles with witness intersections `parts`.

    Recursive over parts; used by the many-cycle counterexample search.
    Certificates are returned as a stats entry 'cycles' (list of tuples)
    since Certificate holds exactly two.
    """
    n = d.n
    if n > ORACLE_NMAX:
        return SolveOutcome(Verdict.UNKNOWN, stalls=("oracle:n_cap",))
    if any(p < 3 for p in parts) or sum(parts) != len(w):
        raise InputError(f"bad parts {parts} for |W|={len(w)}")
    out_masks = d.out_masks
    cache: dict[int, tuple[int, ...] | None] = {}
    effort = {"sets": 0, "pairs": 0}
    w_mask = 0
    for v in w:
        w_mask |= 1 << v

    def cyc_of(vs: tuple[int, ...]):
        mask = 0
        for v in vs:
            mask |= 1 << v
        if mask not in cache:
            effort["sets"] += 1
            cache[mask] = kernels.spanning_dicycle(out_masks, vs)
        return cache[mask]

    def rec(avail_w: tuple[int, ...], avail_x: tuple[int, ...],
            parts_left: tuple[int, ...], acc: list[tuple[int, ...]]):
        if not parts_left:
            return list(acc)
        k = parts_left[0]
        same = sum(1 for p in parts_left if p == k)
        for wc in itertools.combinations(avail_w, k):
            if same > 1 and len(parts_left) > 1 and wc[0] != avail_w[0]:
                continue
            rest_w = tuple(v for v in avail_w if v not in set(wc))
            for ec in range(len(avail_x) + 1):
                for extras in itertools.combinations(avail_x, ec):
                    effort["pairs"] += 1
                    if effort["pairs"] > budget:
                        raise _BudgetOut()
                    s = tuple(sorted(wc + extras))
                    c = cyc_of(s)
                    if c is None:
                        continue
                    rest_x = tuple(v for v in avail_x if v not in set(extras))
                    acc.append(c)
                    got = rec(rest_w, rest_x, parts_left[1:], acc)
                    if got is not None:
                        return got
                    acc.pop()
        return None

    avail_w = tuple(sorted(w))
    avail_x = tuple(v for v in range(n) if v not in w)
    try:
        got = rec(avail_w, avail_x, tuple(sorted(parts, reverse=True)), [])
    except _BudgetOut:
        return SolveOutcome(Verdict.UNKNOWN, stalls=("oracle:budget",),
                            oracle_stats=dict(effort))
    if got is None:
        return SolveOutcome(Verdict.UNSAT, oracle_stats=dict(effort))
    return SolveOutcome(Verdict.SAT, oracle_stats={**effort, "cycles": got})


class _BudgetOut(Exception):
    pass


# ---------------------------------------------------------------------------
# End-to-end


def solve(inst: Instance, oracle_only: bool = False, no_fallback: bool = False,
          oracle_budget: int = ORACLE_BUDGET) -> SolveOutcome:
    """Full pipeline; see module docstring.  UNSAT only via the oracle."""
    if oracle_only and no_fallback:
        raise InputError("oracle_only and no_fallback are mutually exclusive")
    stalls: tuple[str, ...] = ()
    stats: dict = {}
    if not oracle_only:
        cov = w_cover_path(inst)
        stats["cover_steps"] = cov.steps
        if not cov.stalls and cov.path is not None:
            st = split_cover(cov.path, inst)
            st = optimize_split(st, inst, stats)
            res = close_split(st, inst, stats)
            if res.sat:
                return res
            stalls = res.stalls
        else:
            stalls = cov.stalls
        if no_fallback:
            return SolveOutcome(Verdict.UNKNOWN, stalls=stalls)
    fin = oracle_solve(inst, budget=oracle_budget)
    fin.stalls = stalls + fin.stalls
    if fin.certificate is not None:
        fin.certificate.stats["fallback"] = 1 if not oracle_only else 0
    return fin


def validate_certificate(inst: Instance, cert: Certificate) -> tuple[bool, list[str]]:
    """Re-check a certificate from scratch: arcs, disjointness, W-lengths."""
    problems: list[str] = []
    for label, cyc, want in (("cycle1", cert.c1, inst.n1), ("cycle2", cert.c2, inst.n2)):
        vs = cyc.vertices
        if len(vs) < 2:
            problems.append(f"{label}: fewer than 2 vertices")
            continue
        if len(set(vs)) != len(vs):
            problems.append(f"{label}: repeated vertex")
        for v in vs:
            if not 0 <= v < inst.d.n:
                problems.append(f"{label}: vertex {v} out of range")
        for a, b in zip(vs, vs[1:] + vs[:1]):
            if not inst.d.has_arc(a, b):
                problems.append(f"{label}: missing arc ({a},{b})")
        got = sum(1 for v in vs if v in inst.w)
        if got != want:
            problems.append(f"{label}: W-length {got} != {want}")
    shared = set(cert.c1.vertices) & set(cert.c2.vertices)
    for v in sorted(shared):
        problems.append(f"shared vertex {v}")
    return (not problems, problems)


# ---------------------------------------------------------------------------
# Certificate text form


def format_outcome(outcome: SolveOutcome) -> str:
    cert = outcome.certificate
    lines = [f"verdict: {outcome.verdict.value}",
             f"method: {cert.method if cert else '-'}",
             f"cycle1: {' '.join(map(str, cert.c1.vertices)) if cert else '-'}",
             f"cycle2: {' '.join(map(str, cert.c2.vertices)) if cert else '-'}",
             f"stalls: {';'.join(outcome.stalls) if outcome.stalls else '-'}"]
    return "\n".join(lines) + "\n"


def parse_outcome(text: str, w_mask: int = 0) -> SolveOutcome:
    fields: dict[str, str] = {}
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln:
            continue
        key, sep, val = ln.partition(":")
        if not sep:
            raise InputError(f"bad certificate line {ln!r}")
        fields[key.strip()] = val.strip()
    for need in ("verdict", "method", "cycle1", "cycle2", "stalls"):
        if need not in fields:
            raise InputError(f"certificate missing field {need!r}")
    verdict = Verdict(fields["verdict"])
    stalls = tuple(fields["stalls"].split(";")) if fields["stalls"] != "-" else ()
    cert = None
    if fields["cycle1"] != "-":
        c1 = CycleSeq(tuple(int(t) for t in fields["cycle1"].split()),
                      Mode.DICYCLE, w_mask)
        c2 = CycleSeq(tuple(int(t) for t in fields["cycle2"].split()),
                      Mode.DICYCLE, w_mask)
        cert = Certificate(c1=c1, c2=c2, method=fields["method"])
    return SolveOutcome(verdict, cert, stalls=stalls)
