"""Constructive path and cycle extension operations.

Each operation either emits a witness sequence (re-validatable against the
digraph), the exceptional alternating-neighborhood certificate, or
NOT_APPLICABLE meaning "construction not found".  NOT_APPLICABLE never
means the hypothesis failed: callers may invoke these below threshold and
take any witness they get.  All scans run left to right over path
positions, so outputs are deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from .digraph import (
    CycleSeq,
    Digraph,
    InputError,
    Mode,
    PathSeq,
    UnderlyingGraphView,
)


class Outcome(Enum):
    WITNESS = "witness"
    ALTERNATING_CERT = "alternating_cert"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class ExtensionResult:
    outcome: Outcome
    witness: PathSeq | CycleSeq | None = None
    cert: frozenset[int] | None = None

    @property
    def ok(self) -> bool:
        return self.outcome is Outcome.WITNESS


_NA = ExtensionResult(Outcome.NOT_APPLICABLE)


def _check_outside(g: UnderlyingGraphView, p: PathSeq | CycleSeq, y: int) -> None:
    if not 0 <= y < g.n:
        raise InputError(f"vertex {y} out of range for n={g.n}")
    if y in p:
        raise InputError(f"vertex {y} already lies on the sequence")


def extend_path_one(g: UnderlyingGraphView, p: PathSeq, y: int) -> ExtensionResult:
    """Absorb y into a path of G: attach at an endpoint, else insert at a
    consecutive neighbor pair.  Guaranteed to succeed when d(y,p) >= k/2.
    """
    if p.mode is not Mode.UND_PATH:
        raise InputError("extend_path_one needs an underlying-graph path")
    _check_outside(g, p, y)
    vs = p.vertices
    if not vs:
        return ExtensionResult(Outcome.WITNESS, PathSeq((y,), Mode.UND_PATH, p.w_mask))
    ny = g.und_masks[y]
    if ny >> vs[0] & 1:
        return ExtensionResult(Outcome.WITNESS, PathSeq((y,) + vs, Mode.UND_PATH, p.w_mask))
    if ny >> vs[-1] & 1:
        return ExtensionResult(Outcome.WITNESS, PathSeq(vs + (y,), Mode.UND_PATH, p.w_mask))
    for i in range(len(vs) - 1):
        if ny >> vs[i] & 1 and ny >> vs[i + 1] & 1:
            w = PathSeq(vs[:i + 1] + (y,) + vs[i + 1:], Mode.UND_PATH, p.w_mask)
            return ExtensionResult(Outcome.WITNESS, w)
    return _NA


def extend_path_endpoint_sum(g: UnderlyingGraphView, p: PathSeq, y: int) -> ExtensionResult:
    """Absorb y when the front endpoint and y together see >= k path vertices.

    Three moves, tried in order: append y behind x_k; if x_k-x_1 is an edge,
    open the cycle at a neighbor of y; otherwise find i with y-x_i and
    x_1-x_{i+1} edges and reroute y x_i ... x_1 x_{i+1} ... x_k.
    """
    if p.mode is not Mode.UND_PATH:
        raise InputError("extend_path_endpoint_sum needs an underlying-graph path")
    _check_outside(g, p, y)
    vs = p.vertices
    if not vs:
        raise InputError("extend_path_endpoint_sum needs a nonempty path")
    k = len(vs)
    ny = g.und_masks[y]
    last = g.und_masks[vs[-1]]
    if last >> y & 1:
        return ExtensionResult(Outcome.WITNESS, PathSeq(vs + (y,), Mode.UND_PATH, p.w_mask))
    if k >= 2 and last >> vs[0] & 1:
        for j in range(k - 1):
            if ny >> vs[j] & 1:
                w = PathSeq((y,) + vs[j::-1] + vs[:j:-1], Mode.UND_PATH, p.w_mask)
                return ExtensionResult(Outcome.WITNESS, w)
        return _NA
    n1 = g.und_masks[vs[0]]
    for i in range(k - 1):
        if ny >> vs[i] & 1 and n1 >> vs[i + 1] & 1:
            w = PathSeq((y,) + vs[i::-1] + vs[i + 1:], Mode.UND_PATH, p.w_mask)
            return ExtensionResult(Outcome.WITNESS, w)
    return _NA


def extend_path_two(g: UnderlyingGraphView, p: PathSeq, y: int, z: int) -> ExtensionResult:
    """Absorb two outside vertices when d(y,p)+d(z,p) >= k+2.

    Looks for two cyclic positions i<j where y sits next to x_i,x_j and z
    next to x_{i+1},x_{j+1} (x_{k+1}=x_1); tries the (z,y) role swap too.
    """
    if p.mode is not Mode.UND_PATH:
        raise InputError("extend_path_two needs an underlying-graph path")
    _check_outside(g, p, y)
    _check_outside(g, p, z)
    if y == z:
        raise InputError("extend_path_two needs two distinct vertices")
    vs = p.vertices
    if not vs:
        raise InputError("extend_path_two needs a nonempty path")
    for a, b in ((y, z), (z, y)):
        w = _two_absorb(g, vs, a, b, p.w_mask)
        if w is not None:
            return ExtensionResult(Outcome.WITNESS, w)
    return _NA


def _two_absorb(g: UnderlyingGraphView, vs: tuple[int, ...], y: int, z: int,
                w_mask: int) -> PathSeq | None:
    k = len(vs)
    ny, nz = g.und_masks[y], g.und_masks[z]
    hits = [i for i in range(k)
            if ny >> vs[i] & 1 and nz >> vs[(i + 1) % k] & 1]
    if len(hits) < 2:
        return None
    i, j = hits[0], hits[1]
    if j == k - 1:
        return PathSeq((z,) + vs + (y,), Mode.UND_PATH, w_mask)
    mid = vs[j:i:-1]
    return PathSeq(vs[:i + 1] + (y,) + mid + (z,) + vs[j + 1:], Mode.UND_PATH, w_mask)


def alternating_or_pair(g: UnderlyingGraphView, p: PathSeq, y: int) -> ExtensionResult:
    """Find a consecutive pair of path vertices both adjacent to y, or
    certify the exceptional alternating neighborhood {x_1,x_3,...,x_k}.
    """
    if p.mode is not Mode.UND_PATH:
        raise InputError("alternating_or_pair needs an underlying-graph path")
    _check_outside(g, p, y)
    vs = p.vertices
    k = len(vs)
    ny = g.und_masks[y]
    for i in range(k - 1):
        if ny >> vs[i] & 1 and ny >> vs[i + 1] & 1:
            w = PathSeq(vs[:i + 1] + (y,) + vs[i + 1:], Mode.UND_PATH, p.w_mask)
            return ExtensionResult(Outcome.WITNESS, w,
                                   cert=frozenset((vs[i], vs[i + 1])))
    nbrs = [v for v in vs if ny >> v & 1]
    odd_positions = [vs[i] for i in range(0, k, 2)]
    if k % 2 == 1 and len(nbrs) == (k + 1) // 2 and nbrs == odd_positions:
        return ExtensionResult(Outcome.ALTERNATING_CERT, cert=frozenset(nbrs))
    return _NA


def insert_into_cycle(d: Digraph, c: CycleSeq, y: int) -> ExtensionResult:
    """Splice y into a cycle between two consecutive bidirected neighbors;
    guaranteed when d(y,c) >= l/2 unless the neighborhood alternates.

    Works for both modes: splicing between und-neighbors keeps a dicycle a
    dicycle.
    """
    _check_outside(d.und, c, y)
    vs = c.vertices
    l = len(vs)
    ny = d.und.und_masks[y]
    for i in range(l):
        if ny >> vs[i] & 1 and ny >> vs[(i + 1) % l] & 1:
            w = CycleSeq(vs[:i + 1] + (y,) + vs[i + 1:], c.mode, c.w_mask)
            return ExtensionResult(Outcome.WITNESS, w,
                                   cert=frozenset((vs[i], vs[(i + 1) % l])))
    nbrs = frozenset(v for v in vs if ny >> v & 1)
    if l % 2 == 0 and len(nbrs) == l // 2:
        return ExtensionResult(Outcome.ALTERNATING_CERT, cert=nbrs)
    return _NA


def close_path_to_dicycle(d: Digraph, p: PathSeq) -> ExtensionResult:
    """Turn a bidirected path into a directed Hamiltonian cycle of its span.

    Uses the crossing pair: an index i with arcs x_1->x_{i+1} and x_k->x_i
    (or the mirrored in-arc pair), the rest of the cycle running along the
    path in both directions.  Guaranteed when the endpoint out-degree sum
    (or in-degree sum) into the path reaches k.
    """
    if p.mode is not Mode.UND_PATH:
        raise InputError("close_path_to_dicycle needs an underlying-graph path")
    vs = p.vertices
    k = len(vs)
    if k < 3:
        raise InputError(f"close_path_to_dicycle needs k >= 3, got {k}")
    out0, outk = d.out_masks[vs[0]], d.out_masks[vs[-1]]
    for ii in range(1, k):
        if out0 >> vs[ii] & 1 and outk >> vs[ii - 1] & 1:
            cyc = (vs[0],) + vs[ii:] + vs[ii - 1:0:-1]
            return ExtensionResult(Outcome.WITNESS, CycleSeq(cyc, Mode.DICYCLE, p.w_mask))
    in0, ink = d.in_masks[vs[0]], d.in_masks[vs[-1]]
    for ii in range(1, k):
        if in0 >> vs[ii] & 1 and ink >> vs[ii - 1] & 1:
            cyc = vs[:ii] + vs[:ii - 1:-1]
            return ExtensionResult(Outcome.WITNESS, CycleSeq(cyc, Mode.DICYCLE, p.w_mask))
    return _NA


ROTATION_STATE_CAP = 1_000_000


@dataclass(frozen=True)
class RotationClosure:
    """Free endpoints reachable by rotations that keep one end fixed.

    violation, when set, is a strictly longer path found from some
    reachable free end: the caller's longest-path assumption was wrong.
    truncated means the state cap stopped the search early.
    """

    endpoints: frozenset[int]
    witnesses: dict[int, PathSeq] = field(compare=False)
    violation: PathSeq | None = None
    truncated: bool = False
    states: int = 0


def rotation_closure(g: UnderlyingGraphView, p: PathSeq, fixed_end: int,
                     cap: int = ROTATION_STATE_CAP) -> RotationClosure:
    """Breadth-first closure of the rotation move.

    A rotation at pivot x_i (an on-path neighbor of the free end) reverses
    the tail after x_i, making x_{i+1} the new free end.  Every reachable
    path is checked for an extension of its free end; finding one
    short-circuits with a violation report.
    """
    if p.mode is not Mode.UND_PATH:
        raise InputError("rotation_closure needs an underlying-graph path")
    vs = p.vertices
    if len(vs) < 2:
        raise InputError("rotation_closure needs a path on >= 2 vertices")
    if fixed_end == vs[0]:
        start = vs
    elif fixed_end == vs[-1]:
        start = vs[::-1]
    else:
        raise InputError(f"{fixed_end} is not an endpoint of the path")
    pmask = p.vset_mask
    seen = {start}
    queue = deque([start])
    witnesses: dict[int, PathSeq] = {}
    truncated = False
    while queue:
        cur = queue.popleft()
        v = cur[-1]
        outside = g.und_masks[v] & ~pmask
        if outside:
            ext = (outside & -outside).bit_length() - 1
            viol = PathSeq(cur + (ext,), Mode.UND_PATH, p.w_mask)
            return RotationClosure(frozenset(witnesses), witnesses,
                                   violation=viol, truncated=truncated,
                                   states=len(seen))
        if v not in witnesses:
            witnesses[v] = PathSeq(cur, Mode.UND_PATH, p.w_mask)
        nv = g.und_masks[v]
        for i in range(len(cur) - 2):
            if nv >> cur[i] & 1:
                new = cur[:i + 1] + cur[:i:-1]
                if new not in seen:
                    if len(seen) >= cap:
                        truncated = True
                        continue
                    seen.add(new)
                    queue.append(new)
    return RotationClosure(frozenset(witnesses), witnesses,
                           violation=None, truncated=truncated, states=len(seen))
