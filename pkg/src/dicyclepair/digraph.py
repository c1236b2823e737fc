"""Core digraph representation with single-word bit-set adjacency.

Vertices are dense 0-based integers, n <= 64, so every adjacency row fits
in one Python int used as a bitmask.  A Digraph is immutable after
construction; DigraphBuilder is the mutable counterpart used by the
exhaustive enumerator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator

MAX_VERTICES = 64


class InputError(ValueError):
    """Malformed instance, out-of-range vertex, or bad parameter."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lambda_parity(m: int) -> int:
    """1 if m is odd, else 0."""
    return m & 1


def degree_threshold(n: int) -> int:
    """Witness degree threshold, the integer ceiling of (3n-3)/2.

    Equals (3n - 2 - lambda_n) / 2 for every n; a unit test pins the
    agreement of the two forms.
    """
    return (3 * n - 2) // 2


class Digraph:
    """Strict digraph: no loops, no parallel arcs, antiparallel pairs allowed."""

    __slots__ = ("n", "out_masks", "in_masks", "__dict__")

    def __init__(self, n: int, out_masks: tuple[int, ...], in_masks: tuple[int, ...]):
        self.n = n
        self.out_masks = out_masks
        self.in_masks = in_masks

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        if not 0 <= n <= MAX_VERTICES:
            raise InputError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        out = [0] * n
        inn = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"arc ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at {u}")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        return cls(n, tuple(out), tuple(inn))

    @classmethod
    def complete(cls, n: int) -> "Digraph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)),
                   tuple(full ^ (1 << v) for v in range(n)))

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InputError(f"vertex {v} out of range for n={self.n}")

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_masks[u] >> v & 1)

    def arcs(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in bits(self.out_masks[u]):
                yield (u, v)

    def arc_count(self) -> int:
        return sum(m.bit_count() for m in self.out_masks)

    def adj_mask(self, v: int) -> int:
        """Vertices adjacent to v in either direction (the digraph adjacency)."""
        return self.out_masks[v] | self.in_masks[v]

    def total_degree(self, v: int) -> int:
        """a(v) = out-degree plus in-degree; a bidirected neighbor counts twice."""
        return self.out_masks[v].bit_count() + self.in_masks[v].bit_count()

    def reversed(self) -> "Digraph":
        return Digraph(self.n, self.in_masks, self.out_masks)

    @cached_property
    def und(self) -> "UnderlyingGraphView":
        return UnderlyingGraphView(self)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Digraph) and self.n == other.n
                and self.out_masks == other.out_masks)

    def __hash__(self) -> int:
        return hash((self.n, self.out_masks))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.arc_count()})"


class UnderlyingGraphView:
    """Undirected view whose edges are exactly the bidirected pairs."""

    __slots__ = ("n", "und_masks", "edge_count")

    def __init__(self, d: Digraph):
        self.n = d.n
        self.und_masks = tuple(o & i for o, i in zip(d.out_masks, d.in_masks))
        self.edge_count = sum(m.bit_count() for m in self.und_masks) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.und_masks[u] >> v & 1)

    def degree(self, v: int, scope_mask: int | None = None) -> int:
        m = self.und_masks[v]
        if scope_mask is not None:
            m &= scope_mask
        return m.bit_count()

    def edges_within(self, scope_mask: int) -> int:
        """Edge count of the induced subgraph on the given vertex mask."""
        total = 0
        for v in bits(scope_mask):
            total += (self.und_masks[v] & scope_mask).bit_count()
        return total // 2


class DigraphBuilder:
    """Mutable digraph for in-place enumeration; snapshot() freezes a copy.

    No views are cached here, so arc mutations cannot leave a stale
    underlying-graph view behind.  Confine each builder to one worker.
    """

    __slots__ = ("n", "out_masks", "in_masks")

    def __init__(self, n: int, out_masks: Iterable[int] = (), in_masks: Iterable[int] = ()):
        self.n = n
        self.out_masks = list(out_masks) or [0] * n
        self.in_masks = list(in_masks) or [0] * n

    @classmethod
    def complete(cls, n: int) -> "DigraphBuilder":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)],
                   [full ^ (1 << v) for v in range(n)])

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_masks[u] >> v & 1)

    def add_arc(self, u: int, v: int) -> None:
        if u == v:
            raise InputError(f"self-loop at {u}")
        self.out_masks[u] |= 1 << v
        self.in_masks[v] |= 1 << u

    def remove_arc(self, u: int, v: int) -> None:
        self.out_masks[u] &= ~(1 << v)
        self.in_masks[v] &= ~(1 << u)

    def total_degree(self, v: int) -> int:
        return self.out_masks[v].bit_count() + self.in_masks[v].bit_count()

    def snapshot(self) -> Digraph:
        return Digraph(self.n, tuple(self.out_masks), tuple(self.in_masks))


@dataclass(frozen=True)
class Instance:
    """A digraph with witness set W and the prescribed partition |W| = n1 + n2."""

    d: Digraph
    w: frozenset[int]
    n1: int
    n2: int

    def __post_init__(self):
        n = self.d.n
        if n < 6:
            raise InputError(f"instance needs n >= 6, got {n}")
        bad = [v for v in self.w if not 0 <= v < n]
        if bad:
            raise InputError(f"witness vertices {sorted(bad)} out of range for n={n}")
        if self.n1 < 3 or self.n2 < 3:
            raise InputError(f"partition parts must be >= 3, got ({self.n1},{self.n2})")
        if len(self.w) != self.n1 + self.n2:
            raise InputError(
                f"|W|={len(self.w)} does not match partition {self.n1}+{self.n2}")

    @property
    def n(self) -> int:
        return self.d.n

    @cached_property
    def w_mask(self) -> int:
        return mask_of(self.w)

    @property
    def threshold(self) -> int:
        return degree_threshold(self.d.n)


class Mode(Enum):
    UND_PATH = "und_path"
    DIPATH = "dipath"
    UND_CYCLE = "und_cycle"
    DICYCLE = "dicycle"


_PATH_MODES = (Mode.UND_PATH, Mode.DIPATH)
_CYCLE_MODES = (Mode.UND_CYCLE, Mode.DICYCLE)


@dataclass(frozen=True)
class PathSeq:
    """Ordered duplicate-free vertex sequence; a path of G or a dipath of D.

    w_mask records which vertices count toward the W-length; w_len is
    cached at construction.
    """

    vertices: tuple[int, ...]
    mode: Mode = Mode.UND_PATH
    w_mask: int = 0
    w_len: int = field(init=False)

    def __post_init__(self):
        if self.mode not in _PATH_MODES:
            raise InputError(f"bad path mode {self.mode}")
        vs = tuple(self.vertices)
        if len(set(vs)) != len(vs):
            raise InputError("path repeats a vertex")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "w_len", (mask_of(vs) & self.w_mask).bit_count())

    @property
    def length(self) -> int:
        """l(P): the number of vertices (not edges)."""
        return len(self.vertices)

    @cached_property
    def vset_mask(self) -> int:
        return mask_of(self.vertices)

    @property
    def front(self) -> int:
        return self.vertices[0]

    @property
    def back(self) -> int:
        return self.vertices[-1]

    def reversed(self) -> "PathSeq":
        return PathSeq(self.vertices[::-1], self.mode, self.w_mask)

    def drop_end(self, v: int) -> "PathSeq":
        if v == self.front:
            return PathSeq(self.vertices[1:], self.mode, self.w_mask)
        if v == self.back:
            return PathSeq(self.vertices[:-1], self.mode, self.w_mask)
        raise InputError(f"{v} is not an endpoint")

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: int) -> bool:
        return bool(self.vset_mask >> v & 1)


@dataclass(frozen=True)
class CycleSeq:
    """Cyclic vertex sequence; consecutive (cyclically) pairs joined per mode."""

    vertices: tuple[int, ...]
    mode: Mode = Mode.DICYCLE
    w_mask: int = 0
    w_len: int = field(init=False)

    def __post_init__(self):
        if self.mode not in _CYCLE_MODES:
            raise InputError(f"bad cycle mode {self.mode}")
        vs = tuple(self.vertices)
        if len(vs) < 2:
            raise InputError("cycle needs at least 2 vertices")
        if len(set(vs)) != len(vs):
            raise InputError("cycle repeats a vertex")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "w_len", (mask_of(vs) & self.w_mask).bit_count())

    @property
    def length(self) -> int:
        return len(self.vertices)

    @cached_property
    def vset_mask(self) -> int:
        return mask_of(self.vertices)

    def successor(self, x: int) -> int:
        i = self.vertices.index(x)
        return self.vertices[(i + 1) % len(self.vertices)]

    def predecessor(self, x: int) -> int:
        i = self.vertices.index(x)
        return self.vertices[i - 1]

    def rotated_to_min(self) -> "CycleSeq":
        """Canonical rotation starting at the smallest vertex (direction kept)."""
        i = self.vertices.index(min(self.vertices))
        return CycleSeq(self.vertices[i:] + self.vertices[:i], self.mode, self.w_mask)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: int) -> bool:
        return bool(self.vset_mask >> v & 1)


def seq_violations(d: Digraph, seq: PathSeq | CycleSeq) -> list[str]:
    """Re-validate a sequence against a digraph; empty list means valid."""
    out: list[str] = []
    vs = seq.vertices
    for v in vs:
        if not 0 <= v < d.n:
            out.append(f"vertex {v} out of range")
            return out
    if len(set(vs)) != len(vs):
        out.append("repeated vertex")
    und = d.und
    if isinstance(seq, PathSeq):
        pairs = list(zip(vs, vs[1:]))
        cyclic = False
    else:
        pairs = list(zip(vs, vs[1:] + vs[:1]))
        cyclic = True
        if len(vs) < 2:
            out.append("cycle too short")
    for u, v in pairs:
        if seq.mode in (Mode.DIPATH, Mode.DICYCLE):
            if not d.has_arc(u, v):
                out.append(f"missing arc ({u},{v})")
        else:
            if not und.has_edge(u, v):
                out.append(f"missing edge {u}-{v}")
    if cyclic and len(vs) == 2 and seq.mode == Mode.UND_CYCLE:
        out.append("2-cycle invalid in underlying graph")
    recomputed = (mask_of(vs) & seq.w_mask).bit_count()
    if recomputed != seq.w_len:
        out.append(f"cached w_len {seq.w_len} != recomputed {recomputed}")
    return out


def degrees(d: Digraph, x: int, scope: Iterable[int]) -> tuple[int, int, int, int]:
    """(a+, a-, a, d) of x toward a vertex set, per the partial-degree notation.

    a = a+ + a- counts a bidirected neighbor twice; d counts bidirected
    neighbors once (the underlying-graph degree).
    """
    d.check_vertex(x)
    m = mask_of(scope) & ~(1 << x)
    if m >> d.n:
        raise InputError("scope contains out-of-range vertices")
    a_plus = (d.out_masks[x] & m).bit_count()
    a_minus = (d.in_masks[x] & m).bit_count()
    d_und = (d.out_masks[x] & d.in_masks[x] & m).bit_count()
    return a_plus, a_minus, a_plus + a_minus, d_und


def common_und(d: Digraph, x: int, y: int, scope: Iterable[int]) -> set[int]:
    """I(xy, scope): vertices of scope bidirected with both x and y."""
    if x == y:
        raise InputError("common_und needs distinct vertices")
    d.check_vertex(x)
    d.check_vertex(y)
    und = d.und
    m = und.und_masks[x] & und.und_masks[y] & mask_of(scope)
    m &= ~(1 << x) & ~(1 << y)
    return set(bits(m))


def common_directed(d: Digraph, x: int, y: int, scope: Iterable[int]) -> set[int]:
    """I(x->y, scope): u in scope with arcs (x,u) and (u,y), closing y..x via u."""
    if x == y:
        raise InputError("common_directed needs distinct vertices")
    d.check_vertex(x)
    d.check_vertex(y)
    m = d.out_masks[x] & d.in_masks[y] & mask_of(scope)
    m &= ~(1 << x) & ~(1 << y)
    return set(bits(m))


@dataclass(frozen=True)
class HypothesisReport:
    ok: bool
    threshold: int
    violators: tuple[int, ...]


def hypothesis_check(inst: Instance) -> HypothesisReport:
    """Check the witness degree condition a(x) >= ceil((3n-3)/2) for x in W."""
    thr = degree_threshold(inst.d.n)
    violators = tuple(v for v in sorted(inst.w) if inst.d.total_degree(v) < thr)
    return HypothesisReport(ok=not violators, threshold=thr, violators=violators)


@dataclass(frozen=True)
class PartitionBoundReport:
    """Derived lower bound on d(u, Y) across a vertex partition (X, Y).

    The chain: a(u,Y) >= a(u) - a(u,X) >= (3|Y|+|X|-lam)/2, and
    d(u,Y) = a(u,Y) - |N_D(u,Y)| >= (3|Y|+|X|-lam)/2 - |Y| = (n-lam)/2.
    """

    ok: bool
    failed: str | None
    n: int
    lam: int
    x_size: int
    y_size: int
    a_u: int
    a_u_x: int
    a_u_y_lower: int
    bound: int


def partition_degree_bound(d: Digraph, u: int, x_side: Iterable[int]) -> PartitionBoundReport:
    """Degree-algebra bound d(u, Y) >= (n - lambda_n)/2 with its intermediates.

    Preconditions that fail arithmetically are reported, not raised, so the
    harness can count which hypothesis broke.
    """
    d.check_vertex(u)
    x_mask = mask_of(x_side)
    if x_mask >> d.n:
        raise InputError("x_side contains out-of-range vertices")
    if not x_mask >> u & 1:
        raise InputError(f"u={u} must lie in x_side")
    n = d.n
    lam = lambda_parity(n)
    x_size = x_mask.bit_count()
    y_size = n - x_size
    a_u = d.total_degree(u)
    sub = x_mask & ~(1 << u)
    a_u_x = (d.out_masks[u] & sub).bit_count() + (d.in_masks[u] & sub).bit_count()
    failed = None
    if a_u < degree_threshold(n):
        failed = f"a(u)={a_u} below degree threshold {degree_threshold(n)}"
    elif a_u_x > x_size - 1:
        failed = f"a(u,X)={a_u_x} exceeds |X|-1={x_size - 1}"
    a_u_y_lower = (3 * y_size + x_size - lam) // 2
    bound = (n - lam) // 2
    return PartitionBoundReport(ok=failed is None, failed=failed, n=n, lam=lam,
                                x_size=x_size, y_size=y_size, a_u=a_u, a_u_x=a_u_x,
                                a_u_y_lower=a_u_y_lower, bound=bound)
