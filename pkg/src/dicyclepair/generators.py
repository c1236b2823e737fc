"""Instance generators: the sharpness family, random dense instances, and
the exhaustive minimum-degree-8 family on six vertices.

All randomness flows through a seed carried in GenSpec, so a spec value
reproduces its instance exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .digraph import (
    Digraph,
    DigraphBuilder,
    InputError,
    Instance,
    degree_threshold,
)


class GenMode(Enum):
    BN = "bn"
    RANDOM_DENSE = "random"
    EXHAUSTIVE_N6 = "n6"


@dataclass(frozen=True)
class GenSpec:
    mode: GenMode
    n: int
    seed: int = 0
    w_size: int | None = None
    partition: tuple[int, int] | None = None
    target_arcs: int | None = None
    index: int | None = None


def build_bn(n: int) -> Digraph:
    """Two complete digraphs joined by a one-way complete cut.

    Side A holds floor(n/2) vertices, side B the rest; every A->B arc is
    present and no B->A arc.  Minimum total degree is floor((3n-4)/2), one
    short of the witness threshold, and no dicycle crosses the cut.
    """
    if n < 2:
        raise InputError(f"bn needs n >= 2, got {n}")
    half = n // 2
    arcs = []
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            if u < half and v >= half:
                arcs.append((u, v))
            elif (u < half) == (v < half):
                arcs.append((u, v))
    return Digraph.from_arcs(n, arcs)


def bn_unsat_partition(n: int) -> tuple[int, int]:
    """The partition (ceil(n/2)+1, floor(n/2)-1) that no dicycle pair meets."""
    big = (n + 1) // 2 + 1
    return big, n - big


def bn_instance(n: int, partition: tuple[int, int] | None = None) -> Instance:
    d = build_bn(n)
    if partition is None:
        big, small = bn_unsat_partition(n)
        if small < 3:
            partition = (n - 3, 3)
        else:
            partition = (big, small)
    return Instance(d=d, w=frozenset(range(n)), n1=partition[0], n2=partition[1])


def random_dense(n: int, seed: int, w_size: int | None = None,
                 partition: tuple[int, int] | None = None,
                 target_arcs: int | None = None) -> Instance:
    """Remove random arcs from the complete digraph while every witness
    keeps total degree >= the threshold.

    Degrees only decrease, so an arc that once failed the check never
    becomes removable again; failed candidates are dropped for good.
    Stops at target_arcs or when no arc can go.
    """
    if n < 6:
        raise InputError(f"random_dense needs n >= 6, got {n}")
    rng = random.Random(seed)
    if w_size is None:
        w_size = rng.randint(6, n)
    if not 6 <= w_size <= n:
        raise InputError(f"w_size {w_size} outside 6..{n}")
    w = sorted(rng.sample(range(n), w_size))
    if partition is None:
        n1 = rng.randint(3, w_size - 3)
        partition = (n1, w_size - n1)
    thr = degree_threshold(n)
    in_w = [False] * n
    for v in w:
        in_w[v] = True
    b = DigraphBuilder.complete(n)
    count = n * (n - 1)
    target = 0 if target_arcs is None else target_arcs
    candidates = [(u, v) for u in range(n) for v in range(n) if u != v]
    while candidates and count > target:
        u, v = candidates.pop(rng.randrange(len(candidates)))
        if in_w[u] and b.total_degree(u) <= thr:
            continue
        if in_w[v] and b.total_degree(v) <= thr:
            continue
        b.remove_arc(u, v)
        count -= 1
    return Instance(d=b.snapshot(), w=frozenset(w), n1=partition[0], n2=partition[1])


def random_digraph(n: int, p: float, rng: random.Random) -> Digraph:
    """Plain Bernoulli(p) digraph; no degree guarantee."""
    arcs = [(u, v) for u in range(n) for v in range(n)
            if u != v and rng.random() < p]
    return Digraph.from_arcs(n, arcs)


_N6_ARCS = [(u, v) for u in range(6) for v in range(6) if u != v]
N6_GROUPS = len(_N6_ARCS) + 1


def enumerate_dense_n6(group: int | None = None) -> Iterator[Digraph]:
    """All digraphs on 6 vertices with every total degree >= 8.

    Equivalently: complements of the complete digraph in which each vertex
    loses at most 2 incidences.  `group` partitions the family by the
    index of the first removed arc (group 30 is the complete digraph
    alone), which is how the sweep is spread over workers.
    """
    if group is not None and not 0 <= group < N6_GROUPS:
        raise InputError(f"group must be 0..{N6_GROUPS - 1}, got {group}")
    b = DigraphBuilder.complete(6)
    miss = [0] * 6

    def rec(i: int) -> Iterator[Digraph]:
        if i == len(_N6_ARCS):
            yield b.snapshot()
            return
        yield from rec(i + 1)
        u, v = _N6_ARCS[i]
        if miss[u] < 2 and miss[v] < 2:
            b.remove_arc(u, v)
            miss[u] += 1
            miss[v] += 1
            yield from rec(i + 1)
            b.add_arc(u, v)
            miss[u] -= 1
            miss[v] -= 1

    if group is None:
        yield from rec(0)
    elif group == len(_N6_ARCS):
        yield b.snapshot()
    else:
        u, v = _N6_ARCS[group]
        b.remove_arc(u, v)
        miss[u] += 1
        miss[v] += 1
        yield from rec(group + 1)


def count_dense_n6() -> int:
    """Independent count of the 6-vertex family via a capacity-state DP.

    Walks the 30 arc slots once, tracking how many more incidences each
    vertex may lose; never builds a digraph, so it shares nothing with
    the enumerator above.
    """
    states = {(2,) * 6: 1}
    for u, v in _N6_ARCS:
        nxt: dict[tuple[int, ...], int] = {}
        for caps, cnt in states.items():
            nxt[caps] = nxt.get(caps, 0) + cnt
            if caps[u] > 0 and caps[v] > 0:
                lst = list(caps)
                lst[u] -= 1
                lst[v] -= 1
                key = tuple(lst)
                nxt[key] = nxt.get(key, 0) + cnt
        states = nxt
    return sum(states.values())


def n6_instance(d: Digraph) -> Instance:
    return Instance(d=d, w=frozenset(range(6)), n1=3, n2=3)


def parse_gen_spec(text: str, seed: int = 0) -> GenSpec:
    """Parse CLI generator specs like bn:8, random:9,w=7,n1=4,n2=3,arcs=48."""
    if text.strip() == "sweep:n6":
        raise InputError("sweep:n6 is not a single instance; use the verify-n6 command")
    head, _, tail = text.partition(":")
    head = head.strip().lower()
    if head not in ("bn", "random", "n6"):
        raise InputError(f"unknown generator {head!r}; expected bn, random, or n6")
    parts = [p.strip() for p in tail.split(",") if p.strip()]
    if not parts:
        raise InputError(f"generator spec {text!r} is missing its size")
    try:
        n = int(parts[0])
    except ValueError:
        raise InputError(f"generator size must be an integer, got {parts[0]!r}")
    opts: dict[str, int] = {}
    for p in parts[1:]:
        key, eq, val = p.partition("=")
        if not eq:
            raise InputError(f"bad generator option {p!r}; expected key=value")
        try:
            opts[key.strip()] = int(val)
        except ValueError:
            raise InputError(f"generator option {key!r} needs an integer, got {val!r}")
    allowed = {"bn": {"n1", "n2"}, "random": {"w", "n1", "n2", "arcs"}, "n6": {"index"}}
    extra = set(opts) - allowed[head]
    if extra:
        raise InputError(f"options {sorted(extra)} not valid for {head}")
    if ("n1" in opts) != ("n2" in opts):
        raise InputError("n1 and n2 must be given together")
    partition = (opts["n1"], opts["n2"]) if "n1" in opts else None
    if head == "bn":
        return GenSpec(mode=GenMode.BN, n=n, seed=seed, partition=partition)
    if head == "random":
        return GenSpec(mode=GenMode.RANDOM_DENSE, n=n, seed=seed,
                       w_size=opts.get("w"), partition=partition,
                       target_arcs=opts.get("arcs"))
    if n != 6:
        raise InputError("the n6 generator only produces 6-vertex digraphs")
    return GenSpec(mode=GenMode.EXHAUSTIVE_N6, n=6, seed=seed,
                   index=opts.get("index", 0))


def make_instance(spec: GenSpec) -> Instance:
    if spec.mode is GenMode.BN:
        return bn_instance(spec.n, spec.partition)
    if spec.mode is GenMode.RANDOM_DENSE:
        return random_dense(spec.n, spec.seed, spec.w_size, spec.partition,
                            spec.target_arcs)
    idx = spec.index or 0
    for i, d in enumerate(enumerate_dense_n6()):
        if i == idx:
            return n6_instance(d)
    raise InputError(f"n6 index {idx} out of range")
