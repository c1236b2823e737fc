"""Hamiltonicity kernels with selectable backend.

DICYCLEPAIR_KERNELS=numba (default) uses the compiled loop; =numpy uses
the vectorized fallback.  Both compute the same dipath-end table; the
drivers here (spanning dicycle, longest dicycle) are backend-agnostic.
Sets of up to 3 vertices are handled by direct checks without a table.
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence

import numpy as np

from ..digraph import InputError
from ._numpy import popcounts

KMAX = 24

_BACKEND = os.environ.get("DICYCLEPAIR_KERNELS", "numba").lower()
if _BACKEND not in ("numba", "numpy"):
    raise InputError(f"DICYCLEPAIR_KERNELS must be 'numba' or 'numpy', got {_BACKEND!r}")
if _BACKEND == "numba":
    try:
        from ._numba import ham_path_table
    except ImportError:
        from ._numpy import ham_path_table
        _BACKEND = "numpy"
else:
    from ._numpy import ham_path_table


def backend() -> str:
    return _BACKEND


def local_graph(out_masks: Sequence[int], vs: Sequence[int]) -> tuple[np.ndarray, list[int]]:
    """Relabel an ascending vertex list to 0..k-1; returns (out rows, in rows)."""
    k = len(vs)
    local_out = np.zeros(k, dtype=np.int64)
    local_in = [0] * k
    for i, v in enumerate(vs):
        row = 0
        m = out_masks[v]
        for j, u in enumerate(vs):
            if m >> u & 1:
                row |= 1 << j
        local_out[i] = row
        for j in range(k):
            if row >> j & 1:
                local_in[j] |= 1 << i
    return local_out, local_in


def spanning_dicycle(out_masks: Sequence[int], sub: Iterable[int]) -> tuple[int, ...] | None:
    """Deterministic spanning dicycle of a vertex set, or None.

    The cycle starts at the smallest vertex; ties in the table walk-back
    are broken toward smaller local ids, so the result is reproducible.
    """
    vs = sorted(set(sub))
    k = len(vs)
    if k < 2:
        return None
    if k == 2:
        a, b = vs
        if out_masks[a] >> b & 1 and out_masks[b] >> a & 1:
            return (a, b)
        return None
    if k == 3:
        a, b, c = vs
        if out_masks[a] >> b & 1 and out_masks[b] >> c & 1 and out_masks[c] >> a & 1:
            return (a, b, c)
        if out_masks[a] >> c & 1 and out_masks[c] >> b & 1 and out_masks[b] >> a & 1:
            return (a, c, b)
        return None
    if k > KMAX:
        raise InputError(f"set of {k} vertices exceeds the kernel cap {KMAX}")
    local_out, local_in = local_graph(out_masks, vs)
    table = ham_path_table(local_out)
    full = (1 << k) - 1
    close_mask = 0
    for v in range(k):
        if int(local_out[v]) & 1:
            close_mask |= 1 << v
    ends = int(table[full]) & close_mask
    if not ends:
        return None
    e = (ends & -ends).bit_length() - 1
    mask = full
    rev = [e]
    while mask != 1:
        pm = mask ^ (1 << e)
        cand = int(table[pm]) & local_in[e]
        e = (cand & -cand).bit_length() - 1
        rev.append(e)
        mask = pm
    return tuple(vs[i] for i in reversed(rev))


def has_spanning_dicycle(out_masks: Sequence[int], sub: Iterable[int]) -> bool:
    return spanning_dicycle(out_masks, sub) is not None


def longest_dicycle(out_masks: Sequence[int], n: int) -> int:
    """Vertex count of a longest directed cycle (2-cycles count); 0 if acyclic.

    One table per canonical start s, restricted to vertices >= s, so each
    cycle is counted from its smallest vertex exactly once.
    """
    if n > KMAX:
        raise InputError(f"n={n} exceeds the kernel cap {KMAX}")
    best = 0
    for s in range(n):
        k = n - s
        if k <= best or k < 2:
            break
        vs = list(range(s, n))
        local_out, _ = local_graph(out_masks, vs)
        table = ham_path_table(local_out)
        close_mask = 0
        for v in range(k):
            if int(local_out[v]) & 1:
                close_mask |= 1 << v
        if close_mask == 0:
            continue
        closeable = np.nonzero(table & np.int64(close_mask))[0]
        if closeable.size:
            got = int(popcounts(closeable.astype(np.int64)).max())
            if got > best:
                best = got
    return best
