"""Vectorized backend for the dipath-end table.

Masks are processed one popcount layer at a time; within a layer the
updates for a fixed (end, target) pair touch distinct masks, so plain
fancy-index |= is safe.
"""

import numpy as np


def popcounts(x: np.ndarray) -> np.ndarray:
    x = x.copy()
    c = np.zeros_like(x)
    while x.any():
        c += x & 1
        x >>= 1
    return c


def ham_path_table(local_out: np.ndarray) -> np.ndarray:
    """Same contract as the compiled backend; see _numba.ham_path_table."""
    k = int(local_out.shape[0])
    size = 1 << k
    table = np.zeros(size, dtype=np.int64)
    table[1] = 1
    if k == 1:
        return table
    masks = np.arange(1, size, 2, dtype=np.int64)
    pc = popcounts(masks)
    order = np.argsort(pc, kind="stable")
    sorted_pc = pc[order]
    for layer in range(1, k):
        lo, hi = np.searchsorted(sorted_pc, [layer, layer + 1])
        layer_masks = masks[order[lo:hi]]
        vals = table[layer_masks]
        live = layer_masks[vals != 0]
        if live.size == 0:
            continue
        live_vals = table[live]
        for e in range(k):
            sel = live[((live_vals >> e) & 1) == 1]
            if sel.size == 0:
                continue
            avail = local_out[e] & ~sel
            for t in range(k):
                hit = sel[((avail >> t) & 1) == 1]
                if hit.size:
                    table[hit | (1 << t)] |= 1 << t
    return table
