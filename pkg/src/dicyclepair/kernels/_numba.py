"""Compiled-loop backend for the dipath-end table."""

import numpy as np
from numba import njit


@njit(cache=True)
def ham_path_table(local_out):
    """table[m] = bitmask of feasible ends of dipaths from local vertex 0 over m.

    local_out[v] is the int64 out-neighbor mask of local vertex v.  Only
    odd m (bit 0 set, the start vertex present) are populated.
    """
    k = local_out.shape[0]
    size = 1 << k
    table = np.zeros(size, dtype=np.int64)
    table[1] = 1
    for m in range(1, size, 2):
        ends = table[m]
        if ends == 0:
            continue
        free = ~m
        for e in range(k):
            if (ends >> e) & 1:
                targets = local_out[e] & free
                for t in range(k):
                    if (targets >> t) & 1:
                        table[m | (1 << t)] |= 1 << t
    return table
