"""Brute-force dicycle-pair decisions by plain cycle DFS.

Used as the independent cross-check against the oracle: this module walks
simple directed cycles one arc at a time (no bitmask tables, no kernels)
and answers set-membership questions from the collected cycle masks.
Small n only.
"""

from __future__ import annotations

from typing import Sequence


def dicycle_masks(out_masks: Sequence[int], n: int) -> set[int]:
    """Vertex masks of all simple directed cycles (length >= 2).

    Each cycle is discovered as a path starting at its smallest vertex, so
    no cycle is missed and the DFS space stays small.
    """
    found: set[int] = set()
    for s in range(n):
        sbit = 1 << s
        # stack entries: (current vertex, visited mask); two paths sharing
        # (vertex, mask) have identical futures for mask collection, so
        # states are deduped
        stack = [(s, sbit)]
        seen_states = set()
        while stack:
            v, mask = stack.pop()
            if out_masks[v] >> s & 1 and mask != sbit:
                found.add(mask)
            nxt = out_masks[v] & ~mask
            while nxt:
                low = nxt & -nxt
                u = low.bit_length() - 1
                nxt ^= low
                if u < s:
                    continue
                state = (u, mask | low)
                if state not in seen_states:
                    seen_states.add(state)
                    stack.append(state)
    return found


def two_disjoint_exist(out_masks: Sequence[int], n: int, w_mask: int,
                       n1: int, n2: int) -> bool:
    """Do disjoint dicycles with witness counts (n1, n2) exist?"""
    masks = dicycle_masks(out_masks, n)
    by_count: dict[int, list[int]] = {}
    for m in masks:
        by_count.setdefault((m & w_mask).bit_count(), []).append(m)
    firsts = by_count.get(n1, [])
    seconds = by_count.get(n2, [])
    for m1 in firsts:
        for m2 in seconds:
            if not m1 & m2:
                return True
    return False


def family_exists(out_masks: Sequence[int], n: int, w_mask: int,
                  parts: Sequence[int]) -> bool:
    """k-way version: disjoint dicycles with the given witness counts."""
    masks = dicycle_masks(out_masks, n)
    by_count: dict[int, list[int]] = {}
    for m in masks:
        by_count.setdefault((m & w_mask).bit_count(), []).append(m)

    order = sorted(parts, reverse=True)

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        for m in by_count.get(order[i], []):
            if not m & used and rec(i + 1, used | m):
                return True
        return False

    return rec(0, 0)
