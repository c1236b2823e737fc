"""Dipath-end tables and cycle drivers: backend parity and oracle agreement."""

import os
import random
import subprocess
import sys

import numpy as np
import pytest

import oracles
from dicyclepair import kernels
from dicyclepair.digraph import InputError
from dicyclepair.kernels import _numba, _numpy


def _random_local(rng, k, p):
    rows = np.zeros(k, dtype=np.int64)
    for u in range(k):
        row = 0
        for v in range(k):
            if u != v and rng.random() < p:
                row |= 1 << v
        rows[u] = row
    return rows


def test_table_matches_permutation_reference():
    rng = random.Random(101)
    for _ in range(120):
        k = rng.randint(1, 6)
        local_out = _random_local(rng, k, rng.choice((0.2, 0.5, 0.8)))
        table = kernels.ham_path_table(local_out)
        for mask in range(1, 1 << k, 2):
            assert int(table[mask]) == oracles.ham_path_ends_perms(
                [int(r) for r in local_out], mask), (list(local_out), mask)


def test_backends_agree_exactly():
    rng = random.Random(202)
    for _ in range(80):
        k = rng.randint(1, 9)
        local_out = _random_local(rng, k, rng.random())
        ta = _numba.ham_path_table(local_out)
        tb = _numpy.ham_path_table(local_out)
        assert np.array_equal(np.asarray(ta), np.asarray(tb))


def test_backend_env_flag_selects_numpy():
    env = dict(os.environ, DICYCLEPAIR_KERNELS="numpy")
    out = subprocess.run(
        [sys.executable, "-c",
         "import dicyclepair.kernels as k; print(k.backend())"],
        capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "numpy"


def test_backend_env_flag_rejects_garbage():
    env = dict(os.environ, DICYCLEPAIR_KERNELS="fortran")
    out = subprocess.run(
        [sys.executable, "-c", "import dicyclepair.kernels"],
        capture_output=True, text=True, env=env)
    assert out.returncode != 0
    assert "DICYCLEPAIR_KERNELS" in out.stderr


def test_spanning_dicycle_agrees_with_permutations():
    rng = random.Random(303)
    for _ in range(200):
        n = rng.randint(2, 7)
        p = rng.choice((0.2, 0.4, 0.6, 0.9))
        out_masks = [int(r) for r in _random_local(rng, n, p)]
        size = rng.randint(2, n)
        sub = rng.sample(range(n), size)
        got = kernels.spanning_dicycle(out_masks, sub)
        ref = oracles.spanning_dicycle_perms(out_masks, sub)
        assert (got is None) == (ref is None), (out_masks, sub)
        if got is not None:
            assert sorted(got) == sorted(set(sub))
            k = len(got)
            assert all(out_masks[got[i]] >> got[(i + 1) % k] & 1 for i in range(k))
            assert got[0] == min(sub)


def test_spanning_dicycle_small_sets():
    out_masks = [0b0110, 0b0100, 0b0011, 0b0100]
    # digon on {1, 2}; triangle 0->1->2->0
    assert kernels.spanning_dicycle(out_masks, [1, 2]) == (1, 2)
    assert kernels.spanning_dicycle(out_masks, [0, 1, 2]) == (0, 1, 2)
    assert kernels.spanning_dicycle(out_masks, [0, 1]) is None
    assert kernels.spanning_dicycle(out_masks, [0]) is None
    # reversed triangle comes out in the other orientation
    rev = [0b0100, 0b0001, 0b0010]
    assert kernels.spanning_dicycle(rev, [0, 1, 2]) == (0, 2, 1)


def test_spanning_dicycle_deterministic():
    rng = random.Random(404)
    for _ in range(50):
        n = rng.randint(4, 8)
        out_masks = [int(r) for r in _random_local(rng, n, 0.6)]
        sub = rng.sample(range(n), rng.randint(4, n))
        first = kernels.spanning_dicycle(out_masks, sub)
        again = kernels.spanning_dicycle(out_masks, list(reversed(sub)))
        assert first == again


def test_longest_dicycle_agrees_with_permutations():
    rng = random.Random(505)
    for _ in range(150):
        n = rng.randint(1, 6)
        out_masks = [int(r) for r in _random_local(rng, n, rng.random())]
        assert kernels.longest_dicycle(out_masks, n) == \
            oracles.longest_dicycle_perms(out_masks, n)


def test_longest_dicycle_known_values():
    assert kernels.longest_dicycle([0] * 4, 4) == 0
    ring = [1 << ((v + 1) % 5) for v in range(5)]
    assert kernels.longest_dicycle(ring, 5) == 5
    digon = [0b010, 0b001, 0]
    assert kernels.longest_dicycle(digon, 3) == 2


def test_kernel_caps():
    with pytest.raises(InputError):
        kernels.spanning_dicycle([0] * 30, range(25))
    with pytest.raises(InputError):
        kernels.longest_dicycle([0] * 30, 30)


def test_local_graph_relabels():
    out_masks = [0, 0b10100, 0, 0b00010, 0b01000]
    local_out, local_in = kernels.local_graph(out_masks, [1, 3, 4])
    # 1->4, 3->1, 4->3 become 0->2, 1->0, 2->1
    assert [int(r) for r in local_out] == [0b100, 0b001, 0b010]
    assert local_in == [0b010, 0b100, 0b001]
