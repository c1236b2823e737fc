"""Solver pipeline, exact oracle, certificates, and output format."""

import random

import pytest

import oracles
from dicyclepair import (
    CycleSeq,
    Digraph,
    InputError,
    Instance,
    Mode,
    bn_instance,
    format_outcome,
    mask_of,
    oracle_family,
    oracle_solve,
    parse_outcome,
    random_dense,
    random_digraph,
    solve,
    validate_certificate,
)
from dicyclepair import brute
from dicyclepair.solver import (
    METHOD_ORACLE,
    METHOD_PROOF_GUIDED,
    Certificate,
    Verdict,
    close_split,
    optimize_split,
    split_cover,
    w_cover_path,
)


def test_w_cover_path_covers_witnesses():
    for seed in range(30):
        inst = random_dense(8 + seed % 3, seed=seed)
        cov = w_cover_path(inst)
        assert cov.stalls == ()
        assert cov.path is not None
        assert inst.w_mask & cov.path.vset_mask == inst.w_mask
        assert cov.path.mode is Mode.UND_PATH


def test_split_cover_partitions_witnesses():
    inst = random_dense(9, seed=4)
    cov = w_cover_path(inst)
    st = split_cover(cov.path, inst)
    assert st.p1.w_len == inst.n1 and st.p2.w_len == inst.n2
    assert st.p1.vset_mask & st.p2.vset_mask == 0
    assert not st.reservoir & inst.w
    # ends of both paths are witness vertices after trimming
    for p in (st.p1, st.p2):
        assert inst.w_mask >> p.front & 1 and inst.w_mask >> p.back & 1


def test_optimize_split_never_worsens():
    for seed in range(20):
        inst = random_dense(10, seed=seed + 50)
        cov = w_cover_path(inst)
        st = split_cover(cov.path, inst)
        before = st.potential(inst.d.und)
        opt = optimize_split(st, inst)
        assert opt.potential(inst.d.und) <= before
        assert opt.p1.w_len == inst.n1 and opt.p2.w_len == inst.n2


def test_close_split_produces_disjoint_dicycles():
    closed = 0
    for seed in range(40):
        inst = random_dense(9, seed=seed + 100)
        cov = w_cover_path(inst)
        st = optimize_split(split_cover(cov.path, inst), inst)
        res = close_split(st, inst)
        if res.sat:
            closed += 1
            ok, problems = validate_certificate(inst, res.certificate)
            assert ok, problems
    assert closed >= 30  # the constructive route closes nearly everything


def test_solve_proof_guided_on_dense_instances():
    fallbacks = 0
    for seed in range(60):
        inst = random_dense(7 + seed % 5, seed=seed)
        out = solve(inst)
        assert out.verdict is Verdict.SAT
        ok, problems = validate_certificate(inst, out.certificate)
        assert ok, problems
        if out.certificate.method == METHOD_ORACLE:
            fallbacks += 1
    assert fallbacks <= 6  # the pipeline itself should carry the load


def test_solve_flags_are_exclusive():
    inst = random_dense(7, seed=1)
    with pytest.raises(InputError):
        solve(inst, oracle_only=True, no_fallback=True)


def test_solve_no_fallback_reports_unknown_on_stall():
    inst = bn_instance(8)  # (5,3) on the tight family: no cover/close route
    out = solve(inst, no_fallback=True)
    assert out.verdict is Verdict.UNKNOWN
    assert out.stalls != ()


def test_oracle_matches_brute_force_small():
    rng = random.Random(11)
    agree = 0
    for _ in range(300):
        n = rng.randint(6, 7)
        d = random_digraph(n, rng.choice((0.2, 0.5, 0.8)), rng)
        w_size = rng.randint(6, n)
        w = frozenset(rng.sample(range(n), w_size))
        n1 = rng.randint(3, w_size - 3)
        inst = Instance(d=d, w=w, n1=n1, n2=w_size - n1)
        out = oracle_solve(inst)
        ref = brute.two_disjoint_exist(d.out_masks, n, inst.w_mask, n1, w_size - n1)
        assert (out.verdict is Verdict.SAT) == ref
        ref2 = oracles.two_disjoint_dicycles_subsets(d.out_masks, n, w, n1, w_size - n1)
        assert ref == ref2
        if out.verdict is Verdict.SAT:
            ok, problems = validate_certificate(inst, out.certificate)
            assert ok, problems
        agree += 1
    assert agree == 300


def test_oracle_tight_family_partitions():
    assert oracle_solve(bn_instance(8, (5, 3))).verdict is Verdict.UNSAT
    assert oracle_solve(bn_instance(8, (4, 4))).verdict is Verdict.SAT
    assert solve(bn_instance(8, (5, 3))).verdict is Verdict.UNSAT
    assert solve(bn_instance(8, (4, 4))).verdict is Verdict.SAT


def test_oracle_unknown_paths():
    # vertex-count cap
    big = Instance(d=Digraph.complete(30), w=frozenset(range(6)), n1=3, n2=3)
    out = oracle_solve(big)
    assert out.verdict is Verdict.UNKNOWN
    assert any("n_cap" in s for s in out.stalls)
    # pair budget: a SAT-rich complete digraph burns pairs fast
    rich = Instance(d=Digraph.complete(12), w=frozenset(range(12)), n1=6, n2=6)
    out2 = oracle_solve(rich, budget=0)
    assert out2.verdict is Verdict.UNKNOWN
    assert any("budget" in s for s in out2.stalls)


def test_oracle_certificates_deterministic_lex_first():
    inst = Instance(d=Digraph.complete(8), w=frozenset(range(6)), n1=3, n2=3)
    out = oracle_solve(inst)
    assert out.verdict is Verdict.SAT
    # smallest witness triple on each side, no extras, canonical rotation
    assert out.certificate.c1.vertices == (0, 1, 2)
    assert out.certificate.c2.vertices == (3, 4, 5)


def test_oracle_family_matches_brute():
    rng = random.Random(21)
    for _ in range(60):
        n = rng.randint(9, 10)
        d = random_digraph(n, rng.choice((0.5, 0.8)), rng)
        w = frozenset(rng.sample(range(n), 9))
        parts = (3, 3, 3)
        out = oracle_family(d, w, parts, budget=10_000_000)
        ref = brute.family_exists(d.out_masks, n, mask_of(w), parts)
        assert (out.verdict is Verdict.SAT) == ref
        if out.verdict is Verdict.SAT:
            cycles = out.oracle_stats["cycles"]
            seen = set()
            for cyc, want in zip(cycles, parts):
                vs = set(cyc)
                assert not vs & seen
                seen |= vs
                assert len([v for v in vs if v in w]) == want
                k = len(cyc)
                assert all(d.has_arc(cyc[i], cyc[(i + 1) % k]) for i in range(k))


def test_validate_certificate_rejects_corruption():
    inst = random_dense(8, seed=9)
    out = solve(inst)
    cert = out.certificate
    ok, _ = validate_certificate(inst, cert)
    assert ok
    # overlapping cycles
    bad = Certificate(c1=cert.c1, c2=cert.c1, method=cert.method)
    ok, problems = validate_certificate(inst, bad)
    assert not ok and problems
    # wrong witness count: swap the two cycles' roles
    if cert.c1.w_len != cert.c2.w_len:
        swapped = Certificate(c1=cert.c2, c2=cert.c1, method=cert.method)
        ok, problems = validate_certificate(inst, swapped)
        assert not ok
    # broken arc: reverse one cycle
    rev = CycleSeq(tuple(reversed(cert.c1.vertices)), Mode.DICYCLE,
                   inst.w_mask)
    maybe = Certificate(c1=rev, c2=cert.c2, method=cert.method)
    ok_rev, _ = validate_certificate(inst, maybe)
    arcs_ok = all(inst.d.has_arc(rev.vertices[i],
                                 rev.vertices[(i + 1) % len(rev)])
                  for i in range(len(rev)))
    assert ok_rev == arcs_ok


def test_outcome_format_roundtrip():
    inst = random_dense(9, seed=33)
    out = solve(inst)
    text = format_outcome(out)
    lines = text.splitlines()
    assert lines[0].startswith("verdict: ")
    assert [ln.split(":")[0] for ln in lines] == \
        ["verdict", "method", "cycle1", "cycle2", "stalls"]
    back = parse_outcome(text, w_mask=inst.w_mask)
    assert back.verdict is out.verdict
    assert back.certificate.c1.vertices == out.certificate.c1.vertices
    assert back.certificate.c2.vertices == out.certificate.c2.vertices
    # byte determinism of repeated solves
    assert format_outcome(solve(inst)) == text


def test_unsat_outcome_roundtrip():
    out = solve(bn_instance(8))
    text = format_outcome(out)
    back = parse_outcome(text)
    assert back.verdict is Verdict.UNSAT and back.certificate is None


def test_solve_records_fallback_stats():
    # a hypothesis-free digraph where the cover stalls but the oracle decides
    d = Digraph.from_arcs(6, [(u, v) for u in range(6) for v in range(6)
                              if u != v and {u, v} != {0, 1} and {u, v} != {2, 3}
                              and {u, v} != {4, 5}])
    inst = Instance(d=d, w=frozenset(range(6)), n1=3, n2=3)
    out = solve(inst)
    ref = brute.two_disjoint_exist(d.out_masks, 6, inst.w_mask, 3, 3)
    assert (out.verdict is Verdict.SAT) == ref
    if out.certificate is not None and out.stalls:
        assert out.certificate.stats.get("fallback") == 1
