"""Core digraph types: masks, degrees, sequences, validators, instance IO."""

import random

import pytest

from dicyclepair import (
    CycleSeq,
    Digraph,
    DigraphBuilder,
    InputError,
    Instance,
    Mode,
    PathSeq,
    bits,
    common_directed,
    common_und,
    degree_threshold,
    degrees,
    dump_instance,
    format_instance,
    hypothesis_check,
    lambda_parity,
    load_instance,
    mask_of,
    parse_instance,
    partition_degree_bound,
    seq_violations,
)


def test_mask_helpers():
    assert mask_of([0, 2, 5]) == 0b100101
    assert list(bits(0b100101)) == [0, 2, 5]
    assert mask_of([]) == 0
    assert list(bits(0)) == []


def test_lambda_parity():
    assert [lambda_parity(m) for m in range(6, 14)] == [0, 1, 0, 1, 0, 1, 0, 1]


def test_degree_threshold_table():
    # ceil((3n - 3) / 2) for n = 6..13
    want = {6: 8, 7: 9, 8: 11, 9: 12, 10: 14, 11: 15, 12: 17, 13: 18}
    for n, t in want.items():
        assert degree_threshold(n) == t
        assert t == -((3 * n - 3) // -2)
        assert t == (3 * n - 2 - lambda_parity(n)) // 2


def test_digraph_construction_and_views():
    d = Digraph.from_arcs(4, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 1)])
    assert d.has_arc(0, 1) and d.has_arc(1, 0) and not d.has_arc(2, 1)
    assert d.arc_count() == 5
    assert sorted(d.arcs()) == [(0, 1), (1, 0), (1, 2), (2, 3), (3, 1)]
    assert d.total_degree(1) == 4  # in: 0,3  out: 0,2
    assert d.und.has_edge(0, 1) and not d.und.has_edge(1, 2)
    assert d.und.degree(1) == 1
    assert d.reversed().has_arc(1, 2) is False and d.reversed().has_arc(2, 1)
    assert d.reversed().reversed() == d


def test_digraph_complete():
    d = Digraph.complete(5)
    assert d.arc_count() == 20
    assert all(d.total_degree(v) == 8 for v in range(5))
    assert d.und.edge_count == 10


def test_digraph_rejects_bad_arcs():
    with pytest.raises(InputError):
        Digraph.from_arcs(3, [(0, 3)])
    with pytest.raises(InputError):
        Digraph.from_arcs(3, [(1, 1)])
    with pytest.raises(InputError):
        Digraph.from_arcs(65, [])


def test_builder_roundtrip():
    b = DigraphBuilder.complete(4)
    b.remove_arc(0, 1)
    b.remove_arc(1, 0)
    d = b.snapshot()
    assert not d.has_arc(0, 1) and not d.has_arc(1, 0)
    assert d.arc_count() == 10
    b.add_arc(0, 1)
    assert b.snapshot().arc_count() == 11
    assert d.arc_count() == 10  # snapshot unaffected by later edits


def test_degrees_counts_bidirected_twice():
    d = Digraph.from_arcs(5, [(0, 1), (1, 0), (0, 2), (3, 0), (0, 4), (4, 0)])
    a_plus, a_minus, a, d_und = degrees(d, 0, range(5))
    assert (a_plus, a_minus, a, d_und) == (3, 3, 6, 2)
    # restricted scope drops vertex 4 and ignores x itself
    a_plus, a_minus, a, d_und = degrees(d, 0, [0, 1, 2])
    assert (a_plus, a_minus, a, d_und) == (2, 1, 3, 1)


def test_common_sets():
    d = Digraph.from_arcs(5, [(0, 2), (2, 0), (1, 2), (2, 1),
                              (0, 3), (3, 0), (1, 3),
                              (0, 4), (4, 1)])
    assert common_und(d, 0, 1, range(5)) == {2}
    assert common_directed(d, 0, 1, range(5)) == {2, 4}
    with pytest.raises(InputError):
        common_und(d, 0, 0, range(5))


def test_instance_validation():
    d = Digraph.complete(7)
    inst = Instance(d=d, w=frozenset(range(6)), n1=3, n2=3)
    assert inst.n == 7 and inst.w_mask == 0b111111
    assert inst.threshold == degree_threshold(7)
    with pytest.raises(InputError):
        Instance(d=d, w=frozenset(range(6)), n1=2, n2=4)
    with pytest.raises(InputError):
        Instance(d=d, w=frozenset(range(6)), n1=3, n2=4)
    with pytest.raises(InputError):
        Instance(d=d, w=frozenset({0, 1, 2, 3, 4, 9}), n1=3, n2=3)
    with pytest.raises(InputError):
        Instance(d=Digraph.complete(5), w=frozenset(range(5)), n1=3, n2=2)


def test_hypothesis_check_reports_violators():
    good = Instance(d=Digraph.complete(7), w=frozenset(range(6)), n1=3, n2=3)
    assert hypothesis_check(good).ok
    b = DigraphBuilder.complete(7)
    for u in range(1, 7):
        b.remove_arc(0, u)
    bad = Instance(d=b.snapshot(), w=frozenset(range(6)), n1=3, n2=3)
    rep = hypothesis_check(bad)
    assert not rep.ok and rep.violators == (0,)
    assert rep.threshold == 9


def test_pathseq_basics():
    p = PathSeq((3, 1, 4), Mode.UND_PATH, w_mask=0b01010)
    assert p.length == 3 and p.front == 3 and p.back == 4
    assert p.w_len == 2  # vertices 1 and 3
    assert p.reversed().vertices == (4, 1, 3)
    assert p.drop_end(3).vertices == (1, 4)
    assert p.drop_end(4).vertices == (3, 1)
    assert 1 in p and 0 not in p
    with pytest.raises(InputError):
        PathSeq((1, 1, 2), Mode.UND_PATH)
    with pytest.raises(InputError):
        p.drop_end(1)


def test_cycleseq_rotation_and_neighbors():
    c = CycleSeq((4, 2, 7, 5), Mode.DICYCLE)
    assert c.successor(5) == 4 and c.predecessor(4) == 5
    assert c.rotated_to_min().vertices == (2, 7, 5, 4)
    assert c.rotated_to_min().rotated_to_min() == c.rotated_to_min()
    with pytest.raises(InputError):
        CycleSeq((3,), Mode.DICYCLE)


def test_seq_violations_modes():
    d = Digraph.from_arcs(4, [(0, 1), (1, 2), (2, 0),
                              (2, 3), (3, 2)])
    assert seq_violations(d, PathSeq((0, 1, 2), Mode.DIPATH)) == []
    assert seq_violations(d, PathSeq((2, 1, 0), Mode.DIPATH)) != []
    assert seq_violations(d, PathSeq((2, 3), Mode.UND_PATH)) == []
    assert seq_violations(d, PathSeq((0, 1), Mode.UND_PATH)) != []
    assert seq_violations(d, CycleSeq((0, 1, 2), Mode.DICYCLE)) == []
    assert seq_violations(d, CycleSeq((0, 2, 1), Mode.DICYCLE)) != []
    assert seq_violations(d, CycleSeq((2, 3), Mode.DICYCLE)) == []
    # a lone bidirected pair is not a cycle in the underlying simple graph
    assert seq_violations(d, CycleSeq((2, 3), Mode.UND_CYCLE)) != []


def test_seq_violations_checks_w_len():
    d = Digraph.complete(4)
    p = PathSeq((0, 1, 2), Mode.UND_PATH, w_mask=0b0110)
    assert p.w_len == 2
    assert seq_violations(d, p) == []
    forged = PathSeq((0, 3), Mode.UND_PATH, w_mask=0b0110)
    object.__setattr__(forged, "w_len", 2)
    assert any("w_len" in v or "witness" in v for v in seq_violations(d, forged))


def test_partition_bound_arithmetic():
    # complete digraph with X = {u}: a(u, X) = 0 <= |X| - 1 holds
    d = Digraph.complete(8)
    rep = partition_degree_bound(d, 0, [0])
    assert rep.ok
    assert rep.n == 8 and rep.lam == 0
    assert rep.a_u == 14 and rep.a_u_x == 0
    assert rep.a_u_y_lower == (3 * 7 + 1) // 2 and rep.bound == 4
    # a bigger X in a complete digraph is too rich: a(u, X) > |X| - 1
    rep_rich = partition_degree_bound(d, 0, range(8))
    assert not rep_rich.ok and "a(u,X)" in rep_rich.failed
    with pytest.raises(InputError):
        partition_degree_bound(d, 0, [1, 2])


def test_partition_bound_numbers_follow_formula():
    rng = random.Random(8)
    from dicyclepair import random_dense

    for trial in range(50):
        inst = random_dense(rng.randint(7, 10), seed=rng.getrandbits(32))
        n = inst.n
        u = rng.choice(sorted(inst.w))
        others = [v for v in range(n) if v != u]
        x_side = {u} | set(rng.sample(others, rng.randint(0, n - 2)))
        rep = partition_degree_bound(inst.d, u, x_side)
        lam = lambda_parity(n)
        y = n - len(x_side)
        assert rep.a_u_y_lower == (3 * y + len(x_side) - lam) // 2
        assert rep.bound == (n - lam) // 2
        if rep.ok:
            _, _, a_uy, d_uy = degrees(inst.d, u,
                                       [v for v in range(n) if v not in x_side])
            assert a_uy >= rep.a_u_y_lower
            assert d_uy >= rep.bound


def test_instance_text_roundtrip(tmp_path):
    d = Digraph.from_arcs(7, [(u, v) for u in range(7) for v in range(7)
                              if u != v and (u + v) % 3])
    inst = Instance(d=d, w=frozenset({0, 1, 2, 3, 5, 6}), n1=3, n2=3)
    text = format_instance(inst)
    again = parse_instance(text)
    assert again == inst
    path = tmp_path / "inst.txt"
    dump_instance(inst, path)
    assert load_instance(path) == inst
    assert format_instance(load_instance(path)) == text


def test_parse_instance_errors_name_lines():
    with pytest.raises(InputError, match="line 1"):
        parse_instance("x\n0 1 2 3 4 5\n3 3\n")
    with pytest.raises(InputError, match="line 4"):
        parse_instance("6\n0 1 2 3 4 5\n3 3\n0 1 2\n")
    with pytest.raises(InputError):
        parse_instance("")


def test_parse_instance_allows_comments_and_blanks():
    text = "# header\n7\n\n0 1 2 3 4 5\n3 3\n# arcs\n0 1\n1 0\n"
    inst = parse_instance(text)
    assert inst.n == 7 and inst.d.arc_count() == 2
