"""Plain-text instance format.

Line 1: n.  Line 2: the witness vertices, space separated.  Line 3: the
two partition sizes "n1 n2".  Every further non-blank line is one arc
"u v".  Lines starting with '#' are comments.  Parse errors name the
offending 1-based line.
"""

from __future__ import annotations

from .digraph import Digraph, InputError, Instance


def _ints(token_line: str, lineno: int, want: int | None = None) -> list[int]:
    try:
        vals = [int(t) for t in token_line.split()]
    except ValueError:
        raise InputError(f"line {lineno}: expected integers, got {token_line!r}")
    if want is not None and len(vals) != want:
        raise InputError(f"line {lineno}: expected {want} integers, got {len(vals)}")
    return vals


def parse_instance(text: str) -> Instance:
    rows = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    rows = [(no, ln) for no, ln in rows if ln and not ln.startswith("#")]
    if len(rows) < 3:
        raise InputError("instance needs at least 3 content lines (n, W, partition)")
    no_n, ln_n = rows[0]
    n = _ints(ln_n, no_n, want=1)[0]
    no_w, ln_w = rows[1]
    w = _ints(ln_w, no_w)
    if len(set(w)) != len(w):
        raise InputError(f"line {no_w}: witness set repeats a vertex")
    no_p, ln_p = rows[2]
    n1, n2 = _ints(ln_p, no_p, want=2)
    arcs = []
    for no, ln in rows[3:]:
        u, v = _ints(ln, no, want=2)
        arcs.append((u, v))
    try:
        d = Digraph.from_arcs(n, arcs)
        return Instance(d=d, w=frozenset(w), n1=n1, n2=n2)
    except InputError as e:
        raise InputError(str(e)) from None


def format_instance(inst: Instance) -> str:
    lines = [str(inst.d.n),
             " ".join(str(v) for v in sorted(inst.w)),
             f"{inst.n1} {inst.n2}"]
    lines.extend(f"{u} {v}" for u, v in inst.d.arcs())
    return "\n".join(lines) + "\n"


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def dump_instance(inst: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_instance(inst))
