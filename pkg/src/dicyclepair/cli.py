"""Command-line interface.

Verbs: solve, verify-n6, verify-random, sharpness, conjecture-e, lemmas, gen.
Exit codes for solve: 0 = SAT (certificate printed), 1 = UNSAT, 2 = UNKNOWN,
3 = input error.  Campaign verbs exit 0 on PASS and 1 on FAIL; every verb
exits 3 on malformed input.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import campaigns
from .digraph import Digraph, InputError, Instance
from .generators import make_instance, parse_gen_spec
from .instance_io import format_instance, load_instance, parse_instance
from .solver import ORACLE_BUDGET, SolveOutcome, format_outcome, solve

EXIT_SAT = 0
EXIT_UNSAT = 1
EXIT_UNKNOWN = 2
EXIT_INPUT = 3


def strip_outside_arcs(inst: Instance) -> Instance:
    """Drop every arc whose endpoints both avoid the witness set.

    The solver never uses such arcs, so this normalization cannot change
    the verdict; it is applied here (not inside the solver) so certificates
    stay valid in the original digraph.
    """
    keep = [(u, v) for u, v in inst.d.arcs()
            if u in inst.w or v in inst.w]
    return Instance(d=Digraph.from_arcs(inst.d.n, keep),
                    w=inst.w, n1=inst.n1, n2=inst.n2)


def dot_export(inst: Instance, outcome: SolveOutcome) -> str:
    """Graphviz text for the instance; certificate cycles are highlighted."""
    def _arc_set(c):
        vs = c.vertices
        return set(zip(vs, vs[1:] + vs[:1]))

    cyc1, cyc2 = set(), set()
    if outcome.certificate is not None:
        cyc1 = _arc_set(outcome.certificate.c1)
        cyc2 = _arc_set(outcome.certificate.c2)
    lines = ["digraph instance {"]
    for v in range(inst.d.n):
        shape = "doublecircle" if v in inst.w else "circle"
        lines.append(f"  {v} [shape={shape}];")
    for u, v in inst.d.arcs():
        if (u, v) in cyc1:
            lines.append(f"  {u} -> {v} [color=red, penwidth=2.0];")
        elif (u, v) in cyc2:
            lines.append(f"  {u} -> {v} [color=blue, penwidth=2.0];")
        else:
            lines.append(f"  {u} -> {v} [color=gray];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _read_instance(path: str) -> Instance:
    if path == "-":
        return parse_instance(sys.stdin.read())
    return load_instance(path)


def cmd_solve(args: argparse.Namespace) -> int:
    inst = _read_instance(args.instance)
    if args.assume_no_outside_arcs:
        inst = strip_outside_arcs(inst)
    outcome = solve(inst, oracle_only=args.oracle_only,
                    no_fallback=args.no_fallback, oracle_budget=args.budget)
    sys.stdout.write(format_outcome(outcome))
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot_export(inst, outcome))
    return {"SAT": EXIT_SAT, "UNSAT": EXIT_UNSAT,
            "UNKNOWN": EXIT_UNKNOWN}[outcome.verdict.value]


def _emit_report(rep, out_dir: str | None) -> int:
    text = campaigns.format_report(rep)
    sys.stdout.write(text)
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, f"{rep.campaign}.report.txt")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if rep.passed else 1


def cmd_verify_n6(args: argparse.Namespace) -> int:
    rep = campaigns.verify_n6(jobs=args.jobs, out_dir=args.out or ".")
    return _emit_report(rep, args.out)


def cmd_verify_random(args: argparse.Namespace) -> int:
    rep = campaigns.verify_random(seed=args.seed, trials=args.trials,
                                  jobs=args.jobs, out_dir=args.out or ".")
    return _emit_report(rep, args.out)


def cmd_sharpness(args: argparse.Namespace) -> int:
    rep = campaigns.sharpness()
    return _emit_report(rep, args.out)


def cmd_conjecture_e(args: argparse.Namespace) -> int:
    rep = campaigns.conjecture_e(k=args.k, seed=args.seed, trials=args.trials,
                                 jobs=args.jobs, out_dir=args.out or ".",
                                 budget=args.budget)
    return _emit_report(rep, args.out)


def cmd_lemmas(args: argparse.Namespace) -> int:
    rep = campaigns.lemma_suite(seed=args.seed, trials=args.trials)
    return _emit_report(rep, args.out)


def cmd_gen(args: argparse.Namespace) -> int:
    spec = parse_gen_spec(args.spec, seed=args.seed)
    text = format_instance(make_instance(spec))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dicyclepair",
        description="Find two vertex-disjoint dicycles with prescribed "
                    "witness-set intersections in dense digraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance file ('-' = stdin)")
    p.add_argument("instance")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--oracle-only", action="store_true",
                      help="skip the constructive pipeline")
    mode.add_argument("--no-fallback", action="store_true",
                      help="report UNKNOWN instead of falling back to the oracle")
    p.add_argument("--dot", metavar="PATH",
                   help="write a Graphviz file with both cycles highlighted")
    p.add_argument("--assume-no-outside-arcs", action="store_true",
                   help="delete arcs between non-witness vertices before solving")
    p.add_argument("--budget", type=int, default=ORACLE_BUDGET,
                   help="oracle work budget in candidate pairs")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify-n6",
                       help="exhaustive sweep of all dense 6-vertex digraphs")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out", metavar="DIR", default=None)
    p.set_defaults(func=cmd_verify_n6)

    p = sub.add_parser("verify-random",
                       help="randomized guarantee check on dense instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=500,
                   help="instances per order n in 7..11")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out", metavar="DIR", default=None)
    p.set_defaults(func=cmd_verify_random)

    p = sub.add_parser("sharpness",
                       help="tight-family checks for n in {8, 10, 12}")
    p.add_argument("--out", metavar="DIR", default=None)
    p.set_defaults(func=cmd_sharpness)

    p = sub.add_parser("conjecture-e",
                       help="search for k-family counterexamples (k >= 3)")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out", metavar="DIR", default=None)
    p.add_argument("--budget", type=int, default=300_000)
    p.set_defaults(func=cmd_conjecture_e)

    p = sub.add_parser("lemmas",
                       help="randomized property checks for the path lemmas")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--out", metavar="DIR", default=None)
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("gen", help="generate one instance from a spec string")
    p.add_argument("spec", help="e.g. bn:8 | random:9,w=7,n1=3,n2=4 | n6:6,index=17")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="FILE", default=None)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
