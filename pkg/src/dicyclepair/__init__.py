"""Two vertex-disjoint directed cycles with prescribed witness intersections.

The library finds, in a dense digraph with a witness set W and a partition
|W| = n1 + n2, two disjoint directed cycles meeting W in exactly n1 and n2
vertices.  It ships a proof-guided constructive solver with an exact
fallback, instance generators, and verification campaigns.
"""

from .digraph import (
    CycleSeq,
    Digraph,
    DigraphBuilder,
    InputError,
    Instance,
    Mode,
    PathSeq,
    UnderlyingGraphView,
    bits,
    common_directed,
    common_und,
    degree_threshold,
    degrees,
    hypothesis_check,
    lambda_parity,
    mask_of,
    partition_degree_bound,
    seq_violations,
)
from .instance_io import dump_instance, format_instance, load_instance, parse_instance
from .generators import (
    bn_instance,
    bn_unsat_partition,
    build_bn,
    count_dense_n6,
    enumerate_dense_n6,
    make_instance,
    n6_instance,
    parse_gen_spec,
    random_dense,
    random_digraph,
)
from .solver import (
    Certificate,
    SolveOutcome,
    Verdict,
    format_outcome,
    oracle_family,
    oracle_solve,
    parse_outcome,
    solve,
    validate_certificate,
)

__all__ = [
    "CycleSeq",
    "Digraph",
    "DigraphBuilder",
    "InputError",
    "Instance",
    "Mode",
    "PathSeq",
    "UnderlyingGraphView",
    "bits",
    "common_directed",
    "common_und",
    "degree_threshold",
    "degrees",
    "hypothesis_check",
    "lambda_parity",
    "mask_of",
    "partition_degree_bound",
    "seq_violations",
    "dump_instance",
    "format_instance",
    "load_instance",
    "parse_instance",
    "bn_instance",
    "bn_unsat_partition",
    "build_bn",
    "count_dense_n6",
    "enumerate_dense_n6",
    "make_instance",
    "n6_instance",
    "parse_gen_spec",
    "random_dense",
    "random_digraph",
    "Certificate",
    "SolveOutcome",
    "Verdict",
    "format_outcome",
    "oracle_family",
    "oracle_solve",
    "parse_outcome",
    "solve",
    "validate_certificate",
]

__version__ = "0.1.0"
