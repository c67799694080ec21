"""Canonical decision diagrams with typed-variable edge labels.

Models pick which variable types (useless, canalizing, xor) are factored
out of the graph as edge letters and whether complement edges exist; the
most expressive model combines all of them with constant-time negation.
"""

from .connectives import andb, apply, build_expr, cofactor, negb
from .graph import (
    Edge,
    FuncHandle,
    Manager,
    ManagerMismatchError,
    Node,
    dot_export,
    eval_handle,
    intern_diamond,
    prepend,
    signature,
    to_truth_table,
)
from .letters import ALPHABET, C00, C01, C10, C11, ELEMENTARY, N, U, X, Letter
from .metrics import BoundVerdict, SizeReport, check_bounds, measure, node_count
from .oracle import (
    ARITY_LIMIT,
    ArityError,
    OracleLimitError,
    TruthTable,
    apply_functor,
    classify_top,
    combine,
    tt_apply,
    tt_eval,
)
from .queries import all_sat, any_sat, count_sat, equiv, is_sat, is_taut
from .reduction import (
    HASSE_EDGES,
    NUCX,
    PRESETS,
    ModelSpec,
    certify_canonicity,
    compile_table,
    cons_diamond,
    constant,
    elim_letter,
    is_stable,
    lattice_leq,
    neg_conjugate,
    parse_model,
    push_neg,
    reduce,
    translate_letter,
)

__version__ = "0.1.0"
