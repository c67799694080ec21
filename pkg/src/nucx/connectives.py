"""Boolean operations on reduced graphs.

Results stay reduced: recursion bottoms out on constants and recombines
cofactors through the normalized constructor.  All binary operations are
memoized on ordered pairs of edge identities inside the operands'
manager, so repeated subproblems across calls are free.

In complement-bearing models negation is a constant-time mark toggle;
in mark-free models it is a memoized terminal-swapping descent.
"""

from __future__ import annotations

from .graph import (
    Edge,
    FuncHandle,
    Manager,
    ManagerMismatchError,
    intern_diamond,
    prepend_letter,
)
from .letters import N, U, X
from .oracle import ARITY_LIMIT, ArityError, TruthTable
from .reduction import (
    ModelSpec,
    compile_table,
    cons_diamond,
    constant,
    negate_reduced,
    push_neg,
    reduce,
)


def _require_model(handle: FuncHandle) -> ModelSpec:
    if handle.model is None:
        raise ValueError("operation requires a reduced handle "
                         "(no model recorded)")
    return handle.model


def _require_pair(a: FuncHandle, b: FuncHandle) -> tuple[ModelSpec, Manager]:
    model = _require_model(a)
    if a.manager is not b.manager:
        raise ManagerMismatchError("operands live in different managers")
    if b.model != model:
        other = b.model.name if b.model is not None else "raw"
        raise ValueError(f"operands reduced under different models: "
                         f"{model.name} vs {other}")
    if a.arity != b.arity:
        raise ArityError(f"arity mismatch: {a.arity} vs {b.arity}")
    return model, a.manager


def _cofactor_elem(v0: int, edge: Edge, model: ModelSpec) -> Edge:
    word = edge.word
    if word:
        first = word[0]
        rest = edge.manager.edge(word[1:], edge.node)
        if first is U:
            return rest
        if first is X:
            return push_neg(rest) if v0 else rest
        if v0 == first.branch:
            return constant(model, edge.manager, first.const, edge.arity - 1)
        return rest
    node = edge.node
    return node.hi if v0 else node.lo


def _cofactor_edge(v0: int, edge: Edge, model: ModelSpec) -> Edge:
    if edge.word and edge.word[0] is N:
        return push_neg(_cofactor_elem(v0, push_neg(edge), model))
    return _cofactor_elem(v0, edge, model)


def cofactor(v0: int, handle: FuncHandle) -> FuncHandle:
    """Restrict the first variable to ``v0``; one O(1) step on a
    reduced graph."""
    if handle.arity < 1:
        raise ArityError("cannot cofactor a constant")
    model = _require_model(handle)
    edge = _cofactor_edge(1 if v0 else 0, handle.edge, model)
    return FuncHandle(edge, handle.arity - 1, model)


def _neg_edge(model: ModelSpec, edge: Edge) -> Edge:
    if model.negation:
        return push_neg(edge)
    return negate_reduced(model, edge)


def negb(handle: FuncHandle) -> FuncHandle:
    """Complement; constant-time in complement-bearing models."""
    model = _require_model(handle)
    return FuncHandle(_neg_edge(model, handle.edge), handle.arity, model)


def _andb(x: Edge, y: Edge, model: ModelSpec, manager: Manager) -> Edge:
    if x is y:
        return x
    if x is push_neg(y):
        return constant(model, manager, 0, x.arity)
    arity = x.arity
    zero = constant(model, manager, 0, arity)
    if x is zero or y is zero:
        return zero
    one = constant(model, manager, 1, arity)
    if x is one:
        return y
    if y is one:
        return x
    memo = manager.cache("andb")
    key = (model, x, y)
    found = memo.get(key)
    if found is not None:
        return found
    manager.bump("andb_pairs")
    lo = _andb(_cofactor_edge(0, x, model), _cofactor_edge(0, y, model),
               model, manager)
    hi = _andb(_cofactor_edge(1, x, model), _cofactor_edge(1, y, model),
               model, manager)
    found = memo[key] = cons_diamond(model, lo, hi)
    return found


def andb(a: FuncHandle, b: FuncHandle) -> FuncHandle:
    """Conjunction of two reduced graphs from one manager."""
    model, manager = _require_pair(a, b)
    return FuncHandle(_andb(a.edge, b.edge, model, manager), a.arity, model)


def _xorb(x: Edge, y: Edge, model: ModelSpec, manager: Manager) -> Edge:
    if x is y:
        return constant(model, manager, 0, x.arity)
    if x is push_neg(y):
        return constant(model, manager, 1, x.arity)
    arity = x.arity
    zero = constant(model, manager, 0, arity)
    if x is zero:
        return y
    if y is zero:
        return x
    one = constant(model, manager, 1, arity)
    if x is one:
        return _neg_edge(model, y)
    if y is one:
        return _neg_edge(model, x)
    memo = manager.cache("xorb")
    key = (model, x, y)
    found = memo.get(key)
    if found is not None:
        return found
    lo = _xorb(_cofactor_edge(0, x, model), _cofactor_edge(0, y, model),
               model, manager)
    hi = _xorb(_cofactor_edge(1, x, model), _cofactor_edge(1, y, model),
               model, manager)
    found = memo[key] = cons_diamond(model, lo, hi)
    return found


def apply(op: str, a: FuncHandle, b: FuncHandle) -> FuncHandle:
    """Binary connective: ``and``, ``or``, ``xor`` or ``implies``."""
    if op == "and":
        return andb(a, b)
    if op == "or":
        return negb(andb(negb(a), negb(b)))
    if op == "implies":
        return negb(andb(a, negb(b)))
    if op == "xor":
        model, manager = _require_pair(a, b)
        return FuncHandle(_xorb(a.edge, b.edge, model, manager),
                          a.arity, model)
    raise ValueError(f"unknown operation {op!r}")


def projection(model: ModelSpec, manager: Manager, index: int,
               arity: int) -> FuncHandle:
    """Canonical graph of the variable ``x<index>`` at the given arity."""
    if not 0 <= index < arity:
        raise ValueError(f"variable index {index} out of range for "
                         f"arity {arity}")
    if arity <= ARITY_LIMIT:
        return compile_table(model, TruthTable.projection(arity, index),
                             manager)
    # beyond the dense-oracle cap: normalize the raw branch graph instead
    lo, hi = manager.zero, manager.one
    for _ in range(arity - index - 1):
        lo = prepend_letter(U, lo)
        hi = prepend_letter(U, hi)
    edge = intern_diamond(manager, lo, hi)
    for _ in range(index):
        edge = prepend_letter(U, edge)
    return reduce(model, FuncHandle(edge, arity))


def build_expr(model: ModelSpec, ast, arity: int,
               manager: Manager) -> FuncHandle:
    """Evaluate an expression tree to a reduced graph.

    Nodes are tuples: ``("const", 0|1)``, ``("var", i)``, ``("not", e)``
    and ``("and"|"or"|"xor", e1, e2)``.
    """
    kind = ast[0]
    if kind == "const":
        edge = constant(model, manager, ast[1], arity)
        return FuncHandle(edge, arity, model)
    if kind == "var":
        return projection(model, manager, ast[1], arity)
    if kind == "not":
        return negb(build_expr(model, ast[1], arity, manager))
    if kind in ("and", "or", "xor"):
        left = build_expr(model, ast[1], arity, manager)
        right = build_expr(model, ast[2], arity, manager)
        return apply(kind, left, right)
    raise ValueError(f"unknown expression node {kind!r}")
