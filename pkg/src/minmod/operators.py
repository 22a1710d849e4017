"""Eliminating operators and the constructions behind them.

An eliminating operator maps a positive theory and one of its models ``M`` to
a non-empty set ``E`` with ``M - E`` still a model, or to the empty set when
``M`` is minimal.  Three are provided:

``exp``
    exhaustive search; always correct, exponential.
``hcf``
    removes a source component of the simplified theory's dependency graph;
    correct and polynomial on head-cycle-free theories.
``hef``
    removes worthless atoms and then a super-elementary set; polynomial, and
    correct on head-elementary-set-free theories.  On other theories it can
    return a set whose removal breaks the model.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import AbstractSet, Callable

from minmod import kernels
from minmod.core import Clause, MinmodError, NotAModel, Theory, first_violated
from minmod.graphs import dependency_graph, elementary_subgraph, is_hcf, scc_condensation
from minmod.horn import steady_set

Operator = Callable[[Theory, AbstractSet[int]], frozenset]


class PreconditionViolated(MinmodError):
    pass


class NotHCF(MinmodError):
    pass


@dataclass(frozen=True)
class SimplifiedTheory:
    theory: Theory
    carrier: frozenset     # M - S
    steady: frozenset      # S
    origin: tuple          # origin[k] = index in the source theory of clause k


def _require_model(theory: Theory, model: frozenset):
    bad = first_violated(theory, model)
    if bad is not None:
        raise NotAModel(f"clause {bad} is false in the given interpretation")


def _simplify(theory: Theory, model: frozenset, steady: frozenset) -> SimplifiedTheory:
    carrier = model - steady
    clauses = []
    origin = []
    for i, c in enumerate(theory.clauses):
        if not c.head.isdisjoint(steady) or not c.body <= model:
            continue
        head = c.head & carrier
        if not head:
            continue
        clauses.append(Clause(head, c.body & carrier))
        origin.append(i)
    assert not any(c.is_fact for c in clauses), "simplified theory has a fact"
    return SimplifiedTheory(theory.derive(clauses), carrier, steady, tuple(origin))


def simplified_theory(theory: Theory, model: AbstractSet[int]) -> SimplifiedTheory:
    model = frozenset(model)
    s = steady_set(theory, model)
    return _simplify(theory, model, s)


def _horn_atoms(theory: Theory) -> frozenset:
    out: set[int] = set()
    for c in theory.clauses:
        if c.is_horn:
            out.update(c.head)
            out.update(c.body)
    return frozenset(out)


@dataclass(frozen=True)
class SelSearch:
    result: frozenset
    removed: tuple         # components removed, in order


def sel_set_search(theory: Theory) -> SelSearch:
    if not theory.clauses:
        raise PreconditionViolated("find_sel_set needs a non-empty theory")
    x = theory.atoms
    if _horn_atoms(theory) != x:
        raise PreconditionViolated(
            "every atom must occur in a single-head clause of the theory")
    removed = []
    while True:
        g = elementary_subgraph(theory, x)
        if g.strongly_connected:
            return SelSearch(x, tuple(removed))
        comp = min(g.last_level(), key=min)
        removed.append(comp)
        x = x - comp


def find_sel_set(theory: Theory) -> frozenset:
    return sel_set_search(theory).result


def xi_hef(theory: Theory, model: AbstractSet[int], *, check: bool = True) -> frozenset:
    m = frozenset(model)
    if check:
        _require_model(theory, m)
    erased: set[int] = set()
    while True:
        s = steady_set(theory, m, check=False)
        simp = _simplify(theory, m, s)
        carrier = simp.carrier
        used = simp.theory.atoms
        if carrier != used:
            delta = carrier - used
        else:
            horn_used = _horn_atoms(simp.theory)
            if carrier == horn_used:
                break
            delta = frozenset([min(carrier - horn_used)])
        erased |= delta
        m = m - delta
    if not simp.theory.is_disjunctive:
        tail = simp.carrier
    else:
        tail = find_sel_set(simp.theory)
    return frozenset(erased) | tail


def xi_hcf(theory: Theory, model: AbstractSet[int], *, check: bool = True) -> frozenset:
    m = frozenset(model)
    if check:
        _require_model(theory, m)
    if not is_hcf(theory):
        raise NotHCF("the hcf operator needs a head-cycle-free theory")
    simp = _simplify(theory, m, steady_set(theory, m, check=False))
    if not simp.carrier:
        return frozenset()
    g = dependency_graph(simp.theory)
    g = type(g)(simp.carrier, g.arcs)
    cond = scc_condensation(g)
    comp = cond.component_of()
    has_in = [False] * len(cond.sccs)
    for u, v in g.arcs:
        if comp[u] != comp[v]:
            has_in[comp[v]] = True
    sources = [c for c, hit in zip(cond.sccs, has_in) if not hit]
    return min(sources, key=min)


EXP_TABLE_BITS = 20


def xi_exp(theory: Theory, model: AbstractSet[int], *, check: bool = True) -> frozenset:
    """Smallest erasable set, lexicographically first among equals, or empty."""
    m = frozenset(model)
    if check:
        _require_model(theory, m)
    s = steady_set(theory, m, check=False)
    order = sorted(m - s)
    if not order:
        return frozenset()
    if len(order) > EXP_TABLE_BITS:
        for k in range(1, len(order) + 1):
            for e in combinations(order, k):
                if first_violated(theory, m.difference(e)) is None:
                    return frozenset(e)
        return frozenset()
    position = {a: i for i, a in enumerate(order)}
    # Sub-models of m contain s, so only clauses not already satisfied by s matter.
    relevant = [Clause(c.head & m, c.body - s) for c in theory.clauses
                if c.head.isdisjoint(s) and c.body <= m]
    heads, bodies = kernels.clause_masks(relevant, position)
    table = kernels.model_table(len(order), heads, bodies)
    full = (1 << len(order)) - 1
    for k in range(1, len(order) + 1):
        for e in combinations(range(len(order)), k):
            mask = 0
            for i in e:
                mask |= 1 << i
            if table[full ^ mask]:
                return frozenset(order[i] for i in e)
    return frozenset()


OPERATORS: dict[str, Operator] = {"exp": xi_exp, "hcf": xi_hcf, "hef": xi_hef}


def get_operator(op: str | Operator) -> tuple[str, Operator]:
    if callable(op):
        return getattr(op, "__name__", "custom"), op
    try:
        return op, OPERATORS[op]
    except KeyError:
        raise ValueError(f"unknown operator {op!r}; choose from "
                         f"{', '.join(sorted(OPERATORS))}") from None
