"""Exponential, definition-level checks used as ground truth in tests.

Every function enumerates subsets directly and refuses inputs beyond its
budget instead of running unbounded.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from itertools import combinations
from typing import AbstractSet

from minmod import kernels
from minmod.core import MinmodError, NotAModel, Theory, is_model


class BudgetExceeded(MinmodError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_atoms: int = 14
    hef_max_atoms: int = 10

    def __post_init__(self):
        if not 0 <= self.max_atoms <= kernels.MAX_MASK_BITS:
            raise ValueError("max_atoms out of range")
        if not 0 <= self.hef_max_atoms <= kernels.MAX_MASK_BITS:
            raise ValueError("hef_max_atoms out of range")


DEFAULT_BUDGET = OracleBudget()


def _check(n: int, limit: int, what: str):
    if n > limit:
        raise BudgetExceeded(f"{what}: {n} atoms exceeds the budget of {limit}")


def enumerate_minimal_models(theory: Theory,
                             budget: OracleBudget = DEFAULT_BUDGET) -> set[frozenset]:
    order = sorted(theory.atoms)
    _check(len(order), budget.max_atoms, "enumerate_minimal_models")
    position = {a: i for i, a in enumerate(order)}
    heads, bodies = kernels.clause_masks(theory.clauses, position)
    table = kernels.model_table(len(order), heads, bodies)
    minimal = kernels.minimal_table(len(order), table)
    return {kernels.atoms_of_mask(m, order) for m, ok in enumerate(minimal) if ok}


def enumerate_models(theory: Theory, within: AbstractSet[int] | None = None,
                     budget: OracleBudget = DEFAULT_BUDGET) -> list[frozenset]:
    """All models of ``theory`` that are subsets of ``within`` (default: atoms)."""
    order = sorted(theory.atoms if within is None else within)
    _check(len(order), budget.max_atoms, "enumerate_models")
    position = {a: i for i, a in enumerate(order)}
    heads, bodies = kernels.clause_masks(theory.clauses, position)
    table = kernels.model_table(len(order), heads, bodies)
    return [kernels.atoms_of_mask(m, order) for m, ok in enumerate(table) if ok]


def is_minimal_oracle(theory: Theory, model: AbstractSet[int],
                      budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    model = frozenset(model)
    if not is_model(theory, model):
        raise NotAModel("is_minimal_oracle needs a model")
    order = sorted(model)
    _check(len(order), budget.max_atoms, "is_minimal_oracle")
    position = {a: i for i, a in enumerate(order)}
    heads, bodies = kernels.clause_masks(theory.clauses, position)
    table = kernels.model_table(len(order), heads, bodies)
    full = (1 << len(order)) - 1
    return not any(table[m] for m in range(full))


def is_erasable_oracle(e: AbstractSet[int], model: AbstractSet[int],
                       theory: Theory) -> bool:
    e = frozenset(e)
    if not e or not e <= frozenset(model):
        raise ValueError("an erasable set is a non-empty subset of the model")
    return is_model(theory, frozenset(model) - e)


def is_outbound(z: AbstractSet[int], y: AbstractSet[int], theory: Theory) -> bool:
    z, y = frozenset(z), frozenset(y)
    if not z <= y:
        raise ValueError("z must be a subset of y")
    rest = y - z
    for c in theory.clauses:
        if (not c.head.isdisjoint(z) and not c.body.isdisjoint(rest)
                and c.body.isdisjoint(z) and c.head.isdisjoint(rest)):
            return True
    return False


def _masks_for(y: AbstractSet[int], theory: Theory):
    order = sorted(y)
    position = {a: i for i, a in enumerate(order)}
    heads = []
    bodies = []
    for c in theory.clauses:
        heads.append(kernels.mask_of((a for a in c.head if a in position), position))
        bodies.append(kernels.mask_of((a for a in c.body if a in position), position))
    return order, array("Q", heads), array("Q", bodies)


def is_elementary_oracle(y: AbstractSet[int], theory: Theory,
                         budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    y = frozenset(y)
    if not y:
        raise ValueError("elementary sets are non-empty")
    _check(len(y), budget.max_atoms, "is_elementary_oracle")
    order, heads, bodies = _masks_for(y, theory)
    return kernels.is_elementary_mask((1 << len(order)) - 1, heads, bodies)


def is_sel_oracle(x: AbstractSet[int], theory: Theory,
                  budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    x = frozenset(x)
    if not x <= theory.atoms:
        raise ValueError("x must be a subset of the theory's atoms")
    if not x:
        return False
    return (is_elementary_oracle(x, theory, budget)
            and not is_outbound(x, theory.atoms, theory))


def hef_witness(theory: Theory, budget: OracleBudget = DEFAULT_BUDGET) -> frozenset:
    """A set that is both disjunctive and elementary, or the empty set."""
    order = sorted(theory.atoms)
    _check(len(order), budget.hef_max_atoms, "is_hef_oracle")
    if not theory.is_disjunctive:
        return frozenset()
    _, heads, bodies = _masks_for(order, theory)
    return kernels.atoms_of_mask(kernels.hef_witness(len(order), heads, bodies), order)


def is_hef_oracle(theory: Theory, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    return not hef_witness(theory, budget)


def is_hcf_oracle(theory: Theory) -> bool:
    """Head-cycle-freeness straight from reachability, without SCC machinery."""
    succ: dict[int, set[int]] = {a: set() for a in theory.atoms}
    for c in theory.clauses:
        for b in c.body:
            succ[b].update(c.head)

    def reach(a: int) -> set[int]:
        seen = {a}
        todo = [a]
        while todo:
            for w in succ[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return seen

    closure = {a: reach(a) for a in theory.atoms}
    for c in theory.clauses:
        for p, q in combinations(sorted(c.head), 2):
            if q in closure[p] and p in closure[q]:
                return False
    return True
