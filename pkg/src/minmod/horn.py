"""Unit propagation over Horn theories and the steady set of a model."""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet

from minmod.core import NonHornInput, NotAModel, Theory, first_violated


@dataclass(frozen=True)
class PropagationTrace:
    """``fired[k] = (clause index, derived atom)`` in derivation order."""

    fired: tuple

    def atoms(self) -> frozenset:
        return frozenset(a for _, a in self.fired)


def horn_propagate(theory: Theory) -> tuple[frozenset, PropagationTrace]:
    """Least model of a positive Horn theory, with the propagation trace."""
    for i, c in enumerate(theory.clauses):
        if not c.is_horn:
            kind = "constraint" if c.is_constraint else "disjunctive clause"
            raise NonHornInput(f"clause {i} is a {kind}")
    atoms, clauses = theory.compiled.horn_closure()
    return frozenset(atoms), PropagationTrace(tuple(zip(clauses, atoms)))


def horn_minimal_model(theory: Theory) -> frozenset:
    return horn_propagate(theory)[0]


def steady_set(theory: Theory, model: AbstractSet[int], *, check: bool = True) -> frozenset:
    """Least model of the Horn part of ``theory`` with heads cut down to ``model``.

    Computed on the original clause arrays: a clause takes part iff exactly one
    of its head atoms lies in ``model``, which is what projecting heads onto the
    model and keeping the single-head clauses amounts to.  Constraints never
    take part.
    """
    if check:
        bad = first_violated(theory, model)
        if bad is not None:
            raise NotAModel(f"clause {bad} is false in the given interpretation")
    atoms, _ = theory.compiled.horn_closure(model)
    return frozenset(atoms)
