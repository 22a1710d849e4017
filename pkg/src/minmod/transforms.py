"""Positive form of a theory, and reducts and stable models of programs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import AbstractSet, Union

from minmod.core import (PHI, AtomTable, Clause, MinmodError, ReservedAtomPresent,
                         Theory, is_model)


class NotAModelOfProgram(MinmodError):
    pass


@dataclass(frozen=True)
class Rule:
    head: frozenset
    pos: frozenset = frozenset()
    neg: frozenset = frozenset()

    def satisfied_by(self, interp: AbstractSet[int]) -> bool:
        """Head true, or positive body false, or a negated atom in ``interp``."""
        return (not self.head.isdisjoint(interp) or not self.pos <= interp
                or not self.neg.isdisjoint(interp))


@dataclass(frozen=True)
class LogicProgram:
    rules: tuple
    table: AtomTable

    @property
    def atoms(self) -> frozenset:
        out: set[int] = set()
        for r in self.rules:
            out.update(r.head)
            out.update(r.pos)
            out.update(r.neg)
        return frozenset(out)

    def stripped(self) -> Theory:
        """The theory obtained by deleting every negative literal."""
        return Theory(tuple(Clause(r.head, r.pos) for r in self.rules), self.table)


def positive_form(theory: Theory) -> Theory:
    """Constraint-free rewriting; ``_phi`` is true in a minimal model iff no model exists.

    The result uses a copy of the atom table with ``_phi`` appended, so atom
    ids of ``theory`` keep their meaning.
    """
    if PHI in theory.table and theory.table.id(PHI) in theory.atoms:
        raise ReservedAtomPresent(f"atom {PHI!r} is reserved")
    table = theory.table.copy()
    phi = table.intern(PHI)
    clauses = [c if c.head else Clause(frozenset([phi]), c.body)
               for c in theory.clauses]
    for a in sorted(theory.atoms, key=table.name):
        clauses.append(Clause(frozenset([a]), frozenset([phi])))
    return Theory(tuple(clauses), table)


@dataclass(frozen=True)
class Inconsistent:
    model: frozenset   # the minimal model of the positive form, containing _phi
    stats: object = field(default=None, compare=False)


@dataclass(frozen=True)
class MinimalModel:
    model: frozenset
    stats: object = field(default=None, compare=False)


@dataclass(frozen=True)
class FailureModel:
    model: frozenset
    stats: object = field(default=None, compare=False)


SolveResult = Union[Inconsistent, MinimalModel, FailureModel]


def solve_via_positive_form(theory: Theory, op="hef") -> SolveResult:
    from minmod.elimination import find_minimal

    plus = positive_form(theory)
    out = find_minimal(plus, op)
    if out.status != "success":
        return FailureModel(out.model, out.stats)
    if plus.table.id(PHI) in out.model:
        return Inconsistent(out.model, out.stats)
    return MinimalModel(out.model, out.stats)


def reduct(program: LogicProgram, model: AbstractSet[int]) -> Theory:
    model = frozenset(model)
    return Theory(tuple(Clause(r.head, r.pos) for r in program.rules
                        if r.neg.isdisjoint(model)), program.table)


@dataclass(frozen=True)
class Stable:
    pass


@dataclass(frozen=True)
class NotStable:
    witness: frozenset


@dataclass(frozen=True)
class StableUnknown:
    model: frozenset   # what the guarded run reached before failing


StableVerdict = Union[Stable, NotStable, StableUnknown]


def check_stable(program: LogicProgram, model: AbstractSet[int], op="hef") -> StableVerdict:
    from minmod.elimination import Minimal, NotMinimal, check_minimal

    model = frozenset(model)
    for i, r in enumerate(program.rules):
        if not r.satisfied_by(model):
            raise NotAModelOfProgram(f"rule {i} is false in the given interpretation")
    red = reduct(program, model)
    assert is_model(red, model), "a model of a program must satisfy its reduct"
    verdict = check_minimal(red, model, op)
    if isinstance(verdict, Minimal):
        return Stable()
    if isinstance(verdict, NotMinimal):
        return NotStable(verdict.witness)
    return StableUnknown(verdict.model)
