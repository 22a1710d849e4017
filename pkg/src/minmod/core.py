"""Atoms, clauses, theories and the projections every other module builds on.

Atoms are interned into small integers by an :class:`AtomTable`; an atom set
is a ``frozenset`` of those ids.  Clauses are written ``H <- B`` with ``H`` and
``B`` atom sets; a theory is an ordered tuple of clauses sharing one table.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from typing import AbstractSet, Iterable, Iterator, Sequence

AtomSet = frozenset  # frozenset[int]; canonical order is ascending id

EMPTY: frozenset = frozenset()

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
PHI = "_phi"


class MinmodError(Exception):
    """Base class for every error raised by this package."""


class NotAModel(MinmodError):
    pass


class NonHornInput(MinmodError):
    pass


class NonPositiveInput(MinmodError):
    pass


class ReservedAtomPresent(MinmodError):
    pass


class AtomTable:
    """Append-only bijection between atom names and ids.

    Ids already handed out never change, so theories built against a table
    stay valid when later atoms (for instance from a model file) are added.
    """

    def __init__(self, names: Iterable[str] = ()):
        self._names: list[str] = []
        self._ids: dict[str, int] = {}
        for name in names:
            self.intern(name)

    def intern(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            pass
        if not IDENT_RE.match(name):
            raise ValueError(f"invalid atom name {name!r}")
        ident = len(self._names)
        self._names.append(name)
        self._ids[name] = ident
        return ident

    def id(self, name: str) -> int:
        return self._ids[name]

    def get(self, name: str) -> int | None:
        return self._ids.get(name)

    def name(self, ident: int) -> str:
        return self._names[ident]

    def copy(self) -> "AtomTable":
        return AtomTable(self._names)

    def __contains__(self, name: object) -> bool:
        return name in self._ids

    def __len__(self) -> int:
        return len(self._names)

    def __iter__(self) -> Iterator[str]:
        return iter(self._names)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AtomTable):
            return NotImplemented
        return self._names == other._names

    def __hash__(self) -> int:
        return hash(tuple(self._names))

    def __repr__(self) -> str:
        return f"AtomTable({self._names!r})"


@dataclass(frozen=True)
class Clause:
    head: frozenset
    body: frozenset = EMPTY

    def __post_init__(self):
        if not isinstance(self.head, frozenset):
            object.__setattr__(self, "head", frozenset(self.head))
        if not isinstance(self.body, frozenset):
            object.__setattr__(self, "body", frozenset(self.body))

    @property
    def is_constraint(self) -> bool:
        return not self.head

    @property
    def is_horn(self) -> bool:
        """Single-head clause; constraints are deliberately excluded."""
        return len(self.head) == 1

    @property
    def is_disjunctive(self) -> bool:
        return len(self.head) > 1

    @property
    def is_fact(self) -> bool:
        return len(self.head) == 1 and not self.body

    def satisfied_by(self, interp: AbstractSet[int]) -> bool:
        return not self.head.isdisjoint(interp) or not self.body <= interp


class Projection(enum.Enum):
    HEAD_AND_BODY = "head-and-body"
    HEAD_ONLY = "head-only"
    HORN_FRAGMENT = "horn-fragment"


@dataclass(frozen=True, eq=True)
class Theory:
    clauses: tuple
    table: AtomTable

    def __post_init__(self):
        if not isinstance(self.clauses, tuple):
            object.__setattr__(self, "clauses", tuple(self.clauses))

    @classmethod
    def build(cls, rules: Iterable[tuple[Sequence[str], Sequence[str]]],
              table: AtomTable | None = None) -> "Theory":
        """Build a theory from ``(head_names, body_names)`` pairs."""
        table = AtomTable() if table is None else table
        clauses = []
        for head, body in rules:
            clauses.append(Clause(frozenset(table.intern(a) for a in head),
                                  frozenset(table.intern(a) for a in body)))
        return cls(tuple(clauses), table)

    def derive(self, clauses: Iterable[Clause]) -> "Theory":
        """A theory over the same atom table."""
        return Theory(tuple(clauses), self.table)

    @cached_property
    def atoms(self) -> frozenset:
        out: set[int] = set()
        for c in self.clauses:
            out.update(c.head)
            out.update(c.body)
        return frozenset(out)

    @cached_property
    def compiled(self):
        from minmod.kernels import CompiledTheory
        return CompiledTheory.from_theory(self)

    @property
    def is_positive(self) -> bool:
        return not any(c.is_constraint for c in self.clauses)

    @property
    def is_disjunctive(self) -> bool:
        return any(c.is_disjunctive for c in self.clauses)

    def head_atoms(self) -> frozenset:
        out: set[int] = set()
        for c in self.clauses:
            out.update(c.head)
        return frozenset(out)

    def ids(self, names: Iterable[str]) -> frozenset:
        """Atom set for ``names``, interning any name the table lacks."""
        return frozenset(self.table.intern(n) for n in names)

    def names(self, atoms: Iterable[int]) -> list[str]:
        return sorted(self.table.name(a) for a in atoms)

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def __repr__(self) -> str:
        from minmod.io import format_clause
        body = "; ".join(format_clause(c, self.table) for c in self.clauses)
        return f"Theory({{{body}}})"


def atoms_of(theory: Theory) -> frozenset:
    return theory.atoms


def is_model(theory: Theory, interp: AbstractSet[int]) -> bool:
    """True iff every clause has a true head atom or a false body atom."""
    return first_violated(theory, interp) is None


def first_violated(theory: Theory, interp: AbstractSet[int]) -> int | None:
    """Index of the first clause false in ``interp``, or None."""
    idx = theory.compiled.first_violated(interp)
    return None if idx < 0 else idx


def project_theory(theory: Theory, x: AbstractSet[int],
                   mode: Projection = Projection.HEAD_AND_BODY) -> Theory:
    if mode is Projection.HORN_FRAGMENT:
        return theory.derive(c for c in theory.clauses if c.is_horn)
    x = frozenset(x)
    out = []
    if mode is Projection.HEAD_AND_BODY:
        for c in theory.clauses:
            head = c.head & x
            if head:
                out.append(Clause(head, c.body & x))
    elif mode is Projection.HEAD_ONLY:
        for c in theory.clauses:
            head = c.head & x
            if head:
                out.append(c if head == c.head else Clause(head, c.body))
    else:
        raise ValueError(f"unknown projection {mode!r}")
    return theory.derive(out)


def horn_projection(theory: Theory, x: AbstractSet[int]) -> Theory:
    """``Pi^nd_{X<-}``: head-projected onto ``x``, single-head clauses only."""
    return project_theory(project_theory(theory, x, Projection.HEAD_ONLY),
                          (), Projection.HORN_FRAGMENT)


def remove_constraints(theory: Theory) -> Theory:
    if theory.is_positive:
        return theory
    return theory.derive(c for c in theory.clauses if not c.is_constraint)


def is_disjunctive_set(theory: Theory, s: AbstractSet[int]) -> bool:
    s = frozenset(s)
    return any(len(c.head & s) > 1 for c in theory.clauses)
