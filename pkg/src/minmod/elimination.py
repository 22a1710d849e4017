"""Model-shrinking loops driven by an eliminating operator.

``gea`` is the plain loop.  ``igea`` and ``igea_from`` add a guard: before an
erasure is applied the shrunken set is checked to still be a model, and the
run stops with ``failure`` otherwise.  A ``success`` result is always minimal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import AbstractSet, Union

from minmod.core import NonPositiveInput, NotAModel, Theory, first_violated, remove_constraints
from minmod.horn import steady_set
from minmod.operators import OPERATORS, get_operator

_BUILTIN = frozenset(OPERATORS.values())


@dataclass(frozen=True)
class RunStats:
    iterations: int
    removed_total: int
    operator: str
    trace: tuple          # erased set of every erasing iteration, in order


@dataclass(frozen=True)
class IgeaOutcome:
    status: str           # "success" or "failure"
    model: frozenset
    stats: RunStats

    @property
    def success(self) -> bool:
        return self.status == "success"


def _call(xi, theory, m):
    # Built-in operators skip their own model check: the loops call them on
    # sets that are not necessarily models any more.
    if xi in _BUILTIN:
        return xi(theory, m, check=False)
    return xi(theory, m)


def _require_model(theory: Theory, model: frozenset):
    bad = first_violated(theory, model)
    if bad is not None:
        raise NotAModel(f"clause {bad} is false in the given interpretation")


def gea(theory: Theory, model: AbstractSet[int], op="hef") -> tuple[frozenset, RunStats]:
    """Unguarded loop.  Correct for true eliminating operators only."""
    name, xi = get_operator(op)
    m = frozenset(model)
    _require_model(theory, m)
    pi = remove_constraints(theory)
    trace = []
    iterations = 0
    while True:
        iterations += 1
        s = steady_set(pi, m, check=False)
        if first_violated(pi, s) is None:
            result = s
            break
        e = _call(xi, pi, m)
        if not e:
            result = m
            break
        trace.append(frozenset(e))
        m = m - e
    return result, RunStats(iterations, sum(map(len, trace)), name, tuple(trace))


def _guarded(pi: Theory, m: frozenset, name: str, xi) -> IgeaOutcome:
    trace = []
    iterations = 0
    while True:
        iterations += 1
        s = steady_set(pi, m, check=False)
        if first_violated(pi, s) is None:
            status, result = "success", s
            break
        e = _call(xi, pi, m)
        if not e:
            status, result = "success", m
            break
        if first_violated(pi, m - e) is not None:
            status, result = "failure", m
            break
        trace.append(frozenset(e))
        m = m - e
    stats = RunStats(iterations, sum(map(len, trace)), name, tuple(trace))
    return IgeaOutcome(status, result, stats)


def igea(theory: Theory, op="hef") -> IgeaOutcome:
    if not theory.is_positive:
        raise NonPositiveInput("the theory has constraints; use its positive form")
    name, xi = get_operator(op)
    return _guarded(theory, theory.head_atoms(), name, xi)


def igea_from(theory: Theory, model: AbstractSet[int], op="hef") -> IgeaOutcome:
    """Guarded loop started at ``model``.

    Constraints are dropped after the model check: a subset of a model can
    only make constraint bodies false.
    """
    name, xi = get_operator(op)
    m = frozenset(model)
    _require_model(theory, m)
    return _guarded(remove_constraints(theory), m, name, xi)


@dataclass(frozen=True)
class Minimal:
    stats: RunStats | None = field(default=None, compare=False)


@dataclass(frozen=True)
class NotMinimal:
    witness: frozenset
    stats: RunStats | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Unknown:
    model: frozenset      # where the guarded run stopped
    stats: RunStats | None = field(default=None, compare=False)


Verdict = Union[Minimal, NotMinimal, Unknown]


def check_minimal(theory: Theory, model: AbstractSet[int], op="hef") -> Verdict:
    m = frozenset(model)
    out = igea_from(theory, m, op)
    if not out.success:
        return Unknown(out.model, out.stats)
    if out.model == m:
        return Minimal(out.stats)
    return NotMinimal(out.model, out.stats)


def find_minimal(theory: Theory, op="hef") -> IgeaOutcome:
    return igea(theory, op)
