from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from minmod.core import AtomTable, Clause, Theory
from minmod.io import parse_program, parse_theory

DATA = Path(__file__).parent / "data"

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def load(name: str) -> Theory:
    return parse_theory((DATA / name).read_text())


def load_program(name: str):
    return parse_program((DATA / name).read_text())


def S(theory, names: str) -> frozenset:
    """Atom set from a space-separated list of names."""
    return frozenset(map(theory.table.id, names.split()))


def N(theory, atoms) -> list[str]:
    return theory.names(atoms)


@pytest.fixture
def hef10():
    return load("hef10.cnft")


@pytest.fixture
def p_theory():
    return load("p_nonhef.cnft")


@pytest.fixture
def q_theory():
    return load("q_nonhef.cnft")


@pytest.fixture
def prog():
    return load_program("prog.lp")


@pytest.fixture
def reduct_ad():
    return load("reduct_ad.cnft")


@pytest.fixture
def pex():
    return load("pex.cnft")


def random_theory(rng: random.Random, n_atoms: int, n_clauses: int, *,
                  max_head: int = 2, max_body: int = 2, horn: bool = False,
                  constraints: bool = False) -> Theory:
    table = AtomTable(f"x{i}" for i in range(n_atoms))
    clauses = []
    for _ in range(n_clauses):
        if constraints and rng.random() < 0.15:
            k = rng.randint(1, min(max_body, n_atoms) or 1)
            clauses.append(Clause(frozenset(), frozenset(rng.sample(range(n_atoms), k))))
            continue
        hk = 1 if horn else rng.randint(1, min(max_head, n_atoms))
        head = frozenset(rng.sample(range(n_atoms), hk))
        rest = [a for a in range(n_atoms) if a not in head]
        body = frozenset(rng.sample(rest, rng.randint(0, min(max_body, len(rest)))))
        clauses.append(Clause(head, body))
    return Theory(tuple(clauses), table)


@st.composite
def theories(draw, max_atoms: int = 6, max_clauses: int = 8, *, max_head: int = 3,
             max_body: int = 3, horn: bool = False, constraints: bool = False):
    n = draw(st.integers(1, max_atoms))
    atoms = st.integers(0, n - 1)
    clauses = []
    for _ in range(draw(st.integers(0, max_clauses))):
        if constraints and draw(st.booleans()) and draw(st.booleans()):
            body = draw(st.frozensets(atoms, min_size=1, max_size=max_body))
            clauses.append(Clause(frozenset(), body))
            continue
        if horn:
            head = frozenset([draw(atoms)])
        else:
            head = draw(st.frozensets(atoms, min_size=1, max_size=max_head))
        body = draw(st.frozensets(atoms, max_size=max_body)) - head
        clauses.append(Clause(head, body))
    return Theory(tuple(clauses), AtomTable(f"x{i}" for i in range(n)))
