import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import S, load, random_theory, theories
from minmod.core import (AtomTable, Clause, Projection, Theory, horn_projection,
                         is_disjunctive_set, is_model, project_theory,
                         remove_constraints)
from minmod.io import parse_theory


def test_atom_table_is_append_only():
    t = AtomTable(["a", "b"])
    assert t.intern("a") == 0
    assert t.intern("c") == 2
    assert list(t) == ["a", "b", "c"]
    with pytest.raises(ValueError):
        t.intern("1x")


def test_clause_kinds():
    assert Clause(frozenset(), frozenset([1])).is_constraint
    assert Clause(frozenset([1])).is_fact
    assert Clause(frozenset([1, 2])).is_disjunctive
    assert not Clause(frozenset()).is_horn


def test_hef10_models(hef10):
    assert is_model(hef10, S(hef10, "h j"))
    assert is_model(hef10, hef10.atoms)
    assert not is_model(hef10, S(hef10, "h"))


def test_empty_theory_has_empty_model():
    t = parse_theory("")
    assert is_model(t, frozenset())
    assert t.atoms == frozenset()


def test_tautologies_and_duplicates_are_kept():
    t = parse_theory("a <- a. b. b.")
    assert len(t) == 3
    assert is_model(t, S(t, "b"))


def test_is_disjunctive_set(hef10):
    assert is_disjunctive_set(hef10, S(hef10, "g j"))
    assert not is_disjunctive_set(hef10, S(hef10, "a b c"))
    reduct_ad = load("reduct_ad.cnft")
    assert is_disjunctive_set(reduct_ad, S(reduct_ad, "a b"))
    assert not is_disjunctive_set(reduct_ad.derive(c for c in reduct_ad if c.is_horn), S(reduct_ad, "a b"))


def test_projection_modes():
    t = parse_theory("a | b <- c, d. <- a. e.")
    x = S(t, "a c")
    both = project_theory(t, x)
    assert [(c.head, c.body) for c in both] == [(S(t, "a"), S(t, "c"))]
    head_only = project_theory(t, x, Projection.HEAD_ONLY)
    assert [(c.head, c.body) for c in head_only] == [(S(t, "a"), S(t, "c d"))]
    horn = project_theory(t, x, Projection.HORN_FRAGMENT)
    assert [c.head for c in horn] == [S(t, "e")]
    nd = horn_projection(t, S(t, "a c d"))
    assert [(c.head, c.body) for c in nd] == [(S(t, "a"), S(t, "c d"))]


def test_remove_constraints_keeps_table():
    t = parse_theory("a. <- b.")
    r = remove_constraints(t)
    assert len(r) == 1 and r.table is t.table
    assert r.atoms == S(t, "a")


@given(theories(max_atoms=6, max_clauses=8))
def test_positive_theories_have_large_models(theory):
    assert is_model(theory, theory.atoms)
    assert is_model(theory, theory.head_atoms())


def test_supersets_of_models_need_not_be_models():
    t = parse_theory("a <- b.")
    assert is_model(t, frozenset())
    assert not is_model(t, S(t, "b"))


@given(theories(max_atoms=6, max_clauses=8, constraints=True), st.randoms(use_true_random=False))
def test_is_model_invariant_under_reordering_and_renaming(theory, rng):
    n = len(theory.table)
    perm = list(range(n))
    rng.shuffle(perm)
    clauses = [Clause(frozenset(perm[a] for a in c.head), frozenset(perm[a] for a in c.body))
               for c in theory.clauses]
    rng.shuffle(clauses)
    renamed = Theory(tuple(clauses), AtomTable(f"y{i}" for i in range(n)))
    for mask in range(1 << n):
        m = frozenset(i for i in range(n) if mask >> i & 1)
        assert is_model(theory, m) == is_model(renamed, frozenset(perm[a] for a in m))


@given(theories(max_atoms=6, max_clauses=8, constraints=True), st.data())
def test_projection_is_idempotent(theory, data):
    x = frozenset(data.draw(st.lists(st.integers(0, len(theory.table) - 1), unique=True)))
    for mode in Projection:
        once = project_theory(theory, x, mode)
        assert project_theory(once, x, mode).clauses == once.clauses


def test_is_model_agrees_with_clause_semantics():
    rng = random.Random(3)
    for _ in range(200):
        t = random_theory(rng, 5, 6, constraints=True)
        for mask in range(32):
            m = frozenset(i for i in range(5) if mask >> i & 1)
            assert is_model(t, m) == all(c.satisfied_by(m) for c in t.clauses)
