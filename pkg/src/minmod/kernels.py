"""Backend selection for the hot loops.

The Cython extension ``minmod._kernels`` is used when it was built; otherwise
the pure-Python twin ``minmod._kernels_py`` is used.  Setting the environment
variable ``MINMOD_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os
from array import array
from typing import AbstractSet, Sequence

from minmod import _kernels_py

if os.environ.get("MINMOD_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from minmod import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"
MAX_MASK_BITS = 62


def backend_module(name: str | None = None):
    """The kernel module for ``name`` ("cython" or "python"); default: active."""
    if name is None:
        return _impl
    if name == "python":
        return _kernels_py
    if name == "cython":
        from minmod import _kernels  # type: ignore[attr-defined]
        return _kernels
    raise ValueError(f"unknown backend {name!r}")


class CompiledTheory:
    """CSR view of a theory's clauses, built once per theory."""

    __slots__ = ("n_atoms", "head_ptr", "head_idx", "body_ptr", "body_idx",
                 "occ_ptr", "occ_idx")

    def __init__(self, n_atoms: int, heads: Sequence[Sequence[int]],
                 bodies: Sequence[Sequence[int]]):
        self.n_atoms = n_atoms
        self.head_ptr, self.head_idx = _csr(heads)
        self.body_ptr, self.body_idx = _csr(bodies)
        occ: list[list[int]] = [[] for _ in range(n_atoms)]
        for c, body in enumerate(bodies):
            for a in body:
                occ[a].append(c)
        self.occ_ptr, self.occ_idx = _csr(occ)

    @classmethod
    def from_theory(cls, theory) -> "CompiledTheory":
        heads = [sorted(c.head) for c in theory.clauses]
        bodies = [sorted(c.body) for c in theory.clauses]
        n = 1 + max((a for part in (heads, bodies) for xs in part for a in xs),
                    default=-1)
        return cls(n, heads, bodies)

    def membership(self, atoms: AbstractSet[int]) -> bytearray:
        member = bytearray(self.n_atoms)
        n = self.n_atoms
        for a in atoms:
            if a < n:
                member[a] = 1
        return member

    def first_violated(self, interp: AbstractSet[int]) -> int:
        return _impl.first_violated(self.head_ptr, self.head_idx, self.body_ptr,
                                    self.body_idx, self.membership(interp))

    def horn_closure(self, allowed: AbstractSet[int] | None = None):
        """Fixpoint over clauses whose head meets ``allowed`` in exactly one atom.

        With ``allowed=None`` every atom is allowed, which is plain unit
        propagation for a Horn theory.
        """
        if allowed is None:
            member = bytearray(b"\x01") * self.n_atoms
        else:
            member = self.membership(allowed)
        return _impl.horn_closure(self.n_atoms, self.head_ptr, self.head_idx,
                                  self.body_ptr, self.body_idx, self.occ_ptr,
                                  self.occ_idx, member)


def _csr(rows: Sequence[Sequence[int]]) -> tuple[array, array]:
    ptr = array("i", [0])
    idx = array("i")
    for row in rows:
        idx.extend(row)
        ptr.append(len(idx))
    return ptr, idx


def clause_masks(clauses, position: dict[int, int]) -> tuple[array, array]:
    """Head and body masks of ``clauses`` over the atoms keyed in ``position``.

    Atoms outside ``position`` are dropped from heads; a clause whose body
    leaves ``position`` can never be violated inside it and is skipped.
    """
    heads = array("Q")
    bodies = array("Q")
    for c in clauses:
        if not all(a in position for a in c.body):
            continue
        h = 0
        for a in c.head:
            bit = position.get(a)
            if bit is not None:
                h |= 1 << bit
        b = 0
        for a in c.body:
            b |= 1 << position[a]
        heads.append(h)
        bodies.append(b)
    return heads, bodies


def mask_of(atoms, position: dict[int, int]) -> int:
    m = 0
    for a in atoms:
        m |= 1 << position[a]
    return m


def atoms_of_mask(mask: int, order: Sequence[int]) -> frozenset:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(order[i])
        mask >>= 1
        i += 1
    return frozenset(out)


def model_table(n_bits: int, heads: array, bodies: array) -> bytearray:
    return _impl.model_table(n_bits, heads, bodies)


def minimal_table(n_bits: int, table: bytearray) -> bytearray:
    return _impl.minimal_table(n_bits, table)


def is_outbound_mask(z: int, y: int, heads: array, bodies: array) -> bool:
    return bool(_impl.is_outbound_mask(z, y, heads, bodies))


def is_elementary_mask(y: int, heads: array, bodies: array) -> bool:
    return bool(_impl.is_elementary_mask(y, heads, bodies))


def hef_witness(n_bits: int, heads: array, bodies: array) -> int:
    return int(_impl.hef_witness(n_bits, heads, bodies))
