"""Compare the compiled kernels with their pure-Python twin.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Prints one row per kernel (best-of-N time per call for each backend and the
speedup), then end-to-end ``find`` timings on the scalable HEF family with
the active backend swapped in turn.
"""

import argparse
import random
import timeit
from array import array

from minmod import kernels
from minmod.cli import hef_family
from minmod.core import AtomTable, Clause, Theory
from minmod.elimination import find_minimal
from minmod.kernels import CompiledTheory, clause_masks


def random_theory(rng, n_atoms, n_clauses):
    clauses = []
    for _ in range(n_clauses):
        head = frozenset(rng.sample(range(n_atoms), rng.randint(1, 3)))
        rest = [a for a in range(n_atoms) if a not in head]
        clauses.append(Clause(head, frozenset(rng.sample(rest, rng.randint(0, 3)))))
    return Theory(tuple(clauses), AtomTable(f"x{i}" for i in range(n_atoms)))


def best(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def kernel_cases(rng):
    big = random_theory(rng, 400, 2000)
    ct = CompiledTheory.from_theory(big)
    csr = (ct.head_ptr, ct.head_idx, ct.body_ptr, ct.body_idx)
    member = ct.membership(frozenset(a for a in range(400) if rng.random() < 0.7))
    allowed = ct.membership(frozenset(range(400)))
    yield "first_violated (2000 clauses)", 200, lambda k: k.first_violated(*csr, member)
    yield "horn_closure (2000 clauses)", 50, lambda k: k.horn_closure(
        ct.n_atoms, *csr, ct.occ_ptr, ct.occ_idx, allowed)

    small = random_theory(rng, 12, 30)
    order = sorted(small.atoms)
    pos = {a: i for i, a in enumerate(order)}
    heads, bodies = clause_masks(small.clauses, pos)
    n = len(order)
    table = kernels.backend_module("python").model_table(n, heads, bodies)
    yield f"model_table ({n} atoms)", 3, lambda k: k.model_table(n, heads, bodies)
    yield f"minimal_table ({n} atoms)", 3, lambda k: k.minimal_table(n, table)

    tiny = random_theory(rng, 8, 14)
    order = sorted(tiny.atoms)
    pos = {a: i for i, a in enumerate(order)}
    h = array("Q", [kernels.mask_of(c.head, pos) for c in tiny])
    b = array("Q", [kernels.mask_of(c.body, pos) for c in tiny])
    yield f"hef_witness ({len(order)} atoms)", 3, lambda k: k.hef_witness(len(order), h, b)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    py = kernels.backend_module("python")
    try:
        cy = kernels.backend_module("cython")
    except ImportError:
        print("compiled extension not built; nothing to compare")
        return

    print(f"{'kernel':34s} {'python us':>12s} {'cython us':>12s} {'speedup':>8s}")
    for name, number, call in kernel_cases(random.Random(args.seed)):
        tp = best(lambda: call(py), args.repeat, number)
        tc = best(lambda: call(cy), args.repeat, number)
        print(f"{name:34s} {tp * 1e6:12.1f} {tc * 1e6:12.1f} {tp / tc:8.1f}")

    print()
    print(f"{'find, HEF family':34s} {'python ms':>12s} {'cython ms':>12s} {'speedup':>8s}")
    active = kernels._impl
    try:
        for copies in (1, 5, 10, 20):
            t = hef_family(copies)
            row = []
            for impl in (py, cy):
                kernels._impl = impl
                row.append(best(lambda: find_minimal(t), args.repeat, 1))
            label = f"n = {len(t.atoms)}"
            print(f"{label:34s} {row[0] * 1e3:12.2f} {row[1] * 1e3:12.2f} {row[0] / row[1]:8.1f}")
    finally:
        kernels._impl = active


if __name__ == "__main__":
    main()
