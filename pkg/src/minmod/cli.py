"""Command-line interface: ``minmod <verb> ...``.

JSON goes to stdout, diagnostics to stderr.  Exit codes follow the JSON
status: 0 minimal, 2 failure or unknown, 3 model (not minimal), 5
inconsistent; 4 means the candidate is not a model, 1 a usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from minmod import kernels
from minmod.core import AtomTable, Clause, MinmodError, NotAModel, Theory
from minmod.elimination import (Minimal, NotMinimal, check_minimal, find_minimal)
from minmod.graphs import (dependency_graph, elementary_subgraph, scc_condensation,
                           to_dot)
from minmod.io import (ParseError, parse_model, parse_program, parse_theory,
                       serialize_result, serialize_theory)
from minmod.oracle import BudgetExceeded, OracleBudget, is_hcf_oracle, is_hef_oracle
from minmod.transforms import (FailureModel, Inconsistent, NotAModelOfProgram,
                               positive_form, reduct, solve_via_positive_form)

EXIT_CODES = {"minimal": 0, "failure": 2, "unknown": 2, "model": 3, "inconsistent": 5}
EXIT_USAGE = 1
EXIT_NOT_A_MODEL = 4
CSV_COLUMNS = ("file", "atoms", "clauses", "operator", "status", "iterations", "micros")


class UsageError(MinmodError):
    pass


def exit_code(status: str) -> int:
    return EXIT_CODES[status]


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def _load_theory(path: str) -> Theory:
    try:
        return parse_theory(_read(path))
    except ParseError as exc:
        raise UsageError(f"{path}:{exc.span}: {exc.message}") from None


def _load_model(path: str, table: AtomTable) -> frozenset:
    try:
        return parse_model(_read(path), table)
    except ParseError as exc:
        raise UsageError(f"{path}:{exc.span}: {exc.message}") from None


def _emit(args, status: str, theory_or_table, model, iterations: int, operator: str,
          **extra) -> int:
    table = getattr(theory_or_table, "table", theory_or_table)
    names = [table.name(a) for a in model]
    for key, value in list(extra.items()):
        if isinstance(value, frozenset):
            extra[key] = sorted(table.name(a) for a in value)
    print(serialize_result(status, names, iterations, operator, **extra))
    return exit_code(status)


def _note(args, text: str):
    if not args.quiet:
        print(text, file=sys.stderr)


def _can_fall_back(args, theory: Theory) -> bool:
    if not args.fallback:
        return False
    if len(theory.atoms) > args.fallback_max_atoms:
        _note(args, f"fallback skipped: {len(theory.atoms)} atoms exceeds "
                    f"--fallback-max-atoms {args.fallback_max_atoms}")
        return False
    return True


def cmd_find(args) -> int:
    theory = _load_theory(args.path)
    if not theory.is_positive:
        raise UsageError(f"{args.path}: the theory has constraints; "
                         "use `minmod positive-form --solve` instead")
    t0 = time.perf_counter()
    out = find_minimal(theory, args.operator)
    op = args.operator
    extra = {}
    if not out.success and _can_fall_back(args, theory):
        out = find_minimal(theory, args.fallback)
        op = args.fallback
        extra["fallback"] = True
    _note(args, f"iterations={out.stats.iterations} removed={out.stats.removed_total} "
                f"backend={kernels.BACKEND} micros={(time.perf_counter() - t0) * 1e6:.0f}")
    status = "minimal" if out.success else "failure"
    return _emit(args, status, theory, out.model, out.stats.iterations, op, **extra)


def _check(args, theory: Theory, model: frozenset):
    verdict = check_minimal(theory, model, args.operator)
    op = args.operator
    if not isinstance(verdict, (Minimal, NotMinimal)) and _can_fall_back(args, theory):
        verdict = check_minimal(theory, model, args.fallback)
        op = args.fallback
    return verdict, op


def cmd_check(args) -> int:
    theory = _load_theory(args.path)
    model = _load_model(args.model, theory.table)
    verdict, op = _check(args, theory, model)
    it = verdict.stats.iterations
    if isinstance(verdict, Minimal):
        return _emit(args, "minimal", theory, model, it, op)
    if isinstance(verdict, NotMinimal):
        return _emit(args, "model", theory, model, it, op, witness=verdict.witness)
    return _emit(args, "unknown", theory, model, it, op, reached=verdict.model)


def cmd_minimize(args) -> int:
    theory = _load_theory(args.path)
    model = _load_model(args.model, theory.table)
    verdict, op = _check(args, theory, model)
    it = verdict.stats.iterations
    if isinstance(verdict, Minimal):
        return _emit(args, "minimal", theory, model, it, op)
    if isinstance(verdict, NotMinimal):
        return _emit(args, "model", theory, verdict.witness, it, op)
    return _emit(args, "unknown", theory, verdict.model, it, op)


def cmd_stable(args) -> int:
    try:
        program = parse_program(_read(args.path))
    except ParseError as exc:
        raise UsageError(f"{args.path}:{exc.span}: {exc.message}") from None
    model = _load_model(args.model, program.table)
    for i, r in enumerate(program.rules):
        if not r.satisfied_by(model):
            raise NotAModelOfProgram(f"rule {i + 1} is false in the candidate")
    red = reduct(program, model)
    verdict, op = _check(args, red, model)
    extra = {}
    if args.emit_reduct:
        extra["reduct"] = serialize_theory(red).splitlines()
    it = verdict.stats.iterations
    if isinstance(verdict, Minimal):
        return _emit(args, "minimal", program.table, model, it, op, **extra)
    if isinstance(verdict, NotMinimal):
        return _emit(args, "model", program.table, model, it, op,
                     witness=verdict.witness, **extra)
    return _emit(args, "unknown", program.table, model, it, op, **extra)


def cmd_positive_form(args) -> int:
    theory = _load_theory(args.path)
    if not args.solve:
        sys.stdout.write(serialize_theory(positive_form(theory)))
        return 0
    result = solve_via_positive_form(theory, args.operator)
    op = args.operator
    if isinstance(result, FailureModel) and _can_fall_back(args, positive_form(theory)):
        result = solve_via_positive_form(theory, args.fallback)
        op = args.fallback
    table = positive_form(theory).table
    it = result.stats.iterations
    if isinstance(result, Inconsistent):
        return _emit(args, "inconsistent", table, frozenset(), it, op)
    if isinstance(result, FailureModel):
        return _emit(args, "failure", table, result.model, it, op)
    return _emit(args, "minimal", table, result.model, it, op)


@dataclass(frozen=True)
class GenSpec:
    atoms: int = 8
    clauses: int = 10
    max_head: int = 2
    max_body: int = 2
    fact_prob: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.atoms < 1 or self.clauses < 0:
            raise UsageError("need at least one atom and a non-negative clause count")
        if self.max_head < 1 or self.max_body < 0:
            raise UsageError("max head size must be >= 1 and max body size >= 0")
        if not 0.0 <= self.fact_prob <= 1.0:
            raise UsageError("fact probability must lie in [0, 1]")


def generate(spec: GenSpec, index: int = 0) -> Theory:
    """Random positive theory; identical (spec, index) gives an identical theory."""
    rng = random.Random(f"minmod:{spec.seed}:{index}")
    table = AtomTable(f"x{i}" for i in range(spec.atoms))
    pool = range(spec.atoms)
    clauses = []
    for _ in range(spec.clauses):
        if rng.random() < spec.fact_prob:
            clauses.append(Clause(frozenset([rng.randrange(spec.atoms)])))
            continue
        k = rng.randint(1, min(spec.max_head, spec.atoms))
        head = frozenset(rng.sample(pool, k))
        rest = [a for a in pool if a not in head]
        body = frozenset(rng.sample(rest, rng.randint(0, min(spec.max_body, len(rest)))))
        clauses.append(Clause(head, body))
    return Theory(tuple(clauses), table)


GADGET = (
    ("g j", ""), ("f h", ""), ("b", "a"), ("c", "b"), ("a", "c"), ("d", "a b"),
    ("c", "d"), ("e", "b"), ("h", "b"), ("f", "e i"), ("i", "e j"), ("g", "f"),
    ("e", "g"), ("j", "e"), ("h", "j"), ("j", "h"), ("c", "h e"),
)


def hef_family(copies: int) -> Theory:
    """``copies`` disjoint renamed copies of a 10-atom HEF gadget."""
    rules = []
    for k in range(copies):
        for head, body in GADGET:
            rules.append(([f"{a}{k}" for a in head.split()],
                          [f"{a}{k}" for a in body.split()]))
    return Theory.build(rules)


def _certify(theory: Theory, budget: OracleBudget) -> str:
    hcf = is_hcf_oracle(theory)
    hef = is_hef_oracle(theory, budget)
    return f"# hcf={str(hcf).lower()} hef={str(hef).lower()}\n"


def cmd_gen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    budget = OracleBudget()
    if args.family == "hef":
        items = [(f"hef_{k * 10:04d}.cnft", hef_family(k))
                 for k in range(args.min_copies, args.max_copies + 1)]
    else:
        spec = GenSpec(args.atoms, args.clauses, args.max_head, args.max_body,
                       args.fact_prob, args.seed)
        items = [(f"gen_s{spec.seed}_{i:04d}.cnft", generate(spec, i))
                 for i in range(args.count)]
    for name, theory in items:
        text = serialize_theory(theory)
        if args.certify:
            text = _certify(theory, budget) + text
        (out / name).write_text(text, encoding="utf-8")
    _note(args, f"wrote {len(items)} files to {out}")
    return 0


def bench_rows(paths: Sequence[Path], operator: str) -> list[dict]:
    rows = []
    for path in paths:
        row = {"file": path.name, "atoms": "", "clauses": "", "operator": operator,
               "status": "error", "iterations": "", "micros": ""}
        try:
            theory = parse_theory(path.read_text(encoding="utf-8"))
            row.update(atoms=len(theory.atoms), clauses=len(theory.clauses))
            if not theory.is_positive:
                theory = positive_form(theory)
            t0 = time.perf_counter()
            out = find_minimal(theory, operator)
            micros = (time.perf_counter() - t0) * 1e6
            row.update(status="minimal" if out.success else "failure",
                       iterations=out.stats.iterations, micros=f"{micros:.0f}")
        except (MinmodError, OSError, UnicodeDecodeError) as exc:
            row["status"] = f"error: {exc}".replace("\n", " ")
        rows.append(row)
    return rows


def cmd_bench(args) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise UsageError(f"{corpus}: not a directory")
    paths = sorted(p for p in corpus.iterdir() if p.suffix == ".cnft")
    rows = bench_rows(paths, args.operator)
    writer = csv.DictWriter(sys.stdout, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if rows:
        ok = sum(r["status"] == "minimal" for r in rows)
        writer.writerow({
            "file": "SUMMARY", "atoms": sum(r["atoms"] or 0 for r in rows),
            "clauses": sum(r["clauses"] or 0 for r in rows), "operator": args.operator,
            "status": f"minimal={ok}/{len(rows)}",
            "iterations": sum(r["iterations"] or 0 for r in rows),
            "micros": sum(int(r["micros"] or 0) for r in rows)})
    return 0


def cmd_graph(args) -> int:
    theory = _load_theory(args.path)
    name = theory.table.name
    if args.elementary is not None:
        x = theory.ids(n for n in args.elementary.replace(",", " ").split())
        g = elementary_subgraph(theory, x)
        text = to_dot(g.graph, name, title="elementary", sccs=g.sccs)
    else:
        g = dependency_graph(theory)
        text = to_dot(g, name, title="dependency", sccs=scc_condensation(g).sccs)
    if not args.emit_dot:
        cond = scc_condensation(g.graph if args.elementary is not None else g)
        comps = [sorted(map(name, c)) for c in cond.sccs]
        print(json.dumps({"sccs": comps, "levels": list(cond.levels)},
                         separators=(",", ":")))
        return 0
    sys.stdout.write(text)
    return 0


def _operator_flags(p: argparse.ArgumentParser):
    p.add_argument("--operator", choices=("hef", "hcf", "exp"), default="hef",
                   help="eliminating operator (default: hef)")
    p.add_argument("--fallback", choices=("exp",), default=None,
                   help="operator to retry with when the first run fails")
    p.add_argument("--fallback-max-atoms", type=int, default=20, metavar="N",
                   help="only fall back on theories with at most N atoms (default: 20)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minmod",
                                     description="Minimal models of propositional CNF theories.")
    parser.add_argument("--quiet", action="store_true", help="suppress stats on stderr")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("find", help="compute a minimal model")
    p.add_argument("path")
    _operator_flags(p)
    p.set_defaults(func=cmd_find)

    for verb, func, text in (("check", cmd_check, "check that a model is minimal"),
                             ("minimize", cmd_minimize,
                              "print a minimal model below the given one")):
        p = sub.add_parser(verb, help=text)
        p.add_argument("path")
        p.add_argument("model", help="file listing the model's atoms")
        _operator_flags(p)
        p.set_defaults(func=func)

    p = sub.add_parser("stable", help="check that a model of a program is stable")
    p.add_argument("path")
    p.add_argument("model")
    p.add_argument("--emit-reduct", action="store_true")
    _operator_flags(p)
    p.set_defaults(func=cmd_stable)

    p = sub.add_parser("positive-form", help="print the positive form, or solve through it")
    p.add_argument("path")
    p.add_argument("--solve", action="store_true")
    _operator_flags(p)
    p.set_defaults(func=cmd_positive_form)

    p = sub.add_parser("gen", help="write a deterministic random corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--atoms", type=int, default=8)
    p.add_argument("--clauses", type=int, default=10)
    p.add_argument("--max-head", type=int, default=2)
    p.add_argument("--max-body", type=int, default=2)
    p.add_argument("--fact-prob", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--family", choices=("random", "hef"), default="random",
                   help="'hef' writes disjoint copies of a 10-atom HEF gadget")
    p.add_argument("--min-copies", type=int, default=1)
    p.add_argument("--max-copies", type=int, default=20)
    p.add_argument("--certify", action="store_true",
                   help="annotate each file with oracle HCF/HEF verdicts")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run find over a corpus and print CSV")
    p.add_argument("corpus")
    p.add_argument("--operator", choices=("hef", "hcf", "exp"), default="hef")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("graph", help="dependency or elementary subgraph")
    p.add_argument("path")
    p.add_argument("--emit-dot", action="store_true", help="print Graphviz DOT")
    p.add_argument("--elementary", metavar="ATOMS",
                   help="elementary subgraph of these atoms instead")
    p.set_defaults(func=cmd_graph)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2, which is reserved for the "failure" status here
        return EXIT_USAGE if exc.code else 0
    if not hasattr(args, "quiet"):
        args.quiet = False
    try:
        return args.func(args)
    except (NotAModel, NotAModelOfProgram) as exc:
        print(f"minmod: not a model: {exc}", file=sys.stderr)
        return EXIT_NOT_A_MODEL
    except (UsageError, BudgetExceeded, MinmodError) as exc:
        print(f"minmod: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
