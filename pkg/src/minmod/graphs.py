"""Dependency graphs, SCC condensation and elementary subgraphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import AbstractSet, Callable, Iterable, Mapping, NamedTuple

from minmod.core import NonHornInput, Theory


@dataclass(frozen=True)
class Digraph:
    nodes: frozenset
    arcs: frozenset  # of (tail, head) pairs

    def successors(self) -> dict[int, list[int]]:
        succ: dict[int, list[int]] = {v: [] for v in self.nodes}
        for u, v in self.arcs:
            succ[u].append(v)
        for vs in succ.values():
            vs.sort()
        return succ

    def induced(self, keep: AbstractSet[int]) -> "Digraph":
        keep = frozenset(keep) & self.nodes
        return Digraph(keep, frozenset((u, v) for u, v in self.arcs
                                       if u in keep and v in keep))


class Condensation(NamedTuple):
    sccs: tuple          # of frozensets, in Tarjan order (sinks first)
    levels: tuple        # levels[i] is the level of sccs[i], starting at 1

    def component_of(self) -> dict[int, int]:
        return {v: i for i, comp in enumerate(self.sccs) for v in comp}

    def last_level(self) -> list[frozenset]:
        if not self.sccs:
            return []
        top = max(self.levels)
        return [c for c, lv in zip(self.sccs, self.levels) if lv == top]


def dependency_graph(theory: Theory) -> Digraph:
    arcs = set()
    for c in theory.clauses:
        for b in c.body:
            for h in c.head:
                arcs.add((b, h))
    return Digraph(theory.atoms, frozenset(arcs))


def tarjan_sccs(nodes: Iterable[int], successors: Mapping[int, list[int]]) -> list[frozenset]:
    """Maximal SCCs, iterative, visiting roots and successors in ascending order.

    Components come out in reverse topological order: every component is
    emitted after all components it has arcs into.
    """
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[frozenset] = []
    counter = 0
    for root in sorted(nodes):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work[-1]
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            succ = successors.get(v, ())
            descended = False
            while i < len(succ):
                w = succ[i]
                i += 1
                if w not in index:
                    work[-1] = (v, i)
                    work.append((w, 0))
                    descended = True
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            if descended:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(frozenset(comp))
    return out


def scc_condensation(g: Digraph) -> Condensation:
    """SCCs with levels; every sink component is lifted to the top level."""
    sccs = tarjan_sccs(g.nodes, g.successors())
    comp = {v: i for i, c in enumerate(sccs) for v in c}
    preds: list[set[int]] = [set() for _ in sccs]
    has_out = [False] * len(sccs)
    for u, v in g.arcs:
        cu, cv = comp[u], comp[v]
        if cu != cv:
            preds[cv].add(cu)
            has_out[cu] = True
    levels = [0] * len(sccs)
    # Tarjan order is reverse topological, so walk it backwards.
    for i in reversed(range(len(sccs))):
        levels[i] = 1 + max((levels[p] for p in preds[i]), default=0)
    top = max(levels, default=0)
    for i in range(len(sccs)):
        if not has_out[i]:
            levels[i] = top
    return Condensation(tuple(sccs), tuple(levels))


def is_strongly_connected(g: Digraph) -> bool:
    if not g.nodes:
        return False
    return len(tarjan_sccs(g.nodes, g.successors())) == 1


def is_hcf(theory: Theory) -> bool:
    sccs = tarjan_sccs(theory.atoms, dependency_graph(theory).successors())
    comp = {v: i for i, c in enumerate(sccs) for v in c}
    for c in theory.clauses:
        if len(c.head) > 1:
            seen = set()
            for h in c.head:
                if comp[h] in seen:
                    return False
                seen.add(comp[h])
    return True


@dataclass(frozen=True)
class ElementaryGraph:
    graph: Digraph
    sccs: tuple
    levels: tuple
    rounds: tuple          # E_0, E_1, ... ; the last one equals graph.arcs
    fired: tuple = field(default=())  # per round, indices of clauses consumed

    @property
    def strongly_connected(self) -> bool:
        return len(self.sccs) == 1

    def last_level(self) -> list[frozenset]:
        return Condensation(self.sccs, self.levels).last_level()


def elementary_subgraph(theory: Theory, x: AbstractSet[int]) -> ElementaryGraph:
    """Elementary subgraph of ``x`` for the single-head clauses of ``theory``.

    Clauses are taken from the Horn fragment and projected onto ``x``; a clause
    fires in a round when its projected body lies inside one strongly
    connected component of the current graph, adding arcs body -> head.
    """
    x = frozenset(x)
    pending: list[tuple[int, int, frozenset]] = []
    for i, c in enumerate(theory.clauses):
        if len(c.head) != 1:
            continue
        (h,) = c.head
        if h not in x:
            continue
        body = c.body & x
        if body:
            pending.append((i, h, body))
    arcs: set[tuple[int, int]] = set()
    rounds = [frozenset()]
    fired_rounds = []
    succ: dict[int, list[int]] = {v: [] for v in x}
    while True:
        comp = {v: k for k, c in enumerate(tarjan_sccs(x, succ)) for v in c}
        fire = []
        keep = []
        for item in pending:
            body = item[2]
            first = comp[next(iter(body))]
            if all(comp[b] == first for b in body):
                fire.append(item)
            else:
                keep.append(item)
        if not fire:
            break
        for _, h, body in fire:
            for b in body:
                if (b, h) not in arcs:
                    arcs.add((b, h))
                    succ[b].append(h)
        for vs in succ.values():
            vs.sort()
        pending = keep
        rounds.append(frozenset(arcs))
        fired_rounds.append(tuple(i for i, _, _ in fire))
    graph = Digraph(x, frozenset(arcs))
    cond = scc_condensation(graph)
    return ElementaryGraph(graph, cond.sccs, cond.levels, tuple(rounds),
                           tuple(fired_rounds))


def is_elementary_via_graph(theory: Theory, x: AbstractSet[int]) -> bool:
    if theory.is_disjunctive:
        raise NonHornInput("elementary subgraphs characterize elementary sets "
                           "only for non-disjunctive theories")
    if not x:
        raise ValueError("elementary sets are non-empty")
    return elementary_subgraph(theory, x).strongly_connected


def to_dot(g: Digraph, name: Callable[[int], str], *, title: str = "G",
           sccs: Iterable[frozenset] = ()) -> str:
    lines = [f"digraph {title} {{"]
    for k, comp in enumerate(sccs):
        if len(comp) > 1:
            members = " ".join(f'"{name(v)}"' for v in sorted(comp))
            lines.append(f"  subgraph cluster_{k} {{ {members} }}")
    for v in sorted(g.nodes):
        lines.append(f'  "{name(v)}";')
    for u, v in sorted(g.arcs):
        lines.append(f'  "{name(u)}" -> "{name(v)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
