"""Breadth-first exploration of exchange graphs, up to permutation of positions."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import permutations, product

from .errors import BudgetExceeded, CoprimeViolated
from .seeds import Seed, skew_symmetrizer
from .torus import SkewForm


def _ordering_candidates(rendered):
    """All position orders sorting ``rendered``, permuting within runs of equal strings."""
    order = sorted(range(len(rendered)), key=lambda i: rendered[i])
    groups, start = [], 0
    for i in range(1, len(order) + 1):
        if i == len(order) or rendered[order[i]] != rendered[order[start]]:
            groups.append(order[start:i])
            start = i
    for choice in product(*(permutations(g) for g in groups)):
        yield [p for g in choice for p in g]


def canonical_key(seed: Seed) -> tuple:
    """A hashable invariant identifying a seed up to simultaneous permutation of positions."""
    return _canonical(seed)[0]


def _canonical(seed: Seed):
    rendered = [str(v) for v in seed.frame]
    n = seed.n
    ex = seed.ex
    cols = {k: seed.bmat.column(k) for k in ex}
    lam = seed.form.entries
    best = None
    for perm in _ordering_candidates(rendered):
        bfull = tuple(
            tuple(cols[perm[b]][perm[a]] if perm[b] in cols else None for b in range(n)) for a in range(n)
        )
        lam_p = tuple(tuple(lam[perm[a]][perm[b]] for b in range(n)) for a in range(n))
        inv = tuple(sorted(perm.index(i) for i in seed.inv))
        key = (tuple(rendered[p] for p in perm), bfull, lam_p, inv)
        if best is None or key < best[0]:
            best = (key, perm)
    return best


@dataclass
class GraphNode:
    index: int
    key: tuple
    seed: Seed
    depth: int
    word: tuple


@dataclass
class LabelledGraph:
    """Nodes are seeds up to permutation; an edge ``(u, k, v, k2)`` joins position ``k`` of ``u`` with ``k2`` of ``v``."""

    nodes: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    complete: bool = True
    frontier: list = field(default_factory=list)

    def summary(self) -> dict:
        return {"nodes": len(self.nodes), "edges": len(self.edges), "complete": self.complete}

    def to_dot(self) -> str:
        lines = ["graph exchange {"]
        for node in self.nodes:
            label = "mu" + ".".join(map(str, node.word)) if node.word else "initial"
            lines.append(f'  n{node.index} [label="{label}"];')
        for u, k, v, k2 in self.edges:
            lines.append(f'  n{u} -- n{v} [label="{k}/{k2}"];')
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(self.summary())

    def adjacency(self) -> dict:
        adj = {}
        for u, k, v, k2 in self.edges:
            adj[(u, k)] = v
            adj[(v, k2)] = u
        return adj


def explore(seed: Seed, max_nodes: int = 1000, max_depth: int = 50, strict: bool = True) -> LabelledGraph:
    """Breadth-first search over mutations.

    When a bound is hit the partial graph is marked incomplete; with
    ``strict`` it is raised inside :class:`BudgetExceeded`.
    """
    graph = LabelledGraph()
    key0, _ = _canonical(seed)
    graph.nodes.append(GraphNode(0, key0, seed, 0, ()))
    index = {key0: 0}
    seen_edges = set()
    queue = deque([0])
    while queue:
        u = queue.popleft()
        node = graph.nodes[u]
        if node.depth >= max_depth:
            graph.complete = False
            graph.frontier.append(u)
            continue
        for k in node.seed.ex:
            if (u, k) in seen_edges:
                continue
            nxt = node.seed.mutate(k)
            key, perm = _canonical(nxt)
            v = index.get(key)
            if v is None:
                if len(graph.nodes) >= max_nodes:
                    graph.complete = False
                    if u not in graph.frontier:
                        graph.frontier.append(u)
                    continue
                v = len(graph.nodes)
                index[key] = v
                graph.nodes.append(GraphNode(v, key, nxt, node.depth + 1, node.word + (k,)))
                queue.append(v)
            k2 = _matching_position(graph.nodes[v].seed, nxt, k)
            seen_edges.add((u, k))
            seen_edges.add((v, k2))
            graph.edges.append((u, k, v, k2))
    if strict and not graph.complete:
        raise BudgetExceeded(f"exploration stopped at {len(graph.nodes)} nodes", graph)
    return graph


def _matching_position(rep: Seed, other: Seed, k: int) -> int:
    target = other.frame[k]
    for i, v in enumerate(rep.frame):
        if v == target:
            return i
    raise AssertionError("identified seeds do not share the mutated variable")


def classical_seed(seed: Seed) -> Seed:
    """The l = 1 seed with the same exchange matrix and the standard commutative frame."""
    form = SkewForm.zero(1, seed.n)
    return Seed.initial(form, seed.bmat, skew_symmetrizer(seed.bmat))


@dataclass
class IsoResult:
    ok: bool
    quantum: LabelledGraph
    classical: LabelledGraph
    witness: dict
    reason: str = ""


def classical_shadow_iso(seed: Seed, max_nodes: int = 1000, max_depth: int = 50) -> IsoResult:
    """Compare the exchange graph of ``seed`` with that of its classical shadow.

    The witness maps each quantum node to the classical node reached by the
    same mutation word.
    """
    if not seed.coprime():
        raise CoprimeViolated(f"l={seed.ell} with d={seed.d} violates the coprime hypothesis")
    quantum = explore(seed, max_nodes, max_depth)
    shadow0 = classical_seed(seed)
    classical = explore(shadow0, max_nodes, max_depth)
    cindex = {node.key: node.index for node in classical.nodes}
    images = {}
    for node in quantum.nodes:
        image = shadow0.mutate_word(node.word)
        key = canonical_key(image)
        if key not in cindex:
            return IsoResult(False, quantum, classical, {}, f"word {node.word} leaves the classical graph")
        images[node.index] = (cindex[key], image)
    witness = {q: c for q, (c, _) in images.items()}
    if len(set(witness.values())) != len(witness) or len(witness) != len(classical.nodes):
        return IsoResult(False, quantum, classical, witness, "node correspondence is not a bijection")
    for u, k, v, _ in quantum.edges:
        target = canonical_key(images[u][1].mutate(k))
        if cindex[target] != witness[v]:
            return IsoResult(False, quantum, classical, witness, f"edge ({u}, {k}) is not preserved")
    if len(quantum.edges) != len(classical.edges):
        return IsoResult(False, quantum, classical, witness, "edge counts differ")
    return IsoResult(True, quantum, classical, witness)
