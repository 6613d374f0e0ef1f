import json

import pytest

from rootqca.errors import BudgetExceeded, CoprimeViolated
from rootqca.exchange_graph import canonical_key, classical_shadow_iso, explore
from rootqca.samples import FINITE_TYPES, GRAPH_SIZES, finite_type_seed, non_coprime_seed
from rootqca.seeds import ExchangeMatrix, Seed
from rootqca.torus import SkewForm


@pytest.mark.parametrize("name", FINITE_TYPES)
def test_finite_type_sizes(name):
    graph = explore(finite_type_seed(name, 5))
    assert graph.complete
    assert len(graph.nodes) == GRAPH_SIZES[name]
    # every vertex of a rank-two exchange graph has one edge per mutable position
    assert 2 * len(graph.edges) == sum(len(node.seed.ex) for node in graph.nodes)


@pytest.mark.parametrize("name", FINITE_TYPES)
@pytest.mark.parametrize("ell", [5, 7])
def test_matches_classical_shadow(name, ell):
    result = classical_shadow_iso(finite_type_seed(name, ell))
    assert result.ok, result.reason
    assert len(result.quantum.nodes) == len(result.classical.nodes)


def test_key_ignores_relabelling():
    a = finite_type_seed("B2", 5)
    gens = a.frame
    swapped = Seed.initial(
        SkewForm.from_integer(5, [[0, -1], [1, 0]]),
        ExchangeMatrix.square([[0, -1], [2, 0]]),
        frame=(gens[1], gens[0]),
    )
    assert canonical_key(swapped) == canonical_key(a)
    assert canonical_key(a) != canonical_key(a.mutate(0))
    assert canonical_key(a.mutate(0).mutate(0)) == canonical_key(a)


def test_budget():
    with pytest.raises(BudgetExceeded) as info:
        explore(finite_type_seed("G2", 5), max_nodes=3)
    assert len(info.value.partial.nodes) == 3
    partial = explore(finite_type_seed("G2", 5), max_depth=1, strict=False)
    assert not partial.complete and partial.frontier


def test_shadow_needs_coprime():
    with pytest.raises(CoprimeViolated):
        classical_shadow_iso(non_coprime_seed(9))


def test_serialisation():
    graph = explore(finite_type_seed("A2", 5))
    dot = graph.to_dot()
    assert dot.startswith("graph exchange {") and dot.count(" -- ") == 5
    assert json.loads(graph.to_json()) == {"nodes": 5, "edges": 5, "complete": True}
    adj = graph.adjacency()
    assert len(adj) == 10
    assert all(adj[(adj[(u, k)], k2)] == u for u, k, _, k2 in graph.edges)
