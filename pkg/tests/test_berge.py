import itertools
import random

import pytest
from conftest import C4, K3, K13, P3, C9
from oracles import brute_force_berge

from bergesat.berge import (
    BergeWitness,
    contains_any_berge,
    contains_berge,
    expansion,
    validate_witness,
)
from bergesat.constructions import ConstructionParams, build_construction
from bergesat.errors import SearchBudgetExceeded
from bergesat.hypergraph import Hypergraph, empty_hypergraph, make_graph, make_hypergraph
from bergesat.tightpath import tight_path

PATTERNS = [P3, K3, C4, K13]


def agrees_with_oracle(host, pattern):
    w = contains_berge(host, pattern)
    o = brute_force_berge(host.edges, host.n, pattern.edges, pattern.n)
    if w is not None:
        assert validate_witness(host, pattern, w)
    return (w is None) == (o is None)


class TestContainsBerge:
    def test_expansion_of_triangle(self):
        h = expansion(K3, 3)
        w = contains_berge(h, K3)
        assert w is not None and validate_witness(h, K3, w)

    def test_single_edge_has_no_triangle(self):
        assert contains_berge(make_hypergraph(3, 3, [(0, 1, 2)]), K3) is None

    def test_lemma_host_has_no_triangle(self):
        host = build_construction(ConstructionParams(k=3, n=12, a=2, G=K3, S=(0,)))
        assert contains_berge(host, K3) is None
        assert brute_force_berge(host.edges, host.n, K3.edges, K3.n) is None

    def test_witness_is_deterministic(self):
        h = Hypergraph(3, 6, itertools.combinations(range(6), 3))
        assert contains_berge(h, C4) == contains_berge(h, C4)
        w = contains_berge(h, C4)
        assert w.core_map == (0, 1, 2, 3)

    def test_budget_reports_indeterminate(self):
        host = build_construction(ConstructionParams(k=3, n=12, a=1, G=C9, S=(0, 1, 3, 5)))
        with pytest.raises(SearchBudgetExceeded):
            contains_berge(host, C9, node_budget=50)

    def test_rejects_isolated_pattern_vertices(self):
        with pytest.raises(ValueError):
            contains_berge(expansion(K3, 3), Hypergraph(2, 4, K3.edges))

    def test_rejects_pattern_above_host_uniformity(self):
        with pytest.raises(ValueError):
            contains_berge(make_graph(4, [(0, 1)]), tight_path(3, 4))

    def test_exhaustive_small_hosts(self):
        for n in range(3, 6):
            triples = list(itertools.combinations(range(n), 3))
            for m in range(4):
                for chosen in itertools.combinations(triples, m):
                    host = Hypergraph(3, n, chosen)
                    for pattern in PATTERNS:
                        assert agrees_with_oracle(host, pattern), (host, pattern)

    def test_random_hosts_n6(self):
        rng = random.Random(2024)
        triples = list(itertools.combinations(range(6), 3))
        for _ in range(300):
            host = Hypergraph(3, 6, rng.sample(triples, rng.randint(0, 4)))
            for pattern in PATTERNS:
                assert agrees_with_oracle(host, pattern)

    def test_four_uniform_hosts_with_tight_path(self):
        rng = random.Random(9)
        quads = list(itertools.combinations(range(6), 4))
        pattern = tight_path(3, 4)
        for _ in range(150):
            host = Hypergraph(4, 6, rng.sample(quads, rng.randint(0, 3)))
            assert agrees_with_oracle(host, pattern)

    def test_monotone_under_edge_addition(self):
        rng = random.Random(4)
        triples = list(itertools.combinations(range(6), 3))
        for _ in range(100):
            host = Hypergraph(3, 6, rng.sample(triples, rng.randint(1, 5)))
            extra = rng.choice(triples)
            for pattern in PATTERNS:
                if contains_berge(host, pattern) is not None:
                    assert contains_berge(host.add_edges(extra), pattern) is not None


class TestRequiredEdge:
    def test_matches_plain_search_on_free_hosts(self):
        rng = random.Random(8)
        triples = list(itertools.combinations(range(6), 3))
        checked = 0
        for _ in range(200):
            host = Hypergraph(3, 6, rng.sample(triples, rng.randint(0, 4)))
            for pattern in PATTERNS:
                if contains_berge(host, pattern) is not None:
                    continue
                for e in host.non_edges():
                    bigger = host.add_edges(e)
                    pinned = contains_berge(bigger, pattern, required_edge=e)
                    plain = contains_berge(bigger, pattern)
                    assert (pinned is None) == (plain is None)
                    if pinned is not None:
                        assert validate_witness(bigger, pattern, pinned)
                        assert bigger.edge_index[e] in {j for _, j in pinned.edge_map}
                    checked += 1
        assert checked > 1000

    def test_required_edge_must_exist(self):
        with pytest.raises(ValueError):
            contains_berge(expansion(K3, 3), K3, required_edge=(0, 1, 2))


class TestContainsAny:
    def test_empty_host(self):
        assert contains_any_berge(empty_hypergraph(3, 6), [K3, P3]) is None

    def test_expansion_of_path(self):
        idx, w = contains_any_berge(expansion(P3, 3), [K3, P3])
        assert idx == 1
        assert validate_witness(expansion(P3, 3), P3, w)

    def test_two_vertex_feedback_host(self):
        # Only graphs with feedback number >= 2 are excluded from this host;
        # short cycles (f = 1) do occur, e.g. the triangle on V1 plus one block.
        from conftest import K4, cycle

        host = build_construction(ConstructionParams(k=3, n=8, a=2, G=C4, S=(0, 1)))
        cycles = [cycle(3), cycle(4), cycle(5)]
        idx, w = contains_any_berge(host, cycles)
        assert idx == 0 and validate_witness(host, cycles[0], w)
        assert brute_force_berge(host.edges, host.n, K3.edges, K3.n) is not None
        assert contains_any_berge(host, [K4]) is None
        assert brute_force_berge(host.edges, host.n, K4.edges, K4.n) is None


class TestExpansion:
    def test_triangle(self):
        h = expansion(K3, 3)
        assert (h.n, h.m) == (6, 3)

    def test_path_k4(self):
        h = expansion(P3, 4)
        assert (h.n, h.m) == (7, 2)

    def test_tight_path_k5(self):
        h = expansion(tight_path(3, 5), 5)
        assert (h.n, h.m) == (11, 3)

    def test_needs_larger_k(self):
        with pytest.raises(ValueError):
            expansion(K3, 2)

    @pytest.mark.parametrize("pattern", [P3, K3, C4, K13, tight_path(3, 5)])
    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_identity_core(self, pattern, k):
        if k <= pattern.k:
            pytest.skip("expansion needs k > r")
        h = expansion(pattern, k)
        w = contains_berge(h, pattern)
        assert w is not None
        assert w.core_map == tuple(range(pattern.n))


class TestValidator:
    def test_rejects_reused_edge(self):
        h = expansion(K3, 3)
        assert not validate_witness(h, K3, BergeWitness((0, 1, 2), ((0, 0), (1, 0), (2, 0))))

    def test_rejects_non_containing_edge(self):
        h = expansion(K3, 3)
        assert not validate_witness(h, K3, BergeWitness((0, 1, 2), ((0, 1), (1, 0), (2, 2))))

    def test_rejects_non_injective_core(self):
        h = expansion(K3, 3)
        assert not validate_witness(h, K3, BergeWitness((0, 0, 2), ((0, 0), (1, 1), (2, 2))))

    def test_json_round_trip(self):
        w = contains_berge(expansion(K3, 3), K3)
        assert BergeWitness.from_json(w.to_json()) == w
        assert set(w.to_json()) == {"core_map", "edge_map"}
