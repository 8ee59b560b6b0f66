import itertools
import random

import pytest
from conftest import C9, K3, K5, P3, P4, P5, THREE_K3, complete_graph, cycle, path
from oracles import brute_force_feedback, brute_force_vertex_cover

from bergesat.errors import SizeLimitError
from bergesat.hypergraph import Hypergraph, disjoint_union, make_graph
from bergesat.invariants import (
    CaseTag,
    CoverCertificate,
    case_select,
    connected_components,
    feedback_number,
    is_forest,
    vertex_cover_number,
)


def random_graph(rng, n, p):
    return make_graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


class TestComponents:
    def test_triangle(self):
        assert len(connected_components(K3)) == 1

    def test_triangle_plus_path(self):
        comps = connected_components(disjoint_union(K3, P3))
        assert [c.n for c, _ in comps] == [3, 3]
        assert comps[1][1] == (3, 4, 5)

    def test_three_triangles(self):
        comps = connected_components(THREE_K3)
        assert len(comps) == 3
        assert all(c == K3 for c, _ in comps)

    def test_vertex_maps_embed(self):
        g = make_graph(7, [(0, 5), (5, 6), (1, 2), (2, 3), (1, 3)])
        for comp, vmap in connected_components(g):
            for u, v in comp.edges:
                assert g.has_edge((vmap[u], vmap[v]))


class TestForest:
    def test_path(self):
        assert is_forest(P5)

    def test_triangle(self):
        assert not is_forest(K3)

    def test_mixed(self):
        g = disjoint_union(P3, K3)
        assert not is_forest(g)
        assert is_forest(connected_components(g)[0][0])


class TestVertexCover:
    def test_triangle(self):
        assert vertex_cover_number(K3)[0] == 2

    def test_three_triangles(self):
        assert vertex_cover_number(THREE_K3)[0] == 6

    def test_c9_against_exhaustive(self):
        oracle = brute_force_vertex_cover(C9.n, C9.edges)
        assert oracle == 5
        beta, cert = vertex_cover_number(C9)
        assert beta == oracle
        assert cert.validates(C9)
        # lexicographically least minimum cover
        assert cert.vertices == (0, 1, 3, 5, 7)

    def test_cap(self):
        with pytest.raises(SizeLimitError):
            vertex_cover_number(path(25))


class TestFeedback:
    def test_tree(self):
        assert feedback_number(P5)[0] == 0

    @pytest.mark.parametrize("n", [3, 4, 7, 12])
    def test_cycles(self, n):
        assert feedback_number(cycle(n))[0] == 1

    def test_k5_against_exhaustive(self):
        oracle = brute_force_feedback(K5.n, K5.edges)
        assert oracle == 3
        f, cert = feedback_number(K5)
        assert f == oracle
        assert cert.validates(K5)

    def test_cap(self):
        with pytest.raises(SizeLimitError):
            feedback_number(cycle(25))

    def test_large_clique_within_cap(self):
        f, cert = feedback_number(complete_graph(14))
        assert f == 12
        assert cert.validates(complete_graph(14))


class TestRandomCrossCheck:
    def test_against_exhaustive_n_le_10(self):
        rng = random.Random(11)
        for _ in range(60):
            g = random_graph(rng, rng.randint(2, 10), rng.choice([0.2, 0.4, 0.7]))
            beta, cover = vertex_cover_number(g)
            f, fb = feedback_number(g)
            assert beta == brute_force_vertex_cover(g.n, g.edges)
            assert f == brute_force_feedback(g.n, g.edges)
            assert cover.validates(g) and fb.validates(g)
            # minimality: no smaller set works
            if beta:
                for sub in itertools.combinations(range(g.n), beta - 1):
                    assert not CoverCertificate(sub, "vertex-cover").validates(g)
            if f:
                for sub in itertools.combinations(range(g.n), f - 1):
                    assert not CoverCertificate(sub, "feedback-set").validates(g)
            if g.m:
                assert f < beta

    def test_certificates_are_lexicographically_least(self):
        rng = random.Random(5)
        for _ in range(25):
            g = random_graph(rng, rng.randint(3, 8), 0.5)
            beta, cover = vertex_cover_number(g)
            f, fb = feedback_number(g)
            first_cover = next(s for s in itertools.combinations(range(g.n), beta)
                               if CoverCertificate(s, "vertex-cover").validates(g))
            first_fb = next(s for s in itertools.combinations(range(g.n), f)
                            if CoverCertificate(s, "feedback-set").validates(g))
            assert cover.vertices == first_cover
            assert fb.vertices == first_fb


class TestCaseSelect:
    def test_triangle(self):
        assert case_select(K3, 3) is CaseTag.F1

    def test_c9_beta_large(self):
        assert case_select(C9, 3) is CaseTag.BETA_LARGE

    def test_path_is_f0(self):
        assert case_select(P4, 5) is CaseTag.F0

    @pytest.mark.parametrize("g,k,expected", [
        (complete_graph(4), 3, CaseTag.F2),
        (complete_graph(5), 4, CaseTag.F3),
        (complete_graph(5), 3, CaseTag.BETA_LARGE),
        (complete_graph(6), 5, CaseTag.F4),
        (THREE_K3, 3, CaseTag.BETA_LARGE),
        (disjoint_union(K3, P3), 3, CaseTag.F0),
    ])
    def test_table_rows(self, g, k, expected):
        assert case_select(g, k) is expected

    def test_unsupported_for_large_k(self):
        # K6 has f=4, beta=5: no row at k=6
        assert case_select(complete_graph(6), 6) is CaseTag.UNSUPPORTED
        # K7 has f=5, beta=6 <= k=6
        assert case_select(complete_graph(7), 6) is CaseTag.UNSUPPORTED

    def test_beta_large_reverified(self):
        rng = random.Random(3)
        for _ in range(30):
            g = random_graph(rng, rng.randint(3, 10), 0.4)
            if g.m == 0 or g.isolated_vertices():
                continue
            for k in (3, 4, 5):
                if case_select(g, k) is CaseTag.BETA_LARGE:
                    beta, cover = vertex_cover_number(g)
                    assert beta >= k + 1 and cover.validates(g)

    def test_rejects_isolated_vertices(self):
        with pytest.raises(ValueError):
            case_select(Hypergraph(2, 4, [(0, 1), (1, 2), (0, 2)]), 3)
