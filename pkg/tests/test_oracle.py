import csv
import io
import json
import random
from itertools import combinations

import networkx as nx
import pytest

from unavoidable.errors import DomainError, SizeLimitError
from unavoidable.graph import Graph, connectivity_profile
from unavoidable.oracle import (
    canonical_form,
    dedup_isomorphic,
    empirical_threshold,
    enumerate_2ec,
    find_clean_ladder,
    find_hole,
    find_theta,
    max_clique,
    bound,
    sample_2ec,
    search_theta,
)
from unavoidable.structures import PinchedLadderWitness, StructureCertificate, certify

from gen import all_graphs, cycle_graph, random_2ec, random_graph


def K(n):
    return Graph(n, combinations(range(n), 2))


def petersen():
    return Graph(10, [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
                 + [(5 + i, 5 + (i + 2) % 5) for i in range(5)])


class TestBounds:
    def test_pinned(self):
        assert bound("f_largecutverttree", 3, 3) == 4
        assert bound("f_pathtobc", 3) == 6
        assert bound("R", 4) == 10
        assert bound("f_supercleaning", 3) == 3
        assert bound("f_supercleaning", 4) == 31

    def test_formulas(self):
        for p in range(3, 12):
            for q in range(3, 12):
                assert bound("f_largecutverttree", p, q) == 2 + (p - 1) * (q - 2)
        for r in range(4, 15):
            R = (3 * r - 3) * (r - 3) + 1
            assert bound("R", r) == R
            assert bound("f_supercleaning", r) == -(-(R * (r - 1) * (r - 2) + 1) // 2)

    @pytest.mark.parametrize("args", [("f_largecutverttree", 2, 3), ("f_largecutverttree", 3),
                                      ("f_pathtobc", 0), ("R", 2), ("f_supercleaning", 2),
                                      ("nope", 3), ("f_pathtobc", True)])
    def test_domain(self, args):
        with pytest.raises(DomainError):
            bound(*args)


class TestClique:
    def test_examples(self):
        assert sorted(max_clique(K(5))) == [0, 1, 2, 3, 4]
        assert len(max_clique(cycle_graph(6))) == 2
        assert len(max_clique(petersen())) == 2

    def test_petersen_triangle_free(self):
        G = petersen()
        assert not any(G.has_edge(a, c) for a, b in G.edges for c in G.adj[b] if c != a)

    def test_limit(self):
        with pytest.raises(SizeLimitError):
            max_clique(cycle_graph(70))
        assert len(max_clique(cycle_graph(70), limit=100)) == 2

    def test_against_subsets(self):
        rng = random.Random(6)
        for _ in range(150):
            n = rng.randint(1, 10)
            G = random_graph(rng, n, rng.random())
            best = max(k for k in range(1, n + 1)
                       if any(all(G.has_edge(a, b) for a, b in combinations(S, 2))
                              for S in combinations(range(n), k)))
            C = max_clique(G)
            assert len(C) == best
            assert all(G.has_edge(a, b) for a, b in combinations(C, 2))


class TestTheta:
    def test_k23(self):
        G = Graph(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)])
        w = find_theta(G, 0, 1, 3)
        assert w is not None and len(w.paths) == 3
        assert certify(G, StructureCertificate.of(w, 3))

    def test_c8(self):
        assert find_theta(cycle_graph(8), 0, 4, 3) is None

    def test_k4_inducedness(self):
        assert find_theta(K(4), 0, 1, 3) is None
        assert find_theta(K(4), 0, 1, 2) is not None

    def test_direct_edge_is_a_path(self):
        G = Graph(4, [(0, 1), (0, 2), (2, 1), (0, 3), (3, 1)])
        w = find_theta(G, 0, 1, 3)
        assert (0, 1) in w.paths and certify(G, StructureCertificate.of(w, 3))

    def test_bad_vertices(self):
        with pytest.raises(DomainError):
            find_theta(K(3), 0, 0, 2)

    def test_random_results_certify(self):
        rng = random.Random(8)
        for _ in range(200):
            G = random_2ec(rng, rng.randint(4, 16), rng.choice([0.2, 0.4]))
            res = search_theta(G, 3, budget=5000)
            assert res.status in ("found", "exhausted", "budget")
            if res.witness is not None:
                assert certify(G, StructureCertificate.of(res.witness, 3))

    def test_exhausted_means_absent_small(self):
        # every theta-free verdict on small graphs agrees with networkx path enumeration
        rng = random.Random(9)
        for _ in range(100):
            G = random_2ec(rng, rng.randint(4, 8), 0.4)
            H = nx.Graph(list(G.edges))
            for u, v in combinations(range(G.n), 2):
                w = find_theta(G, u, v, 3)
                if w is not None:
                    continue
                paths = [tuple(p) for p in nx.all_simple_paths(H, u, v)]
                for trio in combinations(paths, 3):
                    inner = [set(p[1:-1]) for p in trio]
                    if any(inner[i] & inner[j] for i in range(3) for j in range(i + 1, 3)):
                        continue
                    if sum(len(p) == 2 for p in trio) > 1:
                        continue
                    verts = set().union(*map(set, trio))
                    union = {tuple(sorted(e)) for p in trio for e in zip(p, p[1:])}
                    induced = {e for e in G.edges if e[0] in verts and e[1] in verts}
                    assert union != induced, (sorted(G.edges), u, v, trio)


class TestHoles:
    def test_cycle(self):
        res = find_hole(cycle_graph(9), 9)
        assert res.status == "found" and len(res.cycle) == 9

    def test_none_in_chordal(self):
        assert find_hole(K(6), 4).status == "exhausted"

    def test_results_are_holes(self):
        rng = random.Random(10)
        for _ in range(200):
            G = random_2ec(rng, rng.randint(4, 20), rng.choice([0.15, 0.3]))
            res = find_hole(G, 4)
            if res.cycle is not None:
                c = res.cycle
                w = StructureCertificate.of(PinchedLadderWitness((c[0], c[-1]), c), 4)
                assert certify(G, w)


class TestCleanLadder:
    def test_c9(self):
        res = find_clean_ladder(cycle_graph(9), 9)
        L = res.witness
        assert len(L.P) + len(L.Q) == 9
        assert certify(cycle_graph(9), StructureCertificate.of(L, 9))

    def test_grid(self):
        G = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)])
        L = find_clean_ladder(G, 6).witness
        assert len(L.P) + len(L.Q) == 6 and certify(G, StructureCertificate.of(L, 6))

    def test_k5_gives_k4_ladder(self):
        # K4 on rails p1p2 / q1q2 has one cross, and it is trivial
        L = find_clean_ladder(K(5), 4).witness
        assert len(L.P) + len(L.Q) == 4
        assert certify(K(5), StructureCertificate.of(L, 4))
        assert find_clean_ladder(K(5), 5).status == "exhausted"

    def test_random(self):
        rng = random.Random(11)
        for _ in range(100):
            G = random_2ec(rng, rng.randint(3, 14))
            target = rng.randint(3, G.n)
            res = find_clean_ladder(G, target)
            if res.witness is not None:
                L = res.witness
                assert len(L.P) + len(L.Q) >= target
                assert certify(G, StructureCertificate.of(L, target))
            else:
                assert res.status == "exhausted"


class TestEnumeration:
    @pytest.mark.parametrize("n", range(3, 6))
    def test_counts_match_brute_force(self, n):
        expected = sorted(G.sorted_edges() for G in all_graphs(n) if connectivity_profile(G).two_edge_connected)
        got = sorted(G.sorted_edges() for G in enumerate_2ec(n))
        assert got == expected

    def test_small_counts(self):
        assert sum(1 for _ in enumerate_2ec(3)) == 1
        assert sum(1 for _ in enumerate_2ec(4)) == 10

    def test_shards_partition(self):
        whole = [G.edges for G in enumerate_2ec(6)]
        parts = [G.edges for k in range(4) for G in enumerate_2ec(6, shard=(k, 4))]
        assert whole == parts and len(whole) == 11968

    def test_sampled(self):
        graphs = list(enumerate_2ec(20, ("sampled", 100, 1)))
        assert len(graphs) == 100
        assert all(connectivity_profile(G).two_edge_connected for G in graphs)
        assert graphs == list(enumerate_2ec(20, "sampled:100:1"))

    def test_sparse_repair(self):
        for G, repaired in sample_2ec(40, 50, 3, p=0.03):
            assert connectivity_profile(G).two_edge_connected

    def test_limits(self):
        with pytest.raises(DomainError):
            list(enumerate_2ec(8))
        with pytest.raises(DomainError):
            list(enumerate_2ec(65, "sampled:1"))
        with pytest.raises(DomainError):
            list(enumerate_2ec(5, "weird"))

    def test_isomorphism_classes(self):
        for n in (4, 5):
            atlas = [g for g in nx.graph_atlas_g() if g.number_of_nodes() == n
                     and nx.is_connected(g) and not any(nx.bridges(g))]
            assert len(dedup_isomorphic(enumerate_2ec(n))) == len(atlas)
        a = cycle_graph(5)
        b = Graph(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)])
        assert canonical_form(a) == canonical_form(b)


class TestThreshold:
    def test_triangle_only(self):
        rep = empirical_threshold(3, 3)
        assert rep.counts == {3: 1} and rep.least_order == 3
        assert sum(rep.tallies[3].values()) == 1 and rep.tallies[3]["not_found"] == 0

    def test_r4_small(self):
        rep = empirical_threshold(4, 5)
        for n in range(3, 6):
            assert sum(rep.tallies[n].values()) == rep.counts[n]
            assert rep.invalid[n] == 0
        assert rep.tallies[3]["not_found"] == 1          # the triangle
        assert rep.least_order is None or rep.least_order > 3

    def test_serialisation(self):
        rep = empirical_threshold(3, 5, samples=5)
        obj = json.loads(rep.to_json())
        assert obj["least_all_certified_order"] == 3
        rows = list(csv.reader(io.StringIO(rep.to_csv())))
        assert rows[0] == ["r", "n", "mode", "outcome", "count"]
        assert len(rows) == 1 + 3 * 6

    def test_sampled_orders(self):
        rep = empirical_threshold(3, 9, n_min=8, samples=10, seed=2)
        assert rep.modes[8].startswith("sampled") and rep.counts[9] == 10
        assert rep.least_order == 8
