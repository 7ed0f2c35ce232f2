import json
import random
from itertools import combinations

import networkx as nx
import pytest

from unavoidable.errors import DomainError, ParseError, ValidationError
from unavoidable.graph import (
    Graph,
    chordless_cycle_through,
    connectivity_profile,
    from_graph6,
    induced_subgraph,
    is_induced_cycle,
    parse_graph,
    serialize_graph,
    to_graph6,
)

from gen import all_graphs, bf_bridges, bf_components, bf_cutvertices, cycle_graph, random_graph


def K(n):
    return Graph(n, combinations(range(n), 2))


BOWTIE = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def wheel(k):
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)] + [(i, i % k + 1) for i in range(1, k + 1)])


class TestConstruction:
    def test_triangle_json(self):
        G = parse_graph('{"n":3,"edges":[[0,1],[1,2],[0,2]]}')
        assert G == cycle_graph(3)

    def test_graph6_triangle(self):
        assert from_graph6("Bw") == cycle_graph(3)
        assert to_graph6(cycle_graph(3)) == "Bw"

    def test_loop_rejected(self):
        with pytest.raises(ValidationError):
            parse_graph('{"n":2,"edges":[[0,0]]}')

    @pytest.mark.parametrize("text", ['{"n":2,"edges":[[0,1],[1,0]]}', '{"n":2,"edges":[[0,5]]}',
                                      '{"n":-1,"edges":[]}', '{"edges":[]}', '[1,2]'])
    def test_bad_json_objects(self, text):
        with pytest.raises(ValidationError):
            parse_graph(text)

    def test_malformed_text(self):
        with pytest.raises(ParseError):
            parse_graph("{not json")
        with pytest.raises(ParseError):
            parse_graph("", "g6")
        with pytest.raises(DomainError):
            parse_graph("Bw", "xml")

    def test_auto_format(self):
        assert parse_graph("Bw\n", "auto") == parse_graph('{"n":3,"edges":[[0,1],[1,2],[0,2]]}', "auto")

    def test_degree_and_adjacency(self):
        G = BOWTIE
        assert G.degree(2) == 4 and G.has_edge(3, 4) and not G.has_edge(0, 3)
        assert sum(G.degree(v) for v in range(G.n)) == 2 * G.m


def test_graph6_matches_networkx():
    rng = random.Random(4)
    for _ in range(300):
        n = rng.randint(1, 70)
        G = random_graph(rng, n, rng.random())
        H = nx.Graph()
        H.add_nodes_from(range(n))
        H.add_edges_from(G.edges)
        ref = nx.to_graph6_bytes(H, header=False).decode().strip()
        assert to_graph6(G) == ref
        assert from_graph6(ref) == G


def test_serialize_round_trip():
    rng = random.Random(5)
    for _ in range(200):
        G = random_graph(rng, rng.randint(0, 30), 0.3)
        for fmt in ("json", "g6"):
            assert parse_graph(serialize_graph(G, fmt), fmt) == G
    assert json.loads(serialize_graph(BOWTIE))["n"] == 5


class TestInduced:
    def test_k4_three_vertices(self):
        H, mapping = induced_subgraph(K(4), [0, 2, 3])
        assert H == cycle_graph(3) and mapping == [0, 2, 3]

    def test_c5_path_and_identity(self):
        H, _ = induced_subgraph(cycle_graph(5), [1, 2, 3])
        assert sorted(H.edges) == [(0, 1), (1, 2)]
        H, _ = induced_subgraph(cycle_graph(5), range(5))
        assert H == cycle_graph(5)


class TestProfile:
    def test_k2(self):
        p = connectivity_profile(K(2))
        assert p.connected and not p.two_edge_connected and p.bridges == [(0, 1)]

    def test_c3(self):
        p = connectivity_profile(cycle_graph(3))
        assert p.two_edge_connected and p.two_connected

    def test_bowtie(self):
        p = connectivity_profile(BOWTIE)
        assert p.two_edge_connected and not p.two_connected and p.cutvertices == [2]

    @pytest.mark.parametrize("n", range(1, 6))
    def test_exhaustive_small(self, n):
        for G in all_graphs(n):
            _check_profile(G)


def _check_profile(G):
    p = connectivity_profile(G)
    connected = bf_components(G) == 1
    bridges = bf_bridges(G)
    cuts = bf_cutvertices(G)
    assert p.connected == connected
    assert sorted(p.bridges) == bridges
    assert sorted(p.cutvertices) == cuts
    assert p.two_edge_connected == (connected and G.n >= 2 and not bridges)
    assert p.two_connected == (p.two_edge_connected and G.n >= 3 and not cuts)


class TestChordless:
    def test_c5(self):
        c = chordless_cycle_through(cycle_graph(5), 0)
        assert len(c) == 5 and c[0] == 0

    def test_k4(self):
        assert len(chordless_cycle_through(K(4), 0)) == 3

    def test_wheel_hub(self):
        c = chordless_cycle_through(wheel(5), 0)
        assert c[0] == 0 and len(c) == 3 and is_induced_cycle(wheel(5), c)

    def test_none_on_tree(self):
        assert chordless_cycle_through(Graph(3, [(0, 1), (1, 2)]), 1) is None

    def test_random_outputs_induced(self):
        rng = random.Random(9)
        for _ in range(300):
            G = random_graph(rng, rng.randint(3, 25), rng.choice([0.1, 0.3, 0.6]))
            v = rng.randrange(G.n)
            c = chordless_cycle_through(G, v)
            if c is None:
                continue
            assert v in c and len(c) >= 3
            H, mapping = induced_subgraph(G, c)
            pos = {x: k for k, x in enumerate(mapping)}
            ring = {tuple(sorted((pos[c[k]], pos[c[(k + 1) % len(c)]]))) for k in range(len(c))}
            assert set(H.edges) == ring
