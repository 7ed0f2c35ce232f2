import random
from collections import Counter
from math import ceil

import pytest

from unavoidable.errors import NotEulerianError, PreconditionError, ValidationError
from unavoidable.graph import Graph
from unavoidable.reductions import eulerian_circuit, reduce_minor, reduce_topological
from unavoidable.structures import (
    ChainWitness,
    Clique,
    FlowerWitness,
    PinchedLadderWitness,
    StructureCertificate,
    ThetaWitness,
    certify,
    crosses_and_fans,
    witness_edges,
)

from gen import (
    cycle_as_scpl,
    cycle_graph,
    random_chain_of_cycles,
    random_flower,
    random_scpl,
    random_theta,
)

BOWTIE = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def check_trail(walk, edges):
    assert walk[0] == walk[-1]
    used = Counter(tuple(sorted(e)) for e in zip(walk, walk[1:]))
    assert set(used) == set(edges) and all(c == 1 for c in used.values())


def k24():
    return Graph(6, [(a, b) for a in (0, 1) for b in (2, 3, 4, 5)])


class TestEuler:
    def test_triangle(self):
        cert = StructureCertificate.of(cycle_as_scpl(3), 3)
        walk = eulerian_circuit(cert, cycle_graph(3))
        assert len(walk) == 4
        check_trail(walk, cycle_graph(3).edges)

    def test_bowtie_flower(self):
        cert = StructureCertificate.of(FlowerWitness(2, ((2, 0, 1), (2, 3, 4))), 2)
        walk = eulerian_circuit(cert)
        assert len(walk) == 7 and walk[:-1].count(2) == 2
        check_trail(walk, BOWTIE.edges)

    def test_k24_theta(self):
        cert = StructureCertificate.of(ThetaWitness((0, 1), tuple((0, b, 1) for b in (2, 3, 4, 5))), 4)
        walk = eulerian_circuit(cert)
        assert len(walk) == 9
        check_trail(walk, k24().edges)

    def test_odd_theta(self):
        cert = StructureCertificate.of(ThetaWitness((0, 1), ((0, 2, 1), (0, 3, 1), (0, 4, 1))), 3)
        with pytest.raises(NotEulerianError):
            eulerian_circuit(cert)

    def test_invalid_certificate(self):
        cert = StructureCertificate.of(Clique((0, 1, 2)), 3)
        with pytest.raises(ValidationError):
            eulerian_circuit(cert, Graph(3, [(0, 1), (1, 2)]))

    def test_scpl_needs_host(self):
        with pytest.raises(PreconditionError):
            eulerian_circuit(StructureCertificate.of(cycle_as_scpl(5), 5))

    @pytest.mark.parametrize("make", [random_flower, random_chain_of_cycles,
                                      lambda rng: random_theta(rng, even=True)])
    def test_random(self, make):
        rng = random.Random(41)
        for _ in range(70):
            G, cert = make(rng)
            check_trail(eulerian_circuit(cert, G), witness_edges(G, cert))


class TestTopological:
    def test_cycle_is_its_own_reduction(self):
        red = reduce_topological(StructureCertificate.of(cycle_as_scpl(7), 7), cycle_graph(7))
        assert red.graph.n == 7 and red.graph.m == 7
        assert certify(red.graph, red.certificate)

    def test_subdivided_k23(self):
        G = Graph(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)])
        red = reduce_topological(StructureCertificate.of(
            ThetaWitness((0, 1), ((0, 2, 1), (0, 3, 1), (0, 4, 1))), 3), G)
        assert red.graph.n == 5 and red.graph.m == 6

    def test_chain_of_cycles_lengths_453(self):
        # blocks C4, C5, C3 joined at 3 and 7
        edges = [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6), (6, 7), (7, 3), (7, 8), (8, 9), (9, 7)]
        G = Graph(10, edges)
        chain = ChainWitness((PinchedLadderWitness((0, 3), (0, 1, 2, 3)),
                              PinchedLadderWitness((3, 7), (3, 4, 5, 6, 7)),
                              PinchedLadderWitness((7, 8), (7, 9, 8))))
        cert = StructureCertificate.of(chain, 3)
        assert certify(G, cert)
        red = reduce_topological(cert, G)
        assert red.certificate.kind == "chain" and red.certificate.parameter == 3
        assert all(L.order == 3 for L in red.certificate.witness.ladders)
        assert certify(red.graph, red.certificate)
        minor = reduce_minor(cert, G)
        assert all(L.order == 3 for L in minor.certificate.witness.ladders)
        assert certify(minor.graph, minor.certificate)

    def test_chain_block_count_preserved(self):
        rng = random.Random(42)
        for _ in range(100):
            G, cert = random_chain_of_cycles(rng)
            red = reduce_topological(cert, G)
            assert red.certificate.parameter == cert.parameter
            assert certify(red.graph, red.certificate)

    def test_flower_and_theta_certify(self):
        rng = random.Random(43)
        for make in (random_flower, random_theta):
            for _ in range(50):
                G, cert = make(rng)
                red = reduce_topological(cert, G)
                assert certify(red.graph, red.certificate)
                assert red.certificate.parameter == cert.parameter


class TestMinor:
    def test_triangular_flower_unchanged(self):
        cert = StructureCertificate.of(FlowerWitness(2, ((2, 0, 1), (2, 3, 4))), 2)
        red = reduce_minor(cert)
        assert red.graph.n == 5 and red.graph.m == 6

    def test_order8_one_cross(self):
        # s=0, P = 0 1 2 3 4, Q = 0 5 6 7 4, trivial cross from rungs 1-6 and 2-5
        edges = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (5, 6), (6, 7), (7, 4), (1, 6), (2, 5)]
        G = Graph(8, edges)
        w = PinchedLadderWitness((0, 1, 2, 3, 4), (0, 5, 6, 7, 4))
        cert = StructureCertificate.of(w, 3)
        assert certify(G, cert)
        crosses, _ = crosses_and_fans(G, w)
        assert len(crosses) == 1
        red = reduce_minor(cert, G)
        assert red.certificate.witness.order == 6
        assert crosses_and_fans(red.graph, red.certificate.witness)[0] == []
        assert certify(red.graph, red.certificate)

    def test_random_scpl(self):
        rng = random.Random(44)
        for _ in range(100):
            H, w = random_scpl(rng)
            red = reduce_minor(StructureCertificate.of(w, 3), H)
            out = red.certificate.witness
            assert out.order >= ceil(w.order / 2)
            assert crosses_and_fans(red.graph, out)[0] == []
            assert certify(red.graph, red.certificate)
            # bags partition the witness vertices
            if red.bags is not None:
                flat = sorted(v for b in red.bags for v in b)
                assert flat == sorted(w.vertices)
