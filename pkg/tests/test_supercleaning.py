import json
import random
from pathlib import Path

import pytest

from unavoidable.errors import DomainError, NotGuaranteedError, PreconditionError
from unavoidable.graph import Graph
from unavoidable.structures import LadderWitness, StructureCertificate, certify, max_rim_size
from unavoidable.supercleaning import R_bound, f_supercleaning, superclean, superclean_or_outcome

from gen import cycle_graph, random_clean_ladder

GOLDEN = Path(__file__).parent / "golden"

C4 = Graph(4, [(0, 1), (2, 3), (0, 2), (1, 3)])
FAN6 = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (0, 4), (0, 5), (2, 5)])


def _tag_to_vertex(tag, L):
    rail = L.P if tag[0] == "p" else L.Q
    return rail[int(tag[1:]) - 1]


class TestGolden:
    def test_c4(self):
        res = superclean(C4, LadderWitness((0, 1), (2, 3)))
        assert res.trace_jsonl() == (GOLDEN / "c4_ladder.jsonl").read_text()
        (block,) = res.chain.ladders
        assert block.sigma == 0 and block.tau == 1 and res.deleted == ()
        assert set(block.vertices) == {0, 1, 2, 3}

    def test_order6_fan(self):
        res = superclean(FAN6, LadderWitness((0, 1, 2), (3, 4, 5)))
        assert res.trace_jsonl() == (GOLDEN / "fan_ladder_order6.jsonl").read_text()
        (block,) = res.chain.ladders
        assert (block.sigma, block.tau) == (3, 5)
        assert set(block.vertices) == {3, 0, 4, 5}
        assert sorted(res.deleted) == [1, 2]
        assert certify(FAN6, StructureCertificate.of(res.chain, 1))


@pytest.mark.parametrize("n", range(3, 15))
def test_cycle_ladders_unchanged(n):
    G = cycle_graph(n)
    for ell in range(1, n):
        L = LadderWitness(tuple(range(ell)), tuple(range(n - 1, ell - 1, -1)))
        res = superclean(G, L)
        assert res.deleted == ()
        (block,) = res.chain.ladders
        assert block.order == n


def test_rejects_unclean():
    G = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (2, 5), (0, 5), (2, 3)])
    with pytest.raises(PreconditionError):
        superclean(G, LadderWitness((0, 1, 2), (3, 4, 5)))


def _trace_statuses(res, L):
    seen = {}
    for rec in res.trace:
        for status in ("keep", "delete"):
            for tag in rec[status]:
                v = _tag_to_vertex(tag, L)
                assert v not in seen, f"{tag} assigned twice"
                seen[v] = status
    return seen


def test_random_ladders_properties():
    rng = random.Random(23)
    for _ in range(300):
        G, L = random_clean_ladder(rng, rng.randint(3, 150))
        res = superclean(G, L)
        assert certify(G, StructureCertificate.of(res.chain, 1))
        # the output may have swapped rails; statuses are read in the same frame
        frame = LadderWitness(res.P, res.Q)
        statuses = _trace_statuses(res, frame)
        assert len(statuses) == G.n
        assert {v for v, s in statuses.items() if s == "keep"} == set(res.kept)
        assert set(res.chain.vertices) == set(res.kept)
        # joining vertices come from fan steps
        joins = set()
        for rec in res.trace:
            tag = rec["designate"].get("joining")
            if tag:
                assert rec["case"] in ("1.5a", "1.6a", "2.4", "2.5")
                joins.add(_tag_to_vertex(tag, frame))
        assert joins == set(res.chain.joining)


def test_deterministic():
    rng = random.Random(5)
    for _ in range(30):
        G, L = random_clean_ladder(rng, rng.randint(3, 80))
        assert superclean(G, L).trace == superclean(G, L).trace


def test_keep_rate_counterexample_for_plus_three():
    # K4 minus an edge as a one-fan ladder: H = triangle, while (2/R)(n-R)+3 = 11/3
    G = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)])
    L = LadderWitness((0,), (1, 2, 3))
    res = superclean(G, L)
    R = max_rim_size(G, L)
    assert R == 3 and len(res.kept) == 3
    assert len(res.kept) >= (2 / R) * (G.n - R) + 2


def test_triangle_fans_can_cost_two_vertices():
    # q1 goes at the start (trivial cross), q4 at the end (triangle fan on p3)
    G = Graph(7, [(0, 1), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 4), (4, 5), (5, 6)])
    L = LadderWitness((0, 1, 2), (3, 4, 5, 6))
    res = superclean(G, L)
    assert max_rim_size(G, L) == 2 and sorted(res.deleted) == [3, 6]
    assert certify(G, StructureCertificate.of(res.chain, 1))

class TestBounds:
    def test_values(self):
        assert R_bound(4) == 10 and f_supercleaning(3) == 3 and f_supercleaning(4) == 31
        assert R_bound(3) == 1

    def test_domain(self):
        with pytest.raises(DomainError):
            f_supercleaning(2)


class TestOutcome:
    def test_triangle(self):
        G = cycle_graph(3)
        cert = superclean_or_outcome(G, LadderWitness((0,), (2, 1)), 3)
        assert cert.kind == "scpl" and cert.witness.order == 3 and certify(G, cert)

    def test_c40(self):
        G = cycle_graph(40)
        cert = superclean_or_outcome(G, LadderWitness(tuple(range(20)), tuple(range(39, 19, -1))), 4)
        assert cert.kind == "scpl" and cert.witness.order == 40 and certify(G, cert)

    def test_threshold_guarantee(self):
        rng = random.Random(31)
        for _ in range(200):
            G, L = random_clean_ladder(rng, rng.randint(31, 200))
            cert = superclean_or_outcome(G, L, 4)
            assert cert.r == 4 and certify(G, cert)

    def test_below_threshold_reports_partial(self):
        # a fan ladder too small for r = 5
        with pytest.raises(NotGuaranteedError) as info:
            superclean_or_outcome(FAN6, LadderWitness((0, 1, 2), (3, 4, 5)), 5)
        assert info.value.partial is not None


def test_trace_lines_are_json():
    rng = random.Random(3)
    G, L = random_clean_ladder(rng, 40)
    for line in superclean(G, L).trace_lines():
        rec = json.loads(line)
        assert set(rec) == {"rung", "case", "keep", "delete", "designate"}
