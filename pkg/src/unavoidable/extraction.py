"""Constructive extraction from 2-edge-connected graphs.

``chain_between`` builds an induced chain of super-clean pinched ladders
between two vertices from a pair of edge-disjoint paths that is optimal for
total length.  ``find_unavoidable`` routes a graph through the
block-cutvertex tree and the block searches and returns a certificate for
one of the five unavoidable outcomes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .decomposition import (
    biconnected_components,
    bc_tree_stats,
    block_cut_tree,
    chain_of_blocks_from_path,
    longest_path,
)
from .errors import AlgorithmError, DomainError, NotGuaranteedError, PreconditionError
from .graph import Graph, chordless_cycle_through, induced_subgraph, is_two_edge_connected
from .structures import (
    ChainWitness,
    Clique,
    FlowerWitness,
    PinchedLadderWitness,
    StructureCertificate,
    certify,
    rail_crosses,
    rail_fans,
)


@dataclass(frozen=True)
class PathPair:
    P: tuple
    Q: tuple
    shared: tuple       # u_1 .. u_{n+1}, in order along both paths

    @property
    def total_edges(self) -> int:
        return len(self.P) + len(self.Q) - 2

    @property
    def vertex_count(self) -> int:
        return len(set(self.P) | set(self.Q))


# -- min-cost pair of edge-disjoint paths ---------------------------------------


def _check_pair_args(G, u, v):
    for x in (u, v):
        if not isinstance(x, int) or not 0 <= x < G.n:
            raise DomainError(f"vertex {x!r} is not in the graph")
    if u == v:
        raise PreconditionError("endpoints must be distinct")
    if not is_two_edge_connected(G):
        raise PreconditionError("graph is not 2-edge-connected")


def _min_cost_pair(G: Graph, u: int, v: int):
    """Two edge-disjoint u-v paths of least total length (unit-capacity flow)."""
    adj = [sorted(a) for a in G.adj]
    flow = {}       # (a, b) -> 1 if one unit runs a -> b along edge ab

    def cost(a, b):
        if flow.get((a, b)):
            return None
        return -1 if flow.get((b, a)) else 1

    for _ in range(2):
        # Bellman-Ford with a queue; the residual graph has no negative cycle
        dist = {u: 0}
        pred = {}
        inq = {u}
        dq = deque([u])
        while dq:
            a = dq.popleft()
            inq.discard(a)
            for b in adj[a]:
                c = cost(a, b)
                if c is None:
                    continue
                nd = dist[a] + c
                if nd < dist.get(b, 1 << 30):
                    dist[b] = nd
                    pred[b] = a
                    if b not in inq:
                        inq.add(b)
                        dq.append(b)
        if v not in dist:
            raise PreconditionError(f"no two edge-disjoint paths between {u} and {v}")
        b = v
        while b != u:
            a = pred[b]
            if flow.get((b, a)):
                del flow[(b, a)]
            else:
                flow[(a, b)] = 1
            b = a
    out = {}
    for a, b in flow:
        out.setdefault(a, []).append(b)
    for a in out:
        out[a].sort(reverse=True)
    paths = []
    for _ in range(2):
        walk = [u]
        while walk[-1] != v:
            walk.append(out[walk[-1]].pop())
        paths.append(_loop_erase(walk))
    return paths[0], paths[1]


def _loop_erase(walk):
    path, seen = [], {}
    for x in walk:
        if x in seen:
            k = seen[x]
            for y in path[k + 1:]:
                del seen[y]
            path = path[:k + 1]
        else:
            seen[x] = len(path)
            path.append(x)
    return path


def _edges(path):
    return {(a, b) if a < b else (b, a) for a, b in zip(path, path[1:])}


def _potential(P, Q):
    return (len(P) + len(Q) - 2, len(set(P) | set(Q)))


def _sub(path, pos, x, y):
    """Subpath of ``path`` from x to y (x before y along the path)."""
    return path[pos[x]:pos[y] + 1]


def _repair(G: Graph, P: list, Q: list):
    """One exchange step, or None if the pair has the required structure."""
    posP = {x: k for k, x in enumerate(P)}
    posQ = {x: k for k, x in enumerate(Q)}
    shared = sorted((x for x in posP if x in posQ), key=posP.get)
    # shared vertices out of order
    for w1, w2 in zip(shared, shared[1:]):
        if posQ[w1] > posQ[w2]:
            P2 = P[:posP[w1]] + Q[posQ[w1]:]
            Q2 = Q[:posQ[w2]] + P[posP[w2]:]
            return "order", _loop_erase(P2), _loop_erase(Q2)
    EP, EQ = _edges(P), _edges(Q)
    # chords
    for path, pos, other_edges, name in ((P, posP, EQ, "P"), (Q, posQ, EP, "Q")):
        for k, x in enumerate(path):
            for y in G.adj[x]:
                ky = pos.get(y)
                if ky is not None and ky > k + 1 and ((x, y) if x < y else (y, x)) not in other_edges:
                    short = path[:k + 1] + path[ky:]
                    return ("chord", short, Q) if name == "P" else ("chord", P, short)
    # edges between different segments
    seg = {}
    for name, path in (("P", P), ("Q", Q)):
        s = -1
        for x in path:
            if x in posP and x in posQ:
                s += 1
            else:
                seg[(name, x)] = s
    for x in P:
        if x in posQ:
            continue
        i = seg[("P", x)]
        for y in G.adj[x]:
            if y in posP or y not in posQ:
                continue
            j = seg[("Q", y)]
            if i < j:
                ui1 = shared[i + 1]
                P2 = P[:posP[x] + 1] + Q[posQ[y]:]
                Q2 = Q[:posQ[ui1]] + P[posP[ui1]:]
                return "segment", _loop_erase(P2), _loop_erase(Q2)
            if i > j:
                uj1 = shared[j + 1]
                Q2 = Q[:posQ[y] + 1] + P[posP[x]:]
                P2 = P[:posP[uj1]] + Q[posQ[uj1]:]
                return "segment", _loop_erase(P2), _loop_erase(Q2)
    # crosses and fans inside each segment
    for a, b in zip(shared, shared[1:]):
        Pr = P[posP[a] + 1:posP[b]]
        Qr = Q[posQ[a] + 1:posQ[b]]
        if not Pr or not Qr:
            continue
        bad = rail_crosses(G, Pr, Qr, nontrivial_only=True, first=True)
        if bad:
            (x1, yb), (x2, yd) = bad[0].rungs
            P2 = P[:posP[x1] + 1] + Q[posQ[yb]:]
            Q2 = Q[:posQ[yd] + 1] + P[posP[x2]:]
            return "cross", _loop_erase(P2), _loop_erase(Q2)
        fan = rail_fans(G, Pr, Qr, nontrivial_only=True, first=True)
        if fan:
            f = fan[0]
            x, y1, yk = f.apex, f.rim[0], f.rim[-1]
            if f.apex_rail == "P":
                P2 = P[:posP[x] + 1] + Q[posQ[yk]:]
                Q2 = Q[:posQ[y1] + 1] + P[posP[x]:]
            else:
                Q2 = Q[:posQ[x] + 1] + P[posP[yk]:]
                P2 = P[:posP[y1] + 1] + Q[posQ[x]:]
            return "fan", _loop_erase(P2), _loop_erase(Q2)
    return None


def min_edge_disjoint_path_pair(G: Graph, u: int, v: int) -> PathPair:
    """Edge-disjoint u-v paths of least total length, repaired until every
    segment between consecutive shared vertices is a super-clean pinched ladder."""
    _check_pair_args(G, u, v)
    P, Q = _min_cost_pair(G, u, v)
    pot = _potential(P, Q)
    while True:
        step = _repair(G, P, Q)
        if step is None:
            break
        _, P2, Q2 = step
        new = _potential(P2, Q2)
        if not new < pot or _edges(P2) & _edges(Q2):
            raise AlgorithmError(f"{step[0]} repair did not improve the path pair")
        P, Q, pot = P2, Q2, new
    if len(P) > len(Q) or (len(P) == len(Q) and P > Q):
        P, Q = Q, P
    posQ = {x: k for k, x in enumerate(Q)}
    shared = tuple(x for x in P if x in posQ)
    return PathPair(tuple(P), tuple(Q), shared)


def chain_between(G: Graph, u: int, v: int) -> ChainWitness:
    """Induced chain of super-clean pinched ladders from u to v."""
    pair = min_edge_disjoint_path_pair(G, u, v)
    P, Q = pair.P, pair.Q
    posP = {x: k for k, x in enumerate(P)}
    posQ = {x: k for k, x in enumerate(Q)}
    ladders = []
    for a, b in zip(pair.shared, pair.shared[1:]):
        Pi = P[posP[a]:posP[b] + 1]
        Qi = Q[posQ[a]:posQ[b] + 1]
        if len(Pi) > len(Qi):
            Pi, Qi = Qi, Pi
        ladders.append(PinchedLadderWitness(Pi, Qi))
    return ChainWitness(tuple(ladders))


# -- flowers -------------------------------------------------------------------


def flower_at(G: Graph, v: int, r: int) -> FlowerWitness:
    """One chordless cycle through v in each block containing v."""
    if not isinstance(v, int) or not 0 <= v < G.n:
        raise DomainError(f"vertex {v!r} is not in the graph")
    blocks = [b for b in biconnected_components(G) if v in b and len(b) >= 3]
    if len(blocks) < r:
        raise PreconditionError(f"vertex {v} lies in {len(blocks)} cycle blocks, fewer than {r}")
    petals = []
    for b in sorted(blocks):
        H, mapping = induced_subgraph(G, b)
        local = mapping.index(v)
        cyc = chordless_cycle_through(H, local)
        if cyc is None:
            raise AlgorithmError(f"block {b} has no cycle through {v}")
        petals.append(tuple(mapping[x] for x in cyc))
    return FlowerWitness(v, tuple(petals))


# -- the pipeline --------------------------------------------------------------


@dataclass
class NotFound:
    diagnostics: dict = field(default_factory=dict)

    def __bool__(self):
        return False

    def to_json_obj(self):
        return {"kind": "not_found", "diagnostics": self.diagnostics}


def _stage(diag, name, outcome, **extra):
    rec = {"stage": name, "outcome": outcome}
    rec.update(extra)
    diag["stages"].append(rec)


def find_unavoidable(G: Graph, r: int, diagnostics: Optional[dict] = None,
                     clique_limit: int = 64, theta_budget: int = 20000,
                     hole_budget: int = 200000, ladder_budget: int = 200000):
    """Certificate for K_r, an r-flower, a member of Theta_r, a super-clean
    pinched ladder of order >= r, or a chain of r of them; else NotFound."""
    from . import oracle
    from .supercleaning import f_supercleaning, superclean_or_outcome

    if not isinstance(r, int) or isinstance(r, bool) or r < 3:
        raise DomainError("r must be an integer >= 3")
    if G.n < 3 or not is_two_edge_connected(G):
        raise PreconditionError("input must be a 2-edge-connected graph on at least 3 vertices")
    diag = diagnostics if diagnostics is not None else {}
    diag.clear()
    diag["r"] = r
    diag["stages"] = []

    T = block_cut_tree(G)
    lp, most, biggest = bc_tree_stats(T)
    diag["tree"] = {"longest_path": lp, "max_blocks_at_cutvertex": most, "max_block_order": biggest,
                    "blocks": len(T.blocks), "cutvertices": len(T.cutvertices)}
    diag["thresholds"] = {"flower_blocks": r, "tree_path": 2 * r, "block_order": r,
                          "clean_ladder": f_supercleaning(r)}
    diag["block_sizes"] = sorted((len(b) for b in T.blocks), reverse=True)

    # busy cutvertex
    if most >= r:
        count = {}
        for c, _ in T.tree_edges:
            count[c] = count.get(c, 0) + 1
        c = min(x for x, k in count.items() if k == most)
        _stage(diag, "flower", "found", center=c)
        return StructureCertificate.of(flower_at(G, c, r), r)
    _stage(diag, "flower", "skipped", reason=f"no cutvertex in {r} blocks")

    # long block-cutvertex tree path
    if lp >= 2 * r:
        path = longest_path(T)
        cob = chain_of_blocks_from_path(G, T, path)
        joins = set(cob.joining)
        inv = {h: k for k, h in enumerate(cob.mapping)}
        u = min(x for x in cob.blocks[0] if x not in joins)
        v = min(x for x in cob.blocks[-1] if x not in joins)
        chain = chain_between(cob.graph, inv[u], inv[v])
        chain = _relabel_chain(chain, cob.mapping)
        if chain.parameter >= r:
            _stage(diag, "chain", "found", blocks=chain.parameter, endpoints=[u, v])
            return StructureCertificate.of(chain, r)
        _stage(diag, "chain", "short", blocks=chain.parameter)
    else:
        _stage(diag, "chain", "skipped", reason=f"longest tree path has order {lp} < {2 * r}")

    # large blocks
    order = sorted(range(len(T.blocks)), key=lambda k: (-len(T.blocks[k]), k))
    for k in order:
        B = T.blocks[k]
        if len(B) < r:
            break
        H, mapping = induced_subgraph(G, B)
        bd = {"block": k, "order": len(B)}
        cert = _search_block(H, r, bd, clique_limit, theta_budget, hole_budget, ladder_budget,
                             oracle, f_supercleaning, superclean_or_outcome)
        diag["stages"].append({"stage": "block", **bd})
        if cert is not None:
            return cert.relabel(mapping)
    return NotFound(diag)


def _relabel_chain(chain, mapping):
    from .structures import relabel_witness

    return relabel_witness(chain, mapping)


def _search_block(H, r, bd, clique_limit, theta_budget, hole_budget, ladder_budget,
                  oracle, f_sc, sc_outcome):
    if H.n <= clique_limit:
        K = oracle.max_clique(H, limit=clique_limit)
        bd["clique"] = len(K)
        if len(K) >= r:
            bd["outcome"] = "clique"
            return StructureCertificate.of(Clique(tuple(sorted(K))), r)
    else:
        bd["clique"] = "skipped: block above limit"
    th = oracle.search_theta(H, r, budget=theta_budget)
    bd["theta"] = th.status
    if th.witness is not None:
        bd["outcome"] = "theta"
        return StructureCertificate.of(th.witness, r)
    hole = oracle.find_hole(H, r, budget=hole_budget)
    bd["hole"] = hole.status
    if hole.cycle is not None:
        c = hole.cycle
        bd["outcome"] = "hole"
        w = PinchedLadderWitness((c[0], c[-1]), tuple(c))
        return StructureCertificate.of(w, r)
    stop = min(f_sc(r), H.n)
    lad = oracle.find_clean_ladder(H, r, budget=ladder_budget, stop_order=stop)
    bd["clean_ladder"] = {"target": r, "stop": stop, "status": lad.status}
    if lad.witness is not None:
        try:
            cert = sc_outcome(H, lad.witness, r)
        except NotGuaranteedError:
            bd["supercleaning"] = "no outcome below threshold"
        else:
            bd["outcome"] = cert.kind
            return cert
    return None
