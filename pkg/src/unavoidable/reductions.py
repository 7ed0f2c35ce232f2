"""Eulerian closed trails and canonical reductions of certificates.

A reduction is returned as an abstract graph together with a certificate on
that graph.  Topological reductions carry ``paths``: each abstract edge maps to
the host path it replaces.  Minor reductions carry ``bags``: each abstract
vertex maps to the connected set of host vertices contracted into it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotEulerianError, PreconditionError, ValidationError
from .graph import Graph, edges_within
from .structures import (
    ChainWitness,
    FlowerWitness,
    PinchedLadderWitness,
    StructureCertificate,
    ThetaWitness,
    certify,
    witness_edges,
)

_NEEDS_HOST = ("scpl", "chain", "clean_ladder")


@dataclass(frozen=True)
class Reduction:
    kind: str                       # "topological" or "minor"
    graph: Graph                    # abstract graph on 0..k-1
    certificate: StructureCertificate
    vertex_map: tuple               # abstract vertex i came from host vertex_map[i]
    bags: Optional[tuple] = None
    paths: Optional[dict] = None

    def to_json_obj(self) -> dict:
        from .structures import certificate_to_json_obj

        obj = {
            "reduction": self.kind,
            "graph": self.graph.to_json_obj(),
            "certificate": certificate_to_json_obj(self.certificate),
            "vertex_map": list(self.vertex_map),
        }
        if self.bags is not None:
            obj["bags"] = [sorted(b) for b in self.bags]
        if self.paths is not None:
            obj["paths"] = [{"edge": list(e), "path": list(p)} for e, p in sorted(self.paths.items())]
        return obj


def _host_for(cert: StructureCertificate, G: Optional[Graph]) -> Graph:
    """The host to validate against; flowers, thetas and cliques carry their own edges."""
    if G is not None:
        return G
    if cert.kind in _NEEDS_HOST:
        raise PreconditionError(f"a {cert.kind} certificate needs its host graph")
    edges = witness_edges(None, cert)
    n = max(cert.host, default=-1) + 1
    return Graph(n, edges)


def _validated(cert, G):
    H = _host_for(cert, G)
    v = certify(H, cert)
    if not v:
        raise ValidationError(f"invalid certificate: {v.reason} at {v.location}")
    return H


def eulerian_circuit(cert: StructureCertificate, G: Optional[Graph] = None) -> list[int]:
    """Closed trail through every witness edge once, as a vertex sequence.

    The sequence starts and ends at the same vertex; consecutive entries are
    the ends of one witness edge.
    """
    H = _validated(cert, G)
    edges = sorted(witness_edges(H, cert))
    adj: dict[int, list] = {}
    for k, (a, b) in enumerate(edges):
        adj.setdefault(a, []).append((b, k))
        adj.setdefault(b, []).append((a, k))
    for v in sorted(adj):
        if len(adj[v]) % 2:
            raise NotEulerianError(v, len(adj[v]))
    if not edges:
        return []
    for v in adj:
        adj[v].sort(reverse=True)
    used = [False] * len(edges)
    start = edges[0][0]
    stack = [start]
    trail = []
    while stack:
        v = stack[-1]
        nbrs = adj[v]
        while nbrs and used[nbrs[-1][1]]:
            nbrs.pop()
        if nbrs:
            w, k = nbrs.pop()
            used[k] = True
            stack.append(w)
        else:
            trail.append(stack.pop())
    trail.reverse()
    if not all(used):
        raise PreconditionError("witness graph is not connected")
    return trail


# -- helpers -------------------------------------------------------------------


def _abstract(vertices, edges):
    order = sorted(vertices)
    idx = {v: i for i, v in enumerate(order)}
    g = Graph(len(order), {tuple(sorted((idx[a], idx[b]))) for a, b in edges})
    return g, idx, tuple(order)


def _key(a, b):
    return (a, b) if a < b else (b, a)


def _oriented(paths, a, b):
    p = paths[_key(a, b)]
    return p if p[0] == a else p[::-1]


def _suppress(vertices, edges, terminals):
    """Suppress degree-2 non-terminal vertices while the graph stays simple.

    Returns (remaining vertices, edges, path map)."""
    adj = {v: set() for v in vertices}
    paths = {}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
        paths[_key(a, b)] = [a, b] if a < b else [b, a]
    changed = True
    while changed:
        changed = False
        for x in sorted(adj):
            if x in terminals or len(adj[x]) != 2:
                continue
            y, z = sorted(adj[x])
            if z in adj[y]:
                continue
            path = _oriented(paths, y, x) + _oriented(paths, x, z)[1:]
            del paths[_key(y, x)], paths[_key(x, z)]
            adj[y].discard(x)
            adj[z].discard(x)
            del adj[x]
            adj[y].add(z)
            adj[z].add(y)
            paths[_key(y, z)] = path if y < z else path[::-1]
            changed = True
    kept = set(adj)
    return kept, set(paths), paths


def _finish(kind, vertices, edges, witness_fn, r, bags=None, paths=None):
    g, idx, order = _abstract(vertices, edges)
    w = witness_fn(idx)
    # contraction may shrink a pinched ladder below the requested parameter
    cert = StructureCertificate.of(w, min(r, w.parameter))
    if paths is not None:
        paths = {_key(idx[a], idx[b]): tuple(p if idx[a] < idx[b] else p[::-1])
                 for (a, b), p in paths.items()}
    if bags is not None:
        bags = tuple(frozenset(bags[v]) for v in order)
    return Reduction(kind, g, cert, order, bags, paths)


def _identity(kind, H, cert):
    es = witness_edges(H, cert)
    vs = set(cert.host)
    w = cert.witness
    from .structures import relabel_witness

    if kind == "topological":
        return _finish(kind, vs, es, lambda idx: relabel_witness(w, idx), cert.r,
                       paths={e: tuple(e) for e in es})
    return _finish(kind, vs, es, lambda idx: relabel_witness(w, idx), cert.r,
                   bags={v: {v} for v in vs})


def _petal_ends(center, cyc):
    i = cyc.index(center)
    walk = list(cyc[i:]) + list(cyc[:i])
    return walk   # starts at the center


# -- topological ----------------------------------------------------------------


def reduce_topological(cert: StructureCertificate, G: Optional[Graph] = None) -> Reduction:
    """Suppress internal degree-2 vertices of the witness.

    Flowers become triangular flowers, thetas become K_{2,r} (or K_{1,1,r-1}
    when the branch vertices are adjacent), chains lose every degree-2
    vertex that is not an initial or final vertex of a block.  Single
    pinched ladders, cliques and clean ladders come back unchanged.
    """
    H = _validated(cert, G)
    w = cert.witness
    if cert.kind == "flower":
        vs, es, paths, petals = {w.center}, set(), {}, []
        for cyc in w.cycles:
            walk = _petal_ends(w.center, cyc)
            c, a, b = walk[0], walk[1], walk[-1]
            vs |= {a, b}
            for x, y, p in ((c, a, [c, a]), (a, b, walk[1:]), (b, c, [b, c])):
                es.add(_key(x, y))
                paths[_key(x, y)] = tuple(p) if x < y else tuple(p[::-1])
            petals.append((c, a, b))
        return _finish("topological", vs, es,
                       lambda idx: FlowerWitness(idx[w.center], tuple(tuple(idx[x] for x in t) for t in petals)),
                       cert.r, paths=paths)
    if cert.kind == "theta":
        u1, u2 = w.branch
        vs, es, paths, short = {u1, u2}, set(), {}, []
        for p in w.paths:
            p = list(p)
            if len(p) == 2:
                es.add(_key(u1, u2))
                paths[_key(u1, u2)] = tuple(p) if u1 < u2 else tuple(p[::-1])
                short.append((u1, u2))
                continue
            m = p[1]
            vs.add(m)
            for x, y, q in ((u1, m, p[:2]), (m, u2, p[1:])):
                es.add(_key(x, y))
                paths[_key(x, y)] = tuple(q) if x < y else tuple(q[::-1])
            short.append((u1, m, u2))
        return _finish("topological", vs, es,
                       lambda idx: ThetaWitness((idx[u1], idx[u2]), tuple(tuple(idx[x] for x in s) for s in short)),
                       cert.r, paths=paths)
    if cert.kind == "chain":
        terminals = {L.sigma for L in w.ladders} | {L.tau for L in w.ladders}
        kept, es, paths = _suppress(set(cert.host), edges_within(H, cert.host), terminals)

        def build(idx):
            return ChainWitness(tuple(
                PinchedLadderWitness(tuple(idx[x] for x in L.P if x in kept),
                                     tuple(idx[x] for x in L.Q if x in kept))
                for L in w.ladders))

        return _finish("topological", kept, es, build, cert.r, paths=paths)
    return _identity("topological", H, cert)


# -- minors --------------------------------------------------------------------


def _rail_runs(rail, merged_edges):
    """Split a rail into runs joined by contracted edges."""
    runs = []
    for x in rail:
        if runs and _key(runs[-1][-1], x) in merged_edges:
            runs[-1].append(x)
        else:
            runs.append([x])
    return runs


def _contract_scpl(H, L: PinchedLadderWitness):
    """Bags of the cross-free pinched ladder obtained from L."""
    from .structures import rail_crosses

    Pr, Qr = L.rails
    merged = set()
    for c in rail_crosses(H, Pr, Qr):
        for span in (c.p_span, c.q_span):
            merged.update(_key(a, b) for a, b in zip(span, span[1:]))
    return _rail_runs(Pr, merged), _rail_runs(Qr, merged)


def reduce_minor(cert: StructureCertificate, G: Optional[Graph] = None) -> Reduction:
    """Contract the witness to its canonical induced minor.

    Flowers contract to triangular flowers and chains to chains of
    triangles.  Thetas contract each path interior to one vertex.  A single
    super-clean pinched ladder has both span edges of every cross
    contracted, which leaves a pinched ladder without crosses.
    """
    H = _validated(cert, G)
    w = cert.witness
    bags: dict = {}
    if cert.kind == "flower":
        petals = []
        for cyc in w.cycles:
            walk = _petal_ends(w.center, cyc)
            a = walk[1]
            b = walk[-1]
            bags[a] = {a}
            bags[b] = set(walk[2:])
            petals.append((w.center, a, b))
        bags[w.center] = {w.center}
        es = {_key(x, y) for t in petals for x, y in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0]))}
        return _finish("minor", set(bags), es,
                       lambda idx: FlowerWitness(idx[w.center], tuple(tuple(idx[x] for x in t) for t in petals)),
                       cert.r, bags=bags)
    if cert.kind == "theta":
        u1, u2 = w.branch
        bags = {u1: {u1}, u2: {u2}}
        es, short = set(), []
        for p in w.paths:
            if len(p) == 2:
                es.add(_key(u1, u2))
                short.append((u1, u2))
                continue
            m = p[1]
            bags[m] = set(p[1:-1])
            es |= {_key(u1, m), _key(m, u2)}
            short.append((u1, m, u2))
        return _finish("minor", set(bags), es,
                       lambda idx: ThetaWitness((idx[u1], idx[u2]), tuple(tuple(idx[x] for x in s) for s in short)),
                       cert.r, bags=bags)
    if cert.kind == "chain":
        tris = []
        for L in w.ladders:
            s, t = L.sigma, L.tau
            A, B = (L.P, L.Q) if len(L.P) <= len(L.Q) else (L.Q, L.P)
            bags.setdefault(s, {s})
            bags.setdefault(t, {t}).update(A[1:-1])
            mid = B[1]
            bags[mid] = set(B[1:-1])
            tris.append((s, t, mid))
        es = {_key(x, y) for s, t, m in tris for x, y in ((s, t), (s, m), (m, t))}
        return _finish("minor", set(bags), es,
                       lambda idx: ChainWitness(tuple(
                           PinchedLadderWitness((idx[s], idx[t]), (idx[s], idx[m], idx[t])) for s, t, m in tris)),
                       cert.r, bags=bags)
    if cert.kind == "scpl" and not w.is_cycle:
        Pruns, Qruns = _contract_scpl(H, w)
        s, t = w.sigma, w.tau
        rep = {s: s, t: t}
        bags = {s: {s}, t: {t}}
        for run in Pruns + Qruns:
            bags[run[0]] = set(run)
            for x in run:
                rep[x] = run[0]
        es = {_key(rep[a], rep[b]) for a, b in edges_within(H, cert.host) if rep[a] != rep[b]}
        P2 = (s,) + tuple(run[0] for run in Pruns) + (t,)
        Q2 = (s,) + tuple(run[0] for run in Qruns) + (t,)
        return _finish("minor", set(bags), es,
                       lambda idx: PinchedLadderWitness(tuple(idx[x] for x in P2), tuple(idx[x] for x in Q2)),
                       cert.r, bags=bags)
    return _identity("minor", H, cert)
