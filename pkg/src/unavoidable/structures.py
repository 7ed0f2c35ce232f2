"""Witness types for the unavoidable structures and their certifier.

Every witness names host vertices only.  The witness graph of a ladder-type
witness is the subgraph of the host induced by its vertices; for cliques,
flowers and thetas it is the union of the listed edges, and the certifier
checks that the host induces exactly that union.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Union

from .errors import ParseError, PreconditionError, ValidationError
from .graph import Graph, edges_within

# -- witnesses -----------------------------------------------------------------


@dataclass(frozen=True)
class Clique:
    vertices: tuple

    @property
    def parameter(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class LadderWitness:
    """Rails ``P = p_1..p_l`` and ``Q = q_1..q_m``; every other edge is a rung."""

    P: tuple
    Q: tuple

    @property
    def vertices(self) -> tuple:
        return tuple(self.P) + tuple(self.Q)

    @property
    def order(self) -> int:
        return len(self.P) + len(self.Q)

    parameter = order


@dataclass(frozen=True)
class PinchedLadderWitness:
    """Two paths ``P`` and ``Q`` from the initial vertex to the final vertex."""

    P: tuple
    Q: tuple

    @property
    def sigma(self):
        return self.P[0]

    @property
    def tau(self):
        return self.P[-1]

    @property
    def rails(self) -> tuple[tuple, tuple]:
        return tuple(self.P[1:-1]), tuple(self.Q[1:-1])

    @property
    def vertices(self) -> tuple:
        return tuple(self.P) + tuple(self.Q[1:-1])

    @property
    def order(self) -> int:
        return len(self.P) + len(self.Q) - 2

    @property
    def is_cycle(self) -> bool:
        return len(self.P) == 2 or len(self.Q) == 2

    def quasi_initial(self) -> tuple:
        return self.P[1], self.Q[1]

    parameter = order


@dataclass(frozen=True)
class ChainWitness:
    ladders: tuple

    @property
    def initial(self):
        return self.ladders[0].sigma

    @property
    def final(self):
        return self.ladders[-1].tau

    @property
    def joining(self) -> tuple:
        return tuple(L.tau for L in self.ladders[:-1])

    @property
    def vertices(self) -> tuple:
        seen = {}
        for L in self.ladders:
            for v in L.vertices:
                seen.setdefault(v, None)
        return tuple(seen)

    @property
    def parameter(self) -> int:
        return len(self.ladders)


@dataclass(frozen=True)
class FlowerWitness:
    center: int
    cycles: tuple

    @property
    def vertices(self) -> tuple:
        seen = {self.center: None}
        for c in self.cycles:
            for v in c:
                seen.setdefault(v, None)
        return tuple(seen)

    @property
    def parameter(self) -> int:
        return len(self.cycles)


@dataclass(frozen=True)
class ThetaWitness:
    branch: tuple
    paths: tuple

    @property
    def vertices(self) -> tuple:
        seen = {self.branch[0]: None, self.branch[1]: None}
        for p in self.paths:
            for v in p:
                seen.setdefault(v, None)
        return tuple(seen)

    @property
    def parameter(self) -> int:
        return len(self.paths)


Witness = Union[Clique, FlowerWitness, ThetaWitness, PinchedLadderWitness, ChainWitness, LadderWitness]

KIND_OF = {
    Clique: "clique",
    FlowerWitness: "flower",
    ThetaWitness: "theta",
    PinchedLadderWitness: "scpl",
    ChainWitness: "chain",
    LadderWitness: "clean_ladder",
}


@dataclass(frozen=True)
class StructureCertificate:
    kind: str
    witness: Witness
    r: int
    host: tuple

    @classmethod
    def of(cls, witness: Witness, r: int) -> "StructureCertificate":
        return cls(KIND_OF[type(witness)], witness, r, tuple(sorted(set(witness_vertices(witness)))))

    @property
    def parameter(self) -> int:
        return self.witness.parameter

    def relabel(self, mapping) -> "StructureCertificate":
        """Certificate with every vertex v replaced by ``mapping[v]``."""
        return StructureCertificate.of(relabel_witness(self.witness, mapping), self.r)


def witness_vertices(w: Witness) -> tuple:
    return w.vertices


def relabel_witness(w: Witness, mapping) -> Witness:
    f = lambda seq: tuple(mapping[v] for v in seq)  # noqa: E731
    if isinstance(w, Clique):
        return Clique(f(w.vertices))
    if isinstance(w, LadderWitness):
        return LadderWitness(f(w.P), f(w.Q))
    if isinstance(w, PinchedLadderWitness):
        return PinchedLadderWitness(f(w.P), f(w.Q))
    if isinstance(w, ChainWitness):
        return ChainWitness(tuple(relabel_witness(L, mapping) for L in w.ladders))
    if isinstance(w, FlowerWitness):
        return FlowerWitness(mapping[w.center], tuple(f(c) for c in w.cycles))
    if isinstance(w, ThetaWitness):
        return ThetaWitness(f(w.branch), tuple(f(p) for p in w.paths))
    raise TypeError(f"not a witness: {w!r}")


# -- crosses and fans ----------------------------------------------------------


@dataclass(frozen=True)
class Cross:
    rungs: tuple          # ((p_a, q_b), (p_c, q_d)) as host vertices
    indices: tuple        # (a, b, c, d), 1-based along the rails
    p_span: tuple
    q_span: tuple
    trivial: bool


@dataclass(frozen=True)
class EmbeddedFan:
    apex: int
    apex_rail: str        # "P" or "Q"
    rim: tuple
    spokes: tuple         # apex neighbors on the rim, in rail order
    trivial: bool


def _rungs(G: Graph, P: Sequence[int], Q: Sequence[int]):
    posQ = {v: j for j, v in enumerate(Q, 1)}
    out = []
    for i, x in enumerate(P, 1):
        for y in G.adj[x]:
            j = posQ.get(y)
            if j is not None:
                out.append((i, j))
    out.sort()
    return out


def rail_crosses(G: Graph, P: Sequence[int], Q: Sequence[int], nontrivial_only=False, first=False):
    """Crosses between rails P and Q (index pairs are 1-based)."""
    rungs = _rungs(G, P, Q)
    found = []
    prev: list = []          # (b, a) of rungs with smaller P index, sorted
    k = 0
    while k < len(rungs):
        c = rungs[k][0]
        group = []
        while k < len(rungs) and rungs[k][0] == c:
            group.append(rungs[k])
            k += 1
        for _, d in group:
            lo = bisect.bisect_right(prev, (d, float("inf")))
            for b, a in prev[lo:]:
                trivial = c == a + 1 and b == d + 1
                if nontrivial_only and trivial:
                    continue
                found.append(Cross(
                    ((P[a - 1], Q[b - 1]), (P[c - 1], Q[d - 1])),
                    (a, b, c, d),
                    tuple(P[a - 1:c]),
                    tuple(Q[d - 1:b]),
                    trivial,
                ))
                if first:
                    return found
        for a_, b_ in group:
            bisect.insort(prev, (b_, a_))
    return found


def rail_fans(G: Graph, P: Sequence[int], Q: Sequence[int], nontrivial_only=False, first=False):
    """One embedded fan per rail vertex with at least two neighbors on the other rail."""
    found = []
    for apex_rail, A, B in (("P", P, Q), ("Q", Q, P)):
        posB = {v: j for j, v in enumerate(B)}
        for x in A:
            idx = sorted(posB[y] for y in G.adj[x] if y in posB)
            if len(idx) < 2:
                continue
            trivial = idx[-1] - idx[0] == 1
            if nontrivial_only and trivial:
                continue
            found.append(EmbeddedFan(x, apex_rail, tuple(B[idx[0]:idx[-1] + 1]),
                                     tuple(B[j] for j in idx), trivial))
            if first:
                return found
    return found


def crosses_and_fans(G: Graph, W) -> tuple[list[Cross], list[EmbeddedFan]]:
    """All crosses and embedded fans of a ladder or pinched ladder witness."""
    if isinstance(W, LadderWitness):
        v = _check_ladder_shape(G, W, end_rungs=False)
        P, Q = W.P, W.Q
    elif isinstance(W, PinchedLadderWitness):
        v = _check_pinched_shape(G, W)
        P, Q = W.rails
    else:
        raise TypeError("crosses_and_fans expects a ladder or pinched ladder witness")
    if v is not None:
        raise PreconditionError(f"invalid witness: {v.reason} at {v.location}")
    return rail_crosses(G, P, Q), rail_fans(G, P, Q)


def max_rim_size(G: Graph, L: LadderWitness) -> int:
    """Largest rim vertex count over all embedded fans (0 if none)."""
    return max((len(f.rim) for f in rail_fans(G, L.P, L.Q)), default=0)


# -- certification ---------------------------------------------------------------


@dataclass(frozen=True)
class Valid:
    def __bool__(self):
        return True

    def to_json_obj(self):
        return {"valid": True}


@dataclass(frozen=True)
class Violation:
    reason: str
    location: object = None
    detail: str = ""

    def __bool__(self):
        return False

    def to_json_obj(self):
        return {"valid": False, "reason": self.reason, "location": _jsonable(self.location),
                "detail": self.detail}


def _jsonable(x):
    if isinstance(x, (tuple, list, set, frozenset)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def _path_problem(G: Graph, path, closed=False) -> Optional[Violation]:
    for v in path:
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < G.n:
            return Violation("BAD_VERTEX", v)
    if len(set(path)) != len(path):
        return Violation("REPEATED_VERTEX", list(path))
    pairs = list(zip(path, path[1:]))
    if closed:
        pairs.append((path[-1], path[0]))
    for a, b in pairs:
        if not G.has_edge(a, b):
            return Violation("NOT_A_CYCLE" if closed else "NOT_A_PATH", (a, b))
    return None


def _has_chord(G: Graph, path) -> Optional[tuple]:
    pos = {v: i for i, v in enumerate(path)}
    for i, x in enumerate(path):
        for y in G.adj[x]:
            j = pos.get(y)
            if j is not None and j > i + 1:
                return (x, y)
    return None


def _check_ladder_shape(G: Graph, W: LadderWitness, end_rungs=True) -> Optional[Violation]:
    P, Q = tuple(W.P), tuple(W.Q)
    if not P or not Q:
        return Violation("EMPTY_RAIL")
    for rail in (P, Q):
        v = _path_problem(G, rail)
        if v is not None:
            return v
    common = set(P) & set(Q)
    if common:
        return Violation("RAILS_NOT_DISJOINT", sorted(common))
    for rail in (P, Q):
        chord = _has_chord(G, rail)
        if chord:
            return Violation("RAIL_NOT_INDUCED", chord)
    if not end_rungs:
        return None
    if not G.has_edge(P[0], Q[0]):
        return Violation("MISSING_END_RUNG", (P[0], Q[0]))
    if not G.has_edge(P[-1], Q[-1]):
        return Violation("MISSING_END_RUNG", (P[-1], Q[-1]))
    return None


def _check_pinched_shape(G: Graph, W: PinchedLadderWitness) -> Optional[Violation]:
    P, Q = tuple(W.P), tuple(W.Q)
    if len(P) < 2 or len(Q) < 2:
        return Violation("BAD_ENDPOINTS", "paths need at least two vertices")
    if P[0] != Q[0] or P[-1] != Q[-1]:
        return Violation("PINCH_MISMATCH", (P[0], P[-1], Q[0], Q[-1]))
    for path in (P, Q):
        v = _path_problem(G, path)
        if v is not None:
            return v
    if P[0] == P[-1]:
        return Violation("BAD_ENDPOINTS", P[0])
    common = set(P) & set(Q)
    if common != {P[0], P[-1]}:
        return Violation("RAILS_NOT_DISJOINT", sorted(common - {P[0], P[-1]}))
    if len(P) == 2 and len(Q) == 2:
        return Violation("TOO_SMALL", "degenerate pinched ladder on two vertices")
    if W.is_cycle:
        cyc = list(P) + list(reversed(Q[1:-1])) if len(P) > 2 else list(Q) + list(reversed(P[1:-1]))
        extra = edges_within(G, cyc) - {tuple(sorted(e)) for e in zip(cyc, cyc[1:] + cyc[:1])}
        if extra:
            return Violation("RAIL_NOT_INDUCED", sorted(extra)[0])
    else:
        for path in (P, Q):
            chord = _has_chord(G, path)
            if chord:
                return Violation("RAIL_NOT_INDUCED", chord)
    return None


def _check_superclean(G: Graph, P_rail, Q_rail) -> Optional[Violation]:
    bad = rail_crosses(G, P_rail, Q_rail, nontrivial_only=True, first=True)
    if bad:
        return Violation("NONTRIVIAL_CROSS", bad[0].rungs)
    fan = rail_fans(G, P_rail, Q_rail, nontrivial_only=True, first=True)
    if fan:
        return Violation("NONTRIVIAL_FAN", {"apex": fan[0].apex, "rim": fan[0].rim})
    return None


def _check_pinched(G: Graph, W: PinchedLadderWitness) -> Optional[Violation]:
    v = _check_pinched_shape(G, W)
    if v is not None:
        return v
    return _check_superclean(G, *W.rails)


def _check_clique(G, w: Clique):
    vs = tuple(w.vertices)
    if not vs:
        return Violation("TOO_SMALL", "empty clique")
    for v in vs:
        if not isinstance(v, int) or not 0 <= v < G.n:
            return Violation("BAD_VERTEX", v)
    if len(set(vs)) != len(vs):
        return Violation("REPEATED_VERTEX", list(vs))
    for a, b in combinations(vs, 2):
        if not G.has_edge(a, b):
            return Violation("NOT_CLIQUE", (a, b))
    return None


def _check_flower(G, w: FlowerWitness):
    c = w.center
    if not w.cycles:
        return Violation("TOO_SMALL", "flower without petals")
    union = set()
    for k, cyc in enumerate(w.cycles):
        cyc = tuple(cyc)
        if len(cyc) < 3:
            return Violation("NOT_A_CYCLE", {"petal": k})
        v = _path_problem(G, cyc, closed=True)
        if v is not None:
            return Violation(v.reason, {"petal": k, "at": v.location})
        if c not in cyc:
            return Violation("CENTER_MISSING", {"petal": k})
        es = {tuple(sorted(e)) for e in zip(cyc, cyc[1:] + cyc[:1])}
        if union & es:
            return Violation("NOT_EDGE_DISJOINT", {"petal": k, "edges": sorted(union & es)})
        union |= es
    for i, j in combinations(range(len(w.cycles)), 2):
        common = set(w.cycles[i]) & set(w.cycles[j])
        if common != {c}:
            return Violation("PETALS_OVERLAP", {"petals": (i, j), "common": sorted(common - {c})})
    for k, cyc in enumerate(w.cycles):
        extra = edges_within(G, cyc) - {tuple(sorted(e)) for e in zip(cyc, cyc[1:] + cyc[:1])}
        if extra:
            return Violation("CYCLE_HAS_CHORD", {"petal": k, "chord": sorted(extra)[0]})
    return _check_union_induced(G, w.vertices, union)


def _check_theta(G, w: ThetaWitness):
    if len(w.branch) != 2 or w.branch[0] == w.branch[1]:
        return Violation("BAD_ENDPOINTS", w.branch)
    u1, u2 = w.branch
    if len(w.paths) < 3:
        return Violation("TOO_FEW_PATHS", len(w.paths))
    union = set()
    interiors = set()
    direct = 0
    for k, p in enumerate(w.paths):
        p = tuple(p)
        if len(p) < 2 or p[0] != u1 or p[-1] != u2:
            return Violation("BAD_ENDPOINTS", {"path": k})
        v = _path_problem(G, p)
        if v is not None:
            return Violation(v.reason, {"path": k, "at": v.location})
        if len(p) == 2:
            direct += 1
            if direct > 1:
                return Violation("MULTIPLE_DIRECT_EDGES", {"path": k})
        inner = set(p[1:-1])
        if inner & interiors:
            return Violation("NOT_INTERNALLY_DISJOINT", {"path": k, "common": sorted(inner & interiors)})
        interiors |= inner
        union |= {tuple(sorted(e)) for e in zip(p, p[1:])}
    return _check_union_induced(G, w.vertices, union)


def _check_union_induced(G, vertices, union):
    extra = edges_within(G, vertices) - union
    if extra:
        return Violation("NOT_INDUCED", sorted(extra)[0])
    return None


def _check_chain(G, w: ChainWitness):
    if not w.ladders:
        return Violation("TOO_SMALL", "chain without blocks")
    for k, L in enumerate(w.ladders):
        v = _check_pinched(G, L)
        if v is not None:
            return Violation(v.reason, {"ladder": k, "at": v.location}, v.detail)
    for k, (A, B) in enumerate(zip(w.ladders, w.ladders[1:])):
        if A.tau != B.sigma:
            return Violation("CHAIN_LINK_MISMATCH", {"ladder": k + 1})
    sets = [set(L.vertices) for L in w.ladders]
    for i, j in combinations(range(len(sets)), 2):
        common = sets[i] & sets[j]
        expected = {w.ladders[i].tau} if j == i + 1 else set()
        if common != expected:
            return Violation("BLOCKS_OVERLAP", {"ladders": (i, j), "common": sorted(common)})
    union = set()
    for s in sets:
        union |= edges_within(G, s)
    return _check_union_induced(G, w.vertices, union)


def _check_clean_ladder(G, w: LadderWitness):
    v = _check_ladder_shape(G, w)
    if v is not None:
        return v
    if w.order < 3:
        return Violation("TOO_SMALL", w.order)
    bad = rail_crosses(G, w.P, w.Q, nontrivial_only=True, first=True)
    if bad:
        return Violation("NONTRIVIAL_CROSS", bad[0].rungs)
    return None


_CHECKERS = {
    "clique": _check_clique,
    "flower": _check_flower,
    "theta": _check_theta,
    "scpl": _check_pinched,
    "chain": _check_chain,
    "clean_ladder": _check_clean_ladder,
}


def certify(G: Graph, cert: StructureCertificate) -> Union[Valid, Violation]:
    """Check ``cert`` against host ``G``: structure, parameter and inducedness."""
    if cert.kind not in _CHECKERS or KIND_OF.get(type(cert.witness)) != cert.kind:
        return Violation("KIND_MISMATCH", cert.kind)
    for v in cert.host:
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < G.n:
            return Violation("BAD_VERTEX", v)
    try:
        wverts = set(cert.witness.vertices)
    except (IndexError, TypeError):
        return Violation("MALFORMED_WITNESS")
    if set(cert.host) != wverts or len(set(cert.host)) != len(cert.host):
        return Violation("HOST_SUBSET_MISMATCH", sorted(set(cert.host) ^ wverts))
    v = _CHECKERS[cert.kind](G, cert.witness)
    if v is not None:
        return v
    if cert.witness.parameter < cert.r:
        return Violation("PARAMETER_TOO_SMALL", {"parameter": cert.witness.parameter, "r": cert.r})
    return Valid()


def witness_edges(G: Graph, cert: StructureCertificate) -> set[tuple[int, int]]:
    """Edge set of the witness graph, in host ids."""
    w = cert.witness
    if isinstance(w, Clique):
        return {tuple(sorted(e)) for e in combinations(w.vertices, 2)}
    if isinstance(w, FlowerWitness):
        return {tuple(sorted(e)) for c in w.cycles for e in zip(c, c[1:] + c[:1])}
    if isinstance(w, ThetaWitness):
        return {tuple(sorted(e)) for p in w.paths for e in zip(p, p[1:])}
    return edges_within(G, cert.host)


# -- JSON ----------------------------------------------------------------------


def witness_to_json_obj(w: Witness) -> dict:
    if isinstance(w, Clique):
        return {"vertices": list(w.vertices)}
    if isinstance(w, (LadderWitness, PinchedLadderWitness)):
        return {"P": list(w.P), "Q": list(w.Q)}
    if isinstance(w, ChainWitness):
        return {"ladders": [witness_to_json_obj(L) for L in w.ladders]}
    if isinstance(w, FlowerWitness):
        return {"center": w.center, "cycles": [list(c) for c in w.cycles]}
    if isinstance(w, ThetaWitness):
        return {"branch": list(w.branch), "paths": [list(p) for p in w.paths]}
    raise TypeError(f"not a witness: {w!r}")


def certificate_to_json_obj(cert: StructureCertificate) -> dict:
    obj = {"kind": cert.kind, "r": cert.r, "host": list(cert.host)}
    obj.update(witness_to_json_obj(cert.witness))
    return obj


def _ints(x, what):
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise ValidationError(f"{what} must be a list of integers")
    return tuple(x)


def witness_from_json_obj(kind: str, obj: dict) -> Witness:
    try:
        if kind == "clique":
            return Clique(_ints(obj["vertices"], "vertices"))
        if kind == "clean_ladder":
            return LadderWitness(_ints(obj["P"], "P"), _ints(obj["Q"], "Q"))
        if kind == "scpl":
            return PinchedLadderWitness(_ints(obj["P"], "P"), _ints(obj["Q"], "Q"))
        if kind == "chain":
            return ChainWitness(tuple(witness_from_json_obj("scpl", L) for L in obj["ladders"]))
        if kind == "flower":
            if not isinstance(obj["center"], int):
                raise ValidationError("center must be an integer")
            return FlowerWitness(obj["center"], tuple(_ints(c, "cycle") for c in obj["cycles"]))
        if kind == "theta":
            return ThetaWitness(_ints(obj["branch"], "branch"), tuple(_ints(p, "path") for p in obj["paths"]))
    except KeyError as exc:
        raise ValidationError(f"{kind} certificate lacks field {exc.args[0]!r}") from None
    except TypeError as exc:
        raise ValidationError(f"malformed {kind} certificate: {exc}") from None
    raise ValidationError(f"unknown certificate kind {kind!r}")


def certificate_from_json_obj(obj) -> StructureCertificate:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValidationError("certificate JSON must be an object with a 'kind'")
    w = witness_from_json_obj(obj["kind"], obj)
    r = obj.get("r", 1)
    if not isinstance(r, int):
        raise ValidationError("'r' must be an integer")
    host = _ints(obj["host"], "host") if "host" in obj else tuple(sorted(set(w.vertices)))
    return StructureCertificate(obj["kind"], w, r, host)


def parse_certificate(text) -> StructureCertificate:
    import json

    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("utf-8", errors="replace")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.pos) from None
    return certificate_from_json_obj(obj)
