"""Simple undirected graphs on dense integer vertex ids, plus I/O and
connectivity predicates."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .errors import DomainError, ParseError, ValidationError


class Graph:
    """Finite simple undirected graph on vertices ``0 .. n-1``.

    Edges are stored as sorted pairs ``(a, b)`` with ``a < b``.  Instances are
    immutable and hashable.
    """

    __slots__ = ("n", "edges", "adj", "_mask")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ValidationError(f"vertex count must be a non-negative integer, got {n!r}")
        seen = set()
        adj = [set() for _ in range(n)]
        for e in edges:
            if len(e) != 2:
                raise ValidationError(f"edge {e!r} does not have two ends")
            a, b = e
            if not (isinstance(a, int) and isinstance(b, int)) or isinstance(a, bool) or isinstance(b, bool):
                raise ValidationError(f"edge {e!r} has non-integer ends")
            if a == b:
                raise ValidationError(f"loop at vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise ValidationError(f"edge {e!r} has an end outside 0..{n - 1}")
            key = (a, b) if a < b else (b, a)
            if key in seen:
                raise ValidationError(f"duplicate edge {key}")
            seen.add(key)
            adj[a].add(b)
            adj[b].add(a)
        self.n = n
        self.edges = frozenset(seen)
        self.adj = tuple(frozenset(s) for s in adj)
        self._mask = None

    @classmethod
    def _trusted(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        # edges must already be distinct sorted pairs inside range
        g = object.__new__(cls)
        adj = [set() for _ in range(n)]
        es = frozenset(edges)
        for a, b in es:
            adj[a].add(b)
            adj[b].add(a)
        g.n = n
        g.edges = es
        g.adj = tuple(frozenset(s) for s in adj)
        g._mask = None
        return g

    @classmethod
    def from_labeled_edges(cls, edges: Iterable[tuple[Hashable, Hashable]],
                           vertices: Iterable[Hashable] = ()) -> tuple["Graph", list]:
        """Normalize arbitrary labels to ``0..n-1``.

        Returns the graph and the label list, so ``labels[i]`` names vertex i.
        Labels are numbered in order of first appearance (``vertices`` first).
        """
        index: dict = {}
        for v in vertices:
            index.setdefault(v, len(index))
        pairs = []
        for a, b in edges:
            index.setdefault(a, len(index))
            index.setdefault(b, len(index))
            pairs.append((index[a], index[b]))
        labels = [None] * len(index)
        for v, i in index.items():
            labels[i] = v
        return cls(len(index), pairs), labels

    # -- basic queries -------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adj[a]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> frozenset:
        return self.adj[v]

    @property
    def adj_mask(self) -> tuple[int, ...]:
        """Neighborhoods as integer bitsets."""
        if self._mask is None:
            self._mask = tuple(sum(1 << u for u in nb) for nb in self.adj)
        return self._mask

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"

    # -- serialization -------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    def to_graph6(self) -> str:
        return to_graph6(self)


def _check_vertex(G: Graph, v) -> None:
    if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < G.n:
        raise DomainError(f"vertex {v!r} is not in 0..{G.n - 1}")


# -- graph6 ------------------------------------------------------------------


def _graph6_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])
    if n <= 68719476735:
        return bytes([126, 126] + [63 + (n >> s & 63) for s in (30, 24, 18, 12, 6, 0)])
    raise DomainError("graph too large for graph6")


def to_graph6(G: Graph) -> str:
    out = bytearray(_graph6_size(G.n))
    acc = 0
    nbits = 0
    for j in range(1, G.n):
        row = G.adj[j]
        for i in range(j):
            acc = (acc << 1) | (i in row)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return out.decode("ascii")


def from_graph6(text) -> Graph:
    if isinstance(text, str):
        data = text.encode("ascii", errors="replace")
    else:
        data = bytes(text)
    data = data.strip()
    offset = 0
    if data.startswith(b">>graph6<<"):
        offset = 10
    body = data[offset:]
    for k, c in enumerate(body):
        if not 63 <= c <= 126:
            raise ParseError(f"invalid graph6 byte {c!r}", offset + k)
    if not body:
        raise ParseError("empty graph6 string", offset)
    if body[0] != 126:
        n, pos = body[0] - 63, 1
    elif len(body) >= 2 and body[1] == 126:
        if len(body) < 8:
            raise ParseError("truncated graph6 size field", offset + len(body))
        n = 0
        for c in body[2:8]:
            n = (n << 6) | (c - 63)
        pos = 8
    else:
        if len(body) < 4:
            raise ParseError("truncated graph6 size field", offset + len(body))
        n = 0
        for c in body[1:4]:
            n = (n << 6) | (c - 63)
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) - pos != need:
        raise ParseError(f"graph6 body has {len(body) - pos} bytes, expected {need}", offset + pos)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[pos + k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    if nbits % 6:
        last = body[-1] - 63
        if last & ((1 << (6 - nbits % 6)) - 1):
            raise ParseError("nonzero graph6 padding bits", offset + len(body) - 1)
    return Graph._trusted(n, edges)


# -- edge-list JSON ------------------------------------------------------------


def from_json_obj(obj) -> Graph:
    if not isinstance(obj, dict):
        raise ValidationError("graph JSON must be an object")
    if "edges" not in obj:
        raise ValidationError("graph JSON lacks 'edges'")
    edges = obj["edges"]
    if not isinstance(edges, list):
        raise ValidationError("'edges' must be a list")
    if "n" not in obj:
        raise ValidationError("graph JSON lacks 'n'")
    for e in edges:
        if not isinstance(e, list):
            raise ValidationError(f"edge {e!r} must be a two-element list")
    return Graph(obj["n"], edges)


def parse_graph(text, format: str = "json") -> Graph:
    """Decode ``text`` (str or bytes) in ``format`` (``"json"`` or ``"g6"``).

    ``"auto"`` picks JSON when the first non-blank character is ``{``.
    """
    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("utf-8", errors="replace")
    if format == "auto":
        format = "json" if text.lstrip().startswith("{") else "g6"
    if format in ("json", "edge-list-json"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.pos) from None
        return from_json_obj(obj)
    if format in ("g6", "graph6"):
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ParseError("empty graph6 input", 0)
        return from_graph6(lines[0])
    raise DomainError(f"unknown graph format {format!r}")


def serialize_graph(G: Graph, format: str = "json") -> str:
    if format in ("json", "edge-list-json"):
        return G.to_json()
    if format in ("g6", "graph6"):
        return to_graph6(G)
    raise DomainError(f"unknown graph format {format!r}")


# -- subgraphs -----------------------------------------------------------------


def induced_subgraph(G: Graph, S: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``S``.

    Returns ``(H, mapping)`` where ``mapping[i]`` is the host id of vertex i of
    H; vertices keep their relative order.
    """
    verts = sorted(set(S))
    for v in verts:
        _check_vertex(G, v)
    index = {v: i for i, v in enumerate(verts)}
    edges = []
    for v in verts:
        iv = index[v]
        for u in G.adj[v]:
            if u > v and u in index:
                edges.append((iv, index[u]))
    return Graph._trusted(len(verts), edges), verts


def edges_within(G: Graph, S) -> set[tuple[int, int]]:
    """Host edges with both ends in ``S`` (host ids)."""
    S = set(S)
    return {(a, b) for a in S for b in G.adj[a] if a < b and b in S}


# -- connectivity --------------------------------------------------------------


@dataclass(frozen=True)
class ConnectivityProfile:
    connected: bool
    two_edge_connected: bool
    two_connected: bool
    bridges: list = field(default_factory=list)
    cutvertices: list = field(default_factory=list)


def components(G: Graph, removed=frozenset()) -> list[list[int]]:
    seen = set(removed)
    comps = []
    for s in range(G.n):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in G.adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def _lowpoints(G: Graph):
    """Iterative DFS over every component; returns (bridges, cutvertices)."""
    n = G.n
    disc = [-1] * n
    low = [0] * n
    bridges = []
    cuts = set()
    t = 0
    adj = [sorted(a) for a in G.adj]
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        root_children = 0
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if w != parent:
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                if low[v] < low[parent]:
                    low[parent] = low[v]
                if low[v] > disc[parent]:
                    bridges.append((min(v, parent), max(v, parent)))
                if parent == root:
                    root_children += 1
                elif low[v] >= disc[parent]:
                    cuts.add(parent)
        if root_children >= 2:
            cuts.add(root)
    return sorted(bridges), sorted(cuts)


def connectivity_profile(G: Graph) -> ConnectivityProfile:
    """Bridges, cutvertices and the three connectivity flags.

    Conventions: the empty graph is not connected; a single vertex is
    connected but neither 2-edge-connected nor 2-connected; 2-connectivity
    requires at least three vertices.
    """
    if G.n == 0:
        return ConnectivityProfile(False, False, False, [], [])
    connected = len(components(G)) == 1
    bridges, cuts = _lowpoints(G)
    tec = connected and G.n >= 2 and not bridges
    tc = tec and G.n >= 3 and not cuts
    return ConnectivityProfile(connected, tec, tc, bridges, cuts)


def is_two_edge_connected(G: Graph) -> bool:
    return connectivity_profile(G).two_edge_connected


# -- cycles and paths ----------------------------------------------------------


def bfs_path(G: Graph, s: int, t: int, banned_vertices=frozenset(), banned_edge=None):
    """Shortest s-t path avoiding ``banned_vertices`` (and one banned edge)."""
    if s == t:
        return [s]
    prev = {s: None}
    dq = deque([s])
    while dq:
        x = dq.popleft()
        for y in G.adj[x]:
            if y in prev or y in banned_vertices:
                continue
            if banned_edge is not None and {x, y} == banned_edge:
                continue
            prev[y] = x
            if y == t:
                path = [t]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return path[::-1]
            dq.append(y)
    return None


def shortcut_to_chordless(G: Graph, cycle: list[int], keep: int) -> list[int]:
    """Repeatedly cut ``cycle`` along a chord, keeping the side through ``keep``."""
    cyc = list(cycle)
    while True:
        k = len(cyc)
        if k == 3:
            return cyc
        pos = {v: i for i, v in enumerate(cyc)}
        chord = None
        for i, x in enumerate(cyc):
            for y in G.adj[x]:
                j = pos.get(y)
                if j is not None and j > i + 1 and not (i == 0 and j == k - 1):
                    chord = (i, j)
                    break
            if chord:
                break
        if chord is None:
            return cyc
        i, j = chord
        inner = cyc[i:j + 1]
        outer = cyc[j:] + cyc[:i + 1]
        if keep in inner and (keep not in outer or len(inner) <= len(outer)):
            cyc = inner
        else:
            cyc = outer
        r = cyc.index(keep)
        cyc = cyc[r:] + cyc[:r]


def chordless_cycle_through(G: Graph, v: int):
    """An induced cycle of G through ``v`` (as a vertex tuple starting at v),
    or None when v lies on no cycle."""
    _check_vertex(G, v)
    best = None
    for w in sorted(G.adj[v]):
        path = bfs_path(G, w, v, banned_edge={v, w})
        if path is not None and (best is None or len(path) < len(best)):
            best = path
    if best is None:
        return None
    # path runs w .. v; rotate so the cycle starts at v
    cycle = [v] + best[:-1]
    return tuple(shortcut_to_chordless(G, cycle, v))


def is_induced_cycle(G: Graph, cycle: Sequence[int]) -> bool:
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    S = set(cycle)
    for i in range(k):
        if not G.has_edge(cycle[i], cycle[(i + 1) % k]):
            return False
    return len(edges_within(G, S)) == k
