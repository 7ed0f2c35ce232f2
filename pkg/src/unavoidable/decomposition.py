"""Block-cutvertex trees and chains of blocks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, PreconditionError
from .graph import Graph, components, induced_subgraph

BLOCK = "block"
CUT = "cut"


@dataclass(frozen=True)
class BlockCutTree:
    """Blocks (sorted vertex tuples), cutvertices, and (cutvertex, block index)
    incidences.  Tree nodes are ``("block", i)`` and ``("cut", v)``."""

    blocks: tuple
    cutvertices: tuple
    tree_edges: tuple

    def nodes(self) -> list:
        return [(BLOCK, i) for i in range(len(self.blocks))] + [(CUT, c) for c in self.cutvertices]

    def adjacency(self) -> dict:
        adj = {node: [] for node in self.nodes()}
        for c, b in self.tree_edges:
            adj[(CUT, c)].append((BLOCK, b))
            adj[(BLOCK, b)].append((CUT, c))
        for node in adj:
            adj[node].sort()
        return adj

    def blocks_containing(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]

    def to_json_obj(self) -> dict:
        return {
            "blocks": [list(b) for b in self.blocks],
            "cutvertices": list(self.cutvertices),
            "tree_edges": [list(e) for e in self.tree_edges],
        }


def biconnected_components(G: Graph) -> list[tuple[int, ...]]:
    """Vertex sets of the blocks of G (isolated vertices are their own block)."""
    n = G.n
    adj = [sorted(a) for a in G.adj]
    disc = [-1] * n
    low = [0] * n
    out = []
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        if not adj[root]:
            disc[root] = t
            t += 1
            out.append((root,))
            continue
        disc[root] = low[root] = t
        t += 1
        edge_stack = []
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            if low[v] < low[parent]:
                low[parent] = low[v]
            if low[v] >= disc[parent]:
                verts = set()
                while True:
                    a, b = edge_stack.pop()
                    verts.add(a)
                    verts.add(b)
                    if (a, b) == (parent, v):
                        break
                out.append(tuple(sorted(verts)))
    return out


def block_cut_tree(G: Graph) -> BlockCutTree:
    comps = components(G)
    if len(comps) != 1:
        raise PreconditionError(f"graph is not connected; components: {comps}")
    blocks = sorted(biconnected_components(G))
    count = {}
    for b in blocks:
        for v in b:
            count[v] = count.get(v, 0) + 1
    cuts = tuple(sorted(v for v, k in count.items() if k >= 2))
    cutset = set(cuts)
    tree_edges = tuple(sorted((v, i) for i, b in enumerate(blocks) for v in b if v in cutset))
    return BlockCutTree(tuple(blocks), cuts, tree_edges)


def _bfs_far(adj, start):
    dist = {start: 0}
    dq = deque([start])
    while dq:
        x = dq.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                dq.append(y)
    return dist


def longest_path(T: BlockCutTree) -> list:
    """Lexicographically smallest node sequence among the longest tree paths."""
    adj = T.adjacency()
    nodes = sorted(adj)
    if len(nodes) == 1:
        return nodes
    d0 = _bfs_far(adj, nodes[0])
    a = max(d0, key=d0.get)
    diameter = max(_bfs_far(adj, a).values())
    # smallest start with full eccentricity, then greedy descent
    for s in nodes:
        dist = _bfs_far(adj, s)
        if max(dist.values()) == diameter:
            break
    # height of each node in the tree rooted at s
    order = sorted(dist, key=lambda x: dist[x])
    height = {}
    for x in reversed(order):
        h = 0
        for y in adj[x]:
            if dist[y] == dist[x] + 1:
                h = max(h, height[y] + 1)
        height[x] = h
    path = [s]
    x = s
    while height[x] > 0:
        x = min(y for y in adj[x] if dist[y] == dist[x] + 1 and height[y] == height[x] - 1)
        path.append(x)
    return path


def bc_tree_stats(T: BlockCutTree) -> tuple[int, int, int]:
    """(longest path order, most blocks at one cutvertex, largest block order)."""
    per_cut = {}
    for c, _ in T.tree_edges:
        per_cut[c] = per_cut.get(c, 0) + 1
    return (
        len(longest_path(T)),
        max(per_cut.values(), default=0),
        max(len(b) for b in T.blocks),
    )


@dataclass(frozen=True)
class ChainOfBlocksWitness:
    blocks: tuple            # host vertex sets, in chain order
    joining: tuple           # joining[i] is shared by blocks[i] and blocks[i+1]
    graph: Graph             # the induced host subgraph
    mapping: tuple           # graph vertex i is host vertex mapping[i]

    @property
    def length(self) -> int:
        return len(self.blocks)


def chain_of_blocks_from_path(G: Graph, T: BlockCutTree, path: Sequence) -> ChainOfBlocksWitness:
    """Induced chain formed by the block nodes of a path in the tree."""
    adj = T.adjacency()
    path = [tuple(p) for p in path]
    if not path or len(set(path)) != len(path):
        raise DomainError("tree path must be a non-empty sequence of distinct nodes")
    for node in path:
        if node not in adj:
            raise DomainError(f"{node!r} is not a node of the tree")
    for x, y in zip(path, path[1:]):
        if y not in adj[x]:
            raise DomainError(f"{x!r} and {y!r} are not adjacent in the tree")
    block_ids = [i for kind, i in path if kind == BLOCK]
    blocks = tuple(T.blocks[i] for i in block_ids)
    joining = []
    for b1, b2 in zip(blocks, blocks[1:]):
        common = set(b1) & set(b2)
        if len(common) != 1:
            raise DomainError("consecutive path blocks must share exactly one cutvertex")
        joining.append(common.pop())
    H, mapping = induced_subgraph(G, set().union(*map(set, blocks)) if blocks else ())
    return ChainOfBlocksWitness(blocks, tuple(joining), H, tuple(mapping))
