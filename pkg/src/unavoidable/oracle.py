"""Search and enumeration back-ends plus the explicit bound formulas.

The searches here stand in for existence results that come without an
algorithm.  Each one reports how it ended (``found``, ``exhausted`` or
``budget``) so callers never mistake a budget cut-off for nonexistence.
"""

from __future__ import annotations

import csv
import io
import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import ceil
from typing import Iterator, Optional

import numpy as np

from .errors import DomainError, SizeLimitError
from .graph import Graph, components, is_two_edge_connected, _lowpoints
from .structures import LadderWitness, ThetaWitness

# -- bounds --------------------------------------------------------------------

BOUND_NAMES = ("f_largecutverttree", "f_pathtobc", "R", "f_supercleaning")


def _int_at_least(x, lo, what):
    if not isinstance(x, int) or isinstance(x, bool) or x < lo:
        raise DomainError(f"{what} must be an integer >= {lo}, got {x!r}")


def bound(name: str, *args: int) -> int:
    """Value of one of the explicit bound functions."""
    if name == "f_largecutverttree":
        if len(args) != 2:
            raise DomainError("f_largecutverttree takes (p, q)")
        p, q = args
        _int_at_least(p, 3, "p")
        _int_at_least(q, 3, "q")
        return 2 + (p - 1) * (q - 2)
    if len(args) != 1:
        raise DomainError(f"{name} takes one argument")
    (x,) = args
    if name == "f_pathtobc":
        _int_at_least(x, 1, "t")
        return 2 * x
    if name == "R":
        _int_at_least(x, 3, "r")
        return (3 * x - 3) * (x - 3) + 1
    if name == "f_supercleaning":
        _int_at_least(x, 3, "r")
        R = (3 * x - 3) * (x - 3) + 1
        return max(3, ceil((R * (x - 1) * (x - 2) + 1) / 2))
    raise DomainError(f"unknown bound {name!r}; choose from {', '.join(BOUND_NAMES)}")


# -- cliques -------------------------------------------------------------------


def max_clique(G: Graph, limit: int = 64) -> tuple:
    """A maximum clique, by branch and bound over bitsets with a colouring bound."""
    if G.n > limit:
        raise SizeLimitError(f"max_clique is limited to {limit} vertices, got {G.n}")
    if G.n == 0:
        return ()
    adj = G.adj_mask
    best = [0, 0]           # size, mask

    def colour_order(cand):
        # greedy colouring; returns vertices with their colour bound
        order = []
        colour = 0
        rest = cand
        while rest:
            colour += 1
            q = rest
            while q:
                v = (q & -q).bit_length() - 1
                q &= ~adj[v] & ~(1 << v)
                rest &= ~(1 << v)
                order.append((v, colour))
        return order

    def expand(clique, size, cand):
        for v, c in reversed(colour_order(cand)):
            if size + c <= best[0]:
                return
            nc = clique | (1 << v)
            sub = cand & adj[v]
            if sub:
                expand(nc, size + 1, sub)
            elif size + 1 > best[0]:
                best[0], best[1] = size + 1, nc
            cand &= ~(1 << v)

    expand(0, 0, (1 << G.n) - 1)
    m = best[1]
    return tuple(v for v in range(G.n) if m >> v & 1)


def has_triangle(G: Graph) -> Optional[tuple]:
    adj = G.adj_mask
    for a, b in sorted(G.edges):
        common = adj[a] & adj[b]
        if common:
            return (a, b, (common & -common).bit_length() - 1)
    return None


# -- thetas --------------------------------------------------------------------


@dataclass
class SearchResult:
    status: str                 # "found", "exhausted" or "budget"
    witness: object = None
    cycle: Optional[tuple] = None
    steps: int = 0


class _Budget(Exception):
    pass


def _disjoint_paths_bound(G: Graph, s: int, t: int, cap: int) -> int:
    """Number of internally disjoint s-t paths, capped at ``cap`` (vertex-split flow)."""
    # node x -> (x_in = 2x, x_out = 2x+1); capacities 1 except at s and t
    n = G.n
    res = {}

    def add(a, b):
        res.setdefault(a, {}).setdefault(b, 0)
        res[a][b] += 1
        res.setdefault(b, {}).setdefault(a, 0)

    for x in range(n):
        if x not in (s, t):
            add(2 * x, 2 * x + 1)
    for a, b in G.edges:
        add(2 * a + 1, 2 * b)
        add(2 * b + 1, 2 * a)
    src, dst = 2 * s + 1, 2 * t
    flow = 0
    while flow < cap:
        pred = {src: None}
        dq = [src]
        for x in dq:
            if x == dst:
                break
            for y, c in res.get(x, {}).items():
                if c > 0 and y not in pred and not (y == 2 * s or y == 2 * t + 1):
                    pred[y] = x
                    dq.append(y)
        if dst not in pred:
            break
        y = dst
        while pred[y] is not None:
            x = pred[y]
            res[x][y] -= 1
            res[y][x] += 1
            y = x
        flow += 1
    return flow


def find_theta(G: Graph, u1: int, u2: int, r: int, budget: Optional[int] = None) -> Optional[ThetaWitness]:
    """r internally disjoint u1-u2 paths whose union is induced in G, or None."""
    res = _theta_search(G, u1, u2, r, budget)
    return res.witness


def _theta_search(G: Graph, u1: int, u2: int, r: int, budget: Optional[int]) -> SearchResult:
    for x in (u1, u2):
        if not isinstance(x, int) or not 0 <= x < G.n:
            raise DomainError(f"vertex {x!r} is not in the graph")
    if u1 == u2:
        raise DomainError("branch vertices must be distinct")
    if r < 1:
        raise DomainError("r must be positive")
    direct = G.has_edge(u1, u2)
    need = r - (1 if direct else 0)
    if min(G.degree(u1), G.degree(u2)) < r:
        return SearchResult("exhausted")
    if _disjoint_paths_bound(G, u1, u2, r) < r:
        return SearchResult("exhausted")
    adj = G.adj
    ends = {u1, u2}
    steps = [0]
    found = []

    def induced_paths(blocked, min_first):
        """Induced u1-u2 paths of length >= 2 avoiding ``blocked``, first vertex > min_first."""
        for a in sorted(adj[u1]):
            if a == u2 or a <= min_first or a in blocked:
                continue
            path = [u1, a]
            on = {a}
            yield from _extend(path, on, blocked)

    def _extend(path, on, blocked):
        steps[0] += 1
        if budget is not None and steps[0] > budget:
            raise _Budget
        x = path[-1]
        if u2 in adj[x]:
            # x touches u2: the path must stop here
            yield path + [u2]
            return
        for y in sorted(adj[x]):
            if y in ends or y in on or y in blocked:
                continue
            if u1 in adj[y]:
                continue
            if any(z in on for z in adj[y] if z != x):
                continue
            path.append(y)
            on.add(y)
            yield from _extend(path, on, blocked)
            path.pop()
            on.discard(y)

    def rec(chosen, blocked, min_first):
        if len(chosen) == need:
            found.append(list(chosen))
            return True
        for p in induced_paths(blocked, min_first):
            inner = p[1:-1]
            nb = set(blocked)
            for z in inner:
                nb.add(z)
                nb.update(adj[z])
            nb -= ends
            chosen.append(tuple(p))
            if rec(chosen, nb, p[1]):
                return True
            chosen.pop()
        return False

    try:
        ok = rec([], set(), -1)
    except _Budget:
        return SearchResult("budget", steps=steps[0])
    if not ok:
        return SearchResult("exhausted", steps=steps[0])
    paths = found[0]
    if direct:
        paths = [(u1, u2)] + paths
    return SearchResult("found", ThetaWitness((u1, u2), tuple(paths)), steps=steps[0])


def search_theta(G: Graph, r: int, budget: Optional[int] = 20000) -> SearchResult:
    """Try every branch pair with degree at least r; ``budget`` bounds total DFS steps."""
    cand = [v for v in range(G.n) if G.degree(v) >= r]
    spent = 0
    status = "exhausted"
    for u1, u2 in combinations(cand, 2):
        left = None if budget is None else budget - spent
        if left is not None and left <= 0:
            return SearchResult("budget", steps=spent)
        res = _theta_search(G, u1, u2, r, left)
        spent += res.steps
        if res.status == "found":
            res.steps = spent
            return res
        if res.status == "budget":
            status = "budget"
    return SearchResult(status, steps=spent)


# -- holes ---------------------------------------------------------------------


def find_hole(G: Graph, r: int, budget: Optional[int] = 200000) -> SearchResult:
    """A chordless cycle of length >= r (as a vertex tuple), searched by induced-path DFS."""
    from .graph import chordless_cycle_through

    for v in range(G.n):
        c = chordless_cycle_through(G, v)
        if c is not None and len(c) >= r:
            return SearchResult("found", cycle=tuple(c))
    adj = G.adj
    steps = [0]

    def dfs(s, path, on):
        steps[0] += 1
        if budget is not None and steps[0] > budget:
            raise _Budget
        x = path[-1]
        for y in sorted(adj[x]):
            if y <= s or y in on:
                continue
            touches = [z for z in adj[y] if z in on and z != x]
            if s in adj[y] and len(path) >= 2:
                if touches == [s]:
                    if len(path) + 1 >= r:
                        return tuple(path + [y])
                continue
            if touches:
                continue
            path.append(y)
            on.add(y)
            got = dfs(s, path, on)
            if got:
                return got
            path.pop()
            on.discard(y)
        return None

    try:
        for s in range(G.n):
            got = dfs(s, [s], {s})
            if got:
                return SearchResult("found", cycle=got, steps=steps[0])
    except _Budget:
        return SearchResult("budget", steps=steps[0])
    return SearchResult("exhausted", steps=steps[0])


# -- clean ladders -------------------------------------------------------------


def find_clean_ladder(G: Graph, target_order: int, budget: Optional[int] = 200000,
                      stop_order: Optional[int] = None) -> SearchResult:
    """A clean ladder of order >= target_order, or the reason none was returned.

    Rails grow from a seed rung p_1q_1 one vertex at a time; every added
    vertex keeps both rails induced and every cross trivial.  The search is
    exhaustive (no budget) for graphs on at most 12 vertices.  With
    ``stop_order`` larger than the target the search keeps the largest
    ladder seen and stops early once ``stop_order`` is reached.
    """
    if G.n <= 12:
        budget = None
    stop = max(target_order, stop_order or target_order)
    adj = G.adj
    best = [None]
    steps = [0]
    seen = set()

    def closable(P, Q):
        return Q[-1] in adj[P[-1]]

    def ok_cross(rungs, new):
        for a, b in rungs:
            for c, d in new:
                if a < c and d < b and not (c == a + 1 and b == d + 1):
                    return False
                if c < a and b < d and not (a == c + 1 and d == b + 1):
                    return False
        return True

    def dfs(P, Q, posP, posQ, rungs):
        steps[0] += 1
        if budget is not None and steps[0] > budget:
            raise _Budget
        key = (tuple(P), tuple(Q))
        if key in seen:
            return False
        seen.add(key)
        order = len(P) + len(Q)
        if order >= target_order and closable(P, Q):
            if best[0] is None or order > len(best[0].P) + len(best[0].Q):
                best[0] = LadderWitness(tuple(P), tuple(Q))
            if order >= stop:
                return True
        for rail, pos, other, side in ((P, posP, posQ, "P"), (Q, posQ, posP, "Q")):
            end = rail[-1]
            for x in sorted(adj[end]):
                if x in posP or x in posQ:
                    continue
                if any(z in pos for z in adj[x] if z != end):
                    continue
                k = len(rail) + 1
                if side == "P":
                    new = [(k, other[y]) for y in adj[x] if y in other]
                else:
                    new = [(other[y], k) for y in adj[x] if y in other]
                if not ok_cross(rungs, new):
                    continue
                rail.append(x)
                pos[x] = k
                rungs.extend(new)
                if dfs(P, Q, posP, posQ, rungs):
                    return True
                del rungs[len(rungs) - len(new):]
                del pos[x]
                rail.pop()
        return False

    try:
        for a, b in sorted(G.edges):
            for p1, q1 in ((a, b), (b, a)):
                if dfs([p1], [q1], {p1: 1}, {q1: 1}, [(1, 1)]):
                    return SearchResult("found", best[0], steps=steps[0])
    except _Budget:
        if best[0] is not None:
            return SearchResult("found", best[0], steps=steps[0])
        return SearchResult("budget", steps=steps[0])
    if best[0] is not None:
        return SearchResult("found", best[0], steps=steps[0])
    return SearchResult("exhausted", steps=steps[0])


# -- enumeration ---------------------------------------------------------------


def edge_order(n: int) -> list[tuple[int, int]]:
    """Upper-triangle pairs in graph6 bit order (column by column)."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def _connected_rows(rows, n):
    reach = np.ones(rows[0].shape, dtype=np.uint8)
    for _ in range(n - 1):
        new = reach.copy()
        for v in range(n):
            hit = (reach >> v) & 1
            new |= rows[v] * hit
        if np.array_equal(new, reach):
            break
        reach = new
    return reach == (1 << n) - 1


def two_ec_masks(n: int, lo: int = 0, hi: Optional[int] = None) -> np.ndarray:
    """Edge masks in [lo, hi) whose graphs are 2-edge-connected."""
    if n < 3:
        return np.zeros(0, dtype=np.int64)
    E = edge_order(n)
    hi = (1 << len(E)) if hi is None else hi
    masks = np.arange(lo, hi, dtype=np.int64)
    rows = [np.zeros(masks.shape, dtype=np.uint8) for _ in range(n)]
    deg = np.zeros(masks.shape, dtype=np.uint8)
    for k, (a, b) in enumerate(E):
        bit = ((masks >> k) & 1).astype(np.uint8)
        rows[a] |= bit << b
        rows[b] |= bit << a
    for v in range(n):
        deg[:] = 0
        for w in range(n):
            deg += (rows[v] >> w) & 1
        keep = deg >= 2
        masks = masks[keep]
        rows = [r[keep] for r in rows]
        deg = deg[keep]
    ok = _connected_rows(rows, n)
    masks = masks[ok]
    rows = [r[ok] for r in rows]
    for k, (a, b) in enumerate(E):
        has = ((masks >> k) & 1).astype(bool)
        if not has.any():
            continue
        sub = [r[has] for r in rows]
        sub[a] = sub[a] & np.uint8(~(1 << b) & 0xFF)
        sub[b] = sub[b] & np.uint8(~(1 << a) & 0xFF)
        bridge = ~_connected_rows(sub, n)
        if bridge.any():
            drop = np.zeros(masks.shape, dtype=bool)
            drop[np.flatnonzero(has)[bridge]] = True
            masks = masks[~drop]
            rows = [r[~drop] for r in rows]
    return masks


def mask_to_graph(n: int, mask: int, E=None) -> Graph:
    E = E or edge_order(n)
    return Graph._trusted(n, [E[k] for k in range(len(E)) if mask >> k & 1])


def _parse_mode(mode):
    if mode in (None, "exhaustive"):
        return ("exhaustive",)
    if isinstance(mode, str) and mode.startswith("sampled"):
        parts = mode.split(":")
        try:
            count = int(parts[1]) if len(parts) > 1 else 100
            seed = int(parts[2]) if len(parts) > 2 else 0
        except ValueError:
            raise DomainError(f"bad sampling mode {mode!r}") from None
        return ("sampled", count, seed)
    if isinstance(mode, tuple) and mode and mode[0] == "sampled":
        count = mode[1] if len(mode) > 1 else 100
        seed = mode[2] if len(mode) > 2 else 0
        return ("sampled", count, seed)
    raise DomainError(f"unknown enumeration mode {mode!r}")


def enumerate_2ec(n: int, mode="exhaustive", shard: tuple = (0, 1), p: float = 0.5) -> Iterator[Graph]:
    """Stream of 2-edge-connected graphs on n labelled vertices.

    ``mode`` is ``"exhaustive"`` (n <= 7) or ``("sampled", count, seed)`` /
    ``"sampled:count[:seed]"`` (n <= 64).  ``shard=(k, s)`` restricts the
    exhaustive stream to the k-th of s contiguous mask ranges.
    """
    m = _parse_mode(mode)
    _int_at_least(n, 0, "n")
    if m[0] == "exhaustive":
        if n > 7:
            raise DomainError("exhaustive enumeration is limited to n <= 7")
        k, s = shard
        E = edge_order(n)
        total = 1 << len(E)
        lo, hi = total * k // s, total * (k + 1) // s
        for mask in two_ec_masks(n, lo, hi).tolist():
            yield mask_to_graph(n, mask, E)
        return
    if n > 64:
        raise DomainError("sampled enumeration is limited to n <= 64")
    for G, _ in sample_2ec(n, m[1], m[2], p):
        yield G


def sample_2ec(n: int, count: int, seed: int, p: float = 0.5):
    """``count`` pairs (graph, repaired) from G(n, p) made 2-edge-connected.

    Repair joins components into a path of components and then pairs the
    leaves of the bridge tree, which adds ceil(leaves/2) edges.
    """
    if n < 3:
        raise DomainError("2-edge-connected graphs need n >= 3")
    rng = random.Random(seed)
    for _ in range(count):
        edges = {(a, b) for a, b in combinations(range(n), 2) if rng.random() < p}
        G = Graph._trusted(n, edges)
        if is_two_edge_connected(G):
            yield G, False
        else:
            yield repair_2ec(G), True


def _bridge_tree(G: Graph):
    """(component id per vertex, component adjacency) after removing bridges."""
    bridges = set(_lowpoints(G)[0])
    comp = [-1] * G.n
    c = 0
    for s in range(G.n):
        if comp[s] != -1:
            continue
        comp[s] = c
        stack = [s]
        while stack:
            x = stack.pop()
            for y in G.adj[x]:
                e = (x, y) if x < y else (y, x)
                if comp[y] == -1 and e not in bridges:
                    comp[y] = c
                    stack.append(y)
        c += 1
    tree = {k: [] for k in range(c)}
    for a, b in bridges:
        tree[comp[a]].append((comp[b], a, b))
        tree[comp[b]].append((comp[a], b, a))
    return comp, tree, bridges


def repair_2ec(G: Graph) -> Graph:
    edges = set(G.edges)
    comps = components(G)
    for c1, c2 in zip(comps, comps[1:]):
        edges.add((min(c1[-1], c2[0]), max(c1[-1], c2[0])))
    H = Graph._trusted(G.n, edges)
    if is_two_edge_connected(H):
        return H
    comp, tree, bridges = _bridge_tree(H)
    members = {}
    for v, k in enumerate(comp):
        members.setdefault(k, []).append(v)
    # leaves in DFS preorder of the bridge tree
    root = 0
    order, seen, stack = [], {root}, [root]
    while stack:
        x = stack.pop()
        order.append(x)
        for y, _, _ in sorted(tree[x], reverse=True):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    leaves = [k for k in order if len(tree[k]) == 1]
    half = (len(leaves) + 1) // 2
    pairs = [(leaves[i], leaves[(i + len(leaves) // 2) % len(leaves)]) for i in range(half)]
    for A, B in pairs:
        if A == B:
            continue
        done = False
        for x in members[A]:
            for y in members[B]:
                e = (x, y) if x < y else (y, x)
                if e not in edges:
                    edges.add(e)
                    done = True
                    break
            if done:
                break
    H = Graph._trusted(G.n, edges)
    while not is_two_edge_connected(H):
        # leaf pairing leaves nothing to do here in practice; close any bridge greedily
        _, tree, bridges = _bridge_tree(H)
        a, b = min(bridges)
        ea = [x for x in range(G.n) if x != b and (min(x, b), max(x, b)) not in edges and x != a]
        x = ea[0]
        edges.add((min(x, b), max(x, b)))
        H = Graph._trusted(G.n, edges)
    return H


def canonical_form(G: Graph) -> tuple:
    """Lexicographically least sorted edge list over relabellings that respect degree classes."""
    n = G.n
    degs = sorted(range(n), key=lambda v: (G.degree(v), v))
    classes = []
    for v in degs:
        if classes and G.degree(classes[-1][0]) == G.degree(v):
            classes[-1].append(v)
        else:
            classes.append([v])
    best = None

    def rec(k, prefix):
        nonlocal best
        if k == len(classes):
            lab = {v: i for i, v in enumerate(prefix)}
            form = tuple(sorted(tuple(sorted((lab[a], lab[b]))) for a, b in G.edges))
            if best is None or form < best:
                best = form
            return
        for perm in permutations(classes[k]):
            rec(k + 1, prefix + list(perm))

    rec(0, [])
    return (n, best)


def dedup_isomorphic(graphs) -> list[Graph]:
    seen = {}
    for G in graphs:
        seen.setdefault(canonical_form(G), G)
    return list(seen.values())


# -- empirical thresholds ------------------------------------------------------

OUTCOMES = ("clique", "flower", "theta", "scpl", "chain", "not_found")


@dataclass
class ThresholdReport:
    r: int
    n_min: int
    n_max: int
    modes: dict = field(default_factory=dict)        # order -> "exhaustive" / "sampled:K:seed"
    tallies: dict = field(default_factory=dict)      # order -> outcome -> count
    counts: dict = field(default_factory=dict)       # order -> graphs examined
    repaired: dict = field(default_factory=dict)     # order -> sampled graphs that were repaired
    invalid: dict = field(default_factory=dict)      # order -> certificates failing certify
    least_order: Optional[int] = None

    def to_json_obj(self) -> dict:
        return {
            "r": self.r,
            "n_min": self.n_min,
            "n_max": self.n_max,
            "least_all_certified_order": self.least_order,
            "orders": [
                {
                    "n": n,
                    "mode": self.modes[n],
                    "graphs": self.counts[n],
                    "repaired": self.repaired.get(n, 0),
                    "invalid": self.invalid.get(n, 0),
                    "outcomes": self.tallies[n],
                }
                for n in sorted(self.tallies)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "n", "mode", "outcome", "count"])
        for n in sorted(self.tallies):
            for kind in OUTCOMES:
                w.writerow([self.r, n, self.modes[n], kind, self.tallies[n].get(kind, 0)])
        return buf.getvalue()


def _tally_graphs(graphs, r, verify=True):
    from .extraction import NotFound, find_unavoidable
    from .structures import certify

    tally = dict.fromkeys(OUTCOMES, 0)
    invalid = 0
    examined = 0
    for G in graphs:
        examined += 1
        res = find_unavoidable(G, r)
        if isinstance(res, NotFound):
            tally["not_found"] += 1
            continue
        tally[res.kind] += 1
        if verify and not certify(G, res):
            invalid += 1
    return tally, invalid, examined


def _exhaustive_shard(args):
    n, r, k, s, verify = args
    return _tally_graphs(enumerate_2ec(n, "exhaustive", shard=(k, s)), r, verify)


def _workers():
    try:
        cap = int(os.environ.get("UNAV_THREADS", "0"))
    except ValueError:
        cap = 0
    cpus = os.cpu_count() or 1
    return max(1, min(cap, cpus) if cap > 0 else cpus)


def empirical_threshold(r: int, n_max: int, n_min: int = 3, samples: int = 200, seed: int = 0,
                        verify: bool = True, workers: Optional[int] = None) -> ThresholdReport:
    """Run the pipeline on every 2-edge-connected graph of each order.

    Orders up to 7 are enumerated exhaustively; larger orders use ``samples``
    repaired G(n, 1/2) graphs per order.  The least all-certified order is
    the smallest n0 such that no order in n0..n_max produced NotFound.
    """
    _int_at_least(r, 3, "r")
    _int_at_least(n_min, 3, "n_min")
    if n_max < n_min:
        raise DomainError("n_max must be at least n_min")
    workers = workers or _workers()
    rep = ThresholdReport(r, n_min, n_max)
    for n in range(n_min, n_max + 1):
        if n <= 7:
            rep.modes[n] = "exhaustive"
            shards = max(1, workers) if n >= 6 else 1
            jobs = [(n, r, k, shards, verify) for k in range(shards)]
            if shards > 1:
                with ProcessPoolExecutor(max_workers=workers) as ex:
                    parts = list(ex.map(_exhaustive_shard, jobs))
            else:
                parts = [_exhaustive_shard(j) for j in jobs]
            rep.repaired[n] = 0
        else:
            rep.modes[n] = f"sampled:{samples}:{seed + n}"
            pairs = list(sample_2ec(n, samples, seed + n))
            rep.repaired[n] = sum(1 for _, fixed in pairs if fixed)
            parts = [_tally_graphs((G for G, _ in pairs), r, verify)]
        tally = dict.fromkeys(OUTCOMES, 0)
        invalid = examined = 0
        for t, bad, ex_ in parts:
            for kind in OUTCOMES:
                tally[kind] += t[kind]
            invalid += bad
            examined += ex_
        rep.tallies[n] = tally
        rep.invalid[n] = invalid
        rep.counts[n] = examined
    least = None
    for n in range(n_max, n_min - 1, -1):
        if rep.tallies[n]["not_found"]:
            break
        least = n
    rep.least_order = least
    return rep
