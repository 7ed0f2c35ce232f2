"""Super-cleaning: turn a clean ladder into an induced chain of super-clean
pinched ladders, recording every decision.

Rail positions are 1-based.  Trace labels name vertices by rail position
(``"p3"``, ``"q1"``) and case labels follow the step names of the process
("init", "1.2" .. "1.6b", "2.2" .. "2.6", "3").
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import ceil

from .errors import AlgorithmError, DomainError, NotGuaranteedError, PreconditionError
from .graph import Graph
from .structures import (
    ChainWitness,
    FlowerWitness,
    LadderWitness,
    PinchedLadderWitness,
    StructureCertificate,
    certify,
)

UNKNOWN, KEEP, DELETE = 0, 1, 2


@dataclass
class SupercleanState:
    """Statuses and designations over the two rails of a clean ladder."""

    ell: int
    m: int
    NQ: list            # NQ[i]: sorted Q-positions adjacent to p_i
    NP: list            # NP[j]: sorted P-positions adjacent to q_j
    sp: list = field(default=None)
    sq: list = field(default=None)
    initial: tuple = None
    joining: list = field(default_factory=list)
    final: tuple = None
    assigned: int = 0

    def __post_init__(self):
        self.sp = [UNKNOWN] * (self.ell + 1)
        self.sq = [UNKNOWN] * (self.m + 1)
        self.rec = None

    # -- status --------------------------------------------------------------

    def status(self, side, k):
        return (self.sp if side == "p" else self.sq)[k]

    def keep(self, side, k):
        arr = self.sp if side == "p" else self.sq
        if arr[k] == KEEP:
            return
        if arr[k] == DELETE:
            raise AlgorithmError(f"{side}{k} is already deleted")
        arr[k] = KEEP
        self.assigned += 1
        self.rec["keep"].append(f"{side}{k}")

    def delete(self, side, k):
        arr = self.sp if side == "p" else self.sq
        if arr[k] != UNKNOWN:
            raise AlgorithmError(f"{side}{k} is not unknown when deleted")
        arr[k] = DELETE
        self.assigned += 1
        self.rec["delete"].append(f"{side}{k}")

    def designate(self, what, side, k):
        tag = (side, k)
        if what == "initial":
            self.initial = tag
        elif what == "joining":
            self.joining.append(tag)
        else:
            self.final = tag
        self.rec["designate"][what] = f"{side}{k}"

    # -- accessors -----------------------------------------------------------

    def UQ(self, i):
        return [j for j in self.NQ[i] if self.sq[j] == UNKNOWN]

    def UP(self, j):
        return [i for i in self.NP[j] if self.sp[i] == UNKNOWN]

    def _has_unknown(self, nbrs, arr):
        for x in reversed(nbrs):
            if arr[x] == UNKNOWN:
                return True
        return False

    def p_open(self, i):
        s = self.sp[i]
        return s == UNKNOWN or (s == KEEP and self._has_unknown(self.NQ[i], self.sq))

    def q_open(self, j):
        s = self.sq[j]
        return s == UNKNOWN or (s == KEEP and self._has_unknown(self.NP[j], self.sp))

    def _blocked(self, tag):
        return tag == self.initial or tag in self.joining

    def rung_open(self, i, j):
        if self.sp[i] == DELETE or self.sq[j] == DELETE:
            return False
        if self._blocked(("p", i)) or self._blocked(("q", j)):
            return False
        return self.p_open(i) or self.q_open(j)

    def edge(self, i, j):
        """Is p_i q_j a rung of the current (undeleted) ladder?"""
        if not (1 <= i <= self.ell and 1 <= j <= self.m):
            return False
        if self.sp[i] == DELETE or self.sq[j] == DELETE:
            return False
        return j in self._nq_sets[i]

    def check_frontier(self, terminated):
        for arr, n, name in ((self.sp, self.ell, "P"), (self.sq, self.m, "Q")):
            k = 1
            while k <= n and arr[k] != UNKNOWN:
                k += 1
            if any(arr[x] != UNKNOWN for x in range(k, n + 1)):
                raise AlgorithmError(f"decided vertices on {name} are not a prefix")
            if not terminated and k > 1 and arr[k - 1] != KEEP:
                raise AlgorithmError(f"last decided vertex on {name} is not keep")


@dataclass(frozen=True)
class SupercleanResult:
    chain: ChainWitness
    trace: tuple
    kept: tuple
    deleted: tuple
    P: tuple
    Q: tuple

    def trace_lines(self) -> list[str]:
        return [json.dumps(rec, separators=(",", ":")) for rec in self.trace]

    def trace_jsonl(self) -> str:
        return "".join(line + "\n" for line in self.trace_lines())


def _new_record(rung, case):
    return {"rung": rung, "case": case, "keep": [], "delete": [], "designate": {}}


def _check_clean(G: Graph, L: LadderWitness):
    v = certify(G, StructureCertificate.of(L, 3))
    if not v:
        if v.reason == "NONTRIVIAL_CROSS":
            raise PreconditionError(f"ladder is not clean: nontrivial cross {v.location}")
        raise PreconditionError(f"not a clean ladder: {v.reason} at {v.location}")


def superclean(G: Graph, L: LadderWitness, check: bool = True) -> SupercleanResult:
    """Run the super-cleaning process on the clean ladder ``L`` inside ``G``."""
    if check:
        _check_clean(G, L)
    P, Q = tuple(L.P), tuple(L.Q)
    if len(P) == 1:
        # the initial vertex needs a neighbour along its own rail
        P, Q = Q, P
    ell, m = len(P), len(Q)
    posP = {v: i for i, v in enumerate(P, 1)}
    posQ = {v: j for j, v in enumerate(Q, 1)}
    NQ = [[] for _ in range(ell + 1)]
    NP = [[] for _ in range(m + 1)]
    rungs = []
    for i, x in enumerate(P, 1):
        for y in G.adj[x]:
            j = posQ.get(y)
            if j is not None:
                NQ[i].append(j)
                NP[j].append(i)
                rungs.append((i + j, i, j))
    for a in NQ:
        a.sort()
    for a in NP:
        a.sort()
    rungs.sort()

    st = SupercleanState(ell, m, NQ, NP)
    st._nq_sets = [set(a) for a in NQ]
    trace = []

    def deg_p1():
        return (1 if ell > 1 else 0) + len(NQ[1])

    def deg_q1():
        return (1 if m > 1 else 0) + len(NP[1])

    # -- initialization ----------------------------------------------------
    st.rec = _new_record(None, "init")
    if deg_p1() == 2:
        st.designate("initial", "p", 1)
        st.keep("p", 1)
        st.keep("p", 2)
        st.keep("q", 1)
    elif deg_q1() == 2:
        st.designate("initial", "q", 1)
        st.keep("q", 1)
        st.keep("p", 1)
        st.keep("q", 2)
    else:
        if deg_p1() != 3 or deg_q1() != 3 or 2 not in st._nq_sets[1]:
            raise PreconditionError("rail heads have degree above 3; the ladder has a nontrivial cross")
        st.designate("initial", "p", 1)
        st.delete("q", 1)
        st.keep("p", 1)
        st.keep("p", 2)
        st.keep("q", 2)
    trace.append(st.rec)
    st.check_frontier(False)

    ptr = 0
    nr = len(rungs)
    while st.final is None:
        while ptr < nr and not st.rung_open(rungs[ptr][1], rungs[ptr][2]):
            ptr += 1
        if ptr == nr:
            _case3(st)
            trace.append(st.rec)
            break
        h, i, j = rungs[ptr]
        same = [(a, b) for hh, a, b in rungs[ptr + 1:ptr + 3] if hh == h and st.rung_open(a, b)]
        if same:
            (a1, b1), (a2, b2) = (i, j), same[0]
            if len(same) > 1 or not (a2 == a1 + 1 and b2 == b1 - 1):
                raise AlgorithmError(f"open rungs of equal value {h} do not form a trivial cross")
            i, j = a1, b2          # the rungs are p_i q_{j+1} and p_{i+1} q_j
            st.rec = _new_record([[i, j + 1], [i + 1, j]], None)
            _case2(st, i, j)
        elif st.edge(i, j + 1) and st.edge(i + 1, j):
            st.rec = _new_record([i, j], None)
            _case2(st, i, j)
        else:
            st.rec = _new_record([i, j], None)
            _case1(st, i, j)
        trace.append(st.rec)
        st.check_frontier(st.final is not None)

    if st.assigned != ell + m:
        raise AlgorithmError("some vertices never received a status")
    return _assemble(G, P, Q, st, trace)


def _keep_prefix(st, i, j):
    for a in range(1, i + 1):
        if st.sp[a] == UNKNOWN:
            st.keep("p", a)
    for b in range(1, j + 1):
        if st.sq[b] == UNKNOWN:
            st.keep("q", b)


def _case1(st: SupercleanState, i, j):
    rec = st.rec
    _keep_prefix(st, i, j)
    if i == st.ell:
        rec["case"] = "1.3"
        for k in range(j + 1, st.m + 1):
            st.delete("q", k)
        st.designate("final", "p", i)
        return
    if j == st.m:
        rec["case"] = "1.4"
        for k in range(i + 1, st.ell + 1):
            st.delete("p", k)
        st.designate("final", "q", j)
        return
    uq, up = st.UQ(i), st.UP(j)
    if not uq and not up:
        rec["case"] = "1.2"
        return
    if uq:
        if up:
            raise AlgorithmError(f"p{i} and q{j} both have unknown neighbours outside a cross")
        if any(b != j + 1 for b in uq):
            rec["case"] = "1.5a"
            k = st.NQ[i][-1]
            st.keep("q", k)
            st.keep("p", i + 1)
            for a in range(j + 1, k):
                st.delete("q", a)
            st.designate("joining", "p", i)
        else:
            rec["case"] = "1.5b"
            st.keep("q", j + 1)
        return
    if any(a != i + 1 for a in up):
        rec["case"] = "1.6a"
        k = st.NP[j][-1]
        st.keep("p", k)
        st.keep("q", j + 1)
        for a in range(i + 1, k):
            st.delete("p", a)
        st.designate("joining", "q", j)
    else:
        rec["case"] = "1.6b"
        st.keep("p", i + 1)


def _case2(st: SupercleanState, i, j):
    rec = st.rec
    _keep_prefix(st, i, j)
    if i + 1 == st.ell:
        rec["case"] = "2.2"
        for k in range(j + 1, st.m + 1):
            st.delete("q", k)
        st.keep("p", st.ell)
        st.designate("final", "p", st.ell)
        return
    if j + 1 == st.m:
        rec["case"] = "2.3"
        for k in range(i + 1, st.ell + 1):
            st.delete("p", k)
        st.keep("q", st.m)
        st.designate("final", "q", st.m)
        return
    uq, up = st.UQ(i + 1), st.UP(j + 1)
    if all(b == j + 1 for b in uq) and all(a == i + 1 for a in up):
        rec["case"] = "2.6"
        st.keep("p", i + 1)
        st.keep("q", j + 1)
        return
    if any(b != j + 1 for b in uq):
        rec["case"] = "2.4"
        k = st.NQ[i + 1][-1]
        st.keep("q", k)
        st.keep("p", i + 1)
        st.keep("p", i + 2)
        for a in range(j + 1, k):
            st.delete("q", a)
        st.designate("joining", "p", i + 1)
        return
    rec["case"] = "2.5"
    k = st.NP[j + 1][-1]
    st.keep("p", k)
    st.keep("q", j + 1)
    st.keep("q", j + 2)
    for a in range(i + 1, k):
        st.delete("p", a)
    st.designate("joining", "q", j + 1)


def _case3(st: SupercleanState):
    st.rec = _new_record(None, "3")
    if st.sp[st.ell] != KEEP or st.sq[st.m] != KEEP:
        raise AlgorithmError("no open rung but a rail end is not kept")
    st.designate("final", "p", st.ell)


def _assemble(G, P, Q, st, trace) -> SupercleanResult:
    from .decomposition import biconnected_components
    from .graph import induced_subgraph

    def host(tag):
        side, k = tag
        return P[k - 1] if side == "p" else Q[k - 1]

    kept = [P[i - 1] for i in range(1, st.ell + 1) if st.sp[i] == KEEP]
    kept += [Q[j - 1] for j in range(1, st.m + 1) if st.sq[j] == KEEP]
    deleted = [P[i - 1] for i in range(1, st.ell + 1) if st.sp[i] == DELETE]
    deleted += [Q[j - 1] for j in range(1, st.m + 1) if st.sq[j] == DELETE]
    H, mapping = induced_subgraph(G, kept)
    comps = [frozenset(mapping[x] for x in c) for c in biconnected_components(H)]
    designated = [host(st.initial)] + [host(t) for t in st.joining] + [host(st.final)]
    if len(comps) != len(designated) - 1:
        raise AlgorithmError(f"kept graph has {len(comps)} blocks for {len(designated) - 1} ladders")
    posP = {v: i for i, v in enumerate(P)}
    posQ = {v: j for j, v in enumerate(Q)}
    ladders = []
    for s, t in zip(designated, designated[1:]):
        block = [c for c in comps if s in c and t in c]
        if len(block) != 1:
            raise AlgorithmError(f"no unique block between {s} and {t}")
        inner = block[0] - {s, t}
        ps = sorted((v for v in inner if v in posP), key=posP.get)
        qs = sorted((v for v in inner if v in posQ), key=posQ.get)
        ladders.append(PinchedLadderWitness((s, *ps, t), (s, *qs, t)))
    chain = ChainWitness(tuple(ladders))
    return SupercleanResult(chain, tuple(trace), tuple(sorted(kept)), tuple(sorted(deleted)), P, Q)


# -- the trichotomy ------------------------------------------------------------


def R_bound(r: int) -> int:
    return (3 * r - 3) * (r - 3) + 1


def f_supercleaning(r: int) -> int:
    if not isinstance(r, int) or r < 3:
        raise DomainError("r must be an integer >= 3")
    return max(3, ceil((R_bound(r) * (r - 1) * (r - 2) + 1) / 2))


def _fan_outcome(G, L: LadderWitness, r: int):
    for A, B in ((L.P, L.Q), (L.Q, L.P)):
        posB = {v: j for j, v in enumerate(B)}
        for u in A:
            nb = sorted(posB[y] for y in G.adj[u] if y in posB)
            if len(nb) >= 3 * r - 1:
                petals = tuple((u,) + tuple(B[nb[3 * i]:nb[3 * i + 1] + 1]) for i in range(r))
                return StructureCertificate.of(FlowerWitness(u, petals), r)
    for A, B in ((L.P, L.Q), (L.Q, L.P)):
        posB = {v: j for j, v in enumerate(B)}
        for u in A:
            nb = sorted(posB[y] for y in G.adj[u] if y in posB)
            for a, b in zip(nb, nb[1:]):
                if b - a >= r - 2:
                    arc = tuple(B[a:b + 1])
                    w = PinchedLadderWitness((u, arc[-1]), (u,) + arc)
                    return StructureCertificate.of(w, r)
    return None


def superclean_or_outcome(G: Graph, L: LadderWitness, r: int) -> StructureCertificate:
    """A super-clean pinched ladder of order >= r, a chain of r of them, or an r-flower."""
    if not isinstance(r, int) or r < 3:
        raise DomainError("r must be an integer >= 3")
    _check_clean(G, L)
    cert = _fan_outcome(G, L, r)
    if cert is not None:
        return cert
    res = superclean(G, L, check=False)
    for block in res.chain.ladders:
        if block.order >= r:
            return StructureCertificate.of(block, r)
    if len(res.chain.ladders) >= r:
        return StructureCertificate.of(res.chain, r)
    guaranteed = L.order >= f_supercleaning(r)
    if guaranteed:
        raise AlgorithmError(f"clean ladder of order {L.order} >= {f_supercleaning(r)} produced no outcome")
    raise NotGuaranteedError(
        f"clean ladder of order {L.order} is below {f_supercleaning(r)} and has no outcome for r={r}",
        partial=res.chain,
    )
