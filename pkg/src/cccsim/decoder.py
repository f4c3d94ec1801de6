"""Exact minimum-weight perfect-matching decoding.

RTCS decoding is one matching over the cell detector graph. CCCS decoding
runs two stages for each of the three colors and keeps the smallest decoded
set. Describing color red: stage one matches the blue and green checks to
find the red-shrunk-lattice faces with odd error parity (blue/green ancilla
errors and odd red links); stage two treats those odd links as extra
detectors next to the red checks and matches red-ancilla and code-qubit
errors against them.

Matching is exact: flipped detectors are split into clusters that provably
never match across (pairing two detectors whose connecting path is no
shorter than their two boundary paths can always be replaced by boundary
pairings at equal weight), then each cluster is solved by exhaustive
bitmask dynamic programming, falling back to a blossom implementation for
the rare big cluster. Edge weights are path lengths in single-error
mechanisms; tie-breaking is lexicographic throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import networkx as nx
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .noise import DetectorSet
from .regions import Region

COLORS = ("r", "g", "b")
BOUNDARY = -1
_DP_CAP = 12
_INF = 1 << 30


class DecodingError(RuntimeError):
    """Internal decoder contract violation."""


# --------------------------------------------------------- matching core ----

@dataclass(frozen=True)
class MatchingProblem:
    """Complete matching instance over flipped detectors.

    weights[i, j] is the shortest error-chain weight between detectors i and
    j; boundary[i] the weight to the nearest absorbing boundary. Each
    detector owns one boundary vertex; boundary-boundary edges are free.
    """
    weights: tuple
    boundary: tuple

    @classmethod
    def from_arrays(cls, weights, boundary):
        w = np.asarray(weights)
        b = np.asarray(boundary)
        if w.shape != (len(b), len(b)) or (w != w.T).any():
            raise ValueError("weights must be a symmetric matrix over the detectors")
        return cls(tuple(map(tuple, w.tolist())), tuple(b.tolist()))

    @property
    def size(self):
        return len(self.boundary)


def mwpm(problem: MatchingProblem) -> list[tuple]:
    """Exact minimum-weight perfect matching.

    Returns a list of ('pair', i, j) and ('boundary', i) entries covering
    every detector exactly once with minimal total weight (boundary-boundary
    pairings carry no weight and are left implicit).
    """
    k = problem.size
    if k == 0:
        return []
    w = np.asarray(problem.weights, dtype=np.int64)
    b = np.asarray(problem.boundary, dtype=np.int64)
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(k):
        for j in range(i + 1, k):
            if w[i, j] < b[i] + b[j]:
                parent[find(i)] = find(j)
    clusters: dict[int, list[int]] = {}
    for i in range(k):
        clusters.setdefault(find(i), []).append(i)

    matches = []
    for root in sorted(clusters):
        idx = sorted(clusters[root])
        matches.extend(_match_cluster(w, b, idx))
    return matches


def _match_cluster(w, b, idx):
    if len(idx) == 1:
        return [("boundary", idx[0])]
    if len(idx) == 2:
        i, j = idx
        if w[i, j] <= b[i] + b[j]:
            return [("pair", i, j)]
        return [("boundary", i), ("boundary", j)]
    if len(idx) <= _DP_CAP:
        return _match_dp(w, b, idx)
    return _match_blossom(w, b, idx)


def _match_dp(w, b, idx):
    """Exhaustive minimum over pairings-with-boundary by subset DP."""
    k = len(idx)
    size = 1 << k
    cost = np.full(size, _INF, dtype=np.int64)
    cost[0] = 0
    choice = [None] * size
    for s in range(1, size):
        i = (s & -s).bit_length() - 1
        rest = s & ~(1 << i)
        best = cost[rest] + b[idx[i]]
        pick = ("boundary", idx[i], rest)
        jbits = rest
        while jbits:
            j = (jbits & -jbits).bit_length() - 1
            jbits &= jbits - 1
            c = cost[rest & ~(1 << j)] + w[idx[i], idx[j]]
            if c < best:
                best = c
                pick = ("pair", idx[i], idx[j], rest & ~(1 << j))
            # lexicographic tie-break: prefer earlier (smaller j) pairing
        cost[s] = best
        choice[s] = pick
    out = []
    s = size - 1
    while s:
        pick = choice[s]
        if pick[0] == "boundary":
            out.append(("boundary", pick[1]))
            s = pick[2]
        else:
            out.append(("pair", pick[1], pick[2]))
            s = pick[3]
    return list(reversed(out))


def _match_blossom(w, b, idx):
    """Exact blossom matching with per-detector boundary twins."""
    g = nx.Graph()
    for a, i in enumerate(idx):
        g.add_edge(("d", i), ("t", i), weight=int(b[i]))
    for a, i in enumerate(idx):
        for j in idx[a + 1:]:
            g.add_edge(("d", i), ("d", j), weight=int(w[i, j]))
    for a, i in enumerate(idx):
        for j in idx[a + 1:]:
            g.add_edge(("t", i), ("t", j), weight=0)
    matching = nx.min_weight_matching(g)
    out = []
    for u, v in sorted(matching):
        if u[0] == "d" and v[0] == "d":
            out.append(("pair", min(u[1], v[1]), max(u[1], v[1])))
        elif u[0] != v[0] and u[1] == v[1]:
            out.append(("boundary", u[1]))
        elif u[0] != v[0]:
            raise DecodingError("matching paired a detector with a foreign twin")
    return sorted(out, key=lambda m: (m[0], m[1:]))


def brute_force_mwpm_weight(problem: MatchingProblem) -> int:
    """Reference oracle: enumerate all pairings-with-boundary."""
    w = np.asarray(problem.weights, dtype=np.int64)
    b = np.asarray(problem.boundary, dtype=np.int64)

    def rec(rest):
        if not rest:
            return 0
        i, *others = rest
        best = b[i] + rec(tuple(others))
        for n, j in enumerate(others):
            c = w[i, j] + rec(tuple(others[:n] + others[n + 1:]))
            best = min(best, c)
        return best

    return int(rec(tuple(range(problem.size))))


def matching_weight(problem: MatchingProblem, matches) -> int:
    w = np.asarray(problem.weights, dtype=np.int64)
    b = np.asarray(problem.boundary, dtype=np.int64)
    total = 0
    for m in matches:
        if m[0] == "pair":
            total += w[m[1], m[2]]
        else:
            total += b[m[1]]
    return int(total)


# ------------------------------------------------------- detector graphs ----

@dataclass
class StageGraph:
    """Detector graph of one matching stage.

    Nodes are detectors; each single-error mechanism is an edge between the
    (at most two) detectors it flips, or between one detector and the
    boundary. Mechanisms carry payloads: ('q', qubit) for a decoded error,
    ('tok', link_key) for a stage-one link parity.
    """
    keys: list
    index: dict = field(default_factory=dict)
    adj: list = field(default_factory=list)          # node -> [(nbr, payload)]
    bpay: list = field(default_factory=list)         # node -> boundary payload
    dist: np.ndarray | None = None                   # detector-detector
    bdist: np.ndarray | None = None                  # detector-boundary
    det_idx: np.ndarray | None = None                # map into DetectorSet

    def finalize(self):
        n = len(self.keys)
        rows, cols = [], []
        for u, nbrs in enumerate(self.adj):
            for v, _pay in nbrs:
                if v != BOUNDARY:
                    rows.append(u)
                    cols.append(v)
        m = csr_matrix((np.ones(len(rows), dtype=np.uint8), (rows, cols)),
                       shape=(n, n))
        dist = shortest_path(m, method="D", unweighted=True, directed=False)
        dist[np.isinf(dist)] = _INF
        self.dist = dist.astype(np.int64)
        bd = np.full(n, _INF, dtype=np.int64)
        seeds = [u for u in range(n) if self.bpay[u] is not None]
        for u in seeds:
            bd[u] = 1
        from collections import deque
        dq = deque(seeds)
        while dq:
            u = dq.popleft()
            for v, _pay in self.adj[u]:
                if v != BOUNDARY and bd[v] > bd[u] + 1:
                    bd[v] = bd[u] + 1
                    dq.append(v)
        self.bdist = bd

    def add_node(self, key):
        self.index[key] = len(self.keys)
        self.keys.append(key)
        self.adj.append([])
        self.bpay.append(None)

    def add_mech(self, u, v, payload):
        """u, v: node keys or None for the boundary."""
        iu = BOUNDARY if u is None else self.index[u]
        iv = BOUNDARY if v is None else self.index[v]
        if iu == BOUNDARY and iv == BOUNDARY:
            return
        if iu == BOUNDARY or iv == BOUNDARY:
            node = iv if iu == BOUNDARY else iu
            if self.bpay[node] is None or payload < self.bpay[node]:
                self.bpay[node] = payload
            return
        self.adj[iu].append((iv, payload))
        self.adj[iv].append((iu, payload))

    def sort_adj(self):
        for nbrs in self.adj:
            nbrs.sort(key=lambda np_: (np_[0], np_[1]))

    # ---------------- path recovery ----------------

    def pair_payloads(self, u, v):
        """Payload multiset (as XOR set) along one shortest u-v path."""
        out: set = set()
        cur = u
        while cur != v:
            step = None
            for w2, pay in self.adj[cur]:
                if w2 != BOUNDARY and self.dist[w2, v] == self.dist[cur, v] - 1:
                    step = (w2, pay)
                    break
            if step is None:
                raise DecodingError("broken shortest-path descent")
            out ^= {step[1]}
            cur = step[0]
        return out

    def boundary_payloads(self, u):
        out: set = set()
        cur = u
        while self.bdist[cur] > 1:
            step = None
            for w2, pay in self.adj[cur]:
                if w2 != BOUNDARY and self.bdist[w2] == self.bdist[cur] - 1:
                    step = (w2, pay)
                    break
            if step is None:
                raise DecodingError("broken boundary descent")
            out ^= {step[1]}
            cur = step[0]
        if self.bpay[cur] is None:
            raise DecodingError("boundary descent ended away from the boundary")
        out ^= {self.bpay[cur]}
        return out


def shortest_chain_weights(stage: StageGraph, flipped):
    """Pairwise and boundary weights for the flipped detectors."""
    flipped = sorted(flipped)
    idx = np.asarray(flipped, dtype=np.int64)
    w = stage.dist[np.ix_(idx, idx)].copy()
    np.fill_diagonal(w, 0)
    bvec = stage.bdist[idx].copy()
    if (bvec >= _INF).any():
        raise DecodingError("detector cannot reach any boundary")
    return w, bvec


def match_stage(stage: StageGraph, flipped):
    """MWPM over the flipped detectors of one stage; returns the XOR set of
    payloads along the matched shortest paths."""
    if not flipped:
        return set()
    flipped = sorted(flipped)
    w, bvec = shortest_chain_weights(stage, flipped)
    problem = MatchingProblem.from_arrays(w, bvec)
    out: set = set()
    for m in mwpm(problem):
        if m[0] == "pair":
            out ^= stage.pair_payloads(flipped[m[1]], flipped[m[2]])
        else:
            out ^= stage.boundary_payloads(flipped[m[1]])
    return out


# ---------------------------------------------------------- RTCS decoder ----

def build_rtcs_stage(region: Region, detectors: DetectorSet) -> StageGraph:
    sg = StageGraph([])
    for key in detectors.keys:
        sg.add_node(key)
    index = region.graph.meta["index"]
    lx, ly, T = region.meta["dims"]
    elig = set(int(q) for q in region.eligible)
    for pos, qid in sorted(index.items()):
        if qid not in elig:
            continue
        x, y, z = pos
        ax = next(a for a in range(3) if pos[a] % 2 == 0)
        cells = []
        for dd in (-1, 1):
            c = [x, y, z]
            c[ax] += dd
            cx, cy, cz = ((c[0] - 1) // 2, (c[1] - 1) // 2, (c[2] - 1) // 2)
            if ("cell", cx, cy, cz) in sg.index:
                cells.append(("cell", cx, cy, cz))
            else:
                cells.append(None)
        sg.add_mech(cells[0], cells[1], ("q", qid))
    sg.sort_adj()
    sg.finalize()
    sg.det_idx = np.arange(len(detectors.keys))
    return sg


def decode_rtcs(region: Region, det_flips: np.ndarray, stage: StageGraph) -> frozenset:
    """Correction (eligible qubit ids) whose syndrome matches det_flips."""
    flipped = list(np.nonzero(det_flips)[0])
    payloads = match_stage(stage, flipped)
    return frozenset(q for kind, q in payloads if kind == "q")


# ---------------------------------------------------------- CCCS decoder ----

def build_cccs_stages(region: Region, detectors: DetectorSet):
    """Two stage graphs per color, sharing the region's detector set."""
    patch = region.meta["patch"]
    lat = region.lattice
    graph = region.graph
    odd_layers = range(1, graph.num_layers - 1, 2)
    stages = {}
    color_of = {f.id: f.color for f in lat.faces}

    for c in COLORS:
        s1 = StageGraph([])
        s2 = StageGraph([])
        det1, det2 = [], []
        for j, key in enumerate(detectors.keys):
            _, fid, t = key
            if color_of[fid] == c:
                s2.add_node(key)
                det2.append(j)
            else:
                s1.add_node(key)
                det1.append(j)
        c_edges = [e for e in lat.edges if e.color == c
                   and (e.vertices[0] in patch.verts or e.vertices[1] in patch.verts)]
        for e in c_edges:
            for t in odd_layers:
                s2.add_node(("lk", e.id, t))

        # stage 1: other-colored ancilla errors and odd links
        for fid in sorted(region.present_faces):
            if color_of[fid] == c:
                continue
            for t in range(2, graph.num_layers - 2, 2):
                s1.add_mech(("pc", fid, t - 1), ("pc", fid, t + 1),
                            ("q", graph.aq_index[(fid, t)]))
        for e in c_edges:
            nodes = []
            for fid in e.adjacent_faces:
                st = patch.status(fid)
                if st == "present":
                    nodes.append(fid)
                elif st == "defect":
                    nodes.append(None)
                else:
                    raise DecodingError("mechanism touches an absent face")
            for t in odd_layers:
                u = ("pc", nodes[0], t) if nodes[0] is not None else None
                v = ("pc", nodes[1], t) if nodes[1] is not None else None
                s1.add_mech(u, v, ("tok", (e.id, t)))

        # stage 2: same-colored ancilla errors and code-qubit errors
        for fid in sorted(region.present_faces):
            if color_of[fid] != c:
                continue
            for t in range(2, graph.num_layers - 2, 2):
                s2.add_mech(("pc", fid, t - 1), ("pc", fid, t + 1),
                            ("q", graph.aq_index[(fid, t)]))
        for v in sorted(patch.verts):
            f_own = patch.face_of[(v, c)]
            e_own = patch.edge_of[(v, c)]
            own_present = patch.status(f_own) == "present"
            for t in odd_layers:
                u = ("pc", f_own, t) if own_present else None
                s2.add_mech(u, ("lk", e_own, t),
                            ("q", graph.cq_index[(v, t)]))
        for sg, det in ((s1, det1), (s2, det2)):
            sg.sort_adj()
            sg.finalize()
            sg.det_idx = np.asarray(det, dtype=np.int64)
        stages[c] = (s1, s2)
    return stages


def decode_cccs(region: Region, det_flips: np.ndarray, stages) -> tuple[frozenset, str]:
    """Six matchings (two stages, three colors); smallest decoded set wins."""
    best = None
    for c in COLORS:
        s1, s2 = stages[c]
        flipped1 = list(np.nonzero(det_flips[s1.det_idx])[0])
        pay1 = match_stage(s1, flipped1)
        qubits = {q for kind, q in pay1 if kind == "q"}
        tokens = {key for kind, key in pay1 if kind == "tok"}

        flips2 = det_flips[s2.det_idx].copy() if len(s2.det_idx) else \
            np.zeros(0, dtype=bool)
        flip_idx = set(np.nonzero(flips2)[0])
        for tok in tokens:
            i = s2.index.get(("lk",) + tok)
            if i is None:
                raise DecodingError("stage-one token without a stage-two node")
            flip_idx ^= {i}
        pay2 = match_stage(s2, sorted(flip_idx))
        if any(kind != "q" for kind, _ in pay2):
            raise DecodingError("stage two must decode qubits only")
        qubits ^= {q for _kind, q in pay2}
        if best is None or len(qubits) < len(best[0]):
            best = (frozenset(qubits), c)
    return best


# -------------------------------------------------------- classification ----

def classify_residual(region: Region, residual, detectors: DetectorSet) -> str:
    """'logical' or 'trivial' for a syndrome-free residual error set."""
    elig_index = region.eligible_index()
    mask = np.zeros(len(region.eligible), dtype=bool)
    for q in residual:
        mask[elig_index[int(q)]] = True
    if detectors.extract(mask).any():
        raise DecodingError("residual is not syndrome-free")
    pars = [len(frozenset(residual) & w) % 2 for w in region.witnesses]
    if pars[0] != pars[1]:
        raise DecodingError("witness disagreement: unsound classification")
    return "logical" if pars[0] else "trivial"
