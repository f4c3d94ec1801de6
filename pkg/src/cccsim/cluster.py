"""3D cluster-state graphs: CCCS (stacked color-code layers) and RTCS.

Qubit primality follows the layer rule: a layer is primal iff its time index
is even; ancilla qubits (AQs) take their layer's primality while code qubits
(CQs) and links take the opposite. For RTCS the face-qubits are primal and
edge-qubits dual (a fixed convention; the cubic lattice itself does not
label them).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice2d import Lattice2D

ROLE_CQ = "CQ"
ROLE_AQ = "AQ"
ROLE_RTCS_FACE = "rtcs-face"
ROLE_RTCS_EDGE = "rtcs-edge"


@dataclass(frozen=True)
class Qubit:
    id: int
    role: str
    color: str | None      # AQs only (None for CQs and RTCS qubits)
    t: int                 # layer index (RTCS: doubled z coordinate)
    primality: str         # 'primal' | 'dual'
    pos: tuple             # lattice position key (2D for CCCS, 3D for RTCS)
    region: str = "vacuum"  # vacuum | defect
    boundary: str | None = None


@dataclass(frozen=True)
class Link:
    """Same-layer pair of adjacent CQs; inherits the 2D edge color. Not a CZ edge."""
    qubits: tuple[int, int]
    color: str
    edge2d: int
    t: int


@dataclass
class ClusterGraph:
    kind: str                       # 'cccs' | 'rtcs'
    lattice: Lattice2D | None
    num_layers: int
    qubits: list[Qubit]
    edges: list[tuple[int, int]]    # CZ gates, sorted pairs
    links: list[Link]
    adj: list[list[int]] = field(default_factory=list)
    # CCCS lookups: (vertex2d, t) -> qubit id, (face2d, t) -> qubit id
    cq_index: dict = field(default_factory=dict)
    aq_index: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.adj:
            self.adj = [[] for _ in self.qubits]
            for a, b in self.edges:
                self.adj[a].append(b)
                self.adj[b].append(a)
            for nbrs in self.adj:
                nbrs.sort()

    @property
    def n_qubits(self) -> int:
        return len(self.qubits)

    def neighbors(self, q: int) -> list[int]:
        return self.adj[q]

    def is_primal(self, q: int) -> bool:
        return self.qubits[q].primality == "primal"

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "qubits": [
                {
                    "id": q.id, "role": q.role, "color": q.color, "t": q.t,
                    "primality": q.primality, "pos": list(q.pos),
                    "region": q.region, "boundary": q.boundary,
                }
                for q in self.qubits
            ],
            "edges": [list(e) for e in self.edges],
            "links": [[l.qubits[0], l.qubits[1], l.color] for l in self.links],
        }


def layer_primality(t: int) -> str:
    return "primal" if t % 2 == 0 else "dual"


def build_cccs(lattice: Lattice2D, num_layers: int) -> ClusterGraph:
    """Stack `num_layers` copies of a color-code lattice into a CCCS graph.

    Per layer there is one CQ per lattice vertex and one AQ per face; edges
    join each AQ to the CQs of its face and CQs to their copies in adjacent
    layers. Qubit ids are lexicographic in (t, 2D sort key, role).
    """
    if num_layers < 1:
        raise ValueError("need at least one layer")
    records = []
    for t in range(num_layers):
        lp = layer_primality(t)
        cq_p = "dual" if lp == "primal" else "primal"
        for v in lattice.vertices:
            records.append(((t, v.key, 0), ROLE_CQ, None, t, cq_p, ("v", v.id)))
        for f in lattice.faces:
            records.append(((t, f.key, 1), ROLE_AQ, f.color, t, lp, ("f", f.id)))
    records.sort(key=lambda r: r[0])

    qubits = []
    cq_index, aq_index = {}, {}
    for qid, (_, role, color, t, prim, pos) in enumerate(records):
        qubits.append(Qubit(qid, role, color, t, prim, pos))
        if role == ROLE_CQ:
            cq_index[(pos[1], t)] = qid
        else:
            aq_index[(pos[1], t)] = qid

    edges = []
    for t in range(num_layers):
        for f in lattice.faces:
            a = aq_index[(f.id, t)]
            for v in f.vertices:
                edges.append(tuple(sorted((a, cq_index[(v, t)]))))
        if t + 1 < num_layers:
            for v in lattice.vertices:
                edges.append(tuple(sorted((cq_index[(v.id, t)], cq_index[(v.id, t + 1)]))))
    edges.sort()

    links = []
    for t in range(num_layers):
        for e in lattice.edges:
            q1, q2 = (cq_index[(v, t)] for v in e.vertices)
            links.append(Link(tuple(sorted((q1, q2))), e.color, e.id, t))

    return ClusterGraph("cccs", lattice, num_layers, qubits, edges, links,
                        cq_index=cq_index, aq_index=aq_index)


# ------------------------------------------------------------------ RTCS ----

def build_rtcs(size: tuple[int, int, int], boundary: str = "torus") -> ClusterGraph:
    """Raussendorf 3D cluster state on a cubic torus.

    Qubits sit on every face and edge of the cubic lattice; each face-qubit
    is CZ-coupled to its four bounding edge-qubits. Positions are doubled
    coordinates: cells have even corners, face centers have exactly two odd
    coordinates, edge midpoints exactly one.
    """
    if boundary != "torus":
        raise ValueError("only torus boundaries are supported here")
    lx, ly, lz = size
    if min(lx, ly, lz) < 2:
        raise ValueError("sizes must be at least 2")

    positions = []
    for z in range(2 * lz):
        for y in range(2 * ly):
            for x in range(2 * lx):
                n_odd = (x % 2) + (y % 2) + (z % 2)
                if n_odd == 2:
                    positions.append((ROLE_RTCS_FACE, (x, y, z)))
                elif n_odd == 1:
                    positions.append((ROLE_RTCS_EDGE, (x, y, z)))
    positions.sort(key=lambda r: (r[1][2], r[1][1], r[1][0]))

    qubits = []
    index = {}
    for qid, (role, pos) in enumerate(positions):
        prim = "primal" if role == ROLE_RTCS_FACE else "dual"
        qubits.append(Qubit(qid, role, None, pos[2], prim, pos))
        index[pos] = qid

    dims = (2 * lx, 2 * ly, 2 * lz)
    edges = set()
    for role, pos in positions:
        if role != ROLE_RTCS_FACE:
            continue
        x, y, z = pos
        axes = [i for i in range(3) if pos[i] % 2 == 1]
        for ax in axes:
            for d in (-1, 1):
                nb = list(pos)
                nb[ax] = (nb[ax] + d) % dims[ax]
                edges.add(tuple(sorted((index[pos], index[tuple(nb)]))))
    graph = ClusterGraph("rtcs", None, 2 * lz, qubits, sorted(edges), [])
    graph.meta["size"] = size
    graph.meta["index"] = index
    return graph


def degree_histogram(graph: ClusterGraph) -> dict[int, int]:
    hist: dict[int, int] = {}
    for nbrs in graph.adj:
        hist[len(nbrs)] = hist.get(len(nbrs), 0) + 1
    return hist


def check_handshake(graph: ClusterGraph) -> bool:
    return sum(len(n) for n in graph.adj) == 2 * len(graph.edges)


def check_primality_partition(graph: ClusterGraph) -> bool:
    """Every CZ edge joins one primal and one dual qubit."""
    return all(graph.qubits[a].primality != graph.qubits[b].primality
               for a, b in graph.edges)
