"""Stabilizer generators, correlation surfaces, parity checks and logical
operators of a cluster state.

Every cluster vertex v contributes the generator X(v) Z(neighbors). A-type
generators sit around ancilla qubits, C-type around code qubits; L-type is
the product of the two C-types of a link and J-type the product of the three
C-types across the differently colored links meeting at a code qubit.

Correlation surfaces X(Q(h2)) Z(Q(boundary h2)) for 2-chains h2 of a shrunk
lattice tie the chain complexes to the operator algebra; parity checks are
the cell-boundary surfaces X(boundary c) used as error-correction detectors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cluster import ClusterGraph, ROLE_AQ, ROLE_CQ
from .complexes import Chain, ChainComplex, boundary, qubits_of, build_shrunk_lattice
from .pauli import PauliOperator, StabilizerBasis

#: graphs above this size fall back to local checks instead of the dense
#: GF(2) membership oracle
MEMBERSHIP_ORACLE_CAP = 2000

BASIS_BY_REGION = {"vacuum": "X", "injection": "X", "defect": "Z", "y-plane": "Y"}


class TimeBoundaryError(ValueError):
    """The cell keyed by this ancilla is cut by the first or final layer."""


# ------------------------------------------------------------ generators ----

def sg_around(graph: ClusterGraph, vertex: int) -> PauliOperator:
    """Cluster-state generator around a vertex: X there, Z on its neighbors."""
    if not 0 <= vertex < graph.n_qubits:
        raise KeyError(f"no qubit {vertex}")
    return PauliOperator({vertex}, graph.neighbors(vertex))


def links_at(graph: ClusterGraph, cq: int) -> dict[str, "Link"]:
    """The (up to three) links with an endpoint at a code qubit, by color."""
    out = {}
    for link in graph.links:
        if cq in link.qubits:
            out[link.color] = link
    return out


def l_type_sg(graph: ClusterGraph, link) -> PauliOperator:
    """Product of the two C-type generators whose centers form the link."""
    q1, q2 = link.qubits
    return sg_around(graph, q1) * sg_around(graph, q2)


def j_type_sg(graph: ClusterGraph, cq: int) -> PauliOperator:
    """Product of the three C-types across the differently colored links at cq."""
    qubit = graph.qubits[cq]
    if qubit.role != ROLE_CQ:
        raise ValueError("J-type generators sit around code qubits")
    by_color = links_at(graph, cq)
    if len(by_color) != 3:
        raise ValueError("code qubit must carry links of all three colors")
    op = PauliOperator()
    for link in by_color.values():
        other = link.qubits[0] if link.qubits[1] == cq else link.qubits[1]
        op = op * sg_around(graph, other)
    return op


# --------------------------------------------------- correlation surfaces ----

def correlation_surface(cx: ChainComplex, h2: Chain) -> PauliOperator:
    """X on the interior qubits Q(h2), Z on the boundary qubits Q(boundary h2)."""
    if h2.grade != 2:
        raise ValueError("correlation surfaces are built from 2-chains")
    return PauliOperator(qubits_of(h2), qubits_of(boundary(h2)))


def is_stabilizer(op: PauliOperator, graph: ClusterGraph, q_in=frozenset()) -> bool:
    """Membership in the group generated by the SGs around qubits outside q_in.

    Decided by GF(2) elimination on symplectic vectors; graphs beyond
    MEMBERSHIP_ORACLE_CAP qubits only get the necessary commutation check.
    """
    q_in = frozenset(q_in)
    if graph.n_qubits > MEMBERSHIP_ORACLE_CAP:
        return all(op.commutes_with(sg_around(graph, v))
                   for v in range(graph.n_qubits) if v not in q_in)
    basis = StabilizerBasis(graph.n_qubits)
    for v in range(graph.n_qubits):
        if v not in q_in:
            basis.add(sg_around(graph, v))
    return basis.contains(op)


# ------------------------------------------------------- measured patterns ----

@dataclass
class MeasurementPattern:
    """Per-qubit measurement bases derived from region labels."""
    basis: dict[int, str]

    @classmethod
    def from_graph(cls, graph: ClusterGraph, q_out=frozenset()) -> "MeasurementPattern":
        basis = {}
        for q in graph.qubits:
            if q.id in q_out:
                continue
            basis[q.id] = BASIS_BY_REGION[q.region]
        return cls(basis)

    def measured(self):
        return self.basis.keys()


def is_compatible(op: PauliOperator, pattern: MeasurementPattern,
                  q_out=frozenset()) -> bool:
    """True iff the operator survives the single-qubit measurements.

    At every measured qubit outside q_out the local action must be the
    identity or match the measurement basis.
    """
    q_out = frozenset(q_out)
    for q in op.support:
        b = pattern.basis.get(q)
        if b is None or q in q_out:
            continue
        if op.local_action(q) != b:
            return False
    return True


@dataclass(frozen=True)
class DefectSpec:
    """A defect: a connected 1-chain of the opposite-primality same-color
    complex, whose qubits are measured in Z."""
    primality: str
    color: str
    chain: Chain

    @property
    def qubits(self) -> frozenset:
        return qubits_of(self.chain)


# ---------------------------------------------------------- parity checks ----

def parity_check(graph: ClusterGraph, key_aq: int,
                 complexes: dict | None = None) -> PauliOperator:
    """Detector keyed by an ancilla: X on the boundary of its cell.

    The ancilla's face defines one cell in each of the two same-primality
    complexes of the other colors; both constructions are asserted to yield
    the same operator ("one AQ corresponds to one PC").
    """
    qb = graph.qubits[key_aq]
    if qb.role != ROLE_AQ:
        raise ValueError("parity checks are keyed by ancilla qubits")
    t = qb.t
    if t - 1 < 0 or t + 1 >= graph.num_layers:
        raise TimeBoundaryError("cell cut by the first or final layer: no detector")
    face_id = qb.pos[1]
    pc_primality = "primal" if qb.primality == "dual" else "dual"
    ops = []
    for color in "rgb":
        if color == qb.color:
            continue
        cx = (complexes or {}).get((pc_primality, color)) \
            or build_shrunk_lattice(graph, pc_primality, color)
        cell = ("c", face_id, t - 1)
        ops.append(cell_pc(cx, cell))
    assert ops[0] == ops[1], "the two cell constructions must give one PC"
    return ops[0]


def cell_pc(cx: ChainComplex, cell: tuple) -> PauliOperator:
    """Parity check of one cell: the correlation surface of its boundary."""
    return correlation_surface(cx, cx.chain(cx.boundary_of_element(cell)))


def open_pc(cx: ChainComplex, cell: tuple, face: tuple) -> PauliOperator:
    """Open parity check: the cell PC multiplied by the surface of one face."""
    if face not in cx.boundary_of_element(cell):
        raise ValueError("face must bound the cell")
    return cell_pc(cx, cell) * correlation_surface(cx, cx.chain([face]))


def hybrid_pc(graph: ClusterGraph, face_id: int, t_odd: int,
              open_primal: bool = False, open_dual: bool = True,
              complexes: dict | None = None) -> PauliOperator:
    """Product of a primal and a dual PC of one cell color, adjacent in time.

    The primal PC is keyed by the (dual) ancilla at (face, t_odd), the dual
    PC by the (primal) ancilla at (face, t_odd + 1); each constituent may be
    opened toward the other. Type-1 has one open constituent, type-2 both.
    """
    if t_odd % 2 == 0:
        raise ValueError("the primal constituent is keyed at an odd layer")
    if not (open_primal or open_dual):
        raise ValueError("a hybrid PC opens at least one constituent")
    key_color = None
    for f in graph.lattice.faces:
        if f.id == face_id:
            key_color = f.color
    other = [c for c in "rgb" if c != key_color]

    def get_cx(prim, color):
        cx = (complexes or {}).get((prim, color))
        return cx or build_shrunk_lattice(graph, prim, color)

    cxp = get_cx("primal", other[0])
    cxd = get_cx("dual", other[0])
    cell_p = ("c", face_id, t_odd - 1)
    cell_d = ("c", face_id, t_odd)
    if open_primal:
        primal = open_pc(cxp, cell_p, ("fs", face_id, t_odd + 1))
    else:
        primal = cell_pc(cxp, cell_p)
    if open_dual:
        dual = open_pc(cxd, cell_d, ("fs", face_id, t_odd))
    else:
        dual = cell_pc(cxd, cell_d)
    return primal * dual


# -------------------------------------------------------- logical operators ----

def logical_z(z_chains: dict[str, list[frozenset]], q_i: int) -> PauliOperator:
    """Z along three colored link chains meeting at a common code qubit q_i.

    `z_chains[color]` lists the CQ pairs of the chain's links (innermost
    first, containing q_i). The product leaves q_i unsupported.
    """
    zsup: set = set()
    for color, links in z_chains.items():
        chain_qubits: set = set()
        for pair in links:
            chain_qubits |= pair
        if q_i not in chain_qubits:
            raise ValueError(f"{color} chain must end at the junction qubit")
        zsup ^= chain_qubits
    zsup ^= {q_i}
    if not zsup:
        raise ValueError("degenerate logical Z: empty support")
    return PauliOperator(z_support=frozenset(zsup))


def logical_x(loop_links_t0: list[frozenset], loop_links_t1: list[frozenset]) -> PauliOperator:
    """X along a closed same-color link chain at layer t0, Z along its copy
    shifted one layer along the time axis."""
    xsup: set = set()
    for pair in loop_links_t0:
        xsup |= pair
    zsup: set = set()
    for pair in loop_links_t1:
        zsup |= pair
    if not xsup:
        raise ValueError("degenerate logical X: empty loop")
    return PauliOperator(frozenset(xsup), frozenset(zsup))
