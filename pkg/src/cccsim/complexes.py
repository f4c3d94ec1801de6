"""Shrunk lattices of a CCCS as chain complexes over GF(2).

For a primality P and color c, the complex has one vertex per c-colored AQ
of primality P. Timelike edges bridge consecutive same-primality layers and
spacelike edges follow c-colored links of the 2D lattice. Element-to-qubit
assignments:

    vertex          -> c-colored AQ of primality P
    timelike edge   -> c-colored AQ of the opposite primality (in between)
    spacelike edge  -> the two CQs of the link, same layer as the vertices
    timelike face   -> the two CQs of the link, in-between layer
    spacelike face  -> AQ of another color, same layer
    cell            -> AQ of another color, in-between layer

Element keys are tuples ('v'|'et'|'es'|'ft'|'fs'|'c', lattice id, base layer);
chains are frozensets of keys with GF(2) addition = symmetric difference.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cluster import ClusterGraph, layer_primality

GRADE_OF = {"v": 0, "et": 1, "es": 1, "ft": 2, "fs": 2, "c": 3}


@dataclass
class ChainComplex:
    graph: ClusterGraph
    primality: str
    color: str
    elements: dict[int, list[tuple]] = field(default_factory=dict)
    _boundary: dict[tuple, frozenset] = field(default_factory=dict)
    _qubits: dict[tuple, frozenset] = field(default_factory=dict)

    def grade(self, element: tuple) -> int:
        return GRADE_OF[element[0]]

    def boundary_of_element(self, element: tuple) -> frozenset:
        return self._boundary[element]

    def element_qubits(self, element: tuple) -> frozenset:
        return self._qubits[element]

    def chain(self, elements, grade: int | None = None) -> "Chain":
        elements = frozenset(elements)
        grades = {self.grade(e) for e in elements}
        if grade is None:
            if len(grades) != 1:
                raise ValueError("chain must be homogeneous in grade")
            grade = grades.pop()
        elif grades - {grade}:
            raise ValueError("elements do not match requested grade")
        return Chain(self, grade, elements)

    def is_spacelike(self, element: tuple) -> bool:
        return element[0] in ("es", "fs")

    def is_timelike(self, element: tuple) -> bool:
        return element[0] in ("et", "ft")


@dataclass(frozen=True)
class Chain:
    complex: ChainComplex
    grade: int
    elements: frozenset

    def __add__(self, other: "Chain") -> "Chain":
        if other.complex is not self.complex or other.grade != self.grade:
            raise ValueError("chains must live in the same graded space")
        return Chain(self.complex, self.grade, self.elements ^ other.elements)

    def __len__(self):
        return len(self.elements)

    def is_zero(self) -> bool:
        return not self.elements


def boundary(chain: Chain) -> Chain:
    """GF(2) boundary; grade drops by one."""
    if chain.grade < 1:
        raise ValueError("grade-0 chains have no boundary")
    acc: set = set()
    for el in chain.elements:
        acc ^= chain.complex.boundary_of_element(el)
    return Chain(chain.complex, chain.grade - 1, frozenset(acc))


def qubits_of(chain: Chain) -> frozenset:
    """Union of the Table-I qubit sets of the chain's elements."""
    qs: set = set()
    for el in chain.elements:
        qs |= chain.complex.element_qubits(el)
    return frozenset(qs)


def is_connected_1chain(chain: Chain) -> bool:
    """A 1-chain is connected iff its boundary has at most two vertices."""
    if chain.grade != 1:
        raise ValueError("connectedness is defined for 1-chains")
    return len(boundary(chain).elements) <= 2


def is_closed(chain: Chain) -> bool:
    return len(boundary(chain).elements) == 0


def build_shrunk_lattice(graph: ClusterGraph, primality: str, color: str) -> ChainComplex:
    """Materialize the shrunk lattice of a CCCS for one primality and color."""
    if graph.kind != "cccs":
        raise ValueError("shrunk lattices are defined for CCCS graphs only; "
                         "the RTCS decoder keeps its own cell bookkeeping")
    if primality not in ("primal", "dual"):
        raise ValueError("primality must be 'primal' or 'dual'")
    lat = graph.lattice
    layers = [t for t in range(graph.num_layers) if layer_primality(t) == primality]
    own_faces = [f for f in lat.faces if f.color == color]
    own_edges = [e for e in lat.edges if e.color == color]
    other_faces = [f for f in lat.faces if f.color != color]

    # c-colored perimeter edges of an other-colored face: the links around it
    edge_by_pair = {}
    for e in lat.edges:
        edge_by_pair[e.vertices] = e
    perim: dict[int, list] = {}
    for f in other_faces:
        cyc = f.vertices
        es = []
        for k in range(len(cyc)):
            pair = tuple(sorted((cyc[k], cyc[(k + 1) % len(cyc)])))
            e = edge_by_pair[pair]
            if e.color == color:
                es.append(e)
        perim[f.id] = es

    cx = ChainComplex(graph, primality, color)
    els: dict[int, list[tuple]] = {0: [], 1: [], 2: [], 3: []}
    bnd = cx._boundary
    qub = cx._qubits
    aq = graph.aq_index
    cq = graph.cq_index

    def link_qubits(e, t):
        return frozenset(cq[(v, t)] for v in e.vertices)

    for t in layers:
        for f in own_faces:
            key = ("v", f.id, t)
            els[0].append(key)
            qub[key] = frozenset({aq[(f.id, t)]})
        for e in own_edges:
            key = ("es", e.id, t)
            els[1].append(key)
            bnd[key] = frozenset({("v", e.connects[0], t), ("v", e.connects[1], t)})
            qub[key] = link_qubits(e, t)
        for f in other_faces:
            key = ("fs", f.id, t)
            els[2].append(key)
            bnd[key] = frozenset(("es", e.id, t) for e in perim[f.id])
            qub[key] = frozenset({aq[(f.id, t)]})
        if t + 2 >= graph.num_layers:
            continue
        for f in own_faces:
            key = ("et", f.id, t)
            els[1].append(key)
            bnd[key] = frozenset({("v", f.id, t), ("v", f.id, t + 2)})
            qub[key] = frozenset({aq[(f.id, t + 1)]})
        for e in own_edges:
            key = ("ft", e.id, t)
            els[2].append(key)
            bnd[key] = frozenset({("es", e.id, t), ("es", e.id, t + 2),
                                  ("et", e.connects[0], t), ("et", e.connects[1], t)})
            qub[key] = link_qubits(e, t + 1)
        for f in other_faces:
            key = ("c", f.id, t)
            els[3].append(key)
            bnd[key] = frozenset({("fs", f.id, t), ("fs", f.id, t + 2)}
                                 | {("ft", e.id, t) for e in perim[f.id]})
            qub[key] = frozenset({aq[(f.id, t + 1)]})

    for g in els.values():
        g.sort()
    cx.elements = els
    return cx


def all_shrunk_lattices(graph: ClusterGraph) -> dict[tuple[str, str], ChainComplex]:
    """All six complexes of a CCCS (2 primalities x 3 colors)."""
    return {(p, c): build_shrunk_lattice(graph, p, c)
            for p in ("primal", "dual") for c in ("r", "g", "b")}
