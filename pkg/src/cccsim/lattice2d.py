"""2D color-code lattices (4-8-8 and 6-6-6) on a torus.

A color-code lattice is 3-valent with 3-colorable faces. Each edge ("link")
carries the color of the two same-colored faces it connects, which is the
third color besides the two faces sharing the edge.

Integer sort keys keep vertex/edge/face ids deterministic; float positions
use the per-family unit lengths of the resource analysis (4-8-8: distance
between adjacent red and green ancillas; 6-6-6: half the distance between
adjacent same-colored ancillas).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

COLORS = ("r", "g", "b")


class ColoringError(ValueError):
    """Lattice dimensions incompatible with a proper 3-face-coloring."""


@dataclass(frozen=True)
class Vertex:
    id: int
    key: tuple
    pos: tuple[float, float]


@dataclass(frozen=True)
class Edge:
    id: int
    vertices: tuple[int, int]
    color: str
    #: the two same-colored faces this link connects (one per endpoint)
    connects: tuple[int, int]
    #: the two faces sharing the edge (colors differ from the link color)
    adjacent_faces: tuple[int, int]


@dataclass(frozen=True)
class Face:
    id: int
    key: tuple
    color: str
    vertices: tuple[int, ...]  # ordered cycle
    pos: tuple[float, float]


@dataclass
class Lattice2D:
    family: str
    size: tuple[int, int]
    boundary_kind: str
    vertices: list[Vertex]
    edges: list[Edge]
    faces: list[Face]
    # per-vertex lookups, one entry per color
    face_at: dict[tuple[int, str], int] = field(default_factory=dict)
    edge_at: dict[tuple[int, str], int] = field(default_factory=dict)

    def vertex_degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e.vertices)

    def validate(self) -> None:
        """Check the color-code lattice invariants; raise AssertionError on failure."""
        degree = {v.id: 0 for v in self.vertices}
        for e in self.edges:
            for v in e.vertices:
                degree[v] += 1
        assert all(d == 3 for d in degree.values()), "lattice must be 3-valent"
        color_of = {f.id: f.color for f in self.faces}
        for e in self.edges:
            f1, f2 = e.adjacent_faces
            assert color_of[f1] != color_of[f2], "adjacent faces share a color"
            assert color_of[e.connects[0]] == color_of[e.connects[1]] == e.color, \
                "link color must match the faces it connects"
            assert {color_of[f1], color_of[f2], e.color} == set(COLORS)
        if self.boundary_kind == "torus":
            chi = len(self.vertices) - len(self.edges) + len(self.faces)
            assert chi == 0, f"torus Euler characteristic {chi} != 0"
        cols_at: dict[int, set] = {v.id: set() for v in self.vertices}
        for (vid, c) in self.face_at:
            cols_at[vid].add(c)
        assert all(cols == set(COLORS) for cols in cols_at.values()), \
            "each vertex must touch one face of each color"


def build_color_code_lattice(family: str, size: tuple[int, int],
                             boundary: str = "torus") -> Lattice2D:
    """Construct a toroidal 4-8-8 or 6-6-6 color-code lattice.

    Parameters
    ----------
    family : {'4-8-8', '6-6-6'}
    size : (Lx, Ly)
        Number of unit cells per direction. 4-8-8 cells hold one octagon and
        one square (Lx, Ly even); 6-6-6 cells hold one hexagon (Lx, Ly
        multiples of 3).
    boundary : {'torus'}
        Bounded regions are produced by :func:`cccsim.regions.build_simplified_region`.
    """
    if boundary != "torus":
        raise ValueError("only torus boundaries are supported here")
    lx, ly = size
    if lx < 2 or ly < 2:
        raise ValueError("size must be at least 2x2")
    if family == "4-8-8":
        if lx % 2 or ly % 2:
            raise ColoringError("4-8-8 torus needs even Lx, Ly for the octagon 2-coloring")
        lattice = _build_488(lx, ly)
    elif family == "6-6-6":
        if lx % 3 or ly % 3:
            raise ColoringError("6-6-6 torus needs Lx, Ly divisible by 3 for the 3-coloring")
        lattice = _build_666(lx, ly)
    else:
        raise ValueError(f"unknown family {family!r}")
    lattice.validate()
    return lattice


def _finish(family, size, vertex_keys, vertex_pos, face_entries, edge_entries) -> Lattice2D:
    """Assign ids by sorted key and assemble the lattice object.

    face_entries: key -> (color, [vertex keys in cyclic order], pos)
    edge_entries: list of (vkey1, vkey2, color, (face key it connects) x2,
                  (adjacent face key) x2)
    """
    vkeys = sorted(vertex_keys)
    vid = {k: i for i, k in enumerate(vkeys)}
    vertices = [Vertex(vid[k], k, vertex_pos[k]) for k in vkeys]

    fkeys = sorted(face_entries)
    fid = {k: i for i, k in enumerate(fkeys)}
    faces = [Face(fid[k], k, face_entries[k][0],
                  tuple(vid[v] for v in face_entries[k][1]),
                  face_entries[k][2]) for k in fkeys]

    edges = []
    seen = set()
    for (v1, v2, color, conn, adj) in sorted(edge_entries):
        pair = tuple(sorted((vid[v1], vid[v2])))
        if pair in seen:
            continue
        seen.add(pair)
        edges.append(Edge(len(edges), pair, color,
                          tuple(sorted(fid[k] for k in conn)),
                          tuple(sorted(fid[k] for k in adj))))

    lat = Lattice2D(family, size, "torus", vertices, edges, faces)
    for f in faces:
        for v in f.vertices:
            lat.face_at[(v, f.color)] = f.id
    for e in edges:
        for v in e.vertices:
            lat.edge_at[(v, e.color)] = e.id
    return lat


# ---------------------------------------------------------------- 4-8-8 ----

_SQ_CORNERS = {"w": (-1, 0), "e": (1, 0), "s": (0, -1), "n": (0, 1)}
_S488 = 2.0 - math.sqrt(2.0)  # half-diagonal of the squares, octagons regular


def _build_488(lx: int, ly: int) -> Lattice2D:
    scale = 1.0 / math.sqrt(2.0)  # unit: red AQ to adjacent octagon AQ

    def vkey(i, j, corner):
        i %= lx
        j %= ly
        dx, dy = _SQ_CORNERS[corner]
        # exact quarter-lattice sort coordinates
        return (4 * j + 2 + dy, 4 * i + 2 + dx, corner)

    def vpos(i, j, corner):
        i %= lx
        j %= ly
        dx, dy = _SQ_CORNERS[corner]
        return ((2 * i + 1 + dx * _S488) * scale, (2 * j + 1 + dy * _S488) * scale)

    vertex_keys = set()
    vertex_pos = {}
    for i in range(lx):
        for j in range(ly):
            for c in _SQ_CORNERS:
                k = vkey(i, j, c)
                vertex_keys.add(k)
                vertex_pos[k] = vpos(i, j, c)

    def okey(i, j):
        return (4 * (j % ly), 4 * (i % lx), "o")

    def skey(i, j):
        return (4 * (j % ly) + 2, 4 * (i % lx) + 2, "s")

    def ocolor(i, j):
        return "g" if (i + j) % 2 == 0 else "b"

    face_entries = {}
    for i in range(lx):
        for j in range(ly):
            face_entries[skey(i, j)] = (
                "r",
                [vkey(i, j, "w"), vkey(i, j, "n"), vkey(i, j, "e"), vkey(i, j, "s")],
                ((2 * i + 1) * scale, (2 * j + 1) * scale),
            )
            octagon = [
                vkey(i, j, "w"), vkey(i, j, "s"),
                vkey(i, j - 1, "n"), vkey(i, j - 1, "w"),
                vkey(i - 1, j - 1, "e"), vkey(i - 1, j - 1, "n"),
                vkey(i - 1, j, "s"), vkey(i - 1, j, "e"),
            ]
            face_entries[okey(i, j)] = (ocolor(i, j), octagon,
                                        (2 * i * scale, 2 * j * scale))

    edge_entries = []
    for i in range(lx):
        for j in range(ly):
            # red links between octagons: vertical and horizontal
            edge_entries.append((vkey(i, j, "s"), vkey(i, j - 1, "n"), "r",
                                 (skey(i, j), skey(i, j - 1)),
                                 (okey(i, j), okey(i + 1, j))))
            edge_entries.append((vkey(i, j, "w"), vkey(i - 1, j, "e"), "r",
                                 (skey(i, j), skey(i - 1, j)),
                                 (okey(i, j), okey(i, j + 1))))
            # square edges; each belongs to the square and one octagon and
            # connects the two octagons of the remaining color diagonally
            oc = {"sw": okey(i, j), "wn": okey(i, j + 1),
                  "ne": okey(i + 1, j + 1), "es": okey(i + 1, j)}
            diag = {"sw": (okey(i + 1, j), okey(i, j + 1)),
                    "wn": (okey(i, j), okey(i + 1, j + 1)),
                    "ne": (okey(i, j + 1), okey(i + 1, j)),
                    "es": (okey(i + 1, j + 1), okey(i, j))}
            for pair in ("sw", "wn", "ne", "es"):
                c1, c2 = pair
                color = "g" if ocolor(*_oc_idx(oc[pair])) == "b" else "b"
                edge_entries.append((vkey(i, j, c1), vkey(i, j, c2), color,
                                     diag[pair], (skey(i, j), oc[pair])))
    return _finish("4-8-8", (lx, ly), vertex_keys, vertex_pos, face_entries, edge_entries)


def _oc_idx(key):
    y, x, _ = key
    return x // 4, y // 4


# ---------------------------------------------------------------- 6-6-6 ----

def _build_666(lx: int, ly: int) -> Lattice2D:
    # axial coordinates; face (a, b) has color (a - b) mod 3
    unit = math.sqrt(3.0) / 2.0  # paper unit: half the same-color AQ spacing

    def fkey(a, b):
        a %= lx
        b %= ly
        return (3 * b, 3 * (2 * a + b), "f")

    def fcolor(a, b):
        return COLORS[(a - b) % 3]

    def fxy(a, b):
        a %= lx
        b %= ly
        return ((2 * a + b) / math.sqrt(3.0), float(b))

    def vkey(kind, a, b):
        a %= lx
        b %= ly
        off = 1 if kind == "u" else 2
        return (3 * b + off, 3 * (2 * a + b) + 3 * off, kind)

    def vxy(kind, a, b):
        a %= lx
        b %= ly
        off = 1 / 3.0 if kind == "u" else 2 / 3.0
        return ((2 * a + b + 3 * off) / math.sqrt(3.0), b + off)

    vertex_keys = set()
    vertex_pos = {}
    for a in range(lx):
        for b in range(ly):
            for kind in ("u", "d"):
                k = vkey(kind, a, b)
                vertex_keys.add(k)
                vertex_pos[k] = vxy(kind, a, b)

    face_entries = {}
    for a in range(lx):
        for b in range(ly):
            cycle = [vkey("u", a, b), vkey("d", a - 1, b), vkey("u", a - 1, b),
                     vkey("d", a - 1, b - 1), vkey("u", a, b - 1), vkey("d", a, b - 1)]
            face_entries[fkey(a, b)] = (fcolor(a, b), cycle, fxy(a, b))

    edge_entries = []
    for a in range(lx):
        for b in range(ly):
            c = (a - b) % 3
            # u(a,b)-d(a,b): color of face (a,b), connects (a,b) and (a+1,b+1)
            edge_entries.append((vkey("u", a, b), vkey("d", a, b), COLORS[c],
                                 (fkey(a, b), fkey(a + 1, b + 1)),
                                 (fkey(a + 1, b), fkey(a, b + 1))))
            # u(a,b)-d(a-1,b): color c+1, connects (a+1,b) and (a-1,b+1)
            edge_entries.append((vkey("u", a, b), vkey("d", a - 1, b), COLORS[(c + 1) % 3],
                                 (fkey(a + 1, b), fkey(a - 1, b + 1)),
                                 (fkey(a, b), fkey(a, b + 1))))
            # u(a,b)-d(a,b-1): color c+2, connects (a,b+1)... see derivation
            edge_entries.append((vkey("u", a, b), vkey("d", a, b - 1), COLORS[(c + 2) % 3],
                                 (fkey(a, b + 1), fkey(a + 1, b - 1)),
                                 (fkey(a, b), fkey(a + 1, b))))
    return _finish("6-6-6", (lx, ly), vertex_keys, vertex_pos, face_entries, edge_entries)
