"""Bounded simulation regions with defect-like boundaries.

RTCS regions are (d-1) x (d-1) cells wide and T cells deep, with two
absorbing (primal) sides along x and two closed (dual) sides along y.

CCCS regions are triangular patches cut from a large torus, bounded by three
single-colored lines of "defect" faces: those faces keep their ancilla
columns as Z-measured defect qubits and carry no detectors, so error chains
of the matching color terminate there undetected. The triangle offsets are
found by search around a linear-in-d ansatz and every candidate is validated
by an exhaustive shortest-chain oracle before being accepted: the minimum
weight over boundary-connecting error sets must equal d exactly.

Residual classification uses frozen witness supports: qubit sets whose
intersection parity with any syndrome-free error set is invariant (checked
at build time by a sweep over the cluster generators around every vacuum
dual qubit) and odd exactly on the logical class.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np

from . import _f2
from .cluster import ClusterGraph, Link, Qubit, ROLE_AQ, ROLE_CQ, ROLE_RTCS_FACE, \
    ROLE_RTCS_EDGE, layer_primality
from .lattice2d import build_color_code_lattice

COLORS = ("r", "g", "b")


class RegionBuildError(RuntimeError):
    """Region geometry failed validation (wrong distance or unsound witness)."""


@dataclass
class Region:
    code: str
    d: int
    T: int
    graph: ClusterGraph
    eligible: np.ndarray                  # sorted qubit ids carrying noise
    min_weight: int
    witnesses: list[frozenset]            # frozen logical-parity supports
    min_chain: frozenset                  # one minimum-weight logical error set
    # CCCS bookkeeping (None for RTCS)
    lattice: object = None
    present_faces: frozenset = frozenset()
    defect_color: dict = field(default_factory=dict)
    vertices2d: frozenset = frozenset()
    meta: dict = field(default_factory=dict)

    @property
    def num_layers(self) -> int:
        return self.graph.num_layers

    def eligible_index(self) -> dict[int, int]:
        return {int(q): i for i, q in enumerate(self.eligible)}


# =========================================================== CCCS regions ====

@dataclass
class _Patch:
    """2D data of a triangular patch: presence and defect labels."""
    lat: object
    present: set                          # face ids with detectors
    defect: dict                          # face id -> color
    verts: set                            # vertex ids
    face_of: dict                         # (vertex, color) -> face id
    edge_of: dict                         # (vertex, color) -> edge id

    def status(self, fid: int) -> str:
        if fid in self.present:
            return "present"
        if fid in self.defect:
            return "defect"
        return "absent"


def _cut_patch(lat, interior_pred, defect_pred) -> _Patch:
    """Select interior and defect-line faces, then derive vertex presence.

    A code qubit exists iff all three faces around it are interior or defect;
    detectors of a face use only its present code qubits (the truncated form
    of parity checks merged along a defect). A vertex left out must touch at
    most one interior face, otherwise two surviving detectors would share a
    half-missing link and stop commuting with the ancilla generators.
    """
    inside = {f.id for f in lat.faces if interior_pred(f)}
    defect = {f.id: c for f in lat.faces
              for c in [defect_pred(f)] if c is not None and f.id not in inside}
    ok_faces = inside | set(defect)
    verts = set()
    for v in lat.vertices:
        fs = [lat.face_at[(v.id, c)] for c in COLORS]
        if all(f in ok_faces for f in fs):
            verts.add(v.id)
    inside = {f for f in inside if any(v in verts for v in _face(lat, f).vertices)}
    patch = _Patch(lat, inside, defect, verts, lat.face_at, lat.edge_at)
    for v in lat.vertices:
        if v.id in verts:
            fs = [patch.status(lat.face_at[(v.id, c)]) for c in COLORS]
            if fs.count("defect") == 3:
                raise RegionBuildError("vertex surrounded by defects: weight-1 hole")
        else:
            n_in = sum(lat.face_at[(v.id, c)] in inside for c in COLORS)
            if n_in > 1:
                raise RegionBuildError(
                    "missing vertex shared by two interior faces: broken detectors")
    return patch


def _face(lat, fid):
    return lat.faces[fid]


def _color_maps(patch, color):
    """Per-color shrunk graph of the patch: spacelike link moves between
    present faces, absorbing links into defect faces, and the code qubits
    that absorb a single flip because their other two faces are defects."""
    lat = patch.lat
    adj: dict[int, list] = {}
    absorb: dict[int, list] = {}
    for e in lat.edges:
        if e.color != color:
            continue
        v1, v2 = e.vertices
        if v1 not in patch.verts or v2 not in patch.verts:
            continue
        f1, f2 = e.connects
        s1, s2 = patch.status(f1), patch.status(f2)
        if s1 == "present" and s2 == "present":
            adj.setdefault(f1, []).append((f2, e))
            adj.setdefault(f2, []).append((f1, e))
        elif s1 == "present" and s2 == "defect":
            absorb.setdefault(f1, []).append(e)
        elif s2 == "present" and s1 == "defect":
            absorb.setdefault(f2, []).append(e)
    corner: dict[int, list] = {}
    for v in patch.verts:
        f_own = patch.face_of[(v, color)]
        if patch.status(f_own) != "present":
            continue
        others = [patch.face_of[(v, c)] for c in COLORS if c != color]
        if all(patch.status(f) == "defect" for f in others):
            corner.setdefault(f_own, []).append(v)
    return adj, absorb, corner


def _wing_cost(patch, color, maps, start_face, junction=None, discount=False):
    """Minimum qubit costs to absorb a single `color` flip from start_face,
    split by terminal kind.

    Returns {"face": cost, "corner": cost} with None for unreachable kinds.
    A "face" terminal enters a defect face of this color (the chain then
    touches that boundary line); a "corner" terminal is a code qubit whose
    other two faces are defects (touching those two lines instead).
    Spacelike moves cost two qubits per link. With `discount`, the wing is
    routed through the junction's own link, whose two qubits cancel against
    the junction error (only one wing of a junction may claim this).
    """
    adj, absorb, corner = maps
    lat = patch.lat
    best = {"face": None, "corner": None}

    def offer(kind, cost):
        if best[kind] is None or cost < best[kind]:
            best[kind] = cost

    dist = {}
    heap = []
    if discount:
        e_own = lat.edges[patch.edge_of[(junction, color)]]
        o1, o2 = e_own.vertices
        if not (o1 in patch.verts and o2 in patch.verts):
            return best
        far = e_own.connects[0] if e_own.connects[1] == start_face else e_own.connects[1]
        if patch.status(far) == "defect":
            offer("face", 0)
            return best
        dist[far] = 0
        heap.append((0, far))
    else:
        dist[start_face] = 0
        heap.append((0, start_face))
    while heap:
        w, f = heapq.heappop(heap)
        if w > dist.get(f, 1 << 30):
            continue
        if any(u != junction for u in corner.get(f, ())):
            offer("corner", w + 1)
        if f in absorb:
            offer("face", w + 2)
        for f2, _e in adj.get(f, ()):
            if w + 2 < dist.get(f2, 1 << 30):
                dist[f2] = w + 2
                heapq.heappush(heap, (w + 2, f2))
    return best


_OTHER = {"r": ("g", "b"), "g": ("r", "b"), "b": ("r", "g")}


def _junction_options(patch, maps, v):
    """Terminal choices per color for a junction at vertex v, or None.

    Each choice is (cost, touched colors, uses_discount); at most one chosen
    wing may use the junction-link discount.
    """
    choices = []
    base_touch = set()
    for c in COLORS:
        f = patch.face_of[(v, c)]
        if patch.status(f) == "defect":
            base_touch.add(c)
            continue
        opts = []
        for disc in (False, True):
            w = _wing_cost(patch, c, maps[c], f, junction=v, discount=disc)
            if w["face"] is not None:
                opts.append((w["face"], frozenset({c}), disc))
            if w["corner"] is not None:
                opts.append((w["corner"], frozenset(_OTHER[c]), disc))
        if not opts:
            return None
        choices.append(opts)
    return base_touch, choices


def _best_junction_cost(base_touch, choices):
    """Cheapest combination covering all three colors with at most one
    discounted wing; None if nothing covers."""
    best = None
    import itertools
    for combo in itertools.product(*choices):
        if sum(1 for _w, _t, disc in combo if disc) > 1:
            continue
        touch = set(base_touch)
        cost = 1
        for w, t, _disc in combo:
            cost += w
            touch |= t
        if touch == set(COLORS) and (best is None or cost < best):
            best = cost
    return best


def patch_min_weight(patch) -> tuple[int, int | None]:
    """Exhaustive junction search: minimum qubits of a syndrome-free error
    set touching all three boundary lines. Returns (weight, junction)."""
    maps = {c: _color_maps(patch, c) for c in COLORS}
    best, best_v = None, None
    for v in sorted(patch.verts):
        res = _junction_options(patch, maps, v)
        if res is None:
            continue
        cost = _best_junction_cost(*res)
        if cost is not None and (best is None or cost < best):
            best, best_v = cost, v
    if best is None:
        raise RegionBuildError("no boundary-connecting chain exists")
    return best, best_v


def _junction_chain(patch, v0) -> frozenset:
    """Concrete minimum error set for the canonical junction: the junction
    code qubit plus one shortest wing per color, greedily reconstructed."""
    import itertools
    maps = {c: _color_maps(patch, c) for c in COLORS}
    base_touch = set()
    per_color = []
    present_colors = []
    for c in COLORS:
        f = patch.face_of[(v0, c)]
        if patch.status(f) == "defect":
            base_touch.add(c)
            continue
        present_colors.append(c)
        opts = []
        for disc in (False, True):
            w = _wing_cost(patch, c, maps[c], f, junction=v0, discount=disc)
            if w["face"] is not None:
                opts.append(("face", w["face"], frozenset({c}), disc))
            if w["corner"] is not None:
                opts.append(("corner", w["corner"], frozenset(_OTHER[c]), disc))
        per_color.append(opts)
    best_total, best_combo = None, None
    for combo in itertools.product(*per_color):
        if sum(1 for _k, _w, _t, disc in combo if disc) > 1:
            continue
        touch = set(base_touch)
        cost = 1
        for _kind, w, t, _disc in combo:
            cost += w
            touch |= t
        if touch == set(COLORS) and (best_total is None or cost < best_total):
            best_total, best_combo = cost, combo
    if best_combo is None:
        raise RegionBuildError("junction cannot cover all three boundaries")
    qubits = {v0}
    for c, (kind, target, _t, disc) in zip(present_colors, best_combo):
        f0 = patch.face_of[(v0, c)]
        wing = _recover_wing(patch, c, maps[c], f0, v0, target, kind, disc)
        qubits ^= wing
    return frozenset(qubits)


def _recover_wing(patch, color, maps, start_face, junction, target, kind, disc):
    """Depth-first reconstruction of one wing achieving the Dijkstra cost.

    With `disc`, the wing must leave through the junction's own link; the
    returned set then contains the junction qubit so the caller's xor
    removes it again.
    """
    adj, absorb, corner = maps

    def options(f, v_cancel):
        opts = []
        if kind == "corner":
            for u in sorted(corner.get(f, ())):
                if u != junction:
                    opts.append((1, frozenset({u}), None))
        if kind == "face":
            for e in sorted(absorb.get(f, ()), key=lambda e: e.id):
                qs = frozenset(e.vertices)
                opts.append((2 - 2 * (v_cancel in qs), qs, None))
        for f2, e in sorted(adj.get(f, ()), key=lambda fe: fe[1].id):
            qs = frozenset(e.vertices)
            opts.append((2 - 2 * (v_cancel in qs), qs, f2))
        return opts

    def dfs(f, budget, v_cancel, seen):
        for cost, qs, nxt in options(f, v_cancel):
            if cost > budget:
                continue
            if nxt is None:
                if cost == budget:
                    return qs
            elif nxt not in seen:
                rest = dfs(nxt, budget - cost, None, seen | {nxt})
                if rest is not None:
                    return qs ^ rest
        return None

    wing = dfs(start_face, target, junction if disc else None, {start_face})
    if wing is None:
        raise RegionBuildError("wing reconstruction failed")
    return set(wing)


# ------------------------------------------------------ family geometries ----

def _grid_488(face):
    y, x, tag = face.key
    if tag == "s":
        return ((x - 2) / 4 + 0.5, (y - 2) / 4 + 0.5)
    return (x / 4, y / 4)


def _patch_488(d: int, hg: int, hb: int):
    """Triangle in the 4-8-8 lattice: a vertical red defect column on the
    left closed by a green diagonal and a blue anti-diagonal of octagons."""
    size = max(10, 2 * ((2 * d + 12) // 2))
    lat = _torus("4-8-8", size)
    j_c = size // 2
    i_r = 2.5
    kg = int(2 * round((i_r - j_c + hg) / 2))
    mb = int(2 * round((i_r + j_c + hb - 1) / 2) + 1)

    def interior(f):
        i, j = _grid_488(f)
        return i > i_r + 0.25 and (i - j) < kg - 0.25 and (i + j) < mb - 0.25

    def defect(f):
        i, j = _grid_488(f)
        if f.color == "r" and abs(i - i_r) < 0.25 \
                and (i - j) < kg + 2.2 and (i + j) < mb + 2.2:
            return "r"
        if f.color == "g" and abs((i - j) - kg) < 0.25 \
                and i > i_r - 1.2 and (i + j) < mb + 2.2:
            return "g"
        if f.color == "b" and abs((i + j) - mb) < 0.25 \
                and i > i_r - 1.2 and (i - j) < kg + 2.2:
            return "b"
        return None

    return _cut_patch(lat, interior, defect)


def _grid_666(face):
    y, x, _ = face.key
    b = y // 3
    a = (x // 3 - b) // 2
    return a, b


def _patch_666(d: int, p: int, q: int, r: int):
    """Triangle in the 6-6-6 lattice bounded by three monochromatic lines
    of hexagons (constant a-b, a+2b and 2a+b respectively)."""
    size = 3 * ((2 * d + 14) // 3)
    lat = _torus("6-6-6", size)
    a0 = b0 = size // 2
    cu = (a0 - b0) + p
    cv = (a0 + 2 * b0) + q
    cw = (2 * a0 + b0) - r

    def uvw(f):
        a, b = _grid_666(f)
        return a - b, a + 2 * b, 2 * a + b

    def interior(f):
        u, v, w = uvw(f)
        return u < cu and v < cv and w > cw

    def defect(f):
        u, v, w = uvw(f)
        if u == cu and v < cv + 4 and w > cw - 4:
            return f.color
        if v == cv and u < cu + 4 and w > cw - 4:
            return f.color
        if w == cw and u < cu + 4 and v < cv + 4:
            return f.color
        return None

    patch = _cut_patch(lat, interior, defect)
    side_colors = set()
    for fid, c in patch.defect.items():
        side_colors.add(c)
    if side_colors != {"r", "g", "b"}:
        raise RegionBuildError(f"boundary colors {side_colors} not all distinct")
    return patch


_torus_cache: dict = {}


def _torus(family, size):
    key = (family, size)
    if key not in _torus_cache:
        _torus_cache[key] = build_color_code_lattice(family, (size, size))
    return _torus_cache[key]


def _search_patch(code: str, d: int):
    """Deterministic offset search around a linear ansatz; the first patch
    whose oracle distance is exactly d wins."""
    k = (d + 3) // 2
    if code == "cccs-488":
        candidates = [(k + a, k + b) for a in (0, -1, 1, -2, 2) for b in (0, -1, 1, -2, 2)]
        build = lambda off: _patch_488(d, *off)
    else:
        candidates = [(k + a, k + b, k + c)
                      for a in (0, -1, 1, -2, 2)
                      for b in (0, -1, 1, -2, 2)
                      for c in (0, -1, 1, -2, 2)]
        build = lambda off: _patch_666(d, *off)
    for off in candidates:
        try:
            patch = build(off)
            w, v0 = patch_min_weight(patch)
        except RegionBuildError:
            continue
        if w == d:
            return patch, v0
    raise RegionBuildError(f"no {code} offsets give distance {d}")


# ----------------------------------------------------------- 3D assembly ----

def _assemble_cccs(code: str, patch, d: int, T: int) -> Region:
    lat = patch.lat
    n_layers = 2 * T + 1
    faces = sorted(patch.present | set(patch.defect))
    records = []
    for t in range(n_layers):
        lp = layer_primality(t)
        cq_p = "dual" if lp == "primal" else "primal"
        for vid in patch.verts:
            v = lat.vertices[vid]
            bnd = None
            for c in COLORS:
                if patch.status(lat.face_at[(vid, c)]) == "defect":
                    bnd = c
                    break
            records.append(((t, v.key, 0), ROLE_CQ, None, t, cq_p,
                            ("v", vid), "vacuum", bnd))
        for fid in faces:
            f = lat.faces[fid]
            is_def = fid in patch.defect
            region = "defect" if (is_def and lp == "primal") else "vacuum"
            bnd = patch.defect.get(fid)
            records.append(((t, f.key, 1), ROLE_AQ, f.color, t, lp,
                            ("f", fid), region, bnd))
    records.sort(key=lambda r: r[0])

    qubits, cq_index, aq_index = [], {}, {}
    for qid, (_, role, color, t, prim, pos, reg, bnd) in enumerate(records):
        qubits.append(Qubit(qid, role, color, t, prim, pos, reg, bnd))
        if role == ROLE_CQ:
            cq_index[(pos[1], t)] = qid
        else:
            aq_index[(pos[1], t)] = qid

    edges = []
    for t in range(n_layers):
        for fid in faces:
            a = aq_index[(fid, t)]
            for v in lat.faces[fid].vertices:
                if v in patch.verts:
                    edges.append(tuple(sorted((a, cq_index[(v, t)]))))
        if t + 1 < n_layers:
            for v in patch.verts:
                edges.append(tuple(sorted((cq_index[(v, t)], cq_index[(v, t + 1)]))))
    edges.sort()

    links = []
    for t in range(n_layers):
        for e in lat.edges:
            v1, v2 = e.vertices
            if v1 in patch.verts and v2 in patch.verts:
                links.append(Link(tuple(sorted((cq_index[(v1, t)], cq_index[(v2, t)]))),
                                  e.color, e.id, t))

    graph = ClusterGraph("cccs", lat, n_layers, qubits, edges, links,
                         cq_index=cq_index, aq_index=aq_index)
    graph.meta["patch"] = patch

    eligible = []
    for q in qubits:
        if q.primality != "primal" or q.region != "vacuum":
            continue
        if q.role == ROLE_AQ and (q.t == 0 or q.t == n_layers - 1):
            continue
        if q.role == ROLE_AQ and q.pos[1] in patch.defect:
            continue
        eligible.append(q.id)
    eligible = np.asarray(sorted(eligible), dtype=np.int64)

    w, v0 = patch_min_weight(patch)
    if w != d:
        raise RegionBuildError(f"{code}: built distance {w} != {d}")
    t0 = T if T % 2 == 1 else T + 1
    chain2d = _junction_chain(patch, v0)
    min_chain = frozenset(cq_index[(v, t0)] for v in chain2d)

    region = Region(code, d, T, graph, eligible, w, [], min_chain,
                    lattice=lat, present_faces=frozenset(patch.present),
                    defect_color=dict(patch.defect),
                    vertices2d=frozenset(patch.verts),
                    meta={"patch": patch, "junction": v0, "t0": t0})
    _solve_witnesses(region)
    _check_arcs(region)
    return region


def _dual_generator_rows(region: Region):
    """Z-supports (restricted to vacuum primal qubits) of the cluster
    generators around every vacuum dual qubit.

    Dual qubits in the first and final layers are skipped: the region is a
    time window, so their real generators touch qubits beyond it and yield
    no usable parity. Each such generator involves a distinct outside qubit,
    hence no combination of them acts inside the window and dropping them
    loses nothing.
    """
    graph = region.graph
    last = graph.num_layers - 1
    cols = [q.id for q in graph.qubits
            if q.primality == "primal" and q.region == "vacuum"]
    col_of = {q: i for i, q in enumerate(cols)}
    rows = []
    for q in graph.qubits:
        if q.primality != "dual" or q.region != "vacuum":
            continue
        if q.t in (0, last):
            continue
        row = np.zeros(len(cols), dtype=np.uint8)
        for nb in graph.neighbors(q.id):
            j = col_of.get(nb)
            if j is not None:
                row[j] = 1
        rows.append(row)
    return np.asarray(rows, dtype=np.uint8), cols, col_of


def _solve_witnesses(region: Region) -> None:
    """Solve for a frozen witness support: even parity against every dual
    generator, odd on the canonical minimum chain."""
    rows, cols, col_of = _dual_generator_rows(region)
    rhs_vec = np.zeros(len(cols), dtype=np.uint8)
    for q in region.min_chain:
        rhs_vec[col_of[q]] = 1
    a = np.vstack([rows, rhs_vec[None, :]])
    b = np.concatenate([np.zeros(len(rows), dtype=np.uint8), [1]])
    x = _f2.solve(a, b)
    if x is None:
        raise RegionBuildError("witness system infeasible: no logical class?")
    w1 = frozenset(int(cols[i]) for i in np.nonzero(x)[0])
    # sanity: re-check parities explicitly
    sel = x.astype(bool)
    assert not (rows[:, sel].sum(axis=1) % 2).any(), "witness fails generator sweep"
    assert len(w1 & region.min_chain) % 2 == 1
    w2 = w1 ^ _central_detector_support(region)
    region.witnesses = [w1, w2]


def _central_detector_support(region: Region) -> frozenset:
    """X-support of one mid-region detector (syndrome-free sets have even
    overlap with it, so xoring it into a witness changes nothing testable)."""
    graph = region.graph
    if region.code == "rtcs":
        lx, ly = region.d - 1, region.d - 1
        cell = (lx // 2, ly // 2, region.T // 2)
        return frozenset(region.meta["cell_support"][cell])
    patch = region.meta["patch"]
    t0 = region.meta["t0"]
    fid = min(region.present_faces)
    sup = {graph.aq_index[(fid, t0 - 1)], graph.aq_index[(fid, t0 + 1)]}
    for v in patch.lat.faces[fid].vertices:
        if v in patch.verts:
            sup.add(graph.cq_index[(v, t0)])
    return frozenset(sup)


def _check_arcs(region: Region) -> None:
    """No single-colored boundary-to-boundary chain with odd witness parity
    may be lighter than d."""
    patch = region.meta["patch"]
    t0 = region.meta["t0"]
    graph = region.graph
    w2d = {q.pos[1] for qid in region.witnesses[0]
           for q in [graph.qubits[qid]]
           if q.role == ROLE_CQ and q.t == t0}
    for c in COLORS:
        best = _min_odd_arc(patch, c, w2d)
        if best is not None and best < region.d:
            raise RegionBuildError(
                f"nontrivial {c} arc of weight {best} < d={region.d}")


def _min_odd_arc(patch, color, w2d):
    """Cheapest single-color chain between absorptions with odd witness
    parity (Dijkstra over (face, parity) states)."""
    adj, absorb, corner = _color_maps(patch, color)
    best = None
    dist = {}
    heap = []

    def par_link(e):
        return (e.vertices[0] in w2d) + (e.vertices[1] in w2d)

    for f, es in absorb.items():
        for e in es:
            st = (f, par_link(e) % 2)
            if 2 < dist.get(st, 1 << 30):
                dist[st] = 2
                heapq.heappush(heap, (2, st))
    for f, us in corner.items():
        for u in us:
            st = (f, (u in w2d) % 2)
            if 1 < dist.get(st, 1 << 30):
                dist[st] = 1
                heapq.heappush(heap, (1, st))
    while heap:
        w, (f, par) = heapq.heappop(heap)
        if w > dist.get((f, par), 1 << 30):
            continue
        # terminate: absorb again
        term = []
        for e in absorb.get(f, ()):
            term.append((w + 2, (par + par_link(e)) % 2))
        for u in corner.get(f, ()):
            term.append((w + 1, (par + (u in w2d)) % 2))
        for cost, p in term:
            if p == 1 and (best is None or cost < best):
                best = cost
        for f2, e in adj.get(f, ()):
            st2 = (f2, (par + par_link(e)) % 2)
            if w + 2 < dist.get(st2, 1 << 30):
                dist[st2] = w + 2
                heapq.heappush(heap, (w + 2, st2))
    return best


# ------------------------------------------------------------ RTCS region ----

def _build_rtcs_region(d: int, T: int) -> Region:
    """Square-column RTCS region: (d-1)^2 cells wide, T cells deep in time,
    absorbing (primal) sides along x, closed (dual) sides along y."""
    lx = ly = d - 1
    faces = {}
    for z in range(T):
        for y in range(ly):
            for x in range(lx + 1):
                faces[(2 * x, 2 * y + 1, 2 * z + 1)] = "yz"
        for y in range(1, ly):
            for x in range(lx):
                faces[(2 * x + 1, 2 * y, 2 * z + 1)] = "zx"
    for z in range(T + 1):
        for y in range(ly):
            for x in range(lx):
                faces[(2 * x + 1, 2 * y + 1, 2 * z)] = "xy"

    edge_pos = set()
    for pos in faces:
        x, y, z = pos
        for ax in range(3):
            if pos[ax] % 2 == 1:
                for dd in (-1, 1):
                    e = list(pos)
                    e[ax] += dd
                    if e[1] in (0, 2 * ly):
                        continue  # dual boundary planes carry no qubits
                    edge_pos.add(tuple(e))

    records = []
    for pos in faces:
        bnd = None
        if pos[0] == 0:
            bnd = "primal-x0"
        elif pos[0] == 2 * lx:
            bnd = "primal-x1"
        elif pos[1] == 1:
            bnd = "dual-y0"
        elif pos[1] == 2 * ly - 1:
            bnd = "dual-y1"
        records.append(((pos[2], pos[1], pos[0]), ROLE_RTCS_FACE, pos, bnd))
    for pos in edge_pos:
        records.append(((pos[2], pos[1], pos[0]), ROLE_RTCS_EDGE, pos, None))
    records.sort()

    qubits, index = [], {}
    for qid, (_, role, pos, bnd) in enumerate(records):
        prim = "primal" if role == ROLE_RTCS_FACE else "dual"
        qubits.append(Qubit(qid, role, None, pos[2], prim, pos, "vacuum", bnd))
        index[pos] = qid

    edges = []
    for pos, kind in faces.items():
        for ax in range(3):
            if pos[ax] % 2 == 1:
                for dd in (-1, 1):
                    e = list(pos)
                    e[ax] += dd
                    e = tuple(e)
                    if e in index:
                        edges.append(tuple(sorted((index[pos], index[e]))))
    edges = sorted(set(edges))
    graph = ClusterGraph("rtcs", None, 2 * T + 1, qubits, edges, [])
    graph.meta["index"] = index
    graph.meta["size"] = (lx, ly, T)

    eligible = np.asarray(sorted(
        index[p] for p, kind in faces.items()
        if not (kind == "xy" and p[2] in (0, 2 * T))), dtype=np.int64)

    cell_support = {}
    for z in range(T):
        for y in range(ly):
            for x in range(lx):
                sup = []
                c = (2 * x + 1, 2 * y + 1, 2 * z + 1)
                for ax in range(3):
                    for dd in (-1, 1):
                        f = list(c)
                        f[ax] += dd
                        f = tuple(f)
                        if f in index:
                            sup.append(index[f])
                cell_support[(x, y, z)] = sorted(sup)

    # oracle: BFS over cells, unit cost per eligible face mechanism
    m = _rtcs_min_weight(lx, ly, T)
    if m != d:
        raise RegionBuildError(f"rtcs: built distance {m} != {d}")

    y0, z0 = (ly - 1) // 2, T // 2
    min_chain = frozenset(index[(2 * x, 2 * y0 + 1, 2 * z0 + 1)]
                          for x in range(lx + 1))

    region = Region("rtcs", d, T, graph, eligible, m, [], min_chain,
                    meta={"cell_support": cell_support, "dims": (lx, ly, T)})
    _solve_witnesses(region)
    return region


def _rtcs_min_weight(lx, ly, T) -> int:
    """BFS distance between the two absorbing sides of the cell graph.

    Every interior face is a unit-weight mechanism between the two cells it
    bounds; the frozen first/final layers only remove absorption in time,
    which the bounded cell graph cannot do anyway.
    """
    from collections import deque
    dist = {}
    dq = deque()
    for y in range(ly):
        for z in range(T):
            dist[(0, y, z)] = 1
            dq.append((0, y, z))
    best = None
    while dq:
        x, y, z = dq.popleft()
        w = dist[(x, y, z)]
        if x == lx - 1 and (best is None or w + 1 < best):
            best = w + 1
        for nb in ((x + 1, y, z), (x - 1, y, z), (x, y + 1, z),
                   (x, y - 1, z), (x, y, z + 1), (x, y, z - 1)):
            nx, ny, nz = nb
            if 0 <= nx < lx and 0 <= ny < ly and 0 <= nz < T and nb not in dist:
                dist[nb] = w + 1
                dq.append(nb)
    if best is None:
        raise RegionBuildError("rtcs region disconnected")
    return best


# ------------------------------------------------------------- public API ----

def build_simplified_region(code: str, d: int, T: int | None = None) -> Region:
    """Bounded region for threshold simulations.

    Parameters
    ----------
    code : {'rtcs', 'cccs-488', 'cccs-666'}
    d : odd int >= 3
        Target code distance; the builder verifies it exactly and refuses to
        emit a wrong-distance region.
    T : int, optional
        Half-depth in layers (the region spans 2T+1); defaults to 4d+1.
    """
    if d < 3 or d % 2 == 0:
        raise ValueError("d must be an odd integer >= 3")
    if T is None:
        T = 4 * d + 1
    if code == "rtcs":
        return _build_rtcs_region(d, T)
    if code in ("cccs-488", "cccs-666"):
        patch, _v0 = _search_patch(code, d)
        return _assemble_cccs(code, patch, d, T)
    raise ValueError(f"unknown code {code!r}")


# -------------------------------------------------- logical operators ----

def _link_path(patch, color, start_face, forbidden=frozenset()):
    """Shortest link path from start_face to this color's defect line,
    avoiding code qubits in `forbidden`. Returns a list of lattice edges."""
    adj, absorb, _corner = _color_maps(patch, color)

    def usable(e):
        return not (set(e.vertices) & forbidden)

    prev = {start_face: None}
    from collections import deque
    dq = deque([start_face])
    while dq:
        f = dq.popleft()
        for e in sorted(absorb.get(f, ()), key=lambda e: e.id):
            if usable(e):
                path = [e]
                while prev[f] is not None:
                    f, e2 = prev[f]
                    path.append(e2)
                return list(reversed(path))
        for f2, e in sorted(adj.get(f, ()), key=lambda fe: fe[1].id):
            if f2 not in prev and usable(e):
                prev[f2] = (f, e)
                dq.append(f2)
    return None


def region_logical_operators(region: Region, color_pair=("b", "r")):
    """Logical Z (three colored chains meeting at a junction code qubit) and
    logical X (a closed same-color link chain at the junction layer with its
    time-shifted Z copy) for a CCCS region.

    The loop is routed through the junction's own link of the loop color, so
    the two operators meet at a single code qubit and anticommute.
    """
    from .stabilizers import logical_x, logical_z
    if region.code == "rtcs":
        raise ValueError("logical chain construction is defined for CCCS regions")
    patch = region.meta["patch"]
    lat = patch.lat
    t0 = region.meta["t0"]
    graph = region.graph
    c_loop, c_enc = color_pair
    if c_loop == c_enc:
        raise ValueError("loop and encircled colors must differ")

    interior = [v for v in sorted(patch.verts)
                if all(patch.status(patch.face_of[(v, c)]) == "present"
                       for c in COLORS)]
    if not interior:
        raise RegionBuildError("no interior junction for logical operators")

    def cq(v, t=t0):
        return graph.cq_index[(v, t)]

    for q_i in interior:
        e_loop = lat.edges[patch.edge_of[(q_i, c_loop)]]
        f_near = patch.face_of[(q_i, c_loop)]
        f_far = e_loop.connects[0] if e_loop.connects[1] == f_near else e_loop.connects[1]
        wing1 = _link_path(patch, c_loop, f_near)
        wing2 = _link_path(patch, c_loop, f_far)
        if wing1 is None or wing2 is None:
            continue
        loop_edges = wing1 + [e_loop] + wing2
        loop_cqs = set()
        for e in loop_edges:
            loop_cqs ^= set(e.vertices)

        chains = {}
        ok = True
        for c in COLORS:
            e0 = lat.edges[patch.edge_of[(q_i, c)]]
            if c == c_loop:
                chains[c] = [e0] + wing2
                continue
            f0 = patch.face_of[(q_i, c)]
            rest = _link_path(patch, c, f0, forbidden=frozenset(loop_cqs - {q_i}))
            if rest is None:
                rest = _link_path(patch, c, f0)
            if rest is None:
                ok = False
                break
            chains[c] = rest if q_i in {v for e in rest for v in e.vertices} \
                else [e0] + rest
        if not ok:
            continue

        z_chains = {c: [frozenset(cq(v) for v in e.vertices) for e in es]
                    for c, es in chains.items()}
        zl = logical_z(z_chains, cq(q_i))
        xl = logical_x(
            [frozenset(cq(v, t0) for v in e.vertices) for e in loop_edges],
            [frozenset(cq(v, t0 + 1) for v in e.vertices) for e in loop_edges])
        overlap = len(zl.z_support & xl.x_support) + len(zl.x_support & xl.z_support)
        if overlap % 2 == 1:
            return xl, zl
    raise RegionBuildError("could not route anticommuting logical operators")
