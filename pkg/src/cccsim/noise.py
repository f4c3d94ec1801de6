"""Independent Z / X-measurement noise on vacuum qubits and detector outcomes.

A Z error just before an X measurement and a flipped X outcome are the same
thing, so a single effective flip probability p_phys = p_z + p_mx - p_z*p_mx
drives the sampling. Errors land on primal vacuum qubits outside the first
and final layers; detector j fires iff an odd number of its support qubits
flipped.

Sampling is counter-based: the generator for a cycle is keyed by
(seed, cycle_index), so any parallel schedule reproduces identical errors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix

from .cluster import ROLE_AQ, ROLE_CQ, ROLE_RTCS_FACE
from .regions import Region


@dataclass(frozen=True)
class ErrorModel:
    p_z: float = 0.0
    p_mx: float = 0.0

    def __post_init__(self):
        for p in (self.p_z, self.p_mx):
            if not 0.0 <= p <= 1.0:
                raise ValueError("probabilities must lie in [0, 1]")

    @property
    def p_phys(self) -> float:
        return self.p_z + self.p_mx - self.p_z * self.p_mx

    @classmethod
    def from_p_phys(cls, p: float) -> "ErrorModel":
        return cls(p_z=p, p_mx=0.0)


def sample_errors(region: Region, model: ErrorModel, seed: int,
                  cycle_index: int) -> np.ndarray:
    """Boolean mask over region.eligible; deterministic in (seed, cycle)."""
    rng = np.random.Generator(np.random.Philox(key=(seed, cycle_index)))
    return rng.random(len(region.eligible)) < model.p_phys


def error_qubits(region: Region, mask: np.ndarray) -> frozenset:
    return frozenset(int(q) for q in region.eligible[np.asarray(mask, dtype=bool)])


class DetectorSet:
    """Interior parity checks of a region with a sparse syndrome map."""

    def __init__(self, region: Region):
        self.region = region
        graph = region.graph
        keys, colors, supports = [], [], []
        if region.code == "rtcs":
            for cell, sup in sorted(region.meta["cell_support"].items()):
                keys.append(("cell",) + cell)
                colors.append(None)
                supports.append(sorted(sup))
        else:
            patch = region.meta["patch"]
            lat = region.lattice
            for fid in sorted(region.present_faces):
                face = lat.faces[fid]
                for t in range(1, graph.num_layers - 1, 2):
                    sup = [graph.aq_index[(fid, t - 1)], graph.aq_index[(fid, t + 1)]]
                    sup += [graph.cq_index[(v, t)] for v in face.vertices
                            if v in patch.verts]
                    keys.append(("pc", fid, t))
                    colors.append(face.color)
                    supports.append(sorted(sup))
        self.keys = keys
        self.colors = colors
        self.supports = supports
        self.index = {k: i for i, k in enumerate(keys)}

        elig_index = region.eligible_index()
        rows, cols = [], []
        for j, sup in enumerate(supports):
            for q in sup:
                i = elig_index.get(q)
                if i is not None:
                    rows.append(j)
                    cols.append(i)
        data = np.ones(len(rows), dtype=np.uint8)
        self.matrix = csr_matrix((data, (rows, cols)),
                                 shape=(len(keys), len(region.eligible)),
                                 dtype=np.uint8)

    def __len__(self):
        return len(self.keys)

    def extract(self, mask: np.ndarray) -> np.ndarray:
        """Syndrome bits for an error mask over eligible qubits."""
        return (self.matrix @ mask.astype(np.uint8)) % 2 == 1

    def extract_batch(self, masks: np.ndarray) -> np.ndarray:
        """Columns are cycles; returns (n_detectors, n_cycles) booleans."""
        return (self.matrix @ masks.astype(np.uint8)) % 2 == 1


def extract_syndrome(errors, detectors: DetectorSet) -> frozenset:
    """Flipped detector keys for an error set (mask or qubit-id iterable)."""
    region = detectors.region
    if isinstance(errors, np.ndarray) and errors.dtype == bool:
        mask = errors
    else:
        elig_index = region.eligible_index()
        mask = np.zeros(len(region.eligible), dtype=bool)
        for q in errors:
            i = elig_index.get(int(q))
            if i is None:
                raise ValueError(f"qubit {q} is not an eligible error location")
            mask[i] = True
    flipped = detectors.extract(mask)
    return frozenset(detectors.keys[i] for i in np.nonzero(flipped)[0])
