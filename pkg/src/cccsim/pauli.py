"""Sparse Pauli operators over qubit-id sets, without global phase.

An operator is its X-support and Z-support; the overlap is the Y-support.
Products reduce to symmetric differences per support, and commutation to the
symplectic parity |X1 ∩ Z2| + |Z1 ∩ X2| mod 2, which is all the stabilizer
checks in this package need.
"""

from __future__ import annotations

import numpy as np

from ._f2 import RowBasis


class PauliOperator:
    __slots__ = ("x_support", "z_support")

    def __init__(self, x_support=(), z_support=()):
        self.x_support = frozenset(x_support)
        self.z_support = frozenset(z_support)

    @property
    def y_support(self) -> frozenset:
        return self.x_support & self.z_support

    @property
    def support(self) -> frozenset:
        return self.x_support | self.z_support

    def is_identity(self) -> bool:
        return not self.x_support and not self.z_support

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return PauliOperator(self.x_support ^ other.x_support,
                             self.z_support ^ other.z_support)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PauliOperator)
                and self.x_support == other.x_support
                and self.z_support == other.z_support)

    def __hash__(self):
        return hash((self.x_support, self.z_support))

    def __repr__(self):
        return (f"PauliOperator(x={sorted(self.x_support)!r}, "
                f"z={sorted(self.z_support)!r})")

    def commutes_with(self, other: "PauliOperator") -> bool:
        overlap = len(self.x_support & other.z_support) \
            + len(self.z_support & other.x_support)
        return overlap % 2 == 0

    def local_action(self, qubit: int) -> str:
        inx = qubit in self.x_support
        inz = qubit in self.z_support
        if inx and inz:
            return "Y"
        if inx:
            return "X"
        if inz:
            return "Z"
        return "I"

    def to_symplectic(self, n_qubits: int) -> np.ndarray:
        """(x|z) binary vector of length 2*n_qubits."""
        vec = np.zeros(2 * n_qubits, dtype=np.uint8)
        for q in self.x_support:
            vec[q] = 1
        for q in self.z_support:
            vec[n_qubits + q] = 1
        return vec


def pauli_x(qubits) -> PauliOperator:
    return PauliOperator(x_support=qubits)


def pauli_z(qubits) -> PauliOperator:
    return PauliOperator(z_support=qubits)


class StabilizerBasis:
    """GF(2) span of Pauli operators in symplectic form, for membership tests."""

    def __init__(self, n_qubits: int, generators=()):
        self.n_qubits = n_qubits
        self._basis = RowBasis(2 * n_qubits)
        for g in generators:
            self.add(g)

    @property
    def rank(self) -> int:
        return self._basis.rank

    def add(self, op: PauliOperator) -> bool:
        return self._basis.add(op.to_symplectic(self.n_qubits))

    def contains(self, op: PauliOperator) -> bool:
        return self._basis.contains(op.to_symplectic(self.n_qubits))
