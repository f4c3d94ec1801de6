"""Dense bit-packed linear algebra over GF(2).

Rows are packed into ``uint64`` words. This is plenty for the graph sizes the
stabilizer-membership oracle and witness solver operate on (a few thousand
columns).
"""

from __future__ import annotations

import numpy as np

_WORD = 64


def pack_rows(rows: np.ndarray) -> np.ndarray:
    """Pack a (m, n) 0/1 matrix into a (m, ceil(n/64)) uint64 matrix."""
    rows = np.asarray(rows, dtype=np.uint8)
    if rows.ndim == 1:
        rows = rows[None, :]
    m, n = rows.shape
    nw = (n + _WORD - 1) // _WORD
    padded = np.zeros((m, nw * _WORD), dtype=np.uint8)
    padded[:, :n] = rows
    packed = np.zeros((m, nw), dtype=np.uint64)
    for w in range(nw):
        chunk = padded[:, w * _WORD:(w + 1) * _WORD].astype(np.uint64)
        packed[:, w] = (chunk << np.arange(_WORD, dtype=np.uint64)).sum(axis=1)
    return packed


def unpack_row(row: np.ndarray, n: int) -> np.ndarray:
    """Inverse of :func:`pack_rows` for a single packed row."""
    bits = ((row[:, None] >> np.arange(_WORD, dtype=np.uint64)) & np.uint64(1)).astype(np.uint8)
    return bits.reshape(-1)[:n]


class RowBasis:
    """Incrementally row-reduced basis of GF(2) vectors of fixed width.

    Supports membership tests (does a vector lie in the span?) and rank
    queries. Vectors are added one at a time and kept in echelon form keyed
    by pivot bit.
    """

    def __init__(self, n_cols: int):
        self.n_cols = n_cols
        self.n_words = (n_cols + _WORD - 1) // _WORD
        self._pivots: dict[int, np.ndarray] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def _reduce(self, vec: np.ndarray) -> tuple[np.ndarray, int]:
        """Reduce vec against the basis; return (residue, pivot) with pivot=-1 if zero."""
        vec = vec.copy()
        while True:
            pivot = _highest_bit(vec)
            if pivot < 0:
                return vec, -1
            row = self._pivots.get(pivot)
            if row is None:
                return vec, pivot
            vec ^= row

    def add(self, bits: np.ndarray) -> bool:
        """Add a 0/1 vector to the basis. Returns True if it was independent."""
        vec = pack_rows(bits)[0]
        residue, pivot = self._reduce(vec)
        if pivot < 0:
            return False
        self._pivots[pivot] = residue
        return True

    def contains(self, bits: np.ndarray) -> bool:
        vec = pack_rows(bits)[0]
        _, pivot = self._reduce(vec)
        return pivot < 0


def _highest_bit(vec: np.ndarray) -> int:
    for w in range(len(vec) - 1, -1, -1):
        word = int(vec[w])
        if word:
            return w * _WORD + word.bit_length() - 1
    return -1


def solve(rows: np.ndarray, rhs: np.ndarray) -> np.ndarray | None:
    """Solve ``A x = b`` over GF(2); return one 0/1 solution or None.

    Free variables are set to zero, so the solution is deterministic in the
    row/column order of ``rows``.
    """
    a = np.asarray(rows, dtype=np.uint8) % 2
    b = np.asarray(rhs, dtype=np.uint8) % 2
    m, n = a.shape
    aug = np.concatenate([a, b[:, None]], axis=1)
    packed = pack_rows(aug)
    pivot_cols: list[int] = []
    row_idx = 0
    for col in range(n):
        w, bit = divmod(col, _WORD)
        mask = np.uint64(1) << np.uint64(bit)
        sel = np.nonzero((packed[row_idx:, w] & mask) != 0)[0]
        if len(sel) == 0:
            continue
        j = row_idx + sel[0]
        packed[[row_idx, j]] = packed[[j, row_idx]]
        hit = (packed[:, w] & mask) != 0
        hit[row_idx] = False
        packed[hit] ^= packed[row_idx]
        pivot_cols.append(col)
        row_idx += 1
        if row_idx == m:
            break
    # inconsistency: a zero row with rhs bit set
    w_rhs, bit_rhs = divmod(n, _WORD)
    rhs_mask = np.uint64(1) << np.uint64(bit_rhs)
    for r in range(row_idx, m):
        row = packed[r].copy()
        has_rhs = bool(row[w_rhs] & rhs_mask)
        row[w_rhs] &= ~rhs_mask
        if not row.any() and has_rhs:
            return None
    x = np.zeros(n, dtype=np.uint8)
    for r, col in enumerate(pivot_cols):
        if packed[r, w_rhs] & rhs_mask:
            x[col] = 1
    # back-substitution is unnecessary: full elimination above left each pivot
    # row with a single pivot column plus free columns (all set to zero).
    return x
