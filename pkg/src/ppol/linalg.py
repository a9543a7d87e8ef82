"""Exact dense linear algebra over the prime field F_p (numpy int16 kernels).

Pivoting is deterministic: columns are processed left to right and the pivot
is the first row (in input order) with a nonzero entry, so solution spaces
and echelon forms are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import PpolError


@dataclass(frozen=True)
class AffineSolutionSpace:
    """Solutions of A x = b over F_p: particular + span(basis).

    particular is None exactly when the system is inconsistent, in which case
    the basis is empty.  Basis vectors are the reduced-row-echelon kernel
    basis, one per free column, in column order.
    """

    particular: Optional[tuple]
    basis: tuple
    dim: int

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    def points(self, p: int, limit: int = 1 << 16):
        """Iterate all solutions (only sensible for small spaces)."""
        if self.particular is None:
            return
        if p ** self.dim > limit:
            raise PpolError(f"solution space too large to enumerate: p^{self.dim}")
        n = len(self.particular)
        counters = [0] * self.dim
        while True:
            vec = list(self.particular)
            for c, bv in zip(counters, self.basis):
                if c:
                    for i in range(n):
                        vec[i] = (vec[i] + c * bv[i]) % p
            yield tuple(vec)
            i = 0
            while i < self.dim:
                counters[i] += 1
                if counters[i] < p:
                    break
                counters[i] = 0
                i += 1
            else:
                return


def _as_array(rows, p) -> np.ndarray:
    a = np.array(rows, dtype=np.int64) % p
    return a.astype(np.int16)


def rref_fp(matrix, p: int):
    """Reduced row echelon form mod p; returns (rref array, pivot column list)."""
    a = _as_array(matrix, p) if not isinstance(matrix, np.ndarray) else matrix.astype(np.int16) % p
    if a.ndim != 2:
        raise PpolError("matrix must be two-dimensional")
    nrows, ncols = a.shape
    inv = [0] * p
    for v in range(1, p):
        inv[v] = pow(v, p - 2, p)
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        a[row] = (a[row] * inv[int(a[row, col])]) % p
        hits = np.nonzero(a[:, col])[0]
        hits = hits[hits != row]
        if hits.size:
            a[hits] = (a[hits] - np.outer(a[hits, col], a[row])) % p
        pivots.append(col)
        row += 1
    return a, pivots


def nullspace_fp(matrix, p: int):
    """RREF basis of the kernel of the matrix over F_p, one vector per free column."""
    a, pivots = rref_fp(matrix, p)
    ncols = a.shape[1]
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for r, c in enumerate(pivots):
            vec[c] = (-int(a[r, f])) % p
        basis.append(tuple(vec))
    return tuple(basis)


def solve_fp_linear(matrix, rhs, p: int) -> AffineSolutionSpace:
    """Exact solution space of matrix * x = rhs over F_p."""
    a = _as_array(matrix, p)
    b = _as_array([rhs], p)[0] if not isinstance(rhs, np.ndarray) else rhs.astype(np.int16) % p
    if a.shape[0] != b.shape[0]:
        raise PpolError("matrix/rhs dimensions do not agree")
    nrows, ncols = a.shape
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    r, pivots = rref_fp(aug, p)
    if ncols in pivots:
        return AffineSolutionSpace(None, (), 0)
    particular = [0] * ncols
    for i, c in enumerate(pivots):
        particular[c] = int(r[i, ncols])
    basis = nullspace_fp(a, p)
    return AffineSolutionSpace(tuple(particular), basis, len(basis))


class RowCollector:
    """Accumulates F_p constraint rows (and right-hand sides) before one solve."""

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.rows: list = []
        self.rhs: list = []

    def add(self, row: Sequence[int], b: int = 0):
        self.rows.append([v % self.p for v in row])
        self.rhs.append(b % self.p)

    def solve(self) -> AffineSolutionSpace:
        if not self.rows:
            basis = tuple(
                tuple(1 if j == i else 0 for j in range(self.ncols)) for i in range(self.ncols)
            )
            return AffineSolutionSpace((0,) * self.ncols, basis, self.ncols)
        return solve_fp_linear(self.rows, self.rhs, self.p)


def fp_span_dim(vectors, p: int) -> int:
    """Dimension of the F_p-span of the given vectors."""
    vecs = [v for v in vectors if any(x % p for x in v)]
    if not vecs:
        return 0
    _, pivots = rref_fp(vecs, p)
    return len(pivots)
