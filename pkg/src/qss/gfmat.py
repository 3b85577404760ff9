"""Exact linear algebra over prime fields F_p.

Matrices are small (a few dozen columns at most) so plain Gaussian
elimination on int64 numpy arrays is used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

MAX_PRIME = 257


class DimensionMismatch(ValueError):
    """Raised when two matrices cannot be compared or combined."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in range(2, int(p**0.5) + 1):
        if p % d == 0:
            return False
    return True


def check_prime(p: int) -> int:
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if p > MAX_PRIME:
        raise ValueError(f"p={p} exceeds the supported maximum {MAX_PRIME}")
    return p


@dataclass(frozen=True, eq=False)
class GfMatrix:
    """An immutable matrix with entries in F_p.

    Parameters
    ----------
    p : int
        Prime modulus.
    entries : array_like
        2-D integer array; entries are reduced mod ``p``.
    """

    p: int
    entries: np.ndarray

    def __init__(self, p: int, entries, cols: int | None = None):
        p = check_prime(p)
        arr = np.asarray(entries, dtype=np.int64)
        if arr.size == 0:
            if cols is None:
                cols = arr.shape[1] if arr.ndim == 2 else 0
            arr = np.zeros((0, cols), dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2:
            raise ValueError("GfMatrix entries must be two-dimensional")
        arr = np.mod(arr, p)
        arr.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> GfMatrix:
        return cls(p, np.zeros((rows, cols), dtype=np.int64), cols=cols)

    @classmethod
    def identity(cls, p: int, n: int) -> GfMatrix:
        return cls(p, np.eye(n, dtype=np.int64), cols=n)

    @classmethod
    def from_rows(cls, p: int, rows: Iterable[Iterable[int]], cols: int) -> GfMatrix:
        rows = [list(r) for r in rows]
        if not rows:
            return cls.zeros(p, 0, cols)
        return cls(p, rows, cols=cols)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def T(self) -> GfMatrix:
        return GfMatrix(self.p, self.entries.T, cols=self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GfMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.p, self.shape, self.entries.tobytes()))

    def __matmul__(self, other: GfMatrix) -> GfMatrix:
        if self.p != other.p or self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return GfMatrix(self.p, self.entries @ other.entries, cols=other.cols)

    def __getitem__(self, key) -> GfMatrix:
        sub = self.entries[key]
        if sub.ndim == 1:
            sub = sub.reshape(1, -1)
        return GfMatrix(self.p, sub, cols=sub.shape[1])

    def vstack(self, other: GfMatrix) -> GfMatrix:
        _check_compatible(self, other)
        return GfMatrix(self.p, np.vstack([self.entries, other.entries]), cols=self.cols)

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def __repr__(self) -> str:
        return f"GfMatrix(p={self.p}, shape={self.shape}, entries={self.tolist()})"


class RrefResult(NamedTuple):
    matrix: GfMatrix
    rank: int
    pivots: list[int]


def _check_compatible(a: GfMatrix, b: GfMatrix) -> None:
    if a.p != b.p:
        raise DimensionMismatch(f"field mismatch: p={a.p} vs p={b.p}")
    if a.cols != b.cols:
        raise DimensionMismatch(f"column mismatch: {a.cols} vs {b.cols}")


def rref(m: GfMatrix) -> RrefResult:
    """Reduced row-echelon form of ``m`` over F_p.

    Zero rows are kept at the bottom so the returned matrix has the same
    shape as the input.
    """
    p = m.p
    a = m.entries.copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivots.append(c)
        r += 1
    return RrefResult(GfMatrix(p, a, cols=ncols), r, pivots)


def rank(m: GfMatrix) -> int:
    return rref(m).rank


def row_basis(m: GfMatrix) -> GfMatrix:
    """Rows of the RREF that are nonzero: a canonical basis of the row space."""
    res = rref(m)
    return GfMatrix(m.p, res.matrix.entries[: res.rank], cols=m.cols)


def row_space_equal(a: GfMatrix, b: GfMatrix) -> bool:
    _check_compatible(a, b)
    return row_basis(a) == row_basis(b)


def row_space_contains(a: GfMatrix, b: GfMatrix) -> bool:
    """True if every row of ``b`` lies in the row space of ``a``."""
    _check_compatible(a, b)
    return rank(a.vstack(b)) == rank(a)


def kernel(m: GfMatrix) -> GfMatrix:
    """Basis of the right null space ``{x : m x^T = 0}``, one vector per row."""
    p = m.p
    res = rref(m)
    ncols = m.cols
    free = [c for c in range(ncols) if c not in set(res.pivots)]
    red = res.matrix.entries
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(res.pivots):
            basis[i, pc] = (-red[r, f]) % p
    return GfMatrix(p, basis, cols=ncols)


def solve_left(m: GfMatrix, v) -> np.ndarray | None:
    """Find coefficients ``t`` with ``t @ m = v`` (mod p), or None if v is not in the row space."""
    p = m.p
    v = np.mod(np.asarray(v, dtype=np.int64).reshape(-1), p)
    if v.size != m.cols:
        raise DimensionMismatch(f"vector length {v.size} != {m.cols}")
    if m.rows == 0:
        return np.zeros(0, dtype=np.int64) if not v.any() else None
    aug = GfMatrix(p, np.hstack([m.entries.T, v.reshape(-1, 1)]), cols=m.rows + 1)
    res = rref(aug)
    if m.rows in res.pivots:
        return None
    t = np.zeros(m.rows, dtype=np.int64)
    for r, pc in enumerate(res.pivots):
        t[pc] = res.matrix.entries[r, -1]
    return t
