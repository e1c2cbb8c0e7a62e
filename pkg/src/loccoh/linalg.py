"""Dense linear algebra over a prime field F_p, backed by numpy int64 arrays.

All matrices are 2-d int64 arrays with entries in [0, p).  p < 2^31, so a
single product fits in int64; every arithmetic step reduces mod p.
"""

from __future__ import annotations

import numpy as np


def _inv(a: int, p: int) -> int:
    return pow(int(a), p - 2, p)


def asmat(rows, p: int) -> np.ndarray:
    a = np.array(rows, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return a % p


def zeros(m: int, n: int) -> np.ndarray:
    return np.zeros((m, n), dtype=np.int64)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot column indices."""
    a = a.copy() % p
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * _inv(a[r, c], p)) % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of the right kernel of a."""
    m, n = a.shape
    if n == 0:
        return zeros(0, 0)
    if m == 0:
        return np.eye(n, dtype=np.int64)
    r, pivots = rref(a, p)
    free = [j for j in range(n) if j not in pivots]
    basis = zeros(n, len(free))
    for k, j in enumerate(free):
        basis[j, k] = 1
        for row, pc in enumerate(pivots):
            basis[pc, k] = (-r[row, j]) % p
    return basis


def solve(a: np.ndarray, b: np.ndarray, p: int):
    """One solution x of a @ x = b (mod p), or None if inconsistent."""
    m, n = a.shape
    b = b.reshape(m, 1) % p
    aug, pivots = rref(np.hstack([a, b]), p)
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = aug[row, n]
    return x


class SpanTracker:
    """Incrementally maintained row-reduced basis of a subspace of F_p^dim."""

    def __init__(self, dim: int, p: int):
        self.dim = dim
        self.p = p
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def _reduce(self, v: np.ndarray) -> np.ndarray:
        v = v.copy() % self.p
        for row, pc in zip(self.rows, self.pivots):
            if v[pc]:
                v = (v - v[pc] * row) % self.p
        return v

    def contains(self, v: np.ndarray) -> bool:
        return not self._reduce(np.asarray(v, dtype=np.int64)).any()

    def add(self, v: np.ndarray) -> bool:
        """Add v to the span; returns True if the dimension grew."""
        v = self._reduce(np.asarray(v, dtype=np.int64))
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        pc = int(nz[0])
        v = (v * _inv(v[pc], self.p)) % self.p
        for row in self.rows:
            if row[pc]:
                row -= (row[pc] * v) % self.p
                row %= self.p
        self.rows.append(v)
        self.pivots.append(pc)
        return True

    @property
    def dimension(self) -> int:
        return len(self.rows)


def quotient_basis(ker: np.ndarray, img: np.ndarray, p: int) -> np.ndarray:
    """Columns of ker completing a basis of span(img) to span(ker).

    img must be contained in span(ker).  The returned columns represent a
    basis of the quotient space ker/img.
    """
    dim = ker.shape[0]
    tracker = SpanTracker(dim, p)
    for j in range(img.shape[1]):
        tracker.add(img[:, j])
    reps = []
    for j in range(ker.shape[1]):
        if tracker.add(ker[:, j]):
            reps.append(ker[:, j])
    if not reps:
        return zeros(dim, 0)
    return np.stack(reps, axis=1)
