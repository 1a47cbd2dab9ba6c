"""Exact matrix arithmetic over the supported rings.

Matrices cross module boundaries as tuples of tuples of ring elements; the
spaces here pick an internal representation (numpy int64 for Z/n when the
modulus is small enough to rule out overflow, object arrays otherwise,
componentwise mod-2 for boolean rings).
"""

from __future__ import annotations

import numpy as np

from .rings import Bool2k, FieldP, IntRing, RatRing, Ring, Zmod


class MatSpace:
    def __init__(self, R: Ring, dim: int):
        self.R = R
        self.dim = dim

    def identity(self):
        raise NotImplementedError

    def from_int(self, rows):
        """Integer matrix -> internal representation."""
        raise NotImplementedError

    def from_rows(self, rows):
        """Rows of ring elements -> internal representation."""
        raise NotImplementedError

    def to_rows(self, M):
        raise NotImplementedError

    def mul(self, A, B):
        raise NotImplementedError

    def mul_many(self, mats):
        acc = self.identity()
        for M in mats:
            acc = self.mul(acc, M)
        return acc

    def eq(self, A, B) -> bool:
        raise NotImplementedError

    def neg(self, M):
        raise NotImplementedError

    def scale(self, c, M):
        """c * M for a ring scalar c."""
        raise NotImplementedError

    def poly(self, int_pows, t):
        """sum_k t^k * P_k for integer matrices P_k and a ring scalar t."""
        raise NotImplementedError

    def is_identity(self, M) -> bool:
        return self.eq(M, self.identity())


class NumpyModSpace(MatSpace):
    """Z/n with int64 entries; requires dim * (n-1)^2 to fit comfortably."""

    def __init__(self, R, dim):
        super().__init__(R, dim)
        self.n = R.n

    def identity(self):
        return np.eye(self.dim, dtype=np.int64)

    def from_int(self, rows):
        return np.array(rows, dtype=np.int64) % self.n

    from_rows = from_int

    def to_rows(self, M):
        return tuple(tuple(int(v) for v in row) for row in M)

    def mul(self, A, B):
        return (A @ B) % self.n

    def eq(self, A, B):
        return bool(np.array_equal(A % self.n, B % self.n))

    def neg(self, M):
        return (-M) % self.n

    def scale(self, c, M):
        return (int(c) * M) % self.n

    def poly(self, int_pows, t):
        t = int(t) % self.n
        acc = np.zeros((self.dim, self.dim), dtype=np.int64)
        tk = 1
        for P in int_pows:
            acc += tk * (np.asarray(P, dtype=np.int64) % self.n)
            tk = (tk * t) % self.n
        return acc % self.n


class ObjectSpace(MatSpace):
    """Exact arithmetic with Python objects (int, Fraction)."""

    def identity(self):
        one, zero = self.R.one, self.R.zero
        return self._wrap([[one if i == j else zero for j in range(self.dim)]
                           for i in range(self.dim)])

    def _wrap(self, rows):
        M = np.empty((self.dim, self.dim), dtype=object)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                M[i, j] = v
        return M

    def from_int(self, rows):
        of = self.R.of
        return self._wrap([[of(v) for v in row] for row in rows])

    def from_rows(self, rows):
        return self._wrap(rows)

    def to_rows(self, M):
        return tuple(tuple(row) for row in M)

    def mul(self, A, B):
        return A.dot(B)

    def eq(self, A, B):
        return bool((A == B).all())

    def neg(self, M):
        neg = self.R.neg
        return self._wrap([[neg(v) for v in row] for row in M])

    def scale(self, c, M):
        mul = self.R.mul
        return self._wrap([[mul(c, v) for v in row] for row in M])

    def poly(self, int_pows, t):
        R = self.R
        tks = [R.one]
        for _ in range(len(int_pows) - 1):
            tks.append(R.mul(tks[-1], t))
        rows = []
        for i in range(self.dim):
            row = []
            for j in range(self.dim):
                acc = R.zero
                for k, P in enumerate(int_pows):
                    v = int(P[i][j]) if not hasattr(P, "shape") else int(P[i, j])
                    if v:
                        acc = R.add(acc, R.mul(tks[k], R.of(v)))
                row.append(acc)
            rows.append(row)
        return self._wrap(rows)


class BoolSpace(MatSpace):
    """F_2^k componentwise; a matrix is a tuple of k mod-2 matrices."""

    def __init__(self, R: Bool2k, dim):
        super().__init__(R, dim)
        self.k = R.k
        self.comp = NumpyModSpace(FieldP(2), dim)

    def identity(self):
        return tuple(self.comp.identity() for _ in range(self.k))

    def from_int(self, rows):
        M = self.comp.from_int(rows)
        return tuple(M.copy() for _ in range(self.k))

    def from_rows(self, rows):
        return tuple(
            self.comp.from_int([[(v >> i) & 1 for v in row] for row in rows])
            for i in range(self.k))

    def to_rows(self, M):
        out = [[0] * self.dim for _ in range(self.dim)]
        for i, comp in enumerate(M):
            for r in range(self.dim):
                for c in range(self.dim):
                    out[r][c] |= int(comp[r, c]) << i
        return tuple(tuple(row) for row in out)

    def mul(self, A, B):
        return tuple(self.comp.mul(a, b) for a, b in zip(A, B))

    def eq(self, A, B):
        return all(self.comp.eq(a, b) for a, b in zip(A, B))

    def neg(self, M):
        return M

    def scale(self, c, M):
        return tuple(self.comp.scale((c >> i) & 1, comp)
                     for i, comp in enumerate(M))

    def poly(self, int_pows, t):
        return tuple(self.comp.poly(int_pows, (t >> i) & 1)
                     for i in range(self.k))


_SPACES = {}


def mat_space(R: Ring, dim: int) -> MatSpace:
    key = (R, dim)
    if key not in _SPACES:
        if isinstance(R, (Zmod, FieldP)):
            # keep sums dim * (n-1)^2 safely inside int64
            if dim * (R.n - 1) ** 2 < 2 ** 62:
                _SPACES[key] = NumpyModSpace(R, dim)
            else:
                _SPACES[key] = ObjectSpace(R, dim)
        elif isinstance(R, Bool2k):
            _SPACES[key] = BoolSpace(R, dim)
        elif isinstance(R, (IntRing, RatRing)):
            _SPACES[key] = ObjectSpace(R, dim)
        else:
            _SPACES[key] = ObjectSpace(R, dim)
    return _SPACES[key]


def int_matmul(A, B):
    """Exact product of integer matrices (numpy int64, overflow-checked)."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    # crude a-priori bound keeps every dot product inside int64
    bound = A.shape[1] * int(np.abs(A).max(initial=0)) * int(np.abs(B).max(initial=0))
    assert bound < 2 ** 62
    return A @ B
