"""Small immutable integer matrices over Z/n.

Chain complexes in this package live over Z/n with tiny ranks, so a plain
tuple-backed matrix is enough and keeps every value hashable. Kernel and
solve routines require a prime modulus.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ._hashing import cached_hash


@cached_hash
@dataclass(frozen=True)
class Mat:
    rows: int
    cols: int
    data: tuple[int, ...]
    mod: int

    @classmethod
    def of(cls, rows, mod: int, cols: int | None = None) -> "Mat":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        flat = tuple(int(v) % mod for r in rows for v in r)
        return cls(len(rows), cols, flat, mod)

    @classmethod
    def zeros(cls, rows: int, cols: int, mod: int) -> "Mat":
        return cls(rows, cols, (0,) * (rows * cols), mod)

    @classmethod
    def eye(cls, n: int, mod: int) -> "Mat":
        return cls(n, n, tuple(1 % mod if i == j else 0 for i in range(n) for j in range(n)), mod)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def _check(self, other: "Mat") -> None:
        if self.mod != other.mod:
            raise ValueError("modulus mismatch")

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Mat(self.rows, self.cols,
                   tuple((a + b) % self.mod for a, b in zip(self.data, other.data)), self.mod)

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, tuple((-a) % self.mod for a in self.data), self.mod)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        n, out = self.mod, []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                out.append(sum(r[k] * other.data[k * other.cols + j] for k in range(self.cols)) % n)
        return Mat(self.rows, other.cols, tuple(out), n)

    def is_zero(self) -> bool:
        return not any(self.data)

    @property
    def T(self) -> "Mat":
        return Mat(self.cols, self.rows,
                   tuple(self.data[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
                   self.mod)

    def __repr__(self) -> str:
        return f"Mat({self.tolist()}, mod={self.mod})"


def hstack(*blocks: Mat) -> Mat:
    rows = blocks[0].rows
    mod = blocks[0].mod
    if any(b.rows != rows for b in blocks):
        raise ValueError("hstack row mismatch")
    data = []
    for i in range(rows):
        for b in blocks:
            data.extend(b.row(i))
    return Mat(rows, sum(b.cols for b in blocks), tuple(data), mod)


def vstack(*blocks: Mat) -> Mat:
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise ValueError("vstack column mismatch")
    return Mat(sum(b.rows for b in blocks), cols,
               tuple(v for b in blocks for v in b.data), blocks[0].mod)


def block(grid: list[list[Mat]]) -> Mat:
    return vstack(*[hstack(*row) for row in grid])


def _rref(rows: list[list[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    rows = [r[:] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                k = rows[i][c]
                rows[i] = [(a - k * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def kernel(m: Mat) -> Mat:
    """Basis of the right null space, as the columns of the returned matrix."""
    p = m.mod
    red, pivots = _rref(m.tolist(), m.cols, p)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * m.cols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-red[i][fc]) % p
        basis.append(v)
    if not basis:
        return Mat.zeros(m.cols, 0, p)
    return Mat.of(basis, p).T


def rank(m: Mat) -> int:
    return len(_rref(m.tolist(), m.cols, m.mod)[1])


def solve(m: Mat, y: Mat) -> Mat | None:
    """Some X with m @ X == y, or None when the system is inconsistent."""
    p = m.mod
    if m.rows != y.rows:
        raise ValueError("solve: row mismatch")
    aug = [list(m.row(i)) + list(y.row(i)) for i in range(m.rows)]
    red, pivots = _rref(aug, m.cols, p)
    for i in range(len(pivots), len(red)):
        if any(red[i][m.cols:]):
            return None
    x = [[0] * y.cols for _ in range(m.cols)]
    for i, pc in enumerate(pivots):
        x[pc] = red[i][m.cols:]
    return Mat.of(x, p, cols=y.cols)


def all_matrices(rows: int, cols: int, mod: int):
    """Every rows x cols matrix over Z/mod, in lexicographic order of entries."""
    for flat in product(range(mod), repeat=rows * cols):
        yield Mat(rows, cols, flat, mod)
