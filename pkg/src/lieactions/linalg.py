"""Exact linear algebra over the rationals.

All invariant computations in this package reduce to row reduction,
kernels and subspace arithmetic over Q. Everything here is exact:
no floats, no thresholds. Matrices and subspaces are immutable, and
subspaces are kept in canonical reduced row-echelon form so that
equality of subspaces is equality of representations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "RatMatrix",
    "Subspace",
    "rref",
    "nullspace",
    "subspace_sum",
    "subspace_intersection",
    "solve",
]


def as_rational(x) -> Fraction:
    """Coerce ints, strings like '2/3', and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def rational_vector(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_rational(x) for x in xs)


class RatMatrix:
    """Immutable matrix with Fraction entries, stored row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Sequence[Sequence]) -> None:
        self._data = tuple(rational_vector(row) for row in data)
        self.rows = len(self._data)
        self.cols = len(self._data[0]) if self._data else 0
        if any(len(r) != self.cols for r in self._data):
            raise ValueError("ragged rows")

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return RatMatrix([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "RatMatrix":
        z = Fraction(0)
        return RatMatrix([[z] * cols for _ in range(rows)])

    @staticmethod
    def from_flat(rows: int, cols: int, flat: Sequence) -> "RatMatrix":
        if len(flat) != rows * cols:
            raise ValueError("flat length mismatch")
        return RatMatrix([flat[i * cols:(i + 1) * cols] for i in range(rows)])

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._data)

    def entry(self, i: int, j: int) -> Fraction:
        return self._data[i][j]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def flat(self) -> tuple[Fraction, ...]:
        return tuple(x for r in self._data for x in r)

    def transpose(self) -> "RatMatrix":
        return RatMatrix([self.column(j) for j in range(self.cols)])

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._data == other._data
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._data, other._data)]
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._data, other._data)]
        )

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([[-a for a in r] for r in self._data])

    def scale(self, c) -> "RatMatrix":
        c = as_rational(c)
        return RatMatrix([[c * a for a in r] for r in self._data])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = [other.column(j) for j in range(other.cols)]
        return RatMatrix(
            [[_dot(r, c) for c in cols] for r in self._data]
        )

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        """Matrix times column vector."""
        vv = rational_vector(v)
        if len(vv) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(_dot(r, vv) for r in self._data)

    def commutator(self, other: "RatMatrix") -> "RatMatrix":
        return (self @ other) - (other @ self)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        return sum((self._data[i][i] for i in range(self.rows)), Fraction(0))

    def rref(self) -> "RatMatrix":
        reduced, _ = _rref_with_pivots(self._data, self.cols)
        z = [Fraction(0)] * self.cols
        out = reduced + [z] * (self.rows - len(reduced))
        return RatMatrix(out)

    def rank(self) -> int:
        _, pivots = _rref_with_pivots(self._data, self.cols)
        return len(pivots)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"RatMatrix({self.rows}x{self.cols}: {body})"

    def _check_same_shape(self, other: "RatMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for x, y in zip(a, b):
        if x and y:
            total += x * y
    return total


def _rref_with_pivots(
    data: Sequence[Sequence[Fraction]], ncols: int
) -> tuple[list[list[Fraction]], list[int]]:
    """Canonical RREF of the nonzero part.

    Forward pass is fraction-free on integer-scaled rows (with gcd
    reduction to limit growth); the short backward pass normalizes
    pivots to 1 over Q. Returns (nonzero reduced rows, pivot columns).
    """
    int_rows: list[list[int]] = []
    for row in data:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        if any(ints):
            int_rows.append(ints)

    pivots: list[int] = []
    echelon: list[list[int]] = []
    rows = int_rows
    col = 0
    while rows and col < ncols:
        pivot_idx = None
        best = None
        for idx, r in enumerate(rows):
            v = r[col]
            if v != 0 and (best is None or abs(v) < best):
                best = abs(v)
                pivot_idx = idx
                if best == 1:
                    break
        if pivot_idx is None:
            col += 1
            continue
        prow = rows.pop(pivot_idx)
        p = prow[col]
        nxt = []
        for r in rows:
            v = r[col]
            if v == 0:
                nxt.append(r)
                continue
            new = [p * a - v * b for a, b in zip(r, prow)]
            g = 0
            for x in new:
                g = gcd(g, x)
            if g > 1:
                new = [x // g for x in new]
            if any(new):
                nxt.append(new)
        echelon.append(prow)
        pivots.append(col)
        rows = nxt
        col += 1

    # backward pass over at most ncols rows, exact rationals
    frac_rows = [[Fraction(x) for x in r] for r in echelon]
    for t in range(len(pivots) - 1, -1, -1):
        c = pivots[t]
        p = frac_rows[t][c]
        if p != 1:
            frac_rows[t] = [x / p for x in frac_rows[t]]
        prow = frac_rows[t]
        for s in range(t):
            f = frac_rows[s][c]
            if f:
                frac_rows[s] = [a - f * b for a, b in zip(frac_rows[s], prow)]
    return frac_rows, pivots


def rref(m: RatMatrix) -> RatMatrix:
    """Canonical reduced row-echelon form (same shape, same row space)."""
    return m.rref()


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n, represented by its canonical RREF basis.

    The basis matrix has one row per basis vector and no zero rows, so
    two subspaces are equal iff their representations are equal.
    """

    ambient_dim: int
    basis: RatMatrix

    @staticmethod
    def span(vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vecs = [rational_vector(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("vector length != ambient dimension")
        if not vecs:
            return Subspace(ambient_dim, RatMatrix.zeros(0, ambient_dim))
        reduced, _ = _rref_with_pivots(vecs, ambient_dim)
        return Subspace(ambient_dim, RatMatrix(reduced) if reduced else RatMatrix.zeros(0, ambient_dim))

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, RatMatrix.zeros(0, ambient_dim))

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, RatMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def is_zero(self) -> bool:
        return self.dim == 0

    def basis_vectors(self) -> list[tuple[Fraction, ...]]:
        return [self.basis.row(i) for i in range(self.basis.rows)]

    def contains(self, x: Sequence) -> bool:
        """Exact membership test by reduction against the RREF basis."""
        v = list(rational_vector(x))
        if len(v) != self.ambient_dim:
            raise ValueError("vector length != ambient dimension")
        for i in range(self.basis.rows):
            row = self.basis.row(i)
            piv = _pivot_col(row)
            coef = v[piv]
            if coef:
                for j in range(self.ambient_dim):
                    v[j] -= coef * row[j]
        return all(c == 0 for c in v)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(self.contains(b) for b in other.basis_vectors())

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")

    def annihilator_matrix(self) -> RatMatrix:
        """Matrix A with kernel(A) = self (rows span the dual constraints)."""
        if self.dim == 0:
            return RatMatrix.identity(self.ambient_dim)
        ker = nullspace(self.basis)
        if ker.dim == 0:
            return RatMatrix.zeros(0, self.ambient_dim)
        return ker.basis

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"


def _pivot_col(row: Sequence[Fraction]) -> int:
    for j, x in enumerate(row):
        if x != 0:
            return j
    raise ValueError("zero row has no pivot")


def nullspace(m: RatMatrix) -> Subspace:
    """Kernel {x : m @ x = 0} with canonical basis."""
    reduced, pivots = _rref_with_pivots(m._data, m.cols)
    free = [j for j in range(m.cols) if j not in pivots]
    vecs = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for t, p in enumerate(pivots):
            v[p] = -reduced[t][f]
        vecs.append(v)
    return Subspace.span(vecs, m.cols)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    """Span of the union of two subspaces of the same ambient space."""
    u._check_ambient(v)
    return Subspace.span(u.basis_vectors() + v.basis_vectors(), u.ambient_dim)


def subspace_intersection(u: Subspace, v: Subspace) -> Subspace:
    """Intersection via the kernel of the stacked constraint system."""
    u._check_ambient(v)
    au = u.annihilator_matrix()
    av = v.annihilator_matrix()
    stacked = RatMatrix(list(au._data) + list(av._data)) if (au.rows + av.rows) else RatMatrix.zeros(0, u.ambient_dim)
    if stacked.rows == 0:
        return Subspace.full(u.ambient_dim)
    return nullspace(stacked)


def solve(a: RatMatrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One exact solution of a @ x = b, or None if inconsistent.

    Free variables are set to zero.
    """
    bb = rational_vector(b)
    if len(bb) != a.rows:
        raise ValueError("rhs length mismatch")
    aug = [list(a.row(i)) + [bb[i]] for i in range(a.rows)]
    reduced, pivots = _rref_with_pivots(aug, a.cols + 1)
    if a.cols in pivots:
        return None
    x = [Fraction(0)] * a.cols
    for t, p in enumerate(pivots):
        x[p] = reduced[t][a.cols]
    return tuple(x)
