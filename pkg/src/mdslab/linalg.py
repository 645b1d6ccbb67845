"""Dense exact linear algebra over GF(q).

Everything here is small and dense (generator and parity-check matrices of
desk-scale codes, at most a few dozen rows or columns), so the implementation
is plain Gauss-Jordan with exact field inverses, vectorized row-wise through
the field's lookup tables.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .gf import Field, FieldMismatchError


class NotSquareError(ValueError):
    """Determinant requested for a non-square matrix."""


class DuplicatePointsError(ValueError):
    """Evaluation points are required to be pairwise distinct."""


def require_distinct(points: Sequence[int]) -> tuple[int, ...]:
    pts = tuple(int(a) for a in points)
    if len(set(pts)) != len(pts):
        raise DuplicatePointsError(f"evaluation points are not distinct: {pts}")
    return pts


class Matrix:
    """Immutable matrix over a Field; entries are element indices (int16)."""

    __slots__ = ("field", "a")

    def __init__(self, field: Field, rows: Iterable[Iterable[int]] | np.ndarray):
        a = np.array(rows, dtype=np.int16)
        if a.ndim != 2:
            raise ValueError(f"matrix data must be two-dimensional, got shape {a.shape}")
        if a.shape[1] < 1:
            raise ValueError("matrix must have at least one column")
        if a.size and (int(a.min()) < 0 or int(a.max()) >= field.q):
            raise ValueError(f"entry out of range for {field.spec_string()}")
        a.flags.writeable = False
        self.field = field
        self.a = a

    # -- basics --------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    @property
    def nrows(self) -> int:
        return self.a.shape[0]

    @property
    def ncols(self) -> int:
        return self.a.shape[1]

    def row(self, i: int) -> np.ndarray:
        return self.a[i]

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in r] for r in self.a]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.a.shape == other.a.shape \
            and bool(np.array_equal(self.a, other.a))

    def __hash__(self) -> int:
        return hash((self.field, self.a.shape, self.a.tobytes()))

    def __repr__(self) -> str:
        return f"Matrix({self.field.spec_string()}, {self.format()!r})"

    def _check_same_field(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise FieldMismatchError(
                f"mixed fields {self.field.spec_string()} and {other.field.spec_string()}")

    # -- algebra -------------------------------------------------------------

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.a.T)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check_same_field(other)
        if self.nrows != other.nrows:
            raise ValueError("row counts differ")
        return Matrix(self.field, np.hstack([self.a, other.a]))

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check_same_field(other)
        if self.ncols != other.ncols:
            raise ValueError("column counts differ")
        return Matrix(self.field, np.vstack([self.a, other.a]))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_same_field(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        add, mul = self.field.add_table, self.field.mul_table
        out = np.zeros((self.nrows, other.ncols), dtype=np.int16)
        for j in range(self.ncols):
            out = add[out, mul[self.a[:, j][:, None], other.a[j][None, :]]]
        return Matrix(self.field, out)

    def matvec(self, w: Sequence[int]) -> np.ndarray:
        """Right product G @ w as a length-nrows vector."""
        col = Matrix(self.field, np.asarray(w, dtype=np.int16).reshape(-1, 1))
        return (self @ col).a[:, 0].copy()

    # -- text form -----------------------------------------------------------

    def format(self, style: str = "auto") -> str:
        """Rows joined by ';', entries by ',', in the field's element notation."""
        fmt = self.field.format_element
        return ";".join(",".join(fmt(int(x), style) for x in row) for row in self.a)

    @classmethod
    def parse(cls, field: Field, text: str) -> "Matrix":
        rows = []
        for chunk in text.strip().split(";"):
            literals = [e.strip() for e in chunk.split(",")]
            if not literals or any(lit == "" for lit in literals):
                raise ValueError(f"empty entry in matrix row {chunk!r}")
            rows.append([field.parse_element(lit) for lit in literals])
        if len({len(r) for r in rows}) != 1:
            raise ValueError("ragged rows in matrix text")
        return cls(field, rows)


def identity(field: Field, n: int) -> Matrix:
    return Matrix(field, np.eye(n, dtype=np.int16))


def power_matrix(field: Field, points: Sequence[int], exponents: Sequence[int]) -> Matrix:
    """Rows (alpha_1^e, ..., alpha_n^e) for each exponent e; 0^0 = 1."""
    rows = [[field.pow(a, e) for a in points] for e in exponents]
    return Matrix(field, rows)


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def _rref_inplace(field: Field, a: np.ndarray) -> tuple[int, ...]:
    mul, sub, inv = field.mul_table, field.sub_table, field.inv_table
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = mul[a[r], inv[a[r, c]]]
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            f = a[others, c]
            a[others] = sub[a[others], mul[f[:, None], a[r][None, :]]]
        pivots.append(c)
        r += 1
    return tuple(pivots)


def rref(M: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Canonical reduced row echelon form; returns (R, rank, pivot columns)."""
    a = M.a.copy()
    pivots = _rref_inplace(M.field, a)
    return Matrix(M.field, a), len(pivots), pivots


def rank(M: Matrix) -> int:
    a = M.a.copy()
    return len(_rref_inplace(M.field, a))


def det(M: Matrix) -> int:
    """Determinant by elimination with row-swap sign tracking."""
    if M.nrows != M.ncols:
        raise NotSquareError(f"determinant of a {M.nrows}x{M.ncols} matrix")
    f = M.field
    mul, sub, inv = f.mul_table, f.sub_table, f.inv_table
    a = M.a.copy()
    n = a.shape[0]
    swaps = 0
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            a[[c, i]] = a[[i, c]]
            swaps += 1
        below = c + 1 + np.nonzero(a[c + 1:, c])[0]
        if below.size:
            factors = mul[a[below, c], inv[a[c, c]]]
            a[below] = sub[a[below], mul[factors[:, None], a[c][None, :]]]
    d = 1
    for c in range(n):
        d = f.mul(d, int(a[c, c]))
    return f.neg(d) if swaps % 2 else d


def nullspace(M: Matrix) -> Matrix:
    """Basis of {x : M x^T = 0}, as rows; row count = cols - rank."""
    R, rk, pivots = rref(M)
    f = M.field
    cols = M.ncols
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int16)
    for bi, fc in enumerate(free):
        basis[bi, fc] = 1
        for ri, pc in enumerate(pivots):
            basis[bi, pc] = f.neg(int(R.a[ri, fc]))
    return Matrix(f, basis.reshape(len(free), cols))


def solve(M: Matrix, b: Sequence[int]) -> np.ndarray:
    """One solution x of M x^T = b (free variables set to 0)."""
    bvec = np.asarray(b, dtype=np.int16).reshape(-1, 1)
    if bvec.shape[0] != M.nrows:
        raise ValueError("right-hand side length mismatch")
    aug = np.hstack([M.a, bvec]).astype(np.int16)
    pivots = _rref_inplace(M.field, aug)
    if pivots and pivots[-1] == M.ncols:
        raise ValueError("inconsistent linear system")
    x = np.zeros(M.ncols, dtype=np.int16)
    for ri, pc in enumerate(pivots):
        x[pc] = aug[ri, -1]
    return x


# ---------------------------------------------------------------------------
# symmetric functions and the two Vandermonde-variant determinants
# ---------------------------------------------------------------------------

def second_elementary_symmetric(field: Field, values: Sequence[int]) -> int:
    """e2 = sum over i<j of a_i*a_j.

    In odd characteristic this is ((sum)^2 - sum of squares)/2; division by 2
    does not exist in characteristic 2, so there the pairwise sum is direct.
    """
    vals = [int(a) for a in values]
    if field.p == 2:
        e2 = 0
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                e2 = field.add(e2, field.mul(vals[i], vals[j]))
        return e2
    s = 0
    sq = 0
    for a in vals:
        s = field.add(s, a)
        sq = field.add(sq, field.mul(a, a))
    half = field.inv(field.add(1, 1))
    return field.mul(field.sub(field.mul(s, s), sq), half)


def _pairwise_difference_product(field: Field, points: Sequence[int]) -> int:
    out = 1
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            out = field.mul(out, field.sub(points[j], points[i]))
    return out


def vandermonde_det_skip_penultimate(field: Field, points: Sequence[int]) -> int:
    """det of the matrix with power rows 0..n-2 and n (the n-1 row dropped).

    Closed form: (sum of the points) times the pairwise difference product.
    """
    pts = require_distinct(points)
    if len(pts) < 3:
        raise ValueError(f"need at least 3 points, got {len(pts)}")
    s = 0
    for a in pts:
        s = field.add(s, a)
    return field.mul(s, _pairwise_difference_product(field, pts))


def vandermonde_det_skip_two(field: Field, points: Sequence[int]) -> int:
    """det of the matrix with power rows 0..n-2 and n+1 (rows n-1, n dropped).

    Closed form: ((sum)^2 - e2) times the pairwise difference product.
    """
    pts = require_distinct(points)
    if len(pts) < 3:
        raise ValueError(f"need at least 3 points, got {len(pts)}")
    s = 0
    for a in pts:
        s = field.add(s, a)
    coef = field.sub(field.mul(s, s), second_elementary_symmetric(field, pts))
    return field.mul(coef, _pairwise_difference_product(field, pts))
