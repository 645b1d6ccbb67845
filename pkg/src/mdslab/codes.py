"""Linear-code core: duals, distances, classification, GRS and Schur machinery.

Minimum distance is exact brute force over the q^k message space (chunked,
table-driven numpy), which is the honest oracle at desk scale; the cap
ENUMERATION_CAP is enforced, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .gf import Field, FieldMismatchError
from .linalg import Matrix, nullspace, power_matrix, require_distinct, rref

ENUMERATION_CAP = 1 << 24

MDS = "MDS"
NMDS = "NMDS"
AMDS_ONLY_PRIMAL = "AMDS_only_primal"
AMDS_ONLY_DUAL = "AMDS_only_dual"
OTHER = "Other"

CONSISTENT_WITH_GRS = "ConsistentWithGRS"
NON_GRS = "NonGRS"
INCONCLUSIVE = "Inconclusive"


class RankDeficientError(ValueError):
    """Generator rows are linearly dependent."""


class TooLargeToEnumerateError(ValueError):
    """Brute-force enumeration would exceed ENUMERATION_CAP messages."""


class LengthMismatchError(ValueError):
    pass


class ZeroScaleError(ValueError):
    """A column multiplier is zero."""


class BadDimensionError(ValueError):
    """Dimension out of range for the requested operation."""


class ZeroExtensionVectorError(ValueError):
    pass


class LinearCode:
    """[N, k] code over GF(q), held as a validated full-row-rank generator."""

    def __init__(self, generator: Matrix):
        if generator.nrows < 1:
            raise BadDimensionError("a code needs at least one generator row")
        R, rk, _ = rref(generator)
        if rk != generator.nrows:
            raise RankDeficientError(
                f"generator has rank {rk} but {generator.nrows} rows")
        self.generator = generator
        self.rref_generator = R  # canonical; the equality witness
        self.field = generator.field
        self.length = generator.ncols
        self.dimension = generator.nrows

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable[int]]) -> "LinearCode":
        return cls(Matrix(field, rows))

    def __repr__(self) -> str:
        return (f"LinearCode([{self.length},{self.dimension}] "
                f"over {self.field.spec_string()})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        if self.field != other.field:
            return False
        return codes_equal(self, other)

    def __hash__(self) -> int:
        return hash(self.rref_generator)

    @cached_property
    def dual(self) -> "LinearCode":
        """[N, N-k] orthogonal code; needs k < N."""
        if self.dimension == self.length:
            raise BadDimensionError("dual of the full space is zero-dimensional")
        return LinearCode(nullspace(self.generator))

    @cached_property
    def min_distance(self) -> int:
        return _min_weight(self.field, self.generator.a)

    def singleton_defect(self) -> int:
        return self.length - self.dimension + 1 - self.min_distance


def _min_weight(field: Field, G: np.ndarray) -> int:
    """Minimum Hamming weight over all nonzero messages, chunked enumeration."""
    k, N = G.shape
    q = field.q
    total = q**k
    if total > ENUMERATION_CAP:
        raise TooLargeToEnumerateError(
            f"message space {q}^{k} exceeds the enumeration cap 2^24")
    add, mul = field.add_table, field.mul_table
    radix = [q**r for r in range(k)]
    best = N
    chunk = 1 << 16
    for lo in range(1, total, chunk):
        hi = min(lo + chunk, total)
        idx = np.arange(lo, hi, dtype=np.int64)
        words = np.zeros((hi - lo, N), dtype=np.int16)
        for r in range(k):
            digit = (idx // radix[r]) % q
            words = add[words, mul[digit[:, None], G[r][None, :]]]
        w = int(np.count_nonzero(words, axis=1).min())
        if w < best:
            best = w
            if best == 1:
                break
    return best


def codes_equal(c1: LinearCode, c2: LinearCode) -> bool:
    """Same row space, decided by canonical RREF equality."""
    if c1.field != c2.field:
        raise FieldMismatchError("codes live over different fields")
    return c1.rref_generator == c2.rref_generator


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    kind: str
    singleton_defect: int
    dual_defect: int
    min_distance: int
    dual_min_distance: int


def classify(code: LinearCode) -> Classification:
    """Singleton-defect classification of code and dual; needs 1 <= k <= N-1."""
    if code.dimension == code.length:
        raise BadDimensionError(
            "classification needs a nonzero dual (dimension < length)")
    d = code.min_distance
    dd = code.dual.min_distance
    s = code.length - code.dimension + 1 - d
    sd = code.dimension + 1 - dd
    if s == 0:
        kind = MDS
    elif s == 1 and sd == 1:
        kind = NMDS
    elif s == 1:
        kind = AMDS_ONLY_PRIMAL
    elif sd == 1:
        kind = AMDS_ONLY_DUAL
    else:
        kind = OTHER
    return Classification(kind, s, sd, d, dd)


def classification_json(code: LinearCode, cls: Classification | None = None) -> dict:
    cls = cls or classify(code)
    return {
        "length": code.length,
        "dimension": code.dimension,
        "min_distance": cls.min_distance,
        "dual_min_distance": cls.dual_min_distance,
        "singleton_defect": cls.singleton_defect,
        "dual_defect": cls.dual_defect,
        "class": cls.kind,
    }


# ---------------------------------------------------------------------------
# GRS codes and Schur products
# ---------------------------------------------------------------------------

def grs_code(field: Field, alphas: Sequence[int], v: Sequence[int], k: int) -> LinearCode:
    """Evaluation code of polynomials of degree < k, columns scaled by v."""
    pts = require_distinct(alphas)
    n = len(pts)
    if len(v) != n:
        raise LengthMismatchError(f"{n} points but {len(v)} column multipliers")
    if any(x == 0 for x in v):
        raise ZeroScaleError("column multipliers must be nonzero")
    if not 1 <= k <= n:
        raise BadDimensionError(f"need 1 <= k <= n, got k={k}, n={n}")
    P = power_matrix(field, pts, range(k))
    vrow = np.asarray([field.check(x) for x in v], dtype=np.int16)
    G = field.mul_table[P.a, vrow[None, :]]
    return LinearCode(Matrix(field, G))


def schur_product(c1: LinearCode, c2: LinearCode) -> LinearCode:
    """Span of all componentwise products of basis rows, rank-reduced."""
    if c1.field != c2.field:
        raise FieldMismatchError("Schur product needs a common field")
    if c1.length != c2.length:
        raise LengthMismatchError(
            f"Schur product needs equal lengths, got {c1.length} and {c2.length}")
    f = c1.field
    b1 = c1.rref_generator.a
    b2 = c2.rref_generator.a
    prods = f.mul_table[b1[:, None, :], b2[None, :, :]].reshape(-1, c1.length)
    R, rk, _ = rref(Matrix(f, prods))
    if rk == 0:
        raise BadDimensionError("Schur product is the zero code")
    return LinearCode(Matrix(f, R.a[:rk]))


def schur_square(code: LinearCode) -> LinearCode:
    return schur_product(code, code)


@dataclass(frozen=True)
class GrsReport:
    verdict: str  # ConsistentWithGRS | NonGRS | Inconclusive
    method: str   # SquareDimension | DualSquareDistance | NotApplicable
    evidence: int | None

    def to_json(self) -> dict:
        return {"method": self.method, "evidence": self.evidence, "verdict": self.verdict}


def grs_consistency_test(code: LinearCode) -> GrsReport:
    """One-directional GRS screen via Schur-square invariants.

    A GRS code of length N and dimension k with 3 <= k < (N+1)/2 has square
    dimension exactly 2k-1, and its square has distance >= 2; duals of GRS
    codes are GRS, so the same applies through the dual when its dimension is
    in range.  A violated invariant certifies NonGRS (up to monomial
    equivalence); a satisfied one is only ConsistentWithGRS, never proof.
    """
    N, k = code.length, code.dimension
    if 3 <= k and 2 * k < N + 1:
        dim2 = schur_square(code).dimension
        verdict = CONSISTENT_WITH_GRS if dim2 == 2 * k - 1 else NON_GRS
        return GrsReport(verdict, "SquareDimension", dim2)
    kd = N - k
    if 3 <= kd and 2 * kd < N + 1:
        sq = schur_square(code.dual)
        # the full space contains weight-1 words; skip the enumeration
        d2 = 1 if sq.dimension == sq.length else sq.min_distance
        verdict = NON_GRS if d2 < 2 else CONSISTENT_WITH_GRS
        return GrsReport(verdict, "DualSquareDistance", d2)
    return GrsReport(INCONCLUSIVE, "NotApplicable", None)


# ---------------------------------------------------------------------------
# extended codes
# ---------------------------------------------------------------------------

def extend_code(code: LinearCode, w: Sequence[int]) -> LinearCode:
    """Append the coordinate sum(w_i c_i); generator becomes (G | G w^T)."""
    wl = [code.field.check(x) for x in w]
    if len(wl) != code.length:
        raise LengthMismatchError(
            f"extension vector has length {len(wl)}, code has length {code.length}")
    if not any(wl):
        raise ZeroExtensionVectorError("extension vector must be nonzero")
    col = code.generator.matvec(wl)
    G = code.generator.hstack(Matrix(code.field, col.reshape(-1, 1)))
    return LinearCode(G)
