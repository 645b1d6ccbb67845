"""The gapped-evaluation code family and its subset-sum classification criteria.

The family under study evaluates the monomials x^0..x^(k-2), x^k (degree k-1
is skipped, hence "gapped") at n distinct nodes, scales columns by v, and
appends two tail columns; the last column carries the parameter delta.  Its
MDS / AMDS / NMDS behaviour is decided purely by subset sums of the node set,
and those predicates, with witness extraction, live here next to the builders.

Subset conventions: subsets are tuples of 0-based indices into the node list,
enumerated in lexicographic order, so every witness is deterministic.  The
quantity compared against delta for a subset S is (sum S)^2 - e2(S).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .gf import Field, parse_field
from .linalg import (
    Matrix,
    power_matrix,
    require_distinct,
    second_elementary_symmetric,
)
from .codes import (
    AMDS_ONLY_DUAL,
    AMDS_ONLY_PRIMAL,
    BadDimensionError,
    GrsReport,
    LengthMismatchError,
    LinearCode,
    MDS,
    NMDS,
    OTHER,
    ZeroScaleError,
    grs_consistency_test,
)


class EllOutOfRangeError(ValueError):
    """Power-sum exponent outside the closed-form range [0, n+1]."""


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EvalConfig:
    """Node set A, column multipliers v, dimension k, tail parameter delta."""

    field: Field
    alphas: tuple[int, ...]
    v: tuple[int, ...]
    k: int
    delta: int

    def __post_init__(self):
        f = self.field
        object.__setattr__(self, "alphas", tuple(f.check(a) for a in self.alphas))
        object.__setattr__(self, "v", tuple(f.check(x) for x in self.v))
        object.__setattr__(self, "delta", f.check(self.delta))
        require_distinct(self.alphas)
        if len(self.v) != len(self.alphas):
            raise LengthMismatchError(
                f"v has {len(self.v)} entries for {len(self.alphas)} nodes")
        if any(x == 0 for x in self.v):
            raise ZeroScaleError("v entries must be nonzero")
        if not 3 <= self.k <= len(self.alphas):
            raise BadDimensionError(
                f"need 3 <= k <= n, got k={self.k}, n={len(self.alphas)}")

    @property
    def n(self) -> int:
        return len(self.alphas)

    @classmethod
    def ones(cls, field: Field, alphas: Sequence[int], k: int, delta: int) -> "EvalConfig":
        return cls(field, tuple(alphas), (1,) * len(tuple(alphas)), k, delta)

    @classmethod
    def from_json(cls, obj: Mapping) -> "EvalConfig":
        def fail(key: str, why: str):
            raise ValueError(f"config field {key!r}: {why}")

        for key in ("field", "A", "k", "delta"):
            if key not in obj:
                fail(key, "missing")
        try:
            field = parse_field(obj["field"])
        except ValueError as e:
            fail("field", str(e))
        try:
            alphas = tuple(field.parse_element(a) for a in obj["A"])
        except ValueError as e:
            fail("A", str(e))
        vspec = obj.get("v", "ones")
        if vspec == "ones":
            v = (1,) * len(alphas)
        else:
            try:
                v = tuple(field.parse_element(x) for x in vspec)
            except ValueError as e:
                fail("v", str(e))
        if not isinstance(obj["k"], int):
            fail("k", f"expected an integer, got {obj['k']!r}")
        try:
            delta = field.parse_element(obj["delta"])
        except ValueError as e:
            fail("delta", str(e))
        return cls(field, alphas, v, obj["k"], delta)

    def to_json(self) -> dict:
        v = "ones" if all(x == 1 for x in self.v) else list(self.v)
        return {
            "field": self.field.spec_string(),
            "A": list(self.alphas),
            "v": v,
            "k": self.k,
            "delta": self.delta,
        }


# ---------------------------------------------------------------------------
# interpolation weights and power sums
# ---------------------------------------------------------------------------

def lagrange_weights(field: Field, alphas: Sequence[int]) -> tuple[int, ...]:
    """u_i = product over j != i of (alpha_i - alpha_j)^-1."""
    pts = require_distinct(alphas)
    if len(pts) < 2:
        raise ValueError("need at least two points")
    out = []
    for i, ai in enumerate(pts):
        prod = 1
        for j, aj in enumerate(pts):
            if j != i:
                prod = field.mul(prod, field.sub(ai, aj))
        out.append(field.inv(prod))
    return tuple(out)


def weighted_power_sum(field: Field, alphas: Sequence[int], ell: int) -> int:
    """Closed form of sum(u_i * alpha_i^ell) for 0 <= ell <= n+1.

    The weighted power sums telescope: 0 until ell = n-2, then 1, then the
    complete homogeneous sums h_1 = e1 and h_2 = e1^2 - e2.
    """
    pts = require_distinct(alphas)
    n = len(pts)
    if n < 3:
        raise ValueError("need at least three points")
    if not 0 <= ell <= n + 1:
        raise EllOutOfRangeError(f"exponent {ell} outside [0, {n + 1}]")
    if ell <= n - 2:
        return 0
    if ell == n - 1:
        return 1
    e1 = 0
    for a in pts:
        e1 = field.add(e1, a)
    if ell == n:
        return e1
    e2 = second_elementary_symmetric(field, pts)
    return field.sub(field.mul(e1, e1), e2)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def _scaled_power_rows(field: Field, alphas: Sequence[int], v: Sequence[int],
                       exponents: Sequence[int]) -> np.ndarray:
    P = power_matrix(field, alphas, exponents)
    vrow = np.asarray(v, dtype=np.int16)
    return field.mul_table[P.a, vrow[None, :]]


def _with_tail(field: Field, block: np.ndarray, tail: Sequence[Sequence[int]]) -> LinearCode:
    t = np.asarray(tail, dtype=np.int16)
    return LinearCode(Matrix(field, np.hstack([block, t])))


def family_code(cfg: EvalConfig) -> LinearCode:
    """The k x (n+2) gapped evaluation code with two tail columns.

    Rows are v_i alpha_i^r for r = 0..k-2 and r = k (no degree k-1 row); the
    tails put a 1 under the degree-(k-2) row in the last column, and (1, delta)
    under the degree-k row.  Parameters are [n+2, k] for every valid config.
    """
    f, k = cfg.field, cfg.k
    block = _scaled_power_rows(f, cfg.alphas, cfg.v, list(range(k - 1)) + [k])
    tail = [[0, 0]] * (k - 2) + [[0, 1], [1, cfg.delta]]
    return _with_tail(f, block, tail)


def grs_two_column_code(field: Field, alphas: Sequence[int], k: int, delta: int) -> LinearCode:
    """Full power ladder 0..k-1 plus the two tail columns; needs n >= k+1 >= 4."""
    pts = require_distinct(alphas)
    if not (k >= 3 and len(pts) >= k + 1):
        raise BadDimensionError(f"need 4 <= k+1 <= n, got k={k}, n={len(pts)}")
    block = _scaled_power_rows(field, pts, [1] * len(pts), range(k))
    tail = [[0, 0]] * (k - 2) + [[0, 1], [1, field.check(delta)]]
    return _with_tail(field, block, tail)


def grs_three_column_code(field: Field, alphas: Sequence[int], k: int,
                          delta: int, tau: int, pi: int) -> LinearCode:
    """Full power ladder plus three tail columns carrying delta, tau, pi."""
    pts = require_distinct(alphas)
    if not (k >= 3 and len(pts) >= k + 1):
        raise BadDimensionError(f"need 4 <= k+1 <= n, got k={k}, n={len(pts)}")
    block = _scaled_power_rows(field, pts, [1] * len(pts), range(k))
    tail = [[0, 0, 0]] * (k - 3) + [
        [0, 0, 1],
        [0, 1, field.check(tau)],
        [1, field.check(delta), field.check(pi)],
    ]
    return _with_tail(field, block, tail)


def gapped_grs_code(field: Field, alphas: Sequence[int], k: int) -> LinearCode:
    """Powers 0..k-2 and k, no tail columns; the bare degree-gapped code."""
    pts = require_distinct(alphas)
    if not 3 <= k <= len(pts):
        raise BadDimensionError(f"need 3 <= k <= n, got k={k}, n={len(pts)}")
    block = _scaled_power_rows(field, pts, [1] * len(pts), list(range(k - 1)) + [k])
    return LinearCode(Matrix(field, block))


def gapped_grs_one_column_code(field: Field, alphas: Sequence[int], k: int) -> LinearCode:
    """Gapped code with a single indicator tail column under the top row."""
    pts = require_distinct(alphas)
    if not 3 <= k <= len(pts):
        raise BadDimensionError(f"need 3 <= k <= n, got k={k}, n={len(pts)}")
    block = _scaled_power_rows(field, pts, [1] * len(pts), list(range(k - 1)) + [k])
    tail = [[0]] * (k - 1) + [[1]]
    return _with_tail(field, block, tail)


def extension_vector(cfg: EvalConfig) -> tuple[int, ...]:
    """Weight vector w turning the one-tail code into the two-tail family.

    w_i = alpha_i^(n-k+1) u_i on the nodes; the last entry is
    delta - e1^2 + e2.  Guarantee (tested): extending the one-tail code by w
    reproduces family_code(cfg) whenever v is all ones.
    """
    f, pts, k = cfg.field, cfg.alphas, cfg.k
    n = len(pts)
    u = lagrange_weights(f, pts)
    w = [f.mul(f.pow(a, n - k + 1), ui) for a, ui in zip(pts, u)]
    e1 = 0
    for a in pts:
        e1 = f.add(e1, a)
    e2 = second_elementary_symmetric(f, pts)
    w.append(f.add(f.sub(cfg.delta, f.mul(e1, e1)), e2))
    return tuple(w)


def parity_check_matrix(cfg: EvalConfig) -> Matrix:
    """Explicit (n-k+2) x (n+2) parity-check matrix of family_code(cfg).

    Rows are power rows of the nodes weighted by u_i / v_i; the two structural
    columns hold -1 at power n-k-1 (absent when k = n), -e1 at power n-k,
    delta + e2 - e1^2 at power n-k+1, and a lone -1 in the corner.
    """
    f, pts, k = cfg.field, cfg.alphas, cfg.k
    n = len(pts)
    u = lagrange_weights(f, pts)
    vprime = [f.mul(ui, f.inv(vi)) for ui, vi in zip(u, cfg.v)]
    rows = n - k + 2
    block = _scaled_power_rows(f, pts, vprime, range(rows))
    e1 = 0
    for a in pts:
        e1 = f.add(e1, a)
    e2 = second_elementary_symmetric(f, pts)
    tail = np.zeros((rows, 2), dtype=np.int16)
    if n - k - 1 >= 0:
        tail[n - k - 1, 0] = f.neg(1)
    tail[n - k, 0] = f.neg(e1)
    tail[n - k + 1, 0] = f.add(f.sub(cfg.delta, f.mul(e1, e1)), e2)
    tail[n - k + 1, 1] = f.neg(1)
    return Matrix(f, np.hstack([block, tail]))


# ---------------------------------------------------------------------------
# subset-sum predicates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CriterionReport:
    criterion: str
    holds: bool
    witness: tuple[int, ...] | None = None
    clause: str | None = None

    def to_json(self) -> dict:
        w = None
        if self.witness is not None:
            w = {"indices": list(self.witness), "clause": self.clause}
        return {"criterion": self.criterion, "holds": self.holds, "witness": w}


ZERO_SUM_CLAUSE = "zero_sum_k"
DELTA_CLAUSE = "delta_match_k_minus_1"


@lru_cache(maxsize=65536)
def _subset_sums(field: Field, alphas: tuple[int, ...], t: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """All (index tuple, subset sum) pairs for size-t subsets, lex order."""
    out = []
    for idxs in itertools.combinations(range(len(alphas)), t):
        s = 0
        for i in idxs:
            s = field.add(s, alphas[i])
        out.append((idxs, s))
    return tuple(out)


@lru_cache(maxsize=65536)
def _subset_delta_values(field: Field, alphas: tuple[int, ...], t: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """All (index tuple, e1^2 - e2) pairs for size-t subsets, lex order."""
    out = []
    for idxs, s in _subset_sums(field, alphas, t):
        vals = [alphas[i] for i in idxs]
        e2 = second_elementary_symmetric(field, vals)
        out.append((idxs, field.sub(field.mul(s, s), e2)))
    return tuple(out)


def avoids_subset_sum(field: Field, alphas: Sequence[int], t: int, delta: int) -> CriterionReport:
    """Does no size-t subset of the nodes sum to delta?"""
    pts = require_distinct(alphas)
    if not 1 <= t <= len(pts):
        raise ValueError(f"subset size {t} outside [1, {len(pts)}]")
    for idxs, s in _subset_sums(field, pts, t):
        if s == delta:
            return CriterionReport("avoids_subset_sum", False, idxs, "subset_sum")
    return CriterionReport("avoids_subset_sum", True)


def is_zero_sum_free(field: Field, alphas: Sequence[int], t: int) -> CriterionReport:
    rep = avoids_subset_sum(field, alphas, t, 0)
    return CriterionReport("zero_sum_free", rep.holds, rep.witness, rep.clause)


def contains_zero_sum(field: Field, alphas: Sequence[int], t: int) -> CriterionReport:
    rep = avoids_subset_sum(field, alphas, t, 0)
    clause = "subset_sum" if rep.witness is not None else None
    return CriterionReport("contains_zero_sum", not rep.holds, rep.witness, clause)


# ---------------------------------------------------------------------------
# the four classification criteria
# ---------------------------------------------------------------------------

def mds_criterion(cfg: EvalConfig) -> CriterionReport:
    """MDS iff no size-k subset sums to 0 and no size-(k-1) subset matches delta.

    Clause one is scanned before clause two; the witness of a failure is the
    lexicographically first violating subset of the violating clause.
    """
    f, pts, k = cfg.field, cfg.alphas, cfg.k
    for idxs, s in _subset_sums(f, pts, k):
        if s == 0:
            return CriterionReport("mds", False, idxs, ZERO_SUM_CLAUSE)
    for idxs, qv in _subset_delta_values(f, pts, k - 1):
        if qv == cfg.delta:
            return CriterionReport("mds", False, idxs, DELTA_CLAUSE)
    return CriterionReport("mds", True)


def dual_amds_criterion(cfg: EvalConfig) -> CriterionReport:
    """Dual is AMDS iff some size-k subset sums to 0 or some size-(k-1) subset
    matches delta; the witness is the first satisfying subset (zero-sum family
    scanned first)."""
    f, pts, k = cfg.field, cfg.alphas, cfg.k
    for idxs, s in _subset_sums(f, pts, k):
        if s == 0:
            return CriterionReport("dual_amds", True, idxs, ZERO_SUM_CLAUSE)
    for idxs, qv in _subset_delta_values(f, pts, k - 1):
        if qv == cfg.delta:
            return CriterionReport("dual_amds", True, idxs, DELTA_CLAUSE)
    return CriterionReport("dual_amds", False)


def _amds_nmds_shared(cfg: EvalConfig) -> CriterionReport:
    """Shared body of the AMDS and NMDS criteria: U1 and U2 and (E1 or E2).

    U1: every size-(k+1) subset has a size-k subset with nonzero sum.
    U2: every size-k subset has a size-(k-1) subset not matching delta.
    E1/E2: as in the dual criterion.  Universals over empty families (k+1 > n)
    are vacuously true.  The amds and nmds conditions reduce to the same
    clauses for this family, which is why the two public criteria coincide.
    """
    f, pts, k = cfg.field, cfg.alphas, cfg.k
    n = len(pts)
    sums_k = dict(_subset_sums(f, pts, k))
    if k + 1 <= n:
        for big in itertools.combinations(range(n), k + 1):
            if all(sums_k[j] == 0 for j in itertools.combinations(big, k)):
                return CriterionReport("", False, big, "all_k_subsets_sum_zero")
    qvals = dict(_subset_delta_values(f, pts, k - 1))
    for big in itertools.combinations(range(n), k):
        if all(qvals[j] == cfg.delta for j in itertools.combinations(big, k - 1)):
            return CriterionReport("", False, big, "all_k_minus_1_subsets_match_delta")
    for idxs, s in _subset_sums(f, pts, k):
        if s == 0:
            return CriterionReport("", True, idxs, ZERO_SUM_CLAUSE)
    for idxs, qv in _subset_delta_values(f, pts, k - 1):
        if qv == cfg.delta:
            return CriterionReport("", True, idxs, DELTA_CLAUSE)
    return CriterionReport("", False)


def amds_criterion(cfg: EvalConfig) -> CriterionReport:
    rep = _amds_nmds_shared(cfg)
    return CriterionReport("amds", rep.holds, rep.witness, rep.clause)


def nmds_criterion(cfg: EvalConfig) -> CriterionReport:
    rep = _amds_nmds_shared(cfg)
    return CriterionReport("nmds", rep.holds, rep.witness, rep.clause)


def criteria_class(cfg: EvalConfig) -> str:
    """Code class predicted from the subset-sum criteria alone.

    mds/amds/dual_amds decide the Singleton defects of code and dual without
    building anything, so this is the subset-sum route to the same label
    classify(family_code(cfg)) computes by enumeration.
    """
    if mds_criterion(cfg).holds:
        return MDS
    if amds_criterion(cfg).holds:
        return NMDS if dual_amds_criterion(cfg).holds else AMDS_ONLY_PRIMAL
    return AMDS_ONLY_DUAL if dual_amds_criterion(cfg).holds else OTHER


def non_grs_certificate(cfg: EvalConfig) -> GrsReport:
    """Schur screen of the family member; NonGRS expected in both regimes."""
    return grs_consistency_test(family_code(cfg))
