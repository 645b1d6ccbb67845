"""Invariant sweeps: each suite replays one of the library's guarantees.

A suite walks its scope exhaustively, stops at the first counterexample, and
reports it as a reproducible JSON blob.  The default scope covers field orders
4, 5, 7, 8, 9 with node sets up to size 7 and k capped at 5; --quick trims to
orders 4, 5, 7 and size 5.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .gf import Field
from .linalg import (
    det,
    power_matrix,
    vandermonde_det_skip_penultimate,
    vandermonde_det_skip_two,
)
from .codes import (
    Classification,
    LinearCode,
    NMDS,
    NON_GRS,
    classify,
    codes_equal,
    extend_code,
    grs_code,
    schur_square,
)
from .construction import (
    EvalConfig,
    amds_criterion,
    dual_amds_criterion,
    extension_vector,
    family_code,
    gapped_grs_one_column_code,
    lagrange_weights,
    mds_criterion,
    nmds_criterion,
    non_grs_certificate,
    parity_check_matrix,
    weighted_power_sum,
)

DEFAULT_FIELD_ORDERS = (4, 5, 7, 8, 9)
QUICK_FIELD_ORDERS = (4, 5, 7)
DEFAULT_MAX_N = 7
QUICK_MAX_N = 5
MAX_SWEEP_K = 5

SUITE_NAMES = ("powersum", "det", "parity", "extend",
               "mds", "amds", "dual-amds", "nmds", "schur")


@dataclass
class SuiteResult:
    suite: str
    passed: bool
    checked: int
    counterexample: dict | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {"suite": self.suite, "passed": self.passed,
                "checked": self.checked, "counterexample": self.counterexample,
                "detail": self.detail}


def point_sets(field: Field, max_n: int) -> Iterator[tuple[int, ...]]:
    for n in range(3, min(field.q, max_n) + 1):
        yield from itertools.combinations(range(field.q), n)


def sweep_configs(fields: Sequence[Field], max_n: int) -> Iterator[EvalConfig]:
    """All-ones sweep: every node set, 3 <= k <= min(n, 5), every delta."""
    for f in fields:
        for pts in point_sets(f, max_n):
            for k in range(3, min(len(pts), MAX_SWEEP_K) + 1):
                for delta in f.elements():
                    yield EvalConfig.ones(f, pts, k, delta)


def sweep_size(fields: Sequence[Field], max_n: int) -> int:
    total = 0
    for f in fields:
        for n in range(3, min(f.q, max_n) + 1):
            total += math.comb(f.q, n) * (min(n, MAX_SWEEP_K) - 2) * f.q
    return total


@lru_cache(maxsize=None)
def classified(cfg: EvalConfig) -> Classification:
    """Brute-force classification, cached so suites can share one sweep."""
    return classify(family_code(cfg))


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def check_powersum(fields: Sequence[Field], max_n: int) -> SuiteResult:
    checked = 0
    for f in fields:
        for pts in point_sets(f, max_n):
            u = lagrange_weights(f, pts)
            for ell in range(len(pts) + 2):
                direct = 0
                for ui, a in zip(u, pts):
                    direct = f.add(direct, f.mul(ui, f.pow(a, ell)))
                closed = weighted_power_sum(f, pts, ell)
                checked += 1
                if direct != closed:
                    return SuiteResult("powersum", False, checked, {
                        "field": f.spec_string(), "A": list(pts), "ell": ell,
                        "direct": direct, "closed_form": closed})
    return SuiteResult("powersum", True, checked)


def check_det(fields: Sequence[Field] | None = None,
              sizes: Sequence[int] = (3, 4, 5)) -> SuiteResult:
    if fields is None:
        fields = tuple(Field.from_order(q) for q in (5, 7, 8, 9))
    checked = 0
    for f in fields:
        for size in sizes:
            if size > f.q:
                continue
            for pts in itertools.permutations(range(f.q), size):
                skip1 = det(power_matrix(f, pts, list(range(size - 1)) + [size]))
                skip2 = det(power_matrix(f, pts, list(range(size - 1)) + [size + 1]))
                checked += 1
                if (skip1 != vandermonde_det_skip_penultimate(f, pts)
                        or skip2 != vandermonde_det_skip_two(f, pts)):
                    return SuiteResult("det", False, checked, {
                        "field": f.spec_string(), "points": list(pts)})
    return SuiteResult("det", True, checked)


def check_parity(fields: Sequence[Field], max_n: int) -> SuiteResult:
    checked = 0
    for cfg in sweep_configs(fields, max_n):
        fam = family_code(cfg)
        H = parity_check_matrix(cfg)
        checked += 1
        if (fam.generator @ H.transpose()).a.any():
            return SuiteResult("parity", False, checked,
                               {"config": cfg.to_json(), "reason": "G.H^T != 0"})
        if H.shape != (cfg.n - cfg.k + 2, cfg.n + 2):
            return SuiteResult("parity", False, checked,
                               {"config": cfg.to_json(), "reason": "bad shape"})
        if not codes_equal(LinearCode(H), fam.dual):
            return SuiteResult("parity", False, checked,
                               {"config": cfg.to_json(),
                                "reason": "row space is not the dual"})
    return SuiteResult("parity", True, checked)


def check_extend(fields: Sequence[Field], max_n: int) -> SuiteResult:
    checked = 0
    for cfg in sweep_configs(fields, max_n):
        base = gapped_grs_one_column_code(cfg.field, cfg.alphas, cfg.k)
        extended = extend_code(base, extension_vector(cfg))
        checked += 1
        if not codes_equal(extended, family_code(cfg)):
            return SuiteResult("extend", False, checked,
                               {"config": cfg.to_json()})
    return SuiteResult("extend", True, checked)


def _check_criterion(suite: str, fields: Sequence[Field], max_n: int,
                     criterion: Callable[[EvalConfig], object],
                     truth: Callable[[Classification], bool]) -> SuiteResult:
    checked = 0
    for cfg in sweep_configs(fields, max_n):
        rep = criterion(cfg)
        cls = classified(cfg)
        checked += 1
        if rep.holds != truth(cls):
            return SuiteResult(suite, False, checked, {
                "config": cfg.to_json(), "criterion_holds": rep.holds,
                "class": cls.kind, "singleton_defect": cls.singleton_defect,
                "dual_defect": cls.dual_defect})
    return SuiteResult(suite, True, checked)


def check_mds(fields: Sequence[Field], max_n: int) -> SuiteResult:
    return _check_criterion("mds", fields, max_n, mds_criterion,
                            lambda cls: cls.singleton_defect == 0)


def check_amds(fields: Sequence[Field], max_n: int) -> SuiteResult:
    return _check_criterion("amds", fields, max_n, amds_criterion,
                            lambda cls: cls.singleton_defect == 1)


def check_dual_amds(fields: Sequence[Field], max_n: int) -> SuiteResult:
    return _check_criterion("dual-amds", fields, max_n, dual_amds_criterion,
                            lambda cls: cls.dual_defect == 1)


def check_nmds(fields: Sequence[Field], max_n: int) -> SuiteResult:
    return _check_criterion("nmds", fields, max_n, nmds_criterion,
                            lambda cls: cls.kind == NMDS)


def check_schur(quick: bool = False) -> SuiteResult:
    """GRS square laws on controls, non-GRS certificates on the family."""
    checked = 0
    rng = random.Random(9)
    lengths = (8,) if quick else (8, 9, 10)
    for q in (11, 13):
        f = Field.from_order(q)
        for N in lengths:
            sets = [tuple(range(N)), tuple(sorted(rng.sample(range(q), N)))]
            for pts in sets:
                vees = [(1,) * N, tuple(rng.randrange(1, q) for _ in range(N))]
                for v in vees:
                    for k in itertools.count(3):
                        if 2 * k >= N + 1:
                            break
                        sq = schur_square(grs_code(f, pts, v, k))
                        checked += 1
                        if sq.dimension != 2 * k - 1:
                            return SuiteResult("schur", False, checked, {
                                "field": f.spec_string(), "A": list(pts),
                                "v": list(v), "k": k,
                                "square_dimension": sq.dimension})
                        if q ** sq.dimension <= 2 ** 21 and sq.min_distance < 2:
                            return SuiteResult("schur", False, checked, {
                                "field": f.spec_string(), "A": list(pts),
                                "v": list(v), "k": k,
                                "square_distance": sq.min_distance})
    low_rate = [(11, tuple(range(7)), 3), (8, (0, 1, 2, 3, 4, 5), 3)]
    high_rate = [(9, (0, 1, 2, 3, 4, 5), 5), (8, (0, 1, 2, 3, 4, 5), 5)]
    if quick:
        low_rate, high_rate = low_rate[:1], high_rate[:1]
    for q, pts, k in low_rate:
        cfg = EvalConfig.ones(Field.from_order(q), pts, k, 1)
        rep = non_grs_certificate(cfg)
        checked += 1
        if (rep.verdict, rep.method, rep.evidence) != (NON_GRS, "SquareDimension", 2 * k):
            return SuiteResult("schur", False, checked,
                               {"config": cfg.to_json(), "report": rep.to_json()})
    for q, pts, k in high_rate:
        cfg = EvalConfig.ones(Field.from_order(q), pts, k, 1)
        rep = non_grs_certificate(cfg)
        checked += 1
        if (rep.verdict, rep.method, rep.evidence) != (NON_GRS, "DualSquareDistance", 1):
            return SuiteResult("schur", False, checked,
                               {"config": cfg.to_json(), "report": rep.to_json()})
    return SuiteResult("schur", True, checked)


# ---------------------------------------------------------------------------
# orchestration
# ---------------------------------------------------------------------------

def run_suites(names: Sequence[str], fields: Sequence[Field] | None = None,
               max_n: int | None = None, quick: bool = False) -> list[SuiteResult]:
    orders = QUICK_FIELD_ORDERS if quick else DEFAULT_FIELD_ORDERS
    sweep_fields = (tuple(fields) if fields
                    else tuple(Field.from_order(q) for q in orders))
    if max_n is None:
        max_n = QUICK_MAX_N if quick else DEFAULT_MAX_N
    results = []
    for name in names:
        if name == "powersum":
            results.append(check_powersum(sweep_fields, max_n))
        elif name == "det":
            sizes = (3, 4) if quick else (3, 4, 5)
            results.append(check_det(fields=fields, sizes=sizes))
        elif name == "parity":
            results.append(check_parity(sweep_fields, max_n))
        elif name == "extend":
            results.append(check_extend(sweep_fields, max_n))
        elif name == "mds":
            results.append(check_mds(sweep_fields, max_n))
        elif name == "amds":
            results.append(check_amds(sweep_fields, max_n))
        elif name == "dual-amds":
            results.append(check_dual_amds(sweep_fields, max_n))
        elif name == "nmds":
            results.append(check_nmds(sweep_fields, max_n))
        elif name == "schur":
            results.append(check_schur(quick=quick))
        else:
            raise ValueError(f"unknown suite {name!r}")
    return results
