"""Parameter-space sweeps over the code family.

A search walks (A, k, delta) triples in a fixed canonical order: node sets
lexicographic by element index, then k ascending, then delta ascending.  Every
visited config is classified twice, once through the subset-sum criteria and
once by brute force, and any disagreement aborts the whole run; a completed
search doubles as an oracle cross-check over everything it visited.  Records
matching the class filter are returned in visit order, so equal inputs give
byte-identical output regardless of worker count.
"""

from __future__ import annotations

import itertools
import json
import math
import multiprocessing
import random
from dataclasses import dataclass
from io import StringIO
from typing import Iterable, Iterator

import csv

from .gf import Field
from .codes import (
    AMDS_ONLY_DUAL,
    AMDS_ONLY_PRIMAL,
    Classification,
    GrsReport,
    MDS,
    NMDS,
    OTHER,
    classify,
    grs_consistency_test,
)
from .construction import (
    CriterionReport,
    EvalConfig,
    amds_criterion,
    dual_amds_criterion,
    family_code,
    mds_criterion,
    nmds_criterion,
)

CODE_CLASSES = (MDS, NMDS, AMDS_ONLY_PRIMAL, AMDS_ONLY_DUAL, OTHER)

DEFAULT_BUDGET = 10_000_000

CSV_COLUMNS = ("q", "n", "k", "delta", "A", "class", "d", "d_dual",
               "grs_verdict", "witness")


class BudgetExceededError(RuntimeError):
    """The sweep would visit more configurations than the budget allows."""

    def __init__(self, needed: int, budget: int):
        super().__init__(needed, budget)
        self.needed = needed
        self.budget = budget

    def __str__(self) -> str:
        return (f"search needs {self.needed} configurations, "
                f"budget is {self.budget}")


class SearchMismatchError(RuntimeError):
    """Criteria and brute force disagreed; carries the offending config."""

    def __init__(self, config: EvalConfig, detail: str):
        super().__init__(config, detail)
        self.config = config
        self.detail = detail

    def __str__(self) -> str:
        return (f"criterion/brute-force disagreement ({self.detail}) "
                f"on config {json.dumps(self.config.to_json())}")


@dataclass(frozen=True)
class SearchJob:
    """One sweep description; see iter_configs for the visit order."""

    field: Field
    n: int
    k_values: tuple[int, ...]
    deltas: tuple[int, ...] | None = None          # None: the whole field
    subsets: tuple[tuple[int, ...], ...] | None = None   # explicit node sets
    sample: int | None = None                      # seeded subset sample size
    seed: int = 0
    target: str | None = None                      # class filter, None: all
    budget: int = DEFAULT_BUDGET
    jobs: int = 1

    def __post_init__(self):
        f = self.field
        if not 3 <= self.n <= f.q:
            raise ValueError(f"need 3 <= n <= q, got n={self.n}, q={f.q}")
        if not self.k_values:
            raise ValueError("no k values")
        for k in self.k_values:
            if not 3 <= k <= self.n:
                raise ValueError(f"k={k} outside [3, {self.n}]")
        if self.deltas is not None:
            object.__setattr__(self, "deltas",
                               tuple(f.check(d) for d in self.deltas))
        if self.subsets is not None and self.sample is not None:
            raise ValueError("explicit node sets and sampling are exclusive")
        if self.subsets is not None:
            for pts in self.subsets:
                if len(pts) != self.n:
                    raise ValueError(f"node set {pts} does not have size {self.n}")
        if self.sample is not None and self.sample < 1:
            raise ValueError("sample size must be positive")
        if self.target is not None and self.target not in CODE_CLASSES:
            raise ValueError(f"unknown class filter {self.target!r}")
        if self.budget < 1:
            raise ValueError("budget must be positive")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")

    def delta_list(self) -> tuple[int, ...]:
        if self.deltas is not None:
            return self.deltas
        return tuple(self.field.elements())

    def point_set_count(self) -> int:
        if self.subsets is not None:
            return len(self.subsets)
        total = math.comb(self.field.q, self.n)
        if self.sample is not None:
            return min(self.sample, total)
        return total

    def planned_count(self) -> int:
        return self.point_set_count() * len(self.k_values) * len(self.delta_list())


def unrank_combination(pool: int, size: int, index: int) -> tuple[int, ...]:
    """The index-th size-subset of range(pool) in lexicographic order."""
    if not 0 <= index < math.comb(pool, size):
        raise ValueError(f"rank {index} out of range")
    out = []
    x = 0
    for remaining in range(size, 0, -1):
        while True:
            block = math.comb(pool - x - 1, remaining - 1)
            if index < block:
                out.append(x)
                x += 1
                break
            index -= block
            x += 1
    return tuple(out)


def _point_sets(job: SearchJob) -> Iterator[tuple[int, ...]]:
    if job.subsets is not None:
        yield from job.subsets
        return
    q, n = job.field.q, job.n
    total = math.comb(q, n)
    if job.sample is not None and job.sample < total:
        rng = random.Random(job.seed)
        for r in sorted(rng.sample(range(total), job.sample)):
            yield unrank_combination(q, n, r)
        return
    yield from itertools.combinations(range(q), n)


def iter_configs(job: SearchJob) -> Iterator[EvalConfig]:
    """Canonical visit order: node set, then k, then delta, all ascending."""
    deltas = job.delta_list()
    for pts in _point_sets(job):
        for k in job.k_values:
            for delta in deltas:
                yield EvalConfig.ones(job.field, pts, k, delta)


# ---------------------------------------------------------------------------
# per-config evaluation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchRecord:
    config: EvalConfig
    classification: Classification
    grs: GrsReport
    mds: CriterionReport
    amds: CriterionReport
    dual_amds: CriterionReport
    nmds: CriterionReport

    def witness_string(self) -> str:
        """The satisfied dual-AMDS clause, which certifies any non-MDS class."""
        rep = self.dual_amds
        if rep.witness is None:
            return ""
        return rep.clause + ":" + "+".join(str(i) for i in rep.witness)

    def csv_row(self) -> list:
        cfg, cls = self.config, self.classification
        return [cfg.field.q, cfg.n, cfg.k, cfg.delta,
                "+".join(str(a) for a in cfg.alphas),
                cls.kind, cls.min_distance, cls.dual_min_distance,
                self.grs.verdict, self.witness_string()]

    def to_json(self) -> dict:
        cfg, cls = self.config, self.classification
        return {
            "config": cfg.to_json(),
            "classification": {
                "length": cfg.n + 2,
                "dimension": cfg.k,
                "min_distance": cls.min_distance,
                "dual_min_distance": cls.dual_min_distance,
                "singleton_defect": cls.singleton_defect,
                "dual_defect": cls.dual_defect,
                "class": cls.kind,
            },
            "grs": self.grs.to_json(),
            "criteria": {
                "mds": self.mds.to_json(),
                "amds": self.amds.to_json(),
                "dual_amds": self.dual_amds.to_json(),
                "nmds": self.nmds.to_json(),
            },
        }


def evaluate_config(cfg: EvalConfig) -> SearchRecord:
    """Classify one config both ways; raise on any disagreement."""
    cls = classify(family_code(cfg))
    m = mds_criterion(cfg)
    a = amds_criterion(cfg)
    da = dual_amds_criterion(cfg)
    nm = nmds_criterion(cfg)
    checks = (
        ("mds", m.holds, cls.singleton_defect == 0),
        ("amds", a.holds, cls.singleton_defect == 1),
        ("dual_amds", da.holds, cls.dual_defect == 1),
        ("nmds", nm.holds, cls.kind == NMDS),
    )
    for name, predicted, actual in checks:
        if predicted != actual:
            raise SearchMismatchError(
                cfg, f"{name} criterion says {predicted}, code says {actual}")
    return SearchRecord(cfg, cls, grs_consistency_test(family_code(cfg)),
                        m, a, da, nm)


def run_search(job: SearchJob) -> list[SearchRecord]:
    needed = job.planned_count()
    if needed > job.budget:
        raise BudgetExceededError(needed, job.budget)
    configs = iter_configs(job)
    if job.jobs > 1:
        with multiprocessing.Pool(job.jobs) as pool:
            # imap keeps input order, so parallel runs emit identical bytes
            records = list(pool.imap(evaluate_config, configs, chunksize=8))
    else:
        records = [evaluate_config(cfg) for cfg in configs]
    if job.target is None:
        return records
    return [r for r in records if r.classification.kind == job.target]


# ---------------------------------------------------------------------------
# output formats
# ---------------------------------------------------------------------------

def records_to_csv(records: Iterable[SearchRecord]) -> str:
    buf = StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.csv_row())
    return buf.getvalue()


def records_to_json(records: Iterable[SearchRecord]) -> str:
    return json.dumps([r.to_json() for r in records], indent=2) + "\n"


def records_to_text(records: Iterable[SearchRecord]) -> str:
    rows = [list(CSV_COLUMNS)]
    for r in records:
        rows.append([str(c) for c in r.csv_row()])
    widths = [max(len(row[i]) for row in rows) for i in range(len(CSV_COLUMNS))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
             for row in rows]
    return "\n".join(lines) + "\n"
