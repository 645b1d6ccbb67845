"""Search layer and command-line behaviour, including output determinism."""

from __future__ import annotations

import itertools
import json
import math

import pytest

from mdslab.gf import Field
from mdslab.cli import main
from mdslab.search import (
    BudgetExceededError,
    SearchJob,
    iter_configs,
    records_to_csv,
    records_to_json,
    run_search,
    unrank_combination,
)

GF4 = Field.from_order(4)
GF5 = Field.from_order(5)
GF7 = Field.from_order(7)

EXAMPLE1_ARGS = ["--field", "gf(4)", "--points", "0,1,g", "--k", "3",
                 "--delta", "g"]


# ---------------------------------------------------------------------------
# search layer
# ---------------------------------------------------------------------------

def test_unrank_combination_matches_lex_order():
    for pool in (4, 6, 8):
        for size in (2, 3):
            expected = list(itertools.combinations(range(pool), size))
            got = [unrank_combination(pool, size, i)
                   for i in range(math.comb(pool, size))]
            assert got == expected
    with pytest.raises(ValueError):
        unrank_combination(5, 3, math.comb(5, 3))


def test_search_job_validation():
    with pytest.raises(ValueError):
        SearchJob(GF5, 6, (3,))                      # n > q
    with pytest.raises(ValueError):
        SearchJob(GF5, 4, (5,))                      # k > n
    with pytest.raises(ValueError):
        SearchJob(GF5, 4, ())
    with pytest.raises(ValueError):
        SearchJob(GF5, 4, (3,), subsets=((0, 1, 2, 3),), sample=2)
    with pytest.raises(ValueError):
        SearchJob(GF5, 4, (3,), subsets=((0, 1, 2),))
    with pytest.raises(ValueError):
        SearchJob(GF5, 4, (3,), target="MDSish")
    with pytest.raises(ValueError):
        SearchJob(GF5, 4, (3,), budget=0)


def test_search_visit_order_and_count():
    job = SearchJob(GF5, 4, (3, 4), deltas=(0, 2))
    cfgs = list(iter_configs(job))
    assert len(cfgs) == job.planned_count() == math.comb(5, 4) * 2 * 2
    assert [c.alphas for c in cfgs[:4]] == [(0, 1, 2, 3)] * 4
    assert [(c.k, c.delta) for c in cfgs[:4]] == [(3, 0), (3, 2), (4, 0), (4, 2)]


def test_search_budget_guard():
    job = SearchJob(GF7, 4, (3,), budget=10)
    with pytest.raises(BudgetExceededError) as exc:
        run_search(job)
    assert exc.value.needed == math.comb(7, 4) * 7
    assert exc.value.budget == 10


def test_search_deterministic_and_parallel_identical():
    job1 = SearchJob(GF5, 4, (3,), seed=7)
    job2 = SearchJob(GF5, 4, (3,), seed=7)
    jobp = SearchJob(GF5, 4, (3,), seed=7, jobs=2)
    out1 = records_to_csv(run_search(job1))
    assert out1 == records_to_csv(run_search(job2))
    assert out1 == records_to_csv(run_search(jobp))


def test_search_sampling_is_seeded():
    full = {c.alphas for c in iter_configs(SearchJob(GF7, 4, (3,)))}
    a = [c.alphas for c in iter_configs(SearchJob(GF7, 4, (3,), sample=5,
                                                  deltas=(0,), seed=3))]
    b = [c.alphas for c in iter_configs(SearchJob(GF7, 4, (3,), sample=5,
                                                  deltas=(0,), seed=3))]
    c = [x.alphas for x in iter_configs(SearchJob(GF7, 4, (3,), sample=5,
                                                  deltas=(0,), seed=4))]
    assert a == b
    assert a != c
    assert set(a) <= full
    assert len(set(a)) == 5
    assert a == sorted(a)


def test_search_filter_and_json():
    job = SearchJob(GF4, 3, (3,), target="MDS")
    records = run_search(job)
    assert [(r.config.alphas, r.config.delta) for r in records] == [
        ((0, 1, 2), 2), ((0, 1, 3), 3), ((0, 2, 3), 1)]
    payload = json.loads(records_to_json(records))
    assert payload[0]["classification"]["class"] == "MDS"
    assert payload[0]["criteria"]["mds"]["holds"] is True
    assert payload[0]["grs"]["verdict"] == "Inconclusive"


def test_search_witness_column():
    # 1 + 2 + 4 = 0 certifies the dual defect; every pair inside that triple
    # also Q-matches delta = 0, so the primal side is two away from Singleton
    job = SearchJob(GF7, 4, (3,), subsets=((1, 2, 3, 4),), deltas=(0,))
    rec = run_search(job)[0]
    assert rec.classification.kind == "AMDS_only_dual"
    assert rec.classification.min_distance == 2
    assert rec.classification.dual_min_distance == 3
    assert rec.witness_string() == "zero_sum_k:0+1+3"
    assert rec.amds.clause == "all_k_minus_1_subsets_match_delta"
    assert rec.amds.witness == (0, 1, 3)


# ---------------------------------------------------------------------------
# cli: construct
# ---------------------------------------------------------------------------

def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_construct_example1(capsys):
    code, out, err = run_cli(capsys, ["construct"] + EXAMPLE1_ARGS)
    assert code == 0
    assert out == "1,1,1,0,0;0,1,g,0,1;0,1,1,1,g\n"


def test_construct_example2(capsys):
    code, out, _ = run_cli(capsys, [
        "construct", "--field", "gf(8)", "--points", "1,g,g^2,g^5",
        "--k", "3", "--delta", "g^4"])
    assert code == 0
    assert out == "1,1,1,1,0,0;1,g,g^2,g^5,0,1;1,g^3,g^6,g,1,g^4\n"


def test_construct_parity_check(capsys):
    code, out, _ = run_cli(capsys, ["construct"] + EXAMPLE1_ARGS
                           + ["--parity-check"])
    assert code == 0
    assert out == ("generator: 1,1,1,0,0;0,1,g,0,1;0,1,1,1,g\n"
                   "parity_check: g^2,g,1,g^2,0;0,g,g,g,1\n")


def test_construct_other_builders(capsys):
    code, out, _ = run_cli(capsys, [
        "construct", "--which", "g4", "--field", "gf(7)",
        "--points", "1,2,3,4", "--k", "3"])
    assert (code, out) == (0, "1,1,1,1,0;1,2,3,4,0;1,1,6,1,1\n")
    code, out, _ = run_cli(capsys, [
        "construct", "--which", "g1", "--field", "gf(7)",
        "--points", "1,2,3,4", "--k", "3", "--delta", "5"])
    assert (code, out) == (0, "1,1,1,1,0,0;1,2,3,4,0,1;1,4,2,2,1,5\n")
    code, out, _ = run_cli(capsys, [
        "construct", "--which", "g2", "--field", "gf(7)",
        "--points", "1,2,3,4", "--k", "3", "--delta", "5",
        "--tau", "2", "--pi", "3"])
    assert (code, out) == (0, "1,1,1,1,0,0,1;1,2,3,4,0,1,2;1,4,2,2,1,5,3\n")
    code, out, _ = run_cli(capsys, [
        "construct", "--which", "grs", "--field", "gf(7)",
        "--points", "0,1,2", "--k", "3", "--delta", "0"])
    assert (code, out) == (0, "1,1,1;0,1,2;0,1,4\n")


def test_construct_json_format(capsys):
    code, out, _ = run_cli(capsys, ["construct", "--format", "json"]
                           + EXAMPLE1_ARGS)
    assert code == 0
    assert json.loads(out) == {"generator": "1,1,1,0,0;0,1,g,0,1;0,1,1,1,g"}


def test_construct_usage_errors(capsys):
    code, _, err = run_cli(capsys, [
        "construct", "--which", "g3", "--field", "gf(7)",
        "--points", "1,2,3", "--k", "3", "--parity-check"])
    assert code == 2 and "parity-check" in err
    code, _, err = run_cli(capsys, [
        "construct", "--which", "g2", "--field", "gf(7)",
        "--points", "1,2,3,4", "--k", "3", "--delta", "5"])
    assert code == 2 and "tau" in err
    code, _, err = run_cli(capsys, ["construct", "--field", "gf(7)",
                                    "--points", "1,2,3", "--k", "3"])
    assert code == 2 and "delta" in err
    code, _, err = run_cli(capsys, ["construct", "--field", "gf(6)",
                                    "--points", "1,2,3", "--k", "3",
                                    "--delta", "0"])
    assert code == 2 and "error" in err
    code, _, err = run_cli(capsys, ["construct", "--format", "csv"]
                           + EXAMPLE1_ARGS)
    assert code == 2 and "csv" in err


def test_construct_from_config_file(capsys, tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"field": "gf(4)", "A": [0, 1, "g"],
                                "v": "ones", "k": 3, "delta": "g"}))
    code, out, _ = run_cli(capsys, ["construct", "--config", str(path)])
    assert (code, out) == (0, "1,1,1,0,0;0,1,g,0,1;0,1,1,1,g\n")


# ---------------------------------------------------------------------------
# cli: classify and schur
# ---------------------------------------------------------------------------

def test_classify_json(capsys):
    code, out, _ = run_cli(capsys, ["classify", "--format", "json"]
                           + EXAMPLE1_ARGS)
    assert code == 0
    payload = json.loads(out)
    assert payload["length"] == 5
    assert payload["dimension"] == 3
    assert payload["min_distance"] == 3
    assert payload["class"] == "MDS"
    assert payload["criteria_class"] == "MDS"
    assert payload["criteria"]["mds"]["holds"] is True
    assert payload["criteria"]["dual_amds"]["holds"] is False


def test_classify_raw_matrix(capsys):
    code, out, _ = run_cli(capsys, [
        "classify", "--field", "gf(2)", "--matrix", "1,1,1"])
    assert code == 0
    assert "class: MDS" in out
    assert "criteria_class" not in out


def test_classify_full_rank_square_matrix_rejected(capsys):
    code, _, err = run_cli(capsys, [
        "classify", "--field", "gf(2)", "--matrix", "1,0;0,1"])
    assert code == 2
    assert "error" in err


def test_classify_g3_config_is_nmds(capsys):
    code, out, _ = run_cli(capsys, [
        "construct", "--which", "g3", "--field", "gf(7)",
        "--points", "1,2,4,5", "--k", "3"])
    assert code == 0
    code, out2, _ = run_cli(capsys, [
        "classify", "--field", "gf(7)", "--matrix", out.strip()])
    assert code == 0
    assert "class: NMDS" in out2


def test_schur_text_and_json(capsys):
    code, out, _ = run_cli(capsys, [
        "schur", "--field", "gf(11)", "--points", "0,1,2,3,4,5,6",
        "--k", "3", "--delta", "1"])
    assert code == 0
    assert out == "method: SquareDimension\nevidence: 6\nverdict: NonGRS\n"
    code, out, _ = run_cli(capsys, [
        "schur", "--format", "json", "--field", "gf(9)",
        "--points", "0,1,2,3,4,5", "--k", "5", "--delta", "1"])
    assert json.loads(out) == {"method": "DualSquareDistance", "evidence": 1,
                               "verdict": "NonGRS"}
    # dimension 2 sits outside both applicability gates
    code, out, _ = run_cli(capsys, [
        "schur", "--field", "gf(7)", "--matrix", "1,1,1,1;0,1,2,3"])
    assert out == "method: NotApplicable\nevidence: none\nverdict: Inconclusive\n"


# ---------------------------------------------------------------------------
# cli: search
# ---------------------------------------------------------------------------

def test_search_cli_example1_shows_up(capsys):
    code, out, _ = run_cli(capsys, [
        "search", "--field", "gf(4)", "--n", "3", "--k", "3",
        "--filter", "MDS", "--format", "csv"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "q,n,k,delta,A,class,d,d_dual,grs_verdict,witness"
    assert "4,3,3,2,0+1+2,MDS,3,4,Inconclusive," in lines


def test_search_cli_byte_identical_across_runs_and_jobs(tmp_path):
    base = ["search", "--field", "gf(5)", "--n", "4", "--k", "3-4",
            "--format", "csv", "--seed", "11"]
    paths = [tmp_path / name for name in ("a.csv", "b.csv", "c.csv")]
    assert main(base + ["--out", str(paths[0])]) == 0
    assert main(base + ["--out", str(paths[1])]) == 0
    assert main(base + ["--jobs", "2", "--out", str(paths[2])]) == 0
    blobs = [p.read_bytes() for p in paths]
    assert blobs[0] == blobs[1] == blobs[2]
    assert blobs[0].startswith(b"q,n,k,delta,A,class,d,d_dual")


def test_search_cli_budget_exceeded(capsys):
    code, _, err = run_cli(capsys, [
        "search", "--field", "gf(7)", "--n", "4", "--k", "3",
        "--budget", "10"])
    assert code == 2
    assert "245" in err and "budget" in err


def test_search_cli_empty_result_is_fine(capsys):
    code, out, _ = run_cli(capsys, [
        "search", "--field", "gf(4)", "--n", "3", "--k", "3",
        "--delta", "0", "--filter", "MDS", "--format", "csv"])
    assert code == 0
    assert out == "q,n,k,delta,A,class,d,d_dual,grs_verdict,witness\n"


def test_search_cli_explicit_points_and_sample(capsys):
    code, out, _ = run_cli(capsys, [
        "search", "--field", "gf(7)", "--n", "3", "--k", "3",
        "--points", "1,2,4", "--delta", "0,1", "--format", "csv"])
    assert code == 0
    rows = out.splitlines()[1:]
    assert len(rows) == 2
    assert rows[0].startswith("7,3,3,0,1+2+4,")
    code, out, _ = run_cli(capsys, [
        "search", "--field", "gf(7)", "--n", "4", "--k", "3",
        "--sample", "3", "--delta", "0", "--format", "csv", "--seed", "2"])
    assert code == 0
    assert len(out.splitlines()) == 4


def test_search_cli_bad_k_spec(capsys):
    code, _, err = run_cli(capsys, [
        "search", "--field", "gf(7)", "--n", "4", "--k", "x-y"])
    assert code == 2 and "--k" in err


# ---------------------------------------------------------------------------
# cli: verify
# ---------------------------------------------------------------------------

def test_verify_cli_quick_pass(capsys):
    code, out, _ = run_cli(capsys, ["verify", "powersum", "--quick"])
    assert code == 0
    assert out == "powersum: PASS (645 checks)\n"


def test_verify_cli_scoped(capsys):
    code, out, _ = run_cli(capsys, [
        "verify", "mds", "--orders", "5", "--max-n", "4"])
    assert code == 0
    assert out == "mds: PASS (100 checks)\n"


def test_verify_cli_json(capsys):
    code, out, _ = run_cli(capsys, [
        "verify", "powersum", "--format", "json", "--orders", "5",
        "--max-n", "4"])
    assert code == 0
    payload = json.loads(out)
    assert payload[0]["suite"] == "powersum"
    assert payload[0]["passed"] is True
    assert payload[0]["counterexample"] is None


def test_out_writes_file_and_keeps_stdout_quiet(capsys, tmp_path):
    target = tmp_path / "m.txt"
    code, out, _ = run_cli(capsys, ["construct", "--out", str(target)]
                           + EXAMPLE1_ARGS)
    assert code == 0
    assert out == ""
    assert target.read_text() == "1,1,1,0,0;0,1,g,0,1;0,1,1,1,g\n"
