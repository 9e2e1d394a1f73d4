"""Verification suite registry: naming, determinism, subset reproducibility."""

import pytest

from qglue import ParamSet, SUITES, run_suites

PARAMS = ParamSet(d=32, w=6)

PINNED_NAMES = [
    "disc",
    "s3",
    "s2",
    "su2",
    "podles",
    "hopf",
    "en-symbolic",
    "en-numeric",
    "chi",
    "index",
    "convergence",
    "confluence",
]


def test_registry_names_are_pinned():
    assert list(SUITES) == PINNED_NAMES


def test_unknown_suite_name_raises():
    with pytest.raises(KeyError, match="nonsense"):
        run_suites(["disc", "nonsense"], PARAMS, 2)


def test_runs_preserve_registry_order():
    records = run_suites(["hopf", "disc"], PARAMS, 2, seed=3)
    suites_seen = []
    for rec in records:
        if rec.suite not in suites_seen:
            suites_seen.append(rec.suite)
    assert suites_seen == ["disc", "hopf"]


def test_same_seed_reproduces_records():
    a = run_suites(["disc", "hopf"], PARAMS, 2, seed=11)
    b = run_suites(["disc", "hopf"], PARAMS, 2, seed=11)
    assert a == b


def test_subset_run_matches_full_run_records():
    full = run_suites(["disc", "s2", "hopf"], PARAMS, 2, seed=5)
    only_hopf = run_suites(["hopf"], PARAMS, 2, seed=5)
    assert only_hopf == [rec for rec in full if rec.suite == "hopf"]
    only_disc = run_suites(["disc"], PARAMS, 2, seed=5)
    assert only_disc == [rec for rec in full if rec.suite == "disc"]


def test_cheap_suites_pass_at_defaults():
    records = run_suites(["disc", "s2", "su2", "hopf"], PARAMS, 3, seed=0)
    assert records, "suites must emit records"
    bad = [rec for rec in records if rec.status == "fail"]
    assert bad == []
    for rec in records:
        assert rec.anchor, f"record {rec.suite}/{rec.check} is missing its anchor"
