"""Smoke tests for the python bindings."""

import json

import pytest

import deltaspec


def test_bounds():
    rep = deltaspec.bounds([3, 3, 3])
    assert rep["linear"] == 4
    assert rep["product"] == 4
    assert rep["covering"] == 5
    assert rep["max_lower"] == 5


def test_construct_single():
    out = deltaspec.construct_single(5, 2)
    assert out["sparsity"] == 3
    assert out["verified"]
    support = [entry["a"] for entry in out["spectrum"]["coeffs"]]
    assert [0, 0] in support and [1, 1] in support and [2, 2] in support


def test_construct_partitioned():
    out = deltaspec.construct_partitioned(3, [[0, 1], [2, 3]])
    assert out["sparsity"] == 9
    assert out["verified"]


def test_min_sparsity_search():
    res = deltaspec.min_sparsity([2, 3], set="hypercube", backend="cyclo")
    assert res["status"] == "found"
    assert res["min_t"] == 4

    res33 = deltaspec.min_sparsity([3, 3], backend="cyclo", workers=2)
    assert res33["min_t"] == 3


def test_covering_number():
    res = deltaspec.covering_number([3, 3])
    assert res["value"] == 3


def test_translate_bound():
    hypercube = [[0, 0], [1, 0], [0, 1], [1, 1]]
    assert deltaspec.translate_bound([5, 5], "pm_cube", hypercube) == 4


def test_canonical_set():
    assert deltaspec.canonical_set(6)["elements"] == [0, 1, 3, 4]
    with pytest.raises(ValueError):
        deltaspec.canonical_set(12)


def test_trivial_decoding():
    out = deltaspec.trivial_decoding(6)
    assert out["sparsity"] == 4
    assert out["verified"]
    terms = {entry["e"]: entry["c"] for entry in out["poly"]["terms"]}
    assert terms == {0: 1, 1: 1, 2: 3, 3: 3}


def test_min_decoding_sparsity():
    res = deltaspec.min_decoding_sparsity(6)
    assert res["min_t"] == 4


def test_verify_r2_lower():
    out = deltaspec.verify_r2_lower(2, 3)
    assert out["verified"]
    assert out["subsets_checked"] == 41


def test_pir_params():
    rep = deltaspec.pir_params(2, 1e6, 3)
    assert rep["required_servers"] == 3
    assert rep["feasible"]
    assert rep["shape_only"]
    rep2 = deltaspec.pir_params(2, 1e6, 2)
    assert not rep2["feasible"]


def test_fixtures_deterministic():
    a = deltaspec.fixtures_run(seed=0, workers=1)
    b = deltaspec.fixtures_run(seed=0, workers=4)
    assert a == b
    json.loads(a)  # valid JSON
