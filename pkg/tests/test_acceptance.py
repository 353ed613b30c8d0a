"""Acceptance gate: one test per criterion, each reported as a PASS/FAIL line.

The summary lines are printed by the terminal-summary hook in conftest.py.
"""

import contextlib
import json
import random
import subprocess
import sys
import time

import pytest

from cokasch.fixtures import fixture_rings, random_rings
from cokasch.kasch import (
    cartan_matrix,
    check_projective_cokasch,
    construct_extension,
    ext1,
    is_co_kasch,
    is_h_ring,
    is_kasch,
)
from cokasch.module import direct_sum, is_isomorphic, principal_module, quotient_module, regular_module, simple_catalog
from cokasch.oracle import (
    Budget,
    Harness,
    brute_co_kasch,
    brute_kasch,
    enumerate_submodules,
    harness_rings,
    oracle_composition_factors,
)
from cokasch.zmod import is_co_kasch_z, parse_zmodule

RESULTS: dict[int, tuple[bool, str]] = {}

SEED = 7


@contextlib.contextmanager
def criterion(n: int, title: str):
    detail = {"text": ""}
    try:
        yield detail
    except BaseException as exc:
        RESULTS[n] = (False, f"{title}: {detail['text']} ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})")
        raise
    RESULTS[n] = (True, f"{title}: {detail['text']}")


def test_criterion_1_fixture_exactness():
    with criterion(1, "fixture Cartan matrices") as d:
        t0 = time.perf_counter()
        rings = fixture_rings()
        expected = {"F2xF2": [[1, 0], [0, 1]], "T2F2": [[1, 1], [0, 1]], "Z4": [[2]], "F2x": [[2]]}
        for name, want in expected.items():
            R = rings[name]
            cat = simple_catalog(R)
            C = cartan_matrix(R, cat)
            assert C.tolist() == want, name
            for i in range(len(cat)):
                P = principal_module(R, cat.idempotent(i))
                assert oracle_composition_factors(P, cat, random.Random(i)) == tuple(want[i]), (name, i)
        elapsed = time.perf_counter() - t0
        d["text"] = f"4 rings exact and confirmed by composition series in {elapsed:.2f}s"
        assert elapsed < 5


def test_criterion_2_projective_cartan_equivalence():
    with criterion(2, "projectives co-Kasch iff Cartan diagonal") as d:
        rings = dict(fixture_rings())
        rand = random_rings(SEED, 100, 64)
        assert all(R.size <= 64 for R in rand)
        for i, R in enumerate(rand):
            rings[f"random{i}"] = R
        failures, nondiag = [], 0
        for name, R in rings.items():
            rep = check_projective_cokasch(R)
            nondiag += not rep.cartan.is_diagonal()
            if not rep.consistent:
                failures.append(name)
        d["text"] = f"{len(rings)} rings ({len(rand)} random, {nondiag} with nondiagonal Cartan), {len(failures)} failures"
        assert not failures, failures


def test_criterion_3_h_ring_at_finite_scale():
    with criterion(3, "H-ring verdicts and quotient modules") as d:
        rings = fixture_rings()
        R = rings["T2F2"]
        cat = simple_catalog(R)
        rep = is_h_ring(R, cat)
        assert not rep.verdict
        i, j = rep.witness["pair"]
        X = construct_extension(cat, i, j, ext1(i, j, cat).cocycle)
        assert not is_co_kasch(X, cat).verdict
        assert is_isomorphic(X, principal_module(R, (1, 0, 0)))
        checked, failures = 0, []
        for name in ("F2", "Z4", "F2x", "F2xF2"):
            S = rings[name]
            assert is_h_ring(S).verdict, name
            F = direct_sum(regular_module(S), regular_module(S))
            assert F.size <= 256
            for K in enumerate_submodules(F, 256):
                Q = quotient_module(F, K)[0]
                checked += 1
                if not is_co_kasch(Q).verdict:
                    failures.append((name, K.generators))
        d["text"] = f"T2F2 witness X ~ e11R non-co-Kasch; {checked} quotients over 4 H-rings, {len(failures)} failures"
        assert not failures


@pytest.fixture(scope="module")
def oracle_harness():
    """Fixture rings plus seeded random rings, with exhaustive quotient pools."""
    budget = Budget(pool_cap=256, max_module_size=64)
    return Harness(harness_rings(SEED, budget), budget, SEED)


def test_criterion_4_oracle_equivalence(oracle_harness):
    with criterion(4, "fast vs brute-force co-Kasch and Kasch") as d:
        h = oracle_harness
        t0 = time.perf_counter()
        instances, disagreements, fixture_instances = 0, [], 0
        fixtures = set(fixture_rings())
        for name, R in h.rings.items():
            cat = simple_catalog(R)
            for M in h.pool(name):
                assert M.size <= 64
                en = h.subfactors(M)
                instances += 1
                fixture_instances += name in fixtures
                if is_co_kasch(M, cat).verdict != brute_co_kasch(M, cat, en).verdict:
                    disagreements.append((name, "co-Kasch", M.orders))
                if is_kasch(M, cat).verdict != brute_kasch(M, cat, en).verdict:
                    disagreements.append((name, "Kasch", M.orders))
        elapsed = time.perf_counter() - t0
        d["text"] = (f"{instances} modules ({fixture_instances} over fixture rings), "
                     f"{len(disagreements)} disagreements, {elapsed:.1f}s")
        assert not disagreements, disagreements
        assert instances >= 500
        assert elapsed < 120


@pytest.fixture(scope="module")
def verify_runs():
    """Two independent `verify --seed 7` processes run side by side."""
    cmd = [sys.executable, "-m", "cokasch", "verify", "--seed", str(SEED), "--format", "json"]
    procs = [subprocess.Popen(cmd, stdout=subprocess.PIPE, stderr=subprocess.PIPE) for _ in range(2)]
    return [(p.returncode, out, err) for p in procs for out, err in [p.communicate()]]


def test_criterion_5_closure_properties(verify_runs):
    with criterion(5, "harness 2.3 / 2.7 / 2.9") as d:
        code, out, err = verify_runs[0]
        recs = {r["target"]: r for r in map(json.loads, out.decode().splitlines())}
        parts = []
        for prop in ("2.3", "2.7", "2.9"):
            r = recs[prop]
            parts.append(f"{prop}: {r['instances']} instances, {len(r['failures'])} failures")
        d["text"] = "; ".join(parts)
        for prop in ("2.3", "2.7", "2.9"):
            assert recs[prop]["verdict"] and not recs[prop]["failures"], recs[prop]["failures"]
            assert recs[prop]["instances"] >= 200
        assert code == 0, err.decode()


def test_criterion_6_subfactor_hom_nonzero(oracle_harness):
    with criterion(6, "co-Kasch modules map onto every proper subfactor") as d:
        res = oracle_harness.run("3.17")
        d["text"] = f"{res.instances} subfactors of co-Kasch modules, {len(res.failures)} falsification candidates"
        assert res.passed, res.failures[:5]
        assert res.instances > 0


def test_criterion_7_z_module_table():
    with criterion(7, "Z-module verdicts") as d:
        t0 = time.perf_counter()
        table = [("Q", False, 2), ("Z + Q", True, None), ("Prufer(2)", False, 2),
                 ("Z/2 + Prufer(2)", True, None), ("Z/6", True, None), ("Q + Z/6", False, 5)]
        for expr, verdict, prime in table:
            rep = is_co_kasch_z(parse_zmodule(expr))
            assert rep.verdict == verdict, expr
            if prime is not None:
                assert rep.witness["prime"] == prime, expr
        elapsed = time.perf_counter() - t0
        d["text"] = f"{len(table)} rows match in {elapsed:.3f}s"
        assert elapsed < 1


def test_criterion_8_determinism(verify_runs):
    with criterion(8, "verify --seed 7 byte-identical") as d:
        (c1, o1, _), (c2, o2, _) = verify_runs
        d["text"] = f"{len(o1)} and {len(o2)} bytes, exit codes {c1} and {c2}"
        assert o1 and o1 == o2
        assert c1 == c2 == 0
