"""Acceptance criteria 1-13: one PASS/FAIL line per criterion, with its time budget."""

from __future__ import annotations

import time

import pytest

from oracles import mobius_witt
from milnorlab.magnus import witt_rank
from milnorlab.suites import run_suite

SEED = 0

CRITERIA = [
    (1, "shuffle relation on 500 words of F_3, |I|,|J| <= 3", "shuffle", {}, 10),
    (2, "lower central detection, depth <= 5", "lcs", {}, 5),
    (3, "longitude cocycle and inverse formula, 100 pairs in P_3", "longitude", {"n": 100}, 30),
    (4, "conjugation invariance mod the indeterminacy ideal, 50 pairs, |I| <= 4", "conjugation", {"n": 50, "top": 4}, 60),
    (5, "Johnson homomorphism dual routes and additivity, 50 elements, m <= 3", "johnson", {"n": 50, "max_m": 3}, 60),
    (6, "coboundary laws in degrees 1 and 2, 50 pairs incl. chi = 1 + l", "coboundary", {"n": 50}, 60),
    (7, "Magnus, Gassner and reduced Gassner cocycles, 50 pairs each at D = 4", "cocycle", {"n": 50, "D": 4}, 120),
    (8, "truncation, trace, Gassner routes, kernel, intertwining, Alexander routes, similarity", "structure", {"n": 20}, 120),
    (9, "Ihara series three routes, 20 automorphisms at D = 5", "ihara", {"n": 20, "D": 5}, 30),
    (10, "Weil norm of Jacobi sums", "jacobi", {}, 10),
]

RESULTS = {}


def report(num, title, checks, elapsed, limit):
    ok = all(c.passed for c in checks) and elapsed < limit
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {num}: {title} ({elapsed:.2f} s, limit {limit} s)")
    for c in checks:
        print(f"    {'ok ' if c.passed else 'BAD'} {c.name}: {c.cases} cases, {c.detail}")
    RESULTS[num] = ok
    return ok


@pytest.mark.parametrize("num,title,suite,kw,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, suite, kw, limit):
    t0 = time.perf_counter()
    checks = run_suite(suite, SEED, **kw)
    elapsed = time.perf_counter() - t0
    assert checks
    assert report(num, title, checks, elapsed, limit)
    if suite == "structure":
        assert len(checks) == 7 and all(c.cases >= 20 for c in checks)


@pytest.fixture(scope="module")
def recovery():
    t0 = time.perf_counter()
    checks = run_suite("recovery", SEED, primes=(19, 37), Dmax=4, targets=((1, 1), (2, 1), (1, 2)))
    return checks, time.perf_counter() - t0


def test_criterion_11(recovery):
    checks, elapsed = recovery
    part = [c for c in checks if c.name.startswith("Jacobi-sum recovery")]
    assert len(part) == 2
    secs = sum(c.seconds for c in part)
    assert report(11, "recovery of mu from Jacobi sums at p = 19, 37, Dmax = 4", part, secs, 30)


def test_criterion_12(recovery):
    checks, elapsed = recovery
    part = [c for c in checks if c.name.startswith("Soule character identity")]
    assert len(part) == 2
    secs = sum(c.seconds for c in part)
    assert report(12, "Soule identity at (1,1), (2,1), (1,2) for p = 19, 37", part, secs, 30)


def test_criterion_13():
    t0 = time.perf_counter()
    checks = run_suite("witt", SEED)
    oracle_ok = all(witt_rank(r, n) == mobius_witt(r, n) for r, top in ((2, 6), (3, 4)) for n in range(1, top + 1))
    elapsed = time.perf_counter() - t0
    assert oracle_ok
    assert report(13, "Witt ranks for r = 2, n <= 6 and r = 3, n <= 4", checks, elapsed, 1)


def test_summary():
    line = " ".join(f"{k}:{'PASS' if v else 'FAIL'}" for k, v in sorted(RESULTS.items()))
    print(f"\nacceptance summary {line}")
    assert len(RESULTS) == 13
