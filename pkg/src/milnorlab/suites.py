"""Randomized invariant suites shared by the ``verify`` command and the test-suite.

Every suite takes a ``random.Random`` and a size, and returns a list of
``Check`` records.  Case order is fixed by the generator, so output only
depends on the seed.
"""

from __future__ import annotations

import random
import time
from itertools import product
from typing import Callable, Dict, List, Sequence

import numpy as np

from .alexander import alexander_matrix_direct, alexander_matrix_gassner, alexander_matrix_milnor, quotient_for, similarity_check
from .automorphisms import AutP, MilnorTable, longitude_cocycle, longitude_inverse, longitudes
from .braid import BraidWord, band, braid_autp
from .cyclotomic import FrobeniusInput, jacobi_sum, valid_pairs
from .gassner import (
    crowell_nu1,
    gassner,
    gassner_cocycle_check,
    gassner_from_milnor,
    gassner_magnus,
    gassner_reduced_cocycle_check,
    johnson_truncation_check,
    kernel_relation,
    magnus_cocycle,
    magnus_cocycle_check,
    magnus_cocycle_fox,
    meta_action_check,
)
from .ihara import ihara_from_commutator, ihara_from_milnor, ihara_from_reduced, kappas_for, mu_from_jacobi, soule_identity_check
from .johnson import coboundary_rhs, component, eta_composite_rhs, eta_images, johnson_from_milnor, johnson_hom, johnson_map, morita_trace, morita_trace_matrix
from .magnus import _index, infiltration, lyndon_count, magnus, magnus_dense, shuffles, witt_rank
from .rings import Ring, TruncNC, Z
from .words import Word, commutator


class Check:
    __slots__ = ("name", "passed", "cases", "seconds", "detail")

    def __init__(self, name: str, passed: bool, cases: int, seconds: float, detail: str = ""):
        self.name = name
        self.passed = bool(passed)
        self.cases = cases
        self.seconds = seconds
        self.detail = detail

    def to_json(self) -> dict:
        return {"check": self.name, "pass": self.passed, "cases": self.cases, "detail": self.detail}

    def __repr__(self):
        return f"Check({self.name}, {'pass' if self.passed else 'FAIL'}, {self.cases})"


def _timed(name: str, fn: Callable[[], tuple]) -> Check:
    t = time.perf_counter()
    ok, cases, detail = fn()
    return Check(name, ok, cases, time.perf_counter() - t, detail)


# --------------------------------------------------------------------------
# random generators


def random_word(rng: random.Random, r: int, length: int) -> Word:
    return Word(r, [(rng.randint(1, r), rng.choice((1, -1))) for _ in range(length)])


def random_synthetic(rng: random.Random, r: int, chi: int, max_len: int = 4) -> AutP:
    """AutP with random longitudes; the x_i exponent sum is removed from y_i."""
    ys = []
    for i in range(1, r + 1):
        w = random_word(rng, r, rng.randint(0, max_len))
        ys.append(w * Word.gen(i, r, -w.exponent_sums()[i - 1]))
    return AutP(chi, ys)


def random_pure_braid(rng: random.Random, r: int, length: int = 3) -> BraidWord:
    b = BraidWord(r)
    for _ in range(length):
        i = rng.randint(1, r - 1)
        j = rng.randint(i + 1, r)
        b = b * band(i, j, r, rng.choice((1, -1)))
    return b


def random_braid_aut(rng: random.Random, r: int, length: int = 3) -> AutP:
    return braid_autp(random_pure_braid(rng, r, length))


def group_commutator(g: AutP, h: AutP) -> AutP:
    return g.compose(h).compose(g.inverse()).compose(h.inverse())


def braid_commutator(a: BraidWord, b: BraidWord) -> BraidWord:
    return a * b * a.inverse() * b.inverse()


def random_level_braid(rng: random.Random, r: int, m: int, length: int = 2) -> BraidWord:
    """Nested commutator of depth m of random pure braids, so it lies in the m-th filtration step."""
    b = random_pure_braid(rng, r, length)
    for _ in range(m - 1):
        b = braid_commutator(b, random_pure_braid(rng, r, 1))
    return b


LONGITUDE_CAP = 1200


def random_level(rng: random.Random, r: int, m: int, cap: int = LONGITUDE_CAP) -> AutP:
    """Braid-derived element of level m.

    Nested braid commutators occasionally have longitudes of many thousand
    letters; such draws are rejected (total length > cap) and redrawn.
    """
    g = None
    for _ in range(100):
        g = braid_autp(random_level_braid(rng, r, m, 2 if m < 3 else 1))
        if sum(len(y) for y in g.longitudes) <= cap:
            return g
    return g


def random_commutator_word(rng: random.Random, r: int, depth: int) -> Word:
    w = random_word(rng, r, rng.randint(1, 2))
    for _ in range(depth - 1):
        w = commutator(w, random_word(rng, r, rng.randint(1, 2)))
    return w


def random_level_synthetic(rng: random.Random, r: int, m: int) -> AutP:
    """chi = 1 with every longitude in the m-th lower central term, hence of level m."""
    if m == 1:
        return random_synthetic(rng, r, 1)
    return AutP(1, [random_commutator_word(rng, r, m) for _ in range(r)])


def random_level_mixed(rng: random.Random, r: int, m: int, k: int) -> AutP:
    return random_level(rng, r, m) if k % 2 else random_level_synthetic(rng, r, m)


# --------------------------------------------------------------------------
# free words


def _count_matrix(a: int, b: int, r: int, expand) -> np.ndarray:
    """Column (I, J) holds the multiplicity of each index K in expand(I, J); rows run over all K of length <= a+b."""
    Is = list(product(range(1, r + 1), repeat=a))
    Js = list(product(range(1, r + 1), repeat=b))
    offsets = [0]
    for k in range(1, a + b + 1):
        offsets.append(offsets[-1] + r ** k)
    S = np.zeros((offsets[-1], len(Is) * len(Js)), dtype=np.int64)
    for c, (I, J) in enumerate(product(Is, Js)):
        for K, m in expand(I, J):
            S[offsets[len(K) - 1] + _index(K, r), c] += m
    return S


def shuffle_suite(rng: random.Random, n: int = 500, r: int = 3, max_len: int = 12, top: int = 3) -> List[Check]:
    """Coefficient products against infiltration sums (exact) and against riffle shuffles alone."""
    words = [random_word(rng, r, rng.randint(0, max_len)) for _ in range(n)]
    holder = {}

    def data():
        if "W" not in holder:
            levels = [magnus_dense(w, 2 * top) for w in words]
            if any(lv[-1].dtype == object for lv in levels):
                raise OverflowError("coefficients exceed int64")
            holder["W"] = [np.stack([lv[k] for lv in levels]) for k in range(2 * top + 1)]
        return holder["W"]

    def compare(expand):
        W = data()
        bad = pairs = 0
        for a in range(1, top + 1):
            for b in range(1, top + 1):
                S = _count_matrix(a, b, r, expand)
                flat = np.concatenate(W[1:a + b + 1], axis=1)
                lhs = np.einsum("wi,wj->wij", W[a], W[b]).reshape(n, -1)
                bad += int(np.count_nonzero(lhs != flat @ S))
                pairs += S.shape[1]
        return bad, pairs

    def exact():
        bad, pairs = compare(lambda I, J: infiltration(I, J).items())
        return bad == 0, n, f"{pairs} index pairs per word, {bad} failures"

    def riffle():
        bad, pairs = compare(lambda I, J: ((K, 1) for K in shuffles(I, J)))
        return bad > 0, n, f"riffle shuffles alone: {bad} of {pairs * n} products differ (expected, merge terms missing)"

    return [_timed("shuffle relation", exact), _timed("riffle-only shuffle form is incomplete", riffle)]


def lower_central_suite(rng: random.Random, n: int = 40, r: int = 3, depth: int = 5) -> List[Check]:
    def run():
        bad = 0
        cases = 0
        for _ in range(n):
            w = random_word(rng, r, rng.randint(1, 3))
            for d in range(1, depth + 1):
                if d > 1:
                    w = commutator(w, random_word(rng, r, rng.randint(1, 2)))
                cases += 1
                deg = (magnus(w, d, Z) - 1).degree()
                if deg is not None and deg < d:
                    bad += 1
        return bad == 0, cases, f"{bad} failures"

    return [_timed("lower central detection", run)]


# --------------------------------------------------------------------------
# automorphisms and Milnor numbers


def longitude_suite(rng: random.Random, n: int = 100, r: int = 3) -> List[Check]:
    def cocycle():
        bad = 0
        for _ in range(n):
            g, h = random_braid_aut(rng, r), random_braid_aut(rng, r)
            if longitude_cocycle(h, g) != longitudes(h.aut().compose(g.aut())):
                bad += 1
        return bad == 0, n, f"{bad} failures"

    def inverse():
        bad = 0
        for _ in range(n):
            h = random_braid_aut(rng, r)
            if longitude_inverse(h) != longitudes(h.aut().inverse()):
                bad += 1
        return bad == 0, n, f"{bad} failures"

    return [_timed("longitude cocycle", cocycle), _timed("longitude inverse", inverse)]


def conjugation_suite(rng: random.Random, n: int = 50, r: int = 3, top: int = 4, modes: Sequence[str] = ("extended", "classical")) -> List[Check]:
    out = []
    cases = [(random_braid_aut(rng, r), random_braid_aut(rng, r, 2)) for _ in range(n)]
    tables = []
    for g, h in cases:
        conj = h.compose(g).compose(h.inverse())
        tables.append((MilnorTable(g, top, Z), MilnorTable(conj, top, Z)))
    for mode in modes:
        def run(mode=mode):
            bad_d = bad_m = 0
            for a, b in tables:
                for k in range(2, top + 1):
                    for I in product(range(1, r + 1), repeat=k):
                        da, db = a.delta(I, mode), b.delta(I, mode)
                        if da != db:
                            bad_d += 1
                        diff = a.mu(I) - b.mu(I)
                        if (diff % da if da else diff) != 0:
                            bad_m += 1
            ok = bad_d == 0 and bad_m == 0
            return ok, n, f"{bad_d} indeterminacy mismatches, {bad_m} non-congruent numbers"

        out.append(_timed(f"conjugation invariance ({mode})", run))
    return out


# --------------------------------------------------------------------------
# Johnson theory


def johnson_suite(rng: random.Random, n: int = 50, r: int = 3, max_m: int = 3) -> List[Check]:
    cases = [(1 + k % max_m, random_level_mixed(rng, r, 1 + k % max_m, k)) for k in range(n)]

    def dual():
        bad = 0
        for m, g in cases:
            tau = johnson_hom(g, m)
            table = MilnorTable(g, m + 1, Z)
            if any(johnson_from_milnor(table, m, i) != tau[i - 1] for i in range(1, r + 1)):
                bad += 1
        return bad == 0, n, f"{bad} failures"

    def additive():
        bad = 0
        for m, g in cases:
            h = random_level_synthetic(rng, r, m)
            s = johnson_hom(g.compose(h), m)
            t = [a + b for a, b in zip(johnson_hom(g, m), johnson_hom(h, m))]
            if s != t:
                bad += 1
        return bad == 0, n, f"{bad} failures"

    return [_timed("Johnson homomorphism: Milnor formula", dual), _timed("Johnson homomorphism: additivity", additive)]


def coboundary_suite(rng: random.Random, n: int = 50, r: int = 3, l: int = 3, N: int = 4, D: int = 3) -> List[Check]:
    ring = Ring.mod(l, N)
    chis = (1, 1 + l, 1 - l, 1 + 2 * l)
    cases = []
    for k in range(n):
        if k % 2:
            cases.append((random_braid_aut(rng, r, 2), random_braid_aut(rng, r, 2)))
        else:
            cases.append((random_synthetic(rng, r, rng.choice(chis), 3), random_synthetic(rng, r, rng.choice(chis), 3)))

    def run(m):
        bad = 0
        for g1, g2 in cases:
            if component(johnson_map(g1.compose(g2), D, ring), m) != coboundary_rhs(g1, g2, D, ring, m):
                bad += 1
        return bad == 0, n, f"{bad} failures over {ring}"

    def eta():
        bad = 0
        for g1, g2 in cases:
            if eta_images(g1.compose(g2), D, ring) != eta_composite_rhs(g1, g2, D, ring):
                bad += 1
        return bad == 0, n, f"{bad} failures over {ring}"

    return [_timed("coboundary law, degree 1", lambda: run(1)), _timed("coboundary law, degree 2", lambda: run(2)),
            _timed("composition of Johnson maps", eta)]


# --------------------------------------------------------------------------
# Magnus and Gassner cocycles


def _mixed_pairs(rng: random.Random, n: int, r: int):
    out = []
    for k in range(n):
        if k % 2:
            out.append((random_braid_aut(rng, r), random_braid_aut(rng, r)))
        else:
            out.append((random_synthetic(rng, r, rng.choice((1, 4, -2))), random_synthetic(rng, r, rng.choice((1, 4)))))
    return out


def cocycle_suite(rng: random.Random, n: int = 50, r: int = 3, D: int = 4) -> List[Check]:
    pairs = _mixed_pairs(rng, n, r)
    # the reduced cocycle divides by monomials; chi = 1 keeps it integral over Z
    red_pairs = [(random_braid_aut(rng, r), random_braid_aut(rng, r)) if k % 2 else
                 (random_synthetic(rng, r, 1), random_synthetic(rng, r, 1)) for k in range(n)]

    def loop(fn, data):
        bad = sum(0 if fn(g, h, D) else 1 for g, h in data)
        return bad == 0, len(data), f"{bad} failures at D={D}"

    return [
        _timed("Magnus cocycle", lambda: loop(magnus_cocycle_check, pairs)),
        _timed("Gassner cocycle", lambda: loop(gassner_cocycle_check, pairs)),
        _timed("reduced Gassner cocycle", lambda: loop(gassner_reduced_cocycle_check, red_pairs)),
    ]


def structure_suite(rng: random.Random, n: int = 20, r: int = 3, D: int = 3) -> List[Check]:
    out = []

    def truncation():
        bad = 0
        for k in range(n):
            m = 1 + k % 3
            if not johnson_truncation_check(random_level_mixed(rng, r, m, k), m):
                bad += 1
        return bad == 0, n, f"{bad} failures"

    def trace():
        bad = 0
        for k in range(n):
            m = 1 + k % 3
            tau = johnson_hom(random_level_mixed(rng, r, m, k), m)
            if morita_trace(tau, m) != morita_trace_matrix(tau, m):
                bad += 1
        return bad == 0, n, f"{bad} failures"

    def gassner_routes():
        bad = 0
        for g, _ in _mixed_pairs(rng, n, r):
            G = gassner(g, D)
            if G != gassner_magnus(g, D) or G != gassner_from_milnor(g, D):
                bad += 1
            if magnus_cocycle(g, D) != magnus_cocycle_fox(g, D):
                bad += 1
        return bad == 0, n, f"{bad} failures"

    def kernel():
        bad = 0
        for _ in range(n):
            f = commutator(random_word(rng, r, 3), random_word(rng, r, 3))
            if not kernel_relation(crowell_nu1(f, D)).is_zero():
                bad += 1
        return bad == 0, n, f"{bad} failures"

    def intertwining():
        bad = 0
        for g, _ in _mixed_pairs(rng, n, r):
            f = commutator(random_word(rng, r, 3), random_word(rng, r, 3))
            if not meta_action_check(g, f, D):
                bad += 1
        return bad == 0, n, f"{bad} failures"

    def alexander_routes():
        bad = 0
        ring = Ring.mod(3, 3)
        for k in range(n):
            if k % 2:
                g = random_braid_aut(rng, r)
            else:
                g = random_synthetic(rng, r, rng.choice((1, 4, 10)))
            q = quotient_for(g, D, ring)
            Q = alexander_matrix_direct(g, D, ring, q)
            if Q != alexander_matrix_gassner(g, D, ring, q):
                bad += 1
            elif g.chi == 1 and q.reduce_matrix(alexander_matrix_milnor(g, D, ring)) != Q:
                bad += 1
        return bad == 0, n, f"{bad} failures"

    def similarity():
        bad = 0
        ring = Ring.mod(3, 3)
        for k in range(n):
            g = random_synthetic(rng, r, rng.choice((1, 4))) if k % 2 else random_braid_aut(rng, r)
            h = random_braid_aut(rng, r, 2)
            if not similarity_check(g, h, D, ring):
                bad += 1
        return bad == 0, n, f"{bad} failures"

    for name, fn in (
        ("Magnus cocycle truncates to Johnson", truncation),
        ("Morita trace, two routes", trace),
        ("Gassner, three routes", gassner_routes),
        ("Crowell kernel relation", kernel),
        ("Gassner intertwines the metabelian action", intertwining),
        ("Alexander matrix, dual routes", alexander_routes),
        ("Alexander matrix similarity under conjugation", similarity),
    ):
        out.append(_timed(name, fn))
    return out


# --------------------------------------------------------------------------
# Ihara series and number theory


def ihara_suite(rng: random.Random, n: int = 20, D: int = 5) -> List[Check]:
    def run():
        bad = 0
        for k in range(n):
            g = random_braid_aut(rng, 2, 2) if k % 4 == 3 else random_synthetic(rng, 2, rng.choice((1, 1, -1, 3, -2)), 5)
            a = ihara_from_reduced(g, D)
            if a != ihara_from_commutator(g, D) or a != ihara_from_milnor(g, D):
                bad += 1
        return bad == 0, n, f"{bad} failures at D={D}"

    return [_timed("Ihara series, three routes", run)]


JACOBI_CASES = ((3, 1, 7), (3, 2, 19), (3, 2, 37), (5, 1, 11))
SOULE_PRIMES = (19, 37)


def jacobi_suite(rng: random.Random = None, cases=JACOBI_CASES) -> List[Check]:
    out = []
    for l, n, p in cases:
        def run(l=l, n=n, p=p):
            F = FrobeniusInput(p, l, n).field()
            pairs = valid_pairs(l, n)
            bad = 0
            for a, b in pairs:
                J = jacobi_sum(F, a, b)
                if J * J.conj() != F.q:
                    bad += 1
            return bad == 0, len(pairs), f"q = {F.q}, {bad} failures"

        out.append(_timed(f"Weil norm of Jacobi sums (l={l}, n={n}, p={p})", run))
    return out


def recovery_suite(rng: random.Random = None, primes=SOULE_PRIMES, l: int = 3, n: int = 2, Dmax: int = 4,
                   targets=((1, 1), (2, 1), (1, 2))) -> List[Check]:
    out = []
    for p in primes:
        Fr = FrobeniusInput(p, l, n)
        F = Fr.field()
        holder: Dict[str, object] = {}

        def recover(Fr=Fr, F=F, holder=holder):
            table = mu_from_jacobi(Fr, Dmax, F)
            holder["table"] = table
            low = all(table.is_zero(*k) for k in ((1, 0), (0, 1), (1, 1)))
            prec = {f"{a},{b}": table.precision[(a, b)] for a, b in ((1, 0), (0, 1), (1, 1))}
            return table.self_check and low, 1, f"self-check {table.self_check}, low terms vanish {low}, precision {prec}"

        def soule(Fr=Fr, F=F, holder=holder):
            table = holder["table"]
            kap = kappas_for(Fr, max(sum(t) for t in targets), F)
            res = [soule_identity_check(table, kap, a, b) for a, b in targets]
            det = "; ".join(f"({x.N1},{x.N2}) residual {x.residual} to {x.certified} digit(s)" for x in res)
            return all(x.ok for x in res), len(res), det

        out.append(_timed(f"Jacobi-sum recovery of mu (p={p})", recover))
        out.append(_timed(f"Soule character identity (p={p})", soule))
    return out


def witt_suite(rng: random.Random = None, bounds=((2, 6), (3, 4))) -> List[Check]:
    def run():
        cases = [(r, k) for r, top in bounds for k in range(1, top + 1)]
        bad = [(r, k) for r, k in cases if witt_rank(r, k) != lyndon_count(r, k)]
        return not bad, len(cases), f"mismatches {bad}"

    return [_timed("Witt ranks vs Lyndon words", run)]


# --------------------------------------------------------------------------
# registry

SUITES: Dict[str, Callable[..., List[Check]]] = {
    "shuffle": shuffle_suite,
    "lcs": lower_central_suite,
    "longitude": longitude_suite,
    "conjugation": conjugation_suite,
    "johnson": johnson_suite,
    "coboundary": coboundary_suite,
    "cocycle": cocycle_suite,
    "structure": structure_suite,
    "ihara": ihara_suite,
    "jacobi": jacobi_suite,
    "recovery": recovery_suite,
    "witt": witt_suite,
}


def run_suite(name: str, seed: int = 0, **kw) -> List[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](random.Random(seed), **kw)
