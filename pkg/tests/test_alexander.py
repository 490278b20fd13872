from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import synthetic_auts, words
from milnorlab.alexander import (
    LinkPresentation,
    alexander_gcd,
    alexander_invariant,
    alexander_matrix,
    alexander_matrix_direct,
    alexander_matrix_gassner,
    alexander_matrix_milnor,
    comm_matrix_inverse,
    fitting_chain_witness,
    fitting_ideals,
    quotient_for,
    similarity_check,
)
from milnorlab.automorphisms import AutP
from milnorlab.braid import braid_autp, parse_braid
from milnorlab.gassner import comm_identity, gassner
from milnorlab.rings import Ring, RingError, TruncComm, comm_matmul, comm_one_plus_u_pow
from milnorlab.suites import random_braid_aut

R = Ring.mod(3, 4)
R3 = Ring.mod(3, 3)
HOPF = braid_autp(parse_braid("s1^2"))


def comm_elements(r=2, D=3):
    coeff = st.integers(-20, 20)
    mono = st.tuples(*[st.integers(0, D)] * r).filter(lambda e: sum(e) <= D)
    return st.dictionaries(mono, coeff, max_size=6).map(lambda t: TruncComm(r, D, R, t))


class TestPresentation:
    def test_identity_relators_are_commutator_like(self):
        rels = LinkPresentation(AutP.identity(2)).relators()
        assert all(w.is_identity() for w in rels)

    @given(synthetic_auts(chis=(1, 4), max_len=3))
    def test_relator_exponent_sums(self, g):
        for i, w in enumerate(LinkPresentation(g).relators_conjugation_form(), start=1):
            sums = w.exponent_sums()
            assert sums[i - 1] == g.chi - 1 and sum(abs(s) for s in sums) == abs(g.chi - 1)


class TestQuotient:
    @given(comm_elements())
    def test_reduce_idempotent(self, s):
        q = quotient_for(AutP(4, [parse_word_gen(2), parse_word_gen(1)]), 3, R)
        assert q.reduce(q.reduce(s)) == q.reduce(s)

    @given(comm_elements(), st.integers(1, 2))
    def test_relation_vanishes(self, s, i):
        q = quotient_for(AutP(4, [parse_word_gen(2), parse_word_gen(1)]), 3, R)
        rho = comm_one_plus_u_pow(i, 3, 2, 3, R) - 1
        assert q.is_zero(rho * s)

    @given(comm_elements(), comm_elements())
    def test_reduce_is_multiplicative(self, a, b):
        q = quotient_for(AutP(-2, [parse_word_gen(2), parse_word_gen(1)]), 3, R)
        assert q.reduce(q.reduce(a) * b) == q.reduce(a * b)

    def test_trivial_when_chi_is_one(self):
        q = quotient_for(HOPF, 3, R)
        s = TruncComm(2, 3, R, {(1, 2): 5, (0, 0): 1})
        assert q.reduce(s) == s


def parse_word_gen(i, r=2):
    from milnorlab.words import Word

    return Word.gen(i, r)


class TestAlexanderMatrix:
    def test_hopf(self):
        d = alexander_matrix(HOPF, 3, R)
        u1, u2 = TruncComm.var(1, 2, 3, R), TruncComm.var(2, 2, 3, R)
        assert d.Q == [[u2 + u1 * u2, -u2], [-u1 - u1 * u1, u1]]
        assert [m.is_zero() for m in d.fitting(0)] == [True]
        assert d.fitting(1) == [d.Q[0][0], d.Q[0][1], d.Q[1][0], d.Q[1][1]]
        assert d.fitting(2) == [TruncComm.one(2, 3, R)]
        assert d.to_json()["A"] == "0"

    def test_identity(self):
        d = alexander_matrix(AutP.identity(3), 3, R)
        assert all(e.is_zero() for row in d.Q for e in row)
        assert alexander_invariant(AutP.identity(3), 3, R)[1]

    def test_hopf_gcd(self):
        Q = alexander_matrix(HOPF, 3).Q
        assert alexander_gcd(Q, 0)[0] == 0
        assert alexander_gcd(Q, 1)[0] == 1

    def test_gcd_only_over_z(self):
        with pytest.raises(RingError):
            alexander_gcd(alexander_matrix(HOPF, 2, R).Q, 1)

    def test_negative_index(self):
        with pytest.raises(ValueError):
            fitting_ideals(alexander_matrix(HOPF, 2, R).Q, -1)

    @given(synthetic_auts(chis=(1, 4, 10, -2), max_len=3))
    def test_dual_routes(self, g):
        q = quotient_for(g, 3, R3)
        assert alexander_matrix_direct(g, 3, R3, q) == alexander_matrix_gassner(g, 3, R3, q)

    @given(synthetic_auts(chis=(1,), max_len=3))
    def test_milnor_route(self, g):
        q = quotient_for(g, 3, R3)
        assert q.reduce_matrix(alexander_matrix_milnor(g, 3, R3)) == alexander_matrix_direct(g, 3, R3, q)

    @pytest.mark.parametrize("chi", [4, 28])
    def test_milnor_route_needs_trivial_chi(self, chi):
        # 28 = 1 mod 27 is still rejected
        with pytest.raises(ValueError):
            alexander_matrix_milnor(AutP(chi, [parse_word_gen(2), parse_word_gen(1)]), 2, R3)

    @given(synthetic_auts(chis=(1, 4), max_len=3), st.integers(0, 2))
    def test_fitting_chain(self, g, n):
        d = alexander_matrix(g, 3, R3)
        assert fitting_chain_witness(d.Q, n, d.quotient)

    @given(synthetic_auts(chis=(1,), max_len=3))
    def test_trivial_chi_has_vanishing_invariant(self, g):
        # the columns of Gass - I are killed by (u_1..u_r) on the left when chi = 1
        assert alexander_invariant(g, 3, R)[1]

    @pytest.mark.parametrize("seed", range(8))
    def test_similarity(self, seed):
        rng = random.Random(seed)
        g = random_braid_aut(rng, 3)
        h = random_braid_aut(rng, 3, 2)
        assert similarity_check(g, h, 3, R3)

    def test_similarity_needs_trivial_chi(self):
        with pytest.raises(ValueError):
            similarity_check(HOPF, AutP(4, [parse_word_gen(2), parse_word_gen(1)]), 2, R)

    @given(synthetic_auts(chis=(1, 4), max_len=3))
    def test_matrix_inverse(self, g):
        P = gassner(g, 3, R)
        assert comm_matmul(P, comm_matrix_inverse(P)) == comm_identity(3, 3, 3, R)
