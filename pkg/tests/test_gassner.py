from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import synthetic_auts, words
from milnorlab.automorphisms import AutP
from milnorlab.braid import braid_autp, parse_braid
from milnorlab.gassner import (
    NotInCommutatorSubgroup,
    burau_reduced,
    chi_action_matrix,
    chi_over_u,
    comm_identity,
    crowell_nu1,
    gassner,
    gassner_cocycle_check,
    gassner_from_milnor,
    gassner_magnus,
    gassner_reduced,
    gassner_reduced_cocycle_check,
    kernel_relation,
    magnus_cocycle,
    magnus_cocycle_check,
    magnus_cocycle_fox,
    meta_action_check,
    nc_identity,
)
from milnorlab.rings import Ring, TruncComm, Z, comm_matmul
from milnorlab.words import Word, commutator, parse_word

HOPF = braid_autp(parse_braid("s1^2"))
R = Ring.mod(3, 4)


def u(i, r=2, D=3):
    return TruncComm.var(i, r, D)


def braid_auts(max_len=3):
    letter = st.tuples(st.sampled_from(["A12", "A13", "A23"]), st.sampled_from([1, -1]))
    return st.lists(letter, min_size=0, max_size=max_len).map(
        lambda L: braid_autp(parse_braid(" ".join(f"{b}^{e}" for b, e in L) or "", 3))
    )


class TestCrowell:
    def test_commutator(self):
        assert crowell_nu1(parse_word("[x1,x2]", 2), 3) == [-u(2), u(1)]

    def test_rejects_nonzero_exponent_sum(self):
        with pytest.raises(NotInCommutatorSubgroup):
            crowell_nu1(parse_word("x1", 2), 2)

    @given(words(3, 5), words(3, 5))
    def test_kernel_relation(self, a, b):
        assert kernel_relation(crowell_nu1(commutator(a, b), 4)).is_zero()


class TestGassner:
    def test_identity(self):
        assert gassner(AutP.identity(3), 3) == comm_identity(3, 3, 3)
        assert magnus_cocycle(AutP.identity(3), 3) == nc_identity(3, 3)

    def test_hopf(self):
        one = TruncComm.one(2, 2)
        u1, u2 = u(1, D=2), u(2, D=2)
        assert gassner(HOPF, 2) == [[one + u2 + u1 * u2, -u2], [-u1 - u1 * u1, one + u1]]

    def test_reduced_hopf(self):
        one = TruncComm.one(2, 3)
        assert gassner_reduced(HOPF, 3) == [[one + u(1) + u(2) + u(1) * u(2)]]

    def test_reduced_burau_hopf_is_t_squared(self):
        t = TruncComm.one(1, 3) + TruncComm.var(1, 1, 3)
        assert burau_reduced(HOPF, 3) == [[t * t]]

    def test_chi_over_u(self):
        assert chi_over_u(4, 1, 2, 3) == TruncComm(2, 3, Z, {(0, 0): 4, (1, 0): 6, (2, 0): 4, (3, 0): 1})

    @given(synthetic_auts(chis=(1, 4, -2), max_len=3))
    def test_three_routes(self, g):
        G = gassner(g, 3)
        assert G == gassner_magnus(g, 3) == gassner_from_milnor(g, 3)

    @given(synthetic_auts(chis=(1, -2, 4), max_len=3))
    def test_magnus_cocycle_two_routes(self, g):
        assert magnus_cocycle(g, 3) == magnus_cocycle_fox(g, 3)

    @given(synthetic_auts(chis=(1, 4, -2), max_len=3), synthetic_auts(chis=(1, 4, 7), max_len=3))
    def test_gassner_cocycle(self, g, h):
        assert gassner_cocycle_check(g, h, 3)
        assert gassner_cocycle_check(g, h, 3, R)

    @given(synthetic_auts(chis=(1, 4), max_len=2), synthetic_auts(chis=(1, -2), max_len=2))
    def test_magnus_cocycle(self, g, h):
        assert magnus_cocycle_check(g, h, 3)

    @given(synthetic_auts(chis=(1,), max_len=3), synthetic_auts(chis=(1,), max_len=3))
    def test_reduced_cocycle(self, g, h):
        assert gassner_reduced_cocycle_check(g, h, 3)

    @given(braid_auts(), braid_auts())
    def test_braid_reduced_cocycle(self, g, h):
        assert gassner_reduced_cocycle_check(g, h, 2)

    @given(synthetic_auts(chis=(1, 4, 10), max_len=3))
    def test_gassner_invertible(self, g):
        # constant term of Gass is diag(chi), a unit over Z/3^4 when 3 does not divide chi
        G = gassner(g, 3, R)
        const = [[e.const() for e in row] for row in G]
        assert all(R.reduce(const[i][j] - (g.chi if i == j else 0)) == 0 for i in range(3) for j in range(3))

    @given(synthetic_auts(chis=(1, 4, -2), max_len=3), words(3, 4), words(3, 4))
    def test_meta_action(self, g, a, b):
        assert meta_action_check(g, commutator(a, b), 3)

    def test_meta_action_nontrivial_chi(self):
        g = AutP(4, [parse_word("x2 x3", 3), parse_word("x1^-1", 3), parse_word("[x1,x2]", 3)])
        f = parse_word("[x1,[x1,x2]]", 3)
        assert meta_action_check(g, f, 4)

    def test_chi_action_twists_cocycle(self):
        g = AutP(4, [Word.gen(2, 2), Word.gen(1, 2)])
        h = HOPF
        lhs = gassner(g.compose(h), 2)
        assert lhs == comm_matmul(gassner(g, 2), chi_action_matrix(gassner(h, 2), 4))
        assert lhs != comm_matmul(gassner(g, 2), gassner(h, 2))
