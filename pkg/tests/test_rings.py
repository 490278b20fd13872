from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import words
from milnorlab.magnus import magnus
from milnorlab.rings import LaurentPoly, Ring, RingError, TruncComm, TruncNC, Z, comm_det, gen_binom, lval
from oracles import nc_expand

R3 = Ring.mod(3, 4)


def nc_series(r=2, D=3, ring=Z, coeff=st.integers(-4, 4)):
    monos = st.lists(st.integers(1, r), min_size=0, max_size=D).map(tuple)
    return st.dictionaries(monos, coeff, max_size=8).map(lambda t: TruncNC(r, D, ring, t))


def comm_series(r=2, D=3, ring=Z):
    expos = st.tuples(*[st.integers(0, D)] * r)
    return st.dictionaries(expos, st.integers(-4, 4), max_size=8).map(lambda t: TruncComm(r, D, ring, {e: c for e, c in t.items() if sum(e) <= D}))


X1 = TruncNC.var(1, 2, 3)
X2 = TruncNC.var(2, 2, 3)


class TestRing:
    def test_kinds(self):
        assert Ring.integers().kind == "Z"
        assert Ring.mod(3, 2).modulus == 9
        assert Ring.rationals().reduce(Fraction(1, 2)) == Fraction(1, 2)

    def test_rejects_composite_modulus(self):
        with pytest.raises(RingError):
            Ring.mod(4, 2)

    def test_units_and_inverses(self):
        assert R3.is_unit(4) and not R3.is_unit(6)
        assert R3.inv(4) * 4 % 81 == 1
        assert Z.inv(-1) == -1
        with pytest.raises(RingError):
            Z.inv(2)

    def test_valuation(self):
        assert R3.valuation(18) == 2
        assert R3.valuation(81) is None
        assert lval(0, 3) is None and lval(45, 3) == 2

    def test_signed_representative(self):
        assert R3.signed(80) == -1

    @given(st.integers(-30, 30), st.integers(0, 8))
    def test_gen_binom_matches_falling_factorial(self, a, k):
        num = 1
        for t in range(k):
            num *= a - t
        den = 1
        for t in range(1, k + 1):
            den *= t
        assert gen_binom(a, k) == Fraction(num, den)


class TestTruncNC:
    def test_product_of_generators(self):
        assert (1 + X1) * (1 + X2) == TruncNC(2, 3, Z, {(): 1, (1,): 1, (2,): 1, (1, 2): 1})

    def test_commutator_product_at_degree_two(self):
        one = TruncNC.one(2, 2)
        a, b = TruncNC.var(1, 2, 2), TruncNC.var(2, 2, 2)
        prod = (one + a) * (one + b) * (one + a).inv() * (one + b).inv()
        # oracle: sympy noncommutative expansion of the same product
        expected = nc_expand([(1, 1), (2, 1), (1, -1), (2, -1)], 2, 2)
        assert prod.terms == expected == {(): 1, (1, 2): 1, (2, 1): -1}

    def test_inverse_geometric(self):
        assert (1 + X1).inv() == TruncNC(2, 3, Z, {(): 1, (1,): -1, (1, 1): 1, (1, 1, 1): -1})
        assert TruncNC.one(2, 3).inv() == TruncNC.one(2, 3)

    def test_binomial_pow_small(self):
        assert X1.binomial_pow(2) == TruncNC(2, 3, Z, {(): 1, (1,): 2, (1, 1): 1})
        assert TruncNC.var(1, 2, 2).binomial_pow(-1) == TruncNC(2, 2, Z, {(): 1, (1,): -1, (1, 1): 1})

    def test_binomial_pow_prime_power_mod(self):
        ring = Ring.mod(3, 2)
        s = TruncNC.var(1, 1, 3, ring).binomial_pow(19)
        assert [s.coeff((1,) * k) for k in range(4)] == [comb(19, k) % 9 for k in range(4)]

    def test_bar_examples(self):
        x = TruncNC.var(1, 2, 2)
        assert (1 + x).bar() == TruncNC(2, 2, Z, {(): 1, (1,): -1, (1, 1): 1})
        m = TruncNC(2, 2, Z, {(1, 2): 1})
        assert m.bar().homogeneous(2) == TruncNC(2, 2, Z, {(2, 1): 1})

    def test_strip_right(self):
        s = TruncNC(2, 3, Z, {(): 1, (1, 2): 1})
        assert s.strip_right(2) == TruncNC(2, 3, Z, {(1,): 1})

    def test_shape_mismatch(self):
        with pytest.raises(RingError):
            X1 + TruncNC.var(1, 2, 4)

    def test_render(self):
        assert TruncNC(2, 3, Z, {(): 1, (1, 1): -2, (1, 2): 1}).render() == "1 - 2*X1^2 + X1*X2"

    @given(nc_series(), nc_series(), nc_series())
    def test_ring_axioms(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert a * TruncNC.one(2, 3) == a

    @given(nc_series(), nc_series())
    def test_degree_of_product(self, a, b):
        p = a * b
        if not p.is_zero() and not a.is_zero() and not b.is_zero():
            assert p.degree() >= a.degree() + b.degree()

    @given(nc_series(), nc_series())
    def test_bar_is_antimultiplicative_involution(self, a, b):
        assert a.bar().bar() == a
        assert (a * b).bar() == b.bar() * a.bar()

    @given(nc_series(), st.integers(-6, 6), st.integers(-6, 6))
    def test_binomial_pow_exponent_law(self, a, x, y):
        s = a - a.const()
        assert s.binomial_pow(x + y) == s.binomial_pow(x) * s.binomial_pow(y)

    @given(words(r=2, max_len=6))
    def test_inverse_of_expansion(self, w):
        t = magnus(w, 4)
        assert t.inv() * t == TruncNC.one(2, 4)

    @given(words(r=2, max_len=6))
    def test_bar_matches_inverse_word(self, w):
        assert magnus(w, 4).bar() == magnus(w.inverse(), 4)

    @given(nc_series(ring=R3, coeff=st.integers(0, 80)))
    def test_mod_ring_inverse(self, a):
        a = a - a.const() + 4
        assert a * a.inv() == TruncNC.one(2, 3, R3)


class TestTruncComm:
    @given(comm_series(), comm_series(), comm_series())
    def test_commutative_ring(self, a, b, c):
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    def test_monomial_division(self):
        s = TruncComm(2, 3, Z, {(1, 1): 2, (2, 1): 1})
        assert s.div_monomial((1, 1)) == TruncComm(2, 3, Z, {(0, 0): 2, (1, 0): 1})

    def test_inverse(self):
        s = TruncComm(2, 3, Z, {(0, 0): 1, (1, 0): 1, (0, 1): -1})
        assert s * s.inv() == TruncComm.one(2, 3)

    def test_render(self):
        assert TruncComm(2, 2, Z, {(0, 0): 1, (1, 1): -1}).render() == "1 - u1*u2"

    def test_det(self):
        u1, u2 = TruncComm.var(1, 2, 3), TruncComm.var(2, 2, 3)
        assert comm_det([[u1, u2], [u2, u1]]) == u1 * u1 - u2 * u2


class TestLaurent:
    def test_expansion_is_a_ring_map(self):
        t1 = LaurentPoly.monomial((1, 0), 2)
        t2inv = LaurentPoly.monomial((0, -1), 2)
        p = t1 * 3 - t2inv + 2
        q = t1 * t2inv - 1
        assert (p * q).to_comm(4) == p.to_comm(4) * q.to_comm(4)

    def test_inverse_variable(self):
        s = LaurentPoly.monomial((-1,), 1).to_comm(3)
        assert s == TruncComm(1, 3, Z, {(0,): 1, (1,): -1, (2,): 1, (3,): -1})

    def test_single_variable_and_value_at_one(self):
        p = LaurentPoly(2, {(1, 0): 2, (0, 1): -1})
        assert p.to_single() == LaurentPoly(1, {(1,): 1})
        assert p.at_one() == 1
