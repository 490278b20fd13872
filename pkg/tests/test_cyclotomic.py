from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_mul, gf_pow_mod, gf_rem

from oracles import brute_dlog, cyclo_complex, jacobi_complex
from milnorlab.cyclotomic import (
    CycloInt,
    FieldError,
    FrobeniusInput,
    ResidueField,
    cyclotomic_unit,
    jacobi_sum,
    order_mod,
    power_residue_symbol,
    soule_chi,
    soule_kappa,
    valid_pairs,
    weil_norm_ok,
)

LEVELS = [(3, 1), (3, 2), (5, 1), (2, 3)]


def cyclo(l, n):
    L = l ** n
    return st.lists(st.integers(-5, 5), min_size=L, max_size=L).map(lambda c: CycloInt(l, n, c))


def close(a: complex, b: complex) -> bool:
    return abs(a - b) < 1e-6 * (1 + abs(b))


def to_gf(x: int, F: ResidueField):
    d = []
    for _ in range(F.f):
        d.append(x % F.p)
        x //= F.p
    return list(reversed(d))


class TestCycloInt:
    @pytest.mark.parametrize("l,n", LEVELS)
    def test_zeta_order(self, l, n):
        z = CycloInt.zeta_power(1, l, n)
        assert z ** (l ** n) == 1
        assert z ** (l ** (n - 1)) != 1

    @pytest.mark.parametrize("l,n", LEVELS)
    def test_degree_is_euler_phi(self, l, n):
        assert CycloInt.zeta_power(1, l, n).degree == l ** n - l ** (n - 1)

    @given(st.sampled_from(LEVELS).flatmap(lambda ln: st.tuples(cyclo(*ln), cyclo(*ln), cyclo(*ln))))
    def test_ring_laws(self, t):
        a, b, c = t
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a

    @given(st.sampled_from(LEVELS).flatmap(lambda ln: st.tuples(cyclo(*ln), cyclo(*ln))))
    def test_complex_embedding(self, t):
        a, b = t
        L = a.order
        assert close(cyclo_complex((a * b).coeffs, L), cyclo_complex(a.coeffs, L) * cyclo_complex(b.coeffs, L))
        assert close(cyclo_complex((a + b).coeffs, L), cyclo_complex(a.coeffs, L) + cyclo_complex(b.coeffs, L))

    @given(st.sampled_from(LEVELS).flatmap(lambda ln: st.tuples(cyclo(*ln), cyclo(*ln))), st.sampled_from([1, 2, 4, 7, -1]))
    def test_sigma_is_ring_map(self, t, s):
        a, b = t
        if s % a.l == 0:
            return
        assert (a * b).sigma(s) == a.sigma(s) * b.sigma(s)
        assert close(cyclo_complex(a.sigma(s).coeffs, a.order), cyclo_complex(a.coeffs, a.order, s))

    def test_sigma_rejects_multiples_of_l(self):
        with pytest.raises(ValueError):
            CycloInt.zeta_power(1, 3, 2).sigma(3)

    def test_level_mismatch(self):
        with pytest.raises(ValueError):
            CycloInt.integer(1, 3, 1) + CycloInt.integer(1, 3, 2)

    def test_norm_of_zeta_minus_one(self):
        # prod over a prime to l of (zeta^a - 1) = Phi_{l^n}(1) = l, up to the sign (-1)^phi = 1
        for l, n in [(3, 1), (3, 2), (5, 1)]:
            prod = CycloInt.integer(1, l, n)
            for a in range(1, l ** n):
                if a % l:
                    prod = prod * (CycloInt.zeta_power(a, l, n) - 1)
            assert prod == l


class TestResidueField:
    @pytest.mark.parametrize("p,f,l,n", [(7, 1, 3, 1), (19, 1, 3, 2), (11, 1, 5, 1), (2, 2, 3, 1), (5, 2, 3, 1), (2, 6, 3, 2)])
    def test_omega_order(self, p, f, l, n):
        F = ResidueField(p, f, l, n)
        assert F.pow(F.omega, F.L) == 1
        assert F.pow(F.omega, F.L // l) != 1

    @pytest.mark.parametrize("p", [7, 13, 19, 37])
    def test_dlog_prime_field(self, p):
        F = ResidueField(p, 1, 3, 1)
        for x in range(1, p):
            assert F.dlog(x) == brute_dlog(x, F.gamma, p)

    @pytest.mark.parametrize("p,f,l,n", [(5, 2, 3, 1), (2, 6, 3, 2), (2, 4, 5, 1)])
    def test_extension_arithmetic_against_sympy(self, p, f, l, n):
        F = ResidueField(p, f, l, n)
        mod = list(reversed(F.modulus))
        for x in range(1, F.q, max(1, F.q // 40)):
            for y in range(1, F.q, max(1, F.q // 7)):
                expect = gf_rem(gf_mul(to_gf(x, F), to_gf(y, F), p, ZZ), mod, p, ZZ)
                got = to_gf(F.mul(x, y), F)
                assert [int(c) for c in expect] == [int(c) for c in got[len(got) - len(expect):]] and not any(got[: len(got) - len(expect)])

    @pytest.mark.parametrize("p,f,l,n", [(5, 2, 3, 1), (2, 6, 3, 2), (2, 4, 5, 1), (19, 1, 3, 2)])
    def test_symbol_definition(self, p, f, l, n):
        F = ResidueField(p, f, l, n)
        mod = list(reversed(F.modulus or [0, 1]))
        for x in range(1, F.q, max(1, F.q // 30)):
            c = power_residue_symbol(x, F)
            lhs = gf_pow_mod(to_gf(x, F), (F.q - 1) // F.L, mod, p, ZZ) if f > 1 else [pow(x, (F.q - 1) // F.L, p)]
            rhs = to_gf(F.pow(F.omega, c), F) if f > 1 else [F.pow(F.omega, c)]
            assert [int(v) for v in lhs] == [int(v) for v in rhs[len(rhs) - len(lhs):]]

    @given(st.integers(1, 360), st.integers(1, 360))
    def test_symbol_multiplicative(self, x, y):
        F = ResidueField(19, 2, 3, 2)
        assert power_residue_symbol(F.mul(x, y), F) == (power_residue_symbol(x, F) + power_residue_symbol(y, F)) % F.L

    @pytest.mark.parametrize(
        "args",
        [(9, 1, 3, 1), (3, 1, 3, 1), (7, 1, 3, 2), (10007, 3, 3, 1)],
    )
    def test_field_errors(self, args):
        with pytest.raises(FieldError):
            ResidueField(*args)

    def test_zero_has_no_log(self):
        with pytest.raises(FieldError):
            ResidueField(7, 1, 3, 1).dlog(0)

    def test_frobenius_input(self):
        Fr = FrobeniusInput(2, 3, 2)
        assert (Fr.f, Fr.e) == (6, 2)
        assert order_mod(2, 9) == 6
        assert FrobeniusInput(19, 3, 2).e == 2
        assert FrobeniusInput(37, 3, 2).e == 2
        with pytest.raises(FieldError):
            FrobeniusInput(7, 3, 2, f=1)


class TestJacobi:
    @pytest.mark.parametrize("p,l,n", [(7, 3, 1), (13, 3, 1), (19, 3, 2), (37, 3, 2), (11, 5, 1), (31, 5, 1)])
    def test_against_complex_sum(self, p, l, n):
        F = ResidueField(p, 1, l, n)
        for a, b in valid_pairs(l, n)[:12]:
            J = jacobi_sum(F, a, b)
            assert close(cyclo_complex(J.coeffs, F.L), jacobi_complex(p, F.L, a, b, F.gamma))

    @pytest.mark.parametrize("p,f,l,n", [(7, 1, 3, 1), (19, 1, 3, 2), (2, 2, 3, 1), (5, 2, 3, 1), (2, 4, 5, 1), (2, 6, 3, 2)])
    def test_weil_norm(self, p, f, l, n):
        F = ResidueField(p, f, l, n)
        assert all(weil_norm_ok(F, a, b) for a, b in valid_pairs(l, n))

    @pytest.mark.parametrize("p,f,l,n", [(7, 1, 3, 1), (19, 1, 3, 2), (5, 2, 3, 1), (11, 1, 5, 1)])
    def test_congruent_to_one_mod_zeta_minus_one(self, p, f, l, n):
        # Z[zeta]/(zeta - 1) = Z/l via zeta -> 1
        F = ResidueField(p, f, l, n)
        for a, b in valid_pairs(l, n):
            assert sum(jacobi_sum(F, a, b).coeffs) % l == 1

    @pytest.mark.parametrize("t", [2, 4, 5, 7, 8])
    def test_galois_conjugates(self, t):
        F = ResidueField(19, 1, 3, 2)
        for a, b in valid_pairs(3, 2)[:20]:
            assert jacobi_sum(F, a, b).sigma(t) == jacobi_sum(F, t * a, t * b)

    def test_symmetric(self):
        F = ResidueField(37, 1, 3, 2)
        for a, b in valid_pairs(3, 2)[:20]:
            assert jacobi_sum(F, a, b) == jacobi_sum(F, b, a)

    def test_invalid_pairs(self):
        F = ResidueField(19, 1, 3, 2)
        with pytest.raises(FieldError):
            jacobi_sum(F, 0, 1)
        with pytest.raises(FieldError):
            jacobi_sum(F, 3, 6)

    def test_valid_pairs(self):
        pairs = valid_pairs(3, 1)
        assert pairs == [(1, 1), (2, 2)]


class TestSoule:
    @pytest.mark.parametrize("p,l,n", [(7, 3, 1), (13, 3, 1), (19, 3, 2), (37, 3, 2), (11, 5, 1), (31, 5, 1)])
    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_against_evaluated_unit(self, p, l, n, m):
        Fr = FrobeniusInput(p, l, n)
        F = Fr.field()
        val = cyclotomic_unit(m, l, n).evaluate_mod(F.omega, p)
        assert soule_chi(m, Fr, F) == brute_dlog(val, F.gamma, p) % F.L

    @pytest.mark.parametrize("p,l,n", [(19, 3, 2), (11, 5, 1)])
    def test_literal_form(self, p, l, n):
        Fr = FrobeniusInput(p, l, n)
        F = Fr.field()
        for m in (1, 2, 3):
            val = cyclotomic_unit(m, l, n, form="literal").evaluate_mod(F.omega, p)
            assert soule_chi(m, Fr, F, form="literal") == brute_dlog(val, F.gamma, p) % F.L

    def test_kappa(self):
        Fr = FrobeniusInput(19, 3, 2)
        for m in (2, 3, 4):
            k = soule_kappa(m, Fr)
            assert k * (1 - 3 ** (m - 1)) % 9 == soule_chi(m, Fr) % 9

    def test_bad_m(self):
        with pytest.raises(ValueError):
            cyclotomic_unit(0, 3, 1)
        with pytest.raises(ValueError):
            soule_kappa(1, FrobeniusInput(19, 3, 2))
