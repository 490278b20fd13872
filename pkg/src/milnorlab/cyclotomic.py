"""Residue fields, cyclotomic integers, Jacobi sums, power residues and Soule characters."""

from __future__ import annotations

from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint, isprime

MAX_FIELD = 10 ** 8


class FieldError(ValueError):
    pass


# --------------------------------------------------------------------------
# cyclotomic integers


def _cyclo_reduce(c: Sequence[int], l: int, n: int) -> List[int]:
    """Reduce a coefficient list modulo Phi_{l^n}(x) = sum_{k<l} x^{k l^{n-1}}."""
    L = l ** n
    ph = L - L // l
    s = l ** (n - 1)
    v = [0] * L
    for i, x in enumerate(c):
        v[i % L] += x
    for i in range(L - 1, ph - 1, -1):
        x = v[i]
        if x:
            v[i] = 0
            j = i - ph
            for k in range(l - 1):
                v[k * s + j] -= x
    return v[:ph]


class CycloInt:
    """Element of Z[zeta_{l^n}] in the power basis 1, zeta, ..., zeta^{phi-1}."""

    __slots__ = ("l", "n", "coeffs")

    def __init__(self, l: int, n: int, coeffs: Sequence[int] = ()):
        self.l, self.n = l, n
        self.coeffs = tuple(_cyclo_reduce([int(x) for x in coeffs], l, n))

    @property
    def order(self) -> int:
        return self.l ** self.n

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @classmethod
    def integer(cls, c: int, l: int, n: int) -> "CycloInt":
        return cls(l, n, [c])

    @classmethod
    def zeta_power(cls, k: int, l: int, n: int) -> "CycloInt":
        L = l ** n
        v = [0] * L
        v[k % L] = 1
        return cls(l, n, v)

    def _lift(self, other) -> "CycloInt":
        if isinstance(other, CycloInt):
            if (other.l, other.n) != (self.l, self.n):
                raise ValueError("cyclotomic level mismatch")
            return other
        return CycloInt.integer(int(other), self.l, self.n)

    def __add__(self, other):
        o = self._lift(other)
        return CycloInt(self.l, self.n, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloInt(self.l, self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        out = [0] * (2 * self.degree)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] += a * b
        return CycloInt(self.l, self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not available in Z[zeta]")
        out = CycloInt.integer(1, self.l, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycloInt.integer(other, self.l, self.n)
        return isinstance(other, CycloInt) and (self.l, self.n, self.coeffs) == (other.l, other.n, other.coeffs)

    def __hash__(self):
        return hash((self.l, self.n, self.coeffs))

    def sigma(self, t: int) -> "CycloInt":
        """Galois automorphism zeta -> zeta^t."""
        if gcd(t, self.l) != 1:
            raise ValueError("t must be prime to l")
        L = self.order
        v = [0] * L
        for i, a in enumerate(self.coeffs):
            v[(i * t) % L] += a
        return CycloInt(self.l, self.n, v)

    def conj(self) -> "CycloInt":
        return self.sigma(-1)

    def is_rational_integer(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def mod(self, m: int) -> Tuple[int, ...]:
        return tuple(c % m for c in self.coeffs)

    def evaluate_mod(self, root: int, p: int) -> int:
        """Image in F_p under zeta -> root."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * root + c) % p
        return acc

    def __repr__(self):
        return f"CycloInt(l={self.l}, n={self.n}, {list(self.coeffs)})"


# --------------------------------------------------------------------------
# residue fields


class ResidueField:
    """F_{p^f} with smallest primitive generator, discrete-log table and an l^n-th root of unity.

    Elements are encoded as integers 0..q-1 (base-p digits are polynomial coefficients).
    """

    def __init__(self, p: int, f: int, l: int, n: int):
        if not isprime(p):
            raise FieldError(f"{p} is not prime")
        if p == l:
            raise FieldError("p must differ from l")
        q = p ** f
        if q > MAX_FIELD:
            raise FieldError(f"p^f = {q} exceeds the table bound {MAX_FIELD}")
        L = l ** n
        if (q - 1) % L:
            raise FieldError(f"l^n = {L} does not divide p^f - 1 = {q - 1}")
        self.p, self.f, self.l, self.n, self.q, self.L = p, f, l, n, q, L
        self.modulus = _irreducible(p, f) if f > 1 else None
        self.gamma, self.exp, self.log = self._tables()
        self.omega = int(self.exp[(q - 1) // L])

    # arithmetic on encoded elements
    def _digits(self, x: int) -> List[int]:
        d = []
        for _ in range(self.f):
            d.append(x % self.p)
            x //= self.p
        return d

    def _encode(self, d: Sequence[int]) -> int:
        x = 0
        for c in reversed(d):
            x = x * self.p + (c % self.p)
        return x

    def add(self, x: int, y: int) -> int:
        if self.f == 1:
            return (x + y) % self.p
        return self._encode([a + b for a, b in zip(self._digits(x), self._digits(y))])

    def neg(self, x: int) -> int:
        if self.f == 1:
            return (-x) % self.p
        return self._encode([-a for a in self._digits(x)])

    def _polymul(self, x: int, y: int) -> int:
        p, f = self.p, self.f
        a, b = self._digits(x), self._digits(y)
        prod = [0] * (2 * f - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    prod[i + j] += u * v
        mod = self.modulus  # monic, low-to-high coefficients, length f+1
        for k in range(len(prod) - 1, f - 1, -1):
            c = prod[k] % p
            if c:
                for t in range(f + 1):
                    prod[k - f + t] -= c * mod[t]
        return self._encode(prod[:f])

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self.f == 1:
            return x * y % self.p
        return int(self.exp[(int(self.log[x]) + int(self.log[y])) % (self.q - 1)])

    def pow(self, x: int, k: int) -> int:
        if x == 0:
            if k <= 0:
                raise FieldError("0 has no nonpositive powers")
            return 0
        return int(self.exp[(int(self.log[x]) * k) % (self.q - 1)])

    def dlog(self, x: int) -> int:
        if x % self.q == 0:
            raise FieldError("discrete log of 0")
        return int(self.log[x])

    def _is_primitive(self, g: int, mulf) -> bool:
        q = self.q
        for r in factorint(q - 1):
            if self._slow_pow(g, (q - 1) // r, mulf) == 1:
                return False
        return True

    @staticmethod
    def _slow_pow(g: int, k: int, mulf) -> int:
        out, base = 1, g
        while k:
            if k & 1:
                out = mulf(out, base)
            base = mulf(base, base)
            k >>= 1
        return out

    def _tables(self):
        q = self.q
        mulf = (lambda a, b: a * b % self.p) if self.f == 1 else self._polymul
        gamma = next(g for g in range(2 if q > 2 else 1, q) if self._is_primitive(g, mulf))
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        if self.f == 1:
            for k in range(q - 1):
                exp[k] = x
                log[x] = k
                x = x * gamma % q
        else:
            for k in range(q - 1):
                exp[k] = x
                log[x] = k
                x = mulf(x, gamma)
        return gamma, exp, log

    def __repr__(self):
        return f"ResidueField(p={self.p}, f={self.f}, l^n={self.L}, gamma={self.gamma}, omega={self.omega})"


def _irreducible(p: int, f: int) -> List[int]:
    """Smallest monic irreducible of degree f over F_p, coefficients low to high."""
    from sympy import Poly, symbols

    x = symbols("x")
    for k in range(p ** f):
        c = []
        t = k
        for _ in range(f):
            c.append(t % p)
            t //= p
        coeffs = c + [1]
        poly = Poly(list(reversed(coeffs)), x, modulus=p)
        if poly.is_irreducible:
            return coeffs
    raise FieldError("no irreducible polynomial found")


def build_residue_field(p: int, f: int, l: int, n: int) -> ResidueField:
    return ResidueField(p, f, l, n)


def order_mod(p: int, L: int) -> int:
    """Order of p in (Z/L)^x."""
    if gcd(p, L) != 1:
        raise FieldError("p must be prime to l")
    k, x = 1, p % L
    while x != 1 % L:
        x = x * p % L
        k += 1
    return k


class FrobeniusInput:
    """(p, f, l, n) with f the order of p mod l^n and e(p) = max{e : p^f = 1 mod l^e}."""

    def __init__(self, p: int, l: int, n: int, f: Optional[int] = None):
        L = l ** n
        self.p, self.l, self.n = p, l, n
        self.f = order_mod(p, L) if f is None else f
        if pow(p, self.f, L) != 1 % L:
            raise FieldError("p^f is not 1 modulo l^n")
        e, x = 0, p ** self.f - 1
        while x % l == 0:
            x //= l
            e += 1
        self.e = e

    def field(self) -> ResidueField:
        return ResidueField(self.p, self.f, self.l, self.n)

    def __repr__(self):
        return f"FrobeniusInput(p={self.p}, f={self.f}, l={self.l}, n={self.n}, e={self.e})"


# --------------------------------------------------------------------------
# power residues and Jacobi sums

# The Jacobi sum carries an overall minus sign so that J = 1 mod (zeta - 1);
# symbols are read through zeta -> omega.
JACOBI_SIGN = -1
ZETA_TO_OMEGA = 1


def power_residue_symbol(x: int, F: ResidueField) -> int:
    """c with x^{(q-1)/l^n} = omega^c."""
    if x % F.q == 0:
        raise FieldError("the symbol is undefined at 0")
    return F.dlog(x) % F.L


def jacobi_sum(F: ResidueField, a: int, b: int, sign: int = JACOBI_SIGN, conj: int = ZETA_TO_OMEGA) -> CycloInt:
    """sign * sum_{x + y = -1} (x)^a (y)^b with characters valued in zeta."""
    L = F.L
    a %= L
    b %= L
    if a == 0 or b == 0:
        raise FieldError("a and b must be nonzero modulo l^n")
    if a % F.l == 0 and b % F.l == 0:
        raise FieldError("(a, b, l) must be 1")
    counts = [0] * L
    minus_one = F.neg(1)
    for x in range(1, F.q):
        y = F.add(minus_one, F.neg(x))
        if y == 0:
            continue
        e = conj * (a * power_residue_symbol(x, F) + b * power_residue_symbol(y, F))
        counts[e % L] += sign
    return CycloInt(F.l, F.n, counts)


def valid_pairs(l: int, n: int) -> List[Tuple[int, int]]:
    """(a, b) with a, b, a+b nonzero mod l^n and (a, b, l) = 1."""
    L = l ** n
    return [(a, b) for a in range(1, L) for b in range(1, L) if (a + b) % L and not (a % l == 0 and b % l == 0)]


def weil_norm_ok(F: ResidueField, a: int, b: int) -> bool:
    J = jacobi_sum(F, a, b)
    return J * J.conj() == F.q


# --------------------------------------------------------------------------
# cyclotomic units and Soule characters


def cyclotomic_unit(m: int, l: int, n: int, form: str = "standard") -> CycloInt:
    """prod_{a in (Z/l^n)^x} (zeta^a - 1)^{<a^{m-1}>}; form="literal" uses zeta - 1 for every factor."""
    if m < 1:
        raise ValueError("m must be positive")
    L = l ** n
    out = CycloInt.integer(1, l, n)
    for a in range(1, L):
        if a % l == 0:
            continue
        base = CycloInt.zeta_power(1 if form == "literal" else a, l, n) - 1
        out = out * base ** pow(a, m - 1, L)
    return out


def soule_chi(m: int, Fr: FrobeniusInput, F: Optional[ResidueField] = None, form: str = "standard") -> int:
    """chi^(m)(Frob^f) mod l^n: the power-residue exponent of the cyclotomic unit at the prime."""
    F = F or Fr.field()
    L = F.L
    zeta = F.pow(F.omega, ZETA_TO_OMEGA)
    val = 1
    for a in range(1, L):
        if a % F.l == 0:
            continue
        z = F.pow(zeta, 1 if form == "literal" else a)
        base = F.add(z, F.neg(1))
        if base == 0:
            raise FieldError("cyclotomic unit reduces to 0")
        val = F.mul(val, F.pow(base, pow(a, m - 1, L)))
    return power_residue_symbol(val, F)


def soule_kappa(m: int, Fr: FrobeniusInput, F: Optional[ResidueField] = None, form: str = "standard") -> int:
    """kappa_m = chi^(m) / (1 - l^{m-1}) mod l^n, for m >= 2."""
    if m < 2:
        raise ValueError("kappa_m needs m >= 2, since 1 - l^0 = 0")
    L = Fr.l ** Fr.n
    c = soule_chi(m, Fr, F, form)
    return c * pow((1 - Fr.l ** (m - 1)) % L, -1, L) % L
