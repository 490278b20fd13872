"""The two-variable Ihara power series, Milnor numbers of Frobenius from Jacobi sums,
and the comparison with Soule characters."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial, gcd
from typing import Dict, List, Optional, Tuple

from .automorphisms import AutP, MilnorTable
from .cyclotomic import CycloInt, FrobeniusInput, ResidueField, jacobi_sum, soule_kappa, valid_pairs
from .gassner import chi_over_u, crowell_nu1, gassner_reduced
from .rings import Ring, TruncComm, Z
from .words import Word, commutator


class RouteMismatch(ArithmeticError):
    pass


class PrecisionError(ArithmeticError):
    pass


# --------------------------------------------------------------------------
# symbolic side


def mu_nn(table: MilnorTable, n1: int, n2: int):
    """mu(n1, n2) = sum over I of mu(I12) with |I| = (n1-1, n2) plus mu(I21) with |I| = (n1, n2-1)."""
    total = 0
    for ones, twos, tail in ((n1 - 1, n2, (1, 2)), (n1, n2 - 1, (2, 1))):
        if ones < 0 or twos < 0:
            continue
        for I in product((1, 2), repeat=ones + twos):
            if I.count(1) == ones:
                total += table.mu(I + tail)
    return table.ring.reduce(total)


def ihara_from_reduced(g: AutP, D: int, ring: Ring = Z) -> TruncComm:
    return gassner_reduced(g, D, ring)[0][0]


def ihara_from_commutator(g: AutP, D: int, ring: Ring = Z) -> TruncComm:
    """nu_1(g([x1, x2])) divided by (-u2, u1)."""
    if g.r != 2:
        raise ValueError("the Ihara series needs r = 2")
    c = commutator(Word.gen(1, 2), Word.gen(2, 2))
    v = crowell_nu1(g(c), D + 1, ring)
    q1 = (-v[0]).div_monomial((0, 1))
    q2 = v[1].div_monomial((1, 0))
    q1 = TruncComm(2, D, ring, dict(q1.terms))
    q2 = TruncComm(2, D, ring, dict(q2.terms))
    if q1 != q2:
        raise RouteMismatch("the two components of nu_1 give different quotients")
    return q1


def ihara_from_milnor(g: AutP, D: int, ring: Ring = Z, table: Optional[MilnorTable] = None) -> TruncComm:
    """chi(u1)chi(u2)/(u1 u2) * (1 + sum mu(n1, n2) u1^n1 u2^n2)."""
    if table is None or table.D < D + 1:
        table = MilnorTable(g, D + 1, ring)
    terms = {(0, 0): 1}
    for d in range(1, D + 1):
        for n1 in range(d + 1):
            v = mu_nn(table, n1, d - n1)
            if v:
                terms[(n1, d - n1)] = v
    body = TruncComm(2, D, ring, terms)
    return chi_over_u(g.chi, 1, 2, D, ring) * chi_over_u(g.chi, 2, 2, D, ring) * body


def ihara_series_symbolic(g: AutP, D: int, ring: Ring = Z) -> TruncComm:
    """F_g(u1, u2) to degree D, with three independent routes required to agree."""
    a = ihara_from_reduced(g, D, ring)
    b = ihara_from_commutator(g, D, ring)
    c = ihara_from_milnor(g, D, ring)
    if not (a == b == c):
        raise RouteMismatch("Ihara series routes disagree")
    return a


# --------------------------------------------------------------------------
# change of variables 1 + u = exp(U)


@lru_cache(maxsize=None)
def _compositions(N: int, k: int) -> Tuple[Tuple[int, ...], ...]:
    """Ordered k-tuples of positive integers summing to N."""
    if k == 0:
        return ((),) if N == 0 else ()
    out = []
    for first in range(1, N - k + 2):
        for rest in _compositions(N - first, k - 1):
            out.append((first,) + rest)
    return tuple(out)


def expansion_coeffs(N: int, n: int, a0: str = "delta") -> Fraction:
    """a_n(N): coefficient of U^N in (exp(U) - 1)^n.

    For n = 0 the default gives the true coefficient delta_{N,0}; a0="one"
    returns 1 for every N.
    """
    if n < 0 or N < 0:
        raise ValueError("indices must be nonnegative")
    if n == 0:
        return Fraction(1) if (a0 == "one" or N == 0) else Fraction(0)
    total = Fraction(0)
    for es in _compositions(N, n):
        den = 1
        for e in es:
            den *= factorial(e)
        total += Fraction(1, den)
    return total


def b_coeff(a: Dict[Tuple[int, int], object], N1: int, N2: int, a0: str = "delta") -> Fraction:
    """Coefficient of U1^N1 U2^N2 in A(exp(U1) - 1, exp(U2) - 1), A = 1 + sum a(n1, n2) u^n."""
    total = Fraction(0)
    for n1 in range(N1 + 1):
        for n2 in range(N2 + 1):
            if n1 + n2 == 0:
                continue
            c = a.get((n1, n2), 0)
            if c:
                total += Fraction(c) * expansion_coeffs(N1, n1, a0) * expansion_coeffs(N2, n2, a0)
    return total


def _tuples_summing(N1: int, N2: int, n: int, allowed) -> List[Tuple[Tuple[int, int], ...]]:
    """Ordered n-tuples of allowed pairs (m1, m2) with coordinatewise sum (N1, N2)."""
    if n == 0:
        return [()] if (N1, N2) == (0, 0) else []
    out = []
    for m1 in range(N1 + 1):
        for m2 in range(N2 + 1):
            if allowed(m1, m2):
                for rest in _tuples_summing(N1 - m1, N2 - m2, n - 1, allowed):
                    out.append(((m1, m2),) + rest)
    return out


def exp_compose(c: Dict[Tuple[int, int], Fraction], N1: int, N2: int) -> Fraction:
    """d(N1, N2): coefficient of U1^N1 U2^N2 in exp(C), C = sum c(m1, m2) U^m."""
    total = Fraction(0)
    nonzero = {k for k, v in c.items() if v and sum(k) >= 1}
    for n in range(1, N1 + N2 + 1):
        acc = Fraction(0)
        for tup in _tuples_summing(N1, N2, n, lambda m1, m2: (m1, m2) in nonzero):
            prod = Fraction(1)
            for m in tup:
                prod *= c[m]
            acc += prod
        total += acc / factorial(n)
    return total


def soule_log_coeffs(kappa: Dict[int, Fraction], max_deg: int, both_positive: bool = True) -> Dict[Tuple[int, int], Fraction]:
    """c(m1, m2) = -kappa_{m1+m2} / (m1! m2!) for odd m1 + m2 >= 3.

    With both_positive (default) only m1, m2 >= 1 contribute, matching the
    exponential form of the series; otherwise boundary terms are kept too.
    """
    c = {}
    for m in range(3, max_deg + 1, 2):
        k = kappa.get(m)
        if k is None:
            continue
        for m1 in range(m + 1):
            m2 = m - m1
            if both_positive and (m1 == 0 or m2 == 0):
                continue
            c[(m1, m2)] = -Fraction(k) / (factorial(m1) * factorial(m2))
    return c


# --------------------------------------------------------------------------
# Milnor numbers of Frobenius from Jacobi sums


def _val(x: int, l: int, cap: int) -> int:
    if x == 0:
        return cap
    v = 0
    while x % l == 0:
        x //= l
        v += 1
    return min(v, cap)


def solve_local(A: List[List[int]], c: List[int], l: int, e: int):
    """Solve A x = c over Z/l^e by Smith-style elimination.

    Returns (x, precision) with precision[i] the number of l-adic digits of
    x[i] that every solution shares, or (None, None) when inconsistent.
    """
    mod = l ** e
    m, k = len(A), len(A[0])
    A = [[x % mod for x in row] for row in A]
    c = [x % mod for x in c]
    V = [[int(i == j) for j in range(k)] for i in range(k)]
    diag = []
    r = 0
    for col in range(k):
        best = None
        for i in range(r, m):
            for j in range(col, k):
                if A[i][j]:
                    v = _val(A[i][j], l, e)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        A[r], A[i] = A[i], A[r]
        c[r], c[i] = c[i], c[r]
        for row in A:
            row[col], row[j] = row[j], row[col]
        for row in V:
            row[col], row[j] = row[j], row[col]
        uinv = pow(A[r][col] // l ** v, -1, mod)
        for i2 in range(m):
            if i2 != r and A[i2][col]:
                f = (A[i2][col] // l ** v) * uinv % mod
                A[i2] = [(x - f * y) % mod for x, y in zip(A[i2], A[r])]
                c[i2] = (c[i2] - f * c[r]) % mod
        for j2 in range(col + 1, k):
            if A[r][j2]:
                f = (A[r][j2] // l ** v) * uinv % mod
                for row in A:
                    row[j2] = (row[j2] - f * row[col]) % mod
                for row in V:
                    row[j2] = (row[j2] - f * row[col]) % mod
        diag.append(v)
        r += 1
    y = [0] * k
    free = []
    for t in range(k):
        if t < len(diag):
            v = diag[t]
            if c[t] % l ** v:
                return None, None
            y[t] = (c[t] // l ** v) * pow(A[t][t] // l ** v, -1, mod) % mod
            free.append(e - v)
        else:
            free.append(0)
    for i2 in range(len(diag), m):
        if c[i2] % mod:
            return None, None
    x = [sum(V[i][t] * y[t] for t in range(k)) % mod for i in range(k)]
    prec = []
    for i in range(k):
        s = e
        for t in range(k):
            if free[t] < e:
                s = min(s, _val(V[i][t] * l ** free[t] % mod, l, e))
        prec.append(s)
    return x, prec


class MuNNTable:
    """mu(sigma_p^f; n1, n2) residues with per-entry certified l-adic precision."""

    def __init__(self, Fr: FrobeniusInput, Dmax: int, M: int, values: Dict[Tuple[int, int], int],
                 precision: Dict[Tuple[int, int], int], self_check: bool, pairs: List[Tuple[int, int]]):
        self.frobenius = Fr
        self.l, self.n, self.p, self.f, self.e = Fr.l, Fr.n, Fr.p, Fr.f, Fr.e
        self.Dmax = Dmax
        self.M = M
        self.values = values
        self.precision = precision
        self.self_check = self_check
        self.pairs = pairs

    def value(self, n1: int, n2: int) -> int:
        return self.values[(n1, n2)]

    def residue(self, n1: int, n2: int) -> Tuple[int, int]:
        """(value mod l^prec, prec)."""
        pr = self.precision[(n1, n2)]
        return self.values[(n1, n2)] % self.l ** pr, pr

    def is_zero(self, n1: int, n2: int) -> bool:
        v, pr = self.residue(n1, n2)
        return v == 0

    def under_determined(self) -> List[Tuple[int, int]]:
        return [k for k, pr in self.precision.items() if sum(k) <= self.Dmax and pr == 0]

    def to_json(self) -> dict:
        return {
            "l": self.l, "n": self.n, "p": self.p, "f": self.f, "e": self.e, "M": self.M,
            "self_check": self.self_check,
            "under_determined": [list(k) for k in self.under_determined()],
            "mu": {f"{a},{b}": {"value": self.values[(a, b)] % self.l ** self.e, "residue": self.residue(a, b)[0],
                               "precision": self.precision[(a, b)]}
                   for (a, b) in sorted(self.values, key=lambda k: (sum(k), -k[0])) if a + b <= self.Dmax},
        }


def _pi_powers(k: int, l: int, n: int, M: int) -> List[CycloInt]:
    z = CycloInt.zeta_power(k, l, n) - 1
    out = [CycloInt.integer(1, l, n)]
    for _ in range(M):
        out.append(out[-1] * z)
    return out


def mu_from_jacobi(Fr: FrobeniusInput, Dmax: int, F: Optional[ResidueField] = None, M: Optional[int] = None) -> MuNNTable:
    """Recover mu(n1, n2) from J^{(a,b)} = 1 + sum mu(n1,n2)(zeta^a-1)^n1 (zeta^b-1)^n2.

    Every series term of total degree >= M lies in pi^M Z[zeta], which is inside
    l^e Z[zeta] once M >= e * phi(l^n), so the truncated identity holds exactly
    modulo l^e in power-basis coordinates.
    """
    l, n, e = Fr.l, Fr.n, Fr.e
    F = F or Fr.field()
    L = l ** n
    ph = L - L // l
    if M is None:
        M = e * ph
    M = max(M, Dmax + 1)
    idx = [(n1, d - n1) for d in range(1, M) for n1 in range(d, -1, -1)]
    rows: List[List[int]] = []
    rhs: List[int] = []
    pairs = valid_pairs(l, n)
    cache: Dict[int, List[CycloInt]] = {}
    jac: Dict[Tuple[int, int], CycloInt] = {}
    for a, b in pairs:
        J = jacobi_sum(F, a, b)
        jac[(a, b)] = J
        for k in (a, b):
            if k not in cache:
                cache[k] = _pi_powers(k, l, n, M)
        pa, pb = cache[a], cache[b]
        cols = [pa[n1] * pb[n2] for (n1, n2) in idx]
        target = J - 1
        for t in range(ph):
            rows.append([col.coeffs[t] for col in cols])
            rhs.append(target.coeffs[t])
    x, prec = solve_local(rows, rhs, l, e)
    if x is None:
        raise PrecisionError("the Jacobi-sum system is inconsistent at this precision")
    values = {k: v for k, v in zip(idx, x)}
    precision = {k: p for k, p in zip(idx, prec)}
    ok = _reconstruction_ok(values, idx, jac, cache, l, e)
    return MuNNTable(Fr, Dmax, M, values, precision, ok, pairs)


def _reconstruction_ok(values, idx, jac, cache, l, e) -> bool:
    mod = l ** e
    for (a, b), J in jac.items():
        acc = CycloInt.integer(1, J.l, J.n)
        for k in idx:
            v = values[k]
            if v:
                acc = acc + cache[a][k[0]] * cache[b][k[1]] * v
        if any((x - y) % mod for x, y in zip(acc.coeffs, J.coeffs)):
            return False
    return True


# --------------------------------------------------------------------------
# comparison with Soule characters


class SouleResidual:
    def __init__(self, N1: int, N2: int, lhs: Fraction, rhs: Fraction, residual: int, certified: int, denominator: int):
        self.N1, self.N2 = N1, N2
        self.lhs, self.rhs = lhs, rhs
        self.residual = residual
        self.certified = certified
        self.denominator = denominator

    @property
    def ok(self) -> bool:
        return self.certified > 0 and self.residual == 0

    def to_json(self) -> dict:
        return {"N1": self.N1, "N2": self.N2, "lhs": str(self.lhs), "rhs": str(self.rhs),
                "residual": self.residual, "certified_digits": self.certified, "ok": self.ok}


def kappas_for(Fr: FrobeniusInput, max_m: int, F: Optional[ResidueField] = None) -> Dict[int, int]:
    F = F or Fr.field()
    return {m: soule_kappa(m, Fr, F) for m in range(3, max_m + 1, 2)}


def soule_identity_check(table: MuNNTable, kappas: Dict[int, int], N1: int, N2: int,
                         a0: str = "delta", both_positive: bool = True) -> SouleResidual:
    """Residual of sum mu(n1,n2) a_n1(N1) a_n2(N2) = coefficient of exp(-sum kappa_m ...) at U1^N1 U2^N2.

    Both sides are scaled by a common denominator D; the congruence is then
    tested modulo l^p where p is the least precision among the data used, and
    it certifies the original identity to p - v_l(D) digits.
    """
    l = table.l
    used_prec = []
    lhs_terms = []
    for n1 in range(N1 + 1):
        for n2 in range(N2 + 1):
            if n1 + n2 == 0:
                continue
            coef = expansion_coeffs(N1, n1, a0) * expansion_coeffs(N2, n2, a0)
            if coef:
                lhs_terms.append((coef, (n1, n2)))
                used_prec.append(table.precision[(n1, n2)])
    c = soule_log_coeffs({m: Fraction(k) for m, k in kappas.items()}, N1 + N2, both_positive)
    rhs = exp_compose(c, N1, N2)
    if any(sum(k) >= 3 for k in c) and rhs:
        used_prec.append(table.n)
    lhs = sum((coef * table.values[k] for coef, k in lhs_terms), Fraction(0))
    den = 1
    for coef, _ in lhs_terms:
        den = _lcm(den, coef.denominator)
    den = _lcm(den, rhs.denominator)
    p = min(used_prec) if used_prec else table.e
    mod = l ** p
    scaled = lhs * den - rhs * den
    assert scaled.denominator == 1
    residual = int(scaled) % mod
    certified = p - _val(den, l, p)
    return SouleResidual(N1, N2, lhs, rhs, residual, certified, den)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
