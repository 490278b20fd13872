"""Link-group presentations, Alexander matrices, Fitting ideals and Alexander invariants.

The coefficient ring Lambda_r(g) = Lambda_r / ((1+u_i)^(chi-1) - 1) is realized in
truncated form: a series is reduced to a canonical representative modulo the
span of trunc_D(rho_i * u^alpha).  Over Z/l^N the span is put in Howell form,
over Z in Hermite form; in both cases reduction is canonical.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import gcd as sym_gcd, symbols

from .automorphisms import AutP, MilnorTable
from .gassner import CommMatrix, abelian_fox, gassner
from .rings import Ring, RingError, TruncComm, Z, comm_det, comm_matmul, comm_one_plus_u_pow
from .words import Word

Expo = Tuple[int, ...]


class LinkPresentation:
    """Generators x_1..x_r with relators x_i^{1-chi} [x_i^{-1}, y_i^{-1}]."""

    def __init__(self, g: AutP):
        self.r = g.r
        self.chi = g.chi
        self.longitudes = list(g.longitudes)

    def relators(self) -> List[Word]:
        r = self.r
        out = []
        for i, y in enumerate(self.longitudes, start=1):
            x = Word.gen(i, r)
            xi, yi = x.inverse(), y.inverse()
            out.append(Word.gen(i, r, 1 - self.chi) * xi * yi * x * y)
        return out

    def relators_conjugation_form(self) -> List[Word]:
        """y_i x_i^chi y_i^{-1} x_i^{-1}, the form entering the Alexander matrix."""
        r = self.r
        return [y * Word.gen(i, r, self.chi) * y.inverse() * Word.gen(i, r, -1) for i, y in enumerate(self.longitudes, start=1)]


# --------------------------------------------------------------------------
# the quotient ring Lambda_r(g)


def _monomials(r: int, D: int) -> List[Expo]:
    """Exponent vectors of degree <= D, lowest degree first."""
    mons = [e for e in product(range(D + 1), repeat=r) if sum(e) <= D]
    return sorted(mons, key=lambda e: (sum(e), tuple(-x for x in e)))


class QuotientRing:
    """Truncated Lambda_r / ((1+u_i)^a - 1) over Z or Z/l^N, with canonical normal forms."""

    def __init__(self, r: int, D: int, ring: Ring, a: int):
        if ring.kind == "Q":
            raise RingError("quotient rings are offered over Z and Z/l^N")
        self.r, self.D, self.ring = r, D, ring
        self.a = ring.reduce(a) if ring.kind == "mod" else a
        self.trivial = self.a == 0
        self.cols = _monomials(r, D)
        self.pos = {m: k for k, m in enumerate(self.cols)}
        self.pivots: List[Tuple[int, List[int]]] = []
        if not self.trivial:
            self._build()

    # vectors are dense integer lists indexed like self.cols
    def _vec(self, s: TruncComm) -> List[int]:
        v = [0] * len(self.cols)
        for e, c in s.terms.items():
            v[self.pos[e]] = int(c)
        return v

    def _build(self):
        r, D, ring = self.r, self.D, self.ring
        gens = []
        for i in range(1, r + 1):
            rho = comm_one_plus_u_pow(i, self.a, r, D, ring) - 1
            for m in self.cols:
                if sum(m) < D:
                    v = self._vec(rho.mul_monomial(m))
                    if any(v):
                        gens.append(v)
        if ring.kind == "mod":
            self.pivots = _howell(gens, ring.l, ring.N)
        else:
            self.pivots = _hermite(gens)

    def reduce(self, s: TruncComm) -> TruncComm:
        if s.D != self.D or s.r != self.r or s.ring != self.ring:
            s = TruncComm(self.r, self.D, self.ring, dict(s.terms))
        if self.trivial:
            return s
        v = self._vec(s)
        mod = self.ring.l ** self.ring.N if self.ring.kind == "mod" else None
        for col, row in self.pivots:
            e = v[col]
            if mod is not None:
                e %= mod
            p = row[col]
            q = e // p
            if q:
                v = [x - q * y for x, y in zip(v, row)]
                if mod is not None:
                    v = [x % mod for x in v]
        return TruncComm(self.r, self.D, self.ring, {m: c for m, c in zip(self.cols, v) if c})

    def reduce_matrix(self, M: CommMatrix) -> CommMatrix:
        return [[self.reduce(e) for e in row] for row in M]

    def is_zero(self, s: TruncComm) -> bool:
        return self.reduce(s).is_zero()


def _howell(gens: List[List[int]], l: int, N: int) -> List[Tuple[int, List[int]]]:
    """Howell-form pivot rows of the Z/l^N-span of gens, ordered by column."""
    mod = l ** N
    rows = [[x % mod for x in g] for g in gens]
    rows = [r for r in rows if any(r)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    for col in range(ncols):
        best, bv = None, None
        for k, row in enumerate(rows):
            if row[col]:
                v = _val(row[col], l)
                if bv is None or v < bv:
                    best, bv = k, v
        if best is None:
            continue
        prow = rows.pop(best)
        unit = prow[col] // l ** bv
        uinv = pow(unit, -1, mod)
        prow = [(x * uinv) % mod for x in prow]
        p = l ** bv
        new_rows = []
        for row in rows:
            if row[col]:
                q = row[col] // p
                row = [(x - q * y) % mod for x, y in zip(row, prow)]
            if any(row):
                new_rows.append(row)
        if bv:
            extra = [(x * l ** (N - bv)) % mod for x in prow]
            if any(extra):
                new_rows.append(extra)
        rows = new_rows
        pivots.append((col, prow))
    # back-reduce so each pivot column is reduced in earlier rows
    for k in range(len(pivots) - 1, -1, -1):
        col, prow = pivots[k]
        p = prow[col]
        for t in range(k):
            c2, row = pivots[t]
            q = (row[col] % mod) // p
            if q:
                pivots[t] = (c2, [(x - q * y) % mod for x, y in zip(row, prow)])
    return pivots


def _val(x: int, l: int) -> int:
    v = 0
    while x % l == 0:
        x //= l
        v += 1
    return v


def _hermite(gens: List[List[int]]) -> List[Tuple[int, List[int]]]:
    """Hermite-form pivot rows of the Z-span of gens."""
    rows = [list(g) for g in gens if any(g)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    for col in range(ncols):
        active = [row for row in rows if row[col]]
        rest = [row for row in rows if not row[col]]
        while len(active) > 1:
            active.sort(key=lambda row: abs(row[col]))
            p = active[0]
            nxt = [p]
            for row in active[1:]:
                q = row[col] // p[col]
                row = [x - q * y for x, y in zip(row, p)]
                if row[col]:
                    nxt.append(row)
                elif any(row):
                    rest.append(row)
            active = nxt
        if not active:
            rows = rest
            continue
        prow = active[0]
        if prow[col] < 0:
            prow = [-x for x in prow]
        pivots.append((col, prow))
        rows = rest
    for k in range(len(pivots) - 1, -1, -1):
        col, prow = pivots[k]
        p = prow[col]
        for t in range(k):
            c2, row = pivots[t]
            q = row[col] // p
            if q:
                pivots[t] = (c2, [x - q * y for x, y in zip(row, prow)])
    return pivots


def quotient_for(g: AutP, D: int, ring: Ring) -> QuotientRing:
    return QuotientRing(g.r, D, ring, g.chi - 1)


# --------------------------------------------------------------------------
# Alexander matrix


class AlexanderData:
    def __init__(self, g: AutP, D: int, ring: Ring, Q: CommMatrix, quotient: QuotientRing):
        self.chi = g.chi
        self.r = g.r
        self.D = D
        self.ring = ring
        self.Q = Q
        self.quotient = quotient

    def fitting(self, n: int) -> List[TruncComm]:
        return fitting_ideals(self.Q, n, self.quotient)

    def to_json(self, max_n: Optional[int] = None) -> dict:
        max_n = self.r if max_n is None else max_n
        return {
            "chi": self.chi,
            "l": self.ring.l,
            "N": self.ring.N,
            "D": self.D,
            "Q": [[e.render() for e in row] for row in self.Q],
            "fitting": {str(n): [m.render() for m in self.fitting(n)] for n in range(max_n + 1)},
            "A": alexander_invariant_from(self).render(),
        }


def alexander_matrix_direct(g: AutP, D: int, ring: Ring = Z, quotient: QuotientRing = None) -> CommMatrix:
    """Abelianized Fox Jacobian of the relators, reduced into Lambda_r(g)."""
    quotient = quotient or quotient_for(g, D, ring)
    rels = LinkPresentation(g).relators_conjugation_form()
    cols = [abelian_fox(w, D, ring) for w in rels]
    r = g.r
    return [[quotient.reduce(cols[j][i]) for j in range(r)] for i in range(r)]


def alexander_matrix_gassner(g: AutP, D: int, ring: Ring = Z, quotient: QuotientRing = None) -> CommMatrix:
    """phi_g(Gass(g) - I)."""
    quotient = quotient or quotient_for(g, D, ring)
    G = gassner(g, D, ring)
    r = g.r
    return [[quotient.reduce(G[i][j] - (1 if i == j else 0)) for j in range(r)] for i in range(r)]


def alexander_matrix_milnor(g: AutP, D: int, ring: Ring = Z, table: MilnorTable = None) -> CommMatrix:
    """Entry formula through Milnor numbers, valid for chi = 1.

    chi congruent to 1 in the coefficient ring is not enough: ((1+u)^chi - 1)/u
    then differs from 1 in the truncated ring.
    """
    if g.chi != 1:
        raise ValueError("the Milnor entry formula is used only when chi = 1")
    r = g.r
    table = table if table is not None and table.D >= D + 1 else MilnorTable(g, D + 1, ring)

    def mono(I):
        e = [0] * r
        for a in I:
            e[a - 1] += 1
        return tuple(e)

    Q = [[None] * r for _ in range(r)]
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            terms: Dict[Expo, object] = {}
            if i == j:
                for n in range(1, D + 1):
                    for I in product(range(1, r + 1), repeat=n):
                        if I[-1] != i:
                            v = table.mu(I + (i,))
                            if v:
                                terms[mono(I)] = terms.get(mono(I), 0) + v
                Q[i - 1][j - 1] = TruncComm(r, D, ring, terms)
            else:
                for n in range(0, D):
                    for I in product(range(1, r + 1), repeat=n):
                        v = table.mu(I + (i, j))
                        if v:
                            terms[mono(I)] = terms.get(mono(I), 0) + v
                Q[i - 1][j - 1] = -(TruncComm(r, D, ring, terms) * TruncComm.var(j, r, D, ring))
    return Q


def alexander_matrix(g: AutP, D: int, ring: Ring = Z) -> AlexanderData:
    """Q(g) by the relator Jacobian, checked against phi_g(Gass - I)."""
    quotient = quotient_for(g, D, ring)
    Q = alexander_matrix_direct(g, D, ring, quotient)
    Q2 = alexander_matrix_gassner(g, D, ring, quotient)
    if Q != Q2:
        raise ArithmeticError("Alexander matrix routes disagree")
    return AlexanderData(g, D, ring, Q, quotient)


# --------------------------------------------------------------------------
# Fitting ideals and invariants


def minors(Q: CommMatrix, k: int) -> List[TruncComm]:
    n = len(Q)
    out = []
    for rows in combinations(range(n), k):
        for cols in combinations(range(n), k):
            out.append(comm_det([[Q[i][j] for j in cols] for i in rows]))
    return out


def fitting_ideals(Q: CommMatrix, n: int, quotient: QuotientRing = None) -> List[TruncComm]:
    """Generators of the n-th Fitting ideal: the (r-n)-minors, or the unit ideal."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    r = len(Q)
    e0 = Q[0][0]
    if r - n <= 0:
        return [TruncComm.one(e0.r, e0.D, e0.ring)]
    out = minors(Q, r - n)
    if quotient is not None:
        out = [quotient.reduce(m) for m in out]
    return out


def fitting_chain_witness(Q: CommMatrix, n: int, quotient: QuotientRing = None) -> bool:
    """Each (r-n)-minor equals its first-row Laplace combination of (r-n-1)-minors."""
    r = len(Q)
    k = r - n
    if k <= 0:
        return True
    red = quotient.reduce if quotient is not None else (lambda s: s)
    for rows in combinations(range(r), k):
        for cols in combinations(range(r), k):
            sub = [[Q[i][j] for j in cols] for i in rows]
            det = comm_det(sub)
            acc = None
            for t, j in enumerate(cols):
                minor = comm_det([[Q[i][c] for c in cols if c != j] for i in rows[1:]]) if k > 1 else TruncComm.one(det.r, det.D, det.ring)
                term = Q[rows[0]][j] * minor
                if t % 2:
                    term = -term
                acc = term if acc is None else acc + term
            if red(acc) != red(det):
                return False
    return True


def _normalize_unit(s: TruncComm, quotient: QuotientRing) -> TruncComm:
    """Scale by a unit so the leading coefficient of the lowest piece is l^v (or positive)."""
    s = quotient.reduce(s)
    if s.is_zero():
        return s
    low = min(sum(e) for e in s.terms)
    lead = max(e for e in s.terms if sum(e) == low)
    c = s.terms[lead]
    ring = s.ring
    if ring.kind == "mod":
        v = ring.valuation(c)
        unit = c // ring.l ** v
        return quotient.reduce(s.scale(ring.inv(unit)))
    return s if c > 0 else quotient.reduce(-s)


def alexander_invariant_from(data: AlexanderData) -> TruncComm:
    return _normalize_unit(comm_det(data.Q), data.quotient)


def alexander_invariant(g: AutP, D: int, ring: Ring = Z) -> Tuple[TruncComm, bool]:
    """(A(g) normalized, zero_to_degree_D)."""
    quotient = quotient_for(g, D, ring)
    G = gassner(g, D, ring)
    r = g.r
    M = [[G[i][j] - (1 if i == j else 0) for j in range(r)] for i in range(r)]
    A = _normalize_unit(comm_det(M), quotient)
    return A, A.is_zero()


def alexander_gcd(Q: CommMatrix, n: int) -> Tuple[object, int]:
    """gcd over Z[u] of the truncated (r-n)-minors, with the truncation degree attached."""
    r = len(Q)
    e0 = Q[0][0]
    if e0.ring.kind != "Z":
        raise RingError("polynomial gcd is offered over Z")
    if r - n <= 0:
        return 1, e0.D
    us = symbols(f"u1:{e0.r + 1}")
    g = 0
    for m in minors(Q, r - n):
        p = sum(int(c) * _mono(us, e) for e, c in m.terms.items())
        g = sym_gcd(g, p)
    return g, e0.D


def _mono(us, e):
    out = 1
    for u, k in zip(us, e):
        out *= u ** k
    return out


# --------------------------------------------------------------------------
# similarity under conjugation


def comm_matrix_inverse(P: CommMatrix) -> CommMatrix:
    """Inverse of a matrix whose constant part is invertible, by Gauss-Jordan over the truncated ring."""
    n = len(P)
    e0 = P[0][0]
    r, D, ring = e0.r, e0.D, e0.ring
    A = [list(row) + [TruncComm.one(r, D, ring) if i == j else TruncComm.zero(r, D, ring) for j in range(n)] for i, row in enumerate(P)]
    for c in range(n):
        piv = next((k for k in range(c, n) if ring.is_unit(A[k][c].const())), None)
        if piv is None:
            raise RingError("matrix is not invertible in the truncated ring")
        A[c], A[piv] = A[piv], A[c]
        inv = A[c][c].inv()
        A[c] = [x * inv for x in A[c]]
        for k in range(n):
            if k != c and not A[k][c].is_zero():
                f = A[k][c]
                A[k] = [x - f * y for x, y in zip(A[k], A[c])]
    return [row[n:] for row in A]


def similarity_check(g: AutP, h: AutP, D: int, ring: Ring) -> bool:
    """Q(h g h^{-1}) == P Q(g) P^{-1} in Lambda_r(g), P = phi_g(Gass(h)); needs chi(h) = 1."""
    if ring.reduce(h.chi - 1):
        raise ValueError("similarity needs chi(h) = 1 in the ring")
    quotient = quotient_for(g, D, ring)
    conj = h.compose(g).compose(h.inverse())
    lhs = alexander_matrix_gassner(conj, D, ring, quotient)
    P = gassner(h, D, ring)
    Pinv = comm_matrix_inverse(P)
    Q = alexander_matrix_gassner(g, D, ring, quotient)
    rhs = comm_matmul(comm_matmul(P, Q), Pinv)
    return lhs == quotient.reduce_matrix(rhs)
