"""Magnus, Gassner and reduced Gassner cocycles of automorphisms in P(F_r).

Truncated matrices are plain nested lists of TruncNC / TruncComm entries,
indexed [i][j] with i the Fox-derivative variable and j the generator.
"""

from __future__ import annotations

from itertools import product
from typing import Dict, List, Sequence, Tuple

from .automorphisms import AutP, FreeAut, MilnorTable
from .magnus import fox_derivative, magnus, magnus_elt
from .rings import LaurentPoly, Ring, TruncComm, TruncNC, Z, comm_matmul, comm_one_plus_u_pow
from .words import Word

NCMatrix = List[List[TruncNC]]
CommMatrix = List[List[TruncComm]]


class NotInCommutatorSubgroup(ValueError):
    pass


class DivisionObstruction(ArithmeticError):
    pass


def _as_aut(g) -> FreeAut:
    return g.aut() if isinstance(g, AutP) else g


def _image_series(g, D: int, ring: Ring) -> List[TruncNC]:
    if isinstance(g, AutP):
        return g.image_series(D, ring)
    return [magnus(w, D, ring) - 1 for w in g.images]


def nc_identity(r: int, D: int, ring: Ring = Z) -> NCMatrix:
    return [[TruncNC.one(r, D, ring) if i == j else TruncNC.zero(r, D, ring) for j in range(r)] for i in range(r)]


def comm_identity(n: int, r: int, D: int, ring: Ring = Z) -> CommMatrix:
    return [[TruncComm.one(r, D, ring) if i == j else TruncComm.zero(r, D, ring) for j in range(n)] for i in range(n)]


# --------------------------------------------------------------------------
# Magnus cocycle


def magnus_cocycle(g, D: int, ring: Ring = Z) -> NCMatrix:
    """M(g)_ij = bar Theta(d g(x_j) / d x_i), truncated at D."""
    imgs = _image_series(g, D + 1, ring)
    r = len(imgs)
    M = [[None] * r for _ in range(r)]
    for j, s in enumerate(imgs):
        for i in range(1, r + 1):
            M[i - 1][j] = s.strip_right(i).truncate(D).bar()
    return M


def magnus_cocycle_fox(g, D: int, ring: Ring = Z) -> NCMatrix:
    """Same matrix through word-level Fox derivatives and the group-ring involution."""
    phi = _as_aut(g)
    r = phi.r
    M = [[None] * r for _ in range(r)]
    for j, w in enumerate(phi.images):
        for i in range(1, r + 1):
            d = fox_derivative(w, i).map_words(Word.inverse)
            M[i - 1][j] = magnus_elt(d, D, ring)
    return M


def act_on_matrix(g, M: NCMatrix) -> NCMatrix:
    """Apply the series action X_i -> Theta(g(x_i)) - 1 entrywise."""
    s0 = M[0][0]
    imgs = _image_series(g, s0.D, s0.ring)
    return [[e.substitute(imgs) for e in row] for row in M]


def nc_matmul(A: NCMatrix, B: NCMatrix) -> NCMatrix:
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = A[i][0] * B[0][j]
            for t in range(1, k):
                s = s + A[i][t] * B[t][j]
            row.append(s)
        out.append(row)
    return out


def magnus_cocycle_check(g: AutP, h: AutP, D: int, ring: Ring = Z) -> bool:
    """M(gh) == M(g) * g(M(h))."""
    lhs = magnus_cocycle(g.compose(h), D, ring)
    rhs = nc_matmul(magnus_cocycle(g, D, ring), act_on_matrix(g, magnus_cocycle(h, D, ring)))
    return lhs == rhs


def tau_matrix(tau: Sequence[TruncNC]) -> NCMatrix:
    """||tau||_ij: the right-X_i cofactor of tau(X_j)."""
    r = len(tau)
    return [[tau[j].strip_right(i + 1) for j in range(r)] for i in range(r)]


def johnson_truncation_check(g: AutP, m: int, ring: Ring = Z) -> bool:
    """M^[m](g) == I + bar ||tau^[m](g)|| modulo degree m+1."""
    from .johnson import johnson_hom

    tau = johnson_hom(g, m, ring)
    r = g.r
    M = magnus_cocycle(g, m, ring)
    T = tau_matrix(tau)
    for i in range(r):
        for j in range(r):
            expect = T[i][j].truncate(m).bar()
            if i == j:
                expect = expect + 1
            if M[i][j] != expect:
                return False
    return True


# --------------------------------------------------------------------------
# abelianized Fox calculus


def fox_abelian_laurent(w: Word) -> List[LaurentPoly]:
    """theta-pi of every Fox derivative of w, as exact Laurent polynomials in t_i = 1 + u_i."""
    r = w.r
    acc: List[Dict[Tuple[int, ...], int]] = [dict() for _ in range(r)]
    pre = [0] * r
    for i, e in w.letters:
        d = acc[i - 1]
        if e > 0:
            ts = range(0, e)
            sign = 1
        else:
            ts = range(e, 0)
            sign = -1
        for t in ts:
            k = list(pre)
            k[i - 1] += t
            k = tuple(k)
            d[k] = d.get(k, 0) + sign
        pre[i - 1] += e
    return [LaurentPoly(r, d) for d in acc]


def _laurent_to_comm(p: LaurentPoly, D: int, ring: Ring, cache: Dict) -> TruncComm:
    r = p.r
    out: Dict[Tuple[int, ...], object] = {}
    for e, c in p.terms.items():
        term = None
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in cache:
                    cache[key] = comm_one_plus_u_pow(i + 1, k, r, D, ring)
                term = cache[key] if term is None else term * cache[key]
        if term is None:
            z = (0,) * r
            out[z] = out.get(z, 0) + c
            continue
        for m, v in term.terms.items():
            out[m] = out.get(m, 0) + c * v
    return TruncComm(r, D, ring, out)


def abelian_fox(w: Word, D: int, ring: Ring = Z) -> List[TruncComm]:
    cache: Dict = {}
    return [_laurent_to_comm(p, D, ring, cache) for p in fox_abelian_laurent(w)]


def abelianize(s: TruncNC) -> TruncComm:
    """pi on the Magnus algebra: X_i -> u_i."""
    terms: Dict[Tuple[int, ...], object] = {}
    for mono, c in s.terms.items():
        e = [0] * s.r
        for a in mono:
            e[a - 1] += 1
        e = tuple(e)
        terms[e] = terms.get(e, 0) + c
    return TruncComm(s.r, s.D, s.ring, terms)


# --------------------------------------------------------------------------
# Gassner cocycle


def gassner(g, D: int, ring: Ring = Z) -> CommMatrix:
    """Gass(g)_ij = theta pi (d g(x_j) / d x_i)."""
    phi = _as_aut(g)
    r = phi.r
    cols = [abelian_fox(w, D, ring) for w in phi.images]
    return [[cols[j][i] for j in range(r)] for i in range(r)]


def gassner_magnus(g, D: int, ring: Ring = Z) -> CommMatrix:
    """Gass via abelianized right cofactors of the Magnus expansion of g(x_j)."""
    imgs = _image_series(g, D + 1, ring)
    r = len(imgs)
    return [[abelianize(imgs[j].strip_right(i + 1).truncate(D)) for j in range(r)] for i in range(r)]


def chi_images(chi: int, r: int, D: int, ring: Ring = Z) -> List[TruncComm]:
    """u_i -> (1 + u_i)^chi - 1."""
    return [comm_one_plus_u_pow(i, chi, r, D, ring) - 1 for i in range(1, r + 1)]


def chi_action(s: TruncComm, chi: int) -> TruncComm:
    if chi == 1:
        return s
    return s.substitute(chi_images(chi, s.r, s.D, s.ring))


def chi_action_matrix(M: CommMatrix, chi: int) -> CommMatrix:
    if chi == 1:
        return M
    imgs = chi_images(chi, M[0][0].r, M[0][0].D, M[0][0].ring)
    return [[e.substitute(imgs) for e in row] for row in M]


def gassner_cocycle_check(g: AutP, h: AutP, D: int, ring: Ring = Z) -> bool:
    """Gass(gh) == Gass(g) * chi(g)(Gass(h))."""
    lhs = gassner(g.compose(h), D, ring)
    rhs = comm_matmul(gassner(g, D, ring), chi_action_matrix(gassner(h, D, ring), g.chi))
    return lhs == rhs


def chi_over_u(chi: int, i: int, r: int, D: int, ring: Ring = Z) -> TruncComm:
    """((1 + u_i)^chi - 1) / u_i."""
    from .rings import gen_binom

    terms = {}
    for k in range(D + 1):
        b = gen_binom(chi, k + 1)
        if b:
            e = [0] * r
            e[i - 1] = k
            terms[tuple(e)] = b
    return TruncComm(r, D, ring, terms)


def _u_mono(I: Sequence[int], r: int) -> Tuple[int, ...]:
    e = [0] * r
    for a in I:
        e[a - 1] += 1
    return tuple(e)


def gassner_from_milnor(g: AutP, D: int, ring: Ring = Z, table: MilnorTable = None) -> CommMatrix:
    """Gassner entries assembled from l-adic Milnor numbers."""
    r = g.r
    if table is None or table.D < D + 1:
        table = MilnorTable(g, D + 1, ring)
    M = [[None] * r for _ in range(r)]
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            if i == j:
                terms = {(0,) * r: 1}
                for n in range(1, D + 1):
                    for I in product(range(1, r + 1), repeat=n):
                        if I[-1] == i:
                            continue
                        v = table.mu(I + (i,))
                        if v:
                            k = _u_mono(I, r)
                            terms[k] = terms.get(k, 0) + v
                body = TruncComm(r, D, ring, terms)
                M[i - 1][j - 1] = chi_over_u(g.chi, i, r, D, ring) * body
            else:
                terms = {}
                for n in range(0, D):
                    for I in product(range(1, r + 1), repeat=n):
                        v = table.mu(I + (i, j))
                        if v:
                            k = _u_mono(I, r)
                            terms[k] = terms.get(k, 0) + v
                body = TruncComm(r, D, ring, terms)
                chi_u = comm_one_plus_u_pow(j, g.chi, r, D, ring) - 1
                M[i - 1][j - 1] = -(chi_u * body)
    return M


# --------------------------------------------------------------------------
# Crowell / Blanchfield-Lyndon map and the meta-abelian action


def crowell_nu1(f: Word, D: int, ring: Ring = Z) -> List[TruncComm]:
    if any(f.exponent_sums()):
        raise NotInCommutatorSubgroup(f"{f.render()} has nonzero exponent sums")
    return abelian_fox(f, D, ring)


def kernel_relation(v: Sequence[TruncComm]) -> TruncComm:
    """sum_i v_i u_i (zero on the image of nu_1)."""
    r = v[0].r
    acc = TruncComm.zero(r, v[0].D, v[0].ring)
    for i, x in enumerate(v, start=1):
        acc = acc + x * TruncComm.var(i, r, x.D, x.ring)
    return acc


def _matvec(M: CommMatrix, v: Sequence[TruncComm]) -> List[TruncComm]:
    out = []
    for row in M:
        s = row[0] * v[0]
        for a, b in zip(row[1:], v[1:]):
            s = s + a * b
        out.append(s)
    return out


def meta_action_check(g, f: Word, D: int, ring: Ring = Z) -> bool:
    """nu_1(g(f)) == Gass(g) * chi(g)(nu_1(f))."""
    phi = _as_aut(g)
    chi = g.chi if isinstance(g, AutP) else _chi_of(phi)
    lhs = crowell_nu1(phi(f), D, ring)
    nu = [chi_action(x, chi) for x in crowell_nu1(f, D, ring)]
    return lhs == _matvec(gassner(g, D, ring), nu)


def _chi_of(phi: FreeAut) -> int:
    from .automorphisms import verify_and_extract

    return verify_and_extract(phi)[0]


# --------------------------------------------------------------------------
# reduced Gassner cocycle


def basis_vector(j: int, r: int, D: int, ring: Ring = Z) -> List[TruncComm]:
    """v_j = (0,.., -w/u_j, w/u_{j+1}, ..,0) with w = u_1...u_r."""
    v = [TruncComm.zero(r, D, ring) for _ in range(r)]
    for k, sign in ((j, -1), (j + 1, 1)):
        e = [1] * r
        e[k - 1] = 0
        v[k - 1] = TruncComm.monomial(e, r, D, ring, sign)
    return v


def _div_cofactor(s: TruncComm, k: int, D: int) -> TruncComm:
    """Exact division by w / u_k, truncated back to degree D."""
    e = [1] * s.r
    e[k - 1] = 0
    try:
        q = s.div_monomial(e)
    except Exception as exc:
        raise DivisionObstruction(str(exc)) from exc
    return TruncComm(s.r, D, s.ring, dict(q.terms))


def gassner_reduced(g: AutP, D: int, ring: Ring = Z) -> CommMatrix:
    """Matrix of the meta-abelian action on the primitive part in the basis v_1..v_{r-1}."""
    r = g.r
    if r < 2:
        raise ValueError("the reduced Gassner cocycle needs r >= 2")
    G = D + r - 1
    Gass = gassner(g, G, ring)
    out = [[None] * (r - 1) for _ in range(r - 1)]
    for j in range(1, r):
        v = [chi_action(x, g.chi) for x in basis_vector(j, r, G, ring)]
        V = _matvec(Gass, v)
        c = -_div_cofactor(V[0], 1, D)
        col = [c]
        for k in range(2, r):
            c = c - _div_cofactor(V[k - 1], k, D)
            col.append(c)
        if _div_cofactor(V[r - 1], r, D) != col[-1]:
            raise DivisionObstruction("reduced Gassner solve is inconsistent in the last coordinate")
        for i in range(r - 1):
            out[i][j - 1] = col[i]
    return out


def gassner_reduced_cocycle_check(g: AutP, h: AutP, D: int, ring: Ring = Z) -> bool:
    lhs = gassner_reduced(g.compose(h), D, ring)
    rhs = comm_matmul(gassner_reduced(g, D, ring), chi_action_matrix(gassner_reduced(h, D, ring), g.chi))
    return lhs == rhs


# --------------------------------------------------------------------------
# Burau specialization


def to_single(s: TruncComm) -> TruncComm:
    """u_i -> u."""
    terms: Dict[Tuple[int], object] = {}
    for e, c in s.terms.items():
        k = (sum(e),)
        terms[k] = terms.get(k, 0) + c
    return TruncComm(1, s.D, s.ring, terms)


def burau(g, D: int, ring: Ring = Z) -> CommMatrix:
    return [[to_single(e) for e in row] for row in gassner(g, D, ring)]


def burau_reduced(g: AutP, D: int, ring: Ring = Z) -> CommMatrix:
    return [[to_single(e) for e in row] for row in gassner_reduced(g, D, ring)]


def render_matrix(M) -> List[List[str]]:
    return [[e.render() for e in row] for row in M]
