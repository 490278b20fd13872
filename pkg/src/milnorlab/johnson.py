"""Johnson maps, Johnson homomorphisms and Morita traces.

Elements of Hom(H, H^{(m+1)}) are lists of r homogeneous series: entry i is
the image of X_i.
"""

from __future__ import annotations

from itertools import product
from typing import List, Tuple

from .automorphisms import AutP, ChiNotOne, MilnorTable, filtration_level_longitudes
from .magnus import magnus
from .rings import Ring, RingError, TruncComm, TruncNC, Z
from .words import Word


class LevelTooLow(ValueError):
    pass


def eta_images(g: AutP, D: int, ring: Ring = Z) -> List[TruncNC]:
    """eta(g)(X_i) = chi^{-1} (Theta(g(x_i)) - 1)."""
    if not ring.is_unit(g.chi):
        raise RingError(f"chi = {g.chi} is not a unit in {ring}")
    ci = ring.inv(g.chi)
    return [s.scale(ci) for s in g.image_series(D, ring)]


def johnson_map(g: AutP, D: int, ring: Ring = Z) -> List[TruncNC]:
    """tau(g)(X_i) = eta(g)(X_i) - X_i, truncated at D."""
    r = g.r
    return [e - TruncNC.var(i, r, D, ring) for i, e in enumerate(eta_images(g, D, ring), start=1)]


def component(tau: List[TruncNC], m: int) -> List[TruncNC]:
    """tau^(m): the degree m+1 parts."""
    return [t.homogeneous(m + 1) for t in tau]


def scale_by_chi(v: List[TruncNC], chi: int, k: int) -> List[TruncNC]:
    """[g]^{(x)(k)} o v o [g]^{-1} for the scalar action of chi, v valued in degree k."""
    ring = v[0].ring
    f = ring.reduce(chi ** k) * ring.inv(chi)
    return [t.scale(f) for t in v]


def apply_derivation(t1: List[TruncNC], x: TruncNC) -> TruncNC:
    """(t1 (x) id + id (x) t1) on a degree-2 tensor x."""
    acc = TruncNC.zero(x.r, x.D, x.ring)
    for (a, b), c in x.terms.items():
        xa = TruncNC.var(a, x.r, x.D, x.ring)
        xb = TruncNC.var(b, x.r, x.D, x.ring)
        acc = acc + (t1[a - 1] * xb + xa * t1[b - 1]).scale(c)
    return acc


def coboundary_rhs(g1: AutP, g2: AutP, D: int, ring: Ring, m: int) -> List[TruncNC]:
    """Right-hand side of the coboundary formula for tau^(1) (m=1) or tau^(2) (m=2)."""
    t1 = johnson_map(g1, D, ring)
    t2 = johnson_map(g2, D, ring)
    chi = g1.chi
    if m == 1:
        a = component(t1, 1)
        b = scale_by_chi(component(t2, 1), chi, 2)
        return [x + y for x, y in zip(a, b)]
    if m == 2:
        a = component(t1, 2)
        mid = scale_by_chi(component(t2, 1), chi, 2)
        t11 = component(t1, 1)
        c = [apply_derivation(t11, x) for x in mid]
        d = scale_by_chi(component(t2, 2), chi, 3)
        return [x + y + z for x, y, z in zip(a, c, d)]
    raise ValueError("coboundary formulas are implemented for m = 1, 2")


def eta_composite_rhs(g1: AutP, g2: AutP, D: int, ring: Ring) -> List[TruncNC]:
    """eta(g1) o [g1] o eta(g2) o [g1]^{-1} evaluated on each X_i."""
    e1 = eta_images(g1, D, ring)
    e2 = eta_images(g2, D, ring)
    chi = g1.chi
    ci = ring.inv(chi)
    out = []
    for s in e2:
        s = s.scale(ci)
        scaled = TruncNC(s.r, s.D, s.ring, {mono: c * chi ** len(mono) for mono, c in s.terms.items()})
        out.append(scaled.substitute(e1))
    return out


# --------------------------------------------------------------------------
# Johnson homomorphisms


def _require_level(g: AutP, m: int, ring: Ring):
    if ring.reduce(g.chi - 1):
        raise ChiNotOne(f"chi = {g.chi} is not 1 in {ring}")
    level, capped = filtration_level_longitudes(g, m + 1, ring)
    if level < m:
        raise LevelTooLow(f"filtration level {level} < {m}")


def johnson_hom(g: AutP, m: int, ring: Ring = Z, check: bool = True) -> List[TruncNC]:
    """tau^[m](g)(X_i) = degree-(m+1) part of Theta(g(x_i) x_i^{-1})."""
    if check:
        _require_level(g, m, ring)
    r = g.r
    return [magnus(g(Word.gen(i, r)) * Word.gen(i, r, -1), m + 1, ring).homogeneous(m + 1) for i in range(1, r + 1)]


def johnson_from_milnor(table: MilnorTable, m: int, i: int) -> TruncNC:
    """Milnor-number formula for tau^[m](g)(X_i)."""
    r = table.r
    if table.D < m + 1:
        raise ValueError("Milnor table too short")
    terms = {}
    for J in product(range(1, r + 1), repeat=m + 1):
        j1, jl = J[0], J[-1]
        rot = J[1:] + (j1,)
        if i == j1:
            val = table.mu(rot) - (table.mu(J) if j1 == jl else 0)
        elif i == jl:
            val = (table.mu(rot) if j1 == jl else 0) - table.mu(J)
        else:
            continue
        if val:
            terms[J] = -val
    return TruncNC(r, m + 1, table.ring, terms)


def commutator_formula(g: AutP, h: AutP, m: int, n: int, ring: Ring = Z) -> Tuple[List[TruncNC], List[TruncNC]]:
    """(tau^[m+n]([g,h]), the Theta_{m+n+1} expression of the commutator formula)."""
    ga, ha = g.aut(), h.aut()
    comm = ga.compose(ha).compose(ga.inverse()).compose(ha.inverse())
    from .automorphisms import longitudes

    c = longitudes(comm)
    k = m + n
    lhs = johnson_hom(c, k, ring, check=False)
    rhs = []
    r = g.r
    for i in range(1, r + 1):
        f = Word.gen(i, r)
        hf = ha(f) * f.inverse()
        gf = ga(f) * f.inverse()
        A = ga(hf) * hf.inverse()
        B = ha(gf) * gf.inverse()
        rhs.append((magnus(A, k + 1, ring) - magnus(B, k + 1, ring)).homogeneous(k + 1))
    return lhs, rhs


def derivation_check(g: AutP, m: int, ring: Ring = Z):
    """Check tau^[m](X_i) = [Y_i, X_i] and sum_i [Y_i, X_i] = 0; returns (ok, Ys)."""
    _require_level(g, m, ring)
    r = g.r
    D = m + 1
    tau = johnson_hom(g, m, ring, check=False)
    Ys = [magnus(y, D, ring).homogeneous(m) for y in g.longitudes]
    ok = True
    total = TruncNC.zero(r, D, ring)
    for i, (Y, t) in enumerate(zip(Ys, tau), start=1):
        X = TruncNC.var(i, r, D, ring)
        br = Y * X - X * Y
        if br != t:
            ok = False
        total = total + br
    if not total.is_zero():
        ok = False
    return ok, Ys


# --------------------------------------------------------------------------
# Morita trace


def _symmetrize(x: TruncNC, m: int) -> TruncComm:
    terms = {}
    for mono, c in x.terms.items():
        e = [0] * x.r
        for a in mono:
            e[a - 1] += 1
        e = tuple(e)
        terms[e] = terms.get(e, 0) + c
    return TruncComm(x.r, m, x.ring, terms)


def morita_trace(v: List[TruncNC], m: int) -> TruncComm:
    """Contract the last tensor slot against the source X_i, then symmetrize."""
    r = v[0].r
    terms = {}
    for i, comp in enumerate(v, start=1):
        for mono, c in comp.homogeneous(m + 1).terms.items():
            if mono[-1] == i:
                terms[mono[:-1]] = terms.get(mono[:-1], 0) + c
    return _symmetrize(TruncNC(r, m, v[0].ring, terms), m)


def morita_trace_matrix(v: List[TruncNC], m: int) -> TruncComm:
    """Same trace read off the diagonal of the Fox-derivative matrix of v."""
    r = v[0].r
    acc = TruncNC.zero(r, v[0].D, v[0].ring)
    for i, comp in enumerate(v, start=1):
        acc = acc + comp.homogeneous(m + 1).strip_right(i)
    return _symmetrize(acc.truncate(m), m)
