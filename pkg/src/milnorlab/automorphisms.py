"""Automorphisms of F_r in normalized shape, longitudes and Milnor numbers.

An automorphism g with g(x_i) = y_i x_i^chi y_i^{-1}, where the abelianized
y_i has no X_i component, is stored as an ``AutP``.  ``FreeAut`` is the raw
image-tuple form used for composition.
"""

from __future__ import annotations

from itertools import combinations
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .magnus import magnus
from .rings import Ring, TruncNC, Z
from .words import Word, cyclic_decompose, cyclic_rotations


class AutError(ValueError):
    pass


class NotConjugateToPower(AutError):
    pass


class NormMismatch(AutError):
    pass


class NotInPTilde(AutError):
    pass


class ChiNotOne(AutError):
    pass


class NotInvertible(AutError):
    pass


class FreeAut:
    """Endomorphism of F_r given by the images of x_1..x_r."""

    __slots__ = ("r", "images", "_inverse")

    def __init__(self, images: Sequence[Word], inverse: Optional["FreeAut"] = None):
        images = list(images)
        if not images:
            raise AutError("need at least one generator")
        self.r = images[0].r
        if any(w.r != self.r for w in images) or len(images) != self.r:
            raise AutError("images must be r words in F_r")
        self.images = images
        self._inverse = inverse

    @classmethod
    def identity(cls, r: int) -> "FreeAut":
        ident = cls([Word.gen(i, r) for i in range(1, r + 1)])
        ident._inverse = ident
        return ident

    @classmethod
    def inner(cls, f: Word) -> "FreeAut":
        """Int(f): w -> f w f^{-1}."""
        r = f.r
        fi = f.inverse()
        a = cls([f * Word.gen(i, r) * fi for i in range(1, r + 1)])
        b = cls([fi * Word.gen(i, r) * f for i in range(1, r + 1)], inverse=a)
        a._inverse = b
        return a

    def __call__(self, w: Word) -> Word:
        return w.substitute(self.images)

    def compose(self, other: "FreeAut") -> "FreeAut":
        """self o other."""
        out = FreeAut([self(w) for w in other.images])
        if self._inverse is not None and other._inverse is not None:
            inv = FreeAut([other._inverse(w) for w in self._inverse.images])
            inv._inverse = out
            out._inverse = inv
        return out

    __mul__ = compose

    def __eq__(self, other):
        return isinstance(other, FreeAut) and self.images == other.images

    def __hash__(self):
        return hash(tuple(self.images))

    def inverse(self) -> "FreeAut":
        if self._inverse is None:
            inv = nielsen_inverse(self)
            inv._inverse = self
            self._inverse = inv
        return self._inverse

    def render(self) -> List[str]:
        return [w.render() for w in self.images]

    def __repr__(self):
        return "FreeAut(" + ", ".join(f"x{i + 1}->{w.render()}" for i, w in enumerate(self.images)) + ")"


def _elementary(r: int, i: int, j: int, side: int, sign: int) -> FreeAut:
    """x_i -> x_i x_j^sign (side=+1) or x_j^sign x_i (side=-1), with inverse."""
    imgs = [Word.gen(k, r) for k in range(1, r + 1)]
    inv_imgs = list(imgs)
    xj = Word.gen(j, r, sign)
    xji = Word.gen(j, r, -sign)
    xi = Word.gen(i, r)
    if side > 0:
        imgs[i - 1] = xi * xj
        inv_imgs[i - 1] = xi * xji
    else:
        imgs[i - 1] = xj * xi
        inv_imgs[i - 1] = xji * xi
    a = FreeAut(imgs)
    b = FreeAut(inv_imgs, inverse=a)
    a._inverse = b
    return a


def nielsen_inverse(phi: FreeAut, max_steps: int = 10000) -> FreeAut:
    """Invert by greedy length-reducing Nielsen moves on the image tuple."""
    r = phi.r
    cur = list(phi.images)
    moves: List[FreeAut] = []
    for _ in range(max_steps):
        if all(len(w.letters) == 1 and abs(w.letters[0][1]) == 1 for w in cur):
            idx = sorted(w.letters[0][0] for w in cur)
            if idx != list(range(1, r + 1)):
                raise NotInvertible("images do not form a basis")
            break
        total = sum(len(w) for w in cur)
        best = None
        for i in range(r):
            for j in range(r):
                if i == j:
                    continue
                for side in (1, -1):
                    for sign in (1, -1):
                        wj = cur[j] if sign > 0 else cur[j].inverse()
                        cand = cur[i] * wj if side > 0 else wj * cur[i]
                        delta = len(cand) - len(cur[i])
                        if delta < 0 and (best is None or delta < best[0]):
                            best = (delta, i, j, side, sign, cand)
        if best is None:
            raise NotInvertible(f"Nielsen reduction stuck at total length {total}")
        _, i, j, side, sign, cand = best
        cur[i] = cand
        moves.append(_elementary(r, i + 1, j + 1, side, sign))
    else:
        raise NotInvertible("Nielsen reduction did not terminate")
    # phi o m_1 o ... o m_k = pi, a signed permutation
    pi_inv = [None] * r
    for k, w in enumerate(cur):
        i, e = w.letters[0]
        pi_inv[i - 1] = Word.gen(k + 1, r, e)
    acc = FreeAut(pi_inv)
    for m in reversed(moves):
        acc = m.compose(acc)
    return acc


# --------------------------------------------------------------------------
# normalized automorphisms


class AutP:
    """g(x_i) = y_i x_i^chi y_i^{-1} with [y_i] free of X_i."""

    __slots__ = ("r", "chi", "longitudes", "_aut")

    def __init__(self, chi: int, longitudes: Sequence[Word], aut: Optional[FreeAut] = None):
        self.longitudes = list(longitudes)
        self.r = self.longitudes[0].r
        self.chi = int(chi)
        for i, y in enumerate(self.longitudes, start=1):
            if y.exponent_sums()[i - 1] != 0:
                raise AutError(f"longitude y_{i} has nonzero x_{i} exponent sum")
        self._aut = aut

    @classmethod
    def identity(cls, r: int) -> "AutP":
        return cls(1, [Word(r)] * r, FreeAut.identity(r))

    def aut(self) -> FreeAut:
        if self._aut is None:
            r = self.r
            self._aut = FreeAut([y * Word.gen(i, r, self.chi) * y.inverse() for i, y in enumerate(self.longitudes, start=1)])
        return self._aut

    def __call__(self, w: Word) -> Word:
        return self.aut()(w)

    def compose(self, other: "AutP") -> "AutP":
        return longitudes(self.aut().compose(other.aut()))

    def inverse(self) -> "AutP":
        return longitudes(self.aut().inverse())

    def __eq__(self, other):
        return isinstance(other, AutP) and self.chi == other.chi and self.longitudes == other.longitudes

    def __hash__(self):
        return hash((self.chi, tuple(self.longitudes)))

    def image_series(self, D: int, ring: Ring = Z) -> List[TruncNC]:
        """Theta(g(x_i)) - 1 for each i, computed from the longitudes."""
        out = []
        for i, y in enumerate(self.longitudes, start=1):
            ty = magnus(y, D, ring)
            xi = TruncNC.var(i, self.r, D, ring).binomial_pow(self.chi)
            out.append(ty * xi * magnus(y.inverse(), D, ring) - 1)
        return out

    def act_series(self, s: TruncNC) -> TruncNC:
        """Action on the Magnus algebra: X_i -> Theta(g(x_i)) - 1."""
        return s.substitute(self.image_series(s.D, s.ring))

    def __repr__(self):
        ys = ", ".join(y.render() for y in self.longitudes)
        return f"AutP(chi={self.chi}; {ys})"


def verify_and_extract(phi: FreeAut) -> Tuple[int, List[Word]]:
    """Check phi(x_i) ~ x_i^N for a common N; return N and the conjugators."""
    N = None
    zs = []
    for i, w in enumerate(phi.images, start=1):
        z, c = cyclic_decompose(w)
        if len(c.letters) != 1 or c.letters[0][0] != i:
            raise NotConjugateToPower(f"image of x{i} is not conjugate to a power of x{i}: {w.render()}")
        e = c.letters[0][1]
        if N is None:
            N = e
        elif e != N:
            raise NormMismatch(f"exponents disagree: {N} vs {e} at x{i}")
        zs.append(z)
    return N, zs


def longitudes(phi: FreeAut) -> AutP:
    N, zs = verify_and_extract(phi)
    r = phi.r
    ys = []
    for i, z in enumerate(zs, start=1):
        a = z.exponent_sums()[i - 1]
        ys.append(z * Word.gen(i, r, -a))
    return AutP(N, ys, phi)


def longitude_cocycle(h: AutP, g: AutP) -> AutP:
    """Longitudes of h o g from y_i(hg) = h(y_i(g)) y_i(h)."""
    ys = [h(yg) * yh for yg, yh in zip(g.longitudes, h.longitudes)]
    return AutP(h.chi * g.chi, ys)


def longitude_inverse(h: AutP) -> AutP:
    """Longitudes of h^{-1} from y_i(h^{-1}) = h^{-1}(y_i(h)^{-1})."""
    if h.chi not in (1, -1):
        raise NotInvertible("only chi = +-1 is invertible over the integers")
    hinv = h.aut().inverse()
    ys = [hinv(y.inverse()) for y in h.longitudes]
    return AutP(h.chi, ys)


def longitude_conjugate(h: AutP, g: AutP) -> AutP:
    """Longitudes of h g h^{-1}, composed from the cocycle and inverse formulas."""
    return longitude_cocycle(longitude_cocycle(h, g), longitude_inverse(h))


# --------------------------------------------------------------------------
# Milnor numbers and indeterminacy


def _ideal_gen(values, ring: Ring) -> int:
    """Generator of the ideal spanned by integer values: gcd over Z, l^v in Z/l^N."""
    if ring.kind == "mod":
        best = None
        for v in values:
            val = ring.valuation(v)
            if val is not None and (best is None or val < best):
                best = val
        return 0 if best is None else ring.l ** best
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g


def _proper_subsequences(I: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    n = len(I)
    seen = []
    got = set()
    for k in range(1, n):
        for pos in combinations(range(n), k):
            J = tuple(I[p] for p in pos)
            if J not in got:
                got.add(J)
                seen.append(J)
    return seen


class MilnorTable:
    """mu(g; I) and Delta(g; I) for |I| <= D."""

    def __init__(self, g: AutP, D: int, ring: Ring = Z):
        self.g = g
        self.D = D
        self.ring = ring
        self.r = g.r
        self.y_series = [magnus(y, max(D - 1, 0), ring) for y in g.longitudes]
        self.a = ring.reduce(g.chi - 1)

    def mu(self, I: Sequence[int]):
        I = tuple(I)
        if not 1 <= len(I) <= self.D:
            raise ValueError(f"|I| must lie in 1..{self.D}")
        if len(I) == 1:
            return 0
        return self.y_series[I[-1] - 1].coeff(I[:-1])

    def delta(self, I: Sequence[int], mode: str = "literal") -> int:
        """Indeterminacy ideal generator for I.

        literal:   a(g) and mu(J j), J a nonempty proper subsequence of I', j = i_n or j in J
        extended:  as literal, but j ranges over every index occurring in I
        classical: a(g) and mu over cyclic permutations of proper subsequences of I
        """
        I = tuple(I)
        if mode == "classical":
            return self.delta_classical(I)
        if mode not in ("literal", "extended"):
            raise ValueError(f"unknown indeterminacy mode {mode!r}")
        vals = [self.a]
        if len(I) >= 2:
            head, last = I[:-1], I[-1]
            for J in _proper_subsequences(head):
                js = set(I) if mode == "extended" else {last, *J}
                for j in js:
                    vals.append(self.mu(J + (j,)))
        return _ideal_gen(vals, self.ring)

    def delta_classical(self, I: Sequence[int]) -> int:
        I = tuple(I)
        vals = [self.a]
        for K in _proper_subsequences(I):
            if len(K) < 2:
                continue
            for s in range(len(K)):
                vals.append(self.mu(K[s:] + K[:s]))
        return _ideal_gen(vals, self.ring)

    def mubar(self, I: Sequence[int], mode: str = "literal"):
        d = self.delta(I, mode)
        m = self.mu(I)
        if self.ring.kind == "mod":
            m = self.ring.reduce(m)
        return m % d if d else m

    def render_delta(self, d: int) -> str:
        if self.ring.kind == "mod" and d:
            v = 0
            while d % self.ring.l == 0:
                d //= self.ring.l
                v += 1
            return f"{self.ring.l}^{v}"
        return str(d)

    def entries(self, max_len: Optional[int] = None, mode: str = "literal"):
        from itertools import product

        top = self.D if max_len is None else max_len
        for n in range(2, top + 1):
            for I in product(range(1, self.r + 1), repeat=n):
                yield I, self.mu(I), self.delta(I, mode)


def milnor_table(g: AutP, D: int, ring: Ring = Z) -> MilnorTable:
    return MilnorTable(g, D, ring)


def _chi_is_one(g: AutP, ring: Ring) -> bool:
    return ring.reduce(g.chi - 1) == 0


def filtration_level(g: AutP, D: int, ring: Ring = Z) -> Tuple[int, bool]:
    """Largest n <= D with mu(g; I) = 0 for |I| <= n; flag True when capped at D."""
    if not _chi_is_one(g, ring):
        raise ChiNotOne(f"chi = {g.chi} is not 1 in {ring}")
    table = MilnorTable(g, D, ring)
    from itertools import product

    for n in range(2, D + 1):
        for I in product(range(1, g.r + 1), repeat=n):
            if ring.reduce(table.mu(I)):
                return n - 1, False
    return D, True


def filtration_level_longitudes(g: AutP, D: int, ring: Ring = Z) -> Tuple[int, bool]:
    """Same level read off as min_i deg(Theta(y_i) - 1)."""
    if not _chi_is_one(g, ring):
        raise ChiNotOne(f"chi = {g.chi} is not 1 in {ring}")
    degs = [(magnus(y, D - 1, ring) - 1).degree() for y in g.longitudes]
    degs = [d for d in degs if d is not None]
    if not degs:
        return D, True
    return min(degs), False


# --------------------------------------------------------------------------
# Belyi normalization


def _last_word(r: int, N: int) -> Word:
    prod = Word(r)
    for i in range(1, r + 1):
        prod = prod * Word.gen(i, r)
    return prod.inverse() ** N


def in_p_shape(phi: FreeAut) -> bool:
    """Membership in the normalized subgroup, via the abelianization criterion."""
    r = phi.r
    try:
        N, zs = verify_and_extract(phi)
    except AutError:
        return False
    last = Word(r)
    for w in phi.images:
        last = last * w
    if last.inverse() != _last_word(r, N):
        return False
    c = zs[-1].exponent_sums()
    # absorb the x_r component by right multiplication with a power of x_r
    return r < 2 or c[r - 2] == 0


def belyi_normalize(phi: FreeAut) -> Tuple[FreeAut, Word]:
    """Return (phi1, f) with phi1 = Int(f) o phi in normalized shape."""
    r = phi.r
    if r < 2:
        raise NotInPTilde("normalization needs r >= 2")
    try:
        N, _ = verify_and_extract(phi)
    except AutError as exc:
        raise NotInPTilde(str(exc)) from exc
    img_last = Word(r)
    for w in phi.images:
        img_last = img_last * w
    img_last = img_last.inverse()
    target = _last_word(r, N)
    z, c = cyclic_decompose(img_last)
    f = None
    for p, v in cyclic_rotations(c):
        if v == target:
            f = z * p
            break
    if f is None:
        raise NotInPTilde("image of x_{r+1} is not conjugate to the expected power")
    f1 = f.inverse()
    phi1 = FreeAut.inner(f1).compose(phi)
    _, zs = verify_and_extract(phi1)
    a = zs[-1].exponent_sums()[r - 2]
    shift = Word.gen(1, r)
    for i in range(2, r + 1):
        shift = shift * Word.gen(i, r)
    # x_{r+1}^a = (x_1...x_r)^{-a}
    f2 = shift.inverse() ** a
    out = FreeAut.inner(f2).compose(phi1)
    return out, f2 * f1
