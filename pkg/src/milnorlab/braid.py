"""Artin representation of braids and the classical invariants attached to it.

Convention: a braid word b = s_{a1} s_{a2} ... acts as artin(s_{a1}) o artin(s_{a2}) o ...,
with sigma_i : x_i -> x_i x_{i+1} x_i^{-1}, x_{i+1} -> x_i.  The band generator
A_ij (i < j) is (s_{j-1} ... s_{i+1}) s_i^2 (s_{j-1} ... s_{i+1})^{-1}.
"""

from __future__ import annotations

import re
from typing import List, Sequence, Tuple

from .automorphisms import AutP, FreeAut, MilnorTable, longitudes
from .magnus import fox_derivative
from .rings import LaurentPoly, Z, laurent_det
from .words import Word


class BraidError(ValueError):
    pass


class NotPure(BraidError):
    pass


class BraidWord:
    """Sequence of (i, exponent) Artin generators s_i on r strands."""

    __slots__ = ("r", "gens")

    def __init__(self, r: int, gens: Sequence[Tuple[int, int]] = ()):
        if r < 1:
            raise BraidError("need at least one strand")
        out = []
        for i, e in gens:
            if not 1 <= i < r:
                raise BraidError(f"s{i} is not a generator on {r} strands")
            if e:
                out.append((int(i), int(e)))
        self.r = r
        self.gens = tuple(out)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.r != other.r:
            raise BraidError("strand count mismatch")
        return BraidWord(self.r, self.gens + other.gens)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.r, [(i, -e) for i, e in reversed(self.gens)])

    def __pow__(self, n: int) -> "BraidWord":
        if n < 0:
            return self.inverse() ** (-n)
        return BraidWord(self.r, self.gens * n)

    def __eq__(self, other):
        return isinstance(other, BraidWord) and self.r == other.r and self.gens == other.gens

    def __hash__(self):
        return hash((self.r, self.gens))

    def permutation(self) -> List[int]:
        """Where each strand ends up: perm[k] is the final position of strand k+1."""
        pos = list(range(1, self.r + 1))
        for i, e in self.gens:
            if e % 2:
                pos = [i + 1 if p == i else i if p == i + 1 else p for p in pos]
        return pos

    def is_pure(self) -> bool:
        return self.permutation() == list(range(1, self.r + 1))

    def render(self) -> str:
        if not self.gens:
            return "1"
        return " ".join(f"s{i}" if e == 1 else f"s{i}^{e}" for i, e in self.gens)

    def __repr__(self):
        return f"BraidWord({self.render()}; r={self.r})"


def sigma(i: int, r: int, e: int = 1) -> BraidWord:
    return BraidWord(r, [(i, e)])


def band(i: int, j: int, r: int, e: int = 1) -> BraidWord:
    if not 1 <= i < j <= r:
        raise BraidError(f"A{i}{j} needs 1 <= i < j <= r")
    c = BraidWord(r, [(k, 1) for k in range(j - 1, i, -1)])
    return (c * BraidWord(r, [(i, 2)]) * c.inverse()) ** e


_TOKEN = re.compile(r"\s*(?:(s)(\d+)|(A)(?:\((\d+),(\d+)\)|(\d)(\d)))(?:\^\(?([+-]?\d+)\)?)?\s*\*?")


def parse_braid(text: str, r: int = None) -> BraidWord:
    """Grammar: "s1 s2^-1 A13^2" (whitespace or '*' separated; A(i,j) for wide indices)."""
    pieces = []
    pos = 0
    text = text.strip()
    if text in ("", "1"):
        return BraidWord(r or 2)
    top = 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise BraidError(f"cannot parse braid at position {pos}: {text[pos:pos + 10]!r}")
        e = int(m.group(8)) if m.group(8) else 1
        if m.group(1):
            i = int(m.group(2))
            pieces.append(("s", i, None, e))
            top = max(top, i + 1)
        else:
            i = int(m.group(4) or m.group(6))
            j = int(m.group(5) or m.group(7))
            pieces.append(("A", i, j, e))
            top = max(top, j)
        pos = m.end()
    r = r or top
    out = BraidWord(r)
    for kind, i, j, e in pieces:
        out = out * (sigma(i, r, e) if kind == "s" else band(i, j, r, e))
    return out


def _sigma_aut(i: int, r: int, sign: int) -> FreeAut:
    xs = [Word.gen(k, r) for k in range(1, r + 1)]
    a, b = xs[i - 1], xs[i]
    fwd = list(xs)
    fwd[i - 1] = a * b * a.inverse()
    fwd[i] = a
    bwd = list(xs)
    bwd[i - 1] = b
    bwd[i] = b.inverse() * a * b
    f = FreeAut(fwd)
    g = FreeAut(bwd, inverse=f)
    f._inverse = g
    return f if sign > 0 else g


def artin(b: BraidWord) -> FreeAut:
    out = FreeAut.identity(b.r)
    for i, e in b.gens:
        step = _sigma_aut(i, b.r, 1 if e > 0 else -1)
        for _ in range(abs(e)):
            out = out.compose(step)
    return out


def braid_autp(b: BraidWord) -> AutP:
    if not b.is_pure():
        raise NotPure(f"{b.render()} is not a pure braid")
    return longitudes(artin(b))


def braid_milnor(b: BraidWord, I: Sequence[int], mode: str = "literal") -> Tuple[int, int]:
    """Exact Milnor number and indeterminacy of a pure braid."""
    I = tuple(I)
    t = MilnorTable(braid_autp(b), max(len(I), 1), Z)
    return t.mu(I), t.delta(I, mode)


def abelian_monomial(w: Word) -> LaurentPoly:
    return LaurentPoly.monomial(w.exponent_sums(), w.r)


def gassner_laurent(phi: FreeAut) -> List[List[LaurentPoly]]:
    """Entry (i, j) is the abelianized Fox derivative d phi(x_j) / d x_i."""
    r = phi.r
    M = [[LaurentPoly(r) for _ in range(r)] for _ in range(r)]
    for j, w in enumerate(phi.images):
        for i in range(1, r + 1):
            acc = LaurentPoly(r)
            for v, c in fox_derivative(w, i).terms.items():
                acc = acc + abelian_monomial(v) * c
            M[i - 1][j] = acc
    return M


def braid_gassner_exact(b: BraidWord) -> List[List[LaurentPoly]]:
    if not b.is_pure():
        raise NotPure(f"{b.render()} is not a pure braid")
    return gassner_laurent(artin(b))


def burau_laurent(phi: FreeAut) -> List[List[LaurentPoly]]:
    return [[e.to_single() for e in row] for row in gassner_laurent(phi)]


def laurent_matmul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    r = A[0][0].r
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = LaurentPoly(r)
            for t in range(k):
                s = s + A[i][t] * B[t][j]
            row.append(s)
        out.append(row)
    return out


def gassner_det(b: BraidWord) -> LaurentPoly:
    return laurent_det(braid_gassner_exact(b), b.r)
