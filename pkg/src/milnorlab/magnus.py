"""Magnus expansion, Magnus coefficients, shuffles, Fox derivatives, Witt ranks."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

import numpy as np
from sympy import divisors
from sympy.functions.combinatorial.numbers import mobius

from .rings import Ring, TruncNC, Z, gen_binom
from .words import GroupRingElt, Word

MultiIndex = Tuple[int, ...]


def magnus(w: Word, D: int, ring: Ring = Z) -> TruncNC:
    """Theta(w) truncated at degree D, built syllable by syllable."""
    terms: Dict[MultiIndex, object] = {(): 1}
    red = ring.reduce
    for i, e in w.letters:
        binoms = [gen_binom(e, k) for k in range(D + 1)]
        new: Dict[MultiIndex, object] = {}
        for m, c in terms.items():
            room = D - len(m)
            tail = ()
            for k in range(room + 1):
                b = binoms[k]
                if b:
                    key = m + tail
                    new[key] = new.get(key, 0) + c * b
                tail = tail + (i,)
        terms = {m: v for m, v in ((m, red(v)) for m, v in new.items()) if v}
    return TruncNC(w.r, D, ring, terms, _clean=True)


def magnus_elt(e: GroupRingElt, D: int, ring: Ring = Z) -> TruncNC:
    acc = TruncNC.zero(e.r, D, ring)
    for w, c in e.terms.items():
        acc = acc + magnus(w, D, ring).scale(c)
    return acc


def milnor_coeff(I: Sequence[int], w: Word, ring: Ring = Z):
    """mu(I; w), the coefficient of X_I in Theta(w)."""
    I = tuple(I)
    if not I:
        raise ValueError("multi-index must be nonempty")
    return magnus(w, len(I), ring).coeff(I)


# --------------------------------------------------------------------------
# dense expansion for bulk coefficient work


def _index(I: Sequence[int], r: int) -> int:
    k = 0
    for i in I:
        k = k * r + (i - 1)
    return k


def magnus_dense(w: Word, D: int) -> List[np.ndarray]:
    """Integer Magnus coefficients as arrays: level n has r^n entries in base-r order.

    Uses int64 when a coarse coefficient bound allows it, Python ints otherwise.
    """
    r = w.r
    bound = 1
    for _, e in w.letters:
        bound *= sum(abs(gen_binom(e, k)) for k in range(D + 1))
    dtype = np.int64 if bound < 2 ** 62 else object
    levels = [np.zeros(r ** n, dtype=dtype) for n in range(D + 1)]
    levels[0][0] = 1
    for i, e in w.letters:
        binoms = [gen_binom(e, k) for k in range(D + 1)]
        new = [lv.copy() for lv in levels]
        for n in range(1, D + 1):
            for k in range(1, n + 1):
                b = binoms[k]
                if not b:
                    continue
                # positions whose last k letters are all i
                col = _index((i,) * k, r)
                view = new[n].reshape(r ** (n - k), r ** k)
                view[:, col] += b * levels[n - k]
        levels = new
    return levels


def dense_coeff(levels: List[np.ndarray], I: Sequence[int], r: int):
    return levels[len(I)][_index(I, r)]


# --------------------------------------------------------------------------
# shuffles


def shuffles(I: Sequence[int], J: Sequence[int]) -> List[MultiIndex]:
    """All riffle shuffles of I and J, with multiplicity."""
    I, J = tuple(I), tuple(J)
    n = len(I) + len(J)
    out = []
    for pos in combinations(range(n), len(I)):
        pos_set = set(pos)
        a = iter(I)
        b = iter(J)
        out.append(tuple(next(a) if k in pos_set else next(b) for k in range(n)))
    return out


def proper_shuffles(I: Sequence[int], J: Sequence[int]) -> List[MultiIndex]:
    """Results of all proper shuffles of I and J.

    Every interleaving is kept, each counted once per choice of positions,
    which is the multiset entering the product formula.
    """
    if not I or not J:
        raise ValueError("proper shuffles need nonempty I and J")
    return shuffles(I, J)


def infiltration(I: Sequence[int], J: Sequence[int]) -> Dict[MultiIndex, int]:
    """Riffle shuffles of I and J plus the words where equal letters of I and J merge.

    mu(I; f) mu(J; f) equals the sum of mu(K; f) over this multiset.  The
    riffle shuffles alone give the top-length part of it.
    """
    return dict(_infiltration(tuple(I), tuple(J)))


@lru_cache(maxsize=4096)
def _infiltration(I: MultiIndex, J: MultiIndex) -> Tuple[Tuple[MultiIndex, int], ...]:
    if not I:
        return ((J, 1),)
    if not J:
        return ((I, 1),)
    out: Dict[MultiIndex, int] = {}
    parts = [(I[:-1], J, I[-1]), (I, J[:-1], J[-1])]
    if I[-1] == J[-1]:
        parts.append((I[:-1], J[:-1], I[-1]))
    for a, b, last in parts:
        for K, c in _infiltration(a, b):
            key = K + (last,)
            out[key] = out.get(key, 0) + c
    return tuple(sorted(out.items()))


# --------------------------------------------------------------------------
# Fox calculus


def fox_derivative_word(w: Word, j: int) -> GroupRingElt:
    r = w.r
    acc: Dict[Word, int] = {}
    prefix = Word(r)
    for i, e in w.letters:
        if i == j:
            if e > 0:
                for t in range(e):
                    k = prefix * Word(r, [(j, t)])
                    acc[k] = acc.get(k, 0) + 1
            else:
                for t in range(1, -e + 1):
                    k = prefix * Word(r, [(j, -t)])
                    acc[k] = acc.get(k, 0) - 1
        prefix = prefix * Word(r, [(i, e)])
    return GroupRingElt(r, acc)


def fox_derivative(e, j: int) -> GroupRingElt:
    """Fox free derivative d/dx_j of a word or group-ring element."""
    if isinstance(e, Word):
        return fox_derivative_word(e, j)
    acc = GroupRingElt(e.r)
    for w, c in e.terms.items():
        acc = acc + fox_derivative_word(w, j) * c
    return acc


def fox_higher(e, idx: Sequence[int]) -> GroupRingElt:
    """Iterated derivative d^n/dx_{i_1}...dx_{i_n}, innermost index last."""
    cur = e if isinstance(e, GroupRingElt) else GroupRingElt.of(e)
    for j in reversed(tuple(idx)):
        cur = fox_derivative(cur, j)
    return cur


def strip_right(s: TruncNC, j: int) -> TruncNC:
    return s.strip_right(j)


# --------------------------------------------------------------------------
# Witt formula


def witt_rank(r: int, n: int) -> int:
    if r < 1 or n < 1:
        raise ValueError("witt_rank needs r >= 1 and n >= 1")
    total = sum(int(mobius(d)) * r ** (n // d) for d in divisors(n))
    return total // n


def lyndon_count(r: int, n: int) -> int:
    """Number of Lyndon words of length n on r letters, by enumeration."""
    from itertools import product

    count = 0
    for w in product(range(r), repeat=n):
        if all(w < w[k:] + w[:k] for k in range(1, n)):
            count += 1
    return count
