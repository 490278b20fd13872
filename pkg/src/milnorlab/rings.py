"""Coefficient rings and truncated series algebras.

``TruncNC`` models noncommutative power series in X_1..X_r modulo terms of
degree > D, ``TruncComm`` the commutative analogue in u_1..u_r, and
``LaurentPoly`` exact Laurent polynomials in t_1..t_r.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple


class RingError(ValueError):
    pass


def gen_binom(alpha: int, k: int) -> int:
    """Generalized binomial coefficient C(alpha, k) for any integer alpha."""
    if k < 0:
        return 0
    if alpha >= 0:
        return comb(alpha, k)
    # C(-n, k) = (-1)^k C(n+k-1, k)
    v = comb(-alpha + k - 1, k)
    return -v if k % 2 else v


def lval(x: int, l: int) -> Optional[int]:
    """l-adic valuation of an integer, None for zero."""
    if x == 0:
        return None
    v = 0
    while x % l == 0:
        x //= l
        v += 1
    return v


class Ring:
    """Coefficient ring: Z, Z/l^N, or Q."""

    __slots__ = ("kind", "l", "N", "modulus")

    def __init__(self, kind: str, l: Optional[int] = None, N: Optional[int] = None):
        if kind not in ("Z", "mod", "Q"):
            raise RingError(f"unknown ring kind {kind!r}")
        if kind == "mod":
            if l is None or N is None or N < 1 or l < 2:
                raise RingError("mod ring needs a prime l and N >= 1")
            if any(l % d == 0 for d in range(2, int(l ** 0.5) + 1)):
                raise RingError(f"{l} is not prime")
            self.modulus = l ** N
        else:
            self.modulus = None
        self.kind = kind
        self.l = l
        self.N = N

    @classmethod
    def integers(cls) -> "Ring":
        return cls("Z")

    @classmethod
    def mod(cls, l: int, N: int) -> "Ring":
        return cls("mod", l, N)

    @classmethod
    def rationals(cls) -> "Ring":
        return cls("Q")

    def __eq__(self, other):
        return isinstance(other, Ring) and (self.kind, self.l, self.N) == (other.kind, other.l, other.N)

    def __hash__(self):
        return hash((self.kind, self.l, self.N))

    def __repr__(self):
        if self.kind == "mod":
            return f"Z/{self.l}^{self.N}"
        return self.kind

    def reduce(self, c):
        if self.kind == "mod":
            if isinstance(c, Fraction):
                return (c.numerator * pow(c.denominator, -1, self.modulus)) % self.modulus
            return c % self.modulus
        if self.kind == "Q":
            return Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise RingError(f"{c} is not an integer")
            return c.numerator
        return int(c)

    def is_zero(self, c) -> bool:
        return self.reduce(c) == 0

    def is_unit(self, c) -> bool:
        c = self.reduce(c)
        if self.kind == "Z":
            return c in (1, -1)
        if self.kind == "Q":
            return c != 0
        return c % self.l != 0

    def inv(self, c):
        c = self.reduce(c)
        if not self.is_unit(c):
            raise RingError(f"{c} is not a unit in {self}")
        if self.kind == "Z":
            return c
        if self.kind == "Q":
            return 1 / c
        return pow(c, -1, self.modulus)

    def valuation(self, c) -> Optional[int]:
        """l-adic valuation in Z/l^N (None means zero, i.e. valuation >= N)."""
        if self.kind != "mod":
            raise RingError("valuation is only defined on Z/l^N")
        c = self.reduce(c)
        return None if c == 0 else lval(c, self.l)

    def signed(self, c):
        """Representative used for display: symmetric for Z/l^N."""
        c = self.reduce(c)
        if self.kind == "mod" and c > self.modulus // 2:
            return c - self.modulus
        return c


Z = Ring.integers()


def _fmt_coeff_term(c, mono: str, first: bool) -> str:
    neg = c < 0
    a = -c if neg else c
    if mono == "":
        body = str(a)
    elif a == 1:
        body = mono
    else:
        body = f"{a}*{mono}"
    if first:
        return f"-{body}" if neg else body
    return f" - {body}" if neg else f" + {body}"


def _render(items, mono_fmt, ring: Ring) -> str:
    out = []
    for key, c in items:
        c = ring.signed(c)
        out.append(_fmt_coeff_term(c, mono_fmt(key), not out))
    return "".join(out) if out else "0"


# --------------------------------------------------------------------------
# noncommutative truncated series

Mono = Tuple[int, ...]


class TruncNC:
    """Truncated noncommutative series; terms map index tuples to coefficients."""

    __slots__ = ("r", "D", "ring", "terms")

    def __init__(self, r: int, D: int, ring: Ring, terms: Optional[Dict[Mono, object]] = None, *, _clean=False):
        self.r = r
        self.D = D
        self.ring = ring
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            t = {}
            for m, c in terms.items():
                if len(m) > D:
                    continue
                if any(i < 1 or i > r for i in m):
                    raise RingError(f"monomial {m} uses an index outside 1..{r}")
                c = ring.reduce(c)
                if c:
                    t[tuple(m)] = c
            self.terms = t

    # construction helpers
    @classmethod
    def one(cls, r, D, ring=Z):
        return cls(r, D, ring, {(): 1})

    @classmethod
    def zero(cls, r, D, ring=Z):
        return cls(r, D, ring, {})

    @classmethod
    def var(cls, i, r, D, ring=Z):
        return cls(r, D, ring, {(i,): 1})

    def _new(self, terms):
        return TruncNC(self.r, self.D, self.ring, terms, _clean=True)

    def _check(self, other):
        if not isinstance(other, TruncNC):
            raise RingError("operand is not a TruncNC")
        if (self.r, self.D, self.ring) != (other.r, other.D, other.ring):
            raise RingError("ring/shape mismatch between series")

    def _red(self, t):
        red = self.ring.reduce
        out = {}
        for m, c in t.items():
            c = red(c)
            if c:
                out[m] = c
        return out

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, TruncNC):
            other = self.scalar(other)
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return self._new(self._red(t))

    __radd__ = __add__

    def __neg__(self):
        return self._new(self._red({m: -c for m, c in self.terms.items()}))

    def __sub__(self, other):
        if not isinstance(other, TruncNC):
            other = self.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.scalar(other) - self

    def scalar(self, c):
        return TruncNC(self.r, self.D, self.ring, {(): c})

    def scale(self, c):
        return self._new(self._red({m: c * v for m, v in self.terms.items()}))

    def __mul__(self, other):
        if not isinstance(other, TruncNC):
            return self.scale(other)
        self._check(other)
        D = self.D
        by_len: Dict[int, List[Tuple[Mono, object]]] = {}
        for m, c in other.terms.items():
            by_len.setdefault(len(m), []).append((m, c))
        lens = sorted(by_len)
        t: Dict[Mono, object] = {}
        get = t.get
        for m1, c1 in self.terms.items():
            room = D - len(m1)
            for L in lens:
                if L > room:
                    break
                for m2, c2 in by_len[L]:
                    k = m1 + m2
                    t[k] = get(k, 0) + c1 * c2
        return self._new(self._red(t))

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, TruncNC):
            return NotImplemented
        return (self.r, self.D, self.ring) == (other.r, other.D, other.ring) and self.terms == other.terms

    def __hash__(self):
        return hash((self.r, self.D, frozenset(self.terms.items())))

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = TruncNC.one(self.r, self.D, self.ring)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # structure
    def coeff(self, mono: Sequence[int]):
        return self.terms.get(tuple(mono), 0)

    def const(self):
        return self.terms.get((), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> Optional[int]:
        """Lowest degree of a nonzero term (None for the zero series)."""
        return min((len(m) for m in self.terms), default=None)

    def homogeneous(self, k: int) -> "TruncNC":
        return self._new({m: c for m, c in self.terms.items() if len(m) == k})

    def truncate(self, D: int) -> "TruncNC":
        return TruncNC(self.r, D, self.ring, {m: c for m, c in self.terms.items() if len(m) <= D}, _clean=True)

    def with_ring(self, ring: Ring) -> "TruncNC":
        return TruncNC(self.r, self.D, ring, self.terms)

    def inv(self) -> "TruncNC":
        c0 = self.const()
        if not self.ring.is_unit(c0):
            raise RingError("constant term is not a unit")
        ci = self.ring.inv(c0)
        # a = c0 (1 + n);  a^{-1} = ci * sum (-n)^k
        n = self.scale(ci) - 1
        mn = -n
        out = TruncNC.one(self.r, self.D, self.ring)
        p = out
        for _ in range(self.D):
            p = p * mn
            if p.is_zero():
                break
            out = out + p
        return out.scale(ci)

    def binomial_pow(self, alpha: int) -> "TruncNC":
        """(1 + self)^alpha as sum C(alpha,k) self^k; self needs zero constant term."""
        if self.const():
            raise RingError("binomial_pow needs a series without constant term")
        out = TruncNC.one(self.r, self.D, self.ring)
        p = out
        for k in range(1, self.D + 1):
            p = p * self
            if p.is_zero():
                break
            b = gen_binom(alpha, k)
            if b:
                out = out + p.scale(b)
        return out

    def reverse(self) -> "TruncNC":
        return self._new({m[::-1]: c for m, c in self.terms.items()})

    def substitute(self, images: Sequence["TruncNC"]) -> "TruncNC":
        """Ring map X_i -> images[i-1]; every image must have zero constant term."""
        if len(images) != self.r:
            raise RingError("need one image per generator")
        for s in images:
            if s.const():
                raise RingError("substitution images must have zero constant term")
        if not images:
            return self
        target = images[0]
        r2, D2, ring = target.r, target.D, target.ring
        cache: Dict[Tuple[int, int], TruncNC] = {}

        def img(i, d):
            key = (i, d)
            if key not in cache:
                cache[key] = images[i - 1].truncate(d)
            return cache[key]

        def rec(terms: Dict[Mono, object], d: int) -> TruncNC:
            # returns the image truncated at degree d
            out: Dict[Mono, object] = {}
            c0 = terms.get(())
            if c0:
                out[()] = c0
            acc = TruncNC(r2, d, ring, out, _clean=True)
            if d == 0:
                return acc
            groups: Dict[int, Dict[Mono, object]] = {}
            for m, c in terms.items():
                if m and len(m) <= d:
                    groups.setdefault(m[0], {})[m[1:]] = c
            for i, sub in groups.items():
                tail = rec(sub, d - 1)
                acc = acc + img(i, d) * TruncNC(r2, d, ring, tail.terms, _clean=True)
            return acc

        res = rec(self.terms, D2)
        return TruncNC(r2, D2, ring, res.terms, _clean=True)

    def bar(self) -> "TruncNC":
        """Anti-automorphism induced by f -> f^{-1}: X_i -> (1+X_i)^{-1} - 1."""
        imgs = [TruncNC.var(i, self.r, self.D, self.ring).binomial_pow(-1) - 1 for i in range(1, self.r + 1)]
        return self.reverse().substitute(imgs)

    def strip_right(self, j: int) -> "TruncNC":
        """The series b with self = const + sum_j b_j X_j; returns b_j."""
        return self._new({m[:-1]: c for m, c in self.terms.items() if m and m[-1] == j})

    def strip_left(self, j: int) -> "TruncNC":
        return self._new({m[1:]: c for m, c in self.terms.items() if m and m[0] == j})

    def lie_bracket(self, other: "TruncNC") -> "TruncNC":
        return self * other - other * self

    def render(self) -> str:
        def mono(m):
            if not m:
                return ""
            parts = []
            i = 0
            while i < len(m):
                j = i
                while j < len(m) and m[j] == m[i]:
                    j += 1
                e = j - i
                parts.append(f"X{m[i]}" if e == 1 else f"X{m[i]}^{e}")
                i = j
            return "*".join(parts)

        items = sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
        return _render(items, mono, self.ring)

    def __repr__(self):
        return f"TruncNC({self.render()}; r={self.r}, D={self.D}, {self.ring})"


# --------------------------------------------------------------------------
# commutative truncated series

Expo = Tuple[int, ...]


def _add_expo(a: Expo, b: Expo) -> Expo:
    return tuple(x + y for x, y in zip(a, b))


class TruncComm:
    """Truncated commutative series in u_1..u_r (terms keyed by exponent vectors)."""

    __slots__ = ("r", "D", "ring", "terms")

    def __init__(self, r: int, D: int, ring: Ring, terms: Optional[Dict[Expo, object]] = None, *, _clean=False):
        self.r = r
        self.D = D
        self.ring = ring
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            t = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != r or any(x < 0 for x in e):
                    raise RingError(f"bad exponent vector {e}")
                if sum(e) > D:
                    continue
                c = ring.reduce(c)
                if c:
                    t[e] = c
            self.terms = t

    @classmethod
    def one(cls, r, D, ring=Z):
        return cls(r, D, ring, {(0,) * r: 1})

    @classmethod
    def zero(cls, r, D, ring=Z):
        return cls(r, D, ring, {})

    @classmethod
    def var(cls, i, r, D, ring=Z):
        e = [0] * r
        e[i - 1] = 1
        return cls(r, D, ring, {tuple(e): 1})

    @classmethod
    def monomial(cls, e: Sequence[int], r, D, ring=Z, c=1):
        return cls(r, D, ring, {tuple(e): c})

    def _new(self, terms):
        return TruncComm(self.r, self.D, self.ring, terms, _clean=True)

    def _check(self, other):
        if not isinstance(other, TruncComm):
            raise RingError("operand is not a TruncComm")
        if (self.r, self.D, self.ring) != (other.r, other.D, other.ring):
            raise RingError("ring/shape mismatch between series")

    def _red(self, t):
        red = self.ring.reduce
        out = {}
        for m, c in t.items():
            c = red(c)
            if c:
                out[m] = c
        return out

    def scalar(self, c):
        return TruncComm(self.r, self.D, self.ring, {(0,) * self.r: c})

    def __add__(self, other):
        if not isinstance(other, TruncComm):
            other = self.scalar(other)
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return self._new(self._red(t))

    __radd__ = __add__

    def __neg__(self):
        return self._new(self._red({m: -c for m, c in self.terms.items()}))

    def __sub__(self, other):
        if not isinstance(other, TruncComm):
            other = self.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.scalar(other) - self

    def scale(self, c):
        return self._new(self._red({m: c * v for m, v in self.terms.items()}))

    def __mul__(self, other):
        if not isinstance(other, TruncComm):
            return self.scale(other)
        self._check(other)
        D = self.D
        t: Dict[Expo, object] = {}
        get = t.get
        b = [(m, c, sum(m)) for m, c in other.terms.items()]
        for m1, c1 in self.terms.items():
            room = D - sum(m1)
            for m2, c2, d2 in b:
                if d2 <= room:
                    k = _add_expo(m1, m2)
                    t[k] = get(k, 0) + c1 * c2
        return self._new(self._red(t))

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = TruncComm.one(self.r, self.D, self.ring)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, TruncComm):
            return NotImplemented
        return (self.r, self.D, self.ring) == (other.r, other.D, other.ring) and self.terms == other.terms

    def __hash__(self):
        return hash((self.r, self.D, frozenset(self.terms.items())))

    def coeff(self, e: Sequence[int]):
        return self.terms.get(tuple(e), 0)

    def const(self):
        return self.terms.get((0,) * self.r, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> Optional[int]:
        return min((sum(m) for m in self.terms), default=None)

    def homogeneous(self, k: int) -> "TruncComm":
        return self._new({m: c for m, c in self.terms.items() if sum(m) == k})

    def truncate(self, D: int) -> "TruncComm":
        return TruncComm(self.r, D, self.ring, {m: c for m, c in self.terms.items() if sum(m) <= D}, _clean=True)

    def with_ring(self, ring: Ring) -> "TruncComm":
        return TruncComm(self.r, self.D, ring, self.terms)

    def inv(self) -> "TruncComm":
        c0 = self.const()
        if not self.ring.is_unit(c0):
            raise RingError("constant term is not a unit")
        ci = self.ring.inv(c0)
        mn = -(self.scale(ci) - 1)
        out = TruncComm.one(self.r, self.D, self.ring)
        p = out
        for _ in range(self.D):
            p = p * mn
            if p.is_zero():
                break
            out = out + p
        return out.scale(ci)

    def binomial_pow(self, alpha: int) -> "TruncComm":
        if self.const():
            raise RingError("binomial_pow needs a series without constant term")
        out = TruncComm.one(self.r, self.D, self.ring)
        p = out
        for k in range(1, self.D + 1):
            p = p * self
            if p.is_zero():
                break
            b = gen_binom(alpha, k)
            if b:
                out = out + p.scale(b)
        return out

    def substitute(self, images: Sequence["TruncComm"]) -> "TruncComm":
        """Ring map u_i -> images[i-1] (images without constant term)."""
        if len(images) != self.r:
            raise RingError("need one image per variable")
        for s in images:
            if s.const():
                raise RingError("substitution images must have zero constant term")
        target = images[0]
        powers: Dict[Tuple[int, int], TruncComm] = {}

        def pw(i, k):
            if (i, k) not in powers:
                powers[(i, k)] = TruncComm.one(target.r, target.D, target.ring) if k == 0 else pw(i, k - 1) * images[i]
            return powers[(i, k)]

        acc: Dict[Expo, object] = {}
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    term = pw(i, k) if term is None else term * pw(i, k)
            if term is None:
                z = (0,) * target.r
                acc[z] = acc.get(z, 0) + c
                continue
            for m, v in term.terms.items():
                acc[m] = acc.get(m, 0) + c * v
        return TruncComm(target.r, target.D, target.ring, acc)

    def div_monomial(self, e: Sequence[int]) -> "TruncComm":
        """Exact division by u^e; raises if some term is not divisible."""
        e = tuple(e)
        out = {}
        for m, c in self.terms.items():
            q = tuple(a - b for a, b in zip(m, e))
            if any(x < 0 for x in q):
                raise RingError(f"term u^{m} is not divisible by u^{e}")
            out[q] = c
        return self._new(out)

    def mul_monomial(self, e: Sequence[int]) -> "TruncComm":
        e = tuple(e)
        return TruncComm(self.r, self.D, self.ring, {_add_expo(m, e): c for m, c in self.terms.items()})

    def render(self, var: str = "u") -> str:
        def mono(e):
            parts = []
            for i, k in enumerate(e):
                if k == 1:
                    parts.append(f"{var}{i + 1}")
                elif k > 1:
                    parts.append(f"{var}{i + 1}^{k}")
            return "*".join(parts)

        items = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0])))
        return _render(items, mono, self.ring)

    def __repr__(self):
        return f"TruncComm({self.render()}; r={self.r}, D={self.D}, {self.ring})"


def comm_one_plus_u_pow(i: int, alpha: int, r: int, D: int, ring: Ring) -> TruncComm:
    """(1+u_i)^alpha as a single-variable binomial series."""
    out = {}
    for k in range(D + 1):
        b = gen_binom(alpha, k)
        if b:
            e = [0] * r
            e[i - 1] = k
            out[tuple(e)] = b
    return TruncComm(r, D, ring, out)


# --------------------------------------------------------------------------
# Laurent polynomials over Z


class LaurentPoly:
    """Exact Laurent polynomial in t_1..t_r with integer coefficients."""

    __slots__ = ("r", "terms")

    def __init__(self, r: int, terms: Optional[Dict[Expo, int]] = None):
        self.r = r
        t = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != r:
                raise RingError("exponent vector has the wrong length")
            if c:
                t[e] = int(c)
        self.terms = t

    @classmethod
    def const(cls, c, r):
        return cls(r, {(0,) * r: c})

    @classmethod
    def monomial(cls, e, r, c=1):
        return cls(r, {tuple(e): c})

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other, self.r)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return LaurentPoly(self.r, t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.r, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other, self.r)
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.const(other, self.r) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return LaurentPoly(self.r, {e: c * other for e, c in self.terms.items()})
        t: Dict[Expo, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                k = _add_expo(e1, e2)
                t[k] = t.get(k, 0) + c1 * c2
        return LaurentPoly(self.r, t)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.r)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.r == other.r and self.terms == other.terms

    def __hash__(self):
        return hash((self.r, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def specialize(self, f: Callable[[Expo], Expo], r_new: int) -> "LaurentPoly":
        t: Dict[Expo, int] = {}
        for e, c in self.terms.items():
            k = f(e)
            t[k] = t.get(k, 0) + c
        return LaurentPoly(r_new, t)

    def to_single(self) -> "LaurentPoly":
        """Substitute t_i = t for every i."""
        return self.specialize(lambda e: (sum(e),), 1)

    def at_one(self) -> int:
        return sum(self.terms.values())

    def to_comm(self, D: int, ring: Ring = Z) -> TruncComm:
        """Expand with t_i = 1 + u_i, truncated at degree D."""
        acc = TruncComm.zero(self.r, D, ring)
        for e, c in self.terms.items():
            term = TruncComm.one(self.r, D, ring).scale(c)
            for i, k in enumerate(e):
                if k:
                    term = term * comm_one_plus_u_pow(i + 1, k, self.r, D, ring)
            acc = acc + term
        return acc

    def render(self) -> str:
        def mono(e):
            parts = []
            for i, k in enumerate(e):
                if k == 1:
                    parts.append(f"t{i + 1}")
                elif k:
                    parts.append(f"t{i + 1}^{k}")
            return "*".join(parts)

        items = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        return _render(items, mono, Z)

    def __repr__(self):
        return f"LaurentPoly({self.render()})"


def laurent_det(M: List[List[LaurentPoly]], r: int) -> LaurentPoly:
    """Determinant by cofactor expansion (fine for the small sizes used here)."""
    n = len(M)
    if n == 0:
        return LaurentPoly.const(1, r)
    if n == 1:
        return M[0][0]
    acc = LaurentPoly(r)
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * laurent_det(minor, r)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def comm_det(M: List[List[TruncComm]]) -> TruncComm:
    n = len(M)
    if n == 1:
        return M[0][0]
    acc = None
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * comm_det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        return TruncComm.zero(M[0][0].r, M[0][0].D, M[0][0].ring)
    return acc


def comm_matmul(A: List[List[TruncComm]], B: List[List[TruncComm]]) -> List[List[TruncComm]]:
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


def nc_matmul(A: List[List[TruncNC]], B: List[List[TruncNC]]) -> List[List[TruncNC]]:
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


def all_monomials(r: int, n: int) -> Iterable[Mono]:
    """All index sequences of length n over 1..r."""
    from itertools import product

    return product(range(1, r + 1), repeat=n)
