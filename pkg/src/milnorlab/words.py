from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Letter = Tuple[int, int]


class WordError(ValueError):
    pass


class ParseError(WordError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def _reduce(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    stack: List[List[int]] = []
    for i, e in letters:
        if e == 0:
            continue
        if stack and stack[-1][0] == i:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([i, e])
    return tuple((i, e) for i, e in stack)


class Word:
    """Freely reduced word in x_1..x_r, stored as (index, exponent) syllables."""

    __slots__ = ("r", "letters")

    def __init__(self, r: int, letters: Iterable[Letter] = ()):
        letters = list(letters)
        for i, _ in letters:
            if not 1 <= i <= r:
                raise WordError(f"generator index {i} out of range 1..{r}")
        self.r = r
        self.letters = _reduce((int(i), int(e)) for i, e in letters)

    @classmethod
    def identity(cls, r: int) -> "Word":
        return cls(r)

    @classmethod
    def gen(cls, i: int, r: int, e: int = 1) -> "Word":
        return cls(r, [(i, e)])

    def __mul__(self, other: "Word") -> "Word":
        if self.r != other.r:
            raise WordError("rank mismatch")
        return Word(self.r, self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(self.r, [(i, -e) for i, e in reversed(self.letters)])

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out = Word(self.r)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, Word) and self.r == other.r and self.letters == other.letters

    def __hash__(self):
        return hash((self.r, self.letters))

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def exponent_sums(self) -> List[int]:
        s = [0] * self.r
        for i, e in self.letters:
            s[i - 1] += e
        return s

    def with_rank(self, r: int) -> "Word":
        return Word(r, self.letters)

    def substitute(self, images: Sequence["Word"]) -> "Word":
        """Apply the endomorphism x_i -> images[i-1]."""
        if len(images) != self.r:
            raise WordError(f"need {self.r} images, got {len(images)}")
        r = images[0].r if images else self.r
        out: List[Letter] = []
        for i, e in self.letters:
            w = images[i - 1]
            out.extend((w if e > 0 else w.inverse()).letters * abs(e))
        return Word(r, out)

    def render(self) -> str:
        if not self.letters:
            return "1"
        return "*".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in self.letters)

    __str__ = render

    def __repr__(self):
        return f"Word({self.render()})"


def commutator(a: Word, b: Word) -> Word:
    return a * b * a.inverse() * b.inverse()


def cyclic_decompose(w: Word) -> Tuple[Word, Word]:
    """Return (z, c) with w = z c z^{-1} and c cyclically reduced."""
    L = list(w.letters)
    conj: List[Letter] = []
    while len(L) >= 2 and L[0][0] == L[-1][0]:
        (i, a), (_, b) = L[0], L[-1]
        if len(L) == 2:
            # x_i^a x_i^b with adjacent syllables is impossible after reduction
            break
        if a + b == 0:
            conj.append((i, a))
            L = L[1:-1]
        elif (a > 0) != (b > 0):
            k = min(abs(a), abs(b))
            s = k if a > 0 else -k
            conj.append((i, s))
            L[0] = (i, a - s)
            L[-1] = (i, b + s)
            L = [x for x in L if x[1] != 0]
        else:
            break
    return Word(w.r, conj), Word(w.r, L)


def cyclic_rotations(w: Word) -> List[Tuple[Word, Word]]:
    """All (p, v) with v = p^{-1} w p a cyclic rotation of a cyclically reduced w."""
    out = []
    n = len(w.letters)
    for k in range(n):
        p = Word(w.r, w.letters[:k])
        v = p.inverse() * w * p
        out.append((p, v))
    # split syllables also count as rotations: x^a y -> x^{a-s} y x^s
    for k, (i, e) in enumerate(w.letters):
        step = 1 if e > 0 else -1
        for s in range(step, e, step):
            p = Word(w.r, w.letters[:k] + ((i, s),))
            out.append((p, p.inverse() * w * p))
    return out


# --------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str, r: Optional[int]):
        self.s = text
        self.i = 0
        self.r = r
        self.max_index = 0

    def peek(self) -> str:
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1
        return self.s[self.i] if self.i < len(self.s) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.i)
        self.i += 1

    def integer(self) -> int:
        self.peek()
        start = self.i
        if self.i < len(self.s) and self.s[self.i] in "+-":
            self.i += 1
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1
        d0 = self.i
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        if d0 == self.i:
            raise ParseError("expected an integer", start)
        return int(self.s[start:self.i].replace(" ", ""))

    def word(self) -> List[Letter]:
        out: List[Letter] = []
        out.extend(self.factor())
        while True:
            c = self.peek()
            if c == "*":
                self.i += 1
                out.extend(self.factor())
            elif c in ("x", "(", "[", "1"):
                out.extend(self.factor())
            else:
                return out

    def factor(self) -> List[Letter]:
        base = self.atom()
        while self.peek() == "^":
            self.i += 1
            n = self.integer()
            red = _reduce(base)
            if n >= 0:
                base = list(red) * n
            else:
                base = [(i, -e) for i, e in reversed(red)] * (-n)
        return base

    def atom(self) -> List[Letter]:
        c = self.peek()
        pos = self.i
        if c == "x":
            self.i += 1
            start = self.i
            while self.i < len(self.s) and self.s[self.i].isdigit():
                self.i += 1
            if start == self.i:
                raise ParseError("generator needs an index", pos)
            k = int(self.s[start:self.i])
            if k < 1 or (self.r is not None and k > self.r):
                raise ParseError(f"generator index {k} out of range", pos)
            self.max_index = max(self.max_index, k)
            return [(k, 1)]
        if c == "1":
            self.i += 1
            return []
        if c == "(":
            self.i += 1
            w = self.word()
            self.expect(")")
            return w
        if c == "[":
            self.i += 1
            a = self.word()
            self.expect(",")
            b = self.word()
            self.expect("]")
            inv = lambda L: [(i, -e) for i, e in reversed(L)]
            return a + b + inv(a) + inv(b)
        if c == "":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected character {c!r}", pos)


def parse_word(text: str, r: Optional[int] = None) -> Word:
    """Parse e.g. "x1*x2^-1", "[x1,x2]", "(x1*x2)^3"; r defaults to the largest index used."""
    p = _Parser(text, r)
    letters = p.word()
    if p.peek() != "":
        raise ParseError(f"unexpected character {p.peek()!r}", p.i)
    rank = r if r is not None else max(p.max_index, 1)
    return Word(rank, letters)


# --------------------------------------------------------------------------
# group ring


class GroupRingElt:
    """Finite formal Z-combination of words."""

    __slots__ = ("r", "terms")

    def __init__(self, r: int, terms: Optional[Dict[Word, int]] = None):
        self.r = r
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, w: Word, c: int = 1) -> "GroupRingElt":
        return cls(w.r, {w: c})

    def __add__(self, other: "GroupRingElt") -> "GroupRingElt":
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return GroupRingElt(self.r, t)

    def __neg__(self):
        return GroupRingElt(self.r, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElt(self.r, {w: c * other for w, c in self.terms.items()})
        if isinstance(other, Word):
            other = GroupRingElt.of(other)
        t: Dict[Word, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                t[w] = t.get(w, 0) + c1 * c2
        return GroupRingElt(self.r, t)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        if isinstance(other, Word):
            return GroupRingElt.of(other) * self
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, GroupRingElt) and self.r == other.r and self.terms == other.terms

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def map_words(self, f) -> "GroupRingElt":
        t: Dict[Word, int] = {}
        for w, c in self.terms.items():
            k = f(w)
            t[k] = t.get(k, 0) + c
        r = next(iter(t)).r if t else self.r
        return GroupRingElt(r, t)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*({w.render()})" for w, c in self.terms.items())
