"""Formal words: generator words, conjugacy words and mapping-class words.

Text grammar::

    word := term ('*' term)*
    term := atom ('^' int)?
    atom := SYMBOL | '1' | '(' word ')' | 'conj(' word ',' word ')'

``conj(c,w)`` denotes c*w*c^-1.  The token ``1`` is the empty word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterator, Union

from .linalg import IntegerMatrix, Symbol, SymbolError, check_symbol

MATRIX_NAMES = {"E", "F", "S", "A", "X", "Y", "Z", "Atilde"}
MCG_ARITY = {"tD": 1, "tD2p": 0, "tD2pp": 0, "tC1": 0, "tC2": 0, "tC2p": 0,
             "alpha": 0, "omega": 0, "sigma": 2, "bp12": 0}
ALPHABETS = {"matrix": MATRIX_NAMES, "mcg": set(MCG_ARITY)}


class WordSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Conj:
    conjugator: "Word"
    body: "Word"


Atom = Union[Symbol, "Word", Conj]


@dataclass(frozen=True)
class Word:
    terms: tuple[tuple[Atom, int], ...] = ()

    @classmethod
    def letter(cls, s: Symbol, e: int = 1) -> "Word":
        return cls(((s, e),)) if e else cls()

    @classmethod
    def from_letters(cls, letters) -> "Word":
        return cls(tuple((s, e) for s, e in letters if e))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.terms + other.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def inverse(self) -> "Word":
        return Word(tuple((a, -e) for a, e in reversed(self.terms)))

    def __pow__(self, e: int) -> "Word":
        if e == 0 or not self.terms:
            return Word()
        if len(self.terms) == 1:
            a, k = self.terms[0]
            return Word(((a, k * e),))
        return Word(((self, e),))

    def __str__(self) -> str:
        return format_word(self)

    def letters(self) -> Iterator[tuple[Symbol, int]]:
        """Flat (symbol, exponent) pairs; raises if the word is not flat."""
        for a, e in self.terms:
            if not isinstance(a, Symbol):
                raise ValueError("word is not a flat product of symbols")
            yield a, e

    def symbols(self) -> Iterator[Symbol]:
        for a, _ in self.terms:
            if isinstance(a, Symbol):
                yield a
            elif isinstance(a, Word):
                yield from a.symbols()
            else:
                yield from a.conjugator.symbols()
                yield from a.body.symbols()


def conj(c: Word, body: Word) -> Word:
    """The one-term word conj(c, body); collapses to body when c is empty."""
    if not c:
        return body
    return Word(((Conj(c, body), 1),))


def substitute(w: Word, image: Callable[[Symbol], Word]) -> Word:
    """Replace every symbol by a word, keeping the tree shape."""
    out = []
    for a, e in w.terms:
        if isinstance(a, Symbol):
            img = image(a)
            if len(img.terms) == 1 and img.terms[0][1] == 1:
                out.append((img.terms[0][0], e))
            elif e == 1:
                out.extend(img.terms)
            elif e == -1:
                out.extend(img.inverse().terms)
            else:
                out.append((img, e))
        elif isinstance(a, Word):
            out.append((substitute(a, image), e))
        else:
            out.append((Conj(substitute(a.conjugator, image), substitute(a.body, image)), e))
    return Word(tuple(out))


# -- text -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[()*,^]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    text = text.replace("·", "*").replace("⁻¹", "^-1")
    toks, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordSyntaxError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str, alphabet: str):
        if alphabet not in ALPHABETS:
            raise ValueError(f"unknown alphabet {alphabet!r}")
        self.names = ALPHABETS[alphabet]
        self.alphabet = alphabet
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else ("eof", "", -1)

    def expect(self, value: str):
        kind, v, col = self.peek()
        if v != value:
            where = "end of input" if kind == "eof" else f"{v!r} at column {col}"
            raise WordSyntaxError(f"expected {value!r}, found {where}")
        self.i += 1

    def word(self) -> Word:
        terms = [self.term()]
        while self.peek()[1] == "*":
            self.i += 1
            terms.append(self.term())
        # the empty word is a unit: drop it as a factor
        return Word(tuple(t for t in terms if not (isinstance(t[0], Word) and not t[0].terms)))

    def term(self) -> tuple[Atom, int]:
        atom = self.atom()
        e = 1
        if self.peek()[1] == "^":
            self.i += 1
            kind, v, col = self.peek()
            if kind != "int":
                raise WordSyntaxError(f"expected integer exponent at column {col}")
            self.i += 1
            e = int(v)
            if e == 0:
                raise WordSyntaxError(f"zero exponent at column {col}")
        return atom, e

    def atom(self) -> Atom:
        kind, v, col = self.peek()
        if v == "(":
            self.i += 1
            w = self.word()
            self.expect(")")
            return w
        if kind == "ident" and v == "conj" and self.peek(1)[1] == "(":
            self.i += 2
            c = self.word()
            self.expect(",")
            b = self.word()
            self.expect(")")
            return Conj(c, b)
        if kind == "ident":
            self.i += 1
            return self.symbol(v, col)
        if kind == "int" and v == "1":
            self.i += 1
            return Word()
        if kind == "eof":
            raise WordSyntaxError("unexpected end of input")
        raise WordSyntaxError(f"unexpected {v!r} at column {col}")

    def symbol(self, name: str, col: int) -> Symbol:
        idx: tuple[int, ...] = ()
        m = re.fullmatch(r"tD(\d+)", name)
        if m and self.alphabet == "mcg":
            name, idx = "tD", (int(m.group(1)),)
        elif self.peek()[1] == "(":
            self.i += 1
            vals = []
            while True:
                k, v, c = self.peek()
                if k != "int":
                    raise WordSyntaxError(f"expected index at column {c}")
                vals.append(int(v))
                self.i += 1
                if self.peek()[1] == ",":
                    self.i += 1
                    continue
                self.expect(")")
                break
            idx = tuple(vals)
        if name not in self.names:
            raise WordSyntaxError(f"unknown symbol {name} at column {col}")
        if self.alphabet == "mcg" and len(idx) != MCG_ARITY[name]:
            raise WordSyntaxError(f"{name} takes {MCG_ARITY[name]} indices (column {col})")
        return Symbol(name, idx)


def parse_word(text: str, alphabet: str = "matrix") -> Word:
    if text.strip() == "1":
        return Word()
    p = _Parser(text, alphabet)
    if p.peek()[0] == "eof":
        raise WordSyntaxError("empty input")
    w = p.word()
    kind, v, col = p.peek()
    if kind != "eof":
        if v == ")":
            raise WordSyntaxError(f"unbalanced ')' at column {col}")
        raise WordSyntaxError(f"trailing {v!r} at column {col}")
    return w


def _format_atom(a: Atom) -> str:
    if isinstance(a, Symbol):
        return str(a)
    if isinstance(a, Conj):
        return f"conj({format_word(a.conjugator)},{format_word(a.body)})"
    return f"({format_word(a)})"


def format_word(w: Word) -> str:
    if not w.terms:
        return "1"
    parts = []
    for a, e in w.terms:
        s = _format_atom(a)
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


# -- evaluation -------------------------------------------------------------

def _col_add(m: list[list[int]], dst: int, src: int, k: int) -> None:
    for r in m:
        r[dst] += k * r[src]


def _col_neg(m: list[list[int]], c: int) -> None:
    for r in m:
        r[c] = -r[c]


def _col_swap(m: list[list[int]], a: int, b: int) -> None:
    for r in m:
        r[a], r[b] = r[b], r[a]


def right_multiply_generator(m: list[list[int]], s: Symbol, e: int, g: int) -> None:
    """m <- m * s^e in place, for matrix-alphabet symbols (sparse column ops)."""
    name = s.name
    if name == "S":
        raise SymbolError("S(i,j) is not invertible and cannot appear in a group word")
    i = s.indices[0] - 1
    j = s.indices[1] - 1 if len(s.indices) > 1 else None
    if name == "E":
        _col_add(m, j, i, e)
    elif name == "F":
        if e % 2:
            _col_neg(m, i)
    elif name == "A":
        if e % 2:
            _col_swap(m, i, j)
    elif name == "X":
        _col_add(m, j, i, e)
        _col_add(m, g + i, g + j, -e)
    elif name == "Y":
        if i == j:
            _col_add(m, g + i, i, e)
        else:
            _col_add(m, g + j, i, e)
            _col_add(m, g + i, j, e)
    elif name == "Z":
        if e % 2:
            _col_neg(m, i)
            _col_neg(m, g + i)
    elif name == "Atilde":
        if e % 2:
            _col_swap(m, i, j)
            _col_swap(m, g + i, g + j)
    else:
        raise SymbolError(f"unknown matrix symbol {name}")


def ambient_of(w: Word) -> str | None:
    """'GL' or 'urSp' according to the symbol families used; None if empty."""
    kinds = set()
    for s in w.symbols():
        if s.name in {"E", "F", "S", "A"}:
            kinds.add("GL")
        elif s.name in {"X", "Y", "Z", "Atilde"}:
            kinds.add("urSp")
        else:
            raise SymbolError(f"{s} is not a matrix symbol")
    if len(kinds) > 1:
        raise SymbolError("word mixes GL(g) and urSp(2g) symbols")
    return kinds.pop() if kinds else None


def apply_word(m: list[list[int]], w: Word, sign: int,
               step: Callable[[list[list[int]], Symbol, int], None]) -> None:
    """m <- m * w^sign in place, where step(m, s, e) right-multiplies by s^e."""
    terms = w.terms if sign > 0 else reversed(w.terms)
    for a, e in terms:
        e *= sign
        if isinstance(a, Symbol):
            step(m, a, e)
        elif isinstance(a, Word):
            for _ in range(abs(e)):
                apply_word(m, a, 1 if e > 0 else -1, step)
        else:
            apply_word(m, a.conjugator, 1, step)
            body = a.body
            if len(body.terms) == 1 and isinstance(body.terms[0][0], Symbol):
                s, k = body.terms[0]
                step(m, s, k * e)
            else:
                for _ in range(abs(e)):
                    apply_word(m, body, 1 if e > 0 else -1, step)
            apply_word(m, a.conjugator, -1, step)


def evaluate_word(w: "Word | ConjugacyWord", g: int, ambient: str | None = None) -> IntegerMatrix:
    """Exact value of a matrix-alphabet word in GL(g) or urSp(2g)."""
    if isinstance(w, ConjugacyWord):
        ambient = ambient or w.ambient
        w = w.to_word()
    found = ambient_of(w)
    if ambient is not None and found is not None and ambient != found:
        raise SymbolError(f"word lives in {found}, expected {ambient}")
    amb = found or ambient or "GL"
    for s in w.symbols():
        check_symbol(s, g)
    n = g if amb == "GL" else 2 * g
    m = IntegerMatrix.identity(n).tolist()
    apply_word(m, w, 1, lambda mm, s, e: right_multiply_generator(mm, s, e, g))
    return IntegerMatrix(m)


# -- conjugacy words ---------------------------------------------------------

_INVOLUTIONS = {"F", "Z", "A", "Atilde"}


@dataclass(frozen=True)
class ConjLetter:
    conjugator: Word
    base: Symbol
    exponent: int

    def to_word(self) -> Word:
        if not self.conjugator:
            return Word.letter(self.base, self.exponent)
        return Word(((Conj(self.conjugator, Word.letter(self.base)), self.exponent),))


@dataclass(frozen=True)
class ConjugacyWord:
    """Formal product of c_k * base_k^e_k * c_k^-1."""

    letters: tuple[ConjLetter, ...] = ()
    ambient: str = field(default="GL")

    def __mul__(self, other: "ConjugacyWord") -> "ConjugacyWord":
        return ConjugacyWord(self.letters + other.letters, self.ambient)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def inverse(self) -> "ConjugacyWord":
        return ConjugacyWord(tuple(ConjLetter(l.conjugator, l.base, -l.exponent)
                                   for l in reversed(self.letters)), self.ambient)

    def to_word(self) -> Word:
        out: list = []
        for l in self.letters:
            out.extend(l.to_word().terms)
        return Word(tuple(out))

    def packed(self) -> "ConjugacyWord":
        """Merge neighbouring letters with equal conjugator and base."""
        out: list[ConjLetter] = []
        for l in self.letters:
            e = l.exponent
            if l.base.name in _INVOLUTIONS:
                e %= 2
            if out and out[-1].conjugator == l.conjugator and out[-1].base == l.base:
                e += out.pop().exponent
                if l.base.name in _INVOLUTIONS:
                    e %= 2
            if e:
                out.append(ConjLetter(l.conjugator, l.base, e))
        return ConjugacyWord(tuple(out), self.ambient)

    def bases(self) -> set[Symbol]:
        return {l.base for l in self.letters}

    def __str__(self) -> str:
        return format_word(self.to_word())

    @classmethod
    def from_word(cls, w: Word, ambient: str = "GL") -> "ConjugacyWord":
        letters = []
        for a, e in w.terms:
            if isinstance(a, Symbol):
                letters.append(ConjLetter(Word(), a, e))
                continue
            if isinstance(a, Conj):
                body = a.body
                if len(body.terms) == 1 and isinstance(body.terms[0][0], Symbol):
                    s, k = body.terms[0]
                    letters.append(ConjLetter(a.conjugator, s, k * e))
                    continue
            raise WordSyntaxError("not a conjugacy word: every term must be a symbol or conj(c, symbol^k)")
        return cls(tuple(letters), ambient)


def parse_conjugacy_word(text: str, ambient: str = "GL") -> ConjugacyWord:
    return ConjugacyWord.from_word(parse_word(text, "matrix"), ambient)
