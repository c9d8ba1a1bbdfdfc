"""Factorization inside urSp(2g): the abelian subgroup S_g and level-d elements."""

from __future__ import annotations

from dataclasses import dataclass

from .congruence import MembershipError, factor_gamma2, factor_gammad
from .linalg import (DimensionError, IntegerMatrix, Symbol, SymbolError, UrSpElement,
                     embed_gl, is_in_level, is_ursp, unimodular_inverse)
from .words import ConjLetter, ConjugacyWord, Word, ambient_of, evaluate_word, substitute

__all__ = ["SgElement", "is_in_Sg", "factor_Sg", "embed_gl", "factor_ursp_level",
           "evaluate_word", "verify_factorization", "embed_word"]

Y11 = Symbol("Y", (1, 1))
_EMBED = {"E": "X", "F": "Z", "A": "Atilde"}


@dataclass(frozen=True)
class SgElement:
    """(I, B; 0, I) with B symmetric."""

    B: IntegerMatrix

    def __post_init__(self):
        if not self.B.is_symmetric():
            raise ValueError("B must be symmetric")

    @property
    def g(self) -> int:
        return self.B.n

    @property
    def matrix(self) -> IntegerMatrix:
        g = self.g
        one = IntegerMatrix.identity(g)
        return IntegerMatrix.from_blocks(one, self.B, IntegerMatrix.zero(g), one)

    def __matmul__(self, other: "SgElement") -> "SgElement":
        return SgElement(self.B + other.B)


def _as_matrix(m) -> IntegerMatrix:
    if isinstance(m, (UrSpElement, SgElement)):
        return m.matrix
    return m


def is_in_Sg(m, d: int = 1) -> bool:
    m = _as_matrix(m)
    if m.n % 2 or not is_ursp(m):
        return False
    if not m.block("A").is_identity():
        return False
    return d == 1 or all(v % d == 0 for r in m.block("B").rows for v in r)


def _atilde(i: int, j: int) -> Word:
    return Word.letter(Symbol("Atilde", (i, j))) if i != j else Word()


def factor_Sg(m, d: int = 1) -> ConjugacyWord:
    """Product of conjugates of Y(1,1)^(d k) equal to an element of S_g[d]."""
    if not is_in_Sg(m, d):
        raise MembershipError(f"element is not in S_g[{d}]")
    b = _as_matrix(m).block("B")
    g = b.n
    letters: list[ConjLetter] = []
    x21 = Word.letter(Symbol("X", (2, 1)))
    for i in range(1, g + 1):
        for j in range(i, g + 1):
            k = b[i - 1, j - 1]
            if not k:
                continue
            if i == j:
                letters.append(ConjLetter(_atilde(1, i), Y11, k))
                continue
            # Y(i,j) = c Y(1,2) c^-1 and Y(1,2) = Y11^-1 * (X21 Y11 X21^-1) * Y22^-1
            c = _atilde(1, i) * _atilde(2, j)
            letters.append(ConjLetter(c, Y11, -k))
            letters.append(ConjLetter(c * x21, Y11, k))
            letters.append(ConjLetter(c * _atilde(1, 2), Y11, -k))
    return ConjugacyWord(tuple(letters), "urSp")


def embed_word(w: ConjugacyWord) -> ConjugacyWord:
    """Image of a GL(g) conjugacy word under a -> (a, 0; 0, ta^-1)."""
    def image(s: Symbol) -> Word:
        if s.name not in _EMBED:
            raise SymbolError(f"{s} has no image under the block embedding")
        return Word.letter(Symbol(_EMBED[s.name], s.indices))

    return ConjugacyWord(tuple(ConjLetter(substitute(l.conjugator, image), image(l.base).terms[0][0],
                                          l.exponent) for l in w.letters), "urSp")


def factor_ursp_level(x, d: int) -> ConjugacyWord:
    """Word over conjugates of Y(1,1)^d and X(1,2)^d (d >= 3) or Z(1) (d = 2).

    The result is the S_g[d] part followed by the embedded A-part, x = Y * X'.
    """
    m = _as_matrix(x)
    if d < 2:
        raise ValueError("level must be at least 2")
    if m.n % 2 or not is_ursp(m):
        raise MembershipError("element is not in urSp(2g)")
    if not is_in_level(m, d):
        raise MembershipError(f"element is not congruent to the identity mod {d}")
    g = m.n // 2
    a = m.block("A")
    a_word = factor_gamma2(a) if d == 2 else factor_gammad(a, d)
    emb = embed_word(a_word)
    residual = m @ unimodular_inverse(evaluate_word(emb, g, "urSp"))
    out = (factor_Sg(residual, d) * emb).packed()
    if evaluate_word(out, g, "urSp") != m:
        raise AssertionError("factorization failed re-multiplication")
    return out


def verify_factorization(w, target) -> bool:
    target = _as_matrix(target)
    if isinstance(w, ConjugacyWord):
        ambient, w = w.ambient, w.to_word()
    else:
        ambient = None
    try:
        ambient = ambient_of(w) or ambient
        if ambient == "urSp":
            if target.n % 2:
                return False
            g = target.n // 2
        else:
            g = target.n
        return evaluate_word(w, g, ambient) == target
    except (SymbolError, DimensionError):
        return False
