"""Automorphisms of the free group F_g on v_1..v_g.

A word is a tuple of nonzero ints: k stands for v_k and -k for v_k^-1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import DimensionError, IntegerMatrix

FreeWord = tuple[int, ...]


def reduce_word(w) -> FreeWord:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(w: FreeWord) -> FreeWord:
    return tuple(-x for x in reversed(w))


def format_free_word(w: FreeWord) -> str:
    if not w:
        return "1"
    return "*".join(f"v{x}" if x > 0 else f"v{-x}^-1" for x in w)


def _substitute(w: FreeWord, images: tuple[FreeWord, ...]) -> FreeWord:
    out: list[int] = []
    for x in w:
        out.extend(images[x - 1] if x > 0 else invert_word(images[-x - 1]))
    return reduce_word(out)


@dataclass(frozen=True)
class FreeGroupAutomorphism:
    """v_k -> images[k-1], with inverse_images witnessing invertibility.

    Products follow the right-action convention: (a * b)(v) = b(a(v)), where
    b acts on the word a(v) by substitution.
    """

    images: tuple[FreeWord, ...]
    inverse_images: tuple[FreeWord, ...]

    def __post_init__(self):
        g = len(self.images)
        if len(self.inverse_images) != g:
            raise DimensionError("image lists differ in length")
        for w in self.images + self.inverse_images:
            if any(not 1 <= abs(x) <= g for x in w):
                raise DimensionError(f"letter out of range in {w}")
        ims = tuple(reduce_word(w) for w in self.images)
        invs = tuple(reduce_word(w) for w in self.inverse_images)
        object.__setattr__(self, "images", ims)
        object.__setattr__(self, "inverse_images", invs)
        for k in range(g):
            if _substitute(ims[k], invs) != (k + 1,) or _substitute(invs[k], ims) != (k + 1,):
                raise ValueError("inverse_images do not invert images")

    @property
    def g(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, g: int) -> "FreeGroupAutomorphism":
        gens = tuple((k,) for k in range(1, g + 1))
        return cls(gens, gens)

    @classmethod
    def on_generators(cls, g: int, images: dict[int, FreeWord],
                      inverse_images: dict[int, FreeWord]) -> "FreeGroupAutomorphism":
        """Automorphism moving only the listed generators."""
        ims = tuple(images.get(k, (k,)) for k in range(1, g + 1))
        invs = tuple(inverse_images.get(k, (k,)) for k in range(1, g + 1))
        return cls(ims, invs)

    def __call__(self, w) -> FreeWord:
        return _substitute(tuple(w), self.images)

    def __mul__(self, other: "FreeGroupAutomorphism") -> "FreeGroupAutomorphism":
        if other.g != self.g:
            raise DimensionError("rank mismatch")
        ims = tuple(_substitute(w, other.images) for w in self.images)
        invs = tuple(_substitute(w, self.inverse_images) for w in other.inverse_images)
        return FreeGroupAutomorphism(ims, invs)

    def inverse(self) -> "FreeGroupAutomorphism":
        return FreeGroupAutomorphism(self.inverse_images, self.images)

    def __pow__(self, e: int) -> "FreeGroupAutomorphism":
        base = self if e >= 0 else self.inverse()
        out = FreeGroupAutomorphism.identity(self.g)
        for _ in range(abs(e)):
            out = out * base
        return out

    def abelianization(self) -> IntegerMatrix:
        """Column k holds the exponent sums of the image of v_k."""
        g = self.g
        cols = []
        for w in self.images:
            col = [0] * g
            for x in w:
                col[abs(x) - 1] += 1 if x > 0 else -1
            cols.append(col)
        return IntegerMatrix([[cols[k][i] for k in range(g)] for i in range(g)])

    def __str__(self) -> str:
        return ", ".join(f"v{k + 1} -> {format_free_word(w)}" for k, w in enumerate(self.images))


def is_IA(a: FreeGroupAutomorphism) -> bool:
    return a.abelianization().is_identity()
