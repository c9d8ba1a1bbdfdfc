"""Seeded random words for round-trip checks."""

from __future__ import annotations

import random

from .linalg import Symbol
from .words import Word, conj, evaluate_word

GL_FAMILIES = ("E", "F", "A")
URSP_FAMILIES = ("X", "Y", "Z", "Atilde")


def random_symbol(rng: random.Random, g: int, families) -> Symbol:
    name = rng.choice(families)
    if name in ("F", "Z"):
        return Symbol(name, (rng.randint(1, g),))
    if name == "Y":
        i, j = sorted((rng.randint(1, g), rng.randint(1, g)))
        return Symbol(name, (i, j))
    i, j = rng.sample(range(1, g + 1), 2)
    return Symbol(name, (i, j))


def random_word(rng: random.Random, g: int, length: int, families) -> Word:
    return Word.from_letters((random_symbol(rng, g, families), rng.choice((-1, 1))) for _ in range(length))


def normal_bases(group: str, d: int) -> list[tuple[Symbol, int]]:
    """Normal generators (symbol, exponent) of the level-d subgroup."""
    if group == "gamma":
        return [(Symbol("F", (1,)), 1)] if d == 2 else [(Symbol("E", (1, 2)), d)]
    if group == "sg":
        return [(Symbol("Y", (1, 1)), max(d, 1))]
    if group == "ursp":
        second = (Symbol("Z", (1,)), 1) if d == 2 else (Symbol("X", (1, 2)), d)
        return [(Symbol("Y", (1, 1)), d), second]
    raise ValueError(f"unknown group {group!r}")


def random_normal_product(rng: random.Random, group: str, g: int, d: int,
                          max_letters: int = 20, max_conj_len: int = 8) -> Word:
    """Product of at most max_letters conjugates of normal generators."""
    families = GL_FAMILIES if group == "gamma" else URSP_FAMILIES
    bases = normal_bases(group, d)
    w = Word()
    for _ in range(rng.randint(1, max_letters)):
        c = random_word(rng, g, rng.randint(0, max_conj_len), families)
        s, e = rng.choice(bases)
        w = w * conj(c, Word.letter(s, e * rng.choice((-1, 1))))
    return w


def random_ursp(rng: random.Random, g: int, length: int = 12):
    return evaluate_word(random_word(rng, g, length, URSP_FAMILIES), g, "urSp")


MCG_TWISTS = ("tD2p", "tD2pp", "tC1", "tC2", "tC2p")
ETA_LETTERS = ("tD", "tD2p", "tD2pp", "bp12", "alpha", "omega", "sigma")


def random_mcg_symbol(rng: random.Random, g: int, names) -> Symbol:
    name = rng.choice(names)
    if name == "tD":
        return Symbol("tD", (rng.randint(1, g),))
    if name == "sigma":
        return Symbol("sigma", tuple(rng.sample(range(1, g + 1), 2)))
    return Symbol(name)


def random_mcg_word(rng: random.Random, g: int, length: int, eta_resolvable: bool = False) -> Word:
    names = ETA_LETTERS if eta_resolvable else ETA_LETTERS + MCG_TWISTS
    return Word.from_letters((random_mcg_symbol(rng, g, names), rng.choice((-2, -1, 1, 2)))
                             for _ in range(length))


def random_handlebody_word(rng: random.Random, g: int, length: int) -> Word:
    """Word in the handlebody group: C-twists appear only in the fused pairs."""
    letters: list = []
    for _ in range(length):
        e = rng.choice((-2, -1, 1, 2))
        r = rng.random()
        if r < 0.15:
            partner = Symbol(rng.choice(("tC2", "tC2p")))
            letters += [(Symbol("tC1"), e), (partner, -e)]
        else:
            letters.append((random_mcg_symbol(rng, g, ETA_LETTERS), e))
    return Word.from_letters(letters)
