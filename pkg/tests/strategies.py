"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from urspkit.linalg import IntegerMatrix, Symbol, elementary, sign_matrix
from urspkit.words import Word, conj


def index_pairs(g):
    return st.tuples(st.integers(1, g), st.integers(1, g)).filter(lambda p: p[0] != p[1])


@st.composite
def unimodular(draw, g, steps=12, scale=3):
    m = IntegerMatrix.identity(g)
    for _ in range(draw(st.integers(0, steps))):
        i, j = draw(index_pairs(g))
        m = m @ elementary(g, i, j, draw(st.integers(-scale, scale)))
        if draw(st.booleans()):
            m = m @ sign_matrix(g, draw(st.integers(1, g)))
    return m


@st.composite
def symmetric(draw, g, bound=20):
    vals = {}
    for i in range(g):
        for j in range(i, g):
            vals[i, j] = vals[j, i] = draw(st.integers(-bound, bound))
    return IntegerMatrix([[vals[i, j] for j in range(g)] for i in range(g)])


@st.composite
def symbols(draw, g, families):
    name = draw(st.sampled_from(families))
    if name in ("F", "Z"):
        return Symbol(name, (draw(st.integers(1, g)),))
    if name in ("Y", "S"):
        return Symbol(name, tuple(sorted(draw(st.tuples(st.integers(1, g), st.integers(1, g))))))
    return Symbol(name, draw(index_pairs(g)))


@st.composite
def words(draw, g, families, max_len=8):
    n = draw(st.integers(0, max_len))
    return Word.from_letters((draw(symbols(g, families)), draw(st.sampled_from([-2, -1, 1, 2])))
                             for _ in range(n))


@st.composite
def normal_products(draw, g, bases, families, max_letters=8, max_conj=5):
    w = Word()
    for _ in range(draw(st.integers(1, max_letters))):
        c = draw(words(g, families, max_conj))
        s, e = draw(st.sampled_from(bases))
        w = w * conj(c, Word.letter(s, e * draw(st.sampled_from([-1, 1]))))
    return w


@st.composite
def mcg_words(draw, g, eta_resolvable=False, max_len=10):
    names = ["tD", "tD2p", "tD2pp", "bp12", "alpha", "omega", "sigma"]
    if not eta_resolvable:
        names += ["tC1", "tC2", "tC2p"]
    letters = []
    for _ in range(draw(st.integers(0, max_len))):
        name = draw(st.sampled_from(names))
        if name == "tD":
            s = Symbol("tD", (draw(st.integers(1, g)),))
        elif name == "sigma":
            s = Symbol("sigma", draw(index_pairs(g)))
        else:
            s = Symbol(name)
        letters.append((s, draw(st.sampled_from([-2, -1, 1, 2]))))
    return Word.from_letters(letters)
