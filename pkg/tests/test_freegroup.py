import pytest
from hypothesis import given, strategies as st

from urspkit.freegroup import FreeGroupAutomorphism, format_free_word, invert_word, is_IA, reduce_word
from urspkit.linalg import DimensionError, IntegerMatrix, unimodular_inverse

FGA = FreeGroupAutomorphism


def c12(g):
    return FGA.on_generators(g, {1: (2, 1, -2)}, {1: (-2, 1, 2)})


def transvection(g, i, j, s):
    """v_i -> v_j^s v_i."""
    return FGA.on_generators(g, {i: (j * s, i)}, {i: (-j * s, i)})


def inversion(g, i):
    return FGA.on_generators(g, {i: (-i,)}, {i: (-i,)})


def swap(g, i, j):
    return FGA.on_generators(g, {i: (j,), j: (i,)}, {i: (j,), j: (i,)})


@st.composite
def automorphisms(draw, g, max_len=6):
    a = FGA.identity(g)
    for _ in range(draw(st.integers(0, max_len))):
        kind = draw(st.sampled_from(["t", "i", "s"]))
        i = draw(st.integers(1, g))
        j = draw(st.integers(1, g).filter(lambda x: x != i))
        a = a * (transvection(g, i, j, draw(st.sampled_from([-1, 1]))) if kind == "t"
                 else inversion(g, i) if kind == "i" else swap(g, i, j))
    return a


free_words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12)


def test_reduce_and_format():
    assert reduce_word((1, 2, -2, -1, 3)) == (3,)
    assert invert_word((1, -2)) == (2, -1)
    assert format_free_word((2, 1, -2)) == "v2*v1*v2^-1"
    assert format_free_word(()) == "1"


def test_c12_example():
    a = c12(3)
    assert a((1,)) == (2, 1, -2)
    assert a((2,)) == (2,) and a((3,)) == (3,)
    assert is_IA(a)
    assert str(a) == "v1 -> v2*v1*v2^-1, v2 -> v2, v3 -> v3"


def test_non_ia_examples():
    assert not is_IA(inversion(2, 1))
    assert not is_IA(transvection(2, 1, 2, 1))
    assert is_IA(FGA.identity(4))


def test_bad_inverse_is_rejected():
    with pytest.raises(ValueError):
        FGA(((1, 2), (2,)), ((1,), (2,)))
    with pytest.raises(DimensionError):
        FGA(((3,), (2,)), ((3,), (2,)))


@given(automorphisms(3), automorphisms(3), free_words)
def test_right_action(a, b, w):
    assert (a * b)(w) == b(a(w))


@given(automorphisms(3), free_words)
def test_inverse(a, w):
    assert a.inverse()(a(w)) == reduce_word(w)
    assert (a * a.inverse()) == FGA.identity(3)


@given(automorphisms(3), automorphisms(3))
def test_abelianization_is_an_antihomomorphism(a, b):
    # columns record images, so right composition reverses the matrix order
    assert (a * b).abelianization() == b.abelianization() @ a.abelianization()
    assert a.inverse().abelianization() == unimodular_inverse(a.abelianization())


@given(automorphisms(3), st.integers(-3, 3))
def test_powers(a, e):
    p = a ** e
    assert p.abelianization() == (a.abelianization() ** e if e >= 0
                                  else unimodular_inverse(a.abelianization()) ** -e)


@given(automorphisms(3))
def test_conjugates_of_c12_are_ia(a):
    assert is_IA(a.inverse() * c12(3) * a)


def test_abelianization_columns():
    assert transvection(2, 1, 2, 1).abelianization() == IntegerMatrix([[1, 0], [1, 1]])
