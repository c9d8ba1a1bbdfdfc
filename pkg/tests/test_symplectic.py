import random

import pytest
from hypothesis import given, settings, strategies as st

from strategies import normal_products, symmetric
from urspkit.congruence import MembershipError, factor_gamma2, factor_gammad
from urspkit.linalg import (IntegerMatrix, Symbol, elementary, embed_gl, is_in_level, is_ursp,
                            make_generator, swap_matrix, unimodular_inverse)
from urspkit.sampling import normal_bases, random_normal_product
from urspkit.symplectic import (SgElement, embed_word, factor_Sg, factor_ursp_level, is_in_Sg,
                                verify_factorization)
from urspkit.words import ConjugacyWord, Word, evaluate_word, parse_word

M = IntegerMatrix
SP = ["X", "Y", "Z", "Atilde"]
Y11 = Symbol("Y", (1, 1))


def y(i, j, g):
    return make_generator(Symbol("Y", (i, j)), g).matrix


def random_unimodular(rng, g):
    m = M.identity(g)
    for _ in range(rng.randint(0, 10)):
        i, j = rng.sample(range(1, g + 1), 2)
        m = m @ elementary(g, i, j, rng.randint(-3, 3))
        if rng.random() < 0.3:
            m = m @ swap_matrix(g, i, j)
    return m


def test_sg_examples():
    assert is_in_Sg(y(1, 2, 3))
    assert is_in_Sg(y(1, 1, 2) ** 2, 2)
    assert not is_in_Sg(y(1, 1, 2), 2)
    assert not is_in_Sg(make_generator(Symbol("X", (1, 2)), 2).matrix)
    with pytest.raises(ValueError):
        SgElement(M([[0, 1], [0, 0]]))


def test_factor_y12_uses_only_y11():
    cw = factor_Sg(y(1, 2, 3))
    assert verify_factorization(cw, y(1, 2, 3))
    assert cw.bases() == {Y11}


@pytest.mark.parametrize("g", range(2, 6))
def test_y_family_commutes(g):
    ys = [y(i, j, g) for i in range(1, g + 1) for j in range(i, g + 1)]
    for a in ys:
        for b in ys:
            assert a @ b == b @ a


@given(st.integers(1, 5).flatmap(lambda g: st.tuples(symmetric(g), symmetric(g))))
def test_sg_addition_law(pair):
    b1, b2 = pair
    w = factor_Sg(SgElement(b1)) * factor_Sg(SgElement(b2))
    assert evaluate_word(w, b1.n, "urSp") == SgElement(b1 + b2).matrix
    assert (SgElement(b1) @ SgElement(b2)).B == b1 + b2


@given(st.integers(2, 4), st.integers(2, 5), st.data())
def test_factor_sg_level(g, d, data):
    b = data.draw(symmetric(g, 6))
    sg = SgElement(M([[d * v for v in row] for row in b.rows]))
    cw = factor_Sg(sg, d)
    assert verify_factorization(cw, sg)
    assert all(l.base == Y11 and l.exponent % d == 0 for l in cw)
    off = SgElement(M([[d * v + (i == j) for j, v in enumerate(row)] for i, row in enumerate(b.rows)]))
    with pytest.raises(MembershipError):
        factor_Sg(off, d)


def test_embed_gl_is_a_homomorphism():
    rng = random.Random(5)
    for _ in range(500):
        g = rng.randint(2, 4)
        a, b = random_unimodular(rng, g), random_unimodular(rng, g)
        ea = embed_gl(a).matrix
        assert embed_gl(a @ b).matrix == ea @ embed_gl(b).matrix
        assert is_ursp(ea)
        assert ea.block("D") == unimodular_inverse(a).T


def test_embed_word_matches_embed_gl():
    rng = random.Random(8)
    for _ in range(30):
        g = 3
        w = random_normal_product(rng, "gamma", g, 2, 5, 4)
        a = evaluate_word(w, g)
        cw = factor_gamma2(a)
        assert evaluate_word(embed_word(cw), g, "urSp") == embed_gl(a).matrix


@settings(max_examples=25)
@given(st.sampled_from([(3, 2), (3, 3), (4, 5), (2, 2), (4, 2)]).flatmap(
    lambda gd: st.tuples(st.just(gd), normal_products(gd[0], normal_bases("ursp", gd[1]), SP, 6, 4))))
def test_ursp_level_round_trip(case):
    (g, d), w = case
    x = evaluate_word(w, g, "urSp")
    cw = factor_ursp_level(x, d)
    assert verify_factorization(cw, x)
    allowed = {Y11, Symbol("Z", (1,)) if d == 2 else Symbol("X", (1, 2))}
    assert cw.bases() <= allowed
    for l in cw:
        assert is_in_level(evaluate_word(ConjugacyWord((l,), "urSp"), g), d)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_pipeline_residual_is_in_sg(d):
    rng = random.Random(d)
    g = 3
    for _ in range(20):
        x = evaluate_word(random_normal_product(rng, "ursp", g, d, 8, 5), g, "urSp")
        a = x.block("A")
        a_word = factor_gamma2(a) if d == 2 else factor_gammad(a, d)
        residual = x @ unimodular_inverse(evaluate_word(embed_word(a_word), g, "urSp"))
        assert is_in_Sg(residual, d)


def test_output_is_packed():
    x = y(1, 1, 3) ** 6
    cw = factor_ursp_level(x, 3)
    assert len(cw) == 1 and cw.letters[0].exponent == 6


def test_ursp_level_rejects_non_members():
    with pytest.raises(MembershipError):
        factor_ursp_level(y(1, 1, 3), 2)
    with pytest.raises(MembershipError):
        factor_ursp_level(M.identity(5), 2)
    with pytest.raises(ValueError):
        factor_ursp_level(M.identity(6), 1)


def test_verify_factorization_negative_cases():
    assert not verify_factorization(parse_word("Y(1,1)"), M.identity(4))
    assert not verify_factorization(parse_word("Y(1,1)"), M.identity(3))
    assert verify_factorization(Word(), M.identity(4))
