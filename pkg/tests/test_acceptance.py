"""Acceptance criteria, one test each.

Every test records a one-line verdict; the lines are printed in the pytest
terminal summary and when this file is run as a script.
"""

import itertools
import random
import time

import pytest

from urspkit.congruence import factor_gamma2
from urspkit.linalg import (IntegerMatrix, Symbol, is_in_level, is_symplectic, is_ursp, make_generator,
                            unimodular_inverse)
from urspkit.sampling import random_handlebody_word, random_mcg_word, random_normal_product, random_ursp
from urspkit.surface import (RELATIONS, alpha_variant_report, decompose_level_d, eta_homology,
                             lift_ursp_to_mcg, matrix_identity_corpus, membership, psi, verify_relation)
from urspkit.symplectic import factor_ursp_level, verify_factorization
from urspkit.words import Word, evaluate_word, parse_word

RESULTS: dict = {}
M = IntegerMatrix


def record(n, ok, detail):
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(RESULTS[n])
    assert ok, RESULTS[n]


def gen(name, idx, g):
    return make_generator(Symbol(name, idx), g).matrix


def test_1_generator_validity():
    t0 = time.perf_counter()
    bad = []
    for g in range(2, 7):
        for i, j in itertools.product(range(1, g + 1), repeat=2):
            fams = ["Y"] + (["X", "Atilde"] if i != j else [])
            for f in fams:
                m = gen(f, (i, j), g)
                if not (is_symplectic(m) and is_ursp(m)):
                    bad.append(f"{f}({i},{j}) g={g}")
                if f in ("X", "Y"):
                    for d in range(2, 7):
                        if not is_in_level(m ** d, d):
                            bad.append(f"{f}({i},{j})^{d} g={g}")
        for i in range(1, g + 1):
            z = gen("Z", (i,), g)
            if not (is_symplectic(z) and is_ursp(z)):
                bad.append(f"Z({i}) g={g}")
        if not is_in_level(gen("Z", (1,), g), 2):
            bad.append(f"Z(1) level 2 g={g}")
    dt = time.perf_counter() - t0
    record(1, not bad and dt < 1, f"{len(bad)} failures, {dt:.2f} s")


def test_2_identity_corpus():
    t0 = time.perf_counter()
    swap, sign = M([[0, 1], [1, 0]]), M([[1, 0], [0, -1]])
    checks = [swap @ sign @ swap == M([[-1, 0], [0, 1]]),
              M([[1, 1], [0, 1]]) @ M([[-1, 0], [0, 1]]) @ M([[1, -1], [0, 1]]) @ M([[-1, 0], [0, 1]])
              == M([[1, 2], [0, 1]])]
    for g in (3, 4):
        for _, lhs, rhs in matrix_identity_corpus(g):
            checks.append(evaluate_word(parse_word(lhs), g) == evaluate_word(parse_word(rhs), g))
    dt = time.perf_counter() - t0
    record(2, all(checks) and dt < 1, f"{sum(checks)}/{len(checks)} identities, {dt:.2f} s")


@pytest.mark.parametrize("g", [3, 4, 5])
@pytest.mark.parametrize("d", [2, 3, 5])
def test_3_round_trip_factorization(g, d):
    rng = random.Random(1000 * g + d)
    t0 = time.perf_counter()
    ok = 0
    for _ in range(200):
        w = random_normal_product(rng, "ursp", g, d, 20, 8)
        x = evaluate_word(w, g, "urSp")
        ok += verify_factorization(factor_ursp_level(x, d), x)
    dt = time.perf_counter() - t0
    key = f"3[g={g},d={d}]"
    line = f"criterion {key}: {'PASS' if ok == 200 and dt < 60 else 'FAIL'} ({ok}/200, {dt:.1f} s)"
    RESULTS[key] = line
    print(line)
    assert ok == 200 and dt < 60, line


def test_4_gamma2_completeness():
    ok = total = 0
    for g in (2, 3):
        rng = random.Random(40 + g)
        for _ in range(200):
            letters = []
            for _ in range(rng.randint(1, 30)):
                if rng.random() < 0.5:
                    letters.append((Symbol("F", (rng.randint(1, g),)), 1))
                else:
                    i, j = rng.sample(range(1, g + 1), 2)
                    letters.append((Symbol("E", (i, j)), rng.choice((-2, 2))))
            m = evaluate_word(Word.from_letters(letters), g)
            total += 1
            ok += verify_factorization(factor_gamma2(m), m)
    record(4, ok == total, f"{ok}/{total}")


def test_5_psi_homomorphism():
    rng = random.Random(5)
    mult = contained = 0
    for k in range(1000):
        g = rng.randint(2, 5)
        # half the pairs include lone C-twists, which only the multiplicativity check covers
        if k % 2:
            a, b = random_mcg_word(rng, g, rng.randint(0, 12)), random_mcg_word(rng, g, rng.randint(0, 12))
        else:
            a, b = random_handlebody_word(rng, g, rng.randint(0, 12)), random_handlebody_word(rng, g, 6)
        pa, pb = psi(a, g), psi(b, g)
        mult += psi(a * b, g) == pa @ pb and psi(a.inverse(), g) == unimodular_inverse(pa)
        h = random_handlebody_word(rng, g, rng.randint(0, 12))
        contained += is_ursp(psi(h, g))
    record(5, mult == 1000 and contained == 1000,
           f"multiplicative {mult}/1000, urSp images {contained}/1000")


def test_6_eta_psi_consistency():
    rng = random.Random(6)
    ok = 0
    for _ in range(1000):
        g = rng.randint(2, 5)
        w = random_handlebody_word(rng, g, rng.randint(0, 12))
        ok += eta_homology(w, g) == psi(w, g).block("D")
    record(6, ok == 1000, f"{ok}/1000")


def test_7_relation_corpus():
    g = 3
    checks = {
        "R1 psi": verify_relation(*RELATIONS["R1"], g, "psi"),
        "R1 eta": verify_relation(*RELATIONS["R1"], g, "eta"),
        "R2 psi": verify_relation(*RELATIONS["R2"], g, "psi"),
        "R2 eta exactly one alpha variant": sum(alpha_variant_report(g).values()) == 1,
        "alpha not Torelli": not membership("alpha", g).torelli_or_level,
        "bp12 Torelli": membership("bp12", g).torelli_or_level,
        "tC1*tC2p^-1*tD2 not Torelli": not membership("tC1*tC2p^-1*tD2", g).torelli_or_level,
    }
    for d in (2, 3, 4, 5):
        checks[f"alpha^{d} level {d}"] = membership(f"alpha^{d}", g, d).torelli_or_level
        checks[f"HBP level {d}"] = membership("tC1*tC2^-1", g, d).torelli_or_level
        for i in range(1, g + 1):
            checks[f"tD{i}^{d} level {d}"] = membership(f"tD{i}^{d}", g, d).torelli_or_level
    failed = [k for k, v in checks.items() if not v]
    record(7, not failed, f"{len(checks) - len(failed)}/{len(checks)} checks" + (f"; failed {failed}" if failed else ""))


def level_word(rng, g, d):
    bases = [parse_word("omega" if d == 2 else f"alpha^{d}", "mcg"), parse_word(f"tD1^{d}", "mcg"),
             parse_word("bp12", "mcg")]
    w = Word()
    for _ in range(rng.randint(1, 4)):
        c = random_handlebody_word(rng, g, rng.randint(0, 4))
        w = w * c * rng.choice(bases) * c.inverse()
    return w


def test_8_lift_soundness():
    g = 3
    rng = random.Random(8)
    lifted = 0
    for _ in range(200):
        u = random_ursp(rng, g, rng.randint(1, 15))
        lifted += psi(lift_ursp_to_mcg(u), g) == u
    residual_ok = {}
    for d in (2, 3):
        residual_ok[d] = 0
        for _ in range(100):
            w = level_word(rng, g, d)
            normal, residual = decompose_level_d(w, g, d)
            residual_ok[d] += psi(residual, g).is_identity() and psi(normal, g) @ psi(residual, g) == psi(w, g)
    ok = lifted == 200 and all(v == 100 for v in residual_ok.values())
    record(8, ok, f"lifts {lifted}/200, residuals d=2 {residual_ok[2]}/100, d=3 {residual_ok[3]}/100")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-s"]))
