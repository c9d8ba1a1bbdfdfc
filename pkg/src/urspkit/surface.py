"""Mapping-class words, their symplectic image psi and free-group image eta.

Homology of the surface uses the ordered basis (b_1..b_g, a_1..a_g): the
meridians come first, so handlebody maps act by block upper-triangular
matrices.  Curve classes are calibrated by a bounded search over the
representation-level constraints rather than read off pictures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .congruence import MembershipError, conjugator_to_E12, factor_elementary, factor_gamma2, factor_gammad
from .freegroup import FreeGroupAutomorphism, is_IA
from .linalg import (DimensionError, IntegerMatrix, Symbol, SymbolError, UrSpElement, is_in_level,
                     is_ursp, standard_form, unimodular_inverse)
from .symplectic import factor_Sg, is_in_Sg
from .words import Conj, Word, apply_word, conj, parse_word, right_multiply_generator

CURVE_NAMES = ("D2'", "D2''", "C1", "C2", "C2'", "C1m", "C2m")
TWIST_LETTERS = {"tD2p": "D2'", "tD2pp": "D2''", "tC1": "C1", "tC2": "C2", "tC2p": "C2'"}
DISK_TWISTS = {"tD", "tD2p", "tD2pp"}


class EtaUnresolvable(ValueError):
    """A letter has no image in Aut(F_g), e.g. a lone twist on C1."""


@dataclass(frozen=True)
class HomologyClass:
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) % 2:
            raise DimensionError("homology vectors have even length 2g")

    @property
    def g(self) -> int:
        return len(self.coords) // 2

    @classmethod
    def meridian(cls, g: int, i: int) -> "HomologyClass":
        return cls(tuple(int(k == i - 1) for k in range(2 * g)))

    def padded(self, g: int) -> "HomologyClass":
        h = self.g
        if g < h:
            raise DimensionError("cannot shrink a homology class")
        b, a = self.coords[:h], self.coords[h:]
        z = (0,) * (g - h)
        return HomologyClass(b + z + a + z)


# -- calibration -------------------------------------------------------------

def _twist(c: Sequence[int], sign: int) -> IntegerMatrix:
    c = list(c)
    n = len(c)
    j = standard_form(n // 2)
    cj = [sum(c[k] * j[k, col] for k in range(n)) for col in range(n)]
    return IntegerMatrix([[int(r == s) + sign * c[r] * cj[s] for s in range(n)] for r in range(n)])


@lru_cache(maxsize=None)
def twist_sign() -> int:
    """Sign s in x -> x + s<x,c>c making the twist on the first meridian equal Y(1,1)."""
    y11 = IntegerMatrix([[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    hits = [s for s in (1, -1) if _twist((1, 0, 0, 0), -s) == y11]
    if len(hits) != 1:
        raise RuntimeError("twist sign calibration is ambiguous")
    return hits[0]


def _canonical_sign(v) -> tuple[int, ...]:
    # a twist only sees +-c; make the last nonzero entry positive
    v = tuple(int(x) for x in v)
    last = next(x for x in reversed(v) if x)
    return v if last > 0 else tuple(-x for x in v)


def _candidates(bound: int = 2) -> np.ndarray:
    return np.array([v for v in itertools.product(range(-bound, bound + 1), repeat=4) if any(v)])


def _twists_np(vs: np.ndarray, power: int) -> np.ndarray:
    j = np.array(standard_form(2).rows)
    return np.eye(4, dtype=np.int64) + power * (-twist_sign()) * np.einsum("ni,nj->nij", vs, vs) @ j


@lru_cache(maxsize=None)
def search_alpha_pairs(bound: int = 2):
    """All ([C1], [C2']) on handles 1-2 with T_C1 T_C2'^-1 in urSp(4), A-block E(1,2).

    Returns (solutions, chosen); each solution is (c1, c2p, B-block).
    """
    vs = _candidates(bound)
    prod = np.einsum("aij,bjk->abik", _twists_np(vs, 1), _twists_np(vs, -1))
    e12 = np.array([[1, 1], [0, 1]])
    ok = (prod[:, :, :2, :2] == e12).all(axis=(2, 3)) & (prod[:, :, 2:, :2] == 0).all(axis=(2, 3))
    sols = []
    seen = set()
    for a, b in zip(*np.nonzero(ok)):
        key = (_canonical_sign(vs[a]), _canonical_sign(vs[b]))
        if key in seen:
            continue
        seen.add(key)
        sols.append((key[0], key[1], tuple(map(tuple, prod[a, b][:2, 2:].tolist()))))
    # smallest S_g defect, then shortest classes
    chosen = min(sols, key=lambda s: (sum(x * x for r in s[2] for x in r),
                                      sum(map(abs, s[0])), sum(map(abs, s[1])), s[0], s[1]))
    return tuple(sols), chosen


@lru_cache(maxsize=None)
def search_d2pp(bound: int = 2):
    """Meridian classes [D2''] on handles 1-2 for which R2 holds under psi."""
    _, (c1, c2p, _) = search_alpha_pairs(bound)
    sols = set()
    for v in itertools.product(range(-bound, bound + 1), repeat=2):
        if not any(v):
            continue
        table = CurveTable._build(2, c1, c2p, v + (0, 0))
        lhs, rhs = RELATIONS["R2"]
        if psi(lhs, 2, table) == psi(rhs, 2, table):
            sols.add(_canonical_sign(v + (0, 0)))
    return tuple(sorted(sols))


@dataclass(frozen=True)
class CurveTable:
    g: int
    classes: tuple[tuple[str, HomologyClass], ...]

    def __getitem__(self, name: str) -> HomologyClass:
        for k, v in self.classes:
            if k == name:
                return v
        m = name[1:] if name.startswith("D") else ""
        if m.isdigit() and 1 <= int(m) <= self.g:
            return HomologyClass.meridian(self.g, int(m))
        raise KeyError(name)

    def names(self) -> list[str]:
        return [f"D{i}" for i in range(1, self.g + 1)] + [k for k, _ in self.classes]

    @classmethod
    def _build(cls, g: int, c1, c2p, d2pp) -> "CurveTable":
        d2 = (0, 1, 0, 0)
        raw = {"D2'": d2, "D2''": d2pp, "C1": c1, "C2": c1, "C2'": c2p, "C1m": c1, "C2m": c1}
        return cls(g, tuple((k, HomologyClass(tuple(raw[k])).padded(g)) for k in CURVE_NAMES))


@lru_cache(maxsize=None)
def calibrate_curve_table(g: int) -> CurveTable:
    if g < 2:
        raise DimensionError("the named curves need g >= 2")
    _, (c1, c2p, _) = search_alpha_pairs()
    d2pp = search_d2pp()
    if len(d2pp) != 1:
        raise RuntimeError(f"[D2''] calibration is not unique: {d2pp}")
    return CurveTable._build(g, c1, c2p, d2pp[0])


def twist_matrix(c) -> IntegerMatrix:
    """Homology action of the right-handed twist along a curve of class c."""
    coords = c.coords if isinstance(c, HomologyClass) else tuple(c)
    return _twist(coords, -twist_sign())


# -- words -------------------------------------------------------------------

def as_mcg_word(w) -> Word:
    return parse_word(w, "mcg") if isinstance(w, str) else w


def _check_letter(s: Symbol, g: int) -> None:
    if s.name == "tD" and not 1 <= s.indices[0] <= g:
        raise SymbolError(f"{s} is out of range for g={g}")
    if s.name == "sigma":
        i, j = s.indices
        if i == j or not (1 <= i <= g and 1 <= j <= g):
            raise SymbolError(f"{s} is out of range for g={g}")
    if s.name in TWIST_LETTERS or s.name in ("alpha", "bp12"):
        if g < 2:
            raise SymbolError(f"{s} needs g >= 2")


def _transvect_right(m: list[list[int]], c: tuple[int, ...], e: int, g: int) -> None:
    # m <- m (I + e s c c^T J),  (c^T J)_k = -c_{g+k} for k < g, c_{k-g} otherwise
    k = e * -twist_sign()
    cj = [-c[g + t] for t in range(g)] + [c[t] for t in range(g)]
    support = [t for t in range(2 * g) if c[t]]
    for row in m:
        mc = sum(row[t] * c[t] for t in support)
        if mc:
            f = k * mc
            for t in range(2 * g):
                if cj[t]:
                    row[t] += f * cj[t]


def psi(w, g: int, table: CurveTable | None = None) -> IntegerMatrix:
    """Symplectic action of a mapping-class word, product in word order."""
    w = as_mcg_word(w)
    table = table or (calibrate_curve_table(g) if g >= 2 else None)

    def cls(name):
        return table[name].coords

    def step(m, s: Symbol, e: int) -> None:
        _check_letter(s, g)
        n = s.name
        if n == "tD":
            _transvect_right(m, HomologyClass.meridian(g, s.indices[0]).coords, e, g)
        elif n in TWIST_LETTERS:
            _transvect_right(m, cls(TWIST_LETTERS[n]), e, g)
        elif n in ("alpha", "bp12"):
            other = "C2'" if n == "alpha" else "C2"
            first, second = (("C1", 1), (other, -1)) if e > 0 else ((other, 1), ("C1", -1))
            for _ in range(abs(e)):
                _transvect_right(m, cls(first[0]), first[1], g)
                _transvect_right(m, cls(second[0]), second[1], g)
        elif n == "omega":
            right_multiply_generator(m, Symbol("Z", (1,)), e, g)
        elif n == "sigma":
            right_multiply_generator(m, Symbol("Atilde", s.indices), e, g)
        else:
            raise SymbolError(f"unknown letter {s}")

    m = IntegerMatrix.identity(2 * g).tolist()
    apply_word(m, w, 1, step)
    return IntegerMatrix(m)


def _fuse(terms):
    # tC1^e tC2^-e -> bp12^e and tC1^e tC2p^-e -> alpha^e
    out = []
    for a, e in terms:
        if out and isinstance(a, Symbol) and a.name in ("tC2", "tC2p"):
            b, f = out[-1]
            if isinstance(b, Symbol) and b.name == "tC1" and f == -e:
                out[-1] = (Symbol("bp12" if a.name == "tC2" else "alpha"), f)
                continue
        out.append((a, e))
    return out


def eta_letter(s: Symbol, g: int, alpha_variant: int = 1) -> FreeGroupAutomorphism:
    _check_letter(s, g)
    n = s.name
    gen = FreeGroupAutomorphism.on_generators
    if n in DISK_TWISTS:
        return FreeGroupAutomorphism.identity(g)
    if n == "bp12":
        return gen(g, {1: (2, 1, -2)}, {1: (-2, 1, 2)})
    if n == "omega":
        return gen(g, {1: (-1,)}, {1: (-1,)})
    if n == "alpha":
        if alpha_variant == 1:
            return gen(g, {1: (2, 1)}, {1: (-2, 1)})
        if alpha_variant == 2:
            return gen(g, {1: (-2, 1)}, {1: (2, 1)})
        raise ValueError("alpha_variant is 1 or 2")
    if n == "sigma":
        i, j = s.indices
        return gen(g, {i: (j,), j: (i,)}, {i: (j,), j: (i,)})
    raise EtaUnresolvable(f"letter {s} does not extend over the handlebody on its own")


def eta(w, g: int, alpha_variant: int | None = None) -> FreeGroupAutomorphism:
    """Action on pi_1 of the handlebody, as a right action on words."""
    w = as_mcg_word(w)
    variant = selected_alpha_variant() if alpha_variant is None else alpha_variant

    def ev(word: Word) -> FreeGroupAutomorphism:
        out = FreeGroupAutomorphism.identity(g)
        for a, e in _fuse(word.terms):
            if isinstance(a, Symbol):
                x = eta_letter(a, g, variant)
            elif isinstance(a, Word):
                x = ev(a)
            else:
                c = ev(a.conjugator)
                x = c * ev(a.body) * c.inverse()
            out = out * x ** e
        return out

    return ev(w)


def eta_homology(w, g: int, alpha_variant: int | None = None) -> IntegerMatrix:
    """Action on H_1 of the handlebody induced by eta; compares with the D-block of psi."""
    return eta(w, g, alpha_variant).inverse().abelianization()


@dataclass(frozen=True)
class Membership:
    torelli_or_level: bool
    in_Sg_image: bool


def membership(w, g: int, d: int = 1) -> Membership:
    m = psi(w, g)
    if d == 1:
        return Membership(m.is_identity(), m.block("A").is_identity())
    return Membership(is_in_level(m, d), is_in_level(m.block("A"), d))


def _level_word(w, level: str, g: int, alpha_variant: int | None):
    if level == "psi":
        return psi(w, g)
    if level == "eta":
        return eta(w, g, alpha_variant)
    raise ValueError("level is 'psi' or 'eta'")


def verify_relation(lhs, rhs, g: int, level: str = "psi", alpha_variant: int | None = None) -> bool:
    return _level_word(lhs, level, g, alpha_variant) == _level_word(rhs, level, g, alpha_variant)


_F = "(tD2*tD2pp^-1*omega^-1)"
RELATIONS = {
    "R1": (parse_word("tD2*tD2p^-1", "mcg"),
           parse_word("tD2*(tC1*tC2^-1)^-1*tD2^-1*tC1*tC2^-1", "mcg")),
    "R2": (parse_word("tC1*tC2^-1", "mcg"),
           parse_word(f"alpha^2*alpha^-1*{_F}*alpha*{_F}^-1", "mcg")),
}

# matrix identities: (name, lhs, rhs, genera)
MATRIX_IDENTITIES = [
    ("swap conjugates F2 to F1", "A(1,2)*F(2)*A(1,2)", "F(1)", (2, 3, 4)),
    ("E12 F1 E12^-1 F1", "E(1,2)*F(1)*E(1,2)^-1*F(1)", "E(1,2)^2", (2, 3, 4)),
    ("Y12 from Y11", "Y(1,1)^-1*conj(X(2,1),Y(1,1))*Y(2,2)^-1", "Y(1,2)", (2, 3, 4)),
]


def matrix_identity_corpus(g: int) -> list[tuple[str, str, str]]:
    """Named identities in GL(g) and urSp(2g), expanded over all index ranges."""
    out = [(n, l, r) for n, l, r, gs in MATRIX_IDENTITIES if g in gs]
    for i in range(2, g + 1):
        out.append((f"Atilde(1,{i}) Y({i},{i})", f"Atilde(1,{i})*Y({i},{i})*Atilde(1,{i})", "Y(1,1)"))
        for j in range(2, g + 1):
            if j != i:
                yij = f"Y({min(i, j)},{max(i, j)})"
                out.append((f"Atilde(1,{i}) Y({i},{j})", f"Atilde(1,{i})*{yij}*Atilde(1,{i})",
                            f"Y(1,{j})"))
    for j in range(3, g + 1):
        out.append((f"Atilde(2,{j}) Y(1,{j})", f"Atilde(2,{j})*Y(1,{j})*Atilde(2,{j})", "Y(1,2)"))
    return out


def alpha_variant_report(g: int = 3) -> dict[int, bool]:
    """Whether R2 holds at the eta level for each candidate image of alpha."""
    lhs, rhs = RELATIONS["R2"]
    return {v: verify_relation(lhs, rhs, g, "eta", v) for v in (1, 2)}


@lru_cache(maxsize=None)
def selected_alpha_variant() -> int:
    passing = [v for v, ok in alpha_variant_report().items() if ok]
    if len(passing) != 1:
        raise RuntimeError(f"alpha calibration needs exactly one passing variant, got {passing}")
    return passing[0]


# -- lifting -----------------------------------------------------------------

def _sigma(i: int, j: int) -> Word:
    return Word.letter(Symbol("sigma", (i, j))) if i != j else Word()


def _lift_gl_word(w: Word, g: int) -> Word:
    """Mapping-class word whose psi has A-block equal to the GL(g) word w."""
    out: list = []
    for a, e in w.terms:
        if isinstance(a, Symbol):
            if a.name == "A":
                out.extend((_sigma(*a.indices) ** e).terms)
            elif a.name == "E":
                p = _lift_gl_word(conjugator_to_E12(*a.indices, g), g)
                out.extend(conj(p, Word.letter(Symbol("alpha"), e)).terms)
            elif a.name == "F":
                out.extend((conj(_sigma(1, a.indices[0]), Word.letter(Symbol("omega"))) ** e).terms)
            else:
                raise SymbolError(f"cannot lift {a}")
        elif isinstance(a, Word):
            out.extend((_lift_gl_word(a, g) ** e).terms)
        else:
            out.append((Conj(_lift_gl_word(a.conjugator, g), _lift_gl_word(a.body, g)), e))
    return Word(tuple(out))


def _lift_sg(w, g: int) -> Word:
    """Lift a factor_Sg word: Y(1,1) -> tD1, Atilde -> sigma, X(2,1) -> a lift with A-block E(2,1)."""
    x21 = conj(_sigma(1, 2), Word.letter(Symbol("alpha")))
    out: list = []
    for l in w.letters:
        c: list = []
        for s, e in l.conjugator.letters():
            if s.name == "Atilde":
                c.extend((_sigma(*s.indices) ** e).terms)
            elif s == Symbol("X", (2, 1)):
                c.extend((x21 ** e).terms)
            else:
                raise SymbolError(f"unexpected conjugator letter {s}")
        out.extend(conj(Word(tuple(c)), Word.letter(Symbol("tD", (1,)), l.exponent)).terms)
    return Word(tuple(out))


def _as_ursp_matrix(u) -> IntegerMatrix:
    return u.matrix if isinstance(u, UrSpElement) else u


def lift_ursp_to_mcg(u) -> Word:
    """Mapping-class word w with psi(w) = u."""
    m = _as_ursp_matrix(u)
    if m.n % 2 or not is_ursp(m):
        raise MembershipError("element is not in urSp(2g)")
    g = m.n // 2
    w_a = _lift_gl_word(factor_elementary(m.block("A")), g)
    residual = m @ unimodular_inverse(psi(w_a, g))
    out = merge_adjacent(_lift_sg(factor_Sg(residual), g) * w_a)
    if psi(out, g) != m:
        raise AssertionError("lift failed its psi check")
    return out


def merge_adjacent(w: Word) -> Word:
    """Combine neighbouring powers of the same atom and drop cancelled terms."""
    out: list = []
    for a, e in w.terms:
        if out and out[-1][0] == a:
            e += out.pop()[1]
            if not e:
                continue
        out.append((a, e))
    return Word(tuple(out))


def decompose_level_d(w, g: int, d: int) -> tuple[Word, Word]:
    """Split w in H[d] as normal_word * residual with psi(residual) = I.

    normal_word is a product of conjugates of alpha^d (d >= 3) or omega (d = 2)
    and of tD1^d, lifted from factor_ursp_level.
    """
    w = as_mcg_word(w)
    x = psi(w, g)
    if d < 2:
        raise ValueError("level must be at least 2")
    if not is_in_level(x, d):
        raise MembershipError(f"word is not in the level-{d} subgroup")
    a = x.block("A")
    a_word = factor_gamma2(a) if d == 2 else factor_gammad(a, d)
    base = {"F": Word.letter(Symbol("omega")), "E": Word.letter(Symbol("alpha"))}
    n1: list = []
    for l in a_word.letters:
        n1.extend(conj(_lift_gl_word(l.conjugator, g), base[l.base.name] ** l.exponent).terms)
    n1w = Word(tuple(n1))
    s = x @ unimodular_inverse(psi(n1w, g))
    if not is_in_Sg(s, d):
        raise AssertionError("level residual left S_g[d]")
    normal = merge_adjacent(_lift_sg(factor_Sg(s, d), g) * n1w)
    residual = merge_adjacent(normal.inverse() * w)
    return normal, residual
