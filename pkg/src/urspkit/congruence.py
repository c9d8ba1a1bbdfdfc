"""Membership and constructive factorization in congruence subgroups of GL(g, Z)."""

from __future__ import annotations

from math import gcd

from . import _sl2
from .linalg import (DimensionError, IntegerMatrix, NotUnimodularError, Symbol,
                     is_unimodular, reduce_mod, unimodular_inverse)
from .words import ConjLetter, ConjugacyWord, Word, conj, evaluate_word

E12 = Symbol("E", (1, 2))
F1 = Symbol("F", (1,))


class MembershipError(ValueError):
    pass


class ObstructionUnresolved(RuntimeError):
    """Level-d reduction stopped; ``residual`` is the matrix left to factor."""

    def __init__(self, message: str, residual: IntegerMatrix):
        super().__init__(message)
        self.residual = residual


def E(i: int, j: int, k: int = 1) -> Word:
    return Word.letter(Symbol("E", (i, j)), k)


def A(i: int, j: int) -> Word:
    return Word.letter(Symbol("A", (i, j))) if i != j else Word()


def is_in_gamma(m: IntegerMatrix, d: int) -> bool:
    if not is_unimodular(m):
        raise NotUnimodularError("matrix is not unimodular")
    if d == 1:
        return True
    return reduce_mod(m, d).is_identity()


def conjugator_to_E12(i: int, j: int, g: int) -> Word:
    """Permutation word P with P * E(1,2) * P^-1 = E(i,j)."""
    if g < 2 or i == j or not (1 <= i <= g and 1 <= j <= g):
        raise DimensionError(f"invalid index pair ({i},{j}) for g={g}")
    if (i, j) == (2, 1):
        return A(1, 2)
    if i == 2:
        return A(1, 2) * A(2, j)
    if j == 1:
        return A(1, 2) * A(1, i)
    return A(1, i) * A(2, j)


def _check_unimodular(m: IntegerMatrix) -> None:
    if not is_unimodular(m):
        raise NotUnimodularError("matrix is not unimodular")


def _pivot(rows: list[list[int]], col: int, start: int) -> int | None:
    best = None
    for r in range(start, len(rows)):
        v = rows[r][col]
        if v and (best is None or abs(v) < abs(rows[best][col])):
            best = r
    return best


def _row_add(rows: list[list[int]], i: int, j: int, k: int) -> None:
    ri, rj = rows[i], rows[j]
    for c in range(len(ri)):
        ri[c] += k * rj[c]


def factor_elementary(m: IntegerMatrix) -> Word:
    """Word over E(i,j)^k and F(i) equal to m."""
    _check_unimodular(m)
    n = m.n
    rows = m.tolist()
    ops: list[tuple[Symbol, int]] = []

    def add(i, j, k):  # rows[i] += k rows[j], recorded as E(i,j)^k
        if k:
            _row_add(rows, i, j, k)
            ops.append((Symbol("E", (i + 1, j + 1)), k))

    for c in range(n):
        while True:
            p = _pivot(rows, c, c)
            others = [r for r in range(c, n) if r != p and rows[r][c]]
            if not others:
                break
            for r in others:
                add(r, p, -(rows[r][c] // rows[p][c]))
        if p != c:
            add(c, p, 1)
            add(p, c, -1)
        if rows[c][c] == -1:
            rows[c] = [-v for v in rows[c]]
            ops.append((Symbol("F", (c + 1,)), 1))
        for r in range(n):
            if r != c:
                add(r, c, -rows[r][c])
    # ops_n ... ops_1 m = I
    return Word.from_letters((s, -k if s.name == "E" else 1) for s, k in ops)


def _require_gamma(m: IntegerMatrix, d: int) -> None:
    if not is_in_gamma(m, d):
        raise MembershipError(f"matrix is not congruent to the identity mod {d}")


def factor_gamma2(m: IntegerMatrix) -> ConjugacyWord:
    """Product of conjugates of F(1) equal to m in Gamma_2(g)."""
    _require_gamma(m, 2)
    n = m.n
    rows = m.tolist()
    ops: list[tuple[str, tuple, int]] = []  # ('E', (i,j), k) is E(i,j)^(2k); ('F', (i,), 1)

    def add(i, j, k):
        if k:
            _row_add(rows, i, j, 2 * k)
            ops.append(("E", (i + 1, j + 1), k))

    for c in range(n):
        while True:
            p = _pivot(rows, c, c)
            others = [r for r in range(c, n) if r != p and rows[r][c]]
            if not others:
                break
            a = rows[p][c]
            for r in others:
                # nearest even multiple of the pivot
                add(r, p, -_nearest(rows[r][c], 2 * a))
        if p != c:
            raise ObstructionUnresolved("level-2 pivot left its row", IntegerMatrix(rows))
        if rows[c][c] == -1:
            rows[c] = [-v for v in rows[c]]
            ops.append(("F", (c + 1,), 1))
        for r in range(n):
            if r != c:
                add(r, c, -(rows[r][c] // 2))
    letters: list[ConjLetter] = []
    for kind, idx, k in ops:
        if kind == "F":
            letters.append(ConjLetter(A(1, idx[0]), F1, 1))
        else:
            # the inverse op E(i,j)^(-2k) = conj(P E12^-k, F1) * conj(P, F1)
            P = conjugator_to_E12(idx[0], idx[1], n)
            letters.append(ConjLetter(P * E(1, 2, -k), F1, 1))
            letters.append(ConjLetter(P, F1, 1))
    return ConjugacyWord(tuple(letters), "GL")


def _nearest(a: int, b: int) -> int:
    """Integer nearest to a / b, ties rounded up."""
    if b < 0:
        a, b = -a, -b
    return (2 * a + b) // (2 * b)


def _bezout(a: int, b: int) -> tuple[int, int]:
    """(p, q) with p*a + q*b = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return (x0, y0) if a >= 0 else (-x0, -y0)


def _embed_sl2(u, p: int, r: int) -> Word:
    """Image of an (S, T) word under the block embedding on coordinates p < r."""
    terms: list = []
    for gen, e in u:
        if gen == "T":
            terms.extend(E(p, r, e).terms)
        else:
            terms.extend(((E(p, r, -1) * E(r, p) * E(p, r, -1)) ** e).terms)
    # merge neighbouring powers of the same symbol
    merged: list = []
    for s, e in terms:
        if merged and merged[-1][0] == s:
            e += merged.pop()[1]
            if not e:
                continue
        merged.append((s, e))
    return Word(tuple(merged))


def factor_gammad(m: IntegerMatrix, d: int) -> ConjugacyWord:
    """Product of conjugates of E(1,2)^(d k) equal to m in Gamma_d(g), d >= 3."""
    if d < 3:
        raise ValueError("level must be at least 3; use factor_gamma2 for level 2")
    _require_gamma(m, d)
    g = m.n
    if g < 2:
        raise DimensionError("need g >= 2")
    rows = m.tolist()
    out: list[ConjLetter] = []

    def elem(i, j, k):  # rows[i] += k rows[j]
        if k:
            _row_add(rows, i, j, k)
            out.append(ConjLetter(conjugator_to_E12(i + 1, j + 1, g), E12, -k))

    def transvect(k, uz, w):
        # I + d u w^T with u = e_k + uz e_(k+2), w.u = 0, as conjugates of E12^d
        P = E(k + 3, k + 1, uz) * A(1, k + 1)
        pm = evaluate_word(P, g)
        wp = [sum(w[i] * pm[i, j] for i in range(g)) for j in range(g)]
        for j in range(1, g):
            if wp[j]:
                out.append(ConjLetter(P * conjugator_to_E12(1, j + 1, g), E12, -d * wp[j]))
        wr = [sum(w[i] * rows[i][c] for i in range(g)) for c in range(g)]
        for c in range(g):
            rows[k][c] += d * wr[c]
            rows[k + 2][c] += d * uz * wr[c]

    for k in range(g - 2):
        col = lambda i: rows[i][k]  # noqa: E731
        # make gcd(x, y) = 1 by pushing multiples of lower rows upward
        for r in range(g - 1, k + 1, -1):
            if _gcd_all(col(i) for i in range(k, r)) == 1:
                continue
            X, Y = _gcd_all(col(i) for i in range(k, r - 1)), col(r - 1)
            l = X
            while (h := gcd(l, Y)) > 1:
                l //= h
            elem(r - 1, r, d * l)
        x, y, z = col(k), col(k + 1), col(k + 2)
        if x != 1:
            ay = abs(y)
            uz = ((z - 1) * pow(x, -1, ay)) % ay if ay > 1 else 0
            p, q = _bezout(y, z - uz * x)
            s = (x - 1) // d
            w = [0] * g
            w[k + 1], w[k + 2] = -s * p, -s * q
            w[k] = -w[k + 2] * uz
            transvect(k, uz, w)
            if col(k) != 1:
                raise ObstructionUnresolved("pivot normalization failed", IntegerMatrix(rows))
        for i in range(g):
            if i != k:
                elem(i, k, -col(i))

    # clear the top-right block against the 2x2 corner N
    (a, b), (c, e) = [rows[i][g - 2:] for i in (g - 2, g - 1)]
    for i in range(g - 2):
        x1, x2 = rows[i][g - 2:]
        elem(i, g - 2, -(x1 * e - x2 * c))
        elem(i, g - 1, -(-x1 * b + x2 * a))
    corner = ((a, b), (c, e))
    if corner != _sl2.IDENT:
        try:
            cert = _sl2.certify(corner, d)
        except _sl2.CornerUnresolved as exc:
            raise ObstructionUnresolved(f"2x2 corner not resolved: {exc}", IntegerMatrix(rows)) from None
        pc = conjugator_to_E12(g - 1, g, g)
        for u, q in cert:
            out.append(ConjLetter(_embed_sl2(u, g - 1, g) * pc, E12, d * q))
    result = ConjugacyWord(tuple(out), "GL").packed()
    if evaluate_word(result, g) != m:
        raise AssertionError("factorization failed re-multiplication")
    return result


def _gcd_all(values) -> int:
    h = 0
    for v in values:
        h = gcd(h, v)
    return h
