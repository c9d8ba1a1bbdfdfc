"""Principal congruence subgroups of SL(2,Z) as products of conjugates of T^d.

Matrices are 2x2 tuples ((a, b), (c, d)).  Words are tuples over 'S', 'T' with
S = ((0,-1),(1,0)) and T = ((1,1),(0,1)).  A certificate is a tuple of
(u, q) pairs meaning the ordered product of u * T^(d q) * u^-1.

Certificates for the Schreier generators come from the Cayley 2-complex of
SL(2, Z/d) with relators S^4, (ST)^3 S^-2 and T^d.  Only T^d is nontrivial in
SL(2,Z), so elimination expresses every generator of Gamma(d) it reaches as a
product of conjugates of T^d.  That reaches all of them exactly when Gamma(d)
is the normal closure of T^d, which is the case for d <= 5.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

Mat2 = tuple[tuple[int, int], tuple[int, int]]
SMAT: Mat2 = ((0, -1), (1, 0))
TMAT: Mat2 = ((1, 1), (0, 1))
IDENT: Mat2 = ((1, 0), (0, 1))
# above this group order the complex is not built
MAX_ORDER = 20000


class CornerUnresolved(Exception):
    pass


def mul(x: Mat2, y: Mat2, d: int = 0) -> Mat2:
    (a, b), (c, e) = x
    (p, q), (r, s) = y
    m = ((a * p + b * r, a * q + b * s), (c * p + e * r, c * q + e * s))
    if d:
        m = tuple(tuple(v % d for v in row) for row in m)
    return m


def inv(x: Mat2) -> Mat2:
    (a, b), (c, e) = x
    return ((e, -b), (-c, a))


def tpow(k: int) -> Mat2:
    return ((1, k), (0, 1))


def evaluate(word) -> Mat2:
    """word: iterable of (gen, exponent) pairs."""
    m = IDENT
    for gen, e in word:
        if gen == "T":
            m = mul(m, tpow(e))
        else:
            for _ in range(e % 4):
                m = mul(m, SMAT)
    return m


def evaluate_certificate(cert, d: int) -> Mat2:
    """Value of a certificate as returned by certify."""
    m = IDENT
    for u, q in cert:
        c = evaluate(u)
        m = mul(m, mul(mul(c, tpow(d * q)), inv(c)))
    return m


def euclid_word(m: Mat2) -> list[tuple[str, int]]:
    """Word in S and powers of T with value m (m in SL(2,Z))."""
    (a, b), (c, e) = m
    if a * e - b * c != 1:
        raise ValueError("matrix is not in SL(2,Z)")
    ops: list[tuple[str, int]] = []
    cur = m
    while cur[1][0] != 0:
        (a, b), (c, e) = cur
        # nearest quotient keeps the descent logarithmic
        q = (2 * a + c) // (2 * c) if c > 0 else (-2 * a - c) // (-2 * c)
        if q:
            cur = mul(tpow(-q), cur)
            ops.append(("T", -q))
        cur = mul(SMAT, cur)
        ops.append(("S", 1))
    # cur = +-T^b; invert the recorded left factors
    word = [("S", 3) if g == "S" else ("T", -k) for g, k in reversed(ops)]
    word.reverse()
    if cur[0][0] == -1:
        word.append(("S", 2))
        cur = mul(((-1, 0), (0, -1)), cur)
    if cur[0][1]:
        word.append(("T", cur[0][1]))
    return word


def _free_inverse(cert):
    return tuple((u, -q) for u, q in reversed(cert))


def _pack(cert):
    out: list[list] = []
    for u, q in cert:
        if out and out[-1][0] == u:
            out[-1][1] += q
            if out[-1][1] == 0:
                out.pop()
        elif q:
            out.append([u, q])
    return tuple((u, q) for u, q in out)


class CayleyComplex:
    def __init__(self, d: int):
        self.d = d
        gens = {"S": self._red(SMAT), "T": self._red(TMAT)}
        self.gens = gens
        start = self._red(IDENT)
        tree = {start: ()}
        parent = {}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for nm, gm in gens.items():
                y = mul(x, gm, d)
                if y not in tree:
                    tree[y] = tree[x] + (nm,)
                    parent[y] = (x, nm)
                    queue.append(y)
        self.tree = tree
        self.order = len(tree)
        self.nontree = {(x, nm) for x in tree for nm in gens if parent.get(mul(x, gens[nm], d)) != (x, nm)}
        self.cert: dict = {}
        self._eliminate()

    def _red(self, m: Mat2) -> Mat2:
        return tuple(tuple(v % self.d for v in row) for row in m)

    def _cells(self):
        relators = ("SSSS", "STSTSTss", "T" * self.d)
        ginv = {nm: self._red(inv(g)) for nm, g in self.gens.items()}
        for x in self.tree:
            for ri, rel in enumerate(relators):
                bd, cur = [], x
                for ch in rel:
                    nm = ch.upper()
                    if ch.isupper():
                        if (cur, nm) in self.nontree:
                            bd.append(((cur, nm), 1))
                        cur = mul(cur, self.gens[nm], self.d)
                    else:
                        cur = mul(cur, ginv[nm], self.d)
                        if (cur, nm) in self.nontree:
                            bd.append(((cur, nm), -1))
                value = ((self.tree[x], 1),) if ri == 2 else ()
                yield bd, value

    def _eliminate(self) -> None:
        cells = list(self._cells())
        progress = True
        while progress:
            progress = False
            for bd, value in cells:
                unknown = [z for z, _ in bd if z not in self.cert]
                if len(unknown) != 1:
                    continue
                i = next(k for k, (z, _) in enumerate(bd) if z == unknown[0])
                pre = tuple(t for z, s in bd[:i] for t in self.power(z, s))
                post = tuple(t for z, s in bd[i + 1:] for t in self.power(z, s))
                c = _free_inverse(pre) + value + _free_inverse(post)
                z, s = bd[i]
                self.cert[z] = _pack(c if s == 1 else _free_inverse(c))
                progress = True

    def power(self, z, s: int):
        c = self.cert[z]
        return c if s == 1 else _free_inverse(c)

    @property
    def complete(self) -> bool:
        return len(self.cert) == len(self.nontree)

    def certify(self, m: Mat2):
        """Certificate for m in Gamma(d), or CornerUnresolved."""
        d = self.d
        out: list = []
        v = self._red(IDENT)
        for gen, e in euclid_word(m):
            if gen == "T":
                q, r = divmod(e, d)
                if q:
                    out.append((self.tree[v], q))
                steps = r
            else:
                steps = e % 4
            for _ in range(steps):
                z = (v, gen)
                if z in self.nontree:
                    if z not in self.cert:
                        raise CornerUnresolved(f"no certificate for a Schreier generator at level {d}")
                    out.extend(self.cert[z])
                v = mul(v, self.gens[gen], d)
        if v != self._red(IDENT):
            raise ValueError("matrix is not congruent to the identity")
        return _pack(out)


def group_order(d: int) -> int:
    n, p, m = d ** 3, 2, d
    while p * p <= m:
        if m % p == 0:
            n = n * (p * p - 1) // (p * p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        n = n * (m * m - 1) // (m * m)
    return n


@lru_cache(maxsize=None)
def complex_for(d: int) -> CayleyComplex:
    if group_order(d) > MAX_ORDER:
        raise CornerUnresolved(f"SL(2,Z/{d}) is too large for the certificate search")
    return CayleyComplex(d)


def certify(m: Mat2, d: int):
    """Certificate for m in Gamma(d): tuple of (u, q) with u an (S,T) word.

    u is returned as a tuple of (gen, exponent) pairs.
    """
    if any((v - w) % d for row, ir in zip(m, IDENT) for v, w in zip(row, ir)):
        raise ValueError("matrix is not congruent to the identity")
    if m == IDENT:
        return ()
    cx = complex_for(d)
    return tuple((tuple((ch, 1) for ch in u), q) for u, q in cx.certify(m))
