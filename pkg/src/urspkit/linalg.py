"""Exact integer matrices, symplectic checks and the named generator matrices.

Everything here works over Python ints, so entries never overflow.  Matrices
act on column vectors from the left; in dimension 2g the first g coordinates
are the meridian block and the last g the longitude block.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    pass


class NotUnimodularError(ValueError):
    pass


class IntegerMatrix:
    """Immutable dense square matrix of arbitrary-precision integers."""

    __slots__ = ("_rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0:
            raise DimensionError("matrix must have positive dimension")
        for r in rows:
            if len(r) != n:
                raise DimensionError(f"matrix is not square: row of length {len(r)} in dimension {n}")
        self._rows = rows
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "IntegerMatrix":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "IntegerMatrix":
        """The matrix with a single 1 at 1-based position (i, j)."""
        return cls([[int(r == i - 1 and c == j - 1) for c in range(n)] for r in range(n)])

    @classmethod
    def from_blocks(cls, a: "IntegerMatrix", b: "IntegerMatrix",
                    c: "IntegerMatrix", d: "IntegerMatrix") -> "IntegerMatrix":
        g = a.n
        if not (b.n == c.n == d.n == g):
            raise DimensionError("blocks must share one dimension")
        top = [ra + rb for ra, rb in zip(a.rows, b.rows)]
        bottom = [rc + rd for rc, rd in zip(c.rows, d.rows)]
        return cls(top + bottom)

    @property
    def n(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._rows)
        return self._hash

    def __repr__(self) -> str:
        return f"IntegerMatrix({[list(r) for r in self._rows]})"

    def __str__(self) -> str:
        return format_matrix(self)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return multiply(self, other)

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        _check_same(self, other)
        return IntegerMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        _check_same(self, other)
        return IntegerMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self) -> "IntegerMatrix":
        return IntegerMatrix([[-x for x in r] for r in self._rows])

    def scale(self, k: int) -> "IntegerMatrix":
        return IntegerMatrix([[k * x for x in r] for r in self._rows])

    def __pow__(self, e: int) -> "IntegerMatrix":
        if e < 0:
            return unimodular_inverse(self) ** (-e)
        result = IntegerMatrix.identity(self.n)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    @property
    def T(self) -> "IntegerMatrix":
        return IntegerMatrix(zip(*self._rows))

    def is_identity(self) -> bool:
        return all(x == int(i == j) for i, r in enumerate(self._rows) for j, x in enumerate(r))

    def is_symmetric(self) -> bool:
        return self == self.T

    def block(self, which: str) -> "IntegerMatrix":
        """One of the g x g blocks 'A', 'B', 'C', 'D' of an even-dimensional matrix."""
        if self.n % 2:
            raise DimensionError(f"odd dimension {self.n} has no block structure")
        g = self.n // 2
        r0, c0 = {"A": (0, 0), "B": (0, g), "C": (g, 0), "D": (g, g)}[which]
        return IntegerMatrix([r[c0:c0 + g] for r in self._rows[r0:r0 + g]])

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.n:
            raise DimensionError(f"vector of length {len(v)} against dimension {self.n}")
        return tuple(sum(x * y for x, y in zip(r, v)) for r in self._rows)


def _check_same(a: IntegerMatrix, b: IntegerMatrix) -> None:
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")


def multiply(a: IntegerMatrix, b: IntegerMatrix) -> IntegerMatrix:
    _check_same(a, b)
    cols = tuple(zip(*b.rows))
    return IntegerMatrix([[sum(x * y for x, y in zip(r, c)) for c in cols] for r in a.rows])


def determinant(m: IntegerMatrix) -> int:
    # Bareiss fraction-free elimination
    a = m.tolist()
    n = m.n
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m: IntegerMatrix) -> bool:
    return determinant(m) in (1, -1)


def unimodular_inverse(m: IntegerMatrix) -> IntegerMatrix:
    """Exact inverse of a determinant +-1 integer matrix, by integer Gauss-Jordan."""
    n = m.n
    a = m.tolist()
    inv = IntegerMatrix.identity(n).tolist()
    for c in range(n):
        while True:
            live = [r for r in range(c, n) if a[r][c] != 0]
            if not live:
                raise NotUnimodularError("matrix is singular")
            p = min(live, key=lambda r: (abs(a[r][c]), r))
            done = True
            for r in live:
                if r != p:
                    q = a[r][c] // a[p][c]
                    a[r] = [x - q * y for x, y in zip(a[r], a[p])]
                    inv[r] = [x - q * y for x, y in zip(inv[r], inv[p])]
                    if a[r][c]:
                        done = False
            if done:
                break
        if abs(a[p][c]) != 1:
            raise NotUnimodularError(f"matrix is not unimodular (pivot {a[p][c]} in column {c + 1})")
        a[c], a[p] = a[p], a[c]
        inv[c], inv[p] = inv[p], inv[c]
        if a[c][c] == -1:
            a[c] = [-x for x in a[c]]
            inv[c] = [-x for x in inv[c]]
        for r in range(n):
            if r != c and a[r][c]:
                q = a[r][c]
                a[r] = [x - q * y for x, y in zip(a[r], a[c])]
                inv[r] = [x - q * y for x, y in zip(inv[r], inv[c])]
    return IntegerMatrix(inv)


def standard_form(g: int) -> IntegerMatrix:
    """J_{2g} = (0, I; -I, 0)."""
    i, z = IntegerMatrix.identity(g), IntegerMatrix.zero(g)
    return IntegerMatrix.from_blocks(z, i, -i, z)


def _require_even(m: IntegerMatrix) -> int:
    if m.n % 2:
        raise DimensionError(f"odd dimension {m.n}")
    return m.n // 2


def is_symplectic(m: IntegerMatrix) -> bool:
    g = _require_even(m)
    j = standard_form(g)
    return m.T @ j @ m == j


def is_ursp(m: IntegerMatrix) -> bool:
    """Zero lower-left block and symplectic."""
    _require_even(m)
    c = m.block("C")
    return all(x == 0 for r in c.rows for x in r) and is_symplectic(m)


def is_ursp_blocks(m: IntegerMatrix) -> bool:
    """Same membership test through A unimodular, A^-1 B symmetric, D = tA^-1."""
    _require_even(m)
    if any(x for r in m.block("C").rows for x in r):
        return False
    a, b, d = m.block("A"), m.block("B"), m.block("D")
    if not is_unimodular(a):
        return False
    ainv = unimodular_inverse(a)
    return (ainv @ b).is_symmetric() and d == ainv.T


def reduce_mod(m: IntegerMatrix, d: int) -> IntegerMatrix:
    if d < 2:
        raise ValueError(f"modulus must be at least 2, got {d}")
    return IntegerMatrix([[x % d for x in r] for r in m.rows])


def is_in_level(m: IntegerMatrix, d: int) -> bool:
    return reduce_mod(m, d) == reduce_mod(IntegerMatrix.identity(m.n), d)


def symplectic_pairing(x: Sequence[int], y: Sequence[int]) -> int:
    """tx J y for vectors of length 2g."""
    if len(x) != len(y) or len(x) % 2:
        raise DimensionError(f"need two vectors of one even length, got {len(x)} and {len(y)}")
    g = len(x) // 2
    return sum(x[i] * y[g + i] - x[g + i] * y[i] for i in range(g))


# -- named matrices ---------------------------------------------------------

GL_FAMILIES = ("E", "F", "S", "A")
URSP_FAMILIES = ("X", "Y", "Z", "Atilde")
_DISTINCT = {"E", "X", "Atilde", "A"}
_ARITY = {"E": 2, "F": 1, "S": 2, "A": 2, "X": 2, "Y": 2, "Z": 1, "Atilde": 2}


class SymbolError(ValueError):
    pass


@dataclass(frozen=True)
class Symbol:
    """A named letter such as E(1,2), Y(1,1), tD(3) or alpha; indices are 1-based."""

    name: str
    indices: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.name == "tD" and len(self.indices) == 1:
            return f"tD{self.indices[0]}"
        if not self.indices:
            return self.name
        return f"{self.name}({','.join(map(str, self.indices))})"


def check_symbol(s: Symbol, g: int) -> None:
    """Validate a matrix-alphabet symbol against genus g."""
    if s.name not in _ARITY:
        raise SymbolError(f"unknown matrix symbol {s.name}")
    if len(s.indices) != _ARITY[s.name]:
        raise SymbolError(f"{s.name} takes {_ARITY[s.name]} indices, got {len(s.indices)}")
    if any(not 1 <= i <= g for i in s.indices):
        raise SymbolError(f"index out of range 1..{g} in {s}")
    if s.name in _DISTINCT and s.indices[0] == s.indices[1]:
        raise SymbolError(f"{s} needs distinct indices")


def elementary(g: int, i: int, j: int, k: int = 1) -> IntegerMatrix:
    """E_{i,j}^k = I + k*e_ij."""
    rows = IntegerMatrix.identity(g).tolist()
    rows[i - 1][j - 1] += k
    return IntegerMatrix(rows)


def sym_unit(g: int, i: int, j: int) -> IntegerMatrix:
    """S_{i,j}: ones at (i,j) and (j,i)."""
    rows = IntegerMatrix.zero(g).tolist()
    rows[i - 1][j - 1] = 1
    rows[j - 1][i - 1] = 1
    return IntegerMatrix(rows)


def swap_matrix(g: int, i: int, j: int) -> IntegerMatrix:
    """A_{i,j} = I + S_ij - S_ii - S_jj, the permutation matrix of (i j)."""
    rows = IntegerMatrix.identity(g).tolist()
    rows[i - 1][i - 1] = rows[j - 1][j - 1] = 0
    rows[i - 1][j - 1] = rows[j - 1][i - 1] = 1
    return IntegerMatrix(rows)


def sign_matrix(g: int, i: int) -> IntegerMatrix:
    """F_i = I - 2 S_ii."""
    rows = IntegerMatrix.identity(g).tolist()
    rows[i - 1][i - 1] = -1
    return IntegerMatrix(rows)


@dataclass(frozen=True)
class UrSpElement:
    """Element (A, B; 0, tA^-1) of urSp(2g), validated at construction."""

    a: IntegerMatrix
    b: IntegerMatrix

    def __post_init__(self):
        if self.a.n != self.b.n:
            raise DimensionError("A and B blocks differ in size")
        if not is_unimodular(self.a):
            raise NotUnimodularError("A block is not unimodular")
        if not (unimodular_inverse(self.a) @ self.b).is_symmetric():
            raise ValueError("A^-1 B is not symmetric")

    @property
    def g(self) -> int:
        return self.a.n

    @property
    def matrix(self) -> IntegerMatrix:
        g = self.g
        return IntegerMatrix.from_blocks(self.a, self.b, IntegerMatrix.zero(g),
                                         unimodular_inverse(self.a).T)

    @classmethod
    def from_matrix(cls, m: IntegerMatrix) -> "UrSpElement":
        if not is_ursp(m):
            raise ValueError("matrix is not in urSp(2g)")
        return cls(m.block("A"), m.block("B"))

    def __matmul__(self, other: "UrSpElement") -> "UrSpElement":
        return UrSpElement.from_matrix(self.matrix @ other.matrix)


def embed_gl(a: IntegerMatrix) -> UrSpElement:
    """(a, 0; 0, ta^-1)."""
    return UrSpElement(a, IntegerMatrix.zero(a.n))


def make_generator(s: Symbol, g: int) -> IntegerMatrix | UrSpElement:
    """The matrix named by s in genus g.

    Families E, F, S, A give g x g matrices; X, Y, Z, Atilde give urSp(2g)
    elements.  The lower-right block of X(i,j) is the transpose-inverse of
    E(i,j), i.e. I - e_ji.
    """
    check_symbol(s, g)
    name, idx = s.name, s.indices
    if name == "E":
        return elementary(g, *idx)
    if name == "F":
        return sign_matrix(g, *idx)
    if name == "S":
        return sym_unit(g, *idx)
    if name == "A":
        return swap_matrix(g, *idx)
    if name == "X":
        return embed_gl(elementary(g, *idx))
    if name == "Y":
        return UrSpElement(IntegerMatrix.identity(g), sym_unit(g, *idx))
    if name == "Z":
        return embed_gl(sign_matrix(g, *idx))
    return embed_gl(swap_matrix(g, *idx))


def format_matrix(m: IntegerMatrix) -> str:
    return "\n".join([str(m.n)] + [" ".join(map(str, r)) for r in m.rows])


class MatrixFormatError(ValueError):
    pass


def parse_matrix(text: str) -> IntegerMatrix:
    """Read the text form: a line holding n, then n rows of n integers."""
    lines = [(k + 1, ln) for k, ln in enumerate(text.splitlines()) if ln.strip()]
    if not lines:
        raise MatrixFormatError("line 1: missing dimension line")
    lineno, head = lines[0]
    try:
        n = int(head.strip())
    except ValueError:
        raise MatrixFormatError(f"line {lineno}: dimension line must be one integer, got {head.strip()!r}") from None
    if n < 1:
        raise MatrixFormatError(f"line {lineno}: dimension must be positive")
    body = lines[1:]
    if len(body) < n:
        raise MatrixFormatError(f"line {lineno + len(body) + 1}: missing row {len(body) + 1} of {n}")
    if len(body) > n:
        raise MatrixFormatError(f"line {body[n][0]}: extra row beyond {n}")
    rows = []
    for lineno, ln in body:
        row = []
        col = 1
        for tok in ln.split():
            col = ln.index(tok, col - 1) + 1
            try:
                row.append(int(tok))
            except ValueError:
                raise MatrixFormatError(f"line {lineno}, column {col}: not an integer: {tok!r}") from None
            col += len(tok)
        if len(row) != n:
            raise MatrixFormatError(f"line {lineno}: expected {n} entries, found {len(row)}")
        rows.append(row)
    return IntegerMatrix(rows)
