"""Exact integer linear algebra and finitely presented abelian groups.

Matrices are plain lists of row lists of Python ints.  Vectors are acted on
as columns, so ``apply(M, v)`` is ``M @ v``.  Lattices are stored by their
row-style Hermite normal form, which makes lattice equality a plain ``==``.

>>> smith_normal_form([[2, 4], [6, 8]])[0]
[[2, 0], [0, 4]]
>>> invariant_factors(PresentedGroup.from_relations(2, [[2, 0], [0, 3]]))
InvariantFactors(free_rank=0, torsion_divisors=(6,))
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotSublatticeError

Matrix = list[list[int]]
Vector = tuple[int, ...]

#: returned by :func:`lattice_index` and :func:`group_order` for infinite results
INFINITE = math.inf


# -- small matrix helpers -------------------------------------------------

def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zero_matrix(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def transpose(m: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for x, brow in zip(row, b):
            if x:
                for j, y in enumerate(brow):
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def apply(m: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def mat_add(a, b) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(k: int, a) -> Matrix:
    return [[k * x for x in row] for row in a]


def mat_pow(a, e: int) -> Matrix:
    result = identity(len(a))
    base = [list(r) for r in a]
    while e:
        if e & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        e >>= 1
    return result


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _combine(x: int, r: list[int], y: int, s: list[int]) -> list[int]:
    return [x * u + y * v for u, v in zip(r, s)]


# -- normal forms ---------------------------------------------------------

def hermite_normal_form(m: Sequence[Sequence[int]],
                        cols: int | None = None) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U @ M == H`` and ``U`` unimodular.  Pivots of
    ``H`` are positive, entries below a pivot are zero and entries above it
    lie in ``[0, pivot)``.  Zero rows are kept at the bottom.
    """
    return _hnf(m, cols, True)


def _hnf(m, cols, track: bool) -> tuple[Matrix, Matrix | None]:
    a = [[int(x) for x in row] for row in m]
    nrows = len(a)
    ncols = len(a[0]) if a else (cols or 0)
    u = identity(nrows) if track else None
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r + 1, nrows):
            if a[i][c] == 0:
                continue
            g, x, y = _ext_gcd(a[r][c], a[i][c])
            p, q = -a[i][c] // g, a[r][c] // g
            a[r], a[i] = _combine(x, a[r], y, a[i]), _combine(p, a[r], q, a[i])
            if track:
                u[r], u[i] = _combine(x, u[r], y, u[i]), _combine(p, u[r], q, u[i])
        piv = a[r][c]
        if piv == 0:
            continue
        if piv < 0:
            a[r] = [-v for v in a[r]]
            if track:
                u[r] = [-v for v in u[r]]
            piv = -piv
        for i in range(r):
            f = a[i][c] // piv
            if f:
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
                if track:
                    u[i] = [v - f * w for v, w in zip(u[i], u[r])]
        r += 1
    return a, u


def smith_normal_form(m: Sequence[Sequence[int]],
                      cols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``(D, U, V)`` with ``U @ M @ V == D``.

    ``U`` and ``V`` are unimodular; the diagonal of ``D`` is nonnegative, each
    entry divides the next, and zeros come last.
    """
    a = [[int(x) for x in row] for row in m]
    nrows = len(a)
    ncols = len(a[0]) if a else (cols or 0)
    u = identity(nrows)
    v = identity(ncols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    for t in range(min(nrows, ncols)):
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            for i in range(t + 1, nrows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
            for j in range(t + 1, ncols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
            # leftover remainders: move the smallest one into the pivot slot
            small = None
            for i in range(t + 1, nrows):
                if a[i][t] and (small is None or abs(a[i][t]) < small[0]):
                    small = (abs(a[i][t]), "r", i)
            for j in range(t + 1, ncols):
                if a[t][j] and (small is None or abs(a[t][j]) < small[0]):
                    small = (abs(a[t][j]), "c", j)
            if small is not None:
                if small[1] == "r":
                    swap_rows(t, small[2])
                else:
                    swap_cols(t, small[2])
                continue
            bad = next((i for i in range(t + 1, nrows)
                        for j in range(t + 1, ncols) if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v


def kernel_basis(m: Sequence[Sequence[int]], cols: int | None = None) -> "Lattice":
    """Saturated basis of ``{x : M @ x == 0}``."""
    ncols = len(m[0]) if m else (cols or 0)
    if not m:
        return Lattice.full(ncols)
    h, u = hermite_normal_form(transpose(m), cols=len(m))
    rows = [u[i] for i, row in enumerate(h) if not any(row)]
    return Lattice.from_rows(rows, ncols)


# -- lattices ---------------------------------------------------------------

@dataclass(frozen=True)
class Lattice:
    """Sublattice of ``Z^dim`` spanned by the rows of ``basis`` (kept in HNF)."""

    dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], dim: int) -> "Lattice":
        rows = [list(r) for r in rows]
        for r in rows:
            if len(r) != dim:
                raise ValueError(f"row {r} does not have length {dim}")
        h, _ = _hnf(rows, dim, False)
        return cls(dim, tuple(tuple(r) for r in h if any(r)))

    @classmethod
    def full(cls, dim: int) -> "Lattice":
        return cls(dim, tuple(tuple(r) for r in identity(dim)))

    @classmethod
    def zero(cls, dim: int) -> "Lattice":
        return cls(dim, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Sequence[int]) -> Vector | None:
        """Coefficients of ``v`` on the stored basis, or None if ``v`` is outside."""
        rest = list(v)
        coeffs = []
        for row in self.basis:
            c = next(i for i, x in enumerate(row) if x)
            q, r = divmod(rest[c], row[c])
            if r:
                return None
            coeffs.append(q)
            if q:
                rest = [x - q * y for x, y in zip(rest, row)]
        return tuple(coeffs) if not any(rest) else None

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(b in self for b in other.basis)

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice.from_rows(self.basis + other.basis, self.dim)

    def scaled(self, k: int) -> "Lattice":
        return Lattice.from_rows([[k * x for x in b] for b in self.basis], self.dim)

    def image(self, m: Sequence[Sequence[int]]) -> "Lattice":
        """The lattice ``M @ L`` (``M`` maps ``Z^dim`` to ``Z^rows(M)``)."""
        return Lattice.from_rows([apply(m, b) for b in self.basis], len(m))

    def matrix(self) -> Matrix:
        return [list(b) for b in self.basis]


def preimage_lattice(m: Sequence[Sequence[int]], target: Lattice,
                     cols: int | None = None) -> Lattice:
    """``{x : M @ x in target}``."""
    ncols = len(m[0]) if m else (cols or 0)
    if len(m) != target.dim:
        raise ValueError("row count of M must equal the target dimension")
    if not m:
        return Lattice.full(ncols)
    r = target.rank
    # kernel of [M | -B^T] projected onto the first ncols coordinates
    block = [list(m[i]) + [-target.basis[j][i] for j in range(r)]
             for i in range(len(m))]
    ker = kernel_basis(block, cols=ncols + r)
    return Lattice.from_rows([b[:ncols] for b in ker.basis], ncols)


def lattice_index(big: Lattice, small: Lattice) -> int | float:
    """``[big : small]``; :data:`INFINITE` when ``small`` has lower rank."""
    if big.dim != small.dim:
        raise ValueError("lattices live in different ambient dimensions")
    coords = []
    for b in small.basis:
        c = big.coordinates(b)
        if c is None:
            raise NotSublatticeError(f"basis vector {b} is not in the larger lattice")
        coords.append(list(c))
    if small.rank < big.rank:
        return INFINITE
    if not coords:
        return 1
    d, _, _ = smith_normal_form(coords)
    return math.prod(d[i][i] for i in range(len(d)))


# -- finitely presented abelian groups --------------------------------------

@dataclass(frozen=True)
class InvariantFactors:
    free_rank: int
    torsion_divisors: tuple[int, ...]

    @property
    def order(self) -> int | float:
        return INFINITE if self.free_rank else math.prod(self.torsion_divisors)

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion_divisors]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class PresentedGroup:
    """The group ``Z^num_generators / relations``."""

    num_generators: int
    relations: Lattice

    @classmethod
    def from_relations(cls, k: int, rows: Iterable[Sequence[int]]) -> "PresentedGroup":
        return cls(k, Lattice.from_rows(rows, k))

    @classmethod
    def free(cls, k: int) -> "PresentedGroup":
        return cls(k, Lattice.zero(k))


def quotient_group(big: Lattice, small: Lattice) -> PresentedGroup:
    """Presentation of ``big / small`` on the stored basis of ``big``."""
    rows = []
    for b in small.basis:
        c = big.coordinates(b)
        if c is None:
            raise NotSublatticeError(f"basis vector {b} is not in the larger lattice")
        rows.append(c)
    return PresentedGroup.from_relations(big.rank, rows)


def invariant_factors(group: PresentedGroup) -> InvariantFactors:
    k = group.num_generators
    rel = group.relations
    if rel.rank == 0:
        return InvariantFactors(k, ())
    d, _, _ = smith_normal_form(rel.matrix())
    diag = [d[i][i] for i in range(rel.rank)]
    return InvariantFactors(k - rel.rank, tuple(x for x in diag if x > 1))


def group_order(group: PresentedGroup) -> int | float:
    return invariant_factors(group).order


def m_torsion(group: PresentedGroup, m: int) -> PresentedGroup:
    """Presentation of ``A[m] = {a : m*a == 0}``."""
    if m < 1:
        raise ValueError("m must be positive")
    k = group.num_generators
    killed = preimage_lattice(mat_scale(m, identity(k)), group.relations, cols=k)
    return quotient_group(killed, group.relations)
