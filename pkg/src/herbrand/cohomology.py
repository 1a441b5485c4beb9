"""Tate cohomology of finitely generated modules over a finite cyclic group.

A module is a presentation ``A = Z^k / R`` together with an integer matrix
``sigma`` for the generator of ``G = <sigma>`` of order ``n``.  Every
subobject used here (fixed points, norms, kernel of the norm, image of
``1 - sigma``) is a lattice between ``R`` and ``Z^k``, so all quotient
orders reduce to lattice indices.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

from .abelian import (
    INFINITE,
    InvariantFactors,
    Lattice,
    Matrix,
    PresentedGroup,
    apply,
    group_order,
    identity,
    invariant_factors,
    lattice_index,
    m_torsion,
    mat_add,
    mat_pow,
    mat_scale,
    mat_sub,
    matmul,
    preimage_lattice,
    quotient_group,
)
from .errors import HerbrandError, ModuleValidationError, OracleError

DEFAULT_ORACLE_BOUND = 2 ** 16


@dataclass(frozen=True)
class CyclicModule:
    """``Z^k / relations`` with ``sigma`` acting on column vectors."""

    n: int
    base: PresentedGroup
    sigma: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, n: int, sigma: Sequence[Sequence[int]],
              relations: Sequence[Sequence[int]] = ()) -> "CyclicModule":
        k = len(sigma)
        return cls(n, PresentedGroup.from_relations(k, relations),
                   tuple(tuple(int(x) for x in row) for row in sigma))

    @property
    def k(self) -> int:
        return self.base.num_generators

    @property
    def relations(self) -> Lattice:
        return self.base.relations

    def matrix(self) -> Matrix:
        return [list(r) for r in self.sigma]


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    code: str | None = None
    generator: int | None = None
    witness: tuple[int, ...] | None = None

    def raise_if_invalid(self) -> None:
        if not self.valid:
            raise ModuleValidationError(
                f"generator {self.generator} fails, witness {self.witness}",
                self.code, self.generator, self.witness)


@dataclass(frozen=True)
class TateGroups:
    h0: InvariantFactors
    h1: InvariantFactors

    @property
    def h0_order(self) -> int:
        return self.h0.order

    @property
    def h1_order(self) -> int:
        return self.h1.order


@dataclass(frozen=True)
class HerbrandReport:
    quotient: Fraction
    tate: TateGroups


@dataclass(frozen=True)
class Order2Profile:
    r_plus: int
    r_minus: int
    r: int
    two_torsion_plus: int
    index_sum: int
    index_norm: int
    index_norm_double: int
    predicted_h1: int
    predicted_h: Fraction

    def h1_expressions(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """The four closed forms for the order of H^1; they must coincide."""
        top = Fraction(2) ** self.r_minus * self.two_torsion_plus
        return (top / self.index_sum,
                top / self.index_norm_double,
                Fraction(2) ** (self.r_minus - self.r_plus) * self.index_norm,
                Fraction(2) ** (self.r - 2 * self.r_plus) * self.index_norm)


@dataclass(frozen=True)
class RemarkIndices:
    numerator: int
    denominator: int
    norm_over_fixed: int          # (NA : n A^G)
    ambient_over_sum: int         # (A : A^G + _N A)
    image_over_image: int         # ((1-s)A : (1-s)(_N A))

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    @property
    def chain_holds(self) -> bool:
        return self.norm_over_fixed == self.ambient_over_sum == self.image_over_image


# -- validation ---------------------------------------------------------------

def validate_module(module: CyclicModule) -> ValidationReport:
    k, n = module.k, module.n
    s = module.matrix()
    if n < 1:
        return ValidationReport(False, "ORDER_VIOLATION", None, None)
    if len(s) != k or any(len(row) != k for row in s):
        return ValidationReport(False, "RELATIONS_NOT_PRESERVED", None, None)
    rel = module.relations
    for i, r in enumerate(rel.basis):
        image = apply(s, r)
        if image not in rel:
            return ValidationReport(False, "RELATIONS_NOT_PRESERVED", i, image)
    sn = mat_pow(s, n)
    for j in range(k):
        col = tuple(sn[i][j] - (i == j) for i in range(k))
        if col not in rel:
            e = tuple(int(i == j) for i in range(k))
            return ValidationReport(False, "ORDER_VIOLATION", j, apply(sn, e))
    return ValidationReport(True)


@lru_cache(maxsize=4096)
def _checked(module: CyclicModule) -> CyclicModule:
    validate_module(module).raise_if_invalid()
    return module


def norm_matrix(module: CyclicModule) -> Matrix:
    """``1 + sigma + ... + sigma^(n-1)``."""
    return [list(r) for r in _norm_rows(module)]


@lru_cache(maxsize=4096)
def _norm_rows(module: CyclicModule) -> tuple[tuple[int, ...], ...]:
    _checked(module)
    s = module.matrix()
    total = identity(module.k)
    power = identity(module.k)
    for _ in range(module.n - 1):
        power = matmul(power, s)
        total = mat_add(total, power)
    return tuple(map(tuple, total))


def _one_minus_sigma(module: CyclicModule) -> Matrix:
    return mat_sub(identity(module.k), module.matrix())


def _span(module: CyclicModule, m: Matrix) -> Lattice:
    """``M(A)`` as a lattice containing the relations."""
    return Lattice.full(module.k).image(m) + module.relations


# sublattices of Z^k that contain the relations; named after what they present

def fixed_lattice(module: CyclicModule) -> Lattice:
    _checked(module)
    minus = mat_sub(module.matrix(), identity(module.k))
    return preimage_lattice(minus, module.relations, cols=module.k)


def anti_fixed_lattice(module: CyclicModule) -> Lattice:
    _checked(module)
    plus = mat_add(module.matrix(), identity(module.k))
    return preimage_lattice(plus, module.relations, cols=module.k)


def norm_image_lattice(module: CyclicModule) -> Lattice:
    return _span(module, norm_matrix(module))


def norm_kernel_lattice(module: CyclicModule) -> Lattice:
    return preimage_lattice(norm_matrix(module), module.relations, cols=module.k)


def augmentation_image_lattice(module: CyclicModule) -> Lattice:
    _checked(module)
    return _span(module, _one_minus_sigma(module))


def fixed_submodule(module: CyclicModule) -> PresentedGroup:
    return quotient_group(fixed_lattice(module), module.relations)


def tate_h0(module: CyclicModule) -> InvariantFactors:
    return invariant_factors(quotient_group(fixed_lattice(module),
                                            norm_image_lattice(module)))


def h1(module: CyclicModule) -> InvariantFactors:
    return invariant_factors(quotient_group(norm_kernel_lattice(module),
                                            augmentation_image_lattice(module)))


def tate_groups(module: CyclicModule) -> TateGroups:
    return TateGroups(tate_h0(module), h1(module))


def herbrand_quotient(module: CyclicModule) -> HerbrandReport:
    tate = tate_groups(module)
    return HerbrandReport(Fraction(tate.h0_order, tate.h1_order), tate)


def _rank_over(big: Lattice, rel: Lattice) -> int:
    return big.rank - rel.rank


def order2_profile(module: CyclicModule) -> Order2Profile:
    if module.n != 2:
        raise HerbrandError(f"group order is {module.n}, expected 2", "WRONG_GROUP_ORDER")
    rel = module.relations
    plus = fixed_lattice(module)
    minus = anti_fixed_lattice(module)
    norms = norm_image_lattice(module)
    r_plus = _rank_over(plus, rel)
    r_minus = _rank_over(minus, rel)
    r = module.k - rel.rank
    two_torsion = group_order(m_torsion(quotient_group(plus, rel), 2))
    index_sum = lattice_index(Lattice.full(module.k), plus + minus)
    index_norm = lattice_index(plus, norms)
    index_norm_double = lattice_index(norms, plus.scaled(2) + rel)
    predicted_h1 = Fraction(2) ** (r_minus - r_plus) * index_norm
    if predicted_h1.denominator != 1:
        raise ArithmeticError(f"non-integral H^1 prediction {predicted_h1}")
    return Order2Profile(
        r_plus=r_plus, r_minus=r_minus, r=r,
        two_torsion_plus=two_torsion, index_sum=index_sum,
        index_norm=index_norm, index_norm_double=index_norm_double,
        predicted_h1=int(predicted_h1),
        predicted_h=Fraction(2) ** (2 * r_plus - r),
    )


def remark_formula_h1(module: CyclicModule) -> RemarkIndices:
    rel = module.relations
    fixed = fixed_lattice(module)
    ker_norm = norm_kernel_lattice(module)
    norms = norm_image_lattice(module)
    aug = _one_minus_sigma(module)
    aug_of_ker = ker_norm.image(aug) + rel
    return RemarkIndices(
        numerator=lattice_index(ker_norm, aug_of_ker),
        denominator=lattice_index(norms, fixed.scaled(module.n) + rel),
        norm_over_fixed=lattice_index(norms, fixed.scaled(module.n) + rel),
        ambient_over_sum=lattice_index(Lattice.full(module.k), fixed + ker_norm),
        image_over_image=lattice_index(augmentation_image_lattice(module), aug_of_ker),
    )


# -- brute-force oracle ---------------------------------------------------------

def oracle_bound() -> int:
    return int(os.environ.get("HERBRAND_ORACLE_BOUND", DEFAULT_ORACLE_BOUND))


def brute_force_cohomology(module: CyclicModule,
                           bound: int | None = None) -> tuple[int, int]:
    """Orders of Ĥ^0 and H^1 by enumerating every element of a finite module.

    Elements are represented by their reduced coordinates modulo the Hermite
    basis of the relations; no lattice index or Smith form is involved.
    """
    validate_module(module).raise_if_invalid()
    bound = oracle_bound() if bound is None else bound
    k, rel = module.k, module.relations
    if rel.rank < k:
        raise OracleError("module is infinite", "MODULE_INFINITE")
    pivots = [row[i] for i, row in enumerate(rel.basis)]
    size = 1
    for p in pivots:
        size *= p
    if size > bound:
        raise OracleError(f"module has {size} elements, bound is {bound}")

    def reduce(v):
        v = list(v)
        for i, row in enumerate(rel.basis):
            q = v[i] // row[i]
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return tuple(v)

    s = module.matrix()
    elements = list(product(*(range(p) for p in pivots)))
    act = {a: reduce(apply(s, a)) for a in elements}
    zero = (0,) * k
    fixed, norms, ker, aug = set(), set(), set(), set()
    for a in elements:
        orbit_sum = [0] * k
        b = a
        for _ in range(module.n):
            orbit_sum = [x + y for x, y in zip(orbit_sum, b)]
            b = act[b]
        na = reduce(orbit_sum)
        norms.add(na)
        if na == zero:
            ker.add(a)
        if act[a] == a:
            fixed.add(a)
        aug.add(reduce([x - y for x, y in zip(a, act[a])]))
    return len(fixed) // len(norms), len(ker) // len(aug)


# -- random modules ---------------------------------------------------------------

def _cyclotomic(d: int) -> list[int]:
    """Coefficients (constant term first) of the d-th cyclotomic polynomial."""
    num = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            num = _poly_div(num, _cyclotomic(e))
    return num


def _poly_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1] // den[-1]
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _companion(poly: list[int]) -> Matrix:
    deg = len(poly) - 1
    m = [[0] * deg for _ in range(deg)]
    for i in range(1, deg):
        m[i][i - 1] = 1
    for i in range(deg):
        m[i][deg - 1] = -poly[i]
    return m


def _block_sum(blocks: list[tuple[Matrix, list[list[int]]]]) -> tuple[Matrix, list[list[int]]]:
    k = sum(len(s) for s, _ in blocks)
    sigma = [[0] * k for _ in range(k)]
    relations = []
    off = 0
    for s, rels in blocks:
        d = len(s)
        for i in range(d):
            sigma[off + i][off:off + d] = s[i]
        for r in rels:
            relations.append([0] * off + list(r) + [0] * (k - off - d))
        off += d
    return sigma, relations


def direct_sum(*modules: CyclicModule) -> CyclicModule:
    n = modules[0].n
    if any(m.n != n for m in modules):
        raise HerbrandError("summands have different group orders", "GROUP_ORDER_MISMATCH")
    sigma, rels = _block_sum([(m.matrix(), m.relations.matrix()) for m in modules])
    return CyclicModule.build(n, sigma, rels)


def change_basis(module: CyclicModule, p: Matrix, p_inv: Matrix) -> CyclicModule:
    """The same module in coordinates ``x' = P x``."""
    sigma = matmul(matmul(p, module.matrix()), p_inv)
    rels = [apply(p, r) for r in module.relations.basis]
    return CyclicModule.build(module.n, sigma, rels)


def _random_unimodular(rng: random.Random, k: int, steps: int) -> tuple[Matrix, Matrix]:
    p, p_inv = identity(k), identity(k)
    for _ in range(steps if k > 1 else 0):
        i, j = rng.sample(range(k), 2)
        f = rng.choice([-2, -1, 1, 2])
        # row op on P, matching inverse column op on P^-1
        p[i] = [x + f * y for x, y in zip(p[i], p[j])]
        for row in p_inv:
            row[j] -= f * row[i]
    return p, p_inv


def _units_of_order_dividing(m: int, n: int) -> list[int]:
    return [u for u in range(1, m) if _gcd(u, m) == 1 and pow(u, n, m) == 1] or [1]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _random_block(rng: random.Random, n: int, torsion_bound: int,
                  max_dim: int) -> tuple[Matrix, list[list[int]]]:
    divisors = [d for d in range(1, n + 1) if n % d == 0 and d <= max(max_dim, 1)]
    kind = rng.choice(["perm", "sign", "companion", "finite", "trivial"])
    if kind == "sign" and n % 2 == 0:
        return [[-1]], []
    if kind == "perm":
        d = rng.choice(divisors)
        return [[int(i == (j + 1) % d) for j in range(d)] for i in range(d)], []
    if kind == "companion":
        cyclo = [_cyclotomic(d) for d in range(1, n + 1)
                 if n % d == 0 and len(_cyclotomic(d)) - 1 <= max_dim]
        poly = [1]
        for f in cyclo:
            if rng.random() < 0.5 and len(poly) + len(f) - 2 <= max_dim:
                poly = _poly_mul(poly, f)
        if len(poly) == 1:
            poly = rng.choice(cyclo)
        return _companion(poly), []
    if kind == "finite" and torsion_bound >= 2:
        m = rng.randint(2, torsion_bound)
        return [[rng.choice(_units_of_order_dividing(m, n))]], [[m]]
    return [[1]], []


def _g_closure(module_sigma: Matrix, n: int, vectors: list[list[int]]) -> list[list[int]]:
    out = []
    for v in vectors:
        w = list(v)
        for _ in range(n):
            out.append(w)
            w = list(apply(module_sigma, w))
    return out


def random_cyclic_module(seed: int, n: int, rank_bound: int = 4, torsion_bound: int = 6,
                         finite: bool | None = None,
                         max_order: int | None = None) -> CyclicModule:
    """Deterministic pseudo-random module over the cyclic group of order ``n``.

    Blocks are permutation modules, sign characters, companion matrices of
    divisors of ``x^n - 1`` and finite cyclic pieces; the sum is then cut by
    the G-span of a few random vectors and disguised by a unimodular change
    of basis.  ``finite=True`` forces a finite module (with at most
    ``max_order`` elements when given).
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(f"{seed}:{n}:{rank_bound}:{torsion_bound}:{finite}:{max_order}")
    if finite is None:
        finite = rng.random() < 0.4
    blocks: list[tuple[Matrix, list[list[int]]]] = []
    dim = 0
    while not blocks or (rng.random() < 0.5 and dim < rank_bound):
        blocks.append(_random_block(rng, n, torsion_bound, max(rank_bound - dim, 1)))
        dim += len(blocks[-1][0])
    sigma, rels = _block_sum(blocks)
    k = len(sigma)
    extra = [[rng.randint(-torsion_bound, torsion_bound) for _ in range(k)]
             for _ in range(rng.choice([0, 0, 1, 2]))]
    if finite:
        m = rng.randint(2, max(2, torsion_bound))
        extra += [[m * int(i == j) for j in range(k)] for i in range(k)]
    rels = rels + _g_closure(sigma, n, extra)
    module = CyclicModule.build(n, sigma, rels)
    p, p_inv = _random_unimodular(rng, k, rng.randint(0, 2 * k))
    module = change_basis(module, p, p_inv)
    if max_order is None:
        return module
    # shrink by G-stable relations until small enough
    while group_order(module.base) > max_order:
        k = module.k
        if rng.random() < 0.5:
            j = rng.randrange(k)
            v = [int(i == j) for i in range(k)]
        else:
            v = [rng.randint(-2, 2) for _ in range(k)]
        rels = list(module.relations.basis) + _g_closure(module.matrix(), n, [v])
        module = CyclicModule.build(n, module.matrix(), rels)
    return module
