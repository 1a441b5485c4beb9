"""Cyclic G-sets, their orbits, and the permutation modules built on them."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .abelian import lattice_index
from .cohomology import (
    CyclicModule,
    _random_unimodular,
    change_basis,
    direct_sum,
    fixed_lattice,
    norm_image_lattice,
)
from .errors import HerbrandError


@dataclass(frozen=True)
class GSet:
    """Points ``0..r-1`` with the generator acting by ``point -> image[point]``."""

    n: int
    image: tuple[int, ...]

    @classmethod
    def of(cls, n: int, image: Sequence[int]) -> "GSet":
        return cls(n, tuple(int(x) for x in image))

    @property
    def points(self) -> int:
        return len(self.image)


@dataclass(frozen=True)
class OrbitDecomposition:
    orbits: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    stabilizer_orders: tuple[int, ...]


def check_gset(x: GSet) -> None:
    r = x.points
    if x.n < 1 or sorted(x.image) != list(range(r)):
        raise HerbrandError(f"{list(x.image)} is not a permutation of 0..{r - 1}",
                            "INVALID_PERMUTATION")
    for p in range(r):
        q = p
        for _ in range(x.n):
            q = x.image[q]
        if q != p:
            raise HerbrandError(f"point {p} is not fixed by the n-th power", "ORDER_MISMATCH")


def orbit_decomposition(x: GSet) -> OrbitDecomposition:
    check_gset(x)
    seen = [False] * x.points
    orbits = []
    for start in range(x.points):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        q = x.image[start]
        while q != start:
            orbit.append(q)
            seen[q] = True
            q = x.image[q]
        orbits.append(tuple(sorted(orbit)))
    # orbits are discovered in order of their smallest point
    return OrbitDecomposition(
        orbits=tuple(orbits),
        representatives=tuple(o[0] for o in orbits),
        stabilizer_orders=tuple(x.n // len(o) for o in orbits),
    )


def burnside_orbit_count(x: GSet) -> int:
    """Average number of fixed points over the group elements."""
    check_gset(x)
    total = 0
    power = list(range(x.points))
    for _ in range(x.n):
        total += sum(1 for p, q in enumerate(power) if p == q)
        power = [x.image[q] for q in power]
    count, rem = divmod(total, x.n)
    if rem:
        raise ArithmeticError("fixed-point total is not divisible by the group order")
    return count


def permutation_module(x: GSet) -> CyclicModule:
    check_gset(x)
    r = x.points
    sigma = [[int(x.image[j] == i) for j in range(r)] for i in range(r)]
    return CyclicModule.build(x.n, sigma)


def orbit_herbrand_formula(x: GSet) -> int:
    return math.prod(orbit_decomposition(x).stabilizer_orders)


def prop21_h1_formula(x: GSet) -> int:
    """``(A^G : N_G A)`` divided by the product of stabilizer orders."""
    module = permutation_module(x)
    index = lattice_index(fixed_lattice(module), norm_image_lattice(module))
    q = Fraction(index, orbit_herbrand_formula(x))
    if q.denominator != 1:
        raise ArithmeticError(f"(A^G : NA) = {index} is not divisible by the orbit product")
    return int(q)


def finite_index_perturbation(x: GSet, t: CyclicModule, seed: int = 0) -> CyclicModule:
    """``permutation_module(x) + t`` written in randomly mixed coordinates."""
    if t.n != x.n:
        raise HerbrandError(f"G-set has n={x.n} but the finite module has n={t.n}",
                            "GROUP_ORDER_MISMATCH")
    if t.relations.rank < t.k:
        raise HerbrandError("perturbing module must be finite", "MODULE_INFINITE")
    module = direct_sum(permutation_module(x), t) if t.k else permutation_module(x)
    rng = random.Random(seed)
    p, p_inv = _random_unimodular(rng, module.k, 2 * module.k)
    return change_basis(module, p, p_inv)


def random_gset(rng: random.Random, n: int, points: int) -> GSet:
    """Random G-set on ``points`` points whose orbit sizes divide ``n``."""
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    order = list(range(points))
    rng.shuffle(order)
    image = [0] * points
    i = 0
    while i < points:
        d = rng.choice([d for d in divisors if d <= points - i])
        cycle = order[i:i + d]
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            image[a] = b
        i += d
    return GSet.of(n, image)


def all_gsets(n: int, points: int):
    """Every permutation of ``points`` points whose order divides ``n``."""
    from itertools import permutations

    for perm in permutations(range(points)):
        x = GSet(n, perm)
        try:
            check_gset(x)
        except HerbrandError:
            continue
        yield x
