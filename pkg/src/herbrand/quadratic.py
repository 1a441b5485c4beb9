"""Real quadratic fields Q(sqrt D): units, Pell equations, splitting, S-units.

Integers of the field are written on the basis ``{1, omega}`` with
``omega = sqrt(D)`` when ``D = 2, 3 (mod 4)`` and ``omega = (-1 + sqrt(D))/2``
when ``D = 1 (mod 4)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Iterator

from sympy import isprime

from .cohomology import CyclicModule
from .errors import HerbrandError

INFINITE_PLACE = "inf"


class Omega(enum.Enum):
    WHOLE = "sqrt(D)"
    HALF = "(-1+sqrt(D))/2"


class PellVariant(enum.Enum):
    MINUS_ONE = "minus-one"
    PLUS_ONE = "plus-one"
    MINUS_FOUR = "minus-four"


class SplittingType(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


def is_squarefree(d: int) -> bool:
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        if d % p == 0:
            d //= p
        p += 1
    return True


@dataclass(frozen=True)
class QuadraticFieldData:
    D: int
    disc: int
    omega: Omega

    @property
    def trace_omega(self) -> int:
        return 0 if self.omega is Omega.WHOLE else -1

    @property
    def norm_omega(self) -> int:
        return -self.D if self.omega is Omega.WHOLE else (1 - self.D) // 4


def field_data(D: int) -> QuadraticFieldData:
    if D <= 1:
        raise HerbrandError(f"D={D} must exceed 1", "D_TOO_SMALL")
    if not is_squarefree(D):
        raise HerbrandError(f"D={D} is not squarefree", "NOT_SQUAREFREE")
    if D % 4 == 1:
        return QuadraticFieldData(D, D, Omega.HALF)
    return QuadraticFieldData(D, 4 * D, Omega.WHOLE)


@dataclass(frozen=True)
class QuadraticInteger:
    """``a + b*omega`` in the ring of integers of ``field``."""

    a: int
    b: int
    field: QuadraticFieldData = field(repr=False)

    def norm(self) -> int:
        f = self.field
        return self.a * self.a + self.a * self.b * f.trace_omega + self.b * self.b * f.norm_omega

    def trace(self) -> int:
        return 2 * self.a + self.b * self.field.trace_omega

    def __mul__(self, other: "QuadraticInteger") -> "QuadraticInteger":
        # omega^2 = Tr(omega) * omega - N(omega)
        f = self.field
        bb = self.b * other.b
        return QuadraticInteger(self.a * other.a - bb * f.norm_omega,
                                self.a * other.b + self.b * other.a + bb * f.trace_omega, f)

    def conjugate(self) -> "QuadraticInteger":
        # sigma(omega) = Tr(omega) - omega
        return QuadraticInteger(self.a + self.b * self.field.trace_omega, -self.b, self.field)

    def halves(self) -> tuple[int, int]:
        """``(X, Y)`` with ``self == (X + Y*sqrt(D)) / 2``."""
        if self.field.omega is Omega.WHOLE:
            return 2 * self.a, 2 * self.b
        return 2 * self.a - self.b, self.b

    def sign(self) -> int:
        """Sign of the real number under the embedding sqrt(D) > 0."""
        x, y = self.halves()
        return _sign_of(x, y, self.field.D)

    def exceeds(self, other: "QuadraticInteger") -> bool:
        x1, y1 = self.halves()
        x2, y2 = other.halves()
        return _sign_of(x1 - x2, y1 - y2, self.field.D) > 0

    def __float__(self) -> float:
        x, y = self.halves()
        return (x + y * math.sqrt(self.field.D)) / 2

    def __str__(self) -> str:
        x, y = self.halves()
        den = 2
        if x % 2 == 0 and y % 2 == 0:
            x, y, den = x // 2, y // 2, 1
        root = f"sqrt({self.field.D})"
        if y in (1, -1):
            tail = root
        else:
            tail = f"{abs(y)}*{root}"
        body = f"{x}{'-' if y < 0 else '+'}{tail}" if y else f"{x}"
        return f"({body})/2" if den == 2 else body


def _sign_of(x: int, y: int, d: int) -> int:
    """Sign of ``x + y*sqrt(d)`` computed exactly."""
    if x >= 0 and y >= 0:
        return int(x > 0 or y > 0)
    if x <= 0 and y <= 0:
        return -1
    lhs, rhs = x * x, d * y * y
    if lhs == rhs:
        return 0
    return (1 if x > 0 else -1) if lhs > rhs else (1 if y > 0 else -1)


# -- continued fractions ----------------------------------------------------------

@dataclass(frozen=True)
class CFExpansion:
    a0: int
    periodic_part: tuple[int, ...]

    @property
    def period_length(self) -> int:
        return len(self.periodic_part)


def _cf_states(D: int, P: int, Q: int) -> Iterator[tuple[int, int, int]]:
    """Partial quotients of ``(P + sqrt D)/Q`` with their ``(P, Q)`` states.

    Requires ``Q > 0`` and ``Q | D - P^2``; both are preserved at every step.
    """
    s = isqrt(D)
    while True:
        if (D - P * P) % Q:
            raise ArithmeticError(f"state invariant broken at P={P}, Q={Q}")
        a = (P + s) // Q
        yield a, P, Q
        P = a * Q - P
        Q = (D - P * P) // Q


def cf_expand(D: int) -> CFExpansion:
    """Continued fraction of sqrt(D); the period is found by state repetition."""
    if D <= 1 or isqrt(D) ** 2 == D:
        raise HerbrandError(f"sqrt({D}) is rational or D is too small", "D_TOO_SMALL")
    seen: dict[tuple[int, int], int] = {}
    terms = []
    for i, (a, P, Q) in enumerate(_cf_states(D, 0, 1)):
        if (P, Q) in seen:
            start = seen[P, Q]
            return CFExpansion(terms[0], tuple(terms[start:]))
        seen[P, Q] = i
        terms.append(a)


def _convergents(D: int, P: int, Q: int) -> Iterator[tuple[int, int]]:
    p0, q0, p1, q1 = 1, 0, 0, 1
    for a, _, _ in _cf_states(D, P, Q):
        p0, p1 = a * p0 + p1, p0
        q0, q1 = a * q0 + q1, q0
        yield p0, q0


def _cf_cycle_bound(D: int, P: int, Q: int) -> int:
    """Number of terms covering the preperiod and two periods."""
    seen: dict[tuple[int, int], int] = {}
    for i, (_, P_, Q_) in enumerate(_cf_states(D, P, Q)):
        if (P_, Q_) in seen:
            return i + (i - seen[P_, Q_]) + 1
        seen[P_, Q_] = i


# -- units ------------------------------------------------------------------------

@dataclass(frozen=True)
class FundamentalUnitData:
    epsilon: QuadraticInteger
    unit_norm: int


def fundamental_unit(K: QuadraticFieldData) -> FundamentalUnitData:
    """Smallest unit above 1, read from the convergents of sqrt(D) or (1+sqrt D)/2.

    A convergent ``p/q`` of ``theta`` gives the candidate ``p - q*theta'``,
    which is ``p + q*omega`` in both cases.
    """
    P, Q = (0, 1) if K.omega is Omega.WHOLE else (1, 2)
    for p, q in _convergents(K.D, P, Q):
        eps = QuadraticInteger(p, q, K)
        n = eps.norm()
        if n in (1, -1):
            return FundamentalUnitData(eps, n)


def pell_form(D: int, variant: PellVariant, x: int, y: int) -> int:
    """Left-hand side of the chosen Pell equation."""
    if variant is PellVariant.MINUS_FOUR:
        return (2 * x - y) ** 2 - y * y * D
    return x * x - y * y * D


def _pell_target(variant: PellVariant) -> int:
    return {PellVariant.MINUS_ONE: -1, PellVariant.PLUS_ONE: 1, PellVariant.MINUS_FOUR: -4}[variant]


def pell_solve(D: int, variant: PellVariant) -> tuple[int, int] | None:
    """Minimal positive solution of the Pell equation, or None.

    ``MINUS_ONE``/``PLUS_ONE`` solve ``x^2 - D y^2 = -1/+1``; ``MINUS_FOUR``
    solves ``(2x - y)^2 - D y^2 = -4`` for ``D = 1 (mod 4)``.  Every solution
    is a convergent, and the first convergent of either sign corresponds to
    the generating unit, so a solution of the wrong sign first means none
    of the requested sign exists.
    """
    field_data(D)
    target = _pell_target(variant)
    if variant is PellVariant.MINUS_FOUR:
        if D % 4 != 1:
            raise HerbrandError(f"D={D} is not 1 mod 4", "VARIANT_UNAVAILABLE")
        P, Q = 1, 2
    else:
        P, Q = 0, 1
    bound = _cf_cycle_bound(D, P, Q)
    for i, (x, y) in enumerate(_convergents(D, P, Q)):
        if i > bound:
            break
        value = pell_form(D, variant, x, y)
        if value == target:
            return x, y
        if value == -target and variant is not PellVariant.PLUS_ONE:
            return None
    return None


def unit_group_h1(K: QuadraticFieldData) -> int:
    """``2 * (W_Q : N U_K)`` where ``N U_K`` is ``{+-1}`` or ``{1}``."""
    norms = {1, -1} if fundamental_unit(K).unit_norm == -1 else {1}
    return 2 * (2 // len(norms))


def unit_module(K: QuadraticFieldData) -> CyclicModule:
    """``U_K = <-1> x <eps>`` written additively on generators (-1, eps)."""
    if fundamental_unit(K).unit_norm == -1:
        # sigma(eps) = -1/eps
        sigma = [[1, 1], [0, -1]]
    else:
        sigma = [[1, 0], [0, -1]]
    return CyclicModule.build(2, sigma, [[2, 0]])


def ok_module(K: QuadraticFieldData) -> CyclicModule:
    """The ring of integers on ``{1, omega}`` with the Galois action."""
    if K.omega is Omega.WHOLE:
        return CyclicModule.build(2, [[1, 0], [0, -1]])
    # sigma(omega) = -1 - omega
    return CyclicModule.build(2, [[1, -1], [0, -1]])


def trace_index(K: QuadraticFieldData) -> int:
    """``(Z : Tr O_K)``; the trace image is generated by Tr(1) and Tr(omega)."""
    return math.gcd(QuadraticInteger(1, 0, K).trace(), QuadraticInteger(0, 1, K).trace())


# -- places ---------------------------------------------------------------------

def kronecker(a: int, p: int) -> int:
    """Kronecker symbol ``(a/p)`` for a prime ``p``."""
    if p == 2:
        if a % 2 == 0:
            return 0
        return 1 if a % 8 in (1, 7) else -1
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _check_place(p) -> None:
    if p != INFINITE_PLACE and not (isinstance(p, int) and p > 1 and isprime(p)):
        raise HerbrandError(f"{p} is not a prime or the infinite place", "NOT_PRIME")


def splitting_type(K: QuadraticFieldData, p) -> SplittingType:
    _check_place(p)
    if p == INFINITE_PLACE:
        return SplittingType.SPLIT
    if K.disc % p == 0:
        return SplittingType.RAMIFIED
    if p == 2:
        return SplittingType.SPLIT if K.disc % 8 == 1 else SplittingType.INERT
    return SplittingType.SPLIT if kronecker(K.disc, p) == 1 else SplittingType.INERT


def primes_above(K: QuadraticFieldData, p) -> int:
    """Number of places of K over ``p``, counted from roots of omega's minimal polynomial."""
    _check_place(p)
    if p == INFINITE_PLACE:
        return 2  # D > 0: both embeddings are real
    t, n = K.trace_omega, K.norm_omega
    roots = [x for x in range(p) if (x * x - t * x + n) % p == 0]
    return 2 if len(roots) == 2 else 1


@dataclass(frozen=True)
class SUnitReport:
    D: int
    places: tuple
    types: tuple[SplittingType, ...]
    s_f_size: int
    s_k_size: int
    nv_product: int
    herbrand: Fraction
    herbrand_global: Fraction

    @property
    def counts(self) -> dict[str, int]:
        return {t.value: sum(1 for u in self.types if u is t) for t in SplittingType}


def _normalize_places(places: Iterable) -> tuple:
    out = []
    for p in places:
        if isinstance(p, str) and p.lower() in ("inf", "infinity", "oo", "∞"):
            p = INFINITE_PLACE
        if p not in out:
            out.append(p)
    return tuple(sorted(out, key=lambda v: (v != INFINITE_PLACE, v if v != INFINITE_PLACE else 0)))


def sunit_herbrand(K: QuadraticFieldData, places: Iterable) -> SUnitReport:
    """Herbrand quotient of the S-units, by decomposition groups and by place counts."""
    places = _normalize_places(places)
    if INFINITE_PLACE not in places:
        raise HerbrandError("S must contain the infinite place", "MISSING_INFINITE_PLACE")
    for p in places:
        _check_place(p)
    types = tuple(splitting_type(K, p) for p in places)
    nv = math.prod(1 if t is SplittingType.SPLIT else 2 for t in types)
    s_f = len(places)
    s_k = sum(primes_above(K, p) for p in places)
    local = Fraction(nv, 2)
    counted = Fraction(2) ** (2 * s_f - s_k - 1)
    if local != counted:
        raise ArithmeticError(f"D={K.D}, S={places}: {local} != {counted}")
    return SUnitReport(K.D, places, types, s_f, s_k, nv, local, counted)


def cor31_h1(K: QuadraticFieldData) -> int:
    """``2^(#S_K - 2#S_F + 1) * (U_Q : N U_K)`` for S the infinite place."""
    s_f = 1
    s_k = primes_above(K, INFINITE_PLACE)
    eps = fundamental_unit(K).epsilon
    # U_Q = {+-1}; N(-1) = 1, so N U_K is generated by N(eps)
    index = 2 if eps.norm() == 1 else 1
    value = Fraction(2) ** (s_k - 2 * s_f + 1) * index
    return int(value)


def squarefree_range(lo: int, hi: int) -> list[int]:
    return [d for d in range(max(lo, 2), hi + 1) if is_squarefree(d)]
