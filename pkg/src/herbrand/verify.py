"""Seeded verification sweeps, one per claim, shared by the CLI and the tests."""

from __future__ import annotations

import random
import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from sympy import primerange

from . import cohomology as co
from . import permutation as pm
from . import quadratic as qf
from .abelian import group_order
from .files import dump_gset, dump_module

ORACLE_MAX_ORDER = 2 ** 12


@dataclass
class VerificationReport:
    claim: str
    trials: int = 0
    failures: list[dict] = field(default_factory=list)
    elapsed: float = 0.0
    rows: list[dict] = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, key, rerun: str, detail: str) -> None:
        self.failures.append({"key": str(key), "input": rerun, "detail": detail})

    def sorted_failures(self) -> list[dict]:
        """Failures in natural key order, so "D=10" sorts after "D=2"."""
        def natural(f):
            return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", f["key"])]
        return sorted(self.failures, key=natural)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "claim": self.claim.upper(),
            "trials": self.trials,
            "failures": self.sorted_failures(),
            "passed": self.ok,
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out


def _ratio(x) -> float:
    return float(Fraction(x))


def verify_oracle(trials: int = 200, seed: int = 0, **_) -> VerificationReport:
    """Structural Tate group orders against the enumeration oracle."""
    rep = VerificationReport("oracle")
    rng = random.Random(seed)
    for i in range(trials):
        n = rng.randint(1, 6)
        module = co.random_cyclic_module(rng.randrange(2 ** 32), n, finite=True,
                                         max_order=ORACLE_MAX_ORDER)
        tate = co.tate_groups(module)
        brute = co.brute_force_cohomology(module)
        rep.trials += 1
        if (tate.h0_order, tate.h1_order) != brute:
            rep.fail(i, dump_module(module),
                     f"structural ({tate.h0_order}, {tate.h1_order}) != brute {brute}")
        rep.rows.append({"trial": i, "n": n, "order": group_order(module.base),
                         "h0": tate.h0_order, "h1": tate.h1_order,
                         "brute_h0": brute[0], "brute_h1": brute[1],
                         "expected": brute[1], "observed": tate.h1_order})
    return rep


def verify_prop2(trials: int = 200, seed: int = 0, **_) -> VerificationReport:
    """Order-two formulas for H^1 and the Herbrand quotient."""
    rep = VerificationReport("prop2")
    rng = random.Random(seed)
    for i in range(trials):
        module = co.random_cyclic_module(rng.randrange(2 ** 32), 2)
        profile = co.order2_profile(module)
        direct = co.herbrand_quotient(module)
        h1 = direct.tate.h1_order
        rep.trials += 1
        problems = []
        exprs = profile.h1_expressions()
        if any(e != h1 for e in exprs):
            problems.append(f"H^1 expressions {[str(e) for e in exprs]} vs {h1}")
        if profile.predicted_h != direct.quotient:
            problems.append(f"h predicted {profile.predicted_h} vs {direct.quotient}")
        if profile.r != profile.r_plus + profile.r_minus:
            problems.append("r != r+ + r-")
        if profile.r_plus == 0 and profile.two_torsion_plus == 1:
            if profile.index_sum != 1 or h1 != 2 ** profile.r:
                problems.append("degenerate case fails")
        if profile.r_minus == 0 and profile.two_torsion_plus == 2:
            if 2 % h1 or 2 % profile.index_sum:
                problems.append("#H^1 or (A : A+ + A-) does not divide 2")
        if problems:
            rep.fail(i, dump_module(module), "; ".join(problems))
        rep.rows.append({"trial": i, "r_plus": profile.r_plus, "r_minus": profile.r_minus,
                         "two_torsion_plus": profile.two_torsion_plus,
                         "index_sum": profile.index_sum, "index_norm": profile.index_norm,
                         "h1": h1, "herbrand": str(direct.quotient),
                         "expected": profile.predicted_h1, "observed": h1})
    return rep


def verify_remark(trials: int = 100, seed: int = 0, **_) -> VerificationReport:
    """Index formula for H^1 over cyclic groups of order 2..6."""
    rep = VerificationReport("remark")
    rng = random.Random(seed)
    for i in range(trials):
        n = rng.randint(2, 6)
        module = co.random_cyclic_module(rng.randrange(2 ** 32), n)
        r = co.remark_formula_h1(module)
        h1 = co.h1(module).order
        rep.trials += 1
        if r.value != h1 or not r.chain_holds:
            rep.fail(i, dump_module(module),
                     f"{r.numerator}/{r.denominator} vs #H^1 = {h1}; chain "
                     f"{r.norm_over_fixed}, {r.ambient_over_sum}, {r.image_over_image}")
        rep.rows.append({"trial": i, "n": n, "numerator": r.numerator,
                         "denominator": r.denominator, "h1": h1,
                         "expected": _ratio(r.value), "observed": h1})
    return rep


def _partitions(total: int, parts: list[int], largest: int | None = None):
    if total == 0:
        yield []
        return
    for p in parts:
        if p <= total and (largest is None or p <= largest):
            for rest in _partitions(total - p, parts, p):
                yield [p] + rest


def gset_from_orbit_sizes(n: int, sizes: list[int]) -> pm.GSet:
    image = []
    for size in sizes:
        start = len(image)
        image += [start + (j + 1) % size for j in range(size)]
    return pm.GSet.of(n, image)


def gset_classes(max_points: int, max_n: int):
    """One G-set per isomorphism class: a multiset of orbit sizes dividing n."""
    for n in range(1, max_n + 1):
        divisors = sorted((d for d in range(1, n + 1) if n % d == 0), reverse=True)
        for r in range(1, max_points + 1):
            for sizes in _partitions(r, divisors):
                yield gset_from_orbit_sizes(n, sizes)


def _check_gset(rep: VerificationReport, x: pm.GSet, rng: random.Random) -> None:
    rep.trials += 1
    decomp = pm.orbit_decomposition(x)
    module = pm.permutation_module(x)
    direct = co.herbrand_quotient(module)
    orbit_h = pm.orbit_herbrand_formula(x)
    problems = []
    if pm.burnside_orbit_count(x) != len(decomp.orbits):
        problems.append("Burnside count differs from orbit count")
    if any(s * len(o) != x.n for s, o in zip(decomp.stabilizer_orders, decomp.orbits)):
        problems.append("stabilizer * orbit size != n")
    if direct.quotient != orbit_h:
        problems.append(f"h = {direct.quotient} but orbit product = {orbit_h}")
    try:
        formula_h1 = pm.prop21_h1_formula(x)
    except ArithmeticError as exc:
        formula_h1 = None
        problems.append(str(exc))
    if formula_h1 != direct.tate.h1_order:
        problems.append(f"#H^1 = {direct.tate.h1_order} but formula gives {formula_h1}")
    t = co.random_cyclic_module(rng.randrange(2 ** 32), x.n, rank_bound=2,
                                torsion_bound=4, finite=True, max_order=64)
    perturbed = pm.finite_index_perturbation(x, t, rng.randrange(2 ** 32))
    perturbed_h = co.herbrand_quotient(perturbed).quotient
    if perturbed_h != orbit_h:
        problems.append(f"finite perturbation by {dump_module(t)} changed h to {perturbed_h}")
    if problems:
        rep.fail(dump_gset(x), dump_gset(x), "; ".join(problems))
    rep.rows.append({"gset": dump_gset(x), "n": x.n, "points": x.points,
                     "orbits": len(decomp.orbits), "h1": direct.tate.h1_order,
                     "perturbed_h": str(perturbed_h),
                     "expected": orbit_h, "observed": _ratio(direct.quotient)})


def verify_prop21(trials: int = 100, seed: int = 0, max_points: int = 8, max_n: int = 12,
                  **_) -> VerificationReport:
    """Orbit-stabilizer formulas on every G-set class up to the bounds, then random ones."""
    rep = VerificationReport("prop21")
    rng = random.Random(seed)
    for x in gset_classes(max_points, max_n):
        _check_gset(rep, x, rng)
    for _ in range(trials):
        n = rng.randint(2, 2 * max_n)
        x = pm.random_gset(rng, n, rng.randint(max_points + 1, max_points + 6))
        _check_gset(rep, x, rng)
    return rep


def verify_prop33(max_d: int = 2000, **_) -> VerificationReport:
    """Norm -1 fundamental unit, #H^1 = 2 and negative Pell solvability coincide."""
    rep = VerificationReport("prop33")
    for D in qf.squarefree_range(2, max_d):
        K = qf.field_data(D)
        unit = qf.fundamental_unit(K)
        h1 = qf.unit_group_h1(K)
        variant = qf.PellVariant.MINUS_FOUR if D % 4 == 1 else qf.PellVariant.MINUS_ONE
        sol = qf.pell_solve(D, variant)
        module = qf.unit_module(K)
        direct = co.herbrand_quotient(module)
        rep.trials += 1
        statements = (unit.unit_norm == -1, h1 == 2, sol is not None)
        problems = []
        if len(set(statements)) != 1:
            problems.append(f"norm -1 / #H^1 = 2 / Pell solvable = {statements}")
        if h1 not in (2, 4):
            problems.append(f"#H^1 = {h1}")
        if sol is not None and qf.pell_form(D, variant, *sol) != (-4 if D % 4 == 1 else -1):
            problems.append(f"Pell solution {sol} fails substitution")
        if direct.tate.h1_order != h1 or direct.quotient != Fraction(1, 2):
            problems.append(f"unit module gives #H^1 = {direct.tate.h1_order}, h = {direct.quotient}")
        if qf.cor31_h1(K) != h1:
            problems.append(f"S-unit formula gives {qf.cor31_h1(K)}")
        if problems:
            rep.fail(D, f"quad h1 {D}", "; ".join(problems))
        rep.rows.append({"D": D, "unit_norm": unit.unit_norm,
                         "period": qf.cf_expand(D).period_length,
                         "h1": h1, "pell": "none" if sol is None else f"{sol[0]} {sol[1]}",
                         "expected": h1, "observed": direct.tate.h1_order})
    return rep


def verify_thm32(trials: int = 50, seed: int = 0, max_d: int = 2000, sets: int = 20,
                 **_) -> VerificationReport:
    """Herbrand quotient of S-units: decomposition groups against place counts."""
    rep = VerificationReport("thm32")
    rng = random.Random(seed)
    fields = sorted(rng.sample(qf.squarefree_range(2, max_d), trials))
    primes = list(primerange(2, 200))
    for D in fields:
        K = qf.field_data(D)
        for _ in range(sets):
            chosen = sorted(rng.sample(primes, rng.randint(0, 6)))
            places = [qf.INFINITE_PLACE] + chosen
            rerun = f"quad sunit {D} " + " ".join(map(str, places))
            rep.trials += 1
            try:
                r = qf.sunit_herbrand(K, places)
            except ArithmeticError as exc:
                rep.fail(rerun, rerun, str(exc))
                continue
            c = r.counts
            if (r.s_k_size != c["ramified"] + c["inert"] + 2 * c["split"]
                    or r.s_f_size != sum(c.values())):
                rep.fail(rerun, rerun, f"place counts {c} inconsistent")
            rep.rows.append({"D": D, "places": " ".join(map(str, places)),
                             "s_f": r.s_f_size, "s_k": r.s_k_size, "nv_product": r.nv_product,
                             "expected": _ratio(r.herbrand_global),
                             "observed": _ratio(r.herbrand)})
    return rep


def verify_ex23(max_d: int = 500, **_) -> VerificationReport:
    """Cohomology of the ring of integers against the trace index."""
    rep = VerificationReport("ex23")
    for D in qf.squarefree_range(2, max_d):
        K = qf.field_data(D)
        direct = co.herbrand_quotient(qf.ok_module(K))
        h1 = direct.tate.h1_order
        trace = qf.trace_index(K)
        rep.trials += 1
        expected = trace if K.disc % 2 else 2
        if h1 != expected or direct.quotient != 1 or (K.disc % 2 and trace != 1):
            rep.fail(D, f"quad trace {D}",
                     f"#H^1 = {h1}, h = {direct.quotient}, trace index = {trace}")
        rep.rows.append({"D": D, "disc_odd": K.disc % 2, "trace_index": trace, "h1": h1,
                         "expected": expected, "observed": h1})
    return rep


CLAIMS: dict[str, Callable[..., VerificationReport]] = {
    "oracle": verify_oracle,
    "prop2": verify_prop2,
    "prop21": verify_prop21,
    "remark": verify_remark,
    "prop33": verify_prop33,
    "thm32": verify_thm32,
    "ex23": verify_ex23,
}


def run_claim(name: str, **options) -> VerificationReport:
    options = {k: v for k, v in options.items() if v is not None}
    start = time.perf_counter()
    rep = CLAIMS[name](**options)
    rep.elapsed = time.perf_counter() - start
    return rep
