"""Tate cohomology of cyclic-group modules, checked against element enumeration."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from herbrand import cohomology as co
from herbrand.abelian import group_order
from herbrand.cohomology import CyclicModule
from herbrand.errors import HerbrandError, ModuleValidationError, OracleError

NEG = CyclicModule.build(2, [[-1]])                      # Z, sigma = -1
SWAP = CyclicModule.build(2, [[0, 1], [1, 0]])           # Z[C2]
Z4_NEG = CyclicModule.build(2, [[-1]], [[4]])            # Z/4, sigma = -1
CYCLE3 = CyclicModule.build(3, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])


def trivial(n):
    return CyclicModule.build(n, [[1]])


def finite_module(seed, n=None):
    n = n if n is not None else 1 + seed % 6
    return co.random_cyclic_module(seed, n, finite=True, max_order=2 ** 12)


# -- validation ----------------------------------------------------------------

def test_validate_examples():
    assert co.validate_module(NEG).valid
    bad = co.validate_module(CyclicModule.build(2, [[2]]))
    assert (bad.valid, bad.code, bad.generator, bad.witness) == (False, "ORDER_VIOLATION", 0, (4,))
    swap_z2 = co.validate_module(CyclicModule.build(2, [[0, 1], [1, 0]], [[2, 0]]))
    assert swap_z2.code == "RELATIONS_NOT_PRESERVED"
    assert swap_z2.witness == (0, 2)


def test_public_operations_reject_invalid_modules():
    bad = CyclicModule.build(2, [[2]])
    for fn in (co.tate_h0, co.h1, co.herbrand_quotient, co.remark_formula_h1,
               co.brute_force_cohomology, co.norm_matrix):
        with pytest.raises(ModuleValidationError) as exc:
            fn(bad)
        assert exc.value.code == "ORDER_VIOLATION"


# -- worked examples -------------------------------------------------------------

@pytest.mark.parametrize("module, expected", [
    (CyclicModule.build(2, [[-1, 0], [0, -1]]), [[0, 0], [0, 0]]),
    (CYCLE3, [[1, 1, 1]] * 3),
    (CyclicModule.build(1, [[1, 0], [0, 1]]), [[1, 0], [0, 1]]),
])
def test_norm_matrix_examples(module, expected):
    assert co.norm_matrix(module) == expected


@pytest.mark.parametrize("module, order", [(SWAP, float("inf")), (NEG, 1), (Z4_NEG, 2)])
def test_fixed_submodule_examples(module, order):
    assert group_order(co.fixed_submodule(module)) == order


def test_fixed_submodule_of_swap_is_diagonal():
    assert co.fixed_lattice(SWAP).basis == ((1, 1),)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 6])
def test_trivial_action_h0_is_cyclic_of_order_n(n):
    h0 = co.tate_h0(trivial(n))
    assert h0.order == n
    assert h0.torsion_divisors == ((n,) if n > 1 else ())
    assert co.herbrand_quotient(trivial(n)).quotient == n


@pytest.mark.parametrize("module, h0, h1", [
    (NEG, 1, 2), (SWAP, 1, 1), (Z4_NEG, 2, 2), (CYCLE3, 1, 1),
])
def test_tate_orders_examples(module, h0, h1):
    assert co.tate_h0(module).order == h0
    assert co.h1(module).order == h1


def test_herbrand_examples():
    assert co.herbrand_quotient(NEG).quotient == Fraction(1, 2)
    assert co.herbrand_quotient(Z4_NEG).quotient == 1
    assert isinstance(co.herbrand_quotient(NEG).quotient, Fraction)


@pytest.mark.parametrize("module, expected", [
    (Z4_NEG, (2, 2)),
    (CyclicModule.build(4, [[2]], [[5]]), (1, 1)),
    (CyclicModule.build(2, [[1]], [[2]]), (2, 2)),
])
def test_brute_force_examples(module, expected):
    assert co.brute_force_cohomology(module) == expected


def test_brute_force_errors():
    with pytest.raises(OracleError) as exc:
        co.brute_force_cohomology(NEG)
    assert exc.value.code == "MODULE_INFINITE"
    big = CyclicModule.build(2, [[1, 0], [0, 1]], [[300, 0], [0, 300]])
    with pytest.raises(OracleError) as exc:
        co.brute_force_cohomology(big)
    assert exc.value.code == "BOUND_EXCEEDED"
    assert co.brute_force_cohomology(big, bound=10 ** 5) == (4, 4)


def test_oracle_bound_env(monkeypatch):
    monkeypatch.setenv("HERBRAND_ORACLE_BOUND", "3")
    assert co.oracle_bound() == 3
    with pytest.raises(OracleError):
        co.brute_force_cohomology(Z4_NEG)
    monkeypatch.delenv("HERBRAND_ORACLE_BOUND")
    assert co.oracle_bound() == 2 ** 16


# -- oracle equivalence and general properties ----------------------------------------

@pytest.mark.parametrize("seed", range(60))
def test_structural_matches_brute_force(seed):
    module = finite_module(seed)
    assert group_order(module.base) <= 2 ** 12
    tate = co.tate_groups(module)
    assert (tate.h0_order, tate.h1_order) == co.brute_force_cohomology(module)


@given(st.integers(0, 10 ** 6), st.integers(1, 6))
def test_finite_modules_have_trivial_herbrand_quotient(seed, n):
    module = finite_module(seed, n)
    assert co.herbrand_quotient(module).quotient == 1


@given(st.integers(0, 10 ** 6), st.integers(1, 6))
def test_group_order_kills_cohomology(seed, n):
    module = co.random_cyclic_module(seed, n)
    tate = co.tate_groups(module)
    for d in tate.h0.torsion_divisors + tate.h1.torsion_divisors:
        assert n % d == 0
    assert tate.h0.free_rank == tate.h1.free_rank == 0


@given(st.integers(0, 10 ** 6))
def test_trivial_group_has_trivial_cohomology(seed):
    module = co.random_cyclic_module(seed, 1)
    tate = co.tate_groups(module)
    assert tate.h0_order == tate.h1_order == 1


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6), st.integers(1, 6))
def test_herbrand_multiplicative_on_direct_sums(s1, s2, n):
    a = co.random_cyclic_module(s1, n, rank_bound=3)
    b = co.random_cyclic_module(s2, n, rank_bound=3)
    total = co.herbrand_quotient(co.direct_sum(a, b)).quotient
    assert total == co.herbrand_quotient(a).quotient * co.herbrand_quotient(b).quotient


def test_direct_sum_rejects_mixed_orders():
    with pytest.raises(HerbrandError) as exc:
        co.direct_sum(NEG, CYCLE3)
    assert exc.value.code == "GROUP_ORDER_MISMATCH"


@given(st.integers(0, 10 ** 6), st.integers(1, 8))
def test_generator_is_valid_and_deterministic(seed, n):
    a = co.random_cyclic_module(seed, n)
    assert co.validate_module(a).valid
    assert co.random_cyclic_module(seed, n) == a


def test_generator_covers_finite_and_infinite():
    kinds = {co.random_cyclic_module(seed, 2).relations.rank == co.random_cyclic_module(seed, 2).k
             for seed in range(100)}
    assert kinds == {True, False}


# -- order-2 closed forms ------------------------------------------------------------------

def test_order2_profile_examples():
    p = co.order2_profile(NEG)
    assert (p.r_plus, p.r_minus, p.predicted_h1, p.predicted_h) == (0, 1, 2, Fraction(1, 2))
    p = co.order2_profile(CyclicModule.build(2, [[1, 0], [0, -1]]))
    assert (p.r_plus, p.r_minus, p.predicted_h, p.predicted_h1) == (1, 1, 1, 2)
    assert p.index_norm == 2
    p = co.order2_profile(SWAP)
    assert (p.r_plus, p.r_minus, p.index_norm, p.predicted_h1) == (1, 1, 1, 1)


def test_order2_profile_rejects_other_orders():
    with pytest.raises(HerbrandError) as exc:
        co.order2_profile(CYCLE3)
    assert exc.value.code == "WRONG_GROUP_ORDER"


@pytest.mark.parametrize("seed", range(80))
def test_order2_expressions_agree_with_direct_computation(seed):
    module = co.random_cyclic_module(seed, 2)
    p = co.order2_profile(module)
    rep = co.herbrand_quotient(module)
    assert set(p.h1_expressions()) == {rep.tate.h1_order}
    assert p.predicted_h1 == rep.tate.h1_order
    assert p.predicted_h == rep.quotient
    assert p.r == p.r_plus + p.r_minus
    if p.r_plus == 0 and p.two_torsion_plus == 1:
        assert p.index_sum == 1
        assert rep.tate.h1_order == 2 ** p.r
    if p.r_minus == 0 and p.two_torsion_plus == 2:
        assert 2 % rep.tate.h1_order == 0
        assert 2 % p.index_sum == 0


def test_order2_degenerate_case_is_exercised():
    hits = [s for s in range(200)
            if (lambda p: p.r_plus == 0 and p.two_torsion_plus == 1)(
                co.order2_profile(co.random_cyclic_module(s, 2)))]
    assert hits


def test_order2_on_finite_modules_matches_oracle():
    for seed in range(30):
        module = finite_module(seed, 2)
        p = co.order2_profile(module)
        assert p.predicted_h1 == co.brute_force_cohomology(module)[1]


# -- general-n index formula ----------------------------------------------------------------

def test_index_formula_examples():
    r = co.remark_formula_h1(trivial(3))
    assert (r.numerator, r.denominator, r.value) == (1, 1, 1)
    assert co.remark_formula_h1(CYCLE3).value == 1
    r = co.remark_formula_h1(NEG)
    assert (r.numerator, r.denominator) == (2, 1)
    assert r.chain_holds


@pytest.mark.parametrize("seed", range(60))
def test_index_formula_matches_h1(seed):
    n = 2 + seed % 5
    module = co.random_cyclic_module(seed, n)
    r = co.remark_formula_h1(module)
    assert r.value == co.h1(module).order
    assert r.chain_holds


def test_index_formula_on_finite_modules_matches_oracle():
    for seed in range(30):
        module = finite_module(seed, 2 + seed % 5)
        assert co.remark_formula_h1(module).value == co.brute_force_cohomology(module)[1]


def test_change_of_basis_preserves_cohomology():
    import random
    rng = random.Random(5)
    for seed in range(20):
        module = co.random_cyclic_module(seed, 4)
        p, p_inv = co._random_unimodular(rng, module.k, 6)
        moved = co.change_basis(module, p, p_inv)
        assert co.tate_groups(moved) == co.tate_groups(module)

