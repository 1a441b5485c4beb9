"""G-sets, orbit counting and permutation-module cohomology."""

import itertools
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from herbrand import cohomology as co
from herbrand import permutation as pm
from herbrand.cohomology import CyclicModule
from herbrand.errors import HerbrandError
from herbrand.verify import gset_classes

G = pm.GSet.of
BLOCK_SWAP = G(4, [1, 0, 3, 2])


@pytest.mark.parametrize("x, orbits, stab", [
    (BLOCK_SWAP, ((0, 1), (2, 3)), (2, 2)),
    (G(3, [1, 2, 0]), ((0, 1, 2),), (1,)),
    (G(2, [0, 1, 2]), ((0,), (1,), (2,)), (2, 2, 2)),
])
def test_orbit_examples(x, orbits, stab):
    d = pm.orbit_decomposition(x)
    assert d.orbits == orbits
    assert d.stabilizer_orders == stab
    assert d.representatives == tuple(min(o) for o in orbits)


@pytest.mark.parametrize("x, count", [
    (BLOCK_SWAP, 2), (G(2, [1, 0]), 1), (G(3, [0, 1]), 2),
])
def test_burnside_examples(x, count):
    assert pm.burnside_orbit_count(x) == count


@pytest.mark.parametrize("image, n, code", [
    ([0, 0], 2, "INVALID_PERMUTATION"),
    ([1, 2], 2, "INVALID_PERMUTATION"),
    ([1, 2, 0], 2, "ORDER_MISMATCH"),
])
def test_gset_errors(image, n, code):
    with pytest.raises(HerbrandError) as exc:
        pm.orbit_decomposition(G(n, image))
    assert exc.value.code == code


def test_permutation_module_examples():
    assert pm.permutation_module(G(2, [1, 0])) == CyclicModule.build(2, [[0, 1], [1, 0]])
    assert pm.permutation_module(G(1, [0])) == CyclicModule.build(1, [[1]])
    m = pm.permutation_module(BLOCK_SWAP)
    assert m.matrix() == [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    assert co.validate_module(m).valid


@pytest.mark.parametrize("x, h", [(G(2, [1, 0]), 1), (BLOCK_SWAP, 4), (G(6, [0]), 6)])
def test_orbit_product_examples(x, h):
    assert pm.orbit_herbrand_formula(x) == h
    assert co.herbrand_quotient(pm.permutation_module(x)).quotient == h


@pytest.mark.parametrize("x", [G(5, [0]), G(2, [1, 0]), BLOCK_SWAP])
def test_h1_formula_examples(x):
    assert pm.prop21_h1_formula(x) == 1 == co.h1(pm.permutation_module(x)).order


def _orbit_count_by_union(image):
    parent = list(range(len(image)))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for a, b in enumerate(image):
        parent[find(a)] = find(b)
    return len({find(a) for a in range(len(image))})


def _perm_order(image):
    seen, order = set(), 1
    for s in range(len(image)):
        if s in seen:
            continue
        length, q = 0, s
        while q not in seen:
            seen.add(q)
            q = image[q]
            length += 1
        order = math.lcm(order, length)
    return order


def test_burnside_exhaustive_labeled():
    """Every permutation of at most 8 points, under every n <= 12 it is compatible with."""
    checked = 0
    for r in range(1, 9):
        for image in itertools.permutations(range(r)):
            order = _perm_order(image)
            if order > 12:
                continue
            expected = _orbit_count_by_union(image)
            for n in range(order, 13, order):
                x = pm.GSet(n, image)
                assert pm.burnside_orbit_count(x) == expected
                checked += 1
    assert checked > 50_000


def test_all_gsets_filters_by_order():
    got = list(pm.all_gsets(2, 3))
    assert len(got) == 4  # identity and three transpositions
    assert all(_perm_order(x.image) in (1, 2) for x in got)


def test_gset_classes_cover_labeled_isomorphism_types():
    classes = {(x.n, tuple(sorted(map(len, pm.orbit_decomposition(x).orbits))))
               for x in gset_classes(5, 6)}
    labeled = {(x.n, tuple(sorted(map(len, pm.orbit_decomposition(x).orbits))))
               for n in range(1, 7) for r in range(1, 6) for x in pm.all_gsets(n, r)}
    assert classes == labeled


@pytest.mark.parametrize("x", list(gset_classes(6, 8)))
def test_orbit_formulas_on_gset_classes(x):
    d = pm.orbit_decomposition(x)
    assert all(s * len(o) == x.n for s, o in zip(d.stabilizer_orders, d.orbits))
    rep = co.herbrand_quotient(pm.permutation_module(x))
    assert rep.quotient == pm.orbit_herbrand_formula(x)
    assert pm.prop21_h1_formula(x) == rep.tate.h1_order


@given(st.integers(0, 10 ** 6))
def test_orbit_formulas_on_random_gsets(seed):
    rng = random.Random(seed)
    x = pm.random_gset(rng, rng.randint(1, 24), rng.randint(1, 12))
    assert pm.burnside_orbit_count(x) == _orbit_count_by_union(x.image)
    rep = co.herbrand_quotient(pm.permutation_module(x))
    assert rep.quotient == pm.orbit_herbrand_formula(x)
    assert pm.prop21_h1_formula(x) == rep.tate.h1_order


def test_perturbation_examples():
    swap = G(2, [1, 0])
    z4 = CyclicModule.build(2, [[-1]], [[4]])
    assert co.herbrand_quotient(pm.finite_index_perturbation(swap, z4)).quotient == 1
    z2 = CyclicModule.build(2, [[1]], [[2]])
    assert co.herbrand_quotient(pm.finite_index_perturbation(G(2, [0]), z2)).quotient == 2
    zero = CyclicModule.build(4, [])
    assert co.herbrand_quotient(
        pm.finite_index_perturbation(BLOCK_SWAP, zero)).quotient == 4


def test_perturbation_errors():
    with pytest.raises(HerbrandError) as exc:
        pm.finite_index_perturbation(BLOCK_SWAP, CyclicModule.build(2, [[1]], [[2]]))
    assert exc.value.code == "GROUP_ORDER_MISMATCH"
    with pytest.raises(HerbrandError) as exc:
        pm.finite_index_perturbation(G(2, [1, 0]), CyclicModule.build(2, [[-1]]))
    assert exc.value.code == "MODULE_INFINITE"


@given(st.integers(0, 10 ** 6))
def test_perturbation_never_changes_h(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    x = pm.random_gset(rng, n, rng.randint(1, 6))
    t = co.random_cyclic_module(seed, n, rank_bound=2, finite=True, max_order=64)
    perturbed = pm.finite_index_perturbation(x, t, seed)
    assert co.validate_module(perturbed).valid
    assert co.herbrand_quotient(perturbed).quotient == pm.orbit_herbrand_formula(x)
