"""Tate cohomology and Herbrand quotients of modules over finite cyclic groups,
with applications to units of real quadratic fields."""

from .abelian import (INFINITE, InvariantFactors, Lattice, PresentedGroup, group_order,
                      hermite_normal_form, invariant_factors, kernel_basis, lattice_index,
                      m_torsion, preimage_lattice, smith_normal_form)
from .cohomology import (CyclicModule, brute_force_cohomology, h1, herbrand_quotient,
                         order2_profile, random_cyclic_module, remark_formula_h1, tate_h0,
                         validate_module)
from .errors import HerbrandError

__version__ = "0.1.0"

__all__ = [
    "INFINITE", "InvariantFactors", "Lattice", "PresentedGroup", "group_order",
    "hermite_normal_form", "invariant_factors", "kernel_basis", "lattice_index",
    "m_torsion", "preimage_lattice", "smith_normal_form", "CyclicModule",
    "brute_force_cohomology", "h1", "herbrand_quotient", "order2_profile",
    "random_cyclic_module", "remark_formula_h1", "tate_h0", "validate_module",
    "HerbrandError",
]
