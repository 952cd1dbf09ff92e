"""Finite semifields of order 2^n given by standard bases over GF(2)."""

from .gf2core import DimensionError, GF2Matrix, GF2Vector, inverse, mat_mul, mat_vec, rank
from .semifield import (
    Condition,
    Cube,
    StandardBasis,
    VerificationReport,
    basis_from_cube,
    cube_from_basis,
    left_mul_matrix,
    multiply,
    opposite,
    right_mul_matrix,
    verify_no_zero_divisors,
    verify_standard_basis,
)
from .analysis import (
    SubalgebraReport,
    Subspace,
    check_closure,
    enumerate_subspaces_containing_one,
    find_subsemifields,
    identify_field,
    is_associative,
    is_commutative,
    nuclei,
)
from .search import (
    InconsistentConstraints,
    SearchBudget,
    SearchConstraints,
    SearchOutcome,
    search_standard_bases,
    split_search_space,
)
from .fixtures import load_fixture, paper_basis

__version__ = "0.1.0"
