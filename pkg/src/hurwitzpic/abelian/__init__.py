"""Exact integer linear algebra: normal forms, lattices, abelian groups."""

from ._backend import BACKEND
from .group import (
    AbelianGroup,
    QuotientMap,
    quotient,
    quotient_map,
    render_cyclic,
    render_linear,
)
from .matrix import IntegerMatrix
from .normal_forms import (
    SmithDecomposition,
    determinant,
    hnf,
    is_unimodular,
    lattice_equal,
    lattice_member,
    right_kernel,
    snf,
    solve_in_basis,
)

__all__ = [
    "BACKEND",
    "AbelianGroup",
    "IntegerMatrix",
    "QuotientMap",
    "SmithDecomposition",
    "determinant",
    "hnf",
    "is_unimodular",
    "lattice_equal",
    "lattice_member",
    "quotient",
    "quotient_map",
    "render_cyclic",
    "render_linear",
    "right_kernel",
    "snf",
    "solve_in_basis",
]
