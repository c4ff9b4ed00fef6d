"""Exact computation with higher Specht polynomials for products of symmetric groups."""

from hspecht.combinatorics import (
    BlockStructure,
    MultiDiagram,
    MultiTableau,
    Tableau,
    enumerate_NST,
    enumerate_ST,
    enumerate_r_diagrams,
    index_tableau,
    word,
)
from hspecht.decomp import decompose, graded_rank_series
from hspecht.groupalg import GroupAlgebraElement, product_symmetrizer, young_symmetrizer
from hspecht.permutation import Permutation
from hspecht.polyalg import Polynomial, parse_poly, permute
from hspecht.specht import HigherSpechtKey, higher_specht, module_basis
from hspecht.weyl import DifferentialOperator, apply_operator, parse_operator

__version__ = "0.1.0"
