"""Free-module decomposition of Q[x_1..x_n] over the Young-subgroup invariants.

Every polynomial is written uniquely as ``sum g_key * F_key`` with ``g_key``
invariant and ``F_key`` ranging over the higher Specht polynomials
``F_T^S`` (``T`` natural standard, ``S`` block-respecting standard).  The
coefficients are found degree by degree from one exact square linear
system per degree, whose full rank is the freeness certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from hspecht.combinatorics import (
    BlockStructure,
    MultiDiagram,
    MultiTableau,
    block_index_tableau,
    canonical_multitableau,
    enumerate_NST,
    enumerate_ST,
    enumerate_r_diagrams,
    f_lambda,
)
from hspecht.groupalg import apply_element, group_elements, product_symmetrizer
from hspecht.linalg import ExactSolver, RankDefect, poly_rank
from hspecht.polyalg import Polynomial, monomials_of_degree, permute
from hspecht.report import FalsificationError
from hspecht.specht import HigherSpechtKey, all_keys, higher_specht, irreducible_character, key_polynomial, module_basis

GradedSeries = list[int]


# --- graded bookkeeping -----------------------------------------------------

def series_mul(a: GradedSeries, b: GradedSeries, upto: int | None = None) -> GradedSeries:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out if upto is None else (out + [0] * (upto + 1))[:upto + 1]


def q_factorial(n: int) -> GradedSeries:
    """``[n]_q! = prod_{k=1}^n (1 + q + ... + q^(k-1))``."""
    out = [1]
    for k in range(1, n + 1):
        out = series_mul(out, [1] * k)
    return out


def block_q_factorial(block: BlockStructure) -> GradedSeries:
    out = [1]
    for v in block.type_vector:
        out = series_mul(out, q_factorial(v))
    return out


def invariant_hilbert_series(block: BlockStructure, upto: int) -> GradedSeries:
    """Coefficients of ``prod_i prod_{k<=n_i} 1/(1-q^k)`` through degree ``upto``."""
    out = [1] + [0] * upto
    for v in block.type_vector:
        for k in range(1, v + 1):
            for d in range(k, upto + 1):
                out[d] += out[d - k]
    return out


def _trim(series: GradedSeries) -> GradedSeries:
    series = list(series)
    while len(series) > 1 and series[-1] == 0:
        series.pop()
    return series


# --- invariant ring basis -------------------------------------------------

def elementary_symmetric(nvars: int, indices: list[int], k: int) -> Polynomial:
    terms = {}
    for combo in itertools.combinations(indices, k):
        e = [0] * nvars
        for j in combo:
            e[j - 1] = 1
        terms[tuple(e)] = 1
    return Polynomial(nvars, terms)


def _partitions_bounded(d: int, largest: int) -> list[tuple[int, ...]]:
    if d == 0:
        return [()]
    out = []
    for first in range(min(d, largest), 0, -1):
        out.extend((first,) + rest for rest in _partitions_bounded(d - first, first))
    return out


@lru_cache(maxsize=None)
def invariant_basis_of_degree(block: BlockStructure, d: int) -> tuple[Polynomial, ...]:
    """Products of per-block elementary symmetric polynomials of total degree ``d``."""
    n = block.n
    out = []
    per_block_degrees = [c for c in itertools.product(range(d + 1), repeat=block.r) if sum(c) == d]
    for degs in sorted(per_block_degrees, reverse=True):
        choices = [_partitions_bounded(di, ni) for di, ni in zip(degs, block.type_vector)]
        for combo in itertools.product(*choices):
            m = Polynomial.one(n)
            for i, mu in enumerate(combo):
                idx = list(block.block_range(i))
                for part in mu:
                    m = m * elementary_symmetric(n, idx, part)
            out.append(m)
    return tuple(out)


def invariant_monomial_basis(block: BlockStructure, d: int) -> list[list[Polynomial]]:
    """Graded invariant basis through degree ``d``: entry ``k`` lists degree ``k``."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    return [list(invariant_basis_of_degree(block, k)) for k in range(d + 1)]


# --- generators -----------------------------------------------------------

def generator_keys(block: BlockStructure) -> list[HigherSpechtKey]:
    return all_keys(block)


def key_degree(key: HigherSpechtKey) -> int:
    """Sum of the block index tableau of ``S``."""
    return sum(v for comp in block_index_tableau(key.S) for row in comp for v in row)


def graded_rank_series(block: BlockStructure, upto: int | None = None) -> GradedSeries:
    """Generating series of generator degrees; must equal ``prod_i [n_i]_q!``."""
    top = sum(v * (v - 1) // 2 for v in block.type_vector)
    upto = top if upto is None else upto
    series = [0] * (max(upto, top) + 1)
    for key in generator_keys(block):
        F = key_polynomial(key)
        d = F.degree()
        if not F.is_homogeneous() or d != key_degree(key):
            raise FalsificationError("generator_degree", key.describe(), f"deg={d}")
        series[d] += 1
    expected = block_q_factorial(block)
    if _trim(series) != expected:
        raise FalsificationError("graded_rank", {"blocks": str(block)},
                                 f"series={_trim(series)}, expected={expected}")
    return (series + [0] * (upto + 1))[:upto + 1]


def multiplicity_table(block: BlockStructure, bound: int = 720) -> dict[MultiDiagram, tuple[int, int]]:
    """For each diagram: (product of standard counts, number of natural standard tableaux)."""
    if block.group_order() > bound:
        raise ValueError(f"group order {block.group_order()} exceeds bound {bound}")
    table = {lam: (f_lambda(lam), len(enumerate_NST(lam))) for lam in enumerate_r_diagrams(block)}
    for lam, (f, nst) in table.items():
        if f != nst:
            raise FalsificationError("multiplicity", {"blocks": str(block), "diagram": str(lam)}, (f, nst))
    total = sum(f * f for f, _ in table.values())
    if total != block.group_order():
        raise FalsificationError("sum_of_squares", {"blocks": str(block)}, total)
    return table


def counting_identity(block: BlockStructure) -> int:
    """``sum_lambda |NST(lambda)| * |S set(lambda)|``; equals ``prod n_i!``."""
    from hspecht.specht import index_sources

    return sum(len(enumerate_NST(lam)) * len(index_sources(lam)) for lam in enumerate_r_diagrams(block))


def full_entry_reading(block: BlockStructure) -> dict:
    """Documentation only: the generator count and degree series if S ranged over all of ST."""
    series: dict[int, int] = {}
    count = 0
    for lam in enumerate_r_diagrams(block):
        tabs = enumerate_NST(lam)
        for S in enumerate_ST(lam):
            for T in tabs:
                d = higher_specht(T, S, "global").degree()
                series[d] = series.get(d, 0) + 1
                count += 1
    as_list = [series.get(d, 0) for d in range(max(series) + 1)]
    return {"blocks": str(block), "generators": count, "free_rank": block.group_order(),
            "series": as_list, "expected_series": block_q_factorial(block)}


# --- decomposition --------------------------------------------------------

@dataclass
class DecompositionResult:
    input: Polynomial
    coefficients: dict[HigherSpechtKey, Polynomial] = field(default_factory=dict)

    def reconstruct(self) -> Polynomial:
        total = Polynomial.zero(self.input.nvars)
        for key, g in self.coefficients.items():
            total = total + g * key_polynomial(key)
        return total

    def to_json(self) -> dict:
        keys = list(self.coefficients)
        return {
            "input": str(self.input),
            "generators": [{**key.describe(), "F": str(key_polynomial(key))} for key in keys],
            "coefficients": [str(self.coefficients[key]) for key in keys],
        }


@dataclass
class DegreeSystem:
    degree: int
    columns: list[tuple[HigherSpechtKey, Polynomial]]
    monomials: list[tuple[int, ...]]
    solver: ExactSolver

    @property
    def certificate(self) -> dict:
        return {"degree": self.degree, "rows": len(self.monomials), "columns": len(self.columns),
                "rank": self.solver.rank}


class Decomposer:
    """Caches one factored linear system per degree for a block structure."""

    def __init__(self, block: BlockStructure):
        self.block = block
        self.keys = generator_keys(block)
        self._systems: dict[int, DegreeSystem] = {}

    def system(self, d: int) -> DegreeSystem:
        if d not in self._systems:
            self._systems[d] = self._build(d)
        return self._systems[d]

    def _build(self, d: int) -> DegreeSystem:
        n = self.block.n
        columns = []
        for key in self.keys:
            F = key_polynomial(key)
            k = d - F.degree()
            if k < 0:
                continue
            for m in invariant_basis_of_degree(self.block, k):
                columns.append((key, m))
        monos = monomials_of_degree(n, d)
        index = {e: i for i, e in enumerate(monos)}
        A = [[Fraction(0)] * len(columns) for _ in monos]
        for j, (key, m) in enumerate(columns):
            for e, c in (m * key_polynomial(key)).terms.items():
                A[index[e]][j] = c
        instance = {"blocks": str(self.block), "degree": d}
        if len(columns) != len(monos):
            raise FalsificationError("square_system", instance, f"{len(monos)} monomials, {len(columns)} columns")
        try:
            solver = ExactSolver(A)
        except RankDefect as exc:
            raise FalsificationError("full_column_rank", instance, str(exc)) from None
        return DegreeSystem(d, columns, monos, solver)

    def decompose(self, f: Polynomial) -> DecompositionResult:
        if f.nvars != self.block.n:
            raise ValueError(f"polynomial has {f.nvars} variables, blocks need {self.block.n}")
        result = DecompositionResult(f)
        coeffs: dict[HigherSpechtKey, Polynomial] = {}
        for d, part in f.homogeneous_parts().items():
            system = self.system(d)
            index = {e: i for i, e in enumerate(system.monomials)}
            b = [Fraction(0)] * len(system.monomials)
            for e, c in part.terms.items():
                b[index[e]] = c
            x = system.solver.solve(b)
            if x is None:
                raise FalsificationError("decompose", {"blocks": str(self.block), "degree": d, "f": str(f)})
            for (key, m), c in zip(system.columns, x):
                if c:
                    coeffs[key] = coeffs.get(key, Polynomial.zero(f.nvars)) + m.scale(c)
        result.coefficients = {key: coeffs[key] for key in self.keys if key in coeffs and coeffs[key]}
        return result


@lru_cache(maxsize=None)
def decomposer(block: BlockStructure) -> Decomposer:
    return Decomposer(block)


def decompose(f: Polynomial, block: BlockStructure) -> DecompositionResult:
    return decomposer(block).decompose(f)


# --- isotypic components --------------------------------------------------

def isotypic_projection(diagram: MultiDiagram, f: Polynomial, bound: int = 720) -> Polynomial:
    """Apply ``(dim/|G|) sum_g chi(g^-1) g`` for the irreducible of ``diagram``."""
    block = diagram.block
    if block.group_order() > bound:
        raise ValueError(f"group order {block.group_order()} exceeds bound {bound}")
    chi = irreducible_character(diagram)
    elems = group_elements(block)
    scale = Fraction(f_lambda(diagram), len(elems))
    acc: dict = {}
    for g in elems:
        c = chi[g.inverse()]
        if c:
            for e, v in permute(g, f).terms.items():
                acc[e] = acc.get(e, 0) + c * v
    return Polynomial(f.nvars, acc).scale(scale)


def one_dimensionality_check(diagram: MultiDiagram, T: MultiTableau) -> int:
    """Rank of ``e_T`` applied to the basis of the module built from ``S_0``; must be 1."""
    basis = module_basis(diagram, canonical_multitableau(diagram))
    e = product_symmetrizer(T)
    r = poly_rank([apply_element(e, v) for v in basis.vectors])
    if r != 1:
        raise FalsificationError("one_dimensional", {"blocks": str(diagram.block),
                                                     "diagram": str(diagram), "T": str(T)}, r)
    return r

