"""Classical and higher Specht polynomials and the modules they span.

For a natural standard multi-tableau ``T`` and a standard ``S`` of the
same shape, the higher Specht polynomial is the product symmetrizer of
``T`` applied to the monomial that puts, on the variable in each box of
``T``, the index found in the same box of the index tableau of ``S``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Sequence

from hspecht.combinatorics import (
    BlockStructure,
    MultiDiagram,
    MultiTableau,
    Tableau,
    block_index_tableau,
    canonical_multitableau,
    enumerate_NST,
    f_lambda,
    index_tableau,
)
from hspecht.groupalg import (
    apply_element,
    group_elements,
    group_generators,
    product_symmetrizer,
)
from hspecht.linalg import PolynomialBasis, RankDefect
from hspecht.permutation import Permutation
from hspecht.polyalg import Polynomial, permute
from hspecht.report import FalsificationError

Indexing = Literal["auto", "block", "global"]


@dataclass(frozen=True)
class HigherSpechtKey:
    diagram: MultiDiagram
    T: MultiTableau
    S: MultiTableau

    def __post_init__(self):
        if self.T.diagram != self.diagram or self.S.diagram != self.diagram:
            raise ValueError(f"T={self.T} and S={self.S} must both have shape {self.diagram}")

    def describe(self) -> dict:
        return {"blocks": str(self.diagram.block), "diagram": str(self.diagram),
                "T": str(self.T), "S": str(self.S)}


def index_sources(diagram: MultiDiagram) -> list[MultiTableau]:
    """Block-respecting standard tableaux S (component i filled from block i)."""
    return enumerate_NST(diagram)


def all_keys(block: BlockStructure) -> list[HigherSpechtKey]:
    from hspecht.combinatorics import enumerate_r_diagrams

    return [HigherSpechtKey(lam, T, S) for lam in enumerate_r_diagrams(block)
            for S in index_sources(lam) for T in enumerate_NST(lam)]


def specht_monomial(T: MultiTableau, S: MultiTableau, indexing: Indexing = "auto") -> Polynomial:
    """Monomial with exponent ``i(S)[box]`` on the variable ``T[box]``.

    ``indexing="block"`` indexes each component of ``S`` on its own;
    ``"global"`` indexes the whole reading word of ``S`` at once.  ``"auto"``
    uses block indexing when ``S`` is natural and the global rule otherwise.
    The two agree when there is a single block.
    """
    if T.diagram != S.diagram:
        raise ValueError(f"shape mismatch: {T.diagram} vs {S.diagram}")
    if indexing == "auto":
        indexing = "block" if S.is_natural() else "global"
    idx = block_index_tableau(S) if indexing == "block" else index_tableau(S)
    exp = [0] * T.block.n
    for comp, icomp in zip(T.components, idx):
        for row, irow in zip(comp.rows, icomp):
            for v, k in zip(row, irow):
                exp[v - 1] = k
    return Polynomial.monomial(exp)


@lru_cache(maxsize=None)
def higher_specht(T: MultiTableau, S: MultiTableau, indexing: Indexing = "auto") -> Polynomial:
    if not S.is_standard():
        raise ValueError(f"S={S} is not standard")
    return apply_element(product_symmetrizer(T), specht_monomial(T, S, indexing))


def key_polynomial(key: HigherSpechtKey) -> Polynomial:
    return higher_specht(key.T, key.S)


def canonical_specht(T: MultiTableau) -> Polynomial:
    """``F_T``: the higher Specht polynomial with the row-filled tableau ``S_0``."""
    return higher_specht(T, canonical_multitableau(T.diagram))


def classical_specht(T: MultiTableau) -> Polynomial:
    """Product over all columns of ``x_lower - x_upper`` over pairs of boxes."""
    n = T.block.n
    out = Polynomial.one(n)
    for comp in T.components:
        for col in comp.columns:
            for a in range(len(col)):
                for b in range(a + 1, len(col)):
                    out = out * (Polynomial.var(n, col[b]) - Polynomial.var(n, col[a]))
    return out


def proportionality_constant(T: MultiTableau) -> Fraction:
    """``c`` with ``F_T^{S_0} == c * classical_specht(T)``."""
    F = canonical_specht(T)
    G = classical_specht(T)
    e, g = G.leading_term()
    c = F.coeff(e) / g
    if not c or F != G.scale(c):
        raise FalsificationError("proportionality", {"diagram": str(T.diagram), "T": str(T)},
                                 f"F={F}, classical={G}")
    return c


# --- representations ------------------------------------------------------

@dataclass
class RepresentationBasis:
    diagram: MultiDiagram
    S: MultiTableau | None
    tableaux: list[MultiTableau]
    vectors: list[Polynomial]
    _coords: PolynomialBasis | None = None

    @property
    def block(self) -> BlockStructure:
        return self.diagram.block

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    @property
    def coords(self) -> PolynomialBasis:
        if self._coords is None:
            self._coords = PolynomialBasis(self.vectors)
        return self._coords

    def coordinates(self, f: Polynomial) -> list[Fraction] | None:
        return self.coords.coordinates(f)

    def is_stable(self, gens: Sequence[Permutation]) -> bool:
        return all(self.coordinates(permute(g, v)) is not None for g in gens for v in self.vectors)

    def instance(self) -> dict:
        return {"blocks": str(self.block), "diagram": str(self.diagram), "S": str(self.S)}


def module_basis(diagram: MultiDiagram, S: MultiTableau | None = None) -> RepresentationBasis:
    """``{F_T^S : T natural standard}``, checked independent and group-stable."""
    S = canonical_multitableau(diagram) if S is None else S
    tabs = enumerate_NST(diagram)
    basis = RepresentationBasis(diagram, S, tabs, [higher_specht(T, S) for T in tabs])
    try:
        basis.coords
    except RankDefect as exc:
        raise FalsificationError("independence", basis.instance(), str(exc)) from None
    if basis.dimension != f_lambda(diagram):
        raise FalsificationError("dimension", basis.instance(), basis.dimension)
    for g in group_generators(diagram.block):
        for T, v in zip(tabs, basis.vectors):
            if basis.coordinates(permute(g, v)) is None:
                raise FalsificationError("closure", {**basis.instance(), "T": str(T), "g": str(g)})
    return basis


def direct_sum(a: RepresentationBasis, b: RepresentationBasis) -> RepresentationBasis:
    """Concatenate two bases spanning independent submodules."""
    return RepresentationBasis(a.diagram, None, a.tableaux + b.tableaux, a.vectors + b.vectors)


def representation_matrix(basis: RepresentationBasis, g: Permutation) -> list[list[Fraction]]:
    """Column ``j`` holds the coordinates of ``g`` applied to basis vector ``j``."""
    cols = []
    for v in basis.vectors:
        c = basis.coordinates(permute(g, v))
        if c is None:
            raise FalsificationError("closure", {**basis.instance(), "g": str(g)})
        cols.append(c)
    return [list(row) for row in zip(*cols)]


def representation_matrices(basis: RepresentationBasis,
                            gens: Sequence[Permutation]) -> list[list[list[Fraction]]]:
    return [representation_matrix(basis, g) for g in gens]


def character(basis: RepresentationBasis) -> dict[Permutation, Fraction]:
    """Trace of every group element, by brute force over the whole group."""
    out = {}
    for g in group_elements(basis.block):
        m = representation_matrix(basis, g)
        out[g] = sum((m[i][i] for i in range(len(m))), Fraction(0))
    return out


@lru_cache(maxsize=None)
def irreducible_character(diagram: MultiDiagram) -> dict[Permutation, Fraction]:
    return character(module_basis(diagram))


def character_inner(chi: dict[Permutation, Fraction], psi: dict[Permutation, Fraction]) -> Fraction:
    """``(1/|G|) sum_g chi(g) psi(g^-1)``."""
    total = sum((chi[g] * psi[g.inverse()] for g in chi), Fraction(0))
    return total / len(chi)


def irreducibility_check(basis: RepresentationBasis, bound: int = 720) -> bool:
    if basis.block.group_order() > bound:
        raise ValueError(f"group order {basis.block.group_order()} exceeds bound {bound}")
    chi = character(basis)
    return character_inner(chi, chi) == 1


# --- tensor identification --------------------------------------------------

def _single_block_key(key: HigherSpechtKey, i: int) -> HigherSpechtKey:
    block = key.diagram.block
    offset = block.block_range(i).start - 1
    sub = BlockStructure((block.type_vector[i],))

    def shift(t: Tableau) -> MultiTableau:
        return MultiTableau((Tableau(tuple(tuple(v - offset for v in row) for row in t.rows)),), sub)

    return HigherSpechtKey(MultiDiagram((key.diagram.components[i],), sub),
                           shift(key.T.components[i]), shift(key.S.components[i]))


def _embed(f: Polynomial, nvars: int, offset: int) -> Polynomial:
    pad_after = nvars - offset - f.nvars
    return Polynomial(nvars, {(0,) * offset + e + (0,) * pad_after: c for e, c in f.terms.items()})


def identify_tensor(key: HigherSpechtKey) -> list[HigherSpechtKey]:
    """Split ``(T, S)`` into per-block keys and check ``F_T^S`` is the product of their polynomials."""
    if not key.S.is_natural():
        raise ValueError(f"S={key.S} is not block-respecting")
    block = key.diagram.block
    parts = [_single_block_key(key, i) for i in range(block.r)]
    product = Polynomial.one(block.n)
    for i, part in enumerate(parts):
        offset = block.block_range(i).start - 1
        product = product * _embed(key_polynomial(part), block.n, offset)
    if product != key_polynomial(key):
        raise FalsificationError("identify_tensor", key.describe(),
                                 f"F={key_polynomial(key)}, product={product}")
    return parts

