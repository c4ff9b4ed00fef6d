"""The rational group algebra of a Young subgroup S_{n_1} x ... x S_{n_r}."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping

from hspecht.combinatorics import (
    BlockStructure,
    MultiTableau,
    Tableau,
    column_stabilizer,
    count_standard,
    enumerate_NST,
    enumerate_r_diagrams,
    row_stabilizer,
)
from hspecht.permutation import Permutation, permutations_of
from hspecht.polyalg import Polynomial, permute

__all__ = [
    "Permutation",
    "GroupAlgebraElement",
    "group_elements",
    "group_generators",
    "young_symmetrizer",
    "product_symmetrizer",
    "apply_element",
    "idempotent_report",
]


def group_elements(block: BlockStructure) -> list[Permutation]:
    """Every element of the Young subgroup, sorted by one-line notation."""
    return _group_elements(block)


@lru_cache(maxsize=None)
def _group_elements(block: BlockStructure) -> list[Permutation]:
    n = block.n
    per_block = [list(permutations_of(n, rng)) for rng in block.ranges()]
    out = []
    for combo in itertools.product(*per_block):
        g = Permutation.identity(n)
        for p in combo:
            g = g * p
        out.append(g)
    return sorted(out)


def group_generators(block: BlockStructure) -> list[Permutation]:
    """Adjacent transpositions inside each block."""
    n = block.n
    return [Permutation.from_cycles(n, (a, a + 1))
            for rng in block.ranges() for a in rng if a + 1 in rng]


class GroupAlgebraElement:
    """Finite rational combination of block-preserving permutations."""

    __slots__ = ("block", "terms")

    def __init__(self, block: BlockStructure, terms: Mapping[Permutation, Fraction | int] | None = None,
                 *, check: bool = True):
        self.block = block
        clean = {}
        for g, c in (terms or {}).items():
            if c:
                clean[g] = Fraction(c)
        if check:
            ranges = block.ranges()
            for g in clean:
                if g.n != block.n or not all(g.preserves(rng) for rng in ranges):
                    raise ValueError(f"{g} does not preserve blocks {block}")
        self.terms = clean

    @classmethod
    def identity(cls, block: BlockStructure) -> GroupAlgebraElement:
        return cls(block, {Permutation.identity(block.n): 1}, check=False)

    @classmethod
    def zero(cls, block: BlockStructure) -> GroupAlgebraElement:
        return cls(block, {}, check=False)

    def _check(self, other: GroupAlgebraElement) -> None:
        if self.block != other.block:
            raise ValueError(f"block mismatch: {self.block} vs {other.block}")

    def __add__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) + c
        return GroupAlgebraElement(self.block, out, check=False)

    def __neg__(self) -> GroupAlgebraElement:
        return GroupAlgebraElement(self.block, {g: -c for g, c in self.terms.items()}, check=False)

    def __sub__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        return self + (-other)

    def scale(self, c: Fraction | int) -> GroupAlgebraElement:
        return GroupAlgebraElement(self.block, {g: v * c for g, v in self.terms.items()}, check=False)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict[Permutation, Fraction] = {}
        for g, a in self.terms.items():
            for h, b in other.terms.items():
                gh = g * h
                out[gh] = out.get(gh, 0) + a * b
        return GroupAlgebraElement(self.block, out, check=False)

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.block == other.block and self.terms == other.terms

    def __hash__(self):
        return hash((self.block, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[Permutation, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: t[0].images)

    def to_json(self) -> list[dict]:
        return [{"perm": list(g.images), "coeff": str(c)} for g, c in self.sorted_terms()]

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{g.cycle_str()}" for g, c in self.sorted_terms()) or "0"
        return f"GroupAlgebraElement({body})"


def apply_element(a: GroupAlgebraElement, f: Polynomial) -> Polynomial:
    """Linear extension of the permutation action: ``sum c_g * (g f)``."""
    if f.nvars != a.block.n:
        raise ValueError("ambient mismatch between group algebra element and polynomial")
    acc: dict = {}
    for g, c in a.terms.items():
        for e, v in permute(g, f).terms.items():
            acc[e] = acc.get(e, 0) + c * v
    return Polynomial(f.nvars, acc)


def _block_containing(block: BlockStructure, entries: Iterable[int]) -> int:
    entries = set(entries)
    for i, rng in enumerate(block.ranges()):
        if entries <= set(rng):
            return i
    raise ValueError(f"entries {sorted(entries)} are not contained in a single block of {block}")


@lru_cache(maxsize=None)
def young_symmetrizer(T: Tableau, block: BlockStructure) -> GroupAlgebraElement:
    """``(f^shape / n_i!) * sum_{s in R(T), t in C(T)} sgn(t) * t*s``.

    ``t*s`` applies the row permutation first.  ``T`` must be standard with
    its entries inside one block; ``n_i`` is that block's size.
    """
    if not T.is_standard():
        raise ValueError(f"tableau {T} is not standard")
    i = _block_containing(block, T.entries)
    n = block.n
    scale = Fraction(count_standard(T.shape), factorial(block.type_vector[i]))
    rows = row_stabilizer(T, n)
    terms: dict[Permutation, Fraction] = {}
    for t in column_stabilizer(T, n):
        sgn = t.sign()
        for s in rows:
            ts = t * s
            terms[ts] = terms.get(ts, 0) + sgn * scale
    return GroupAlgebraElement(block, terms, check=False)


@lru_cache(maxsize=None)
def product_symmetrizer(T: MultiTableau) -> GroupAlgebraElement:
    """Product of the block symmetrizers of a natural standard multi-tableau."""
    if not T.is_natural():
        raise ValueError(f"{T} is not natural: component entries must match the block ranges")
    if not T.is_standard():
        raise ValueError(f"{T} is not standard")
    out = GroupAlgebraElement.identity(T.block)
    for comp in T.components:
        out = out * young_symmetrizer(comp, T.block)
    return out


@dataclass
class IdempotentReport:
    block: BlockStructure
    tableaux: list[MultiTableau]
    idempotent: list[bool]
    sums_to_identity: bool
    nonzero_products: list[tuple[int, int]] = field(default_factory=list)

    @property
    def all_idempotent(self) -> bool:
        return all(self.idempotent)

    def cross_shape_nonzero(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in self.nonzero_products
                if self.tableaux[a].diagram != self.tableaux[b].diagram]

    def same_shape_nonzero(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in self.nonzero_products
                if a != b and self.tableaux[a].diagram == self.tableaux[b].diagram]

    def to_json(self) -> dict:
        return {
            "block": list(self.block.type_vector),
            "tableaux": [str(t) for t in self.tableaux],
            "idempotent": self.idempotent,
            "sums_to_identity": self.sums_to_identity,
            "nonzero_products": [list(p) for p in self.nonzero_products],
        }


def idempotent_report(block: BlockStructure, bound: int = 720) -> IdempotentReport:
    """Idempotency, completeness and pairwise products of all ``e_T``, T natural standard."""
    if block.group_order() > bound:
        raise ValueError(f"group order {block.group_order()} exceeds bound {bound}")
    tableaux = [T for lam in enumerate_r_diagrams(block) for T in enumerate_NST(lam)]
    elems = [product_symmetrizer(T) for T in tableaux]
    total = GroupAlgebraElement.zero(block)
    for e in elems:
        total = total + e
    nonzero = [(a, b) for a, ea in enumerate(elems) for b, eb in enumerate(elems)
               if not (ea * eb).is_zero()]
    return IdempotentReport(
        block=block,
        tableaux=tableaux,
        idempotent=[e * e == e for e in elems],
        sums_to_identity=total == GroupAlgebraElement.identity(block),
        nonzero_products=nonzero,
    )
