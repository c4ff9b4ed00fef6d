"""Polynomial differential operators in normal form ``x^a d^b``.

Operator text grammar: terms joined by ``+``/``-``, each a product of an
optional rational coefficient, variables ``x<i>^k`` and derivatives
``d<i>^k``, e.g. ``x1^2*d1 + x2^2*d2`` or ``-1/2*d1^2``.  Multiplications
always act after derivatives, whatever order the factors are written in.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from hspecht.combinatorics import BlockStructure, MultiDiagram, column_generators
from hspecht.groupalg import group_generators
from hspecht.linalg import PolynomialBasis, RankDefect
from hspecht.permutation import Permutation
from hspecht.polyalg import Exponent, Polynomial, exact_divide, is_invariant, permute
from hspecht.report import FalsificationError
from hspecht.specht import (
    HigherSpechtKey,
    canonical_specht,
    key_polynomial,
    module_basis,
)

TermKey = tuple[Exponent, Exponent]


def _falling(k: int, j: int) -> int:
    out = 1
    for t in range(j):
        out *= k - t
    return out


class DifferentialOperator:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[TermKey, Fraction | int] | None = None):
        self.nvars = nvars
        clean = {}
        for (a, b), c in (terms or {}).items():
            if len(a) != nvars or len(b) != nvars:
                raise ValueError("exponent length does not match the number of variables")
            if c:
                key = (tuple(a), tuple(b))
                clean[key] = clean.get(key, 0) + Fraction(c)
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def identity(cls, nvars: int) -> DifferentialOperator:
        z = (0,) * nvars
        return cls(nvars, {(z, z): 1})

    @classmethod
    def partial(cls, nvars: int, i: int, order: int = 1) -> DifferentialOperator:
        b = [0] * nvars
        b[i - 1] = order
        return cls(nvars, {((0,) * nvars, tuple(b)): 1})

    @classmethod
    def multiplication(cls, f: Polynomial) -> DifferentialOperator:
        z = (0,) * f.nvars
        return cls(f.nvars, {(e, z): c for e, c in f.terms.items()})

    @classmethod
    def euler(cls, nvars: int, indices: Iterable[int] | None = None) -> DifferentialOperator:
        indices = range(1, nvars + 1) if indices is None else indices
        return sum_operators(nvars, (power_derivation(nvars, j, 1) for j in indices))

    def order(self) -> int:
        return max((sum(b) for _, b in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: DifferentialOperator) -> DifferentialOperator:
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return DifferentialOperator(self.nvars, out)

    def __sub__(self, other: DifferentialOperator) -> DifferentialOperator:
        return self + other.scale(-1)

    def scale(self, c: Fraction | int) -> DifferentialOperator:
        return DifferentialOperator(self.nvars, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        """Composition ``self o other``, rewritten to normal form."""
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict[TermKey, Fraction] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                # d^b1 x^a2 = sum_j prod_i C(b1_i, j_i) (a2_i)_(j_i) x^(a2-j) d^(b1-j)
                partial_terms = [((), (), Fraction(1))]
                for i in range(self.nvars):
                    nxt = []
                    for j in range(min(b1[i], a2[i]) + 1):
                        w = comb(b1[i], j) * _falling(a2[i], j)
                        for xa, db, c in partial_terms:
                            nxt.append((xa + (a2[i] - j,), db + (b1[i] - j,), c * w))
                    partial_terms = nxt
                for xa, db, c in partial_terms:
                    key = (tuple(p + q for p, q in zip(a1, xa)), tuple(p + q for p, q in zip(db, b2)))
                    out[key] = out.get(key, 0) + c1 * c2 * c
        return DifferentialOperator(self.nvars, out)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DifferentialOperator):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _check(self, other: DifferentialOperator) -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"ambient mismatch: {self.nvars} vs {other.nvars} variables")

    def sorted_terms(self) -> list[tuple[TermKey, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0][1]), -sum(t[0][0]),
                                                         tuple(-v for v in t[0][1]),
                                                         tuple(-v for v in t[0][0])))

    def __str__(self) -> str:
        return format_operator(self)

    def __repr__(self) -> str:
        return f"DifferentialOperator({self.nvars}, {format_operator(self)!r})"

    def to_json(self) -> list[dict]:
        return [{"x": list(a), "d": list(b), "coeff": str(c)} for (a, b), c in self.sorted_terms()]


def sum_operators(nvars: int, ops: Iterable[DifferentialOperator]) -> DifferentialOperator:
    total = DifferentialOperator(nvars)
    for op in ops:
        total = total + op
    return total


def power_derivation(nvars: int, j: int, k: int) -> DifferentialOperator:
    """``x_j^k d_j``."""
    a = [0] * nvars
    b = [0] * nvars
    a[j - 1] = k
    b[j - 1] = 1
    return DifferentialOperator(nvars, {(tuple(a), tuple(b)): 1})


def format_operator(D: DifferentialOperator) -> str:
    if D.is_zero():
        return "0"
    pieces = []
    for idx, ((a, b), c) in enumerate(D.sorted_terms()):
        factors = [f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(a, 1) if k]
        factors += [f"d{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(b, 1) if k]
        mag = abs(c)
        mag_s = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        body = "*".join(factors)
        if not body:
            body = mag_s
        elif mag != 1:
            body = f"{mag_s}*{body}"
        sign = ("-" if c < 0 else "") if idx == 0 else (" - " if c < 0 else " + ")
        pieces.append(sign + body)
    return "".join(pieces)


_OP_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_operator(text: str, nvars: int) -> DifferentialOperator:
    src = text.strip()
    if not src:
        raise ValueError("empty operator")
    terms: dict[TermKey, Fraction] = {}
    pos = 0
    first = True
    while pos < len(src):
        m = _OP_TERM.match(src, pos)
        if not m or (m.group(1) is None and not first):
            raise ValueError(f"cannot parse operator near {src[pos:]!r}")
        coeff = Fraction(-1 if m.group(1) == "-" else 1)
        a = [0] * nvars
        b = [0] * nvars
        for factor in m.group(2).strip().split("*"):
            factor = factor.strip()
            fm = re.fullmatch(r"([xd])(\d+)(?:\^(\d+))?", factor)
            if fm:
                i = int(fm.group(2))
                if not 1 <= i <= nvars:
                    raise ValueError(f"index in {factor!r} outside 1..{nvars}")
                (a if fm.group(1) == "x" else b)[i - 1] += int(fm.group(3) or 1)
            elif re.fullmatch(r"\d+(?:/\d+)?", factor):
                coeff *= Fraction(factor)
            else:
                raise ValueError(f"bad token {factor!r} in operator")
        key = (tuple(a), tuple(b))
        terms[key] = terms.get(key, 0) + coeff
        pos = m.end()
        first = False
    return DifferentialOperator(nvars, terms)


def apply_operator(D: DifferentialOperator, f: Polynomial) -> Polynomial:
    if D.nvars != f.nvars:
        raise ValueError("ambient mismatch between operator and polynomial")
    acc: dict[Exponent, Fraction] = {}
    for (a, b), c in D.terms.items():
        for e, v in f.terms.items():
            if any(k < d for k, d in zip(e, b)):
                continue
            w = c * v
            for k, d in zip(e, b):
                if d:
                    w *= _falling(k, d)
            ne = tuple(k - d + x for k, d, x in zip(e, b, a))
            acc[ne] = acc.get(ne, 0) + w
    return Polynomial(f.nvars, acc)


def conjugate_by_permutation(sigma: Permutation, D: DifferentialOperator) -> DifferentialOperator:
    """``sigma o D o sigma^-1``: relabel ``x_j, d_j`` as ``x_sigma(j), d_sigma(j)``."""
    n = D.nvars
    out = {}
    for (a, b), c in D.terms.items():
        na = [0] * n
        nb = [0] * n
        for j in range(n):
            na[sigma.images[j] - 1] = a[j]
            nb[sigma.images[j] - 1] = b[j]
        out[(tuple(na), tuple(nb))] = c
    return DifferentialOperator(n, out)


def invariant_derivation(block: BlockStructure, i: int, k: int, max_degree: int = 3) -> DifferentialOperator:
    """``sum_{j in block i} x_j^k d_j``."""
    if not 0 <= k <= max_degree:
        raise ValueError(f"k={k} outside 0..{max_degree}")
    D = sum_operators(block.n, (power_derivation(block.n, j, k) for j in block.block_range(i)))
    if not commutes_with_group(D, group_generators(block), samples=0):
        raise FalsificationError("invariant_derivation", {"blocks": str(block), "i": i, "k": k})
    return D


def block_laplacian(block: BlockStructure, i: int) -> DifferentialOperator:
    """``sum_{j in block i} d_j^2`` (second order, invariant)."""
    return sum_operators(block.n, (DifferentialOperator.partial(block.n, j, 2) for j in block.block_range(i)))


def derivation_family(block: BlockStructure, max_k: int = 3) -> list[tuple[str, DifferentialOperator]]:
    """Identity plus ``sum_j x_j^k d_j`` for every block and every ``k <= max_k``."""
    out = [("id", DifferentialOperator.identity(block.n))]
    for i in range(block.r):
        for k in range(max_k + 1):
            out.append((f"B{i + 1}:x^{k}d", invariant_derivation(block, i, k, max_k)))
    return out


def random_derivations(block: BlockStructure, count: int, seed: int = 0,
                       max_k: int = 3) -> list[tuple[str, DifferentialOperator]]:
    """Random rational combinations of the block power derivations."""
    rng = random.Random(seed)
    base = [op for name, op in derivation_family(block, max_k) if name != "id"]
    out = []
    for t in range(count):
        coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in base]
        D = sum_operators(block.n, (op.scale(c) for op, c in zip(base, coeffs)))
        out.append((f"rand{seed}:{t}", D))
    return out


def random_polynomial(nvars: int, max_degree: int, rng: random.Random, max_terms: int = 6) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_degree)
        e = [0] * nvars
        for _ in range(d):
            e[rng.randrange(nvars)] += 1
        terms[tuple(e)] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return Polynomial(nvars, terms)


def commutes_with_group(D: DifferentialOperator, gens: Sequence[Permutation],
                        samples: int = 5, seed: int = 0) -> bool:
    """Conjugation test on every generator, plus sampled action checks."""
    if any(conjugate_by_permutation(g, D) != D for g in gens):
        return False
    rng = random.Random(seed)
    for _ in range(samples):
        f = random_polynomial(D.nvars, 3, rng)
        for g in gens:
            if apply_operator(D, permute(g, f)) != permute(g, apply_operator(D, f)):
                return False
    return True


def divisibility_witness(D: DifferentialOperator, key: HigherSpechtKey) -> Polynomial | None:
    """``G`` with ``D(F_T^S) = F_T * G``; ``None`` when the image is zero.

    ``F_T`` is the higher Specht polynomial of ``T`` with the row-filled
    tableau.  Raises :class:`FalsificationError` if ``F_T`` does not divide
    the image or ``G`` is not invariant under the column stabilizer of ``T``.
    """
    image = apply_operator(D, key_polynomial(key))
    if image.is_zero():
        return None
    instance = {**key.describe(), "D": str(D)}
    G = exact_divide(image, canonical_specht(key.T))
    if G is None:
        raise FalsificationError("divisibility", instance, f"D(F)={image}")
    if not is_invariant(G, column_generators(key.T)):
        raise FalsificationError("column_invariance", instance, f"G={G}")
    return G


@dataclass
class ImageModuleReport:
    instance: dict
    status: str  # "pass" | "fail" | "skip"
    detail: str = ""
    images: list[Polynomial] | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def image_module_check(D: DifferentialOperator, diagram: MultiDiagram, S=None) -> ImageModuleReport:
    """Images ``D(F_T^S)`` are independent and ``F_T^S -> D(F_T^S)`` commutes with the group."""
    basis = module_basis(diagram, S)
    instance = {**basis.instance(), "D": str(D)}
    images = [apply_operator(D, v) for v in basis.vectors]
    zero = [str(T) for T, img in zip(basis.tableaux, images) if img.is_zero()]
    if zero:
        return ImageModuleReport(instance, "skip", f"zero image at T={zero[0]}", images)
    try:
        image_basis = PolynomialBasis(images)
    except RankDefect as exc:
        return ImageModuleReport(instance, "fail", f"images dependent: {exc}", images)
    for g in group_generators(diagram.block):
        for j, v in enumerate(basis.vectors):
            coords = basis.coordinates(permute(g, v))
            expected = Polynomial.zero(diagram.block.n)
            for c, img in zip(coords, images):
                if c:
                    expected = expected + img.scale(c)
            if permute(g, images[j]) != expected:
                return ImageModuleReport(
                    {**instance, "T": str(basis.tableaux[j]), "g": str(g)}, "fail",
                    "g.D(v) differs from D(g.v)", images)
            if image_basis.coordinates(permute(g, images[j])) is None:
                return ImageModuleReport(instance, "fail", "image span not group-stable", images)
    return ImageModuleReport(instance, "pass", images=images)

