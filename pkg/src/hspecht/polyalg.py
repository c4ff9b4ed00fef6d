"""Sparse multivariate polynomials over Q in a fixed number of variables.

Text grammar (used by the CLI and in test goldens)::

    -3/2*x1^2*x2 + x3 - 1

Terms print in graded lexicographic order, highest first, with
``x1 > x2 > ... > xn``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from hspecht.permutation import Permutation

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


class Polynomial:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] | None = None):
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
            if c:
                clean[tuple(exp)] = Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> Polynomial:
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: Scalar) -> Polynomial:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> Polynomial:
        return cls.constant(nvars, 1)

    @classmethod
    def var(cls, nvars: int, i: int) -> Polynomial:
        """The variable ``x_i`` (1-based)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"x{i} outside x1..x{nvars}")
        exp = [0] * nvars
        exp[i - 1] = 1
        return cls._raw(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Sequence[int], c: Scalar = 1) -> Polynomial:
        return cls(len(exp), {tuple(exp): c})

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_parts(self) -> dict[int, Polynomial]:
        parts: dict[int, dict[Exponent, Fraction]] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: Polynomial._raw(self.nvars, t) for d, t in sorted(parts.items())}

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-v for v in t[0])))

    def leading_term(self) -> tuple[Exponent, Fraction]:
        """Lexicographically largest term."""
        e = max(self.terms)
        return e, self.terms[e]

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: Polynomial) -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"ambient mismatch: {self.nvars} vs {other.nvars} variables")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def scale(self, c: Scalar) -> Polynomial:
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial._raw(self.nvars, out)

    def __rmul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, c: Scalar) -> Polynomial:
        if isinstance(c, Polynomial):
            q = exact_divide(self, c)
            if q is None:
                raise ArithmeticError("not divisible")
            return q
        return self.scale(Fraction(1) / Fraction(c))

    def __pow__(self, k: int) -> Polynomial:
        result = Polynomial.one(self.nvars)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= Fraction(x) ** k
            total += term
        return total

    def diff(self, i: int, order: int = 1) -> Polynomial:
        """Partial derivative with respect to ``x_i`` (1-based)."""
        out: dict[Exponent, Fraction] = {}
        j = i - 1
        for e, c in self.terms.items():
            k = e[j]
            if k < order:
                continue
            factor = 1
            for t in range(order):
                factor *= k - t
            ne = e[:j] + (k - order,) + e[j + 1:]
            out[ne] = out.get(ne, 0) + c * factor
        return Polynomial(self.nvars, out)

    # -- serialization ------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {format_poly(self)!r})"

    def to_json(self) -> list[dict]:
        return [{"exponents": list(e), "coeff": _frac_str(c)} for e, c in self.sorted_terms()]


def poly_from_json(nvars: int, data: Iterable[dict]) -> Polynomial:
    return Polynomial(nvars, {tuple(t["exponents"]): Fraction(t["coeff"]) for t in data})


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _monomial_str(e: Exponent) -> str:
    parts = []
    for i, k in enumerate(e, start=1):
        if k == 1:
            parts.append(f"x{i}")
        elif k > 1:
            parts.append(f"x{i}^{k}")
    return "*".join(parts)


def format_poly(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for idx, (e, c) in enumerate(p.sorted_terms()):
        mono = _monomial_str(e)
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_frac_str(mag)}*{mono}"
        else:
            body = _frac_str(mag)
        if idx == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_poly(text: str, nvars: int) -> Polynomial:
    """Parse the text grammar; raises ``ValueError`` naming the bad token."""
    src = text.strip()
    if not src:
        raise ValueError("empty polynomial")
    result: dict[Exponent, Fraction] = {}
    pos = 0
    first = True
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or (m.group(1) is None and not first):
            raise ValueError(f"cannot parse polynomial near {src[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(sign)
        exp = [0] * nvars
        for factor in m.group(2).strip().split("*"):
            factor = factor.strip()
            fm = re.fullmatch(r"x(\d+)(?:\^(\d+))?", factor)
            if fm:
                i = int(fm.group(1))
                if not 1 <= i <= nvars:
                    raise ValueError(f"variable {factor!r} outside x1..x{nvars}")
                exp[i - 1] += int(fm.group(2) or 1)
            elif re.fullmatch(r"\d+(?:/\d+)?", factor):
                coeff *= Fraction(factor)
            else:
                raise ValueError(f"bad token {factor!r} in polynomial")
        e = tuple(exp)
        result[e] = result.get(e, 0) + coeff
        pos = m.end()
        first = False
    return Polynomial(nvars, result)


# --- group action and divisibility ----------------------------------------

def permute(sigma: Permutation, f: Polynomial) -> Polynomial:
    """``(sigma f)(x_1..x_n) = f(x_sigma(1), ..., x_sigma(n))``.

    The variable ``x_j`` is replaced by ``x_sigma(j)``, so
    ``permute(s, permute(t, f)) == permute(s * t, f)``.
    """
    if sigma.n != f.nvars:
        raise ValueError("permutation degree differs from number of variables")
    img = sigma.images
    n = f.nvars
    out = {}
    for e, c in f.terms.items():
        ne = [0] * n
        for j, k in enumerate(e):
            if k:
                ne[img[j] - 1] = k
        out[tuple(ne)] = c
    return Polynomial._raw(n, out)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial | None:
    """Quotient ``q`` with ``f == g * q``, or ``None`` if ``g`` does not divide ``f``."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lg, cg = g.leading_term()
    rest = [(e, c) for e, c in g.terms.items() if e != lg]
    rem = dict(f.terms)
    quot: dict[Exponent, Fraction] = {}
    while rem:
        lr = max(rem)
        if any(a < b for a, b in zip(lr, lg)):
            return None
        qe = tuple(a - b for a, b in zip(lr, lg))
        qc = rem.pop(lr) / cg
        quot[qe] = qc
        for e, c in rest:
            t = tuple(a + b for a, b in zip(e, qe))
            v = rem.get(t, 0) - c * qc
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return Polynomial._raw(f.nvars, quot)


def is_invariant(f: Polynomial, gens: Iterable[Permutation]) -> bool:
    return all(permute(g, f) == f for g in gens)


def group_average(f: Polynomial, elements: Sequence[Permutation]) -> Polynomial:
    total = Polynomial.zero(f.nvars)
    for g in elements:
        total = total + permute(g, f)
    return total.scale(Fraction(1, len(elements)))


def vandermonde(nvars: int, indices: Sequence[int]) -> Polynomial:
    """``prod_{a<b} (x_a - x_b)`` over the given variable indices, in order."""
    out = Polynomial.one(nvars)
    for p, a in enumerate(indices):
        for b in indices[p + 1:]:
            out = out * (Polynomial.var(nvars, a) - Polynomial.var(nvars, b))
    return out


def block_vandermonde(block, i: int) -> Polynomial:
    """Vandermonde product over the variables of block ``i``."""
    return vandermonde(block.n, list(block.block_range(i)))


def full_vandermonde(block) -> Polynomial:
    out = Polynomial.one(block.n)
    for i in range(block.r):
        out = out * block_vandermonde(block, i)
    return out


def monomials_of_degree(nvars: int, d: int) -> list[Exponent]:
    """All exponent vectors of total degree ``d``, lexicographically decreasing."""
    if nvars == 0:
        return [()] if d == 0 else []
    if nvars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        out.extend((first,) + rest for rest in monomials_of_degree(nvars - 1, d - first))
    return out
