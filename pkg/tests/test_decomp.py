import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hspecht.combinatorics import BlockStructure, MultiDiagram, canonical_multitableau, enumerate_NST, enumerate_r_diagrams
from hspecht.decomp import (
    block_q_factorial,
    counting_identity,
    decompose,
    decomposer,
    full_entry_reading,
    graded_rank_series,
    invariant_hilbert_series,
    invariant_monomial_basis,
    isotypic_projection,
    multiplicity_table,
    one_dimensionality_check,
    q_factorial,
)
from hspecht.groupalg import group_elements, group_generators
from hspecht.linalg import poly_rank
from hspecht.polyalg import Polynomial, group_average, is_invariant, monomials_of_degree, parse_poly
from hspecht.specht import key_polynomial
from hspecht.weyl import apply_operator, derivation_family, random_polynomial

from conftest import blocks_up_to


def v(n, i):
    return Polynomial.var(n, i)


def test_q_factorial():
    assert q_factorial(0) == [1]
    assert q_factorial(3) == [1, 2, 2, 1]
    assert block_q_factorial(BlockStructure.of(2, 2)) == [1, 2, 1]


def test_invariant_basis_examples():
    assert [len(b) for b in invariant_monomial_basis(BlockStructure.of(3), 0)] == [1]
    b2 = BlockStructure.of(2)
    basis = invariant_monomial_basis(b2, 2)
    assert [len(level) for level in basis] == [1, 1, 2]
    e1 = v(2, 1) + v(2, 2)
    e2 = v(2, 1) * v(2, 2)
    assert set(basis[2]) == {e1 * e1, e2}
    b11 = BlockStructure.of(1, 1)
    assert set(invariant_monomial_basis(b11, 1)[1]) == {v(2, 1), v(2, 2)}


@pytest.mark.parametrize("block", blocks_up_to(4), ids=str)
def test_invariant_basis_matches_hilbert_series(block):
    d = 4
    series = invariant_hilbert_series(block, d)
    gens = group_generators(block)
    elems = group_elements(block)
    for k, level in enumerate(invariant_monomial_basis(block, d)):
        assert len(level) == series[k]
        assert all(is_invariant(f, gens) and f.is_homogeneous() and f.degree() == k for f in level)
        assert poly_rank(level) == len(level)
        # the orbit sums of degree-k monomials span the same space
        orbit = {group_average(Polynomial.monomial(e), elems) for e in monomials_of_degree(block.n, k)}
        assert poly_rank(list(orbit)) == len(level)


def test_graded_rank_examples():
    assert graded_rank_series(BlockStructure.of(1, 1)) == [1]
    assert graded_rank_series(BlockStructure.of(2, 1)) == [1, 1]
    assert graded_rank_series(BlockStructure.of(3)) == [1, 2, 2, 1]
    assert graded_rank_series(BlockStructure.of(3), upto=5) == [1, 2, 2, 1, 0, 0]


@pytest.mark.parametrize("block", blocks_up_to(5), ids=str)
def test_graded_rank_is_q_factorial(block):
    assert graded_rank_series(block) == block_q_factorial(block)
    assert counting_identity(block) == block.group_order()


def test_multiplicity_examples():
    for t, total in [((2, 1), 2), ((3, 2), 12), ((2, 2, 1), 4), ((2, 2), 4)]:
        table = multiplicity_table(BlockStructure(t))
        assert sum(f * f for f, _ in table.values()) == total
        assert all(f == nst for f, nst in table.values())
    with pytest.raises(ValueError):
        multiplicity_table(BlockStructure.of(6), bound=100)


def test_full_entry_reading_overcounts():
    info = full_entry_reading(BlockStructure.of(1, 1))
    assert info["generators"] == 2 and info["free_rank"] == 1


def test_decompose_constant():
    b = BlockStructure.of(2, 1)
    result = decompose(Polynomial.one(3), b)
    assert len(result.coefficients) == 1
    (key, g), = result.coefficients.items()
    assert g == Polynomial.one(3)
    assert key.diagram.components == ((2,), (1,))
    assert key.T == key.S == canonical_multitableau(key.diagram)


def test_decompose_x1_blocks_2():
    b = BlockStructure.of(2)
    result = decompose(v(2, 1), b)
    by_shape = {k.diagram.components: g for k, g in result.coefficients.items()}
    assert by_shape[((2,),)] == (v(2, 1) + v(2, 2)).scale(Fraction(1, 2))
    assert by_shape[((1, 1),)] == Polynomial.constant(2, -1)
    assert result.reconstruct() == v(2, 1)


def dense_oracle(f, block, max_degree):
    """Solve f = sum g_key F_key with g_key in the span of orbit sums, using sympy."""
    n = block.n
    elems = group_elements(block)
    invariants = []
    for d in range(max_degree + 1):
        seen = set()
        for e in monomials_of_degree(n, d):
            o = group_average(Polynomial.monomial(e), elems)
            if o not in seen:
                seen.add(o)
                invariants.append(o)
    columns = []
    for key in decomposer(block).keys:
        F = key_polynomial(key)
        for m in invariants:
            if F.degree() + m.degree() <= max_degree:
                columns.append((key, m, F * m))
    rows = [e for d in range(max_degree + 1) for e in monomials_of_degree(n, d)]
    A = sympy.Matrix([[sympy.Rational(c[2].coeff(e).numerator, c[2].coeff(e).denominator) for c in columns]
                      for e in rows])
    b = sympy.Matrix([sympy.Rational(f.coeff(e).numerator, f.coeff(e).denominator) for e in rows])
    assert A.rank() == len(columns)
    sol, params = A.gauss_jordan_solve(b)
    assert params.shape[0] == 0
    out = {}
    for (key, m, _), c in zip(columns, sol):
        c = Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
        if c:
            out[key] = out.get(key, Polynomial.zero(n)) + m.scale(c)
    return {k: g for k, g in out.items() if g}


def test_decompose_x1x3_against_dense_oracle():
    b = BlockStructure.of(2, 1)
    f = v(3, 1) * v(3, 3)
    result = decompose(f, b)
    assert result.reconstruct() == f
    assert result.coefficients == dense_oracle(f, b, 2)


@pytest.mark.parametrize("t", [(2, 1), (3,), (2, 2)])
def test_decompose_random_against_dense_oracle(t):
    block = BlockStructure(t)
    rng = random.Random(11)
    for _ in range(3):
        f = random_polynomial(block.n, 3, rng)
        assert decompose(f, block).coefficients == dense_oracle(f, block, 3)


@pytest.mark.parametrize("block", blocks_up_to(4), ids=str)
def test_round_trip_and_certificates(block):
    dec = decomposer(block)
    gens = group_generators(block)
    for d in range(4):
        cert = dec.system(d).certificate
        assert cert["rank"] == cert["rows"] == cert["columns"]
    rng = random.Random(5)
    for _ in range(20):
        f = random_polynomial(block.n, 3, rng)
        result = dec.decompose(f)
        assert result.reconstruct() == f
        assert all(is_invariant(g, gens) for g in result.coefficients.values())


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.tuples(*[st.integers(0, 2)] * 3), st.fractions(-5, 5, max_denominator=5), max_size=5))
def test_decompose_is_linear(terms):
    block = BlockStructure.of(2, 1)
    f = Polynomial(3, terms)
    g = parse_poly("x1^2 - 2*x2*x3 + 1/3", 3)
    a, b, c = decompose(f, block), decompose(g, block), decompose(f + g, block)
    keys = set(a.coefficients) | set(b.coefficients) | set(c.coefficients)
    zero = Polynomial.zero(3)
    for k in keys:
        assert c.coefficients.get(k, zero) == a.coefficients.get(k, zero) + b.coefficients.get(k, zero)


def test_decompose_ambient_mismatch():
    with pytest.raises(ValueError):
        decompose(v(2, 1), BlockStructure.of(2, 1))


def test_isotypic_examples():
    b2 = BlockStructure.of(2)
    triv = MultiDiagram(((2,),), b2)
    sign = MultiDiagram(((1, 1),), b2)
    x1 = v(2, 1)
    assert isotypic_projection(triv, x1) == group_average(x1, group_elements(b2))
    p = isotypic_projection(sign, x1)
    assert p == (v(2, 1) - v(2, 2)).scale(Fraction(1, 2))
    assert isotypic_projection(sign, p) == p
    assert isotypic_projection(triv, p).is_zero()
    support = {k.diagram for k in decompose(p, b2).coefficients}
    assert support == {sign}


@pytest.mark.parametrize("t", [(3,), (2, 1), (2, 2)])
def test_isotypic_projectors(t):
    block = BlockStructure(t)
    rng = random.Random(2)
    diagrams = enumerate_r_diagrams(block)
    ops = [op for _, op in derivation_family(block)]
    for _ in range(3):
        f = random_polynomial(block.n, 3, rng)
        parts = {lam: isotypic_projection(lam, f) for lam in diagrams}
        assert sum(parts.values(), Polynomial.zero(block.n)) == f
        for lam, p in parts.items():
            assert isotypic_projection(lam, p) == p
            for mu in diagrams:
                if mu != lam:
                    assert isotypic_projection(mu, p).is_zero()
            if p:
                assert {k.diagram for k in decompose(p, block).coefficients} == {lam}
            for op in ops:
                assert isotypic_projection(lam, apply_operator(op, f)) == apply_operator(op, p)


@pytest.mark.parametrize("block", blocks_up_to(4), ids=str)
def test_one_dimensionality(block):
    for lam in enumerate_r_diagrams(block):
        for T in enumerate_NST(lam):
            assert one_dimensionality_check(lam, T) == 1


def test_result_json():
    data = decompose(v(2, 1), BlockStructure.of(2)).to_json()
    assert data["input"] == "x1"
    assert len(data["generators"]) == len(data["coefficients"]) == 2
