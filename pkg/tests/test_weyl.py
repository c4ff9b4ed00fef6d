import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hspecht.combinatorics import BlockStructure, MultiDiagram, canonical_multitableau, enumerate_r_diagrams
from hspecht.groupalg import group_generators
from hspecht.permutation import Permutation
from hspecht.polyalg import Polynomial, exact_divide, permute
from hspecht.report import FalsificationError
from hspecht.specht import HigherSpechtKey, all_keys, canonical_specht, higher_specht, index_sources
from hspecht.weyl import (
    DifferentialOperator,
    apply_operator,
    block_laplacian,
    commutes_with_group,
    conjugate_by_permutation,
    derivation_family,
    divisibility_witness,
    format_operator,
    image_module_check,
    invariant_derivation,
    parse_operator,
    random_derivations,
    random_polynomial,
)

from conftest import blocks_up_to

N = 3
D = DifferentialOperator
x = [None] + [Polynomial.var(N, i) for i in (1, 2, 3)]

exps = st.tuples(*[st.integers(0, 2)] * N)
operators = st.dictionaries(st.tuples(exps, exps), st.integers(-3, 3), max_size=3).map(lambda t: D(N, t))
polys = st.dictionaries(st.tuples(*[st.integers(0, 3)] * N), st.fractions(-4, 4, max_denominator=3),
                        max_size=4).map(lambda t: Polynomial(N, t))
perms = st.permutations([1, 2, 3]).map(Permutation)


def test_apply_examples():
    assert apply_operator(D.partial(N, 1), x[1] ** 2) == x[1].scale(2)
    f = x[1] ** 2 * x[2] + x[2] * x[3] * x[1] - x[3] ** 3
    assert apply_operator(D.euler(N), f) == f.scale(3)
    y1, y2 = Polynomial.var(2, 1), Polynomial.var(2, 2)
    assert apply_operator(D.partial(2, 1) + D.partial(2, 2), (y2 - y1).scale(Fraction(1, 2))).is_zero()


def test_conjugation_examples():
    s12 = Permutation.from_cycles(2, (1, 2))
    assert conjugate_by_permutation(s12, D.partial(2, 1)) == D.partial(2, 2)
    euler = D.euler(3)
    assert all(conjugate_by_permutation(Permutation(p), euler) == euler
               for p in [(2, 1, 3), (3, 1, 2), (2, 3, 1)])
    assert conjugate_by_permutation(s12, parse_operator("x1*d2", 2)) == parse_operator("x2*d1", 2)


def test_invariant_derivation_examples():
    b2 = BlockStructure.of(2)
    assert invariant_derivation(b2, 0, 0) == D.partial(2, 1) + D.partial(2, 2)
    assert invariant_derivation(b2, 0, 1) == D.euler(2)
    b3 = BlockStructure.of(3)
    assert invariant_derivation(b3, 0, 2) == parse_operator("x1^2*d1 + x2^2*d2 + x3^2*d3", 3)
    with pytest.raises(ValueError):
        invariant_derivation(b3, 0, 4)


def test_commutes_with_group_examples():
    b3 = BlockStructure.of(3)
    gens = group_generators(b3)
    assert commutes_with_group(D.euler(3), gens)
    assert not commutes_with_group(D.partial(2, 1), group_generators(BlockStructure.of(2)))
    assert commutes_with_group(invariant_derivation(b3, 0, 2), gens)
    assert commutes_with_group(block_laplacian(b3, 0), gens)


@settings(max_examples=50)
@given(polys)
def test_canonical_commutation_relation(f):
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            di, xj = D.partial(N, i), D.multiplication(x[j])
            commutator = di * xj - xj * di
            expected = f if i == j else Polynomial.zero(N)
            assert apply_operator(commutator, f) == expected


@settings(max_examples=50)
@given(operators, operators, polys)
def test_composition_matches_sequential_application(a, b, f):
    assert apply_operator(a * b, f) == apply_operator(a, apply_operator(b, f))


@settings(max_examples=50)
@given(operators, operators, operators)
def test_composition_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=50)
@given(perms, perms, operators)
def test_conjugation_is_action(s, t, op):
    assert conjugate_by_permutation(s, conjugate_by_permutation(t, op)) == conjugate_by_permutation(s * t, op)


@settings(max_examples=50)
@given(perms, operators, polys)
def test_conjugation_intertwines_application(s, op, f):
    conj = conjugate_by_permutation(s, op)
    assert apply_operator(conj, permute(s, f)) == permute(s, apply_operator(op, f))


@settings(max_examples=50)
@given(st.lists(st.tuples(st.integers(1, 3), st.integers(0, 3), st.integers(-3, 3)), max_size=4), polys, polys)
def test_derivations_satisfy_leibniz(parts, f, g):
    op = D(N, {})
    for j, k, c in parts:
        a, b = [0] * N, [0] * N
        a[j - 1], b[j - 1] = k, 1
        op = op + D(N, {(tuple(a), tuple(b)): c})
    assert apply_operator(op, f * g) == apply_operator(op, f) * g + f * apply_operator(op, g)


def test_format_parse_round_trip():
    text = "x1^2*d1 - 1/2*x2*d2^2 + 3"
    op = parse_operator(text, 2)
    assert parse_operator(format_operator(op), 2) == op
    assert str(D(2, {})) == "0"
    for bad in ["", "x1*e2", "d3", "x1 x2"]:
        with pytest.raises(ValueError):
            parse_operator(bad, 2)


def test_divisibility_examples():
    b2 = BlockStructure.of(2)
    lam = MultiDiagram(((1, 1),), b2)
    T = canonical_multitableau(lam)
    key = HigherSpechtKey(lam, T, T)
    assert divisibility_witness(D.partial(2, 1) + D.partial(2, 2), key) is None
    G = divisibility_witness(D.euler(2), key)
    assert G == Polynomial.one(2)
    # x^2 d applied to (x2 - x1)/2 gives (x2^2 - x1^2)/2 = F_T * (x1 + x2)
    G = divisibility_witness(invariant_derivation(b2, 0, 2), key)
    y1, y2 = Polynomial.var(2, 1), Polynomial.var(2, 2)
    assert G == y1 + y2


@pytest.mark.parametrize("block", blocks_up_to(4), ids=str)
def test_euler_witness_is_degree_times_quotient(block):
    euler = D.euler(block.n)
    for key in all_keys(block):
        F = higher_specht(key.T, key.S)
        G = divisibility_witness(euler, key)
        if F.degree() == 0:
            assert G is None
            continue
        assert G == exact_divide(F, canonical_specht(key.T)).scale(F.degree())


def test_divisibility_failure_is_reported():
    # d3 alone does not commute with S_3, so nothing forces F_T to divide its image
    b3 = BlockStructure.of(3)
    lam = MultiDiagram(((2, 1),), b3)
    T = canonical_multitableau(lam)
    key = HigherSpechtKey(lam, T, T)
    with pytest.raises(FalsificationError) as info:
        divisibility_witness(D.partial(3, 3), key)
    assert info.value.check in ("divisibility", "column_invariance")


@pytest.mark.parametrize("block", blocks_up_to(4), ids=str)
def test_divisibility_family(block):
    ops = derivation_family(block) + random_derivations(block, 5, seed=3)
    for name, op in ops:
        for key in all_keys(block):
            divisibility_witness(op, key)


def test_image_module_examples():
    b3 = BlockStructure.of(3)
    hook = MultiDiagram(((2, 1),), b3)
    assert image_module_check(D.identity(3), hook).passed
    assert image_module_check(D.euler(3), hook).passed
    b2 = BlockStructure.of(2)
    sign = MultiDiagram(((1, 1),), b2)
    rep = image_module_check(invariant_derivation(b2, 0, 2), sign)
    y1, y2 = Polynomial.var(2, 1), Polynomial.var(2, 2)
    assert rep.passed and rep.images == [(y2 ** 2 - y1 ** 2).scale(Fraction(1, 2))]
    assert permute(Permutation.from_cycles(2, (1, 2)), rep.images[0]) == -rep.images[0]
    assert image_module_check(D.partial(2, 1) + D.partial(2, 2), sign).status == "skip"


def test_image_module_detects_non_intertwiner():
    b2 = BlockStructure.of(2)
    triv = MultiDiagram(((2,),), b2)
    rep = image_module_check(D.multiplication(Polynomial.var(2, 1)), triv)
    assert rep.status == "fail"


@pytest.mark.parametrize("block", blocks_up_to(4), ids=str)
def test_image_modules_with_laplacian(block):
    ops = derivation_family(block) + [("lap", block_laplacian(block, i)) for i in range(block.r)]
    for name, op in ops:
        for lam in enumerate_r_diagrams(block):
            for S in index_sources(lam):
                assert image_module_check(op, lam, S).status in ("pass", "skip")


def test_random_polynomial_is_deterministic():
    a = random_polynomial(3, 4, random.Random(1))
    b = random_polynomial(3, 4, random.Random(1))
    assert a == b and a.degree() <= 4
