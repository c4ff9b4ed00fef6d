"""Acceptance criteria 1-9.

Each test prints one PASS/FAIL line with its runtime and time budget; run with
``pytest tests/test_acceptance.py -s`` (the lines are printed even without -s).
All checks are exact rational identities: zero tolerance.
"""

import time

import pytest

from hspecht.combinatorics import BlockStructure, enumerate_r_diagrams, f_lambda, index_tableau
from hspecht.decomp import graded_rank_series, q_factorial, series_mul
from hspecht.verify import (
    GOLDEN_INDEX,
    GOLDEN_T,
    Bounds,
    suite_basis,
    suite_divisibility,
    suite_freeness,
    suite_idempotent,
    suite_images,
    suite_one_dim,
    suite_resolution,
)

from conftest import blocks_up_to, compositions

BLOCKS_N5 = blocks_up_to(5)


class Criterion:
    def __init__(self, number, title, budget, capsys):
        self.number, self.title, self.budget, self.capsys = number, title, budget, capsys
        self.failures = []

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)

    def absorb(self, report):
        for r in report.failures:
            self.failures.append(f"{r.check} {r.instance} {r.witness}")

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is not None:
            self.failures.append(f"raised {exc_type.__name__}: {exc}")
        if elapsed > self.budget:
            self.failures.append(f"runtime {elapsed:.1f}s exceeds {self.budget}s")
        status = "PASS" if not self.failures else "FAIL"
        with self.capsys.disabled():
            print(f"\n[criterion {self.number}] {status} {self.title} ({elapsed:.2f}s / budget {self.budget}s)")
            for f in self.failures[:5]:
                print(f"    {f}")
        assert not self.failures, self.failures[:5]
        return False


def test_criterion_1_golden_index_tableau(capsys):
    with Criterion(1, "golden index tableau, blocks (5,3)", 1, capsys) as c:
        got = index_tableau(GOLDEN_T)
        c.check(got == GOLDEN_INDEX, f"got {got}")
        c.check(got == (((0, 2, 3), (1, 4)), ((1, 4), (2,))), "literal mismatch")


def test_criterion_2_idempotency(capsys):
    structures = [BlockStructure(t) for n in range(1, 9) for t in compositions(n) if max(t) <= 4 and (n <= 6 or len(t) <= 2)]
    with Criterion(2, f"idempotency and cross-shape vanishing, {len(structures)} structures with n_i <= 4", 30,
                   capsys) as c:
        for block in structures:
            c.absorb(suite_idempotent(block))


@pytest.mark.slow
def test_criterion_3_irreducible_bases(capsys):
    with Criterion(3, "bases, stability, dimension, <chi,chi>=1 for n <= 5", 300, capsys) as c:
        for block in BLOCKS_N5:
            rep = suite_basis(block)
            c.absorb(rep)
            c.check(any(r.check == "irreducible" for r in rep.records), f"no records for {block}")


@pytest.mark.slow
def test_criterion_4_divisibility(capsys):
    with Criterion(4, "D(F_T^S) = F_T * G with column-invariant G, n <= 5", 300, capsys) as c:
        for block in BLOCKS_N5:
            c.absorb(suite_divisibility(block, Bounds(random_ops=20)))


@pytest.mark.slow
def test_criterion_5_image_modules(capsys):
    with Criterion(5, "images of invariant operators: independent and intertwining, n <= 5", 300, capsys) as c:
        for block in BLOCKS_N5:
            c.absorb(suite_images(block, Bounds(random_ops=20)))


@pytest.mark.slow
def test_criterion_6_freeness(capsys):
    with Criterion(6, "graded rank = prod [n_i]_q!, 100 exact round trips per structure, n <= 5", 600,
                   capsys) as c:
        expected3 = [1, 2, 2, 1]
        c.check(graded_rank_series(BlockStructure.of(3)) == expected3, "blocks (3) series")
        for block in BLOCKS_N5:
            expected = [1]
            for v in block.type_vector:
                expected = series_mul(expected, q_factorial(v))
            c.check(graded_rank_series(block) == expected, f"series mismatch for {block}")
            c.absorb(suite_freeness(block, Bounds(samples=100, max_degree=4)))


def test_criterion_7_counting(capsys):
    cases = {(2, 1): 2, (2, 2): 4, (3, 2): 12, (2, 2, 1): 4}
    with Criterion(7, "sum of (f^lambda)^2 = prod n_i!", 10, capsys) as c:
        for t, expected in cases.items():
            block = BlockStructure(t)
            total = sum(f_lambda(lam) ** 2 for lam in enumerate_r_diagrams(block))
            c.check(total == expected == block.group_order(), f"{t}: {total} != {expected}")


@pytest.mark.slow
def test_criterion_8_one_dimensionality(capsys):
    with Criterion(8, "rank of e_T on V^{S_0}(lambda) is 1, n <= 5", 60, capsys) as c:
        for block in BLOCKS_N5:
            rep = suite_one_dim(block)
            c.absorb(rep)
            c.check(bool(rep.records), f"no records for {block}")


def test_criterion_9_idempotent_resolution(capsys):
    with Criterion(9, "sum of e_T over NST equals 1 for (2),(3),(2,1),(2,2)", 60, capsys) as c:
        for t in [(2,), (3,), (2, 1), (2, 2)]:
            rep = suite_resolution(BlockStructure(t))
            c.absorb(rep)
            sums = [r for r in rep.records if r.check == "sum_to_identity"]
            c.check(len(sums) == 1 and sums[0].status == "pass", f"{t}: sum_to_identity")
