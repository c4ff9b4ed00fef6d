"""Verification suites shared by the ``verify`` subcommand and the acceptance tests.

Each suite takes a block structure and returns a :class:`Report` whose
records name the instance precisely enough to re-run it alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from hspecht.combinatorics import (
    BlockStructure,
    MultiTableau,
    Tableau,
    enumerate_NST,
    enumerate_partitions,
    enumerate_r_diagrams,
    enumerate_standard_tableaux,
    index_tableau,
    word,
)
from hspecht.decomp import (
    counting_identity,
    decomposer,
    full_entry_reading,
    graded_rank_series,
    isotypic_projection,
    multiplicity_table,
    one_dimensionality_check,
)
from hspecht.groupalg import group_generators, idempotent_report, young_symmetrizer
from hspecht.polyalg import is_invariant
from hspecht.report import FalsificationError, Report
from hspecht.specht import (
    all_keys,
    character,
    character_inner,
    identify_tensor,
    index_sources,
    module_basis,
    proportionality_constant,
)
from hspecht.weyl import (
    apply_operator,
    block_laplacian,
    derivation_family,
    divisibility_witness,
    image_module_check,
    random_derivations,
    random_polynomial,
)

GOLDEN_BLOCKS = BlockStructure.of(5, 3)
GOLDEN_T = MultiTableau((Tableau(((1, 4, 6), (2, 7))), Tableau(((3, 8), (5,)))), GOLDEN_BLOCKS)
GOLDEN_INDEX = (((0, 2, 3), (1, 4)), ((1, 4), (2,)))


@dataclass(frozen=True)
class Bounds:
    max_n: int = 5
    max_degree: int = 4
    max_order: int = 720
    samples: int = 100
    random_ops: int = 20
    seed: int = 0

    CEILINGS = {"max_n": 7, "max_degree": 6, "max_order": 5040}

    def validate(self, block: BlockStructure) -> None:
        for name, ceiling in self.CEILINGS.items():
            if getattr(self, name) > ceiling:
                raise ValueError(f"--{name.replace('_', '-')} {getattr(self, name)} exceeds hard ceiling {ceiling}")
        if block.n > self.max_n:
            raise ValueError(f"n={block.n} exceeds --max-n {self.max_n}")
        if block.group_order() > self.max_order:
            raise ValueError(f"group order {block.group_order()} exceeds --max-order {self.max_order}")


def _guard(report: Report, fn: Callable[[], object]):
    try:
        return fn()
    except FalsificationError as exc:
        report.add(exc.check, exc.instance, False, str(exc.witness) if exc.witness is not None else None)
        return None


def suite_golden(block: BlockStructure | None = None, bounds: Bounds = Bounds()) -> Report:
    report = Report()
    got = index_tableau(GOLDEN_T)
    report.add("golden_index_tableau", {"T": str(GOLDEN_T), "word": list(word(GOLDEN_T))},
               got == GOLDEN_INDEX, [[list(r) for r in c] for c in got])
    return report


def suite_idempotent(block: BlockStructure, bounds: Bounds = Bounds()) -> Report:
    """Every single-block symmetrizer is idempotent; different shapes annihilate."""
    report = Report()
    for i, size in enumerate(block.type_vector):
        if size > 4:
            report.note("idempotent", {"blocks": str(block), "block": i + 1}, "block larger than 4 skipped", "skip")
            continue
        entries = list(block.block_range(i))
        tabs = [T for shape in enumerate_partitions(size) for T in enumerate_standard_tableaux(shape, entries)]
        elems = [young_symmetrizer(T, block) for T in tabs]
        for T, e in zip(tabs, elems):
            report.add("idempotent", {"blocks": str(block), "tableau": str(T)}, e * e == e)
        for T1, e1 in zip(tabs, elems):
            for T2, e2 in zip(tabs, elems):
                if T1.shape != T2.shape:
                    report.add("cross_shape_zero", {"blocks": str(block), "T1": str(T1), "T2": str(T2)},
                               (e1 * e2).is_zero())
    return report


def suite_resolution(block: BlockStructure, bounds: Bounds = Bounds()) -> Report:
    """Sum of all product symmetrizers against the identity; same-shape products documented."""
    report = Report()
    rep = idempotent_report(block, bounds.max_order)
    inst = {"blocks": str(block)}
    report.add("sum_to_identity", inst, rep.sums_to_identity)
    report.add("all_idempotent", inst, rep.all_idempotent)
    report.add("cross_shape_products_zero", inst, not rep.cross_shape_nonzero())
    pairs = [[str(rep.tableaux[a]), str(rep.tableaux[b])] for a, b in rep.same_shape_nonzero()]
    report.note("same_shape_nonzero_products", inst, pairs)
    return report


def suite_basis(block: BlockStructure, bounds: Bounds = Bounds()) -> Report:
    """Independence, closure, dimension and irreducibility for every (diagram, S)."""
    report = Report()
    for lam in enumerate_r_diagrams(block):
        for S in index_sources(lam):
            inst = {"blocks": str(block), "diagram": str(lam), "S": str(S)}
            basis = _guard(report, lambda: module_basis(lam, S))
            if basis is None:
                continue
            report.add("basis", inst, True, basis.dimension)
            chi = character(basis)
            norm = character_inner(chi, chi)
            report.add("irreducible", inst, norm == 1, str(norm))
    return report


def suite_inequivalent(block: BlockStructure, bounds: Bounds = Bounds()) -> Report:
    report = Report()
    chars = {lam: character(module_basis(lam)) for lam in enumerate_r_diagrams(block)}
    for a in chars:
        for b in chars:
            if a != b:
                ip = character_inner(chars[a], chars[b])
                report.add("orthogonal_characters", {"blocks": str(block), "lambda": str(a), "mu": str(b)},
                           ip == 0, str(ip))
    return report


def suite_tensor(block: BlockStructure, bounds: Bounds = Bounds()) -> Report:
    """Tensor factorization and proportionality to the classical Specht polynomial."""
    report = Report()
    for key in all_keys(block):
        ok = _guard(report, lambda: identify_tensor(key))
        if ok is not None:
            report.add("identify_tensor", key.describe(), True)
    for lam in enumerate_r_diagrams(block):
        for T in enumerate_NST(lam):
            inst = {"blocks": str(block), "diagram": str(lam), "T": str(T)}
            c = _guard(report, lambda: proportionality_constant(T))
            if c is not None:
                report.add("proportionality", inst, c != 0, str(c))
    return report


def operator_family(block: BlockStructure, bounds: Bounds = Bounds()):
    return derivation_family(block) + random_derivations(block, bounds.random_ops, bounds.seed)


def suite_divisibility(block: BlockStructure, bounds: Bounds = Bounds()) -> Report:
    """``F_T`` divides ``D(F_T^S)`` with a column-invariant quotient."""
    report = Report()
    keys = all_keys(block)
    for name, D in operator_family(block, bounds):
        for key in keys:
            inst = {**key.describe(), "D": name}
            try:
                G = divisibility_witness(D, key)
            except FalsificationError as exc:
                report.add(exc.check, {**inst, "op": str(D)}, False, str(exc.witness))
                continue
            report.add("divisibility", inst, True, "zero image" if G is None else None)
    # second-order invariant operators: outcome recorded, not asserted
    for i in range(block.r):
        D = block_laplacian(block, i)
        for key in keys:
            inst = {**key.describe(), "D": f"B{i + 1}:laplacian"}
            try:
                G = divisibility_witness(D, key)
                report.note("divisibility_second_order", inst, "zero image" if G is None else "divisible")
            except FalsificationError as exc:
                report.note("divisibility_second_order", inst, exc.check)
    return report


def suite_images(block: BlockStructure, bounds: Bounds = Bounds()) -> Report:
    """Images of module bases under invariant operators form isomorphic copies."""
    report = Report()
    ops = operator_family(block, bounds) + [(f"B{i + 1}:laplacian", block_laplacian(block, i))
                                           for i in range(block.r)]
    for name, D in ops:
        for lam in enumerate_r_diagrams(block):
            for S in index_sources(lam):
                res = image_module_check(D, lam, S)
                inst = {**res.instance, "D": name}
                if res.status == "skip":
                    report.note("image_module", inst, res.detail, "skip")
                else:
                    report.add("image_module", inst, res.passed, res.detail or None)
    return report


def suite_freeness(block: BlockStructure, bounds: Bounds = Bounds()) -> Report:
    """Graded rank identity, full-rank certificates and exact round trips."""
    report = Report()
    inst = {"blocks": str(block)}
    series = _guard(report, lambda: graded_rank_series(block))
    if series is not None:
        report.add("graded_rank", inst, True, series)
    dec = decomposer(block)
    for d in range(bounds.max_degree + 1):
        cert = _guard(report, lambda: dec.system(d).certificate)
        if cert is not None:
            report.add("full_column_rank", {**inst, "degree": d},
                       cert["rank"] == cert["columns"] == cert["rows"], cert)
    rng = random.Random(bounds.seed)
    gens = group_generators(block)
    bad = []
    for t in range(bounds.samples):
        f = random_polynomial(block.n, bounds.max_degree, rng)
        try:
            result = dec.decompose(f)
        except FalsificationError:
            bad.append(str(f))
            continue
        if result.reconstruct() != f or not all(is_invariant(g, gens) for g in result.coefficients.values()):
            bad.append(str(f))
    report.add("round_trip", {**inst, "samples": bounds.samples, "seed": bounds.seed, "max_degree": bounds.max_degree},
               not bad, bad[:3] or None)
    report.note("full_entry_reading", inst, full_entry_reading(block))
    return report


def suite_counting(block: BlockStructure, bounds: Bounds = Bounds()) -> Report:
    report = Report()
    inst = {"blocks": str(block)}
    table = _guard(report, lambda: multiplicity_table(block, bounds.max_order))
    if table is not None:
        total = sum(f * f for f, _ in table.values())
        report.add("sum_of_squares", inst, total == block.group_order(), total)
    count = counting_identity(block)
    report.add("generator_count", inst, count == block.group_order(), count)
    return report


def suite_one_dim(block: BlockStructure, bounds: Bounds = Bounds()) -> Report:
    report = Report()
    for lam in enumerate_r_diagrams(block):
        for T in enumerate_NST(lam):
            inst = {"blocks": str(block), "diagram": str(lam), "T": str(T)}
            r = _guard(report, lambda: one_dimensionality_check(lam, T))
            if r is not None:
                report.add("one_dimensional", inst, True, r)
    return report


def suite_isotypic(block: BlockStructure, bounds: Bounds = Bounds()) -> Report:
    """Central projectors: idempotent, mutually orthogonal, complete, commute with derivations."""
    report = Report()
    rng = random.Random(bounds.seed)
    diagrams = enumerate_r_diagrams(block)
    ops = derivation_family(block)[1:]
    for t in range(3):
        f = random_polynomial(block.n, min(bounds.max_degree, 3), rng)
        inst = {"blocks": str(block), "f": str(f)}
        projections = {lam: isotypic_projection(lam, f, bounds.max_order) for lam in diagrams}
        total = sum(projections.values(), f.scale(0))
        report.add("isotypic_complete", inst, total == f)
        for lam, p in projections.items():
            report.add("isotypic_idempotent", {**inst, "diagram": str(lam)},
                       isotypic_projection(lam, p, bounds.max_order) == p)
            for mu in diagrams:
                if mu != lam:
                    report.add("isotypic_orthogonal", {**inst, "diagram": str(lam), "mu": str(mu)},
                               isotypic_projection(mu, p, bounds.max_order).is_zero())
            support = {str(k.diagram) for k in decomposer(block).decompose(p).coefficients} if p else set()
            report.add("isotypic_support", {**inst, "diagram": str(lam)}, support <= {str(lam)}, sorted(support))
            for name, D in ops:
                report.add("isotypic_commutes", {**inst, "diagram": str(lam), "D": name},
                           isotypic_projection(lam, apply_operator(D, f), bounds.max_order)
                           == apply_operator(D, p))
    return report


SUITES: dict[str, Callable[..., Report]] = {
    "golden": suite_golden,
    "idempotent": suite_idempotent,
    "resolution": suite_resolution,
    "basis": suite_basis,
    "inequivalent": suite_inequivalent,
    "tensor": suite_tensor,
    "divisibility": suite_divisibility,
    "images": suite_images,
    "freeness": suite_freeness,
    "counting": suite_counting,
    "one-dim": suite_one_dim,
    "isotypic": suite_isotypic,
}


def run_suites(block: BlockStructure, names: list[str], bounds: Bounds = Bounds()) -> Report:
    bounds.validate(block)
    if "all" in names:
        names = list(SUITES)
    report = Report()
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {', '.join(['all', *SUITES])}")
        report.extend(SUITES[name](block, bounds))
    return report

