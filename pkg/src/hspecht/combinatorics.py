"""Partitions, r-diagrams, (multi-)tableaux, reading words and index tableaux.

Conventions used throughout the package:

* Blocks are numbered from 0 in the Python API.  Block ``i`` owns the
  consecutive integers ``block.block_range(i)``.
* Partitions are plain tuples of positive ints, weakly decreasing.
* The reading word of a multi-tableau reads every column bottom-to-top,
  columns left-to-right, components in block order.
* "k+1 lies to the right of k" means k+1 occupies a later word position.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, Sequence

from hspecht.permutation import Permutation, permutations_of

Partition = tuple[int, ...]


@dataclass(frozen=True)
class BlockStructure:
    """Type vector ``(n_1, ..., n_r)`` of a product of symmetric groups."""

    type_vector: tuple[int, ...]

    def __post_init__(self):
        tv = tuple(int(v) for v in self.type_vector)
        if not tv or any(v < 1 for v in tv):
            raise ValueError(f"block sizes must be positive integers, got {self.type_vector!r}")
        object.__setattr__(self, "type_vector", tv)

    @classmethod
    def of(cls, *sizes: int) -> BlockStructure:
        return cls(tuple(sizes))

    @property
    def n(self) -> int:
        return sum(self.type_vector)

    @property
    def r(self) -> int:
        return len(self.type_vector)

    def block_range(self, i: int) -> range:
        start = sum(self.type_vector[:i])
        return range(start + 1, start + self.type_vector[i] + 1)

    def ranges(self) -> list[range]:
        return [self.block_range(i) for i in range(self.r)]

    def block_of(self, k: int) -> int:
        for i, rng in enumerate(self.ranges()):
            if k in rng:
                return i
        raise ValueError(f"{k} is outside 1..{self.n}")

    def group_order(self) -> int:
        return prod(factorial(v) for v in self.type_vector)

    def __str__(self) -> str:
        return ",".join(map(str, self.type_vector))


def is_partition(parts: Sequence[int]) -> bool:
    return all(p > 0 for p in parts) and all(a >= b for a, b in zip(parts, parts[1:]))


def make_partition(parts: Sequence[int]) -> Partition:
    parts = tuple(int(p) for p in parts)
    if not parts or not is_partition(parts):
        raise ValueError(f"not a partition: {list(parts)}")
    return parts


def conjugate(shape: Partition) -> Partition:
    if not shape:
        return ()
    return tuple(sum(1 for p in shape if p > j) for j in range(shape[0]))


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in lexicographically decreasing order."""
    if n < 1:
        raise ValueError("n must be positive")

    def gen(remaining: int, largest: int) -> Iterator[Partition]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return list(gen(n, n))


@dataclass(frozen=True)
class MultiDiagram:
    components: tuple[Partition, ...]
    block: BlockStructure

    def __post_init__(self):
        comps = tuple(make_partition(c) for c in self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.block.r:
            raise ValueError(f"diagram has {len(comps)} components but {self.block.r} blocks")
        for i, (c, size) in enumerate(zip(comps, self.block.type_vector)):
            if sum(c) != size:
                raise ValueError(f"component {i} = {list(c)} is not a partition of {size}")

    def is_trivial(self) -> bool:
        return all(len(c) == 1 for c in self.components)

    def __str__(self) -> str:
        return "|".join("[" + ",".join(map(str, c)) + "]" for c in self.components)


def enumerate_r_diagrams(block: BlockStructure) -> list[MultiDiagram]:
    per_block = [enumerate_partitions(v) for v in block.type_vector]
    return [MultiDiagram(combo, block) for combo in itertools.product(*per_block)]


def trivial_diagram(block: BlockStructure) -> MultiDiagram:
    return MultiDiagram(tuple((v,) for v in block.type_vector), block)


@dataclass(frozen=True)
class Tableau:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or not is_partition([len(row) for row in rows]):
            raise ValueError(f"rows {rows} do not form a Young diagram")
        entries = [v for row in rows for v in row]
        if len(set(entries)) != len(entries):
            raise ValueError(f"repeated entries in tableau {rows}")

    @property
    def shape(self) -> Partition:
        return tuple(len(row) for row in self.rows)

    @property
    def size(self) -> int:
        return sum(self.shape)

    @property
    def entries(self) -> list[int]:
        return sorted(v for row in self.rows for v in row)

    @property
    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(row[j] for row in self.rows if len(row) > j) for j in range(len(self.rows[0]))]

    def is_standard(self) -> bool:
        rows_ok = all(a < b for row in self.rows for a, b in zip(row, row[1:]))
        cols_ok = all(a < b for col in self.columns for a, b in zip(col, col[1:]))
        return rows_ok and cols_ok

    def cells(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(row, col, entry)`` for every box."""
        for i, row in enumerate(self.rows):
            for j, v in enumerate(row):
                yield i, j, v

    def reading_word(self) -> tuple[int, ...]:
        """Columns bottom-to-top, left to right."""
        return tuple(v for col in self.columns for v in reversed(col))

    def row_word(self) -> tuple[int, ...]:
        return tuple(v for row in self.rows for v in row)

    def relabel(self, mapping: dict[int, int]) -> Tableau:
        return Tableau(tuple(tuple(mapping[v] for v in row) for row in self.rows))

    def __str__(self) -> str:
        return "[" + ",".join("[" + ",".join(map(str, row)) + "]" for row in self.rows) + "]"


@dataclass(frozen=True)
class MultiTableau:
    components: tuple[Tableau, ...]
    block: BlockStructure

    def __post_init__(self):
        comps = tuple(c if isinstance(c, Tableau) else Tableau(c) for c in self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.block.r:
            raise ValueError(f"{len(comps)} components for {self.block.r} blocks")
        entries = sorted(v for c in comps for v in c.entries)
        if entries != list(range(1, self.block.n + 1)):
            raise ValueError(f"entries must be exactly 1..{self.block.n}, got {entries}")
        for i, (c, size) in enumerate(zip(comps, self.block.type_vector)):
            if c.size != size:
                raise ValueError(f"component {i} has {c.size} boxes, block needs {size}")

    @property
    def diagram(self) -> MultiDiagram:
        return MultiDiagram(tuple(c.shape for c in self.components), self.block)

    def is_standard(self) -> bool:
        return all(c.is_standard() for c in self.components)

    def is_natural(self) -> bool:
        return all(c.entries == list(self.block.block_range(i)) for i, c in enumerate(self.components))

    def row_word(self) -> tuple[int, ...]:
        return tuple(v for c in self.components for v in c.row_word())

    def to_json(self) -> dict:
        return {"block": list(self.block.type_vector),
                "components": [[list(row) for row in c.rows] for c in self.components]}

    def __str__(self) -> str:
        return "|".join(str(c) for c in self.components)


def multitableau_from_json(data: dict) -> MultiTableau:
    block = BlockStructure(tuple(data["block"]))
    return MultiTableau(tuple(Tableau(tuple(map(tuple, c))) for c in data["components"]), block)


def dump_multitableau(T: MultiTableau) -> str:
    return json.dumps(T.to_json(), separators=(",", ":"))


# --- enumeration -----------------------------------------------------------

def _corners(shape: Partition) -> list[int]:
    return [i for i in range(len(shape)) if i + 1 == len(shape) or shape[i] > shape[i + 1]]


@lru_cache(maxsize=None)
def _standard_fillings(shape: Partition) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Standard fillings of ``shape`` by 1..|shape| (rows as tuples)."""
    n = sum(shape)
    if n == 0:
        return ((),)
    out = []
    for i in _corners(shape):
        smaller = list(shape)
        smaller[i] -= 1
        smaller_t = tuple(p for p in smaller if p > 0)
        for rows in _standard_fillings(smaller_t):
            grid = [list(r) for r in rows]
            if i == len(grid):
                grid.append([])
            grid[i].append(n)
            out.append(tuple(tuple(r) for r in grid))
    return tuple(sorted(out, key=lambda rows: [v for r in rows for v in r]))


def enumerate_standard_tableaux(shape: Sequence[int], entries: Sequence[int]) -> list[Tableau]:
    """Standard tableaux of ``shape`` filled with ``entries``, by row-reading word."""
    shape = make_partition(shape)
    entries = sorted(entries)
    if len(entries) != sum(shape) or len(set(entries)) != len(entries):
        raise ValueError(f"{len(entries)} distinct entries needed for shape {list(shape)}")
    return [Tableau(tuple(tuple(entries[v - 1] for v in row) for row in rows))
            for rows in _standard_fillings(shape)]


def hook_lengths(shape: Partition) -> list[list[int]]:
    conj = conjugate(shape)
    return [[(shape[i] - j - 1) + (conj[j] - i - 1) + 1 for j in range(shape[i])]
            for i in range(len(shape))]


def count_standard(shape: Sequence[int]) -> int:
    """Number of standard tableaux of ``shape`` (hook length formula)."""
    shape = make_partition(shape)
    return factorial(sum(shape)) // prod(h for row in hook_lengths(shape) for h in row)


def f_lambda(diagram: MultiDiagram) -> int:
    return prod(count_standard(c) for c in diagram.components)


def enumerate_NST(diagram: MultiDiagram) -> list[MultiTableau]:
    """Natural standard multi-tableaux: component i is filled with block i."""
    block = diagram.block
    per_block = [enumerate_standard_tableaux(shape, block.block_range(i))
                 for i, shape in enumerate(diagram.components)]
    return [MultiTableau(combo, block) for combo in itertools.product(*per_block)]


def enumerate_ST(diagram: MultiDiagram) -> list[MultiTableau]:
    """All standard multi-tableaux of the given shape with entries 1..n."""
    block = diagram.block
    out = []
    for split in _ordered_splits(list(range(1, block.n + 1)), block.type_vector):
        per_block = [enumerate_standard_tableaux(shape, part)
                     for shape, part in zip(diagram.components, split)]
        out.extend(MultiTableau(combo, block) for combo in itertools.product(*per_block))
    return sorted(out, key=MultiTableau.row_word)


def _ordered_splits(items: list[int], sizes: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    if not sizes:
        yield []
        return
    for first in itertools.combinations(items, sizes[0]):
        rest = [v for v in items if v not in first]
        for tail in _ordered_splits(rest, sizes[1:]):
            yield [first] + tail


def canonical_tableau(shape: Sequence[int], entries: Sequence[int]) -> Tableau:
    """Fill rows left to right, top to bottom, with sorted ``entries``."""
    shape = make_partition(shape)
    it = iter(sorted(entries))
    return Tableau(tuple(tuple(next(it) for _ in range(p)) for p in shape))


def canonical_multitableau(diagram: MultiDiagram) -> MultiTableau:
    """The natural tableau S_0 with every component filled row by row."""
    block = diagram.block
    return MultiTableau(tuple(canonical_tableau(shape, block.block_range(i))
                              for i, shape in enumerate(diagram.components)), block)


# --- words and indices -----------------------------------------------------

def word(T: MultiTableau | Tableau) -> tuple[int, ...]:
    if isinstance(T, Tableau):
        return T.reading_word()
    return tuple(v for c in T.components for v in c.reading_word())


def index_word(w: Sequence[int]) -> tuple[int, ...]:
    """Index of each letter of a permutation word, aligned with positions."""
    n = len(w)
    if sorted(w) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation word: {list(w)}")
    pos = {letter: p for p, letter in enumerate(w)}
    idx_of = {1: 0}
    for k in range(1, n):
        idx_of[k + 1] = idx_of[k] + (1 if pos[k + 1] < pos[k] else 0)
    return tuple(idx_of[letter] for letter in w)


def _index_map(T: MultiTableau | Tableau) -> dict[int, int]:
    w = word(T)
    return dict(zip(w, index_word(w)))


def index_tableau(T: MultiTableau) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Index r-tableau: the word index of each letter written into its box."""
    idx = _index_map(T)
    return tuple(tuple(tuple(idx[v] for v in row) for row in c.rows) for c in T.components)


def block_index_tableau(S: MultiTableau) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Index tableau computed separately inside each component.

    Each component is standardized to 1..n_i and indexed on its own reading
    word, i.e. the product of the single-block index tableaux.  This is the
    exponent pattern used for higher Specht polynomials of a product group.
    """
    out = []
    for c in S.components:
        std = {v: k for k, v in enumerate(c.entries, start=1)}
        idx = _index_map(c.relabel(std))
        out.append(tuple(tuple(idx[std[v]] for v in row) for row in c.rows))
    return tuple(out)


# --- stabilizers ----------------------------------------------------------

def _line_stabilizer(lines: Sequence[Sequence[int]], n: int) -> list[Permutation]:
    per_line = [list(permutations_of(n, line)) for line in lines]
    out = []
    for combo in itertools.product(*per_line):
        g = Permutation.identity(n)
        for p in combo:
            g = g * p
        out.append(g)
    return sorted(out)


def row_stabilizer(T: Tableau, n: int | None = None) -> list[Permutation]:
    n = max(T.entries) if n is None else n
    return _line_stabilizer(T.rows, n)


def column_stabilizer(T: Tableau, n: int | None = None) -> list[Permutation]:
    n = max(T.entries) if n is None else n
    return _line_stabilizer(T.columns, n)


def column_generators(T: MultiTableau) -> list[Permutation]:
    """Adjacent transpositions inside every column of every component."""
    n = T.block.n
    return [Permutation.from_cycles(n, (col[k], col[k + 1]))
            for c in T.components for col in c.columns for k in range(len(col) - 1)]
