"""Permutations of {1..n} in one-line image notation.

Composition is ordinary function composition: ``(s * t)(k) == s(t(k))``,
so ``t`` is applied first.  With this convention the substitution action
on polynomials is a left action (see :func:`hspecht.polyalg.permute`).
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int]):
        images = tuple(int(v) for v in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {list(images)}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> Permutation:
        """Build from disjoint cycles, e.g. ``from_cycles(3, (1, 2, 3))``."""
        images = list(range(1, n + 1))
        for cycle in cycles:
            for a, b in zip(cycle, tuple(cycle[1:]) + (cycle[0],)):
                images[a - 1] = b
        return cls(images)

    @classmethod
    def from_mapping(cls, n: int, mapping: dict[int, int]) -> Permutation:
        """Extend a bijection on a subset of {1..n} by the identity."""
        return cls(mapping.get(k, k) for k in range(1, n + 1))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.n != other.n:
            raise ValueError("permutations of different degree")
        mine = self.images
        return Permutation(mine[k - 1] for k in other.images)

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for k, v in enumerate(self.images, start=1):
            inv[v - 1] = k
        return Permutation(inv)

    def sign(self) -> int:
        seen = [False] * self.n
        parity = 0
        for start in range(self.n):
            if seen[start]:
                continue
            length = 0
            k = start
            while not seen[k]:
                seen[k] = True
                k = self.images[k] - 1
                length += 1
            parity += length - 1
        return -1 if parity % 2 else 1

    def is_identity(self) -> bool:
        return all(v == k for k, v in enumerate(self.images, start=1))

    def support(self) -> set[int]:
        return {k for k, v in enumerate(self.images, start=1) if v != k}

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest element."""
        seen: set[int] = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen or self(start) == start:
                continue
            cycle = [start]
            seen.add(start)
            k = self(start)
            while k != start:
                cycle.append(k)
                seen.add(k)
                k = self(k)
            out.append(tuple(cycle))
        return out

    def preserves(self, subset: Iterable[int]) -> bool:
        subset = set(subset)
        return all(self(k) in subset for k in subset)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"

    def cycle_str(self) -> str:
        cs = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs) or "id"


def permutations_of(n: int, subset: Sequence[int]) -> Iterator[Permutation]:
    """All permutations of ``subset``, extended by the identity to {1..n}."""
    subset = tuple(subset)
    for image in itertools.permutations(subset):
        yield Permutation.from_mapping(n, dict(zip(subset, image)))


def parse_permutation(text: str) -> Permutation:
    """Parse one-line notation ``[2,1,3]``."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"expected one-line notation like [2,1,3], got {text!r}")
    inner = body[1:-1].strip()
    return Permutation([int(tok) for tok in inner.split(",")] if inner else [])
