"""Entanglement structure of Pauli classes.

A class splits over a qubit partition when, restricted to every block, its
operators still commute. The finest such partition is the factorisation of
the class eigenbasis; the structure vector counts classes per partition shape.
"""
from __future__ import annotations

import dataclasses
import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import CyclicMubSet, MubClass
from .pauli import qubitwise_commutation_vector, symplectic_product

MAX_QUBITS = 10


class AmbiguousPartitionError(ValueError):
    def __init__(self, candidates: list[QubitPartition]):
        shown = ", ".join(str(c) for c in candidates)
        super().__init__(f"finest partition is not unique: {shown}")
        self.candidates = candidates


@dataclass(frozen=True)
class QubitPartition:
    """Blocks of 0-based qubit indices, stored in canonical order."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        if any(not b for b in blocks):
            raise ValueError("empty block")
        flat = [q for b in blocks for q in b]
        if len(flat) != len(set(flat)) or sorted(flat) != list(range(len(flat))):
            raise ValueError(f"blocks {blocks} do not partition 0..n-1")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(sorted(len(b) for b in self.blocks))

    def __str__(self) -> str:
        sep = "" if self.n < 10 else ","
        return "|".join(sep.join(str(q + 1) for q in b) for b in self.blocks)

    @classmethod
    def parse(cls, text: str) -> QubitPartition:
        """Inverse of ``str``: ``"1|23"`` or ``"1,2|3"`` with 1-based labels."""
        blocks = []
        for part in text.split("|"):
            items = part.split(",") if "," in part else list(part)
            blocks.append(tuple(int(q) - 1 for q in items))
        return cls(tuple(blocks))

    @classmethod
    def singletons(cls, n: int) -> QubitPartition:
        return cls(tuple((q,) for q in range(n)))


def set_partitions(n: int, k: int | None = None) -> Iterator[list[list[int]]]:
    """Partitions of range(n) via restricted growth strings, optionally with exactly k blocks."""
    if n == 0:
        if k in (None, 0):
            yield []
        return
    labels = [0] * n

    def rec(i: int, nblocks: int):
        if k is not None and nblocks + (n - i) < k:
            return
        if i == n:
            if k is None or nblocks == k:
                blocks = [[] for _ in range(nblocks)]
                for q, b in enumerate(labels):
                    blocks[b].append(q)
                yield blocks
            return
        for b in range(nblocks + 1):
            if k is not None and b == nblocks and nblocks == k:
                break
            labels[i] = b
            yield from rec(i + 1, max(nblocks, b + 1))

    yield from rec(0, 0)


def class_constraints(c: MubClass) -> list[tuple[int, ...]]:
    """Qubitwise commutation vectors for each pair of generator columns."""
    gens = c.generators()
    out = []
    for a, b in itertools.combinations(gens, 2):
        if symplectic_product(a, b):
            raise ValueError(f"class {c.index} is not abelian")
        out.append(qubitwise_commutation_vector(a, b))
    return out


def _valid_blocks(n: int, constraints: Sequence[Sequence[int]]) -> list[bool]:
    masks = [sum(bit << q for q, bit in enumerate(v)) for v in constraints]
    return [all(bin(s & m).count("1") % 2 == 0 for m in masks) for s in range(1 << n)]


def finest_partition(c: MubClass) -> QubitPartition:
    """Partition with the most blocks over which every constraint has even parity."""
    n = c.n
    if n > MAX_QUBITS:
        raise ValueError(f"partition search limited to {MAX_QUBITS} qubits")
    ok = _valid_blocks(n, class_constraints(c))
    for k in range(n, 0, -1):
        found = []
        for blocks in set_partitions(n, k):
            if all(ok[sum(1 << q for q in b)] for b in blocks):
                found.append(QubitPartition(tuple(tuple(b) for b in blocks)))
        if len(found) == 1:
            return found[0]
        if found:
            raise AmbiguousPartitionError(found)
    raise AssertionError("the one-block partition is always valid")


def shape_order(n: int) -> list[tuple[int, ...]]:
    """Integer partitions of n, factorisable first and fully entangled last.

    More blocks come first; ties go to the smaller largest block, e.g. for
    n = 4: (1,1,1,1), (1,1,2), (2,2), (1,3), (4).
    """
    shapes = set()
    for blocks in set_partitions(n):
        shapes.add(tuple(sorted(len(b) for b in blocks)))
    return sorted(shapes, key=lambda s: (-len(s), tuple(sorted(s, reverse=True))))


@dataclass(frozen=True)
class StructureVector:
    n: int
    shapes: tuple[tuple[int, ...], ...]
    counts: tuple[int, ...]

    def as_tuple(self) -> tuple[int, ...]:
        return self.counts

    def __eq__(self, other):
        if isinstance(other, tuple):
            return self.counts == other
        if isinstance(other, StructureVector):
            return (self.n, self.shapes, self.counts) == (other.n, other.shapes, other.counts)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.shapes, self.counts))

    @property
    def total(self) -> int:
        return sum(self.counts)

    def to_json(self) -> dict:
        return {"shapes": [list(s) for s in self.shapes], "counts": list(self.counts)}

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.counts) + ")"


def class_partitions(s: CyclicMubSet) -> list[QubitPartition]:
    return [finest_partition(c) for c in s.classes]


def structure_vector(s: CyclicMubSet) -> StructureVector:
    hist = Counter(p.shape for p in class_partitions(s))
    shapes = tuple(shape_order(s.n))
    return StructureVector(s.n, shapes, tuple(hist.get(sh, 0) for sh in shapes))


def annotate(s: CyclicMubSet) -> CyclicMubSet:
    """Copy of ``s`` with its structure vector filled in."""
    return dataclasses.replace(s, structure=structure_vector(s))
