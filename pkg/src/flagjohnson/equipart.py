"""Equitable partitions, quotient matrices, and the lift/containment checks
that certify quotient eigenvalues are graph eigenvalues."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .graphs import SparseGraph
from .permgroup import all_permutations


@dataclass(frozen=True, eq=False)
class Partition:
    """Partition of ``range(vertex_count)``; ``part_of[v]`` is the part index of ``v``."""

    part_of: np.ndarray

    def __post_init__(self) -> None:
        part_of = np.asarray(self.part_of, dtype=np.int64)
        if part_of.ndim != 1:
            raise ValueError("part_of must be one-dimensional")
        if part_of.size:
            counts = np.bincount(part_of)
            if part_of.min() < 0 or np.any(counts == 0):
                raise ValueError("parts must be labelled 0..m-1 and nonempty")
        part_of.setflags(write=False)
        object.__setattr__(self, "part_of", part_of)

    @classmethod
    def from_parts(cls, parts: Sequence[Sequence[int]], vertex_count: int) -> Partition:
        part_of = np.full(vertex_count, -1, dtype=np.int64)
        for i, part in enumerate(parts):
            idx = np.asarray(part, dtype=np.int64)
            if np.any(part_of[idx] >= 0):
                raise ValueError("parts overlap")
            part_of[idx] = i
        if np.any(part_of < 0):
            raise ValueError("parts do not cover the vertex set")
        return cls(part_of)

    @classmethod
    def singletons(cls, vertex_count: int) -> Partition:
        return cls(np.arange(vertex_count))

    @property
    def vertex_count(self) -> int:
        return len(self.part_of)

    @property
    def size(self) -> int:
        return int(self.part_of.max()) + 1 if self.part_of.size else 0

    @property
    def parts(self) -> list[np.ndarray]:
        return [np.nonzero(self.part_of == i)[0] for i in range(self.size)]

    def indicator(self) -> np.ndarray:
        """``S[v, p] = 1`` iff vertex ``v`` lies in part ``p``."""
        s = np.zeros((self.vertex_count, self.size), dtype=np.int64)
        s[np.arange(self.vertex_count), self.part_of] = 1
        return s


def coset_partition(n: int) -> Partition:
    """Π_n over rank-indexed S_n: part ``i`` holds every ``g`` with ``g(1) = i``.

    These are the left cosets ``(1 i) Stab_n(1)``.
    """
    return Partition(all_permutations(n)[:, 0].copy())


class NotEquitableError(ValueError):
    """Two vertices of one part see different neighbour counts in a target part."""

    def __init__(self, part: int, vertex_a: int, vertex_b: int, target_part: int):
        self.part = part
        self.vertex_a = vertex_a
        self.vertex_b = vertex_b
        self.target_part = target_part
        super().__init__(
            f"part {part}: vertices {vertex_a} and {vertex_b} have different "
            f"neighbour counts into part {target_part}"
        )

    @property
    def witness(self) -> tuple[int, int, int, int]:
        return self.part, self.vertex_a, self.vertex_b, self.target_part


def neighbour_counts(graph: SparseGraph, partition: Partition) -> np.ndarray:
    """``(V, m)`` matrix of neighbour counts of each vertex into each part."""
    if partition.vertex_count != graph.vertex_count:
        raise ValueError("partition does not match the graph's vertex set")
    m = partition.size
    rows = np.repeat(np.arange(graph.vertex_count), graph.degrees())
    keys = rows * m + partition.part_of[graph.indices]
    return np.bincount(keys, minlength=graph.vertex_count * m).reshape(-1, m)


def quotient_if_equitable(graph: SparseGraph, partition: Partition) -> np.ndarray:
    """Quotient matrix of ``graph`` under ``partition``.

    Raises :class:`NotEquitableError` carrying a witness when the partition
    is not equitable.
    """
    counts = neighbour_counts(graph, partition)
    m = partition.size
    q = np.zeros((m, m), dtype=np.int64)
    for i, members in enumerate(partition.parts):
        block = counts[members]
        bad = np.nonzero(np.any(block != block[0], axis=1))[0]
        if bad.size:
            b = int(bad[0])
            target = int(np.nonzero(block[b] != block[0])[0][0])
            raise NotEquitableError(i, int(members[0]), int(members[b]), target)
        q[i] = block[0]
    return q


def lift_identity_check(graph: SparseGraph, partition: Partition, quotient: np.ndarray) -> bool:
    """Exact integer test of ``A S = S Q`` for the part-indicator matrix ``S``."""
    s = partition.indicator()
    q = np.asarray(quotient)
    if q.shape != (partition.size, partition.size):
        return False
    if not np.issubdtype(q.dtype, np.integer):
        if not np.array_equal(q, np.round(q)):
            return False
        q = q.astype(np.int64)
    lhs = graph.to_scipy() @ s
    return bool(np.array_equal(np.asarray(lhs), s @ q))


def multiset_match(small: np.ndarray, big: np.ndarray, tol: float) -> bool:
    """Greedy matching of sorted ``small`` into sorted ``big`` within ``tol``."""
    small = np.sort(np.asarray(small, dtype=float))
    big = np.sort(np.asarray(big, dtype=float))
    j = 0
    for x in small:
        while j < len(big) and big[j] < x - tol:
            j += 1
        if j == len(big) or abs(big[j] - x) > tol:
            return False
        j += 1
    return True


def spectrum_containment(graph: SparseGraph, quotient: np.ndarray, tol: float = 1e-8) -> bool:
    """Each eigenvalue of the quotient (with multiplicity) is an eigenvalue of the graph."""
    a = graph.to_dense(dtype=float)
    return multiset_match(
        np.linalg.eigvalsh(np.asarray(quotient, dtype=float)), np.linalg.eigvalsh(a), tol
    )


def write_quotient_csv(quotient: np.ndarray, path: str | Path) -> None:
    np.savetxt(path, np.asarray(quotient, dtype=np.int64), fmt="%d", delimiter=",")


def read_quotient_csv(path: str | Path) -> np.ndarray:
    return np.loadtxt(path, dtype=np.int64, delimiter=",", ndmin=2)
