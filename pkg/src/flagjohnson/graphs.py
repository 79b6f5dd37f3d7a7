"""Graph builders: Cayley graphs on S_n, Schreier matrices, full-flag Johnson
graphs, Johnson graphs and paths.

Cayley and flag vertices are indexed by the lexicographic rank of a
permutation, so every S_n-based graph shares one index space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from .permgroup import (
    MAX_ENUM_DEGREE,
    GeneratorSet,
    all_permutations,
    inverse_array,
    rank_array,
)


@dataclass(frozen=True, eq=False)
class SparseGraph:
    """Undirected simple graph in CSR form with sorted neighbour lists."""

    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple[str, ...] | None = field(default=None, repr=False)

    @classmethod
    def from_edges(
        cls,
        vertex_count: int,
        u: Sequence[int] | np.ndarray,
        v: Sequence[int] | np.ndarray,
        labels: Sequence[str] | None = None,
    ) -> SparseGraph:
        """Build from an edge list; duplicates and orientation are collapsed."""
        u = np.asarray(u, dtype=np.int64).ravel()
        v = np.asarray(v, dtype=np.int64).ravel()
        if u.shape != v.shape:
            raise ValueError("edge endpoint arrays differ in length")
        if u.size and (min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= vertex_count):
            raise ValueError("edge endpoint outside vertex range")
        if np.any(u == v):
            raise ValueError("self-loops are not allowed")
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        keys = np.unique(lo * vertex_count + hi)
        lo, hi = keys // vertex_count, keys % vertex_count
        rows = np.concatenate([lo, hi])
        cols = np.concatenate([hi, lo])
        order = np.lexsort((cols, rows))
        rows, cols = rows[order], cols[order]
        indptr = np.zeros(vertex_count + 1, dtype=np.int64)
        np.add.at(indptr, rows + 1, 1)
        np.cumsum(indptr, out=indptr)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != vertex_count:
                raise ValueError("label count does not match vertex count")
        return cls(indptr, cols, labels)

    @classmethod
    def from_dense(cls, adjacency: np.ndarray) -> SparseGraph:
        a = np.asarray(adjacency)
        if a.shape[0] != a.shape[1] or not np.array_equal(a, a.T):
            raise ValueError("adjacency must be square and symmetric")
        u, v = np.nonzero(np.triu(a))
        return cls.from_edges(a.shape[0], u, v)

    @property
    def vertex_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def regular_degree(self) -> int | None:
        """Common degree if the graph is regular, else ``None``."""
        deg = self.degrees()
        if deg.size == 0 or np.all(deg == deg[0]):
            return int(deg[0]) if deg.size else 0
        return None

    def edges(self) -> np.ndarray:
        """``(E, 2)`` array of edges with ``u < v``, sorted."""
        rows = np.repeat(np.arange(self.vertex_count), self.degrees())
        keep = rows < self.indices
        return np.column_stack([rows[keep], self.indices[keep]])

    def to_scipy(self, dtype=np.int64) -> sparse.csr_matrix:
        n = self.vertex_count
        data = np.ones(len(self.indices), dtype=dtype)
        return sparse.csr_matrix((data, self.indices, self.indptr), shape=(n, n))

    def to_dense(self, dtype=np.int64) -> np.ndarray:
        return self.to_scipy(dtype).toarray()

    def component_count(self) -> int:
        if self.vertex_count == 0:
            return 0
        count, _ = connected_components(self.to_scipy(), directed=False)
        return int(count)

    def is_connected(self) -> bool:
        return self.component_count() == 1

    def check_invariants(self) -> None:
        """Raise ``ValueError`` if the graph is not symmetric and loop-free."""
        a = self.to_scipy()
        if (a != a.T).nnz:
            raise ValueError("adjacency is not symmetric")
        if a.diagonal().any():
            raise ValueError("graph has a self-loop")
        for v in range(self.vertex_count):
            nb = self.neighbors(v)
            if nb.size > 1 and np.any(np.diff(nb) <= 0):
                raise ValueError(f"neighbour list of {v} not strictly sorted")

    def same_edges(self, other: SparseGraph) -> bool:
        return (
            self.vertex_count == other.vertex_count
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def write_edges(self, path: str | Path) -> None:
        """Write ``p <vertices> <edges>`` followed by one ``u v`` line per edge (0-based)."""
        edges = self.edges()
        with open(path, "w") as fh:
            fh.write(f"p {self.vertex_count} {len(edges)}\n")
            for a, b in edges.tolist():
                fh.write(f"{a} {b}\n")

    def write_labels(self, path: str | Path) -> None:
        """Sidecar mapping ``<index> <label>``, one vertex per line."""
        labels = self.labels or tuple(str(i) for i in range(self.vertex_count))
        with open(path, "w") as fh:
            for i, lab in enumerate(labels):
                fh.write(f"{i} {lab}\n")


def read_edges(path: str | Path) -> SparseGraph:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 3 or header[0] != "p":
            raise ValueError(f"bad header in {path}: {header}")
        n, m = int(header[1]), int(header[2])
        body = np.loadtxt(fh, dtype=np.int64, ndmin=2)
    if body.size == 0:
        body = np.zeros((0, 2), dtype=np.int64)
    if len(body) != m:
        raise ValueError(f"header announces {m} edges, found {len(body)}")
    return SparseGraph.from_edges(n, body[:, 0], body[:, 1])


def _perm_labels(perms: np.ndarray) -> tuple[str, ...]:
    return tuple("".join(str(x + 1) for x in row) for row in perms.tolist())


def cayley(gens: GeneratorSet, labels: bool = False) -> SparseGraph:
    """Cay(S_n, S) with vertex ``rank(g)`` adjacent to ``rank(σg)`` for σ in S."""
    n = gens.n
    if n > MAX_ENUM_DEGREE:
        raise ValueError(f"degree {n} too large for enumeration (max {MAX_ENUM_DEGREE})")
    perms = all_permutations(n)
    size = perms.shape[0]
    src = np.arange(size, dtype=np.int64)
    us, vs = [], []
    for sigma in gens.as_array():
        us.append(src)
        vs.append(rank_array(sigma[perms]))
    if us:
        u, v = np.concatenate(us), np.concatenate(vs)
    else:
        u = v = np.zeros(0, dtype=np.int64)
    return SparseGraph.from_edges(size, u, v, _perm_labels(perms) if labels else None)


def schreier_matrix(gens: GeneratorSet) -> np.ndarray:
    """``n x n`` integer matrix with entry ``[i, j] = #{σ in S : σ(i) = j}``."""
    n = gens.n
    q = np.zeros((n, n), dtype=np.int64)
    for s in gens.elements:
        q[np.arange(n), s.images] += 1
    return q


def flag_masks(perms: np.ndarray) -> np.ndarray:
    """Bitmask of each chain entry U_i = {σ(1..i)} for every row σ."""
    bits = np.left_shift(np.int64(1), np.asarray(perms, dtype=np.int64))
    return np.bitwise_or.accumulate(bits, axis=1)


def flag_johnson(n: int, k: int, labels: bool = False) -> SparseGraph:
    """FJ(n, k): full flags adjacent when exactly ``k`` chain entries differ.

    Built by comparing chain entries of every pair of flags, independently of
    any Cayley presentation.  Each edge is also checked against the
    equivalent "share exactly n-k subsets" criterion.
    """
    if not 1 <= n <= MAX_ENUM_DEGREE:
        raise ValueError(f"n={n} outside 1..{MAX_ENUM_DEGREE}")
    if not 0 <= k < n:
        raise ValueError(f"k={k} must satisfy 0 <= k < n={n}")
    perms = all_permutations(n)
    masks = flag_masks(perms).astype(np.uint8)  # n <= 8 bits
    size = len(masks)
    chunk = max(1, (1 << 25) // (size * n))
    us, vs = [], []
    for start in range(0, size, chunk):
        block = masks[start : start + chunk]
        differ = (block[:, None, :] != masks[None, :, :]).sum(axis=2, dtype=np.int64)
        a, b = np.nonzero(differ == k)
        a += start
        keep = a < b
        us.append(a[keep])
        vs.append(b[keep])
    u, v = np.concatenate(us), np.concatenate(vs)
    if k == 0:
        u = v = np.zeros(0, dtype=np.int64)
    # |U ∩ V| as collections of subsets, compared across all index pairs
    common = (masks[u][:, :, None] == masks[v][:, None, :]).sum(axis=(1, 2))
    if np.any(common != n - k):
        raise AssertionError("adjacency criteria disagree on a flag pair")
    return SparseGraph.from_edges(size, u, v, _perm_labels(perms) if labels else None)


def dai_map(n: int) -> np.ndarray:
    """Index map from Cay(S_n, R_n(k)) to FJ(n, k): ``rank(g) -> rank(g^-1)``.

    Under the left action ``g ~ σg`` the flag attached to ``g`` has chain
    entries ``U_i = g^{-1}({1..i})``; the flag encoded by ``g^{-1}``.
    """
    perms = all_permutations(n)
    return rank_array(inverse_array(perms))


def dai_isomorphism_check(n: int, k: int) -> bool:
    """Edge-by-edge check that :func:`dai_map` is an isomorphism Cay(S_n, R_n(k)) -> FJ(n, k)."""
    from .permgroup import gen_reducible_set

    cay = cayley(gen_reducible_set(n, k))
    flag = flag_johnson(n, k)
    phi = dai_map(n)
    if cay.edge_count != flag.edge_count:
        return False
    e = cay.edges()
    mapped = SparseGraph.from_edges(cay.vertex_count, phi[e[:, 0]], phi[e[:, 1]])
    return mapped.same_edges(flag)


def path_graph(m: int) -> SparseGraph:
    if m < 1:
        raise ValueError("path needs at least one vertex")
    idx = np.arange(m - 1)
    return SparseGraph.from_edges(m, idx, idx + 1)


def complete_graph(m: int) -> SparseGraph:
    u, v = np.triu_indices(m, 1)
    return SparseGraph.from_edges(m, u, v)


def johnson(n: int, k: int) -> SparseGraph:
    """J(n, k): k-subsets of [n], adjacent when they meet in k-1 points."""
    if not 0 < k < n:
        raise ValueError(f"J(n,k) needs 0 < k < n, got n={n}, k={k}")
    subsets = [frozenset(c) for c in combinations(range(1, n + 1), k)]
    u, v = [], []
    for i, a in enumerate(subsets):
        for j in range(i + 1, len(subsets)):
            if len(a & subsets[j]) == k - 1:
                u.append(i)
                v.append(j)
    labels = tuple("{" + ",".join(map(str, sorted(s))) + "}" for s in subsets)
    return SparseGraph.from_edges(len(subsets), u, v, labels)


def restrict_to_stabiliser(graph: SparseGraph, n: int, point: int) -> SparseGraph:
    """Induced subgraph on {g in S_n : g(point) = point}, relabelled into S_{n-1}."""
    perms = all_permutations(n)
    z = point - 1
    inside = np.nonzero(perms[:, z] == z)[0]
    sub = np.delete(perms[inside], z, axis=1)
    sub = sub - (sub > z)
    new_index = np.full(perms.shape[0], -1, dtype=np.int64)
    new_index[inside] = rank_array(sub)
    e = graph.edges()
    keep = (new_index[e[:, 0]] >= 0) & (new_index[e[:, 1]] >= 0)
    e = e[keep]
    return SparseGraph.from_edges(math.factorial(n - 1), new_index[e[:, 0]], new_index[e[:, 1]])
