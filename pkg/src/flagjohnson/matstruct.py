"""Structural matrix predicates and exact identities for the Laplacians of
the closed-form quotient matrices.

Every predicate returns a :class:`StructureReport`.  Witness indices are
1-based so they line up with the matrix displays they refer to.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable

import numpy as np

from .spectra import closed_form, eig_dense, laplacian


@dataclass(frozen=True)
class StructureReport:
    predicate: str
    holds: bool
    witness: Any = None
    n: int | None = None

    def __post_init__(self) -> None:
        if not self.holds and self.witness is None:
            raise ValueError("a failing report must carry a witness")

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        w = self.witness
        if isinstance(w, np.ndarray):
            w = w.tolist()
        return {"predicate": self.predicate, "n": self.n, "holds": self.holds, "witness": w}


def _is_integer(m: np.ndarray) -> bool:
    return np.issubdtype(np.asarray(m).dtype, np.integer)


def is_robinson(m: np.ndarray) -> StructureReport:
    """Off-diagonal entries never increase moving away from the diagonal.

    Row ``i`` must satisfy ``A[i,j] <= A[i,k]`` for ``j < k < i`` and
    ``A[i,j] >= A[i,k]`` for ``i < j < k``.  By transitivity it suffices to
    compare neighbouring entries on each side.
    """
    a = np.asarray(m)
    n = a.shape[0]
    for i in range(n):
        for j in range(i - 1):
            if a[i, j] > a[i, j + 1]:
                return StructureReport("robinson", False, ((i + 1, j + 1), (i + 1, j + 2)), n)
        for j in range(i + 1, n - 1):
            if a[i, j] < a[i, j + 1]:
                return StructureReport("robinson", False, ((i + 1, j + 1), (i + 1, j + 2)), n)
    return StructureReport("robinson", True, n=n)


def exchange(n: int) -> np.ndarray:
    """Anti-diagonal permutation matrix J_n."""
    return np.fliplr(np.eye(n, dtype=np.int64))


def is_centrosymmetric(m: np.ndarray, tol: float = 1e-12) -> StructureReport:
    """``M J = J M``, exactly for integer input."""
    a = np.asarray(m)
    n = a.shape[0]
    # M J reverses columns, J M reverses rows
    diff = a[:, ::-1] - a[::-1, :]
    if _is_integer(a):
        bad = np.argwhere(diff != 0)
    else:
        bad = np.argwhere(np.abs(diff) > tol)
    if bad.size:
        i, j = bad[0]
        return StructureReport("centrosymmetric", False, (int(i) + 1, int(j) + 1), n)
    return StructureReport("centrosymmetric", True, n=n)


@dataclass(frozen=True, eq=False)
class EigenspaceSplit:
    value: float
    symmetric: np.ndarray
    skew: np.ndarray

    @property
    def counts(self) -> tuple[int, int]:
        return self.symmetric.shape[1], self.skew.shape[1]


def _orthonormal_range(x: np.ndarray, tol: float) -> np.ndarray:
    if x.shape[1] == 0:
        return x
    u, s, _ = np.linalg.svd(x, full_matrices=False)
    return u[:, s > tol]


def eigenbasis_symmetry_classify(
    m: np.ndarray, cluster_tol: float = 1e-8, tol: float = 1e-8
) -> list[EigenspaceSplit]:
    """Split each eigenspace of a centrosymmetric matrix into J-symmetric and
    J-skew parts, each with an orthonormal basis."""
    if not is_centrosymmetric(m):
        raise ValueError("matrix is not centrosymmetric")
    spec = eig_dense(m)
    n = spec.order
    vals, vecs = spec.values, spec.vectors
    scale = max(1.0, float(np.abs(vals).max(initial=0.0)))
    out = []
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and vals[stop] - vals[stop - 1] <= cluster_tol * scale:
            stop += 1
        block = vecs[:, start:stop]
        flipped = block[::-1]
        sym = _orthonormal_range((block + flipped) / 2, tol)
        skew = _orthonormal_range((block - flipped) / 2, tol)
        if sym.shape[1] + skew.shape[1] != stop - start:
            raise ArithmeticError(
                f"eigenspace at {vals[start]:.6g} did not split cleanly "
                f"({sym.shape[1]} + {skew.shape[1]} != {stop - start})"
            )
        out.append(EigenspaceSplit(float(vals[start:stop].mean()), sym, skew))
        start = stop
    return out


def interlacing_check(
    m: np.ndarray, deleted: Iterable[int]
) -> tuple[StructureReport, np.ndarray]:
    """Cauchy interlacing for the principal submatrix with ``deleted`` (1-based)
    rows/columns removed: ``μ_k(M) <= μ_k(B) <= μ_{k+r}(M)``.

    Returns the report and the submatrix ``B``.
    """
    a = np.asarray(m)
    n = a.shape[0]
    drop = sorted({int(i) - 1 for i in deleted})
    keep = [i for i in range(n) if i not in drop]
    b = a[np.ix_(keep, keep)]
    r = len(drop)
    full = eig_dense(a, vectors=False).values
    sub = eig_dense(b, vectors=False).values if keep else np.zeros(0)
    slack = 1e-9 * max(1.0, float(np.abs(full).max(initial=0.0)))
    for k in range(len(sub)):
        if not (full[k] - slack <= sub[k] <= full[k + r] + slack):
            return StructureReport("interlacing", False, k + 1, n), b
    return StructureReport("interlacing", True, n=n), b


def psd_rank_check(m: np.ndarray, expected_rank: int) -> StructureReport:
    a = np.asarray(m)
    n = a.shape[0]
    vals = eig_dense(a, vectors=False).values
    norm = float(np.abs(vals).max(initial=0.0))
    eps = 1e-9 * norm
    if vals.size and vals[0] < -eps:
        return StructureReport("psd_rank", False, ("negative eigenvalue", float(vals[0])), n)
    null = int(np.sum(vals < eps)) if norm > 0 else n
    if n - null != expected_rank:
        return StructureReport("psd_rank", False, ("rank", n - null), n)
    return StructureReport("psd_rank", True, n=n)


def rank_one_terms(n: int, variant: str) -> list[tuple[int, int, int]]:
    """``(coefficient, i, j)`` triples, 1-based: the terms ``c (e_i - e_j)(e_i - e_j)^T``
    added to ``blockdiag(L_n, 0)`` to obtain ``L_{n+1}``."""
    if variant == "prime":
        return [(1, 1, 2), (1, n, n + 1)]
    if variant == "plain":
        terms = [(1, i, i + 1) for i in range(1, n)]
        return terms + [(n - 1, n, n + 1), (2, n - 1, n + 1)]
    raise ValueError(f"unknown variant {variant!r}")


def rank_one(order: int, i: int, j: int) -> np.ndarray:
    e = np.zeros(order, dtype=np.int64)
    e[i - 1], e[j - 1] = 1, -1
    return np.outer(e, e)


def decomposition_check(
    n: int, variant: str, terms: list[tuple[int, int, int]] | None = None
) -> StructureReport:
    """Exact check of ``L_{n+1} = blockdiag(L_n, 0) + Σ c (e_i - e_j)(e_i - e_j)^T``."""
    if n < 4:
        raise ValueError("decomposition needs n >= 4")
    terms = rank_one_terms(n, variant) if terms is None else terms
    target = laplacian(closed_form(n + 1, variant))
    rhs = np.zeros((n + 1, n + 1), dtype=np.int64)
    rhs[:n, :n] = laplacian(closed_form(n, variant))
    for c, i, j in terms:
        rhs += c * rank_one(n + 1, i, j)
    bad = np.argwhere(rhs != target)
    if bad.size:
        i, j = bad[0]
        return StructureReport(f"decomposition[{variant}]", False, (int(i) + 1, int(j) + 1), n)
    return StructureReport(f"decomposition[{variant}]", True, n=n)


def pentadiagonal_form(n: int, y: np.ndarray) -> np.ndarray:
    """``(n-2) Σ (y_{i+1}-y_i)^2 + 2 Σ (y_{i+2}-y_i)^2``; columns of ``y`` are batched."""
    y = np.asarray(y, dtype=float)
    d1 = np.diff(y, axis=0)
    d2 = y[2:] - y[:-2]
    return (n - 2) * (d1**2).sum(axis=0) + 2 * (d2**2).sum(axis=0)


def quadratic_form_check(n: int, y: np.ndarray, rtol: float = 1e-10) -> StructureReport:
    """``y^T L(Q_n) y`` equals the pentadiagonal sum-of-squares form.

    ``y`` may be one vector or an ``(n, k)`` batch of column vectors.
    """
    y = np.asarray(y, dtype=float)
    if y.shape[0] != n:
        raise ValueError(f"vector length {y.shape[0]} != {n}")
    lap = laplacian(closed_form(n, "plain")).astype(float)
    lhs = np.einsum("i...,ij,j...->...", y, lap, y)
    rhs = pentadiagonal_form(n, y)
    err = np.abs(lhs - rhs)
    scale = np.maximum(np.abs(lhs), np.abs(rhs))
    bad = np.nonzero(np.atleast_1d(err > rtol * scale))[0]
    if bad.size:
        k = int(bad[0])
        return StructureReport(
            "quadratic_form", False,
            (k, float(np.atleast_1d(lhs)[k]), float(np.atleast_1d(rhs)[k])), n,
        )
    return StructureReport("quadratic_form", True, n=n)
