"""Closed-form quotient matrices, the Laplacian operator, and eigensolvers.

Two solvers live here: :func:`eig_dense` for full spectra of small
symmetric matrices, and :func:`lambda2_sparse`, a deflated Lanczos iteration
for the second-largest adjacency eigenvalue of large regular graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .graphs import SparseGraph


class EigenSolverError(RuntimeError):
    pass


# -- closed forms ----------------------------------------------------------


def _plain_diagonal(n: int) -> list[int]:
    outer = (n * n - n - 6) // 2
    second = (n * n - 3 * n - 2) // 2
    inner = (n * n - 3 * n - 6) // 2
    diag = [inner] * n
    diag[1] = diag[n - 2] = second
    diag[0] = diag[n - 1] = outer
    return diag


def closed_form_Q(n: int) -> np.ndarray:
    """Pentadiagonal quotient of Cay(S_n, R_n(2)) under the point-stabiliser partition."""
    if n < 4:
        raise ValueError(f"closed form defined for n >= 4, got {n}")
    q = np.diag(np.array(_plain_diagonal(n), dtype=np.int64))
    idx = np.arange(n - 1)
    q[idx, idx + 1] = q[idx + 1, idx] = n - 2
    idx = np.arange(n - 2)
    q[idx, idx + 2] = q[idx + 2, idx] = 2
    return q


def closed_form_Qprime(n: int) -> np.ndarray:
    """Quotient of Cay(S_n, R'_n(2)) under the point-stabiliser partition."""
    if n < 4:
        raise ValueError(f"closed form defined for n >= 4, got {n}")
    q = np.zeros((n, n), dtype=np.int64)
    q[0, :3] = (0, n - 2, 2)
    q[1, :3] = (n - 2, 1, 1)
    q[2, :4] = (2, 1, n - 4, 1)
    for i in range(3, n - 1):
        q[i, i - 1 : i + 2] = (1, n - 2, 1)
    q[n - 1, n - 2 :] = (1, n - 1)
    return q


def closed_form(n: int, variant: str) -> np.ndarray:
    if variant == "plain":
        return closed_form_Q(n)
    if variant == "prime":
        return closed_form_Qprime(n)
    raise ValueError(f"unknown variant {variant!r} (expected 'plain' or 'prime')")


def row_sum(n: int, variant: str) -> int:
    """Common row sum (the degree) of the closed-form quotient."""
    return (n * n + n - 6) // 2 if variant == "plain" else n


def laplacian(m: np.ndarray) -> np.ndarray:
    """``diag(M 1) - M``; exact for integer input."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("Laplacian needs a square matrix")
    return np.diag(m.sum(axis=1)) - m


# -- dense spectra ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues in non-decreasing order with optional eigenvectors (columns)."""

    values: np.ndarray
    vectors: np.ndarray | None = None
    residuals: np.ndarray | None = None

    @property
    def order(self) -> int:
        return len(self.values)

    @property
    def descending(self) -> np.ndarray:
        return self.values[::-1]

    def mu(self, i: int) -> float:
        """i-th smallest eigenvalue, 1-based."""
        return float(self.values[i - 1])

    def lam(self, i: int) -> float:
        """i-th largest eigenvalue, 1-based."""
        return float(self.values[self.order - i])

    def write_csv(self, path: str | Path, descending: bool = False) -> None:
        vals = self.descending if descending else self.values
        res = self.residuals
        if res is not None and descending:
            res = res[::-1]
        with open(path, "w") as fh:
            fh.write("index,eigenvalue,residual\n")
            for i, v in enumerate(vals):
                r = "" if res is None else f"{res[i]:.12g}"
                fh.write(f"{i + 1},{v:.12g},{r}\n")


def _check_symmetric(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if np.issubdtype(m.dtype, np.integer):
        if not np.array_equal(m, m.T):
            raise ValueError("matrix is not symmetric")
    else:
        scale = max(1.0, float(np.abs(m).max(initial=0.0)))
        if np.abs(m - m.T).max(initial=0.0) > 1e-12 * scale:
            raise ValueError("matrix is not symmetric")
    return m.astype(float)


def eig_dense(m: np.ndarray, vectors: bool = True) -> Spectrum:
    """Full symmetric eigendecomposition with per-pair residual check.

    Residuals ``||M v - θ v||`` must stay below ``1e-10 ||M||``; otherwise
    :class:`EigenSolverError` is raised.
    """
    a = _check_symmetric(m)
    if a.size == 0:
        return Spectrum(np.zeros(0))
    if not vectors:
        return Spectrum(np.linalg.eigvalsh(a))
    vals, vecs = np.linalg.eigh(a)
    res = np.linalg.norm(a @ vecs - vecs * vals, axis=0)
    bound = 1e-10 * max(np.linalg.norm(a, 2), 1.0)
    if np.any(res > bound):
        raise EigenSolverError(f"residual {res.max():.3e} exceeds {bound:.3e}")
    return Spectrum(vals, vecs, res)


def path_spectrum(m: int) -> np.ndarray:
    """Adjacency eigenvalues of the path on ``m`` vertices, non-decreasing."""
    k = np.arange(1, m + 1)
    return np.sort(2 * np.cos(k * np.pi / (m + 1)))


# -- sparse second eigenvalue ---------------------------------------------


class Lambda2(NamedTuple):
    value: float
    residual: float
    iterations: int


def lambda2_sparse(
    graph: SparseGraph, seed: int = 42, tol: float = 1e-8, max_iter: int | None = None
) -> Lambda2:
    """Second-largest adjacency eigenvalue of a connected regular graph.

    The top pair (degree, all-ones vector) is deflated by keeping every
    Lanczos vector orthogonal to 1; full reorthogonalisation is applied at
    each step.  Returns once ``||A v - θ v|| <= tol * degree``.
    """
    d = graph.regular_degree()
    if d is None:
        raise ValueError("graph is not regular")
    size = graph.vertex_count
    if size < 2:
        raise ValueError("graph needs at least two vertices")
    if not graph.is_connected():
        raise ValueError("graph is disconnected; λ2 equals the degree")
    a = graph.to_scipy(dtype=float)
    if max_iter is None:
        max_iter = int(50 * math.log(size)) + 10
    max_iter = min(max_iter, size - 1)
    target = tol * d

    ones = np.full(size, 1.0 / math.sqrt(size))

    def deflate(x: np.ndarray) -> np.ndarray:
        return x - ones * (ones @ x)

    rng = np.random.default_rng(seed)
    q = deflate(rng.standard_normal(size))
    q /= np.linalg.norm(q)
    basis = np.zeros((max_iter + 1, size))
    alphas: list[float] = []
    betas: list[float] = []
    basis[0] = q
    best = (float("nan"), float("inf"))
    for k in range(max_iter):
        w = a @ basis[k]
        alphas.append(float(basis[k] @ w))
        w = deflate(w)
        w -= basis[: k + 1].T @ (basis[: k + 1] @ w)
        w -= basis[: k + 1].T @ (basis[: k + 1] @ w)
        beta = float(np.linalg.norm(w))
        tri = np.diag(alphas)
        if betas:
            off = np.array(betas)
            tri += np.diag(off, 1) + np.diag(off, -1)
        theta, s = np.linalg.eigh(tri)
        estimate = beta * abs(s[-1, -1])
        if estimate <= target / 10 or beta <= 1e-12 * d or k == max_iter - 1:
            v = basis[: k + 1].T @ s[:, -1]
            v /= np.linalg.norm(v)
            residual = float(np.linalg.norm(a @ v - theta[-1] * v))
            best = (float(theta[-1]), residual)
            if residual <= target:
                return Lambda2(best[0], residual, k + 1)
            if beta <= 1e-12 * d:
                break
        betas.append(beta)
        basis[k + 1] = w / beta
    raise EigenSolverError(
        f"Lanczos did not converge: θ={best[0]:.12g}, residual {best[1]:.3e} > {target:.3e}"
    )


# -- Fiedler vectors -------------------------------------------------------


class Fiedler(NamedTuple):
    value: float
    vector: np.ndarray
    gap: float
    sign_fallback: bool


def normalise_sign(v: np.ndarray, eps: float = 1e-12) -> tuple[np.ndarray, bool]:
    """Flip ``v`` so its last entry is >= 0.

    If the last entry is negligible, flip so the first non-negligible entry
    is negative instead and report the fallback.
    """
    if abs(v[-1]) >= eps:
        return (v if v[-1] >= 0 else -v), False
    nz = np.nonzero(np.abs(v) >= eps)[0]
    if nz.size and v[nz[0]] > 0:
        v = -v
    return v, True


def fiedler(m: np.ndarray) -> Fiedler:
    """Second-smallest eigenpair of a Laplacian-form matrix, plus ``μ3 - μ2``."""
    a = np.asarray(m)
    if np.abs(a.sum(axis=1)).max(initial=0) > 1e-9 * max(1.0, float(np.abs(a).max(initial=0))):
        raise ValueError("matrix does not annihilate the all-ones vector")
    if a.shape[0] < 2:
        raise ValueError("need order >= 2")
    spec = eig_dense(a)
    mu2 = spec.mu(2)
    if abs(mu2) <= 1e-12:
        raise ValueError("μ2 is zero: the underlying graph is disconnected")
    gap = spec.mu(3) - mu2 if spec.order >= 3 else float("inf")
    v, fallback = normalise_sign(spec.vectors[:, 1].copy())
    return Fiedler(mu2, v, float(gap), fallback)
