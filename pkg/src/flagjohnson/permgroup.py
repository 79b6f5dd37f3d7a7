"""Permutations of [n], reducibility, and the generating sets R_n(k) and R'_n(2).

Permutations are exposed with 1-based semantics (``p(i)`` for ``i`` in
``1..n``) and stored 0-based.  Composition is the left action
``(p * q)(x) = p(q(x))``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _iter_permutations
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_ENUM_DEGREE = 8

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of ``{1, ..., n}`` in one-line notation (stored 0-based)."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        imgs = tuple(int(x) for x in self.images)
        if len(imgs) == 0:
            raise ValueError("permutation degree must be >= 1")
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a bijection on 0..{len(imgs) - 1}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_oneline(cls, values: Sequence[int]) -> Permutation:
        """Build from 1-based one-line notation, e.g. ``[2, 3, 1]``."""
        return cls(tuple(int(v) - 1 for v in values))

    @classmethod
    def from_cycles(cls, text: str, n: int) -> Permutation:
        """Parse cycle notation such as ``"(1,2)(3,4)"``; ``"()"`` is the identity."""
        stripped = text.replace(" ", "")
        if _CYCLE_RE.sub("", stripped):
            raise ValueError(f"malformed cycle notation: {text!r}")
        images = list(range(n))
        seen: set[int] = set()
        for body in _CYCLE_RE.findall(stripped):
            if not body:
                continue
            pts = [int(tok) for tok in body.split(",")]
            for p in pts:
                if not 1 <= p <= n:
                    raise ValueError(f"point {p} outside 1..{n}")
                if p in seen:
                    raise ValueError(f"point {p} repeated in {text!r}")
                seen.add(p)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a - 1] = b - 1
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1] + 1

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation(tuple(inv))

    def oneline(self) -> list[int]:
        return [v + 1 for v in self.images]

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def fixes(self, point: int) -> bool:
        return self.images[point - 1] == point - 1

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its smallest point."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x + 1)
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cycs)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p∘q``, i.e. ``x -> p(q(x))``."""
    if p.n != q.n:
        raise ValueError(f"degree mismatch: {p.n} vs {q.n}")
    return Permutation(tuple(p.images[x] for x in q.images))


def max_reducibility(p: Permutation) -> int:
    """Largest number of contiguous intervals each mapped onto itself by ``p``.

    A cut after position t is valid iff ``p({1..t}) = {1..t}``, i.e. the
    running maximum of the first t images equals t.  Valid cuts are closed
    under union, so counting all of them gives the finest partition.
    """
    running = -1
    count = 0
    for t, v in enumerate(p.images):
        running = max(running, v)
        if running == t:
            count += 1
    return count


def max_reducibility_array(perms: np.ndarray) -> np.ndarray:
    """Vectorised :func:`max_reducibility` for a ``(m, n)`` array of 0-based perms."""
    perms = np.asarray(perms)
    running = np.maximum.accumulate(perms, axis=1)
    return (running == np.arange(perms.shape[1])).sum(axis=1)


def max_reducibility_bruteforce(p: Permutation) -> int:
    """Search all ``2^(n-1)`` contiguous interval partitions (test oracle)."""
    n = p.n
    best = 0
    for mask in range(1 << (n - 1)):
        cuts = [i + 1 for i in range(n - 1) if mask >> i & 1]
        bounds = [0, *cuts, n]
        ok = True
        for lo, hi in zip(bounds, bounds[1:]):
            block = set(range(lo, hi))
            if {p.images[i] for i in block} != block:
                ok = False
                break
        if ok:
            best = max(best, len(bounds) - 1)
    return best


# -- ranking ---------------------------------------------------------------


def perm_rank(p: Permutation) -> int:
    """Lexicographic rank via the Lehmer code; the identity has rank 0."""
    n = p.n
    rank = 0
    imgs = p.images
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if imgs[j] < imgs[i])
        rank += smaller * math.factorial(n - 1 - i)
    return rank


def perm_unrank(n: int, r: int) -> Permutation:
    if not 0 <= r < math.factorial(n):
        raise ValueError(f"rank {r} out of range for S_{n}")
    pool = list(range(n))
    out = []
    for i in range(n - 1, -1, -1):
        digit, r = divmod(r, math.factorial(i))
        out.append(pool.pop(digit))
    return Permutation(tuple(out))


def rank_array(perms: np.ndarray) -> np.ndarray:
    """Vectorised lexicographic rank of each row of a ``(m, n)`` 0-based array."""
    perms = np.asarray(perms, dtype=np.int64)
    m, n = perms.shape
    ranks = np.zeros(m, dtype=np.int64)
    for i in range(n - 1):
        smaller = (perms[:, i + 1 :] < perms[:, i : i + 1]).sum(axis=1)
        ranks += smaller * math.factorial(n - 1 - i)
    return ranks


@lru_cache(maxsize=None)
def all_permutations(n: int) -> np.ndarray:
    """All of S_n as a read-only ``(n!, n)`` array, row index == lexicographic rank."""
    if not 1 <= n <= MAX_ENUM_DEGREE:
        raise ValueError(f"enumeration of S_{n} not supported (1 <= n <= {MAX_ENUM_DEGREE})")
    arr = np.array(list(_iter_permutations(range(n))), dtype=np.int64).reshape(-1, n)
    arr.setflags(write=False)
    return arr


def inverse_array(perms: np.ndarray) -> np.ndarray:
    perms = np.asarray(perms)
    inv = np.empty_like(perms)
    rows = np.arange(perms.shape[0])[:, None]
    inv[rows, perms] = np.arange(perms.shape[1])
    return inv


# -- generating sets -------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSet:
    """Identity-free, inverse-closed subset of S_n."""

    n: int
    elements: frozenset[Permutation]

    def __post_init__(self) -> None:
        elems = frozenset(self.elements)
        object.__setattr__(self, "elements", elems)
        for s in elems:
            if s.n != self.n:
                raise ValueError(f"{s} is not in S_{self.n}")
            if s.is_identity():
                raise ValueError("generating set must not contain the identity")
            if s.inverse() not in elems:
                raise ValueError(f"not inverse-closed: {s} present, {s.inverse()} missing")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.sorted())

    def __contains__(self, item: object) -> bool:
        return item in self.elements

    def sorted(self) -> list[Permutation]:
        """Elements in lexicographic (rank) order."""
        return sorted(self.elements)

    def as_array(self) -> np.ndarray:
        if not self.elements:
            return np.zeros((0, self.n), dtype=np.int64)
        return np.array([s.images for s in self.sorted()], dtype=np.int64)

    def issubset(self, other: GeneratorSet) -> bool:
        return self.n == other.n and self.elements <= other.elements

    @classmethod
    def from_cycles(cls, n: int, texts: Iterable[str]) -> GeneratorSet:
        return cls(n, frozenset(Permutation.from_cycles(t, n) for t in texts))


def gen_reducible_set(n: int, k: int) -> GeneratorSet:
    """R_n(k): permutations that are maximally (n-k)-reducible.

    ``k = 0`` gives the empty set (its only member would be the identity).
    """
    if not 1 <= n <= MAX_ENUM_DEGREE:
        raise ValueError(f"n={n} outside enumerable range 1..{MAX_ENUM_DEGREE}")
    if not 0 <= k < n:
        raise ValueError(f"k={k} must satisfy 0 <= k < n={n}")
    perms = all_permutations(n)
    hits = perms[max_reducibility_array(perms) == n - k]
    elems = frozenset(Permutation(tuple(row)) for row in hits.tolist())
    if k == 0:
        elems = frozenset()
    return GeneratorSet(n, elems)


def gen_prime_set(n: int) -> GeneratorSet:
    """R'_n(2) = {(1,2,3), (1,3,2), (1,3)} ∪ {(1,2)(j-1,j) : 4 <= j <= n}."""
    if n < 4:
        raise ValueError(f"R'_n(2) needs n >= 4, got {n}")
    texts = ["(1,2,3)", "(1,3,2)", "(1,3)"]
    texts += [f"(1,2)({j - 1},{j})" for j in range(4, n + 1)]
    return GeneratorSet.from_cycles(n, texts)


def relabel_without(p: Permutation, point: int) -> Permutation:
    """View a permutation fixing ``point`` as an element of S_{n-1}.

    Points above ``point`` shift down by one, preserving order.
    """
    if not p.fixes(point):
        raise ValueError(f"{p} does not fix {point}")
    z = point - 1
    out = []
    for i, v in enumerate(p.images):
        if i == z:
            continue
        out.append(v - (v > z))
    return Permutation(tuple(out))


def stab_split(
    gens: GeneratorSet, point: int, relabel: bool = False
) -> tuple[GeneratorSet, GeneratorSet]:
    """Split into (elements fixing ``point``, elements moving ``point``).

    With ``relabel=True`` the first part is returned inside S_{n-1}.
    """
    if not 1 <= point <= gens.n:
        raise ValueError(f"point {point} outside 1..{gens.n}")
    fixing = frozenset(s for s in gens.elements if s.fixes(point))
    moving = gens.elements - fixing
    if relabel:
        first = GeneratorSet(gens.n - 1, frozenset(relabel_without(s, point) for s in fixing))
    else:
        first = GeneratorSet(gens.n, fixing)
    return first, GeneratorSet(gens.n, moving)
