"""Dense graphs on a fixed vertex set with bitset adjacency rows.

Vertices are the integers ``0..n-1``. Every adjacency row is a Python int
used as a bitset, so co-neighborhoods are single ``&`` chains and set sizes
are ``int.bit_count()``. This is the substrate for everything else in the
package: clique counting, clique-removal processes, and typicality checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from random import Random
from typing import Iterable, Iterator

MAX_VERTICES = 4096  # sanity cap; removal experiments need n up to ~1000

__all__ = ["DenseGraph", "TypicalityReport", "is_typical", "MAX_VERTICES"]


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class DenseGraph:
    """Simple undirected graph; rows stay symmetric and self-loop free.

    Instances are mutable (``remove_clique_edges`` edits in place); callers
    that share a graph across workers must treat it as frozen or ``copy()``.
    """

    __slots__ = ("n", "adj", "m")

    def __init__(self, n: int, adj: list[int] | None = None, m: int | None = None):
        if not 0 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside [0, {MAX_VERTICES}]")
        self.n = n
        self.adj = [0] * n if adj is None else adj
        if len(self.adj) != n:
            raise ValueError("adjacency row count does not match n")
        self.m = sum(row.bit_count() for row in self.adj) // 2 if m is None else m

    @classmethod
    def empty(cls, n: int) -> "DenseGraph":
        return cls(n, [0] * n, 0)

    @classmethod
    def complete(cls, n: int) -> "DenseGraph":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)], n * (n - 1) // 2)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "DenseGraph":
        g = cls.empty(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.adj[u] >> v & 1)

    def add_edge(self, u: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise ValueError("self-loops are not allowed")
        if not self.adj[u] >> v & 1:
            self.adj[u] |= 1 << v
            self.adj[v] |= 1 << u
            self.m += 1

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v].bit_count()

    def density(self) -> float:
        """Edge density m / C(n,2); zero for graphs with fewer than 2 vertices."""
        pairs = self.n * (self.n - 1) // 2
        return self.m / pairs if pairs else 0.0

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    def copy(self) -> "DenseGraph":
        return DenseGraph(self.n, self.adj.copy(), self.m)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, DenseGraph)
            and self.n == other.n
            and self.adj == other.adj
        )

    def __repr__(self) -> str:
        return f"DenseGraph(n={self.n}, m={self.m})"

    # -- co-neighborhoods ---------------------------------------------------

    def common_neighborhood_mask(self, vertices: Iterable[int]) -> int:
        """Bitset of vertices adjacent to every vertex in ``vertices``.

        This is the literal intersection of adjacency rows. Members of the
        query set are never in the result because no vertex is adjacent to
        itself; there is no additional exclusion beyond that.
        """
        mask = -1
        count = 0
        for v in vertices:
            self._check_vertex(v)
            mask &= self.adj[v]
            count += 1
        if count == 0:
            raise ValueError("common neighborhood of an empty set is undefined")
        return mask

    def common_neighborhood(self, vertices: Iterable[int]) -> tuple[int, ...]:
        return tuple(bits(self.common_neighborhood_mask(vertices)))

    # -- cliques ------------------------------------------------------------

    def count_cliques(self, k: int) -> int:
        """Exact number of k-vertex cliques.

        Counts by extending one vertex at a time in increasing order, so each
        clique is seen exactly once; k > n gives 0.
        """
        if k < 1:
            raise ValueError("clique size must be at least 1")
        if k > self.n:
            return 0
        if k == 1:
            return self.n
        if k == 2:
            return self.m
        adj = self.adj

        def grow(candidates: int, need: int) -> int:
            if need == 1:
                return candidates.bit_count()
            total = 0
            while candidates:
                low = candidates & -candidates
                v = low.bit_length() - 1
                candidates ^= low
                sub = adj[v] & candidates
                if sub:
                    total += grow(sub, need - 1)
            return total

        return grow((1 << self.n) - 1, k)

    def iter_cliques(self, k: int) -> Iterator[tuple[int, ...]]:
        """Yield every k-clique as an increasing vertex tuple."""
        if k < 1:
            raise ValueError("clique size must be at least 1")
        if k > self.n:
            return
        if k == 1:
            yield from ((v,) for v in range(self.n))
            return
        adj = self.adj

        def grow(prefix: tuple[int, ...], candidates: int) -> Iterator[tuple[int, ...]]:
            if len(prefix) == k:
                yield prefix
                return
            while candidates:
                low = candidates & -candidates
                v = low.bit_length() - 1
                candidates ^= low
                yield from grow(prefix + (v,), adj[v] & candidates)

        yield from grow((), (1 << self.n) - 1)

    def remove_clique_edges(self, clique: Iterable[int]) -> "DenseGraph":
        """Delete all internal edges of ``clique`` in place and return self.

        Every internal pair must currently be an edge; a missing edge means
        the caller's process state is corrupt and raises ValueError before
        anything is modified.
        """
        vs = tuple(clique)
        for u, v in combinations(vs, 2):
            if not self.has_edge(u, v):
                raise ValueError(f"edge ({u},{v}) not present; clique removal refused")
        for u, v in combinations(vs, 2):
            self.adj[u] ^= 1 << v
            self.adj[v] ^= 1 << u
            self.m -= 1
        return self


@dataclass(frozen=True)
class TypicalityReport:
    """Outcome of a typicality probe.

    A graph with density p is (epsilon, h)-typical when every vertex set A
    with 1 <= |A| <= h has (1 +- epsilon) * p^{|A|} * n common neighbors.
    ``worst_relative_deviation`` is the largest observed |size - prediction|
    relative to its allowance, and ``passed`` is equivalent to
    ``worst_relative_deviation <= epsilon``.
    """

    epsilon: float
    h: int
    worst_relative_deviation: float
    worst_set: tuple[int, ...]
    sets_checked: int
    passed: bool

    def as_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "h": self.h,
            "worst_relative_deviation": self.worst_relative_deviation,
            "worst_set": list(self.worst_set),
            "sets_checked": self.sets_checked,
            "passed": self.passed,
        }


EXHAUSTIVE_LIMIT = 100_000  # auto mode enumerates all sets when C(n,h) is below this


def _probe_sets(
    g: DenseGraph, h: int, mode: str, k_samples: int, seed: int | None
) -> Iterator[tuple[int, ...]]:
    if mode == "exhaustive":
        for size in range(1, h + 1):
            yield from combinations(range(g.n), size)
    elif mode == "sampled":
        rng = Random(seed)
        for size in range(1, h + 1):
            for _ in range(k_samples):
                yield tuple(sorted(rng.sample(range(g.n), size)))
    else:
        raise ValueError(f"unknown typicality mode {mode!r}")


def is_typical(
    g: DenseGraph,
    epsilon: float,
    h: int,
    mode: str = "auto",
    k_samples: int = 200,
    seed: int | None = None,
) -> TypicalityReport:
    """Check (epsilon, h)-typicality of ``g``.

    ``mode`` is "exhaustive" (every vertex set of size 1..h), "sampled"
    (``k_samples`` uniform sets per size, from ``seed``), or "auto", which
    picks exhaustive while C(n,h) <= 100000. A prediction of zero (empty
    graph) counts as deviation zero when the observed size is also zero.
    """
    if not 1 <= h <= g.n:
        raise ValueError(f"h={h} outside [1, n={g.n}]")
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    if mode == "auto":
        mode = "exhaustive" if math.comb(g.n, h) <= EXHAUSTIVE_LIMIT else "sampled"

    p = g.density()
    worst = 0.0
    worst_set: tuple[int, ...] = ()
    checked = 0
    for subset in _probe_sets(g, h, mode, k_samples, seed):
        size = g.common_neighborhood_mask(subset).bit_count()
        predicted = p ** len(subset) * g.n
        if predicted > 0:
            deviation = abs(size - predicted) / predicted
        else:
            deviation = 0.0 if size == 0 else math.inf
        checked += 1
        if deviation > worst:
            worst = deviation
            worst_set = subset
    return TypicalityReport(
        epsilon=epsilon,
        h=h,
        worst_relative_deviation=worst,
        worst_set=worst_set,
        sets_checked=checked,
        passed=worst <= epsilon,
    )
