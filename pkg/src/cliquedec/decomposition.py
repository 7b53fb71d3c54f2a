"""Clique decompositions of K_n and their size profiles.

A decomposition is a set of cliques (vertex sets of size >= 2) whose internal
edges partition the edge set of K_n. The profile of a decomposition records,
up to a cutoff L, how many cliques have each size, plus the number of edges
inside oversized cliques.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from random import Random
from typing import Iterable, Sequence

from .graph import DenseGraph
from .seeds import derive_seed

Clique = tuple[int, ...]

__all__ = [
    "Clique",
    "CliqueDecomposition",
    "Profile",
    "Violation",
    "OrderExperimentReport",
    "random_order_experiment",
]


@dataclass(frozen=True)
class Violation:
    """One defect found by validation: kind plus the offending edge/clique."""

    kind: str  # uncovered-edge | multi-covered-edge | undersized-clique | vertex-out-of-range
    detail: tuple

    def __str__(self) -> str:
        return f"{self.kind}{self.detail}"


@dataclass(frozen=True)
class Profile:
    """Clique counts by size: s[k-2] cliques of size k for 2 <= k <= L.

    ``oversized_edges`` is the total number of edges inside cliques with more
    than L vertices. For a decomposition of K_n,
    sum_k C(k,2)*s[k-2] + oversized_edges == C(n,2).
    """

    L: int
    s: tuple[int, ...]
    oversized_edges: int = 0

    def __post_init__(self):
        if self.L < 2:
            raise ValueError("profile cutoff must be at least 2")
        if len(self.s) != self.L - 1:
            raise ValueError("profile vector must have one entry per size 2..L")

    def count(self, k: int) -> int:
        if not 2 <= k <= self.L:
            raise ValueError(f"size {k} outside profile range 2..{self.L}")
        return self.s[k - 2]

    def covered_edges(self) -> int:
        return (
            sum(k * (k - 1) // 2 * c for k, c in enumerate(self.s, start=2))
            + self.oversized_edges
        )

    def as_dict(self) -> dict:
        return {"L": self.L, "s": list(self.s), "E": self.oversized_edges}


def _normalize_clique(vertices: Iterable[int]) -> Clique:
    c = tuple(sorted(vertices))
    if len(set(c)) != len(c):
        raise ValueError(f"repeated vertex in clique {c}")
    return c


@dataclass(frozen=True)
class CliqueDecomposition:
    """A list of cliques intended to partition the edges of K_n.

    The constructor does not validate coverage; use :meth:`validate`.
    Canonical form sorts each clique and the clique list lexicographically,
    which makes serialization and deduplication deterministic.
    """

    n: int
    cliques: tuple[Clique, ...]

    @classmethod
    def from_cliques(cls, n: int, cliques: Iterable[Iterable[int]]) -> "CliqueDecomposition":
        return cls(n, tuple(_normalize_clique(c) for c in cliques))

    def canonical(self) -> "CliqueDecomposition":
        return CliqueDecomposition(self.n, tuple(sorted(self.cliques)))

    def validate(self) -> list[Violation]:
        """Return all coverage violations; an empty list means valid.

        Checks that every clique has >= 2 in-range vertices and that every
        edge of K_n lies in exactly one clique.
        """
        violations: list[Violation] = []
        n = self.n
        cover: Counter[tuple[int, int]] = Counter()
        for idx, clique in enumerate(self.cliques):
            if any(not 0 <= v < n for v in clique):
                violations.append(Violation("vertex-out-of-range", (idx, clique)))
                continue
            if len(clique) < 2:
                violations.append(Violation("undersized-clique", (idx, clique)))
                continue
            for i in range(len(clique)):
                for j in range(i + 1, len(clique)):
                    cover[(clique[i], clique[j])] += 1
        for u in range(n):
            for v in range(u + 1, n):
                c = cover.get((u, v), 0)
                if c == 0:
                    violations.append(Violation("uncovered-edge", (u, v)))
                elif c > 1:
                    violations.append(Violation("multi-covered-edge", (u, v, c)))
        return violations

    def profile(self, L: int) -> Profile:
        """Profile at cutoff L. Raises if the decomposition is invalid."""
        if L < 2:
            raise ValueError("profile cutoff must be at least 2")
        bad = self.validate()
        if bad:
            raise ValueError(f"invalid decomposition: {bad[0]} (+{len(bad) - 1} more)")
        return self._profile_unchecked(L)

    def _profile_unchecked(self, L: int) -> Profile:
        sizes = Counter(len(c) for c in self.cliques)
        s = tuple(sizes.get(k, 0) for k in range(2, L + 1))
        oversized = sum(
            k * (k - 1) // 2 * c for k, c in sizes.items() if k > L
        )
        return Profile(L, s, oversized)

    def to_json_dict(self) -> dict:
        canon = self.canonical()
        return {"n": canon.n, "cliques": [list(c) for c in canon.cliques]}

    @classmethod
    def from_json_dict(cls, payload: dict) -> "CliqueDecomposition":
        return cls.from_cliques(int(payload["n"]), payload["cliques"]).canonical()


@dataclass(frozen=True)
class OrderExperimentReport:
    """Aggregate result of random-ordering trials.

    A trial passes the co-neighborhood test when every probed prefix m and
    vertex set A satisfies
        | |common nbhd in G_m| - (1 - m/N)^{|A|} n |  <=  sqrt(n) log n,
    and passes the window test when, for consecutive checkpoints m < m', the
    number of size-k cliques among positions m+1..m' is within n log n of
    s_k (m' - m)/N for every k. Excesses are deviations divided by the bound,
    so values above 1 are failures.
    """

    trials: int
    coneighborhood_pass_rate: float
    window_pass_rate: float
    worst_coneighborhood_excess: float
    worst_window_excess: float

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "coneighborhood_pass_rate": self.coneighborhood_pass_rate,
            "window_pass_rate": self.window_pass_rate,
            "worst_coneighborhood_excess": self.worst_coneighborhood_excess,
            "worst_window_excess": self.worst_window_excess,
        }


def checkpoint_positions(total: int, checkpoints: int) -> list[int]:
    """Evenly spaced prefix lengths 0..total, always including both ends."""
    if total == 0:
        return [0]
    points = {round(j * total / checkpoints) for j in range(checkpoints + 1)}
    points.update((0, total))
    return sorted(points)


def random_order_experiment(
    decomposition: CliqueDecomposition,
    trials: int,
    checkpoints: int = 20,
    h: int = 3,
    sets_per_size: int = 100,
    seed: int = 0,
) -> OrderExperimentReport:
    """Shuffle the cliques repeatedly and test prefix quasirandomness.

    Each trial draws a uniformly random ordering of the cliques. At evenly
    spaced prefixes m the graph G_m of still-uncovered edges is probed on
    ``sets_per_size`` random vertex sets per size 1..h against the
    (1 - m/N)^{|A|} n co-neighborhood prediction, and the clique sizes in
    every window between consecutive checkpoints are compared against their
    proportional share. Pass rates are fractions of trials in which every
    probe stayed within its bound.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    bad = decomposition.validate()
    if bad:
        raise ValueError(f"invalid decomposition: {bad[0]} (+{len(bad) - 1} more)")

    n = decomposition.n
    cliques = list(decomposition.cliques)
    N = len(cliques)
    if N == 0:  # K_1: nothing to order
        return OrderExperimentReport(trials, 1.0, 1.0, 0.0, 0.0)

    h = min(h, n)
    co_bound = math.sqrt(n) * math.log(n) if n > 1 else 1.0
    win_bound = n * math.log(n) if n > 1 else 1.0
    max_size = max(len(c) for c in cliques)
    total_by_size = Counter(len(c) for c in cliques)
    positions = checkpoint_positions(N, checkpoints)

    co_passes = 0
    win_passes = 0
    worst_co = 0.0
    worst_win = 0.0

    for trial in range(trials):
        rng = Random(derive_seed(seed, "order-trial", trial))
        order = cliques.copy()
        rng.shuffle(order)

        graph = DenseGraph.complete(n)
        removed = 0
        co_ok = True
        for m in positions:
            while removed < m:
                graph.remove_clique_edges(order[removed])
                removed += 1
            survival = 1.0 - m / N
            for size in range(1, h + 1):
                for _ in range(sets_per_size):
                    subset = rng.sample(range(n), size)
                    actual = graph.common_neighborhood_mask(subset).bit_count()
                    predicted = survival**size * n
                    excess = abs(actual - predicted) / co_bound
                    if excess > worst_co:
                        worst_co = excess
                    if excess > 1.0:
                        co_ok = False
        co_passes += co_ok

        win_ok = True
        for lo, hi in zip(positions, positions[1:]):
            window = Counter(len(c) for c in order[lo:hi])
            share = (hi - lo) / N
            for k in range(2, max_size + 1):
                expected = total_by_size.get(k, 0) * share
                excess = abs(window.get(k, 0) - expected) / win_bound
                if excess > worst_win:
                    worst_win = excess
                if excess > 1.0:
                    win_ok = False
        win_passes += win_ok

    return OrderExperimentReport(
        trials=trials,
        coneighborhood_pass_rate=co_passes / trials,
        window_pass_rate=win_passes / trials,
        worst_coneighborhood_excess=worst_co,
        worst_window_excess=worst_win,
    )
