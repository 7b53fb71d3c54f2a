"""Exact enumeration of all clique decompositions of K_n.

The canonical method walks a search tree in which each node locates the
lexicographically smallest uncovered edge {u, v} and branches over every
vertex set S containing {u, v} whose internal pairs are all still uncovered.
Parts are therefore placed in increasing order of their smallest edge, so
every decomposition is generated exactly once. An independent exact-cover
formulation (edges as columns, vertex subsets as rows) cross-checks the
totals.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator

from . import InfeasibleError
from .decomposition import CliqueDecomposition, Profile
from .exact_cover import count_exact_covers

DEFAULT_CAP = 7  # totals grow superexponentially; n=8 is hours in pure Python
EXACT_COVER_CAP = 7

__all__ = [
    "EnumerationResult",
    "count_all",
    "count_exact_cover",
    "enumerate_stream",
    "iter_decompositions",
    "DEFAULT_CAP",
]


@dataclass(frozen=True)
class EnumerationResult:
    n: int
    L: int
    total: int
    by_profile: dict[Profile, int]
    elapsed: float
    method: str

    def as_dict(self, include_profiles: bool = True) -> dict:
        payload: dict = {
            "n": self.n,
            "cutoff": self.L,
            "total": str(self.total),  # decimal string: totals overflow JSON numbers
            "method": self.method,
            "elapsed_seconds": self.elapsed,
        }
        if include_profiles:
            rows = sorted(self.by_profile.items(), key=lambda kv: (kv[0].s, kv[0].oversized_edges))
            payload["profiles"] = [
                {"s": list(p.s), "E": p.oversized_edges, "count": str(c)} for p, c in rows
            ]
        return payload


def _check_cap(n: int, force: bool) -> None:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > DEFAULT_CAP and not force:
        raise InfeasibleError(
            f"enumeration at n={n} exceeds the feasibility cap {DEFAULT_CAP}; "
            "pass force=True (CLI: --force) if you really want to wait"
        )


def _cliques_within(mask: int, adj: list[int]) -> list[int]:
    """All subsets of ``mask`` that are cliques of ``adj``, as masks (incl. 0)."""
    out = [0]
    stack = [(mask, 0)]
    while stack:
        candidates, base = stack.pop()
        while candidates:
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            cur = base | low
            out.append(cur)
            sub = adj[v] & candidates
            if sub:
                stack.append((sub, cur))
    return out


def _smallest_uncovered(adj: list[int]) -> tuple[int, int] | None:
    # The first vertex with a nonempty row has all its partners above it,
    # otherwise an earlier row would be nonempty too.
    for u, row in enumerate(adj):
        if row:
            return u, (row & -row).bit_length() - 1
    return None


def _branch_parts(adj: list[int]) -> list[int] | None:
    edge = _smallest_uncovered(adj)
    if edge is None:
        return None
    u, v = edge
    pivot = (1 << u) | (1 << v)
    extensions = _cliques_within(adj[u] & adj[v], adj)
    return [pivot | ext for ext in extensions]


def _remove_part(adj: list[int], part: int) -> list[int]:
    out = adj.copy()
    vs = []
    mask = part
    while mask:
        low = mask & -mask
        vs.append(low.bit_length() - 1)
        mask ^= low
    for i, a in enumerate(vs):
        for b in vs[i + 1 :]:
            out[a] ^= 1 << b
            out[b] ^= 1 << a
    return out


def _count_from(adj: list[int], sizes: list[int], L: int, acc: dict) -> None:
    parts = _branch_parts(adj)
    if parts is None:
        key = _profile_key(sizes, L)
        acc[key] = acc.get(key, 0) + 1
        return
    for part in parts:
        sizes.append(part.bit_count())
        _count_from(_remove_part(adj, part), sizes, L, acc)
        sizes.pop()


def _profile_key(sizes: list[int], L: int) -> tuple[tuple[int, ...], int]:
    s = [0] * (L - 1)
    oversized = 0
    for k in sizes:
        if k <= L:
            s[k - 2] += 1
        else:
            oversized += k * (k - 1) // 2
    return tuple(s), oversized


def _count_task(args: tuple[list[int], list[int], int]) -> dict:
    adj, sizes, L = args
    acc: dict = {}
    _count_from(adj, sizes, L, acc)
    return acc


def count_all(n: int, L: int = 11, force: bool = False, workers: int = 1) -> EnumerationResult:
    """Exact decomposition counts for K_n, total and per profile at cutoff L."""
    _check_cap(n, force)
    if L < 2:
        raise ValueError("cutoff must be at least 2")
    start = time.perf_counter()
    root = _complete_rows(n)
    acc: dict = {}
    if workers <= 1:
        _count_from(root, [], L, acc)
    else:
        tasks = []
        for part in _branch_parts(root) or []:
            level1 = _remove_part(root, part)
            subparts = _branch_parts(level1)
            if subparts is None:
                tasks.append((level1, [part.bit_count()], L))
                continue
            for sub in subparts:
                tasks.append(
                    (_remove_part(level1, sub), [part.bit_count(), sub.bit_count()], L)
                )
        if not tasks:  # n == 1: single empty decomposition
            acc[_profile_key([], L)] = 1
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for partial in pool.map(_count_task, tasks):
                    for key, count in partial.items():
                        acc[key] = acc.get(key, 0) + count
    elapsed = time.perf_counter() - start
    by_profile = {Profile(L, s, e): c for (s, e), c in acc.items()}
    return EnumerationResult(
        n=n,
        L=L,
        total=sum(by_profile.values()),
        by_profile=by_profile,
        elapsed=elapsed,
        method="canonical",
    )


def _complete_rows(n: int) -> list[int]:
    full = (1 << n) - 1
    return [full ^ (1 << v) for v in range(n)]


def iter_decompositions(n: int, force: bool = False) -> Iterator[CliqueDecomposition]:
    """Yield every decomposition of K_n exactly once, in canonical order.

    Branch parts at each node are visited by increasing size, then
    lexicographically; parts appear in increasing order of their smallest
    edge, which coincides with sorted clique order, so the emitted
    decompositions are already canonical.
    """
    _check_cap(n, force)

    def vertices_of(mask: int) -> tuple[int, ...]:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return tuple(out)

    def walk(adj: list[int], parts: list[tuple[int, ...]]) -> Iterator[CliqueDecomposition]:
        branches = _branch_parts(adj)
        if branches is None:
            yield CliqueDecomposition(n, tuple(parts))
            return
        branch_cliques = sorted(vertices_of(b) for b in branches)
        branch_cliques.sort(key=len)
        for clique in branch_cliques:
            mask = 0
            for v in clique:
                mask |= 1 << v
            parts.append(clique)
            yield from walk(_remove_part(adj, mask), parts)
            parts.pop()

    yield from walk(_complete_rows(n), [])


def enumerate_stream(
    n: int, visitor: Callable[[CliqueDecomposition], None], force: bool = False
) -> int:
    """Invoke ``visitor`` for every decomposition; returns how many were seen.

    Exceptions raised by the visitor propagate unchanged.
    """
    count = 0
    for decomposition in iter_decompositions(n, force=force):
        visitor(decomposition)
        count += 1
    return count


def count_exact_cover(n: int) -> int:
    """Independent oracle: decompositions of K_n as exact covers of its edges.

    Columns are the C(n,2) edges; every vertex subset of size >= 2 is a row
    covering its internal edges. Only sensible for n <= 7 (the row set is all
    of 2^n).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > EXACT_COVER_CAP:
        raise InfeasibleError(
            f"exact-cover oracle is capped at n={EXACT_COVER_CAP} (got {n})"
        )
    edges = list(combinations(range(n), 2))
    index = {e: i for i, e in enumerate(edges)}
    rows = []
    for size in range(2, n + 1):
        for subset in combinations(range(n), size):
            mask = 0
            for e in combinations(subset, 2):
                mask |= 1 << index[e]
            rows.append(mask)
    return count_exact_covers(len(edges), rows)
