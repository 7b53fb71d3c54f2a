"""Independent brute-force oracles used by the tests.

These deliberately avoid the library's own kernels: clique counts iterate
over all vertex subsets, and rank-2 matroids are enumerated straight from the
independence axioms.
"""

from itertools import combinations

from cliquedec.graph import DenseGraph


def brute_force_clique_count(g: DenseGraph, k: int) -> int:
    if k == 1:
        return g.n
    count = 0
    for subset in combinations(range(g.n), k):
        if all(g.has_edge(u, v) for u, v in combinations(subset, 2)):
            count += 1
    return count


def count_rank2_matroids(n: int) -> int:
    """Count matroids of rank exactly 2 on n labeled elements.

    A candidate independence system is {emptyset} + a set S of independent
    singletons + a nonempty set P of pairs inside S (heredity is then
    automatic). The exchange axiom reduces to: for every independent
    singleton b and independent pair {x, y} not containing b, at least one of
    {b, x}, {b, y} is independent. Rank exactly 2 means P is nonempty and no
    larger independent sets exist, which holds by construction.
    """
    elements = list(range(n))
    total = 0
    for s_size in range(n + 1):
        for S in combinations(elements, s_size):
            pairs = list(combinations(S, 2))
            for mask in range(1, 1 << len(pairs)):
                P = {pairs[i] for i in range(len(pairs)) if mask >> i & 1}
                ok = True
                for b in S:
                    for x, y in P:
                        if b == x or b == y:
                            continue
                        if (min(b, x), max(b, x)) in P or (min(b, y), max(b, y)) in P:
                            continue
                        ok = False
                        break
                    if not ok:
                        break
                total += ok
    return total


def random_graph(n: int, density: float, seed: int) -> DenseGraph:
    from random import Random

    rng = Random(seed)
    edges = [e for e in combinations(range(n), 2) if rng.random() < density]
    return DenseGraph.from_edges(n, edges)
