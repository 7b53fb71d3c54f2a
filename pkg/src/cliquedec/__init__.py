"""Clique decompositions of complete graphs.

A clique decomposition of K_n (equivalently, a linear space on n labeled
points) is a partition of the edge set of K_n into cliques with at least two
vertices each. This package provides:

- ``graph``: dense bitset graphs with co-neighborhood queries, exact clique
  counting, and quasirandomness (typicality) checks;
- ``decomposition``: the decomposition data type, validation, size profiles,
  and random-ordering experiments;
- ``enumerator``: exact enumeration of all decompositions of K_n for small n,
  cross-checked by an independent exact-cover solver;
- ``removal``: the random K4-then-K3 clique-removal process that samples
  decompositions with a prescribed profile;
- ``asymptotics``: numerical evaluation of the upper/lower bound formulas for
  the number of decompositions, and exact small-rank matroid identities;
- ``cli``: the ``cliquedec`` command line tool.
"""

__version__ = "0.1.0"


class InfeasibleError(RuntimeError):
    """A request was refused because it is too large to compute exactly."""


class ProcessStateError(RuntimeError):
    """Internal invariant of a removal process was violated (corrupt state)."""
