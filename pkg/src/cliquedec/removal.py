"""Random clique-removal processes on K_n.

The sampler first removes s4 = floor(n^2 (2 - sqrt 3)/12) random 4-cliques
from K_n, then s3 - floor(n^{2-c}) random 3-cliques (s3 = floor(n^2
(sqrt 3 - 1)/6)), and finally emits every remaining edge as a 2-clique. When
neither phase aborts, the result is a valid clique decomposition whose
profile is exactly (s2 = leftover edges, s3 - floor(n^{2-c}) triangles, s4
four-cliques).

Clique selection is uniform over the cliques present in the current graph:
a uniformly random k-subset of vertices is accepted iff it induces a clique,
which leaves every present clique equally likely; when the expected
acceptance rate p^{C(k,2)} falls below a threshold the selector switches to
exhaustive enumeration plus a uniform pick, which preserves uniformity and
guarantees termination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from random import Random
from typing import Iterator, Mapping, Union

from . import ProcessStateError
from .decomposition import Clique, CliqueDecomposition
from .graph import DenseGraph, TypicalityReport
from .seeds import derive_seed

SQRT3 = math.sqrt(3.0)

__all__ = [
    "RemovalConfig",
    "Abort",
    "RunResult",
    "PhaseResult",
    "AbortRateReport",
    "run_kk_removal",
    "sample_gamma_c",
    "estimate_abort_rate",
    "four_clique_target",
    "triangle_target",
    "triangle_truncation",
]


def four_clique_target(n: int) -> int:
    return math.floor(n * n * (2.0 - SQRT3) / 12.0)


def triangle_target(n: int) -> int:
    return math.floor(n * n * (SQRT3 - 1.0) / 6.0)


def triangle_truncation(n: int, c: float) -> int:
    return math.floor(n ** (2.0 - c))


@dataclass(frozen=True)
class RemovalConfig:
    """Parameters of one concatenated-removal run.

    ``epsilon_schedule`` optionally maps a phase (clique size 4 or 3) to a
    fixed relative typicality tolerance; by default every probed vertex set A
    is allowed an additive deviation of sqrt(n) log n around its predicted
    p^{|A|} n co-neighborhood size. ``s4_steps``/``s3_steps`` override the
    step targets (mostly for tiny-n experiments); None means the defaults
    above.
    """

    n: int
    c: float = 0.4
    seed: int = 0
    checkpoint_every: int = 50
    epsilon_schedule: Mapping[int, float] | None = None
    rejection_fallback_threshold: float = 1e-3
    s4_steps: int | None = None
    s3_steps: int | None = None
    typicality_sets_per_size: int = 200

    def __post_init__(self):
        if not 0.0 < self.c < 1.0:
            raise ValueError("truncation exponent c must lie in (0, 1)")
        if self.checkpoint_every < 1:
            raise ValueError("checkpoint_every must be at least 1")
        if self.n < 1:
            raise ValueError("n must be positive")

    def resolved_steps(self) -> tuple[int, int]:
        s4 = four_clique_target(self.n) if self.s4_steps is None else self.s4_steps
        if self.s3_steps is not None:
            s3 = self.s3_steps
        else:
            s3 = triangle_target(self.n) - triangle_truncation(self.n, self.c)
            if s3 <= 0:
                raise ValueError(
                    f"n={self.n} too small: the triangle phase has {s3} steps; "
                    "pass explicit s3_steps/s4_steps for tiny-n runs"
                )
        if s4 < 0 or s3 < 0:
            raise ValueError("step counts must be nonnegative")
        return s4, s3


@dataclass(frozen=True)
class Abort:
    phase: int  # clique size being removed (4 or 3)
    step: int  # 1-based step within the phase at which no clique existed


@dataclass(frozen=True)
class PhaseResult:
    """Outcome of running one K_k-removal phase."""

    graph: DenseGraph
    removed: tuple[Clique, ...]
    aborted_at: int | None


@dataclass(frozen=True)
class RunResult:
    """One run of the concatenated process.

    ``typicality_trace`` pairs a cumulative step index (phase 1 steps are
    1..s4, phase 2 continues s4+1..) with a report whose deviations are
    normalized by the per-set allowance, so ``epsilon`` is 1.0 and ``passed``
    means every probed set stayed within its budget. On success
    ``clique_counts`` = (n4, n3, leftover edges) satisfies
    6 n4 + 3 n3 + n2 = C(n,2); on abort the third entry is the number of
    edges remaining when the process stopped.
    """

    outcome: Union[CliqueDecomposition, Abort]
    typicality_trace: tuple[tuple[int, TypicalityReport], ...]
    clique_counts: tuple[int, int, int]
    seed: int

    @property
    def aborted(self) -> bool:
        return isinstance(self.outcome, Abort)

    @property
    def decomposition(self) -> CliqueDecomposition | None:
        return None if self.aborted else self.outcome

    def final_density(self, n: int) -> float:
        n4, n3, n2 = self.clique_counts
        return n2 / (n * (n - 1) // 2)

    def as_dict(self, include_decomposition: bool = True) -> dict:
        if self.aborted:
            outcome: dict = {
                "kind": "aborted",
                "phase": self.outcome.phase,
                "step": self.outcome.step,
            }
        else:
            outcome = {"kind": "decomposition"}
            if include_decomposition:
                outcome["decomposition"] = self.outcome.to_json_dict()
        n4, n3, n2 = self.clique_counts
        return {
            "outcome": outcome,
            "clique_counts": {"n4": n4, "n3": n3, "n2": n2},
            "typicality_trace": [
                {"step": step, **report.as_dict()}
                for step, report in self.typicality_trace
            ],
            "seed": self.seed,
        }


def _select_clique(
    g: DenseGraph, k: int, rng: Random, fallback_threshold: float
) -> Clique | None:
    """Uniformly random k-clique of ``g``, or None when none exists."""
    n = g.n
    if k > n:
        return None
    adj = g.adj
    acceptance = g.density() ** (k * (k - 1) // 2)
    if acceptance >= fallback_threshold:
        # ~40 expected successes worth of attempts before giving up on
        # rejection; switching routes never biases the pick.
        attempts = max(64, int(40.0 / acceptance))
        for _ in range(attempts):
            vs = rng.sample(range(n), k)
            ok = True
            for i in range(k - 1):
                row = adj[vs[i]]
                for j in range(i + 1, k):
                    if not row >> vs[j] & 1:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return tuple(sorted(vs))
    cliques = list(g.iter_cliques(k))
    if not cliques:
        return None
    return cliques[rng.randrange(len(cliques))]


def run_kk_removal(
    g: DenseGraph,
    k: int,
    steps: int,
    rng: Random,
    fallback_threshold: float = 1e-3,
) -> PhaseResult:
    """Run ``steps`` steps of the K_k-removal process on ``g`` (in place).

    Each step deletes the edges of a uniformly random k-clique of the current
    graph. Aborting (no k-clique left) is a modeled outcome, reported through
    ``aborted_at``, not an exception.
    """
    if k not in (3, 4):
        raise ValueError("the removal process is defined for k in {3, 4}")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    removed: list[Clique] = []
    for t in range(1, steps + 1):
        clique = _select_clique(g, k, rng, fallback_threshold)
        if clique is None:
            return PhaseResult(g, tuple(removed), t)
        g.remove_clique_edges(clique)
        removed.append(clique)
    return PhaseResult(g, tuple(removed), None)


def _checkpoint_report(
    g: DenseGraph,
    h: int,
    sets_per_size: int,
    probe_rng: Random,
    relative_epsilon: float | None,
) -> TypicalityReport:
    n = g.n
    p = g.density()
    budget = math.sqrt(n) * math.log(n) if n > 1 else 1.0
    worst = 0.0
    worst_set: tuple[int, ...] = ()
    checked = 0
    for size in range(1, min(h, n) + 1):
        for _ in range(sets_per_size):
            subset = tuple(sorted(probe_rng.sample(range(n), size)))
            actual = g.common_neighborhood_mask(subset).bit_count()
            predicted = p**size * n
            allowance = budget if relative_epsilon is None else relative_epsilon * predicted
            deviation = abs(actual - predicted)
            score = deviation / allowance if allowance > 0 else (0.0 if deviation == 0 else math.inf)
            checked += 1
            if score > worst:
                worst = score
                worst_set = subset
    return TypicalityReport(
        epsilon=1.0,
        h=h,
        worst_relative_deviation=worst,
        worst_set=worst_set,
        sets_checked=checked,
        passed=worst <= 1.0,
    )


def sample_gamma_c(config: RemovalConfig) -> RunResult:
    """One seeded run of the concatenated K4-then-K3 removal process."""
    n = config.n
    s4_steps, s3_steps = config.resolved_steps()
    total_edges = n * (n - 1) // 2
    process_rng = Random(derive_seed(config.seed, "process"))
    probe_rng = Random(derive_seed(config.seed, "typicality"))
    schedule = config.epsilon_schedule or {}

    g = DenseGraph.complete(n)
    trace: list[tuple[int, TypicalityReport]] = []
    fours: list[Clique] = []
    triangles: list[Clique] = []

    def checkpoint(step: int, phase: int, h: int) -> None:
        trace.append(
            (
                step,
                _checkpoint_report(
                    g,
                    h,
                    config.typicality_sets_per_size,
                    probe_rng,
                    schedule.get(phase),
                ),
            )
        )

    for t in range(1, s4_steps + 1):
        clique = _select_clique(g, 4, process_rng, config.rejection_fallback_threshold)
        if clique is None:
            return RunResult(Abort(4, t), tuple(trace), (len(fours), 0, g.m), config.seed)
        g.remove_clique_edges(clique)
        fours.append(clique)
        if g.m != total_edges - 6 * t:
            raise ProcessStateError(
                f"edge ledger broken in 4-clique phase at step {t}: m={g.m}"
            )
        if t % config.checkpoint_every == 0 or t == s4_steps:
            checkpoint(t, 4, h=3)

    for t in range(1, s3_steps + 1):
        clique = _select_clique(g, 3, process_rng, config.rejection_fallback_threshold)
        if clique is None:
            return RunResult(
                Abort(3, t), tuple(trace), (len(fours), len(triangles), g.m), config.seed
            )
        g.remove_clique_edges(clique)
        triangles.append(clique)
        if g.m != total_edges - 6 * s4_steps - 3 * t:
            raise ProcessStateError(
                f"edge ledger broken in triangle phase at step {t}: m={g.m}"
            )
        if t % config.checkpoint_every == 0 or t == s3_steps:
            checkpoint(s4_steps + t, 3, h=2)

    leftover = [tuple(edge) for edge in g.edges()]
    decomposition = CliqueDecomposition(
        n, tuple(sorted(fours + triangles + leftover))
    )
    return RunResult(
        decomposition,
        tuple(trace),
        (len(fours), len(triangles), len(leftover)),
        config.seed,
    )


@dataclass(frozen=True)
class AbortRateReport:
    trials: int
    abort_rate: float
    by_phase: dict[int, int]
    mean_min_density: float

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "abort_rate": self.abort_rate,
            "aborts_by_phase": {str(k): v for k, v in sorted(self.by_phase.items())},
            "mean_min_density": self.mean_min_density,
        }


def trial_configs(config: RemovalConfig, trials: int) -> Iterator[RemovalConfig]:
    for i in range(trials):
        yield replace(config, seed=derive_seed(config.seed, "trial", i))


def estimate_abort_rate(config: RemovalConfig, trials: int) -> AbortRateReport:
    """Run independent seeded trials and aggregate abort statistics.

    The per-run minimum density is its final density (density only ever
    decreases), evaluated where the run stopped.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    aborts = 0
    by_phase: dict[int, int] = {}
    density_sum = 0.0
    for cfg in trial_configs(config, trials):
        result = sample_gamma_c(cfg)
        if result.aborted:
            aborts += 1
            by_phase[result.outcome.phase] = by_phase.get(result.outcome.phase, 0) + 1
        density_sum += result.final_density(config.n)
    return AbortRateReport(
        trials=trials,
        abort_rate=aborts / trials,
        by_phase=by_phase,
        mean_min_density=density_sum / trials,
    )
