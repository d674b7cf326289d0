"""Mallows distribution, sampling, and the random-profile experiments."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .catalog import catalog_example, catalog_topology, full_visibility_sheaf
from .errors import ValidationError
from .obstruction import omega1
from .orders import ENUMERATION_CAP, TotalOrder, all_total_orders, kendall_tau
from .sheaf import DiscreteOrderSheaf, InteractionGraph, PreferenceProfile


@dataclass(frozen=True)
class MallowsParams:
    reference: TotalOrder
    dispersion: float

    def __post_init__(self) -> None:
        if not 0.0 < self.dispersion <= 1.0:
            raise ValidationError(f"dispersion must lie in (0, 1], got {self.dispersion}")


def mallows_pmf(params: MallowsParams, cap: int = ENUMERATION_CAP) -> dict[TotalOrder, float]:
    """Exact probabilities proportional to ``phi ** kendall_tau(order, reference)``."""
    orders = all_total_orders(params.reference.domain, cap)
    weights = [params.dispersion ** kendall_tau(o, params.reference) for o in orders]
    z = math.fsum(weights)
    return {o: w / z for o, w in zip(orders, weights)}


def sample_mallows(params: MallowsParams, rng: np.random.Generator) -> TotalOrder:
    """Exact draw by repeated insertion.

    The i-th reference item is inserted j slots from the end with weight
    ``phi**j``; each such slot adds exactly j inversions.
    """
    phi = params.dispersion
    ranking: list[int] = []
    for i, item in enumerate(params.reference.ranking):
        weights = [phi**j for j in range(i + 1)]
        u = rng.random() * math.fsum(weights)
        j = 0
        acc = weights[0]
        while u >= acc and j < i:
            j += 1
            acc += weights[j]
        ranking.insert(len(ranking) - j, item)
    return TotalOrder(tuple(ranking))


def trial_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent stream for one trial, keyed by its position in the experiment."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


@dataclass(frozen=True)
class TrialStats:
    n_trials: int
    mean_index: float
    std_index: float
    consistency_rate: float
    histogram: dict[int, int] = field(default_factory=dict)
    seed: int = 0


def aggregate(indices: Sequence[int], consistent: Sequence[bool], seed: int) -> TrialStats:
    n = len(indices)
    if n == 0:
        raise ValueError("no trials to aggregate")
    arr = np.asarray(indices, dtype=float)
    hist = dict(sorted(Counter(int(i) for i in indices).items()))
    return TrialStats(
        n_trials=n,
        mean_index=float(arr.mean()),
        std_index=float(arr.std()),
        consistency_rate=sum(bool(c) for c in consistent) / n,
        histogram=hist,
        seed=seed,
    )


def _run_trials(
    sheaf: DiscreteOrderSheaf,
    draw: Callable[[str, np.random.Generator], TotalOrder],
    n_trials: int,
    seed: int,
    key: tuple[int, ...] = (),
) -> TrialStats:
    if n_trials < 1:
        raise ValueError("n_trials must be at least 1")
    indices, consistent = [], []
    for k in range(n_trials):
        rng = trial_rng(seed, *key, k)
        profile = PreferenceProfile({v: draw(v, rng) for v in sheaf.graph.vertices})
        report = omega1(sheaf, profile)
        indices.append(report.index)
        consistent.append(report.h0_exists)
    return aggregate(indices, consistent, seed)


# -- stochastic interpolation -------------------------------------------------

CONSENSUS = "A>B>C"


def interpolation_dispersion(t: float) -> float:
    return 0.8 - 0.5 * t


def interpolation_references(t: float) -> dict[str, str]:
    """Reference orders at ``t``; each switch takes effect at its threshold."""
    if not 0.0 <= t <= 1.0:
        raise ValidationError(f"t must lie in [0, 1], got {t}")
    return {
        "V1": CONSENSUS,
        "V2": CONSENSUS if t >= 0.5 else "B>C>A",
        "V3": CONSENSUS if t >= 0.75 else "C>A>B",
    }


def default_grid(k: int = 21) -> list[float]:
    if k < 2:
        return [0.0]
    return [float(x) for x in np.linspace(0.0, 1.0, k)]


def run_interpolation_point(
    t: float, n_trials: int, seed: int, t_index: int = 0
) -> TrialStats:
    sheaf, _ = catalog_example("condorcet_triangle")
    phi = interpolation_dispersion(t)
    params = {
        v: MallowsParams(sheaf.order(*ref.split(">")), phi)
        for v, ref in interpolation_references(t).items()
    }
    return _run_trials(sheaf, lambda v, rng: sample_mallows(params[v], rng), n_trials, seed, (t_index,))


def run_interpolation(
    grid: Sequence[float] | None = None, n_trials: int = 500, seed: int = 0
) -> list[tuple[float, TrialStats]]:
    grid = default_grid() if grid is None else list(grid)
    return [(t, run_interpolation_point(t, n_trials, seed, i)) for i, t in enumerate(grid)]


def run_deterministic_family(grid: Sequence[float]) -> list[tuple[float, int]]:
    out = []
    for t in grid:
        sheaf, profile = catalog_example("deterministic_family", t)
        out.append((t, omega1(sheaf, profile).index))
    return out


# -- uniform random profiles --------------------------------------------------

def run_uniform_experiment(
    topology: str | InteractionGraph, n_trials: int = 100, seed: int = 0
) -> TrialStats:
    """I.i.d. uniform orders over three alternatives at every vertex."""
    graph = catalog_topology(topology) if isinstance(topology, str) else topology
    sheaf = full_visibility_sheaf(graph)
    n = len(sheaf.alternatives)
    return _run_trials(sheaf, lambda v, rng: TotalOrder(tuple(rng.permutation(n))), n_trials, seed)
