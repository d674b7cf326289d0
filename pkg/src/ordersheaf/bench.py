"""Scaling experiments: constraint-graph stalks against naive enumeration.

Timings are wall-clock medians and depend on the machine; only their ratios
and trends are meaningful.
"""
from __future__ import annotations

import itertools
import math
import statistics
import time
import tracemalloc
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .catalog import full_visibility_sheaf
from .mallows import trial_rng
from .obstruction import omega1
from .orders import TotalOrder
from .pushforward import (
    STALK_ENUMERATION_LIMIT,
    QuotientMap,
    build_constraint_dag,
    compute_stalk,
    detect_cycle,
    is_cycle_of,
    naive_stalk_oracle,
)
from .sheaf import InteractionGraph, PreferenceProfile


@dataclass(frozen=True)
class BenchResult:
    parameter_name: str
    parameter: int
    trials: int
    dag_ms_median: float
    dag_ms_mean: float
    naive_ms: float | None
    naive_extrapolated: bool
    speedup: float | None
    conflict_rate: float
    dag_peak_bytes: int


def random_orders(rng: np.random.Generator, n_voters: int, n_alternatives: int) -> list[TotalOrder]:
    return [TotalOrder(tuple(rng.permutation(n_alternatives))) for _ in range(n_voters)]


def _dag_check(orders: Sequence[TotalOrder]) -> tuple[int, ...] | None:
    return detect_cycle(build_constraint_dag(orders))


def _time_ms(fn, *args) -> tuple[float, object]:
    start = time.perf_counter()
    out = fn(*args)
    return (time.perf_counter() - start) * 1e3, out


def _peak_bytes(orders: Sequence[TotalOrder]) -> int:
    tracemalloc.start()
    try:
        _dag_check(orders)
        return tracemalloc.get_traced_memory()[1]
    finally:
        tracemalloc.stop()


def _measure(
    profiles: Sequence[Sequence[TotalOrder]], warmup: int
) -> tuple[list[float], float, int]:
    for orders in profiles[:warmup]:
        _dag_check(orders)
    times, conflicts = [], 0
    for orders in profiles:
        ms, cycle = _time_ms(_dag_check, orders)
        times.append(ms)
        conflicts += cycle is not None
    peaks = sorted(_peak_bytes(o) for o in profiles[: min(5, len(profiles))])
    return times, conflicts / len(profiles), peaks[len(peaks) // 2]


def _naive_ms(profiles: Sequence[Sequence[TotalOrder]], n_alternatives: int) -> float:
    alphabet = range(n_alternatives)
    return statistics.median(_time_ms(naive_stalk_oracle, o, alphabet)[0] for o in profiles)


def bench_alternatives(
    sizes: Sequence[int] = (6, 8, 10, 12),
    voters_per_merge: int = 5,
    trials: int = 50,
    seed: int = 0,
    naive_limit: int = STALK_ENUMERATION_LIMIT,
    naive_trials: int | None = None,
    warmup: int = 5,
) -> list[BenchResult]:
    """DAG cycle detection vs naive enumeration as the alternative count grows.

    Naive time is measured up to ``naive_limit`` alternatives and beyond that
    extrapolated as ``naive(limit) * n! / limit!``.
    """
    if any(n < 2 for n in sizes):
        raise ValueError("every size must be at least 2")
    naive_trials = trials if naive_trials is None else naive_trials

    def profiles_for(n: int) -> list[list[TotalOrder]]:
        return [random_orders(trial_rng(seed, n, k), voters_per_merge, n) for k in range(trials)]

    measured_naive: dict[int, float] = {}
    results = []
    for n in sizes:
        profiles = profiles_for(n)
        times, conflict_rate, peak = _measure(profiles, warmup)
        if n <= naive_limit:
            measured_naive[n] = _naive_ms(profiles[:naive_trials], n)
            naive, extrapolated = measured_naive[n], False
        else:
            if naive_limit not in measured_naive:
                measured_naive[naive_limit] = _naive_ms(profiles_for(naive_limit)[:naive_trials], naive_limit)
            naive = measured_naive[naive_limit] * math.factorial(n) / math.factorial(naive_limit)
            extrapolated = True
        median = statistics.median(times)
        results.append(
            BenchResult(
                "alternatives", n, trials, median, statistics.fmean(times),
                naive, extrapolated, naive / median if median > 0 else math.inf,
                conflict_rate, peak,
            )
        )
    return results


def bench_merge_size(
    merge_sizes: Sequence[int] = (3, 5, 10, 20, 50),
    n_alternatives: int = 8,
    trials: int = 50,
    seed: int = 0,
    identical_voters: bool = False,
    warmup: int = 5,
) -> list[BenchResult]:
    """DAG cycle-detection time and conflict rate as the merged group grows."""
    if any(p < 2 for p in merge_sizes):
        raise ValueError("every merge size must be at least 2")
    results = []
    for p in merge_sizes:
        profiles = []
        for k in range(trials):
            rng = trial_rng(seed, p, k)
            if identical_voters:
                profiles.append(random_orders(rng, 1, n_alternatives) * p)
            else:
                profiles.append(random_orders(rng, p, n_alternatives))
        times, conflict_rate, peak = _measure(profiles, warmup)
        results.append(
            BenchResult(
                "merge_size", p, trials, statistics.median(times), statistics.fmean(times),
                None, False, None, conflict_rate, peak,
            )
        )
    return results


def erdos_renyi(n: int, p: float, rng: np.random.Generator) -> InteractionGraph:
    """Each of the n(n-1)/2 possible edges independently with probability ``p``."""
    vertices = tuple(str(i) for i in range(n))
    pairs = list(itertools.combinations(vertices, 2))
    keep = rng.random(len(pairs)) < p
    return InteractionGraph(vertices, tuple(e for e, k in zip(pairs, keep) if k))


@dataclass(frozen=True)
class CommitteeReport:
    n_voters: int
    n_alternatives: int
    edge_prob: float
    n_edges: int
    n_obstructed: int
    incompatibility_rate: float
    omega1_ms: float
    merged: tuple[str, ...]
    stalk_empty: bool
    cycle_witness: tuple[int, ...] | None
    cycle_verified: bool
    merge_ms: float
    seed: int


def committee_scenario(
    n_voters: int = 50,
    n_alternatives: int = 8,
    edge_prob: float = 0.15,
    merge_size: int = 5,
    seed: int = 0,
) -> CommitteeReport:
    rng = np.random.default_rng(seed)
    graph = erdos_renyi(n_voters, edge_prob, rng)
    labels = tuple(str(i) for i in range(n_alternatives))
    sheaf = full_visibility_sheaf(graph, labels)
    orders = random_orders(rng, n_voters, n_alternatives)
    profile = PreferenceProfile(dict(zip(graph.vertices, orders)))

    omega_ms, report = _time_ms(omega1, sheaf, profile)
    picked = rng.choice(len(graph.vertices), size=merge_size, replace=False)
    merged = tuple(graph.vertices[i] for i in sorted(int(i) for i in picked))
    quotient = QuotientMap.merging(graph, {"merged": merged})
    merge_ms, stalk = _time_ms(compute_stalk, quotient, sheaf, profile, "merged")

    witness = stalk.cycle_witness if stalk.is_empty else None
    dag = build_constraint_dag([profile[v] for v in merged], merged)
    n_edges = len(graph.edges)
    return CommitteeReport(
        n_voters, n_alternatives, edge_prob, n_edges, report.index,
        report.index / n_edges if n_edges else 0.0, omega_ms, merged,
        stalk.is_empty, witness, witness is not None and is_cycle_of(dag, witness),
        merge_ms, seed,
    )
