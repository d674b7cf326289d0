import math
from collections import Counter

import numpy as np
import pytest
from scipy import stats

from ordersheaf import TotalOrder, ValidationError, kendall_tau
from ordersheaf.mallows import (
    MallowsParams,
    default_grid,
    interpolation_dispersion,
    interpolation_references,
    mallows_pmf,
    run_deterministic_family,
    run_interpolation,
    run_interpolation_point,
    run_uniform_experiment,
    sample_mallows,
    trial_rng,
)
from ordersheaf.sheaf import InteractionGraph

REF3 = TotalOrder.of(0, 1, 2)


def draw(params, n, seed):
    rng = np.random.default_rng(seed)
    return Counter(sample_mallows(params, rng) for _ in range(n))


def test_pmf_uniform_at_one():
    pmf = mallows_pmf(MallowsParams(REF3, 1.0))
    assert len(pmf) == 6
    assert all(p == 1 / 6 for p in pmf.values())


def test_pmf_two_items():
    pmf = mallows_pmf(MallowsParams(TotalOrder.of(0, 1), 0.5))
    assert pmf[TotalOrder.of(0, 1)] == pytest.approx(2 / 3, abs=1e-15)
    assert pmf[TotalOrder.of(1, 0)] == pytest.approx(1 / 3, abs=1e-15)


@pytest.mark.parametrize("phi", [1e-6, 0.1, 0.3, 0.5, 0.8, 1.0])
def test_pmf_normalized_and_monotone(phi):
    pmf = mallows_pmf(MallowsParams(TotalOrder.of(0, 1, 2, 3), phi))
    assert abs(math.fsum(pmf.values()) - 1) <= 1e-12
    ref = TotalOrder.of(0, 1, 2, 3)
    for p, pp in pmf.items():
        for q, pq in pmf.items():
            if phi < 1 and kendall_tau(p, ref) < kendall_tau(q, ref):
                assert pp > pq


def test_pmf_concentrates():
    assert mallows_pmf(MallowsParams(REF3, 1e-6))[REF3] > 0.999


def test_params_validation():
    with pytest.raises(ValidationError):
        MallowsParams(REF3, 0.0)
    with pytest.raises(ValidationError):
        MallowsParams(REF3, 1.5)


def test_sampler_uniform_frequencies():
    counts = draw(MallowsParams(REF3, 1.0), 60_000, 1)
    assert all(abs(c / 60_000 - 1 / 6) < 0.01 for c in counts.values())


@pytest.mark.parametrize("phi", [0.3, 0.5, 0.8, 1.0])
def test_sampler_chi_square(phi):
    params = MallowsParams(REF3, phi)
    pmf = mallows_pmf(params)
    n = 60_000
    counts = draw(params, n, int(phi * 1000))
    observed = [counts.get(o, 0) for o in pmf]
    expected = [p * n for p in pmf.values()]
    assert stats.chisquare(observed, expected).pvalue > 0.001
    tv = 0.5 * sum(abs(counts.get(o, 0) / n - p) for o, p in pmf.items())
    assert tv < 0.02


def test_sampler_matches_pmf_for_larger_n():
    params = MallowsParams(TotalOrder.of(3, 1, 0, 2), 0.6)
    pmf = mallows_pmf(params)
    n = 48_000
    counts = draw(params, n, 3)
    tv = 0.5 * sum(abs(counts.get(o, 0) / n - p) for o, p in pmf.items())
    assert tv < 0.03


def test_sampler_deterministic():
    params = MallowsParams(REF3, 0.5)
    a = [sample_mallows(params, trial_rng(9, 1, k)) for k in range(50)]
    b = [sample_mallows(params, trial_rng(9, 1, k)) for k in range(50)]
    assert a == b


def test_schedule():
    assert interpolation_dispersion(0) == 0.8
    assert interpolation_dispersion(1) == pytest.approx(0.3)
    assert interpolation_references(0.49) == {"V1": "A>B>C", "V2": "B>C>A", "V3": "C>A>B"}
    assert interpolation_references(0.5)["V2"] == "A>B>C"
    assert interpolation_references(0.74)["V3"] == "C>A>B"
    assert interpolation_references(0.75)["V3"] == "A>B>C"
    assert len(default_grid()) == 21


def test_deterministic_family_values():
    assert dict(run_deterministic_family([0.0, 0.5, 0.9])) == {0.0: 3, 0.5: 2, 0.9: 0}


def test_interpolation_single_trial_near_consensus():
    # at t=1 all voters share A>B>C with phi=0.3; the consensus cube carries most of
    # the mass among single outcomes
    results = [run_interpolation_point(1.0, 1, seed) for seed in range(200)]
    zero = sum(r.histogram.get(0, 0) for r in results)
    assert all(r.n_trials == 1 for r in results)
    assert zero / 200 == pytest.approx(0.1789, abs=0.08)


def test_interpolation_stats_consistent_and_reproducible():
    out = run_interpolation([0.0, 1.0], n_trials=300, seed=5)
    again = run_interpolation([0.0, 1.0], n_trials=300, seed=5)
    assert out == again
    for _, s in out:
        assert sum(s.histogram.values()) == s.n_trials == 300
        assert set(s.histogram) <= {0, 2, 3}
        assert s.consistency_rate == s.histogram.get(0, 0) / 300


def test_uniform_experiment_examples():
    lone = run_uniform_experiment(InteractionGraph(("solo",)), 20, 0)
    assert lone.consistency_rate == 1.0 and lone.mean_index == 0.0
    k4 = run_uniform_experiment("K4", 2_000, 1)
    assert k4.consistency_rate < 0.01
    assert k4.mean_index == pytest.approx(6 * 5 / 6, abs=0.1)


def test_uniform_path_rate():
    s = run_uniform_experiment("P4", 60_000, 2)
    expected = (1 / 6) ** 3
    assert abs(s.consistency_rate - expected) < 4 * math.sqrt(expected * (1 - expected) / 60_000)


def exact_interpolation(t):
    """Exact distribution of the incompatibility index by enumerating 6**3 profiles."""
    import itertools

    labels = "ABC"
    refs = interpolation_references(t)
    pmfs = {
        v: mallows_pmf(MallowsParams(TotalOrder(tuple(labels.index(x) for x in r.split(">"))),
                                     interpolation_dispersion(t)))
        for v, r in refs.items()
    }
    dist = Counter()
    for a, b, c in itertools.product(pmfs["V1"], pmfs["V2"], pmfs["V3"]):
        dist[(a != b) + (b != c) + (a != c)] += pmfs["V1"][a] * pmfs["V2"][b] * pmfs["V3"][c]
    mean = sum(k * p for k, p in dist.items())
    return mean, dist[0]


@pytest.mark.parametrize("t", [0.0, 0.25, 0.5, 0.75, 1.0])
def test_interpolation_matches_exact_enumeration(t):
    mean, p0 = exact_interpolation(t)
    s = run_interpolation_point(t, 4_000, seed=31)
    assert abs(s.mean_index - mean) < 4 * s.std_index / math.sqrt(4_000)
    assert abs(s.consistency_rate - p0) < 4 * math.sqrt(p0 * (1 - p0) / 4_000) + 1e-9


def test_exact_endpoints():
    mean0, p0 = exact_interpolation(0.0)
    assert mean0 == pytest.approx(2.51, abs=0.005) and p0 == pytest.approx(0.0261, abs=5e-4)
    mean1, p1 = exact_interpolation(1.0)
    assert mean1 == pytest.approx(1.900, abs=0.005) and p1 == pytest.approx(0.1789, abs=5e-4)
