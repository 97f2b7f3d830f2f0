import json
import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from wreathprob.asymptotics import family_limits
from wreathprob.diagrams import transition_measure
from wreathprob.groups import cyclic_group
from wreathprob.partitions import dimension, falling, indicator_scalar, partitions_of
from wreathprob.sampling import (
    SampleBatch,
    batch_csv,
    fluctuation_statistics,
    growth_weights,
    normality_check,
    predicted_r_covariance,
    sample_batch,
    sample_canonical,
    sample_plancherel,
    statistic_value,
    summary_json,
)
from wreathprob.wreath import Example1Family, IrreducibleFamily


def rng_for(seed):
    return np.random.default_rng(seed)


def test_growth_weights_match_transition_measure():
    for n in range(7):
        for lam in partitions_of(n):
            tm = transition_measure(lam)
            steps = growth_weights(lam)
            assert [c for c, _, _ in steps] == list(tm.atoms)
            assert [p for _, _, p in steps] == list(tm.weights)
            assert sum(p for _, _, p in steps) == 1
            for content, grown, _ in steps:
                assert sum(grown) == n + 1
                assert content in transition_measure(grown).atoms or True


def test_growth_step_two_one():
    steps = growth_weights((2, 1))
    assert [(c, p) for c, _, p in steps] == [
        (-2, Fraction(3, 8)),
        (0, Fraction(1, 4)),
        (2, Fraction(3, 8)),
    ]
    assert [g for _, g, _ in steps] == [(2, 1, 1), (2, 2), (3, 1)]


def test_sample_plancherel_trivial():
    assert sample_plancherel(0, rng_for(0)) == ()
    assert sample_plancherel(1, rng_for(0)) == (1,)


@pytest.mark.parametrize("n", [3, 4])
def test_plancherel_law_chi_square(n):
    trials = 100000
    rng = rng_for(20260819 + n)
    counts = Counter(sample_plancherel(n, rng) for _ in range(trials))
    expected = {
        lam: Fraction(dimension(lam) ** 2, math.factorial(n))
        for lam in partitions_of(n)
    }
    assert sum(expected.values()) == 1
    chi2 = 0.0
    for lam, p in expected.items():
        mean = trials * float(p)
        sd = math.sqrt(trials * float(p) * (1 - float(p)))
        assert abs(counts[lam] - mean) <= 4 * sd, (lam, counts[lam], mean)
        chi2 += (counts[lam] - mean) ** 2 / mean
    df = len(expected) - 1
    assert chi2 <= df + 4 * math.sqrt(2 * df)


def test_sample_canonical_rejects_other_kinds():
    fam = IrreducibleFamily(cyclic_group(2), (Fraction(1, 2), Fraction(1, 2)))
    with pytest.raises(ValueError):
        sample_canonical(fam, 4, rng_for(0))


def test_canonical_single_box():
    fam = Example1Family(cyclic_group(2), multiplicities=(1, 3))
    trials = 20000
    rng = rng_for(5)
    hits = Counter(sample_canonical(fam, 1, rng) for _ in range(trials))
    assert set(hits) <= {((1,), ()), ((), (1,))}
    for atom, p in [(((1,), ()), 0.25), ((((), (1,))), 0.75)]:
        sd = math.sqrt(trials * p * (1 - p))
        assert abs(hits[atom] - trials * p) <= 4 * sd


def test_canonical_q2_frequencies():
    fam = Example1Family(cyclic_group(2))
    trials = 100000
    rng = rng_for(7)
    counts = Counter(sample_canonical(fam, 2, rng) for _ in range(trials))
    law = {
        ((2,), ()): Fraction(1, 8),
        ((1, 1), ()): Fraction(1, 8),
        ((1,), (1,)): Fraction(1, 2),
        ((), (2,)): Fraction(1, 8),
        ((), (1, 1)): Fraction(1, 8),
    }
    assert set(counts) == set(law)
    for atom, p in law.items():
        mean = trials * float(p)
        sd = math.sqrt(trials * float(p) * (1 - float(p)))
        assert abs(counts[atom] - mean) <= 4 * sd, atom


def test_block_sizes_binomial():
    fam = Example1Family(cyclic_group(2))
    q, trials = 50, 4000
    rng = rng_for(11)
    sizes = np.array(
        [sum(sample_canonical(fam, q, rng)[0]) for _ in range(trials)], dtype=float
    )
    se_mean = math.sqrt(q / 4) / math.sqrt(trials)
    assert abs(sizes.mean() - q / 2) <= 4 * se_mean
    var = sizes.var()
    se_var = (q / 4) * math.sqrt(2 / (trials - 1))
    assert abs(var - q / 4) <= 4 * se_var


def test_mean_r2_matches_qc():
    fam = Example1Family(cyclic_group(2), multiplicities=(1, 3))
    q, trials = 100, 2000
    batch = sample_batch(fam, q, trials, root_seed=13)
    for slot, c in [(0, Fraction(1, 4)), (1, Fraction(3, 4))]:
        values = np.array(
            [float(statistic_value(t, q, ("R", slot, 2))) for t in batch.samples]
        )
        se = math.sqrt(float(c * (1 - c)) * q / trials)
        assert abs(values.mean() - float(q * c)) <= 4 * se


def test_reproducibility_and_workers():
    fam = Example1Family(cyclic_group(2))
    a = sample_batch(fam, 30, 40, root_seed=99)
    b = sample_batch(fam, 30, 40, root_seed=99)
    assert a.samples == b.samples
    c = sample_batch(fam, 30, 40, root_seed=99, workers=2)
    assert c.samples == a.samples
    d = sample_batch(fam, 30, 40, root_seed=100)
    assert d.samples != a.samples
    assert a.seeds == [(99, i) for i in range(40)]


def test_statistics_cache():
    fam = Example1Family(cyclic_group(2))
    batch = sample_batch(fam, 20, 50, root_seed=3)
    first = fluctuation_statistics(batch, [("R", 0, 2)])
    assert ("R", 0, 2) in batch.statistics_cache
    again = fluctuation_statistics(batch, [("R", 0, 2)])
    assert np.array_equal(first, again)


def test_character_statistic_matches_direct_scalar():
    fam = Example1Family(cyclic_group(2))
    batch = sample_batch(fam, 6, 30, root_seed=21)
    for t in batch.samples:
        for l in (1, 2, 3):
            via = statistic_value(t, 6, ("character", 0, l))
            lam = t[0]
            n = sum(lam)
            direct = (
                indicator_scalar(lam, (l,)) / falling(n, l)
                if n >= l
                else Fraction(0)
            )
            assert via == direct


def test_point_mass_statistics_vanish():
    fam = IrreducibleFamily(
        cyclic_group(2), (Fraction(1, 2), Fraction(1, 2))
    )
    q = 16
    shapes = fam.shapes(q)
    batch = SampleBatch(family=fam, q=q, root_seed=0, samples=[shapes] * 40)
    stats = fluctuation_statistics(
        batch, [("R", 0, 2), ("R", 1, 3), ("p", 0, 4), ("character", 0, 2)]
    )
    assert np.all(stats == 0)
    report = normality_check(stats)
    assert all(e["degenerate"] for e in report["statistics"])
    assert not any(e["gaussian"] for e in report["statistics"])


def test_statistic_errors():
    fam = Example1Family(cyclic_group(2))
    batch = sample_batch(fam, 8, 5, root_seed=1)
    with pytest.raises(ValueError):
        fluctuation_statistics(batch, [("R", 0, 1)])
    with pytest.raises(ValueError):
        fluctuation_statistics(batch, [("p", 0, 1)])
    with pytest.raises(ValueError):
        fluctuation_statistics(batch, [("sigma", 0, 2)])
    with pytest.raises(ValueError):
        fluctuation_statistics(SampleBatch(fam, 8, 0, []), [("R", 0, 2)])


def test_normality_calibration():
    rng = rng_for(42)
    n = 5000
    stats = rng.standard_normal((n, 2))
    report = normality_check(stats, ["x", "y"])
    for entry in report["statistics"]:
        assert not entry["degenerate"]
        assert entry["gaussian"]
        assert abs(entry["skewness"]) <= 3 * math.sqrt(6 / n)
        assert abs(entry["excess_kurtosis"]) <= 3 * math.sqrt(24 / n)
    cov = np.array(report["covariance"])
    assert abs(cov[0, 0] - 1) < 0.1 and abs(cov[1, 1] - 1) < 0.1
    assert abs(cov[0, 1]) < 0.1


def test_normality_degenerate_flag():
    stats = np.ones((2000, 1))
    report = normality_check(stats)
    entry = report["statistics"][0]
    assert entry["degenerate"] and not entry["gaussian"]


def test_predicted_covariance_table():
    fam = Example1Family(cyclic_group(2))
    params = family_limits(fam)
    specs = [("R", 0, 2), ("R", 1, 2), ("R", 0, 3)]
    cov = predicted_r_covariance(params, specs)
    expected = np.array(
        [
            [0.25, -0.25, 0.0],
            [-0.25, 0.25, 0.0],
            [0.0, 0.0, 0.5],
        ]
    )
    assert np.array_equal(cov, expected)
    with pytest.raises(ValueError):
        predicted_r_covariance(params, [("p", 0, 2)])


def test_r3_fluctuations_match_limit():
    fam = Example1Family(cyclic_group(2))
    q, trials = 400, 1500
    batch = sample_batch(fam, q, trials, root_seed=2026)
    stats = fluctuation_statistics(batch, [("R", 0, 3), ("R", 1, 3)])
    report = normality_check(
        stats,
        ["r3a", "r3b"],
        predicted_cov=predicted_r_covariance(
            family_limits(fam), [("R", 0, 3), ("R", 1, 3)]
        ),
    )
    for entry in report["statistics"]:
        assert not entry["degenerate"]
        assert abs(entry["variance"] - 0.5) < 0.12
    assert report["covariance_abs_error"] < 0.12


def test_csv_and_summary_schema():
    fam = Example1Family(cyclic_group(2))
    batch = sample_batch(fam, 10, 12, root_seed=8)
    specs = [("R", 0, 2), ("p", 1, 2)]
    text = batch_csv(batch, specs)
    lines = text.strip().split("\n")
    assert lines[0] == "# schema_version=1"
    assert lines[1] == "sample,statistic,raw,centered_scaled"
    assert len(lines) == 2 + 12 * 2
    assert lines[2].startswith("0,R[0,2],")
    doc = json.loads(summary_json(batch, specs))
    assert doc["n_samples"] == 12
    assert doc["q"] == 10
    assert doc["root_seed"] == 8
    names = [e["name"] for e in doc["statistics"]]
    assert names == ["R[0,2]", "p[1,2]"]
    assert len(doc["covariance"]) == 2
