import numpy as np
import pytest
from scipy import stats as sps

from qcvol import analytic
from qcvol.errors import SampleTooSmallError
from qcvol.stats import (
    MIN_KS_SAMPLE,
    EmpiricalDistribution,
    kolmogorov_p_value,
    ks_test,
    ks_two_sample,
)
from qcvol.utils.inversion import invert_monotone


def uniform_cdf(x):
    return np.clip(x, 0.0, 1.0)


def test_empirical_distribution_is_sorted_and_frozen():
    e = EmpiricalDistribution([0.3, 0.1, 0.2])

    np.testing.assert_array_equal(e.values, [0.1, 0.2, 0.3])
    assert len(e) == 3
    with pytest.raises(ValueError):
        e.values[0] = 1.0


def test_merge_keeps_every_value():
    merged = EmpiricalDistribution.merge(
        [EmpiricalDistribution([0.5, 0.1]), EmpiricalDistribution([0.3])]
    )
    np.testing.assert_array_equal(merged.values, [0.1, 0.3, 0.5])


def test_mean_and_std_error():
    e = EmpiricalDistribution([1.0, 2.0, 3.0, 4.0])

    assert e.mean() == pytest.approx(2.5)
    assert e.std_error() == pytest.approx(np.std([1, 2, 3, 4], ddof=1) / 2.0)
    assert EmpiricalDistribution([1.0]).std_error() == 0.0


def test_histogram_clips_into_range():
    e = EmpiricalDistribution([-0.5, 0.1, 0.6, 0.9, 1.5])
    edges, counts = e.histogram(2, (0.0, 1.0))

    np.testing.assert_allclose(edges, [0.0, 0.5, 1.0])
    np.testing.assert_array_equal(counts, [2, 3])
    assert counts.sum() == len(e)
    np.testing.assert_array_equal(e.counts, counts)


def test_density_integrates_to_one(generator):
    e = EmpiricalDistribution(generator.random(10_000))
    centres, density = e.density(20, (0.0, 1.0))

    assert centres[0] == pytest.approx(0.025)
    assert np.sum(density) * 0.05 == pytest.approx(1.0)


def test_statistic_of_exact_quantiles():
    n = 400
    values = (np.arange(1, n + 1) - 0.5) / n
    result = ks_test(EmpiricalDistribution(values), uniform_cdf)

    assert result.d_statistic == pytest.approx(1.0 / (2 * n))
    assert result.p_value == pytest.approx(1.0)
    assert result.n == n


def test_uniform_sample_passes(generator):
    result = ks_test(EmpiricalDistribution(generator.random(5_000)), uniform_cdf, label="u")

    assert result.p_value > 0.001
    assert result.label == "u"


def test_wrong_law_is_rejected(generator):
    # radii of a random channel on the mixed state, tested against the z-marginal
    radii = invert_monotone(analytic.radial_cdf_mm, generator.random(5_000))
    result = ks_test(EmpiricalDistribution(radii), analytic.cdf_eta_z)

    assert result.p_value < 1e-6


@pytest.mark.parametrize("n", [0, MIN_KS_SAMPLE - 1])
def test_small_samples_are_refused(n):
    with pytest.raises(SampleTooSmallError):
        ks_test(EmpiricalDistribution(np.linspace(0.0, 1.0, n)), uniform_cdf)
    with pytest.raises(SampleTooSmallError):
        ks_two_sample(np.linspace(0.0, 1.0, n), np.linspace(0.0, 1.0, 500))


def test_two_sample_identical():
    x = np.linspace(0.0, 1.0, 300)
    result = ks_two_sample(x, x)

    assert result.d_statistic == 0.0
    assert result.p_value == 1.0


def test_two_sample_detects_shift(generator):
    result = ks_two_sample(generator.random(2_000), generator.random(2_000) + 0.2)
    assert result.p_value < 1e-6


def test_p_value_matches_kolmogorov_law():
    assert kolmogorov_p_value(0.02, 2_500) == pytest.approx(sps.kstwobign.sf(1.0))
    assert kolmogorov_p_value(0.0, 100) == 1.0
