import numpy as np
import pytest
from scipy import stats

from mimo_pcsim.channel import (
    annulus_cdf,
    annulus_inverse_cdf,
    complex_gaussian,
    estimate_channels,
    large_scale,
    path_gain,
    sample_realization,
    sample_topology,
    true_channels,
)
from mimo_pcsim.domain.entities import AttackVector, ChannelRealization, LargeScale
from mimo_pcsim.domain.exceptions import DegenerateEstimateError, DomainError
from mimo_pcsim.utils import derive_rng


def test_inverse_cdf_endpoints():
    """Test that U=0 maps to D_min and U=1 to D_max."""
    assert annulus_inverse_cdf(0.0, 10.0, 750.0) == pytest.approx(10.0)
    assert annulus_inverse_cdf(1.0, 10.0, 750.0) == pytest.approx(750.0)


def test_sampled_distances_follow_annulus_law():
    """Test uniform-in-annulus sampling against the closed-form CDF (KS test)."""
    rng = np.random.default_rng(2024)
    samples = annulus_inverse_cdf(rng.random(100_000), 10.0, 750.0)
    result = stats.kstest(samples, lambda x: annulus_cdf(x, 10.0, 750.0))
    assert result.statistic < 0.01


def test_sample_topology_bounds(config):
    """Test that every sampled distance lies in its annulus."""
    rng = derive_rng(3)
    for _ in range(50):
        topo = sample_topology(rng, config)
        assert topo.users == config.users
        assert np.all((topo.z >= config.d_min) & (topo.z <= config.d_max))
        assert config.d_min <= topo.z_J <= config.d_max_attacker
        assert np.all(topo.z_Jk >= config.d_min)


def test_attacker_distances_respect_triangle_inequality(config):
    """Test that attacker-Bob distances come from a consistent planar layout."""
    topo = sample_topology(derive_rng(5), config)
    gap = np.abs(topo.z - topo.z_J)
    unclamped = topo.z_Jk > config.d_min
    assert np.all(topo.z_Jk[unclamped] >= gap[unclamped] - 1e-9)
    assert np.all(topo.z_Jk <= topo.z + topo.z_J + 1e-9)


def test_path_gain(config):
    """Test the A d^-gamma model and its distance ratio identity."""
    unit = config.with_overrides(path_loss_constant=1.0, path_loss_exponent=2.0)
    assert path_gain(1.0, unit) == pytest.approx(1.0)
    expected = 3.0682e-5 * 750.0 ** (-3.522)
    assert path_gain(750.0, config) == pytest.approx(expected, rel=1e-12)
    assert path_gain(100.0, config) / path_gain(400.0, config) == pytest.approx(4.0**3.522)
    with pytest.raises(DomainError):
        path_gain(0.0, config)
    with pytest.raises(DomainError):
        path_gain(np.array([10.0, -1.0]), config)


def test_large_scale_is_decreasing_in_distance(config):
    """Test that farther users have smaller path gains."""
    topo = sample_topology(derive_rng(9), config)
    ls = large_scale(topo, config)
    order = np.argsort(topo.z)
    assert np.all(np.diff(ls.theta[order]) <= 0)


def test_realization_statistics(config):
    """Test unit-variance fading and 1/(P_k L) estimation noise."""
    real = sample_realization(derive_rng(1), config.with_overrides(antennas=4096))
    assert abs(np.mean(real.G)) < 0.02
    assert np.var(real.G) == pytest.approx(1.0, rel=0.03)
    assert np.var(real.W) == pytest.approx(config.pilot_noise[0], rel=0.03)
    assert real.G_Jk is None
    assert sample_realization(derive_rng(1), config, jam_antennas=3).G_Jk.shape == (3, 10)


def test_same_seed_same_draws(config):
    """Test bit-identical topologies and realizations for equal seeds."""
    a = sample_topology(derive_rng(4, 1), config)
    b = sample_topology(derive_rng(4, 1), config)
    np.testing.assert_array_equal(a.z, b.z)
    assert a.z_J == b.z_J
    ra = sample_realization(derive_rng(4, 2), config)
    rb = sample_realization(derive_rng(4, 2), config)
    np.testing.assert_array_equal(ra.G, rb.G)
    np.testing.assert_array_equal(ra.W, rb.W)


def test_clean_estimate_equals_true_channel(config, ls):
    """Test that alpha = 0 and zero noise give the true channel and matched filter."""
    real = sample_realization(derive_rng(2), config)
    clean = ChannelRealization(G=real.G, g_J=real.g_J, W=np.zeros_like(real.W))
    est = estimate_channels(clean, ls, AttackVector.none(config.users), config)
    h = true_channels(clean, ls)
    np.testing.assert_allclose(est.h_hat, h)
    np.testing.assert_allclose(est.v, np.conj(h) / np.linalg.norm(h, axis=1)[:, None])
    np.testing.assert_allclose(np.linalg.norm(est.v, axis=1), 1.0, atol=1e-12)


def test_dominant_contamination_aligns_precoder_with_attacker(config):
    """Test that a strong attacker steers the precoder onto its own channel."""
    single = config.with_overrides(users=1)
    ls = LargeScale(theta=np.array([1e-12]), theta_J=1e-7)
    real = sample_realization(derive_rng(6), single)
    clean = ChannelRealization(G=real.G, g_J=real.g_J, W=np.zeros_like(real.W))
    est = estimate_channels(clean, ls, AttackVector(np.array([1.0])), single)
    direction = np.conj(real.g_J) / np.linalg.norm(real.g_J)
    assert abs(np.vdot(direction, est.v[0])) > 0.999


def test_estimate_norm_concentrates(config):
    """Test that ||h_hat||^2 / M approaches theta + alpha u theta_J + 1/(P L)."""
    single = config.with_overrides(users=1, antennas=1000)
    ls = LargeScale(theta=np.array([1e-9]), theta_J=1e-10)
    attack = AttackVector(np.array([0.5]))
    rng = derive_rng(8)
    norms = []
    for _ in range(100):
        est = estimate_channels(sample_realization(rng, single), ls, attack, single)
        norms.append(np.linalg.norm(est.h_hat) ** 2 / 1000)
    expected = 1e-9 + 0.5 * single.power_ratio[0] * 1e-10 + single.pilot_noise[0]
    assert np.mean(norms) == pytest.approx(expected, rel=0.05)


def test_cross_correlation_decays_with_antennas():
    """Test that |g_k g_l^H / M|^2 shrinks like 1/M."""
    rng = np.random.default_rng(11)
    means = []
    for m in (64, 256, 1024):
        g = complex_gaussian(rng, (200, 2, m))
        corr = np.abs(np.sum(g[:, 0] * np.conj(g[:, 1]), axis=1) / m) ** 2
        means.append(corr.mean())
        assert corr.mean() * m == pytest.approx(1.0, rel=0.3)
    assert means[0] > means[1] > means[2]


def test_estimate_dimension_checks(config, ls):
    """Test that mismatched attacks and zero-norm estimates raise."""
    real = sample_realization(derive_rng(2), config)
    with pytest.raises(DomainError):
        estimate_channels(real, ls, AttackVector.none(3), config)
    zero = ChannelRealization(
        G=np.zeros_like(real.G), g_J=real.g_J, W=np.zeros_like(real.W)
    )
    with pytest.raises(DegenerateEstimateError):
        estimate_channels(zero, ls, AttackVector.none(config.users), config)
