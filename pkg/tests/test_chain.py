import csv
import math

import numpy as np
import pytest
from scipy import stats

from orbit_berezin import HalfInt, eigenvalue
from orbit_berezin.chain import (
    ChainConfig,
    GapEstimate,
    SpherePoint,
    draw_cosines,
    estimate_lambda1,
    export_trajectory,
    merge_estimates,
    run_chain,
    sample_transition,
    uniform_point,
)
from orbit_berezin.su2 import zonal_kernel

HALF = HalfInt(1)


def test_sphere_point_validation():
    SpherePoint(0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        SpherePoint(1.0, 1.0, 0.0)
    p = SpherePoint.from_array([3.0, 0.0, 4.0])
    assert p.as_array() == pytest.approx([0.6, 0.0, 0.8])


def test_config_validation():
    cfg = ChainConfig(HalfInt(2), HalfInt(0), 5000, 1)
    assert cfg.burn_in == 50
    with pytest.raises(ValueError):
        ChainConfig(HalfInt(2), HalfInt(1), 5000, 1)
    with pytest.raises(ValueError):
        ChainConfig(HalfInt(2), HalfInt(0), 0, 1)
    with pytest.raises(ValueError):
        ChainConfig(HalfInt(2), HalfInt(0), 10, -1)
    with pytest.raises(ValueError):
        ChainConfig(HalfInt(2), HalfInt(0), 10, 2 ** 64)
    with pytest.raises(ValueError):
        estimate_lambda1(ChainConfig(HalfInt(2), HalfInt(0), 999, 1))


def test_cosine_law_spin_half():
    # density (1 + t)/2 on [-1, 1]
    rng = np.random.default_rng(3)
    t, proposals = draw_cosines(zonal_kernel(HALF, HALF), rng, 100_000)
    ks = stats.kstest(t, lambda x: (1 + x) ** 2 / 4).statistic
    assert ks <= 0.01
    assert proposals >= 100_000


def test_cosine_law_spin_zero_is_uniform():
    rng = np.random.default_rng(4)
    t, proposals = draw_cosines(zonal_kernel(HalfInt(0), HalfInt(0)), rng, 50_000)
    assert proposals == 50_000
    assert stats.kstest(t, stats.uniform(-1, 2).cdf).statistic <= 0.01


@pytest.mark.parametrize("tj, tm", [(1, 1), (4, 0), (10, 10), (10, 4)])
def test_acceptance_rate(tj, tm):
    # the kernel has mean 1 against the uniform proposal, envelope 2j + 1
    rng = np.random.default_rng(5)
    _, proposals = draw_cosines(zonal_kernel(HalfInt(tj), HalfInt(tm)), rng, 100_000)
    rate = 100_000 / proposals
    assert abs(rate * (tj + 1) - 1.0) <= 0.2


def test_single_transition_stays_on_sphere():
    rng = np.random.default_rng(6)
    kernel = zonal_kernel(HalfInt(4), HalfInt(2))
    x = uniform_point(rng)
    for _ in range(200):
        x = sample_transition(x, kernel, rng)
        assert abs(np.linalg.norm(x.as_array()) - 1.0) <= 1e-12
    pole = SpherePoint(0.0, 0.0, 1.0)
    assert abs(np.linalg.norm(sample_transition(pole, kernel, rng).as_array()) - 1.0) <= 1e-12


def test_trajectory_shape_and_geometry():
    cfg = ChainConfig(HalfInt(3), HalfInt(1), 2000, 9, burn_in=10)
    traj, acc = run_chain(cfg)
    assert traj.shape == (2011, 3)
    assert np.allclose(np.linalg.norm(traj, axis=1), 1.0, atol=1e-12)
    assert 0 < acc <= 1


def test_stationarity_of_uniform_law():
    traj, _ = run_chain(ChainConfig(HALF, HALF, 100_000, 11))
    assert stats.kstest(traj[:, 2], stats.uniform(-1, 2).cdf).statistic <= 0.01


def test_spin_zero_chain_is_independent():
    est = estimate_lambda1(ChainConfig(HalfInt(0), HalfInt(0), 20_000, 12))
    assert abs(est.lambda1_hat) <= 3 * est.std_error
    assert est.acceptance_rate == 1.0


def test_spin_zero_mean_z():
    traj, _ = run_chain(ChainConfig(HalfInt(0), HalfInt(0), 100_000, 13, burn_in=0))
    z = traj[1:, 2]
    assert abs(z.mean()) <= 3 * z.std() / math.sqrt(len(z))


def test_determinism():
    cfg = ChainConfig(HalfInt(4), HalfInt(2), 3000, 2024)
    a, _ = run_chain(cfg)
    b, _ = run_chain(cfg)
    assert np.array_equal(a, b)
    c, _ = run_chain(ChainConfig(HalfInt(4), HalfInt(2), 3000, 2025))
    assert not np.array_equal(a, c)


@pytest.mark.parametrize("tj, tm, seed", [(2, 2, 21), (6, 2, 22)])
def test_lag2_tracks_square_of_lambda1(tj, tm, seed):
    # z is an eigenfunction, so its lag-2 autocorrelation is lambda1^2
    est = estimate_lambda1(ChainConfig(HalfInt(tj), HalfInt(tm), 50_000, seed))
    lam = float(eigenvalue(HalfInt(tj), HalfInt(tm), 1))
    assert abs(est.lambda1_hat - lam) <= 4 * est.std_error
    assert abs(est.lag2_hat - lam ** 2) <= 4 * est.lag2_std_error
    # self-consistency without the exact value: delta method for lambda1_hat^2
    combined = math.hypot(est.lag2_std_error, 2 * est.lambda1_hat * est.std_error)
    assert abs(est.lag2_hat - est.lambda1_hat ** 2) <= 3 * combined


def test_merge_estimates():
    a = GapEstimate(0.5, 0.1, 0.5, 100, 0.25, 0.1)
    b = GapEstimate(0.7, 0.1, 0.3, 300, 0.45, 0.1)
    m = merge_estimates([a, b])
    assert m.lambda1_hat == pytest.approx(0.6)
    assert m.std_error == pytest.approx(0.1 / math.sqrt(2))
    assert m.acceptance_rate == pytest.approx(0.35)
    assert m.samples == 400
    assert m.gap_hat == pytest.approx(0.4)


def test_export_trajectory(tmp_path):
    traj, _ = run_chain(ChainConfig(HALF, HALF, 20, 1, burn_in=0))
    path = tmp_path / "traj.csv"
    export_trajectory(path, traj)
    raw = path.read_bytes()
    assert b"\r\n" not in raw
    rows = list(csv.reader(raw.decode("utf-8").splitlines()))
    assert rows[0] == ["step", "x", "y", "z"]
    assert len(rows) == 22
    assert float(rows[5][3]) == traj[4, 2]
