"""Repeated-measurement Markov chain on the sphere.

One step moves a point ``x`` to a point at geodesic angle ``gamma`` with
``cos(gamma)`` drawn from the density ``kernel(arccos t) / 2`` on [-1, 1]
and a uniform azimuth about ``x``. The z coordinate spans a line in the
degree-1 harmonics, so its lag-1 autocorrelation estimates ``lambda^(1)``.

Random numbers come from numpy's PCG64 bit generator seeded with the
config seed; the stream consumed per step is fixed by this module.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .config import MAX_CHAIN_REJECTIONS
from .halfint import HalfInt, check_spin_pair
from .su2 import ZonalKernel, zonal_kernel

MIN_STEPS = 1000
N_BATCHES = 50


@dataclass(frozen=True)
class SpherePoint:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if abs(math.hypot(self.x, self.y, self.z) - 1.0) > 1e-12:
            raise ValueError("point is not on the unit sphere")

    @classmethod
    def from_array(cls, p) -> "SpherePoint":
        p = np.asarray(p, dtype=float)
        p = p / np.linalg.norm(p)
        return cls(float(p[0]), float(p[1]), float(p[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True)
class ChainConfig:
    j: HalfInt
    m: HalfInt
    steps: int
    seed: int
    burn_in: int | None = None

    def __post_init__(self):
        tj, tm = check_spin_pair(self.j, self.m)
        object.__setattr__(self, "j", HalfInt(tj))
        object.__setattr__(self, "m", HalfInt(tm))
        if self.steps < 1:
            raise ValueError("steps must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.burn_in is None:
            object.__setattr__(self, "burn_in", self.steps // 100)
        elif self.burn_in < 0:
            raise ValueError("burn_in must be nonnegative")


@dataclass(frozen=True)
class GapEstimate:
    lambda1_hat: float
    std_error: float
    acceptance_rate: float
    samples: int
    lag2_hat: float = float("nan")
    lag2_std_error: float = float("nan")

    @property
    def gap_hat(self) -> float:
        return 1.0 - self.lambda1_hat


def draw_cosines(kernel: ZonalKernel, rng: np.random.Generator, size: int):
    """Rejection-sample ``size`` values of ``cos(gamma)`` from the kernel row.

    Returns the samples and the number of proposals used. The envelope is
    the kernel maximum ``2j + 1``.
    """
    out = np.empty(size)
    filled = 0
    proposals = 0
    peak = kernel.peak
    while filled < size:
        if proposals > MAX_CHAIN_REJECTIONS * size:
            raise RuntimeError("rejection sampler exceeded its iteration cap")
        need = size - filled
        batch = int(1.2 * need * peak) + 16
        t = rng.uniform(-1.0, 1.0, batch)
        v = rng.uniform(0.0, peak, batch)
        take = np.flatnonzero(v <= kernel(np.arccos(t)))[:need]
        out[filled:filled + take.size] = t[take]
        filled += take.size
        # count proposals only up to the last one used
        proposals += int(take[-1]) + 1 if filled == size else batch
    return out, proposals


def _rotate(p, t, phi):
    """Point at angular cosine ``t`` from unit vector ``p``, azimuth ``phi``."""
    px, py, pz = p
    if abs(pz) < 0.9:
        ax, ay, az = 0.0, 0.0, 1.0
    else:
        ax, ay, az = 1.0, 0.0, 0.0
    dot = ax * px + ay * py + az * pz
    e1x, e1y, e1z = ax - dot * px, ay - dot * py, az - dot * pz
    n1 = math.sqrt(e1x * e1x + e1y * e1y + e1z * e1z)
    e1x, e1y, e1z = e1x / n1, e1y / n1, e1z / n1
    e2x = py * e1z - pz * e1y
    e2y = pz * e1x - px * e1z
    e2z = px * e1y - py * e1x
    s = math.sqrt(max(0.0, 1.0 - t * t))
    c, d = s * math.cos(phi), s * math.sin(phi)
    qx = t * px + c * e1x + d * e2x
    qy = t * py + c * e1y + d * e2y
    qz = t * pz + c * e1z + d * e2z
    norm = math.sqrt(qx * qx + qy * qy + qz * qz)
    return qx / norm, qy / norm, qz / norm


def sample_transition(x: SpherePoint, kernel: ZonalKernel, rng: np.random.Generator) -> SpherePoint:
    """One step of the chain from ``x``."""
    t, _ = draw_cosines(kernel, rng, 1)
    phi = rng.uniform(0.0, 2 * np.pi)
    return SpherePoint(*_rotate((x.x, x.y, x.z), float(t[0]), phi))


def uniform_point(rng: np.random.Generator) -> SpherePoint:
    z = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(0.0, 2 * np.pi)
    r = math.sqrt(1.0 - z * z)
    return SpherePoint.from_array([r * math.cos(phi), r * math.sin(phi), z])


def run_chain(config: ChainConfig):
    """Simulate the chain; returns ``(trajectory, acceptance_rate)``.

    ``trajectory`` has shape ``(burn_in + steps + 1, 3)`` and starts at a
    uniformly distributed point.
    """
    rng = np.random.default_rng(config.seed)
    kernel = zonal_kernel(config.j, config.m)
    n = config.burn_in + config.steps
    start = uniform_point(rng)
    cosines, proposals = draw_cosines(kernel, rng, n)
    phis = rng.uniform(0.0, 2 * np.pi, n)
    traj = np.empty((n + 1, 3))
    p = (start.x, start.y, start.z)
    traj[0] = p
    for i in range(n):
        p = _rotate(p, cosines[i], phis[i])
        traj[i + 1] = p
    return traj, n / proposals


def _lag_ratio(y, lag):
    return float(np.dot(y[:-lag], y[lag:]) / np.dot(y[:-lag], y[:-lag]))


def _batch_ratio(y, lag, n_batches):
    size = len(y) // n_batches
    values = np.array([_lag_ratio(y[b * size:(b + 1) * size], lag) for b in range(n_batches)])
    return float(values.std(ddof=1) / math.sqrt(n_batches))


def estimate_lambda1(config: ChainConfig) -> GapEstimate:
    """Lag-1 autocorrelation of the z coordinate after burn-in."""
    if config.steps < MIN_STEPS:
        raise ValueError(f"need at least {MIN_STEPS} steps, got {config.steps}")
    traj, acceptance = run_chain(config)
    y = traj[config.burn_in + 1:, 2]
    return GapEstimate(
        lambda1_hat=_lag_ratio(y, 1),
        std_error=_batch_ratio(y, 1, N_BATCHES),
        acceptance_rate=acceptance,
        samples=len(y),
        lag2_hat=_lag_ratio(y, 2),
        lag2_std_error=_batch_ratio(y, 2, N_BATCHES),
    )


def merge_estimates(estimates) -> GapEstimate:
    """Inverse-variance weighted combination of independent chains."""
    estimates = list(estimates)
    w = np.array([1.0 / e.std_error ** 2 for e in estimates])
    lam = float(np.dot(w, [e.lambda1_hat for e in estimates]) / w.sum())
    w2 = np.array([1.0 / e.lag2_std_error ** 2 for e in estimates])
    lag2 = float(np.dot(w2, [e.lag2_hat for e in estimates]) / w2.sum())
    samples = sum(e.samples for e in estimates)
    acc = float(np.dot([e.samples for e in estimates], [e.acceptance_rate for e in estimates]) / samples)
    return GapEstimate(lam, float(1.0 / math.sqrt(w.sum())), acc, samples,
                       lag2, float(1.0 / math.sqrt(w2.sum())))


def export_trajectory(path, trajectory) -> None:
    """Write ``step,x,y,z`` rows (UTF-8, LF line endings)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["step", "x", "y", "z"])
        for i, (x, y, z) in enumerate(trajectory):
            writer.writerow([i, repr(float(x)), repr(float(y)), repr(float(z))])
