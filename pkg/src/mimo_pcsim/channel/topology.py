"""Network drops and distance-based path gains."""

from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt

from mimo_pcsim.config.system import SystemConfig
from mimo_pcsim.domain.entities import LargeScale, Topology
from mimo_pcsim.domain.exceptions import DomainError

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]


def annulus_inverse_cdf(
    u: float | FloatArray, d_min: float, d_max: float
) -> float | FloatArray:
    """Distance whose annulus CDF ``(x^2 - d_min^2) / (d_max^2 - d_min^2)`` equals ``u``."""
    return np.sqrt(d_min**2 + np.asarray(u) * (d_max**2 - d_min**2))


def annulus_cdf(x: float | FloatArray, d_min: float, d_max: float) -> float | FloatArray:
    x = np.asarray(x, dtype=np.float64)
    span = d_max**2 - d_min**2
    if span == 0:
        return (x >= d_min).astype(np.float64)
    return np.clip((x**2 - d_min**2) / span, 0.0, 1.0)


def sample_topology(rng: np.random.Generator, config: SystemConfig) -> Topology:
    """Draw user and attacker positions uniformly over their annuli.

    Radii come from the inverse annulus CDF; angles are uniform on [0, 2pi), which
    fixes the attacker-Bob distances z_Jk consistently with z_k and z_J.
    """
    k = config.users
    z = annulus_inverse_cdf(rng.random(k), config.d_min, config.d_max)
    z_J = float(annulus_inverse_cdf(rng.random(), config.d_min, config.d_max_attacker))

    user_angle = rng.uniform(0.0, 2.0 * np.pi, size=k)
    attacker_angle = rng.uniform(0.0, 2.0 * np.pi)
    # law of cosines between the two polar points
    z_Jk = np.sqrt(z**2 + z_J**2 - 2.0 * z * z_J * np.cos(user_angle - attacker_angle))
    # co-located attacker and Bob would give an infinite path gain
    z_Jk = np.maximum(z_Jk, config.d_min)

    return Topology(z=np.asarray(z, dtype=np.float64), z_J=z_J, z_Jk=z_Jk)


def path_gain(distance: float | FloatArray, config: SystemConfig) -> float | FloatArray:
    """Large-scale gain ``A * d^-gamma``.

    Raises:
        DomainError: If any distance is not strictly positive.
    """
    d = np.asarray(distance, dtype=np.float64)
    if np.any(d <= 0):
        raise DomainError(f"path gain needs positive distances, got {distance}")
    gain = config.path_loss_constant * d ** (-config.path_loss_exponent)
    return float(gain) if gain.ndim == 0 else gain


def large_scale(topology: Topology, config: SystemConfig) -> LargeScale:
    theta_Jk = None if topology.z_Jk is None else path_gain(topology.z_Jk, config)
    return LargeScale(
        theta=np.atleast_1d(path_gain(topology.z, config)),
        theta_J=float(path_gain(topology.z_J, config)),
        theta_Jk=None if theta_Jk is None else np.atleast_1d(theta_Jk),
    )
