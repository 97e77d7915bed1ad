"""Constants of the max-secrecy attack problems and their tractable bounds."""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from mimo_pcsim.attack.pilot import p1_coefficients
from mimo_pcsim.config.system import SystemConfig
from mimo_pcsim.domain.entities import LargeScale, PowerAllocation, SecrecyCoefficients

FloatArray = npt.NDArray[np.float64]


def _others(values: FloatArray) -> FloatArray:
    k = values.size
    return (np.ones((k, k)) - np.eye(k)) @ values


def secrecy_coefficients(
    ls: LargeScale, pa: PowerAllocation, config: SystemConfig
) -> SecrecyCoefficients:
    """Build the secrecy constants for one drop.

    ``interference_hat`` only uses the attacker distance: every other user is placed
    at ``d_max`` with a full pilot fraction, the worst case for the attacker.
    """
    coef = p1_coefficients(ls, pa, config)
    g = pa.pd * ls.theta_J
    A = config.path_loss_constant
    y = ls.theta_J / A
    u = config.power_ratio
    floor = config.pilot_noise / A
    edge = config.d_max ** (-config.path_loss_exponent)
    worst_case = pa.pd * A * u * y**2 / (u * y + edge + floor)
    return SecrecyCoefficients(
        a=coef.a,
        b=coef.b,
        g=g,
        interference=_others(g / coef.b),
        interference_hat=_others(worst_case),
        pd=pa.pd,
        u=u,
        y=float(y),
    )


def chance_scale(config: SystemConfig, epsilon: float) -> float:
    """Q = (eps (D_max^2 - D_min^2) + D_min^2)^gamma, the squared eps-quantile of Z to the gamma."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")
    return float((epsilon * config.annulus_span + config.d_min**2) ** config.path_loss_exponent)


def secrecy_bound(alpha: npt.ArrayLike, coef: SecrecyCoefficients) -> FloatArray:
    """f_k(alpha_k) = I_k (alpha_k + A_k + B_k) / (alpha_k (I_k + G_k) + B_k I_k).

    This is ``2**U_k`` for the known-distance upper bound ``U_k`` on the individual
    secrecy rate. Without interference (``I_k = 0``) a contaminated user has no
    secrecy and an uncontaminated one keeps its full rate.
    """
    x = np.asarray(alpha, dtype=np.float64)
    eve = np.divide(
        coef.g * x,
        coef.interference,
        out=np.where(x > 0, np.inf, 0.0),
        where=coef.interference > 0,
    )
    return (x + coef.a + coef.b) / (x + eve + coef.b)


def chance_constraint_lhs(
    coef: SecrecyCoefficients,
    alpha: npt.ArrayLike,
    config: SystemConfig,
    epsilon: float,
) -> FloatArray:
    """Left side of the unknown-distance chance constraint, per user.

    Evaluates ``I^(P M A + 1 + Q(a u y + c)) / (I^ + Q(P a u A y^2 + I^(a u y + c)))``
    with ``y = z_J^-gamma`` and ``c = 1/(A P_k L)``. Decreasing in ``alpha``.

    Raises:
        ValueError: If ``epsilon`` is outside [0, 1].
    """
    q = chance_scale(config, epsilon)
    x = np.asarray(alpha, dtype=np.float64)
    A = config.path_loss_constant
    floor = config.pilot_noise / A
    jam = x * coef.u * coef.y + floor
    eve = np.divide(
        coef.pd * x * coef.u * A * coef.y**2,
        coef.interference_hat,
        out=np.where(x > 0, np.inf, 0.0),
        where=coef.interference_hat > 0,
    )
    # numerator and denominator divided by I^
    return (coef.pd * config.antennas * A + 1.0 + q * jam) / (1.0 + q * (eve + jam))
