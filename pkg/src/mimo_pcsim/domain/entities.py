"""Core domain entities.

Every entity is immutable after construction: arrays are copied and frozen in
``__post_init__`` so realizations can be shared across worker threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import numpy as np
import numpy.typing as npt

from mimo_pcsim.domain.exceptions import DomainError

if TYPE_CHECKING:
    from mimo_pcsim.config.system import SystemConfig

FloatArray = npt.NDArray[np.float64]
ComplexArray = npt.NDArray[np.complex128]

# 可行性容差
FEASIBILITY_TOL = 1e-9


def _frozen(values: Any, dtype: Any = np.float64) -> Any:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Topology:
    """Distances of one network drop (meters)."""

    z: FloatArray
    """Alice-Bob_k distances."""
    z_J: float
    """Alice-attacker distance."""
    z_Jk: FloatArray | None = None
    """Attacker-Bob_k distances (hybrid attack only)."""

    def __post_init__(self) -> None:
        object.__setattr__(self, "z", _frozen(self.z))
        if self.z_Jk is not None:
            object.__setattr__(self, "z_Jk", _frozen(self.z_Jk))
        if np.any(self.z <= 0) or self.z_J <= 0:
            raise DomainError("distances must be strictly positive")

    @property
    def users(self) -> int:
        return int(self.z.size)


@dataclass(frozen=True)
class LargeScale:
    """Path gains derived from a topology."""

    theta: FloatArray
    theta_J: float
    theta_Jk: FloatArray | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", _frozen(self.theta))
        if self.theta_Jk is not None:
            object.__setattr__(self, "theta_Jk", _frozen(self.theta_Jk))


@dataclass(frozen=True)
class ChannelRealization:
    """Small-scale fading and projected estimation noise of one frame."""

    G: ComplexArray
    """K x M user small-scale gains."""
    g_J: ComplexArray
    """Length-M attacker small-scale gains."""
    W: ComplexArray
    """K x M projected estimation noise, entry variance 1/(P_k L)."""
    G_Jk: ComplexArray | None = None
    """N x K attacker-to-Bob gains (hybrid attack only)."""

    def __post_init__(self) -> None:
        object.__setattr__(self, "G", _frozen(self.G, np.complex128))
        object.__setattr__(self, "g_J", _frozen(self.g_J, np.complex128))
        object.__setattr__(self, "W", _frozen(self.W, np.complex128))
        if self.G_Jk is not None:
            object.__setattr__(self, "G_Jk", _frozen(self.G_Jk, np.complex128))
        if self.G.shape != self.W.shape or self.G.shape[1] != self.g_J.size:
            raise DomainError(
                f"inconsistent shapes G={self.G.shape}, W={self.W.shape}, g_J={self.g_J.shape}"
            )

    @property
    def antennas(self) -> int:
        return int(self.G.shape[1])


@dataclass(frozen=True)
class AttackVector:
    """Pilot-power fractions alpha_k of the attacker, alpha >= 0, sum <= budget."""

    alpha: FloatArray
    budget: float = 1.0

    def __post_init__(self) -> None:
        alpha = np.array(self.alpha, dtype=np.float64)
        if np.any(alpha < -FEASIBILITY_TOL):
            raise DomainError(f"negative pilot fraction in {alpha}")
        alpha = np.clip(alpha, 0.0, None)
        if alpha.sum() > self.budget * (1.0 + FEASIBILITY_TOL) + FEASIBILITY_TOL:
            raise DomainError(f"pilot fractions sum to {alpha.sum()} > budget {self.budget}")
        object.__setattr__(self, "alpha", _frozen(alpha))

    @classmethod
    def none(cls, users: int) -> AttackVector:
        return cls(np.zeros(users))

    @classmethod
    def uniform(cls, users: int, budget: float = 1.0) -> AttackVector:
        return cls(np.full(users, budget / users), budget=budget)

    @classmethod
    def single(cls, users: int, target: int) -> AttackVector:
        alpha = np.zeros(users)
        alpha[target] = 1.0
        return cls(alpha)

    @property
    def users(self) -> int:
        return int(self.alpha.size)


@dataclass(frozen=True)
class EstimatedChannels:
    """Contaminated estimates h_hat_k and unit-norm MRT precoders v_k."""

    h_hat: ComplexArray
    v: ComplexArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "h_hat", _frozen(self.h_hat, np.complex128))
        object.__setattr__(self, "v", _frozen(self.v, np.complex128))


@dataclass(frozen=True)
class PowerAllocation:
    """Downlink power P_k^(d) per user."""

    pd: FloatArray

    def __post_init__(self) -> None:
        pd = np.array(self.pd, dtype=np.float64)
        if np.any(pd < 0):
            raise DomainError(f"negative downlink power in {pd}")
        object.__setattr__(self, "pd", _frozen(pd))

    @property
    def total(self) -> float:
        return float(self.pd.sum())

    def is_feasible(self, bs_power: float) -> bool:
        return self.total <= bs_power * (1.0 + FEASIBILITY_TOL)


@dataclass(frozen=True)
class RateReport:
    """Per-user rates with their sum and Jain fairness."""

    rates: FloatArray
    sum_rate: float
    fairness: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "rates", _frozen(self.rates))


@dataclass(frozen=True)
class SecrecyReport:
    """Rates, leakage and individual secrecy per user."""

    rates: FloatArray
    leakage: FloatArray
    secrecy: FloatArray
    max_secrecy: float
    saturated: npt.NDArray[np.bool_]
    """True where the leakage hit the interference-free cap."""

    def __post_init__(self) -> None:
        for name in ("rates", "leakage", "secrecy"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        object.__setattr__(self, "saturated", _frozen(self.saturated, np.bool_))


@dataclass(frozen=True)
class P1Coefficients:
    """Per-user constants of the known-distance sum-rate attack.

    The rate of user k under attack is ``log2(1 + a_k / (alpha_k + b_k))``.
    """

    a: FloatArray
    b: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _frozen(self.a))
        object.__setattr__(self, "b", _frozen(self.b))
        if self.a.shape != self.b.shape:
            raise DomainError("a and b must have the same length")
        if np.any(self.a < 0) or np.any(self.b <= 0):
            raise DomainError("coefficients must satisfy a >= 0 and b > 0")

    @property
    def users(self) -> int:
        return int(self.a.size)


@dataclass(frozen=True)
class GameState:
    """Iterate of the BS-vs-attacker game."""

    attack: AttackVector
    allocation: PowerAllocation
    iterations: int
    value: float
    trace: tuple[float, ...] = ()


@dataclass(frozen=True)
class SecrecyCoefficients:
    """Constants of the max-secrecy attack problems.

    ``a`` and ``b`` are the sum-rate coefficients, ``g`` = P_k^(d) theta_J,
    ``interference`` = sum over l != k of g_l / b_l and ``interference_hat`` its
    unknown-distance counterpart (other users placed at D_max with alpha_l = 1).
    ``pd``, ``u`` and ``y`` (= z_J^-gamma) feed the chance-constraint bound.
    """

    a: FloatArray
    b: FloatArray
    g: FloatArray
    interference: FloatArray
    interference_hat: FloatArray
    pd: FloatArray
    u: FloatArray
    y: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "g", "interference", "interference_hat", "pd", "u"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def users(self) -> int:
        return int(self.a.size)


@dataclass(frozen=True)
class ScenarioSet:
    """T equiprobable draws of the N x K attacker-to-Bob small-scale gains."""

    gains: ComplexArray
    """T x N x K complex gains."""
    weights: FloatArray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self) -> None:
        gains = np.array(self.gains, dtype=np.complex128)
        if gains.ndim != 3 or min(gains.shape) < 1:
            raise DomainError(f"scenario gains must be T x N x K, got {gains.shape}")
        if not np.all(np.isfinite(gains)):
            raise DomainError("scenario gains must be finite")
        object.__setattr__(self, "gains", _frozen(gains, np.complex128))
        size = gains.shape[0]
        weights = self.weights if np.size(self.weights) else np.full(size, 1.0 / size)
        object.__setattr__(self, "weights", _frozen(weights))

    @property
    def size(self) -> int:
        return int(self.gains.shape[0])

    @property
    def antennas(self) -> int:
        return int(self.gains.shape[1])

    @property
    def power_gains(self) -> FloatArray:
        """|g|^2, shape T x N x K."""
        return np.abs(self.gains) ** 2

    def first_antennas(self, n: int) -> ScenarioSet:
        """Restrict every scenario to the first ``n`` jamming antennas."""
        return ScenarioSet(self.gains[:, :n, :])


@dataclass(frozen=True)
class HybridPolicy:
    """First-stage pilot fractions and per-scenario data-phase jamming fractions."""

    attack: AttackVector
    beta: FloatArray
    """T x N jamming fractions."""
    objective: float = float("nan")

    def __post_init__(self) -> None:
        object.__setattr__(self, "beta", _frozen(self.beta))
        if np.any(self.beta < -FEASIBILITY_TOL):
            raise DomainError("negative jamming fraction")


@dataclass(frozen=True)
class ResultRow:
    """One aggregated (sweep value, scheme, metric) cell of an experiment."""

    sweep: float
    scheme: str
    metric: str
    mean: float
    stderr: float
    n: int

    def __post_init__(self) -> None:
        if self.stderr < 0 or self.n <= 0:
            raise DomainError(f"invalid aggregate stderr={self.stderr}, n={self.n}")


@dataclass(frozen=True)
class Drop:
    """One Monte Carlo network drop handed to an attack scheme."""

    config: SystemConfig
    topology: Topology
    large_scale: LargeScale
    rng: np.random.Generator = field(compare=False)
    epsilon: float = 0.1
    """Chance-constraint level of the sweep point."""
    jam_antennas: int = 1
    """Attacker antennas N of the sweep point."""
