from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, ClassVar, Protocol, runtime_checkable

import numpy as np
import numpy.typing as npt

from mimo_pcsim.domain.entities import AttackVector, Drop, LargeScale, PowerAllocation

if TYPE_CHECKING:
    from mimo_pcsim.config.system import SystemConfig

FloatArray = npt.NDArray[np.float64]
SchemeOutcome = dict[str, float | FloatArray]


@runtime_checkable
class SmoothObjective(Protocol):
    """Differentiable objective minimized over a budget simplex."""

    def value(self, x: FloatArray) -> float:
        ...

    def gradient(self, x: FloatArray) -> FloatArray:
        ...


class PowerStrategy(ABC):
    """How Alice splits P_A across users given the (possibly contaminated) channels."""

    name: ClassVar[str]

    @abstractmethod
    def allocate(
        self, ls: LargeScale, attack: AttackVector, config: SystemConfig
    ) -> PowerAllocation:
        pass


class AttackScheme(ABC):
    """One curve of an experiment: an attacker policy plus the metrics it reports."""

    label: ClassVar[str]

    @abstractmethod
    def evaluate(self, drop: Drop) -> SchemeOutcome:
        """Return metric name -> scalar (or per-user samples for CDF metrics)."""
        pass
