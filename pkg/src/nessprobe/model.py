"""Model definition: two coupled oscillators and their thermal baths.

Units are fixed to hbar = k_B = 1 and frequencies are measured in units of the
first oscillator's frequency, so every parameter is a dimensionless ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidModelError


def bose_occupation(beta_omega: float) -> float:
    """Mean occupation 1/(exp(beta*omega) - 1) of a bath mode."""
    if not math.isfinite(beta_omega) or beta_omega <= 0.0:
        raise InvalidModelError(f"beta*omega must be positive and finite, got {beta_omega}")
    return 1.0 / math.expm1(beta_omega)


def inverse_temperature_product(occupation: float) -> float:
    """Invert ``bose_occupation``: beta*omega = log(1 + 1/n)."""
    if occupation <= 0.0:
        raise InvalidModelError(f"occupation must be positive to recover beta*omega, got {occupation}")
    return math.log1p(1.0 / occupation)


@dataclass(frozen=True)
class SystemParams:
    """Hamiltonian and dissipation rates of the coupled-oscillator pair.

    Parameters
    ----------
    delta:
        Detuning of the second oscillator, omega_2 = omega_1 + delta.
    lam:
        Excitation-preserving (beam-splitter) coupling strength.
    gamma:
        Damping rate, identical for both oscillators.
    omega1:
        First oscillator frequency; 1.0 in the dimensionless convention but
        kept explicit because the squeezed-bath steady state depends on it.
    """

    delta: float
    lam: float
    gamma: float
    omega1: float = 1.0

    def __post_init__(self) -> None:
        for name in ("delta", "lam", "gamma", "omega1"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidModelError(f"{name} must be finite, got {value}")
        if self.gamma < 0.0:
            raise InvalidModelError(f"gamma must be >= 0, got {self.gamma}")
        if self.omega1 <= 0.0:
            raise InvalidModelError(f"omega1 must be positive, got {self.omega1}")

    @property
    def omega2(self) -> float:
        return self.omega1 + self.delta

    @property
    def z2(self) -> float:
        """Normal-mode splitting squared, z^2 = delta^2 + 4 lam^2."""
        return self.delta * self.delta + 4.0 * self.lam * self.lam

    @property
    def z(self) -> float:
        return math.sqrt(self.z2)

    def replace(self, **changes) -> "SystemParams":
        fields = {"delta": self.delta, "lam": self.lam, "gamma": self.gamma, "omega1": self.omega1}
        fields.update(changes)
        return SystemParams(**fields)


@dataclass(frozen=True)
class ThermalBathPair:
    """Mean occupations of the two local thermal baths."""

    n1: float
    n2: float

    def __post_init__(self) -> None:
        for name in ("n1", "n2"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0.0:
                raise InvalidModelError(f"{name} must be a finite occupation >= 0, got {value}")

    @classmethod
    def from_inverse_temperatures(
        cls, beta1_omega1: float, beta2_omega1: float, params: SystemParams
    ) -> "ThermalBathPair":
        """Build occupations from the beta_j * omega_1 products.

        Bath 2 couples to the detuned oscillator, so its occupation is
        evaluated at beta_2 * omega_2 with omega_2 = omega_1 + delta.
        """
        ratio = params.omega2 / params.omega1
        return cls(bose_occupation(beta1_omega1), bose_occupation(beta2_omega1 * ratio))

    @property
    def beta1_omega1(self) -> float:
        """Inverse-temperature product of bath 1 implied by its occupation."""
        return inverse_temperature_product(self.n1)

    @property
    def beta2_omega2(self) -> float:
        """Inverse-temperature product of bath 2 implied by its occupation."""
        return inverse_temperature_product(self.n2)

    def replace(self, **changes) -> "ThermalBathPair":
        fields = {"n1": self.n1, "n2": self.n2}
        fields.update(changes)
        return ThermalBathPair(**fields)
