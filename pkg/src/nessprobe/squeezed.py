"""Squeezed-thermal-bath scenario: bath coefficients and steady state.

Only the first oscillator is damped here, by a squeezed thermal reservoir with
coefficients N and M; the second oscillator is an isolated probe that
equilibrates through the coupling.  The closed-form ladder-basis steady state
is cross-checked against an independent stationarity oracle built from the
bath's jump-operator representation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .dynamics import (
    CovarianceMatrix,
    QuadraticGenerators,
    cm_transform,
    generators_from_jumps,
    hamiltonian_matrix,
)
from .errors import DegenerateParametersError, InvalidModelError
from .model import SystemParams, bose_occupation

_POSITIVITY_SLACK = 1e-9


def bath_coefficients(n: float, r: float, theta: float) -> tuple[float, complex]:
    """Effective (N, M) of a squeezed thermal bath with occupation n, squeezing r e^{i theta}.

    N = n (cosh^2 r + sinh^2 r) + sinh^2 r and M = -cosh r sinh r e^{i theta} (2n + 1);
    they satisfy |M|^2 <= N (N + 1) with equality at n = 0.
    """
    if not math.isfinite(n) or n < 0.0:
        raise InvalidModelError(f"occupation n must be >= 0, got {n}")
    if not math.isfinite(r) or r < 0.0:
        raise InvalidModelError(f"squeezing magnitude r must be >= 0, got {r}")
    ch, sh = math.cosh(r), math.sinh(r)
    big_n = n * (ch * ch + sh * sh) + sh * sh
    big_m = -ch * sh * cmath.exp(1j * theta) * (2.0 * n + 1.0)
    bound = big_n * (big_n + 1.0)
    if abs(big_m) ** 2 > bound * (1.0 + _POSITIVITY_SLACK) + _POSITIVITY_SLACK:
        raise InvalidModelError(
            f"positivity violated: |M|^2 = {abs(big_m)**2:.6e} > N(N+1) = {bound:.6e}"
        )
    return big_n, big_m


@dataclass(frozen=True)
class SqueezedBath:
    """Squeezed thermal bath attached to the first oscillator."""

    n: float
    r: float
    theta: float = 0.0

    def __post_init__(self) -> None:
        bath_coefficients(self.n, self.r, self.theta)

    @classmethod
    def from_inverse_temperature(
        cls, beta_omega1: float, r: float, theta: float = 0.0
    ) -> "SqueezedBath":
        return cls(bose_occupation(beta_omega1), r, theta)

    @property
    def occupation(self) -> float:
        """Effective thermal coefficient N."""
        return bath_coefficients(self.n, self.r, self.theta)[0]

    @property
    def squeeze(self) -> complex:
        """Effective squeeze coefficient M."""
        return bath_coefficients(self.n, self.r, self.theta)[1]

    def quenched(self, phi: float) -> "SqueezedBath":
        """Bath after a temperature quench shifting N by phi (r, theta fixed).

        The same underlying shift of n moves M by the linked amount eta, so the
        returned bath carries both perturbed coefficients consistently.
        """
        ch, sh = math.cosh(self.r), math.sinh(self.r)
        return SqueezedBath(self.n + phi / (ch * ch + sh * sh), self.r, self.theta)


@dataclass(frozen=True)
class SqueezedSteadyState:
    """Ladder-basis steady-state covariance with its three off-diagonal coefficients."""

    sigma: CovarianceMatrix
    d_coef: complex
    e_coef: complex
    f_coef: complex
    occupation: float


def _coefficient_denominators(params: SystemParams) -> tuple[complex, complex]:
    w1, w2 = params.omega1, params.omega2
    g, lam = params.gamma, params.lam
    den1 = -2j * lam * lam + (g + 2j * w1) * w2
    den2 = g + 2j * (2.0 * w1 + params.delta)
    return den1, den2


def steady_state_squeezed(params: SystemParams, bath: SqueezedBath) -> SqueezedSteadyState:
    """Closed-form steady state of the squeezed-bath scenario.

    The squeeze coefficient M feeds the anomalous moments <a1^2> = D,
    <a1 a2> = E* and <a2^2> = F; the excitation sector sits exactly at the bath
    occupation N for both modes, with no <a1 a2+> correlation.
    """
    if params.gamma <= 0.0:
        raise DegenerateParametersError("gamma must be positive for a unique steady state")
    big_n, big_m = bath_coefficients(bath.n, bath.r, bath.theta)
    w2, g, lam = params.omega2, params.gamma, params.lam
    den1, den2 = _coefficient_denominators(params)
    den = den1 * den2
    if abs(den) < 1e-14:
        raise DegenerateParametersError("steady-state coefficient denominator vanishes")
    d_coef = -big_m * g * (-2j * lam * lam + w2 * den2) / den
    e_coef = -2j * np.conj(big_m) * g * lam * w2 / np.conj(den)
    f_coef = -2j * big_m * g * lam * lam / den
    nh = big_n + 0.5
    sigma = np.array(
        [
            [nh, d_coef, 0.0, np.conj(e_coef)],
            [np.conj(d_coef), nh, e_coef, 0.0],
            [0.0, np.conj(e_coef), nh, f_coef],
            [e_coef, 0.0, np.conj(f_coef), nh],
        ],
        dtype=complex,
    )
    return SqueezedSteadyState(
        sigma=CovarianceMatrix(sigma, basis="ladder"),
        d_coef=d_coef,
        e_coef=e_coef,
        f_coef=f_coef,
        occupation=big_n,
    )


def squeezed_jump_vectors(
    params: SystemParams, bath: SqueezedBath
) -> tuple[NDArray[np.complex128], ...]:
    """Quadrature-basis jump vectors of the squeezed bath on mode 1.

    Uses the Bogoliubov representation b = cosh(r) a1 - e^{i theta} sinh(r) a1+,
    whose thermal dissipator at occupation n reproduces the (N, M) form exactly.
    """
    g = params.gamma
    ch, sh = math.cosh(bath.r), math.sinh(bath.r)
    eip = cmath.exp(1j * bath.theta)
    eim = cmath.exp(-1j * bath.theta)
    c1 = math.sqrt(g * (bath.n + 1.0) / 2.0) * np.array(
        [ch - eip * sh, 1j * (ch + eip * sh), 0.0, 0.0]
    )
    c2 = math.sqrt(g * bath.n / 2.0) * np.array(
        [ch - eim * sh, -1j * (ch + eim * sh), 0.0, 0.0]
    )
    return (c1, c2)


def build_squeezed_generators(params: SystemParams, bath: SqueezedBath) -> QuadraticGenerators:
    """Drift/diffusion of the squeezed scenario from the jump-vector route."""
    return generators_from_jumps(hamiltonian_matrix(params), squeezed_jump_vectors(params, bath))


def moment_flow_residual(
    params: SystemParams, bath: SqueezedBath, state: SqueezedSteadyState
) -> float:
    """Max-abs residual of the covariance flow at the closed-form steady state.

    The flow is assembled independently of the printed coefficients: the bath's
    jump vectors give (alpha, D) in the quadrature basis, and the candidate
    ladder-basis steady state is transformed before being substituted into
    alpha sigma + sigma alpha^T + D.
    """
    gen = build_squeezed_generators(params, bath)
    sigma = cm_transform(state.sigma).matrix
    residual = gen.alpha @ sigma + sigma @ gen.alpha.T + gen.Dmat
    return float(np.max(np.abs(residual)))


def moment_vector(state: SqueezedSteadyState) -> NDArray[np.complex128]:
    """Steady-state expectations of the ten quadratic monomials."""
    big_n = state.occupation
    d, e, f = state.d_coef, state.e_coef, state.f_coef
    return np.array(
        [
            big_n,
            d,
            np.conj(d),
            big_n,
            f,
            np.conj(f),
            np.conj(e),
            0.0,
            0.0,
            e,
        ],
        dtype=complex,
    )
