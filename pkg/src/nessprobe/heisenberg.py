"""Heisenberg-picture propagation of quadratic observables.

The adjoint master equation closes on the ten quadratic monomials
(a1+a1, a1^2, a1+^2, a2+a2, a2^2, a2+^2, a1a2, a1a2+, a1+a2, a1+a2+), giving a
linear flow v' = M v + w.  This module provides the explicit thermal-scenario
generator, the squeezed-scenario generator assembled from its dissipator, the
numeric matrix-exponential propagator, and the closed-form coefficient
functions that serve as independent oracles for both scenarios.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import expm

from .errors import DegenerateParametersError, InvalidModelError
from .model import SystemParams, ThermalBathPair
from .operators import (
    QUADRATIC_KEYS,
    assemble_adjoint_generator,
    hamiltonian_polynomial,
    squeezed_dissipator_terms,
    thermal_dissipator_terms,
)

MONOMIAL_LABELS = (
    "a1+ a1",
    "a1 a1",
    "a1+ a1+",
    "a2+ a2",
    "a2 a2",
    "a2+ a2+",
    "a1 a2",
    "a1 a2+",
    "a1+ a2",
    "a1+ a2+",
)

# indices into the monomial basis
IDX_N1 = 0
IDX_N2 = 3
IDX_A1A2D = 7
IDX_A1DA2 = 8

_IMAG_TOL = 1e-9
_XI_DEGENERATE_TOL = 1e-8


@dataclass(frozen=True)
class ObservableGenerator:
    """Linear generator of the quadratic-observable flow v' = matrix v + inhom."""

    matrix: NDArray[np.complex128]
    inhom: NDArray[np.complex128]
    basis: tuple[str, ...] = MONOMIAL_LABELS


@dataclass(frozen=True)
class EvolvedObservable:
    """Expansion of A(t) over the monomial basis plus the accumulated constant."""

    coefficients: NDArray[np.complex128]
    constant: complex


@dataclass(frozen=True)
class ThermalCoefficients:
    """Closed-form coefficients of (a1+a1)(t) in the two-bath thermal scenario."""

    f: NDArray | float
    j: NDArray | float
    p: NDArray | complex
    q: NDArray | complex
    s: NDArray | float


@dataclass(frozen=True)
class SqueezedCoefficients:
    """Closed-form coefficients of (a2+a2)(t) in the squeezed-bath scenario.

    f, j and l are real; g (the a1+a2 coefficient) is complex and pairs with
    its conjugate on a1a2+.  zeta2_spec and xi are the spectral constants
    zeta^2 = gamma^2 - 4 z^2 and xi^2 = (4 z^2 + gamma^2)^2 - 64 gamma^2 lam^2.
    """

    f: NDArray | float
    g: NDArray | complex
    j: NDArray | float
    l: NDArray | float
    zeta2_spec: float
    xi: complex


def default_time_grid(params: SystemParams, n_points: int = 400, horizon: float = 20.0):
    """Uniform grid over [0, horizon/gamma] (horizon periods of the damping time)."""
    if params.gamma <= 0.0:
        raise InvalidModelError("default time grid needs gamma > 0; pass explicit times instead")
    return np.linspace(0.0, horizon / params.gamma, n_points)


def build_observable_generator(params: SystemParams, baths: ThermalBathPair) -> ObservableGenerator:
    """Explicit 10x10 generator and inhomogeneity of the thermal scenario."""
    w1, w2, g = params.omega1, params.omega2, params.gamma
    w12, dw = w1 + w2, w1 - w2
    il = 1j * params.lam
    M = np.zeros((10, 10), dtype=complex)
    M[0, 0] = -g
    M[0, 7] = il
    M[0, 8] = -il
    M[1, 1] = -2j * w1 - g
    M[1, 6] = -2 * il
    M[2, 2] = 2j * w1 - g
    M[2, 9] = 2 * il
    M[3, 3] = -g
    M[3, 7] = -il
    M[3, 8] = il
    M[4, 4] = -2j * w2 - g
    M[4, 6] = -2 * il
    M[5, 5] = 2j * w2 - g
    M[5, 9] = 2 * il
    M[6, 1] = -il
    M[6, 4] = -il
    M[6, 6] = -1j * w12 - g
    M[7, 0] = il
    M[7, 3] = -il
    M[7, 7] = -1j * dw - g
    M[8, 0] = -il
    M[8, 3] = il
    M[8, 8] = 1j * dw - g
    M[9, 2] = il
    M[9, 5] = il
    M[9, 9] = 1j * w12 - g
    w = np.zeros(10, dtype=complex)
    w[0] = baths.n1 * g
    w[3] = baths.n2 * g
    return ObservableGenerator(matrix=M, inhom=w)


def derive_observable_generator(params: SystemParams, baths: ThermalBathPair) -> ObservableGenerator:
    """Thermal generator assembled term by term from the Lindbladian (oracle route)."""
    M, w = assemble_adjoint_generator(
        hamiltonian_polynomial(params), thermal_dissipator_terms(params, baths)
    )
    return ObservableGenerator(matrix=M, inhom=w)


def build_squeezed_observable_generator(
    params: SystemParams, occupation: float, squeeze: complex
) -> ObservableGenerator:
    """Generator of the squeezed-bath scenario (bath on mode 1 only).

    Assembled from the adjoint dissipator with the (N, M) bath coefficients;
    the squeeze parameter enters only the inhomogeneous constants of the
    anomalous monomials a1^2 and a1+^2, never the flow matrix.
    """
    M, w = assemble_adjoint_generator(
        hamiltonian_polynomial(params), squeezed_dissipator_terms(params, occupation, squeeze)
    )
    return ObservableGenerator(matrix=M, inhom=w)


def evolve_observables(
    gen: ObservableGenerator, t: float, observable: int | NDArray = IDX_N1
) -> EvolvedObservable:
    """Propagate an observable for time t under the adjoint flow.

    ``observable`` selects the initial monomial (index or 10-vector of
    expansion coefficients).  The inhomogeneous integral is evaluated through
    an augmented matrix exponential, which stays exact when the flow matrix is
    singular (gamma = 0), so no quadrature fallback is needed.
    """
    if t < 0:
        raise InvalidModelError(f"time must be >= 0, got {t}")
    if isinstance(observable, (int, np.integer)):
        selector = np.zeros(10, dtype=complex)
        selector[observable] = 1.0
    else:
        selector = np.asarray(observable, dtype=complex)
        if selector.shape != (10,):
            raise InvalidModelError("observable selector must be an index or a 10-vector")
    aug = np.zeros((11, 11), dtype=complex)
    aug[:10, :10] = gen.matrix
    aug[:10, 10] = gen.inhom
    prop = expm(t * aug)
    coeffs = selector @ prop[:10, :10]
    constant = complex(selector @ prop[:10, 10])
    return EvolvedObservable(coefficients=coeffs, constant=constant)


def coeffs_thermal(params: SystemParams, baths: ThermalBathPair, t) -> ThermalCoefficients:
    """Closed-form (f, j, p, q, s) at time(s) t for the thermal scenario.

    The constant s(t) is the only piece carrying the bath occupations; it
    interpolates from 0 to the steady-state value of <a1+ a1>.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise InvalidModelError("times must be >= 0")
    g, d, lam = params.gamma, params.delta, params.lam
    n1, n2 = baths.n1, baths.n2
    eg = np.exp(-g * t)
    z2 = params.z2
    if z2 == 0.0:
        zero = np.zeros_like(t)
        return ThermalCoefficients(f=eg, j=zero, p=zero + 0j, q=zero + 0j, s=n1 * (1.0 - eg))
    z = params.z
    cos_zt, sin_zt = np.cos(z * t), np.sin(z * t)
    f = eg * (d * d + 2.0 * lam * lam + 2.0 * lam * lam * cos_zt) / z2
    j = 2.0 * lam * lam * eg * (1.0 - cos_zt) / z2
    p = lam * eg * (-d + 1j * z * sin_zt + d * cos_zt) / z2
    g2z2 = g * g + z2
    s_inf = (n1 * (g * g + d * d) + 2.0 * lam * lam * (n1 + n2)) / g2z2
    s = (
        s_inf
        - eg * (d * d * n1 + 2.0 * lam * lam * (n1 + n2)) / z2
        - 2.0 * g * lam * lam * (n1 - n2) * eg * (g * cos_zt - z * sin_zt) / (z2 * g2z2)
    )
    return ThermalCoefficients(f=f, j=j, p=p, q=np.conj(p), s=s)


def squeezed_spectral_constants(params: SystemParams) -> tuple[float, complex]:
    """(zeta^2, xi) controlling the squeezed-scenario relaxation branches."""
    g2, z2, lam = params.gamma**2, params.z2, params.lam
    zeta2_spec = g2 - 4.0 * z2
    xi = np.sqrt(complex((4.0 * z2 + g2) ** 2 - 64.0 * g2 * lam * lam))
    return zeta2_spec, xi


def _sinhc(mu: complex, t: NDArray) -> NDArray:
    """sinh(mu t)/mu, continuous at mu = 0."""
    if abs(mu) < 1e-14:
        return t.astype(complex)
    return np.sinh(mu * t) / mu


def _exp_cosh_integral(mu: complex, g: float, t: NDArray) -> NDArray:
    """integral_0^t exp(-g u / 2) cosh(mu u) du, safe at the resonant exponents."""

    def grow(rate: complex) -> NDArray:
        if abs(rate) < 1e-14:
            return t.astype(complex)
        return (np.exp(rate * t) - 1.0) / rate

    return 0.5 * (grow(mu - 0.5 * g) + grow(-(mu + 0.5 * g)))


def coeffs_squeezed(params: SystemParams, t, occupation: float = 0.0) -> SqueezedCoefficients:
    """Closed-form (f, g, j, l) at time(s) t for the squeezed-bath scenario.

    ``occupation`` is the bath coefficient N; it enters only l, linearly.
    Everything is evaluated in complex arithmetic (the relaxation exponents
    sqrt((zeta^2 +- xi)/8) may sit on either side of the oscillatory regime)
    and the provably real outputs are checked to carry an imaginary residue
    below 1e-9 before being returned as reals.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise InvalidModelError("times must be >= 0")
    g, d, lam = params.gamma, params.delta, params.lam
    zeta2_spec, xi = squeezed_spectral_constants(params)
    if abs(xi) < _XI_DEGENERATE_TOL:
        raise DegenerateParametersError(
            "xi ~ 0 (repeated relaxation roots): the closed forms are singular here; "
            "propagate numerically with evolve_observables instead"
        )
    mu_p = np.sqrt((zeta2_spec + xi) / 8.0 + 0j)
    mu_m = np.sqrt((zeta2_spec - xi) / 8.0 + 0j)
    eg = np.exp(-0.5 * g * t)
    cosh_p, cosh_m = np.cosh(mu_p * t), np.cosh(mu_m * t)
    d2 = d * d
    lam2 = lam * lam
    f = (8.0 * lam2 / xi) * eg * (cosh_p - cosh_m)
    j = (4.0 / xi) * eg * (
        (mu_p**2 + d2 + 2.0 * lam2) * cosh_p
        + 0.5 * g * (mu_p**2 + d2) * _sinhc(mu_p, t)
        - (mu_m**2 + d2 + 2.0 * lam2) * cosh_m
        - 0.5 * g * (mu_m**2 + d2) * _sinhc(mu_m, t)
    )
    gco = (4j * lam / xi) * eg * (
        (0.5 * g - 1j * d) * (cosh_p - cosh_m)
        + (mu_p**2 - 0.5j * d * g) * _sinhc(mu_p, t)
        - (mu_m**2 - 0.5j * d * g) * _sinhc(mu_m, t)
    )
    l = (
        g
        * occupation
        * (8.0 * lam2 / xi)
        * (_exp_cosh_integral(mu_p, g, t) - _exp_cosh_integral(mu_m, g, t))
    )
    residue = max(
        float(np.max(np.abs(np.imag(f)))),
        float(np.max(np.abs(np.imag(j)))),
        float(np.max(np.abs(np.imag(l)))),
    )
    if residue > _IMAG_TOL * max(1.0, occupation):
        raise DegenerateParametersError(
            f"complex-safe evaluation left an imaginary residue {residue:.3e}; "
            "parameters are too close to a branch degeneracy"
        )
    return SqueezedCoefficients(
        f=np.real(f),
        g=gco,
        j=np.real(j),
        l=np.real(l),
        zeta2_spec=zeta2_spec,
        xi=xi,
    )


def squeezed_response_kernel_integral(params: SystemParams, tau) -> NDArray | float:
    """integral_0^tau f(u) du of the squeezed-scenario kernel, in closed form."""
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0):
        raise InvalidModelError("times must be >= 0")
    g, lam = params.gamma, params.lam
    if lam == 0.0:
        return np.zeros_like(tau)
    zeta2_spec, xi = squeezed_spectral_constants(params)
    if abs(xi) < _XI_DEGENERATE_TOL:
        raise DegenerateParametersError(
            "xi ~ 0 (repeated relaxation roots): the closed-form kernel integral is singular"
        )
    mu_p = np.sqrt((zeta2_spec + xi) / 8.0 + 0j)
    mu_m = np.sqrt((zeta2_spec - xi) / 8.0 + 0j)
    value = (8.0 * lam * lam / xi) * (
        _exp_cosh_integral(mu_p, g, tau) - _exp_cosh_integral(mu_m, g, tau)
    )
    return np.real(value)
