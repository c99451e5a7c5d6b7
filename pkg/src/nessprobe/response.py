"""Linear and exact response of oscillator energies to step quenches.

Three quench channels are supported: the coupling strength (unitary channel),
the occupation of the first thermal bath, and the squeezing of a squeezed
bath.  Step-profile response integrals are evaluated in closed form, the
all-orders "perturbed value" comes from differences of steady states, and the
dissipative quenches additionally admit an exact dynamic response through the
constant term of the Heisenberg flow, which the linear response reproduces
identically.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import expm

from .dynamics import (
    CovarianceMatrix,
    build_generators,
    closed_form_steady_state,
    cm_transform,
)
from .errors import DegenerateParametersError, InvalidModelError
from .heisenberg import (
    IDX_N2,
    build_squeezed_observable_generator,
    coeffs_squeezed,
    coeffs_thermal,
    evolve_observables,
    squeezed_response_kernel_integral,
)
from .model import SystemParams, ThermalBathPair
from .operators import BosonPolynomial, assemble_adjoint_generator, squeezing_quench_terms
from .squeezed import (
    SqueezedBath,
    SqueezedSteadyState,
    build_squeezed_generators,
    moment_vector,
    steady_state_squeezed,
)


@dataclass(frozen=True)
class Perturbation:
    """Step quench switched on at t = 0 and constant afterwards."""

    kind: str
    value: complex

    _KINDS = ("coupling", "occupation", "squeezing")

    def __post_init__(self) -> None:
        if self.kind not in self._KINDS:
            raise InvalidModelError(f"unknown perturbation kind {self.kind!r}")
        if not (math.isfinite(self.value.real) and math.isfinite(complex(self.value).imag)):
            raise InvalidModelError("perturbation magnitude must be finite")

    @classmethod
    def coupling(cls, epsilon: float) -> "Perturbation":
        return cls("coupling", float(epsilon))

    @classmethod
    def occupation(cls, phi: float) -> "Perturbation":
        return cls("occupation", float(phi))

    @classmethod
    def squeezing(cls, eta: complex) -> "Perturbation":
        return cls("squeezing", complex(eta))


@dataclass(frozen=True)
class ResponseCurve:
    """Sampled response with the all-orders perturbed value as its asymptote."""

    times: NDArray[np.float64]
    linear: NDArray[np.float64]
    exact: NDArray[np.float64] | None
    asymptote: float
    observable: str
    scenario: str
    perturbations: tuple[Perturbation, ...]


def _check_times(tau) -> NDArray[np.float64]:
    arr = np.asarray(tau, dtype=float)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise InvalidModelError("response times must be finite and >= 0")
    return arr


def _int_exp_cos(tau: NDArray, g: float, z: float) -> NDArray:
    """integral_0^tau e^{-g u} cos(z u) du."""
    return (g - np.exp(-g * tau) * (g * np.cos(z * tau) - z * np.sin(z * tau))) / (g * g + z * z)


def _int_exp_sin(tau: NDArray, g: float, z: float) -> NDArray:
    """integral_0^tau e^{-g u} sin(z u) du."""
    return (z - np.exp(-g * tau) * (z * np.cos(z * tau) + g * np.sin(z * tau))) / (g * g + z * z)


def response_coupling(params: SystemParams, baths: ThermalBathPair, epsilon: float, tau):
    """Linear response of A1 = beta1 omega1 a1+a1 to a coupling step quench.

    Vanishes identically for lam = 0 or n1 = n2; the kernel mixes the damped
    oscillation at the normal-mode splitting z with a monotone relaxation.
    """
    tau = _check_times(tau)
    if params.lam == 0.0:
        return np.zeros_like(tau)
    g, d, z2, z = params.gamma, params.delta, params.z2, params.z
    pref = (
        2.0
        * (baths.n2 - baths.n1)
        * params.lam
        * baths.beta1_omega1
        * epsilon
        / (z2 * (g * g + z2))
    )
    integral = (
        d * d * (-np.expm1(-g * tau))
        + 4.0 * g * params.lam**2 * _int_exp_cos(tau, g, z)
        + (g * g + d * d) * z * _int_exp_sin(tau, g, z)
    )
    return pref * integral


def response_coupling_asymptote(params: SystemParams, baths: ThermalBathPair, epsilon: float) -> float:
    """Long-time limit of the coupling-quench linear response (first order in epsilon)."""
    if params.lam == 0.0:
        return 0.0
    g2d2 = params.gamma**2 + params.delta**2
    den = params.gamma**2 + params.z2
    return float(
        baths.beta1_omega1 * epsilon * 4.0 * params.lam * g2d2 * (baths.n2 - baths.n1) / den**2
    )


def response_occupation(
    params: SystemParams, baths: ThermalBathPair, phi: float, tau, which_oscillator: int = 1
):
    """Linear response of either oscillator's dimensionless energy to a quench of n1.

    Oscillator 1 integrates the kernel f, oscillator 2 the kernel j; both
    integrals are elementary and evaluated in closed form.
    """
    tau = _check_times(tau)
    if which_oscillator not in (1, 2):
        raise InvalidModelError(f"which_oscillator must be 1 or 2, got {which_oscillator}")
    g, lam, z2 = params.gamma, params.lam, params.z2
    factor = baths.beta1_omega1 if which_oscillator == 1 else baths.beta2_omega2
    if z2 == 0.0:
        if which_oscillator == 1:
            return factor * phi * (-np.expm1(-g * tau))
        return np.zeros_like(tau)
    z = params.z
    if which_oscillator == 1:
        value = (params.delta**2 + 2.0 * lam * lam) * (-np.expm1(-g * tau)) + 2.0 * lam * lam * g * _int_exp_cos(tau, g, z)
    else:
        value = 2.0 * lam * lam * (-np.expm1(-g * tau)) - 2.0 * lam * lam * g * _int_exp_cos(tau, g, z)
    return factor * phi * value / z2


def response_occupation_asymptote(
    params: SystemParams, baths: ThermalBathPair, phi: float, which_oscillator: int = 1
) -> float:
    """Long-time limit of the occupation-quench linear response."""
    g2, z2 = params.gamma**2, params.z2
    if g2 + z2 == 0.0:
        raise DegenerateParametersError("asymptote undefined at gamma = lam = delta = 0")
    if which_oscillator == 1:
        return float(
            baths.beta1_omega1 * phi * (g2 + params.delta**2 + 2.0 * params.lam**2) / (g2 + z2)
        )
    return float(baths.beta2_omega2 * phi * 2.0 * params.lam**2 / (g2 + z2))


def response_combined(params: SystemParams, baths: ThermalBathPair, epsilon: float, phi: float, tau):
    """Sum of the coupling and occupation responses of oscillator 1."""
    return response_coupling(params, baths, epsilon, tau) + response_occupation(
        params, baths, phi, tau, which_oscillator=1
    )


def response_combined_asymptote(
    params: SystemParams, baths: ThermalBathPair, epsilon: float, phi: float
) -> float:
    return response_coupling_asymptote(params, baths, epsilon) + response_occupation_asymptote(
        params, baths, phi, which_oscillator=1
    )


def perturbed_value(
    params: SystemParams,
    baths: ThermalBathPair,
    epsilon: float,
    phi: float,
    observable: str = "A1",
) -> float:
    """All-orders steady-state shift of A_j between quenched and original dynamics.

    The observable normalization beta_j omega_j is fixed by the unperturbed
    baths; only the state is quenched.
    """
    if observable not in ("A1", "A2"):
        raise InvalidModelError(f"observable must be 'A1' or 'A2', got {observable!r}")
    factor = baths.beta1_omega1 if observable == "A1" else baths.beta2_omega2
    mode = 1 if observable == "A1" else 2
    before = closed_form_steady_state(params, baths)
    after = closed_form_steady_state(
        params.replace(lam=params.lam + epsilon), baths.replace(n1=baths.n1 + phi)
    )
    return factor * (after.mode_occupation(mode) - before.mode_occupation(mode))


def exact_response(
    params: SystemParams, baths: ThermalBathPair, phi: float, tau, observable: str = "A1"
):
    """Exact dynamic response to an occupation quench, from the Heisenberg constant.

    The constant term is affine in n1, so this coincides with the linear
    response identically, not just to first order.
    """
    tau = _check_times(tau)
    if observable == "A1":
        before = coeffs_thermal(params, baths, tau).s
        after = coeffs_thermal(params, baths.replace(n1=baths.n1 + phi), tau).s
        return baths.beta1_omega1 * (after - before)
    if observable == "A2":
        swapped = ThermalBathPair(n1=baths.n2, n2=baths.n1)
        before = coeffs_thermal(params, swapped, tau).s
        after = coeffs_thermal(params, swapped.replace(n2=baths.n1 + phi), tau).s
        return baths.beta2_omega2 * (after - before)
    raise InvalidModelError(f"observable must be 'A1' or 'A2', got {observable!r}")


def exact_response_squeezed(params: SystemParams, bath: SqueezedBath, phi: float, tau):
    """Exact dynamic response of the probe energy to a bath quench shifting N by phi."""
    tau = _check_times(tau)
    big_n = bath.occupation
    before = coeffs_squeezed(params, tau, occupation=big_n).l
    after = coeffs_squeezed(params, tau, occupation=big_n + phi).l
    return after - before


def exact_response_for(
    params: SystemParams,
    baths: ThermalBathPair | SqueezedBath,
    perturbation: Perturbation,
    tau,
    observable: str = "A1",
):
    """Dispatch the exact dynamic response for a dissipative perturbation.

    Coupling quenches are rejected: the exact dynamics of a Hamiltonian quench
    are not a coefficient-function difference (use exact_response_cm for the
    all-orders covariance propagation instead).
    """
    if perturbation.kind == "coupling":
        raise InvalidModelError(
            "exact dynamic response is defined for dissipative quenches only; "
            "coupling quenches have no coefficient-difference form"
        )
    if isinstance(baths, SqueezedBath):
        return exact_response_squeezed(params, baths, float(perturbation.value.real), tau)
    return exact_response(params, baths, float(perturbation.value.real), tau, observable)


def _propagate_occupation_shift(
    alpha: NDArray, sigma_start: NDArray, sigma_target: NDArray, tau: NDArray, mode: int
) -> NDArray:
    """<n_mode>(t) - <n_mode>(0) for the covariance flow started at sigma_start."""
    i = 2 * (mode - 1)
    delta0 = sigma_start - sigma_target
    out = np.empty_like(tau)
    occ0 = 0.5 * (sigma_start[i, i] + sigma_start[i + 1, i + 1]) - 0.5
    for k, t in enumerate(np.atleast_1d(tau)):
        prop = expm(t * alpha)
        sig_t = sigma_target + prop @ delta0 @ prop.T
        out[k] = 0.5 * (sig_t[i, i] + sig_t[i + 1, i + 1]) - 0.5 - occ0
    return out


def exact_response_cm(
    params: SystemParams,
    baths: ThermalBathPair,
    epsilon: float,
    phi: float,
    tau,
    observable: str = "A1",
):
    """All-orders dynamic response from propagating the covariance matrix.

    Starts from the unperturbed steady state and evolves it under the quenched
    generators; valid for any quench combination, and the reference oracle for
    the combined coupling-plus-occupation case.
    """
    tau = _check_times(np.atleast_1d(tau))
    if observable not in ("A1", "A2"):
        raise InvalidModelError(f"observable must be 'A1' or 'A2', got {observable!r}")
    factor = baths.beta1_omega1 if observable == "A1" else baths.beta2_omega2
    mode = 1 if observable == "A1" else 2
    params_q = params.replace(lam=params.lam + epsilon)
    baths_q = baths.replace(n1=baths.n1 + phi)
    sigma0 = closed_form_steady_state(params, baths).matrix
    sigma_inf = closed_form_steady_state(params_q, baths_q).matrix
    alpha = build_generators(params_q, baths_q).alpha
    return factor * _propagate_occupation_shift(alpha, sigma0, sigma_inf, tau, mode)


def exact_response_cm_squeezed(params: SystemParams, bath: SqueezedBath, phi: float, tau):
    """All-orders probe response from covariance propagation in the squeezed scenario."""
    tau = _check_times(np.atleast_1d(tau))
    bath_q = bath.quenched(phi)
    sigma0 = cm_transform(steady_state_squeezed(params, bath).sigma).matrix
    sigma_inf = cm_transform(steady_state_squeezed(params, bath_q).sigma).matrix
    alpha = build_squeezed_generators(params, bath_q).alpha
    return _propagate_occupation_shift(alpha, sigma0, sigma_inf, tau, mode=2)


def response_squeezed(params: SystemParams, bath: SqueezedBath, phi: float, tau):
    """Linear response of the probe's dimensionless energy to a squeezing-linked quench.

    The squeeze-channel superoperator contributes exactly zero to a2+a2, so
    the whole response runs through the induced occupation step phi = Delta N
    convolved with the kernel f of the squeezed scenario.
    """
    tau = _check_times(tau)
    del bath  # the probe response depends on the bath only through phi = Delta N
    return params.gamma * phi * squeezed_response_kernel_integral(params, tau)


def response_squeezed_asymptote(params: SystemParams, phi: float) -> float:
    """Long-time probe response: exactly phi whenever the probe is coupled and damped."""
    if params.lam == 0.0 or params.gamma == 0.0:
        return 0.0
    return float(phi)


def perturbed_value_squeezed(params: SystemParams, bath: SqueezedBath, phi: float) -> float:
    """Probe-energy shift between the quenched and original squeezed steady states."""
    before = steady_state_squeezed(params, bath)
    after = steady_state_squeezed(params, bath.quenched(phi))
    return after.sigma.mode_occupation(2) - before.sigma.mode_occupation(2)


def infer_phi_from_probe(
    delta_a1_inf: float, delta_a2_inf: float, beta1_omega1: float, beta2_omega2: float
) -> float:
    """Recover the occupation quench from the two asymptotic energy shifts."""
    for name, value in (("beta1_omega1", beta1_omega1), ("beta2_omega2", beta2_omega2)):
        if not math.isfinite(value) or value <= 0.0:
            raise InvalidModelError(f"{name} must be positive and finite, got {value}")
    return delta_a1_inf / beta1_omega1 + delta_a2_inf / beta2_omega2


def eta_from_phi(phi: float, r: float, theta: float) -> complex:
    """Squeezing quench implied by an occupation quench on a squeezed bath.

    eta = -2 e^{i theta} phi cosh(r) sinh(r) / (cosh^2 r + sinh^2 r); the
    squeezing parameter itself is assumed untouched by the quench.
    """
    if r < 0.0:
        raise InvalidModelError(f"squeezing magnitude r must be >= 0, got {r}")
    ch, sh = math.cosh(r), math.sinh(r)
    return -2.0 * cmath.exp(1j * theta) * phi * ch * sh / (ch * ch + sh * sh)


def eta_null_residual(params: SystemParams, bath: SqueezedBath, eta: complex, t: float) -> float:
    """|Tr[A2(t) L_eta rho_0]| evaluated on the moment representation.

    The squeezing-quench superoperator only feeds the anomalous monomials
    a1^2 and a1+^2, which never enter the expansion of a2+a2(t); this function
    performs that contraction numerically instead of assuming it.
    """
    m_eta, w_eta = assemble_adjoint_generator(
        BosonPolynomial(), squeezing_quench_terms(params, eta)
    )
    state = steady_state_squeezed(params, bath)
    gen = build_squeezed_observable_generator(params, bath.occupation, bath.squeeze)
    evolved = evolve_observables(gen, t, observable=IDX_N2)
    flow = m_eta @ moment_vector(state) + w_eta
    return abs(complex(evolved.coefficients @ flow))


def thermal_response_curve(
    params: SystemParams,
    baths: ThermalBathPair,
    epsilon: float,
    phi: float,
    times,
    observable: str = "A1",
) -> ResponseCurve:
    """Response curve of the thermal scenario with its exact twin and perturbed value.

    At gamma = 0 the curve is the formal unitary limit: there is no steady
    state to quench, so the exact column and the asymptote do not exist.
    """
    times = _check_times(times)
    if observable == "A1":
        linear = response_combined(params, baths, epsilon, phi, times)
    elif observable == "A2":
        if epsilon != 0.0:
            raise InvalidModelError(
                "the probe response is defined for occupation quenches; set epsilon = 0 for A2"
            )
        linear = response_occupation(params, baths, phi, times, which_oscillator=2)
    else:
        raise InvalidModelError(f"observable must be 'A1' or 'A2', got {observable!r}")
    perturbations = tuple(
        p
        for p in (
            Perturbation.coupling(epsilon) if epsilon != 0.0 else None,
            Perturbation.occupation(phi) if phi != 0.0 else None,
        )
        if p is not None
    )
    if params.gamma == 0.0:
        exact = None
        asymptote = float("nan")
    else:
        if epsilon == 0.0:
            exact = np.asarray(exact_response(params, baths, phi, times, observable), dtype=float)
        else:
            exact = np.asarray(
                exact_response_cm(params, baths, epsilon, phi, times, observable), dtype=float
            )
        asymptote = perturbed_value(params, baths, epsilon, phi, observable)
    return ResponseCurve(
        times=times,
        linear=np.asarray(linear, dtype=float),
        exact=exact,
        asymptote=asymptote,
        observable=observable,
        scenario="thermal-two-bath",
        perturbations=perturbations,
    )


def squeezed_response_curve(
    params: SystemParams, bath: SqueezedBath, phi: float, times
) -> ResponseCurve:
    """Probe response curve of the squeezed scenario (dimensionless a2+a2)."""
    times = _check_times(times)
    linear = response_squeezed(params, bath, phi, times)
    exact = exact_response_squeezed(params, bath, phi, times)
    if params.lam == 0.0:
        # a decoupled, undamped probe never relaxes toward the formal quenched
        # steady state; its energy simply stays put
        asymptote = 0.0
    else:
        asymptote = perturbed_value_squeezed(params, bath, phi)
    perturbations = (
        Perturbation.occupation(phi),
        Perturbation.squeezing(eta_from_phi(phi, bath.r, bath.theta)),
    )
    return ResponseCurve(
        times=times,
        linear=np.asarray(linear, dtype=float),
        exact=np.asarray(exact, dtype=float),
        asymptote=asymptote,
        observable="n2",
        scenario="squeezed-single-bath",
        perturbations=perturbations,
    )
