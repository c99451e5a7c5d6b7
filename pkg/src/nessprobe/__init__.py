"""Gaussian two-oscillator open systems: steady states, linear response, probing.

Two coupled harmonic oscillators are damped either by two local thermal baths
or by a single squeezed thermal bath on the first oscillator.  The library
builds the Gaussian generators of both scenarios, solves for the
non-equilibrium steady states, propagates quadratic observables in the
Heisenberg picture, and evaluates linear, exact, and asymptotic responses to
step quenches of the coupling, the bath occupation, and the bath squeezing.
"""

from .dynamics import (
    CovarianceMatrix,
    PhysicalityReport,
    QuadraticGenerators,
    build_generators,
    check_physicality,
    closed_form_steady_state,
    cm_transform,
    cm_transform_inverse,
    solve_lyapunov,
    symplectic_form,
)
from .errors import (
    DegenerateParametersError,
    InvalidModelError,
    ModelError,
    NoSteadyStateError,
)
from .heisenberg import (
    ObservableGenerator,
    SqueezedCoefficients,
    ThermalCoefficients,
    build_observable_generator,
    build_squeezed_observable_generator,
    coeffs_squeezed,
    coeffs_thermal,
    evolve_observables,
)
from .model import SystemParams, ThermalBathPair, bose_occupation
from .response import (
    Perturbation,
    ResponseCurve,
    eta_from_phi,
    eta_null_residual,
    exact_response,
    exact_response_cm,
    exact_response_squeezed,
    infer_phi_from_probe,
    perturbed_value,
    perturbed_value_squeezed,
    response_combined,
    response_coupling,
    response_occupation,
    response_squeezed,
    squeezed_response_curve,
    thermal_response_curve,
)
from .squeezed import (
    SqueezedBath,
    SqueezedSteadyState,
    bath_coefficients,
    moment_flow_residual,
    steady_state_squeezed,
)

__version__ = "0.1.0"

__all__ = [
    "CovarianceMatrix",
    "DegenerateParametersError",
    "InvalidModelError",
    "ModelError",
    "NoSteadyStateError",
    "ObservableGenerator",
    "Perturbation",
    "PhysicalityReport",
    "QuadraticGenerators",
    "ResponseCurve",
    "SqueezedBath",
    "SqueezedCoefficients",
    "SqueezedSteadyState",
    "SystemParams",
    "ThermalBathPair",
    "ThermalCoefficients",
    "bath_coefficients",
    "bose_occupation",
    "build_generators",
    "build_observable_generator",
    "build_squeezed_observable_generator",
    "check_physicality",
    "closed_form_steady_state",
    "cm_transform",
    "cm_transform_inverse",
    "coeffs_squeezed",
    "coeffs_thermal",
    "eta_from_phi",
    "eta_null_residual",
    "evolve_observables",
    "exact_response",
    "exact_response_cm",
    "exact_response_squeezed",
    "infer_phi_from_probe",
    "moment_flow_residual",
    "perturbed_value",
    "perturbed_value_squeezed",
    "response_combined",
    "response_coupling",
    "response_occupation",
    "response_squeezed",
    "solve_lyapunov",
    "squeezed_response_curve",
    "steady_state_squeezed",
    "symplectic_form",
    "thermal_response_curve",
]
