"""Quadrature-basis Gaussian machinery.

Builds the drift and diffusion matrices of the covariance-matrix flow
sigma' = alpha sigma + sigma alpha^T + D from the Hamiltonian matrix and the
jump vectors, solves the steady-state Lyapunov equation, evaluates the
closed-form non-equilibrium steady state, and converts between the quadrature
basis (x1, p1, x2, p2) and the ladder basis (a1, a1+, a2, a2+).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import lu_factor, lu_solve

from .errors import DegenerateParametersError, InvalidModelError, NoSteadyStateError
from .model import SystemParams, ThermalBathPair

HURWITZ_TOL = 1e-12
PHYSICALITY_TOL = 1e-10

_J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
_LAMBDA2 = np.array([[1.0, 1.0], [-1.0j, 1.0j]]) / np.sqrt(2.0)


def symplectic_form() -> NDArray[np.float64]:
    """Two-mode symplectic form J with [Y, Y^T] = i J for Y = (x1, p1, x2, p2)."""
    out = np.zeros((4, 4))
    out[:2, :2] = _J2
    out[2:, 2:] = _J2
    return out


def ladder_transform() -> NDArray[np.complex128]:
    """Block-diagonal map Lambda with Y = Lambda X, X = (a1, a1+, a2, a2+)."""
    out = np.zeros((4, 4), dtype=complex)
    out[:2, :2] = _LAMBDA2
    out[2:, 2:] = _LAMBDA2
    return out


@dataclass(frozen=True)
class CovarianceMatrix:
    """Second-moment matrix of a zero-mean Gaussian two-mode state.

    ``basis`` is "quadrature" for the real symmetric sigma over (x1, p1, x2, p2)
    or "ladder" for the hermitian Sigma over (a1, a1+, a2, a2+).
    """

    matrix: NDArray
    basis: str = "quadrature"

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix)
        if m.shape != (4, 4):
            raise InvalidModelError(f"covariance matrix must be 4x4, got {m.shape}")
        if self.basis not in ("quadrature", "ladder"):
            raise InvalidModelError(f"unknown covariance basis {self.basis!r}")
        object.__setattr__(self, "matrix", m)

    def mode_occupation(self, mode: int) -> float:
        """Mean excitation number <a_m+ a_m> encoded in the covariance matrix."""
        if mode not in (1, 2):
            raise InvalidModelError(f"mode must be 1 or 2, got {mode}")
        i = 2 * (mode - 1)
        if self.basis == "quadrature":
            return 0.5 * float(self.matrix[i, i].real + self.matrix[i + 1, i + 1].real) - 0.5
        return float(self.matrix[i, i].real) - 0.5


@dataclass(frozen=True)
class QuadraticGenerators:
    """Hamiltonian matrix, jump vectors and the induced drift/diffusion pair."""

    G: NDArray[np.float64]
    jump_vectors: tuple[NDArray[np.complex128], ...]
    alpha: NDArray[np.float64]
    Dmat: NDArray[np.float64]
    Omega: NDArray[np.float64]


@dataclass(frozen=True)
class PhysicalityReport:
    """Outcome of the uncertainty-relation check on a covariance matrix."""

    min_eigenvalue: float
    passed: bool
    tol: float = PHYSICALITY_TOL


def hamiltonian_matrix(params: SystemParams) -> NDArray[np.float64]:
    """Quadratic Hamiltonian matrix G with H = Y G Y^T / 2."""
    w1, w2, lam = params.omega1, params.omega2, params.lam
    return np.array(
        [
            [w1, 0.0, lam, 0.0],
            [0.0, w1, 0.0, lam],
            [lam, 0.0, w2, 0.0],
            [0.0, lam, 0.0, w2],
        ]
    )


def thermal_jump_vectors(
    params: SystemParams, baths: ThermalBathPair
) -> tuple[NDArray[np.complex128], ...]:
    """Quadrature-basis jump vectors c_k of the two local thermal dissipators."""
    g = params.gamma
    c1 = np.sqrt(g * (baths.n1 + 1.0) / 2.0) * np.array([1.0, 1.0j, 0.0, 0.0])
    c2 = np.sqrt(g * baths.n1 / 2.0) * np.array([1.0, -1.0j, 0.0, 0.0])
    c3 = np.sqrt(g * (baths.n2 + 1.0) / 2.0) * np.array([0.0, 0.0, 1.0, 1.0j])
    c4 = np.sqrt(g * baths.n2 / 2.0) * np.array([0.0, 0.0, 1.0, -1.0j])
    return (c1, c2, c3, c4)


def generators_from_jumps(
    G: NDArray[np.float64], jumps: tuple[NDArray[np.complex128], ...]
) -> QuadraticGenerators:
    """Drift and diffusion induced by a quadratic Hamiltonian and linear jumps.

    With CC+ = sum_k c_k c_k+ the drift is J (G - Im CC+) and the diffusion is
    J Re(CC+) J^T; both are real for any jump set.
    """
    cc = np.zeros((4, 4), dtype=complex)
    for c in jumps:
        cc += np.outer(c, c.conj())
    J = symplectic_form()
    alpha = J @ (G - cc.imag)
    Dmat = J @ cc.real @ J.T
    return QuadraticGenerators(G=G, jump_vectors=tuple(jumps), alpha=alpha, Dmat=Dmat, Omega=J)


def build_generators(params: SystemParams, baths: ThermalBathPair) -> QuadraticGenerators:
    """Gaussian generators of the two-bath thermal scenario."""
    return generators_from_jumps(hamiltonian_matrix(params), thermal_jump_vectors(params, baths))


def _assert_hurwitz(alpha: NDArray[np.float64]) -> None:
    max_real = float(np.max(np.linalg.eigvals(alpha).real))
    if max_real >= -HURWITZ_TOL:
        raise NoSteadyStateError(
            f"drift matrix is not Hurwitz (max eigenvalue real part {max_real:.3e}); "
            "no unique steady state"
        )


def solve_lyapunov(gen: QuadraticGenerators) -> CovarianceMatrix:
    """Steady-state covariance from alpha sigma + sigma alpha^T + D = 0.

    Solves the Kronecker-vectorized 16x16 linear system directly, with one step
    of iterative refinement to keep the residual near machine precision even
    for stiff parameter corners.
    """
    alpha, D = gen.alpha, gen.Dmat
    _assert_hurwitz(alpha)
    eye = np.eye(4)
    K = np.kron(alpha, eye) + np.kron(eye, alpha)
    rhs = -D.reshape(-1)
    lu = lu_factor(K)
    s = lu_solve(lu, rhs)
    s -= lu_solve(lu, K @ s - rhs)
    sigma = s.reshape(4, 4)
    sigma = 0.5 * (sigma + sigma.T)
    return CovarianceMatrix(sigma, basis="quadrature")


def closed_form_steady_state(params: SystemParams, baths: ThermalBathPair) -> CovarianceMatrix:
    """Closed-form steady-state covariance of the thermal two-bath scenario."""
    g, d, lam = params.gamma, params.delta, params.lam
    gd2 = g * g + d * d
    if gd2 == 0.0:
        raise DegenerateParametersError(
            "gamma = delta = 0 makes the closed-form steady state singular"
        )
    zeta_ss = gd2 / (4.0 * lam * lam + gd2)
    B = 2.0 * lam * lam * (baths.n1 + baths.n2 + 1.0) / gd2
    C = lam * (baths.n1 - baths.n2) / gd2
    d1 = B + baths.n1 + 0.5
    d2 = B + baths.n2 + 0.5
    sigma = zeta_ss * np.array(
        [
            [d1, 0.0, -d * C, -g * C],
            [0.0, d1, g * C, -d * C],
            [-d * C, g * C, d2, 0.0],
            [-g * C, -d * C, 0.0, d2],
        ]
    )
    return CovarianceMatrix(sigma, basis="quadrature")


def cm_transform(cm: CovarianceMatrix) -> CovarianceMatrix:
    """Convert a ladder-basis covariance matrix to the quadrature basis."""
    if cm.basis != "ladder":
        raise InvalidModelError(f"cm_transform expects a ladder-basis input, got {cm.basis!r}")
    L = ladder_transform()
    sigma = L @ np.asarray(cm.matrix, dtype=complex) @ L.conj().T
    scale = max(1.0, float(np.max(np.abs(sigma))))
    residue = float(np.max(np.abs(sigma.imag)))
    if residue > 1e-12 * scale:
        raise InvalidModelError(
            f"ladder covariance is inconsistent: imaginary residue {residue:.3e} after transform"
        )
    out = sigma.real
    return CovarianceMatrix(0.5 * (out + out.T), basis="quadrature")


def cm_transform_inverse(cm: CovarianceMatrix) -> CovarianceMatrix:
    """Convert a quadrature-basis covariance matrix to the ladder basis."""
    if cm.basis != "quadrature":
        raise InvalidModelError(
            f"cm_transform_inverse expects a quadrature-basis input, got {cm.basis!r}"
        )
    L = ladder_transform()
    Sigma = L.conj().T @ np.asarray(cm.matrix, dtype=complex) @ L
    return CovarianceMatrix(Sigma, basis="ladder")


def check_physicality(cm: CovarianceMatrix) -> PhysicalityReport:
    """Heisenberg-uncertainty check: sigma + i J / 2 must be positive semidefinite."""
    sigma = cm.matrix if cm.basis == "quadrature" else cm_transform(cm).matrix
    sym = 0.5 * (sigma + sigma.T)
    test = sym.astype(complex) + 0.5j * symplectic_form()
    min_ev = float(np.min(np.linalg.eigvalsh(test)))
    return PhysicalityReport(min_eigenvalue=min_ev, passed=min_ev >= -PHYSICALITY_TOL)
