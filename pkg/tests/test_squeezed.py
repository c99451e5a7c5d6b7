import math

import numpy as np
import pytest

from nessprobe import (
    DegenerateParametersError,
    InvalidModelError,
    SqueezedBath,
    SystemParams,
    bath_coefficients,
    check_physicality,
    cm_transform,
    moment_flow_residual,
    steady_state_squeezed,
)
from nessprobe.heisenberg import build_squeezed_observable_generator
from nessprobe.squeezed import build_squeezed_generators, moment_vector

FIG_PARAMS = SystemParams(delta=10.0, lam=5.0, gamma=0.5)


def test_bath_coefficients_thermal_limit():
    assert bath_coefficients(2.5, 0.0, 1.3) == (2.5, 0.0)


def test_bath_coefficients_vacuum_saturates_positivity():
    for r in (0.3, 1.0, 2.0):
        big_n, big_m = bath_coefficients(0.0, r, 0.7)
        assert abs(big_m) ** 2 == pytest.approx(big_n * (big_n + 1.0), rel=1e-12)


def test_bath_coefficients_direct_evaluation():
    big_n, big_m = bath_coefficients(1.0, 1.0, math.pi / 2.0)
    ch, sh = math.cosh(1.0), math.sinh(1.0)
    assert big_n == pytest.approx(ch * ch + 2.0 * sh * sh)
    assert big_m.real == pytest.approx(0.0, abs=1e-15)
    assert big_m.imag == pytest.approx(-3.0 * ch * sh)


def test_bath_coefficients_positivity_inequality_random():
    rng = np.random.default_rng(2)
    for _ in range(50):
        big_n, big_m = bath_coefficients(rng.uniform(0, 50), rng.uniform(0, 3), rng.uniform(0, 2 * np.pi))
        assert abs(big_m) ** 2 <= big_n * (big_n + 1.0) * (1.0 + 1e-12) + 1e-9


def test_bath_validation():
    with pytest.raises(InvalidModelError):
        SqueezedBath(n=-1.0, r=0.5)
    with pytest.raises(InvalidModelError):
        SqueezedBath(n=1.0, r=-0.5)


def test_quenched_bath_shifts_both_coefficients_consistently():
    bath = SqueezedBath(n=2.0, r=1.0, theta=0.4)
    phi = 0.05
    quenched = bath.quenched(phi)
    assert quenched.occupation - bath.occupation == pytest.approx(phi, rel=1e-12)
    ch, sh = math.cosh(1.0), math.sinh(1.0)
    expected_eta = -2.0 * np.exp(0.4j) * phi * ch * sh / (ch * ch + sh * sh)
    assert quenched.squeeze - bath.squeeze == pytest.approx(expected_eta, rel=1e-12)


def test_steady_state_pattern():
    bath = SqueezedBath(n=1.2, r=0.9, theta=0.6)
    state = steady_state_squeezed(FIG_PARAMS, bath)
    sig = state.sigma.matrix
    nh = bath.occupation + 0.5
    assert np.allclose(np.diag(sig), nh)
    assert sig[0, 2] == 0.0 and sig[1, 3] == 0.0
    assert sig[0, 1] == state.d_coef
    assert sig[1, 2] == state.e_coef
    assert sig[2, 3] == state.f_coef
    assert np.allclose(sig, sig.conj().T)


def test_steady_state_decoupled_limit():
    bath = SqueezedBath(n=1.2, r=0.9, theta=0.6)
    state = steady_state_squeezed(FIG_PARAMS.replace(lam=0.0), bath)
    assert state.e_coef == 0.0
    assert state.f_coef == 0.0
    assert abs(state.d_coef) > 0.0


def test_steady_state_thermal_limit():
    bath = SqueezedBath(n=1.7, r=0.0)
    state = steady_state_squeezed(FIG_PARAMS, bath)
    assert state.d_coef == 0.0 and state.e_coef == 0.0 and state.f_coef == 0.0
    assert np.allclose(state.sigma.matrix, (1.7 + 0.5) * np.eye(4))


def test_steady_state_requires_damping():
    with pytest.raises(DegenerateParametersError):
        steady_state_squeezed(FIG_PARAMS.replace(gamma=0.0), SqueezedBath(n=1.0, r=0.5))


def test_stationarity_residual_random_draws():
    rng = np.random.default_rng(7)
    for _ in range(100):
        p = SystemParams(
            delta=rng.uniform(0.0, 20.0),
            lam=rng.uniform(0.0, 20.0),
            gamma=rng.uniform(0.1, 2.0),
        )
        bath = SqueezedBath(n=rng.uniform(0.0, 10.0), r=rng.uniform(0.0, 2.0), theta=rng.uniform(0.0, 2.0 * np.pi))
        state = steady_state_squeezed(p, bath)
        assert moment_flow_residual(p, bath, state) <= 1e-9


def test_stationarity_in_moment_representation():
    # the ten-monomial flow also has to vanish at the closed-form moments
    bath = SqueezedBath(n=2.0, r=1.0, theta=0.3)
    state = steady_state_squeezed(FIG_PARAMS, bath)
    gen = build_squeezed_observable_generator(FIG_PARAMS, bath.occupation, bath.squeeze)
    residual = gen.matrix @ moment_vector(state) + gen.inhom
    assert np.max(np.abs(residual)) <= 1e-12


def test_steady_state_transform_and_physicality():
    bath = SqueezedBath.from_inverse_temperature(0.1, r=1.0, theta=0.0)
    state = steady_state_squeezed(FIG_PARAMS, bath)
    sigma = cm_transform(state.sigma)
    assert check_physicality(sigma).passed


def test_thermal_limit_transform_is_diagonal():
    bath = SqueezedBath(n=3.0, r=0.0)
    state = steady_state_squeezed(FIG_PARAMS, bath)
    sigma = cm_transform(state.sigma)
    assert np.allclose(sigma.matrix, 3.5 * np.eye(4), atol=1e-13)


def test_continuity_against_limits():
    bath_small_r = SqueezedBath(n=1.5, r=1e-7, theta=0.9)
    state = steady_state_squeezed(FIG_PARAMS, bath_small_r)
    assert abs(state.d_coef) < 1e-5
    assert abs(state.occupation - 1.5) < 1e-5
    state_small_lam = steady_state_squeezed(FIG_PARAMS.replace(lam=1e-7), SqueezedBath(n=1.5, r=1.0))
    assert abs(state_small_lam.e_coef) < 1e-6
    assert abs(state_small_lam.f_coef) < 1e-6


def test_probe_energy_is_theta_independent():
    # theta only rotates the anomalous moments; the diagonal stays at N + 1/2
    for theta in (0.0, 1.0, 2.5, 5.0):
        bath = SqueezedBath(n=2.0, r=1.0, theta=theta)
        state = steady_state_squeezed(FIG_PARAMS, bath)
        assert state.sigma.mode_occupation(2) == pytest.approx(bath.occupation, rel=1e-12)


def test_jump_route_diffusion_only_on_mode_one():
    gen = build_squeezed_generators(FIG_PARAMS, SqueezedBath(n=1.0, r=0.8, theta=0.2))
    assert np.max(np.abs(gen.Dmat[2:, 2:])) == 0.0
    assert np.max(np.abs(gen.Dmat[:2, :2])) > 0.0
