import math

import pytest

from nessprobe import InvalidModelError, SystemParams, ThermalBathPair, bose_occupation


def test_bose_occupation_values():
    assert bose_occupation(0.1) == pytest.approx(1.0 / (math.exp(0.1) - 1.0), rel=1e-14)
    assert bose_occupation(20.0) == pytest.approx(math.exp(-20.0), rel=1e-8)


def test_bose_occupation_rejects_nonpositive():
    with pytest.raises(InvalidModelError):
        bose_occupation(0.0)
    with pytest.raises(InvalidModelError):
        bose_occupation(-1.0)


def test_system_params_derived_quantities():
    p = SystemParams(delta=10.0, lam=5.0, gamma=0.5)
    assert p.omega2 == 11.0
    assert p.z2 == pytest.approx(200.0)
    assert p.z == pytest.approx(math.sqrt(200.0))


def test_system_params_validation():
    with pytest.raises(InvalidModelError):
        SystemParams(delta=0.0, lam=0.0, gamma=-0.1)
    with pytest.raises(InvalidModelError):
        SystemParams(delta=math.inf, lam=0.0, gamma=0.1)
    with pytest.raises(InvalidModelError):
        SystemParams(delta=0.0, lam=0.0, gamma=0.1, omega1=0.0)


def test_bath_pair_validation():
    with pytest.raises(InvalidModelError):
        ThermalBathPair(n1=-0.5, n2=1.0)


def test_bath_pair_from_inverse_temperatures_uses_omega2():
    p = SystemParams(delta=10.0, lam=5.0, gamma=0.5)
    b = ThermalBathPair.from_inverse_temperatures(0.1, 0.001, p)
    assert b.n1 == pytest.approx(1.0 / math.expm1(0.1), rel=1e-14)
    # bath 2 sits at beta2 * omega2 = 0.001 * 11
    assert b.n2 == pytest.approx(1.0 / math.expm1(0.011), rel=1e-14)


def test_inverse_temperature_round_trip():
    p = SystemParams(delta=10.0, lam=5.0, gamma=0.5)
    b = ThermalBathPair.from_inverse_temperatures(0.1, 0.001, p)
    assert b.beta1_omega1 == pytest.approx(0.1, abs=1e-15)
    assert b.beta2_omega2 == pytest.approx(0.011, abs=1e-15)
