"""Exact normal-ordered operator algebra for two bosonic modes.

Monomials are keyed by exponent tuples (k1, l1, k2, l2) standing for
a1+^k1 a1^l1 a2+^k2 a2^l2.  Products are expanded with the exact reordering
identity a^l a+^m = sum_j C(l,j) C(m,j) j! a+^(m-j) a^(l-j), so adjoint
master-equation generators can be assembled term by term from a Lindbladian
instead of being transcribed.  This is the independent route used to verify
the explicit generators in :mod:`nessprobe.heisenberg`.
"""

from __future__ import annotations

from math import comb, factorial

import numpy as np

Key = tuple[int, int, int, int]

# quadratic monomial basis shared with the Heisenberg propagator:
# (a1+a1, a1^2, a1+^2, a2+a2, a2^2, a2+^2, a1a2, a1a2+, a1+a2, a1+a2+)
QUADRATIC_KEYS: tuple[Key, ...] = (
    (1, 1, 0, 0),
    (0, 2, 0, 0),
    (2, 0, 0, 0),
    (0, 0, 1, 1),
    (0, 0, 0, 2),
    (0, 0, 2, 0),
    (0, 1, 0, 1),
    (0, 1, 1, 0),
    (1, 0, 0, 1),
    (1, 0, 1, 0),
)

_PRUNE = 0.0


def _mode_product(k: int, l: int, m: int, n: int):
    """Yield (coeff, dag_exp, ann_exp) terms of (a+^k a^l)(a+^m a^n) for one mode."""
    for j in range(min(l, m) + 1):
        yield comb(l, j) * comb(m, j) * factorial(j), k + m - j, l + n - j


class BosonPolynomial:
    """Polynomial in the creation/annihilation operators of two modes."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Key, complex] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != _PRUNE}

    @classmethod
    def constant(cls, value: complex) -> "BosonPolynomial":
        return cls({(0, 0, 0, 0): complex(value)})

    @classmethod
    def monomial(cls, key: Key, coeff: complex = 1.0) -> "BosonPolynomial":
        return cls({key: complex(coeff)})

    @classmethod
    def a1(cls) -> "BosonPolynomial":
        return cls.monomial((0, 1, 0, 0))

    @classmethod
    def a1d(cls) -> "BosonPolynomial":
        return cls.monomial((1, 0, 0, 0))

    @classmethod
    def a2(cls) -> "BosonPolynomial":
        return cls.monomial((0, 0, 0, 1))

    @classmethod
    def a2d(cls) -> "BosonPolynomial":
        return cls.monomial((0, 0, 1, 0))

    def dag(self) -> "BosonPolynomial":
        out: dict[Key, complex] = {}
        for (k1, l1, k2, l2), c in self.terms.items():
            out[(l1, k1, l2, k2)] = out.get((l1, k1, l2, k2), 0.0) + np.conj(c)
        return BosonPolynomial(out)

    def __add__(self, other: "BosonPolynomial") -> "BosonPolynomial":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0.0) + v
        return BosonPolynomial(out)

    def __sub__(self, other: "BosonPolynomial") -> "BosonPolynomial":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0.0) - v
        return BosonPolynomial(out)

    def scaled(self, factor: complex) -> "BosonPolynomial":
        return BosonPolynomial({k: factor * v for k, v in self.terms.items()})

    def __rmul__(self, factor: complex) -> "BosonPolynomial":
        return self.scaled(factor)

    def __mul__(self, other: "BosonPolynomial") -> "BosonPolynomial":
        out: dict[Key, complex] = {}
        for (k1, l1, k2, l2), ca in self.terms.items():
            for (m1, n1, m2, n2), cb in other.terms.items():
                c0 = ca * cb
                for w1, d1, e1 in _mode_product(k1, l1, m1, n1):
                    for w2, d2, e2 in _mode_product(k2, l2, m2, n2):
                        key = (d1, e1, d2, e2)
                        out[key] = out.get(key, 0.0) + c0 * w1 * w2
        return BosonPolynomial(out)

    def coefficient(self, key: Key) -> complex:
        return self.terms.get(key, 0.0)

    def max_abs_outside(self, keys: tuple[Key, ...]) -> float:
        allowed = set(keys) | {(0, 0, 0, 0)}
        return max((abs(v) for k, v in self.terms.items() if k not in allowed), default=0.0)


def commutator(a: BosonPolynomial, b: BosonPolynomial) -> BosonPolynomial:
    return a * b - b * a


def adjoint_hamiltonian(observable: BosonPolynomial, hamiltonian: BosonPolynomial) -> BosonPolynomial:
    """Heisenberg-picture Hamiltonian flow i[H, A]."""
    return 1j * commutator(hamiltonian, observable)


def adjoint_sandwich(
    observable: BosonPolynomial, left: BosonPolynomial, right: BosonPolynomial, weight: complex
) -> BosonPolynomial:
    """Adjoint of the superoperator rho -> weight * (P rho Q - {Q P, rho} / 2).

    The standard Lindblad jump is the special case P = L, Q = L+; the
    squeeze-type terms use P = Q = a+ (or a) with a complex weight.
    """
    qp = right * left
    return weight * (right * observable * left - 0.5 * (qp * observable + observable * qp))


def adjoint_jump(observable: BosonPolynomial, jump: BosonPolynomial, rate: float) -> BosonPolynomial:
    return adjoint_sandwich(observable, jump, jump.dag(), rate)


def hamiltonian_polynomial(params) -> BosonPolynomial:
    """Number-preserving two-mode Hamiltonian as an operator polynomial."""
    a1, a1d = BosonPolynomial.a1(), BosonPolynomial.a1d()
    a2, a2d = BosonPolynomial.a2(), BosonPolynomial.a2d()
    return (
        params.omega1 * (a1d * a1)
        + params.omega2 * (a2d * a2)
        + params.lam * (a1 * a2d + a2 * a1d)
    )


def assemble_adjoint_generator(
    hamiltonian: BosonPolynomial,
    dissipator_terms: list[tuple[complex, BosonPolynomial, BosonPolynomial]],
    tol: float = 1e-12,
) -> tuple[np.ndarray, np.ndarray]:
    """Apply the adjoint generator to every quadratic basis monomial.

    ``dissipator_terms`` is a list of (weight, P, Q) sandwich triples.  Returns
    the 10x10 flow matrix and the 10-vector of inhomogeneous constants; raises
    if the generator leaves the quadratic-plus-constant span (which a quadratic
    Hamiltonian with linear jump structure never does).
    """
    matrix = np.zeros((10, 10), dtype=complex)
    inhom = np.zeros(10, dtype=complex)
    for i, key in enumerate(QUADRATIC_KEYS):
        obs = BosonPolynomial.monomial(key)
        result = adjoint_hamiltonian(obs, hamiltonian)
        for weight, left, right in dissipator_terms:
            result = result + adjoint_sandwich(obs, left, right, weight)
        leak = result.max_abs_outside(QUADRATIC_KEYS)
        if leak > tol:
            raise ValueError(f"adjoint flow of monomial {key} leaves the quadratic span by {leak}")
        for j, kj in enumerate(QUADRATIC_KEYS):
            matrix[i, j] = result.coefficient(kj)
        inhom[i] = result.coefficient((0, 0, 0, 0))
    return matrix, inhom


def thermal_dissipator_terms(params, baths) -> list[tuple[complex, BosonPolynomial, BosonPolynomial]]:
    """Sandwich triples of the two local thermal dissipators."""
    g = params.gamma
    a1, a1d = BosonPolynomial.a1(), BosonPolynomial.a1d()
    a2, a2d = BosonPolynomial.a2(), BosonPolynomial.a2d()
    return [
        (g * (baths.n1 + 1.0), a1, a1d),
        (g * baths.n1, a1d, a1),
        (g * (baths.n2 + 1.0), a2, a2d),
        (g * baths.n2, a2d, a2),
    ]


def squeezed_dissipator_terms(
    params, occupation: float, squeeze: complex
) -> list[tuple[complex, BosonPolynomial, BosonPolynomial]]:
    """Sandwich triples of the squeezed thermal bath acting on mode 1 only."""
    g = params.gamma
    a1, a1d = BosonPolynomial.a1(), BosonPolynomial.a1d()
    return [
        (g * (occupation + 1.0), a1, a1d),
        (g * occupation, a1d, a1),
        (g * squeeze, a1d, a1d),
        (g * np.conj(squeeze), a1, a1),
    ]


def squeezing_quench_terms(params, eta: complex) -> list[tuple[complex, BosonPolynomial, BosonPolynomial]]:
    """Sandwich triples of the squeezing-quench superoperator (unit step magnitude eta)."""
    g = params.gamma
    a1, a1d = BosonPolynomial.a1(), BosonPolynomial.a1d()
    return [
        (g * eta, a1d, a1d),
        (g * np.conj(eta), a1, a1),
    ]
