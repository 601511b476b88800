import itertools
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypertheta.chars import (
    ThetaCharacteristic,
    even_characteristics,
    odd_characteristics,
)
from hypertheta.theta import (
    LatticeBudgetError,
    SiegelError,
    SiegelPoint,
    jacobian_nullwert,
    modular_discriminant,
    modular_discriminant_subsets,
    theta,
    theta_gradient_null,
    theta_nullwert,
)

TAU1 = SiegelPoint.from_matrix([[1j]])
TAU2 = SiegelPoint.from_matrix(
    [[0.8 + 1.3j, 0.3 + 0.4j], [0.3 + 0.4j, -0.2 + 1.1j]]
)


def oracle_theta(char, z, tau, box=15, dps=40):
    """Naive high-precision summation over a fixed integer box."""
    g = char.genus
    tau = np.atleast_2d(np.asarray(tau, dtype=complex))
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    a, b = char.top, char.bottom
    with mpmath.workdps(dps):
        tm = [[mpmath.mpc(tau[i, j]) for j in range(g)] for i in range(g)]
        zm = [mpmath.mpc(z[i]) + b[i] for i in range(g)]
        terms = []
        for n in itertools.product(range(-box, box + 1), repeat=g):
            m = [n[i] + a[i] for i in range(g)]
            quad = mpmath.fsum(
                tm[i][j] * m[i] * m[j] for i in range(g) for j in range(g)
            )
            lin = mpmath.fsum(m[i] * zm[i] for i in range(g))
            terms.append(mpmath.expjpi(quad + 2 * lin))
        total = mpmath.fsum(terms)
    return complex(total)


def test_nullwert_against_frozen_oracle_value():
    # naive 50-digit summation over |n| <= 30 gives this value at tau = i
    tv = theta_nullwert(ThetaCharacteristic.zero(1), TAU1)
    assert abs(tv.value - 1.0864348112133080) < 1e-14
    assert tv.truncation_bound < 1e-12


def test_odd_char_vanishes_at_zero():
    tv = theta_nullwert(ThetaCharacteristic.parse("1|1"), TAU1)
    assert abs(tv.value) < 1e-12


@pytest.mark.parametrize(
    "char,z",
    [
        ("0|0", [0.2 + 0.1j]),
        ("1|0", [0.0]),
        ("1|1", [-0.3 + 0.25j]),
    ],
)
def test_theta_g1_matches_oracle(char, z):
    c = ThetaCharacteristic.parse(char)
    got = theta(c, z, TAU1, tol=1e-13).value
    want = oracle_theta(c, z, [[1j]])
    assert abs(got - want) < 1e-12


@pytest.mark.parametrize("text", ["00|00", "01|11", "10|10"])
def test_theta_g2_matches_oracle(text):
    c = ThetaCharacteristic.parse(text)
    z = [0.1 - 0.05j, 0.2 + 0.15j]
    got = theta(c, z, TAU2, tol=1e-13).value
    want = oracle_theta(c, z, TAU2.tau, box=12)
    assert abs(got - want) < 1e-11


def test_truncation_bound_is_honest():
    c = ThetaCharacteristic.zero(2)
    z = [0.3 + 0.2j, -0.1 + 0.1j]
    loose = theta(c, z, TAU2, tol=1e-6)
    tight = theta(c, z, TAU2, tol=1e-13)
    assert abs(loose.value - tight.value) <= loose.truncation_bound + 1e-13


def test_monotone_refinement():
    c = ThetaCharacteristic.zero(2)
    z = [0.25 + 0.3j, 0.4 - 0.2j]
    tol = 1e-6
    prev = theta(c, z, TAU2, tol=tol)
    for _ in range(5):
        tol /= 2
        cur = theta(c, z, TAU2, tol=tol)
        assert abs(cur.value - prev.value) <= prev.truncation_bound * 1.0001
        assert cur.truncation_bound <= prev.truncation_bound
        prev = cur


@settings(max_examples=20, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3))
def test_quasi_periodicity_integer_shift_g2(m1, m2):
    tol = 1e-12
    c = ThetaCharacteristic.parse("01|10")
    z = np.array([0.21 + 0.11j, -0.13 + 0.07j])
    m = np.array([m1, m2])
    lhs = theta(c, z + m, TAU2, tol=tol).value
    rhs = np.exp(2j * np.pi * np.dot(c.top, m)) * theta(c, z, TAU2, tol=tol).value
    assert abs(lhs - rhs) < 10 * tol * max(1.0, abs(rhs))


@settings(max_examples=10, deadline=None)
@given(st.integers(-2, 2), st.integers(-2, 2))
def test_quasi_periodicity_tau_shift_g2(n1, n2):
    tol = 1e-12
    c = ThetaCharacteristic.parse("11|01")
    z = np.array([0.17 - 0.08j, 0.05 + 0.21j])
    n = np.array([n1, n2])
    tau = TAU2.tau
    lhs = theta(c, z + tau @ n, TAU2, tol=tol).value
    factor = np.exp(
        -1j * np.pi * (n @ tau @ n)
        - 2j * np.pi * (n @ (z + np.array(c.bottom)))
    )
    rhs = factor * theta(c, z, TAU2, tol=tol).value
    assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(rhs))


@pytest.mark.parametrize("text", ["00|00", "01|11", "11|11", "10|01"])
def test_parity_relation(text):
    c = ThetaCharacteristic.parse(text)
    z = np.array([0.3 + 0.12j, -0.2 + 0.05j])
    tol = 1e-12
    plus = theta(c, z, TAU2, tol=tol).value
    minus = theta(c, -z, TAU2, tol=tol).value
    assert abs(minus - c.parity() * plus) < 10 * tol * max(1.0, abs(plus))


def test_gradient_even_char_returns_zero_with_flag():
    gr = theta_gradient_null(ThetaCharacteristic.parse("10|01"), TAU2)
    assert gr.even_input
    assert np.all(gr.value == 0)


def test_gradient_matches_finite_differences():
    h = 1e-5
    for c in odd_characteristics(2):
        gr = theta_gradient_null(c, TAU2, tol=1e-13)
        for j in range(2):
            e = np.zeros(2)
            e[j] = h
            fd = (
                theta(c, e, TAU2, tol=1e-13).value
                - theta(c, -e, TAU2, tol=1e-13).value
            ) / (2 * h)
            assert abs(fd - gr.value[j]) < 1e-8 * max(1.0, abs(gr.value[j]))


def test_gradient_matches_finite_differences_g3():
    rng = np.random.default_rng(9)
    a = rng.normal(size=(3, 3))
    tau3 = SiegelPoint.from_matrix(
        0.3 * (a + a.T) + 1j * (np.eye(3) + 0.2 * np.ones((3, 3)))
    )
    h = 1e-5
    for c in odd_characteristics(3)[:4]:
        gr = theta_gradient_null(c, tau3, tol=1e-13)
        for j in range(3):
            e = np.zeros(3)
            e[j] = h
            fd = (
                theta(c, e, tau3, tol=1e-13).value
                - theta(c, -e, tau3, tol=1e-13).value
            ) / (2 * h)
            assert abs(fd - gr.value[j]) < 1e-8 * max(1.0, abs(gr.value[j]))


def test_jacobi_derivative_formula_tau_i():
    odd = ThetaCharacteristic.parse("1|1")
    lhs = theta_gradient_null(odd, TAU1, tol=1e-13).value[0]
    rhs = -math.pi * math.prod(
        theta_nullwert(c, TAU1, tol=1e-13).value for c in even_characteristics(1)
    )
    assert abs(lhs - rhs) < 1e-12


def test_jacobian_nullwert_antisymmetry_and_repeats():
    odd = odd_characteristics(2)
    j12 = jacobian_nullwert([odd[0], odd[1]], TAU2)
    j21 = jacobian_nullwert([odd[1], odd[0]], TAU2)
    assert abs(j12.value + j21.value) < 1e-12
    assert abs(jacobian_nullwert([odd[0], odd[0]], TAU2).value) < 1e-12


def test_jacobian_nullwert_input_validation():
    odd = odd_characteristics(2)
    with pytest.raises(ValueError):
        jacobian_nullwert([odd[0]], TAU2)
    with pytest.raises(ValueError):
        jacobian_nullwert([odd[0], ThetaCharacteristic.zero(2)], TAU2)


def test_modular_discriminant_g1_is_even_product():
    # the three subset characteristics are exactly the three even ones
    vals = [theta_nullwert(c, TAU1, tol=1e-13).value for c in even_characteristics(1)]
    expect = math.prod(v**8 for v in vals)
    got = modular_discriminant(1, TAU1, tol=1e-13)
    assert abs(got.value - expect) < 1e-12 * abs(expect)
    assert len(modular_discriminant_subsets(1)) == 3


def test_modular_discriminant_subset_counts():
    assert len(modular_discriminant_subsets(2)) == 10
    assert len(modular_discriminant_subsets(3)) == 35


def test_extended_matches_standard():
    c = ThetaCharacteristic.parse("01|11")
    z = [0.12 + 0.04j, -0.08 + 0.1j]
    std = theta(c, z, TAU2, tol=1e-13).value
    ext = theta(c, z, TAU2, tol=1e-13, precision="extended", dps=35).value
    assert abs(std - complex(ext)) < 1e-12
    gr_s = theta_gradient_null(odd_characteristics(2)[0], TAU2, tol=1e-13)
    gr_e = theta_gradient_null(
        odd_characteristics(2)[0], TAU2, tol=1e-13, precision="extended", dps=35
    )
    assert all(
        abs(complex(a) - b) < 1e-12 for a, b in zip(gr_e.value, gr_s.value)
    )


def test_siegel_validation():
    with pytest.raises(SiegelError):
        SiegelPoint.from_matrix([[1j, 0.5], [0.0, 1j]])  # asymmetric
    with pytest.raises(SiegelError):
        SiegelPoint.from_matrix([[-1j]])  # Im not positive definite
    with pytest.raises(SiegelError):
        SiegelPoint.from_matrix([[1j, 2j], [2j, 1j]])  # indefinite Im
    sp = SiegelPoint.from_matrix([[1j, 0.5 + 1e-12], [0.5, 1j]])
    assert sp.symmetry_defect < 1e-11


def test_lattice_budget_error():
    with pytest.raises(LatticeBudgetError):
        theta(
            ThetaCharacteristic.zero(1),
            [0.0],
            SiegelPoint.from_matrix([[1e-6j]]),
            tol=1e-12,
            budget=1000,
        )


def test_tolerance_validation():
    with pytest.raises(ValueError):
        theta(ThetaCharacteristic.zero(1), [0.0], TAU1, tol=0.0)
    with pytest.raises(ValueError):
        theta(ThetaCharacteristic.zero(1), [0.0], TAU1, precision="quad")


def test_large_real_translate_is_stable():
    # the series is 1-periodic in Re tau; huge real parts must not degrade
    sp = SiegelPoint.from_matrix([[1e6 + 1j]])
    ref = theta_nullwert(ThetaCharacteristic.zero(1), SiegelPoint.from_matrix([[1j]]))
    got = theta_nullwert(ThetaCharacteristic.zero(1), sp)
    assert abs(got.value - ref.value) < 1e-10
