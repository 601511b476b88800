import numpy as np
import pytest
import sympy

from hypertheta.curves import (
    CurveError,
    HyperellipticCurve,
    odd_model_from_even,
    poly_discriminant,
    poly_discriminant_from_roots,
)


def resultant_discriminant(coeffs):
    """Oracle: D(f) = Res(f, f') / lc(f), exact via sympy."""
    x = sympy.symbols("x")
    f = sympy.Poly(list(coeffs), x)
    return sympy.resultant(f, f.diff(x)) / coeffs[0]


def test_discriminant_cubic_against_resultant_oracle():
    d = poly_discriminant([1, 0, -1, 0])  # x^3 - x
    oracle = resultant_discriminant([1, 0, -1, 0])
    assert oracle == -4
    assert abs(d - complex(oracle)) < 1e-10


def test_discriminant_worked_value_x6_plus_4x():
    # ordered-pair product for x^6 + 4x; magnitude is 2^12 * 5^5 = 12_800_000
    coeffs = [1, 0, 0, 0, 0, 4, 0]
    oracle = resultant_discriminant(coeffs)
    assert oracle == -(2**12 * 5**5)
    d = poly_discriminant(coeffs)
    assert abs(d - complex(oracle)) < 1e-3 * abs(oracle)
    assert round(abs(d)) == 2**12 * 5**5


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_discriminant_matches_resultant_on_random_integer_polys(seed):
    rng = np.random.default_rng(seed)
    coeffs = [1] + [int(c) for c in rng.integers(-4, 5, size=5)]
    oracle = resultant_discriminant(coeffs)
    if oracle == 0:
        pytest.skip("random polynomial not squarefree")
    d = poly_discriminant(coeffs)
    assert abs(d - complex(oracle)) < 1e-8 * max(1.0, abs(oracle))


def test_discriminant_translation_invariance():
    roots = [-1.0, 0.3, 1.1]
    d0 = poly_discriminant_from_roots(roots)
    d1 = poly_discriminant_from_roots([r + 0.7 - 0.2j for r in roots])
    assert abs(d0 - d1) < 1e-10 * abs(d0)


def test_from_roots_and_coeffs_roundtrip():
    c = HyperellipticCurve.from_roots([-1.0, 0.0, 1.0])
    assert c.genus == 1
    assert np.allclose(c.coeffs, [1, 0, -1, 0])
    c2 = HyperellipticCurve.from_coeffs([1, 0, -1, 0])
    assert c2.genus == 1
    assert sorted(r.real for r in c2.roots) == pytest.approx([-1, 0, 1])
    # product form reproduces the coefficients
    assert np.allclose(np.poly(np.array(c2.roots)), c2.coeffs, atol=1e-10)


def test_roots_kept_in_user_order():
    roots = [1.0, -1.0, 0.5j]
    c = HyperellipticCurve.from_roots(roots)
    assert list(c.roots) == [complex(r) for r in roots]


def test_quintic_example():
    c = HyperellipticCurve.from_roots([0.0, 1.0, 2.0, 3.0, 4.0])
    assert c.genus == 2
    assert len(c.roots) == 5


def test_repeated_root_rejected():
    with pytest.raises(CurveError):
        HyperellipticCurve.from_coeffs([1, -2, 1, 0])  # x(x-1)^2
    with pytest.raises(CurveError):
        HyperellipticCurve.from_roots([0.0, 1.0, 1.0 + 1e-9])


def test_even_degree_rejected():
    with pytest.raises(CurveError):
        HyperellipticCurve.from_roots([0.0, 1.0, 2.0, 3.0])
    with pytest.raises(CurveError):
        HyperellipticCurve.from_coeffs([1, 0, 0, 0, 0, 4, 0])


def test_non_monic_rejected():
    with pytest.raises(CurveError):
        HyperellipticCurve.from_coeffs([2, 0, -1, 0])


def test_odd_model_from_even():
    # x^6 + 4x = x (x^5 + 4): six distinct roots, one moved to infinity
    roots = np.roots([1, 0, 0, 0, 0, 4, 0])
    c = odd_model_from_even(roots, index_to_infinity=0)
    assert c.genus == 2
    key = lambda z: (z.real, z.imag)
    expect = sorted((1.0 / (r - roots[0]) for r in roots[1:]), key=key)
    got = sorted(c.roots, key=key)
    assert np.allclose(got, expect)
    with pytest.raises(CurveError):
        odd_model_from_even(roots[:5])  # odd count input


def test_weierstrass_lookup():
    c = HyperellipticCurve.from_roots([-1.0, 0.0, 1.0])
    assert c.weierstrass_x(2) == 0.0
    assert c.is_branch_x(1.0)
    assert not c.is_branch_x(0.5)
    with pytest.raises(CurveError):
        c.weierstrass_x(4)
