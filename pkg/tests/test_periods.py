import math

import mpmath
import numpy as np
import pytest

from hypertheta.chars import base_index_set, eta_of_subset, generator_char
from hypertheta.corpus import corpus_curves, j_zero_curve, lemniscatic_curve, quintic_04_curve
from hypertheta.curves import HyperellipticCurve
from hypertheta.periods import (
    PathError,
    abel_jacobi_divisor,
    abel_jacobi_point,
    half_period_point,
    j_invariant,
    lattice_distance,
    lattice_reduce,
    period_matrix,
    weierstrass_dictionary_residuals,
)


@pytest.fixture(scope="module")
def pd_lemniscatic():
    return period_matrix(lemniscatic_curve())


@pytest.fixture(scope="module")
def pd_quintic():
    return period_matrix(quintic_04_curve())


def test_j_invariant_1728(pd_lemniscatic):
    assert abs(j_invariant(pd_lemniscatic.tau) - 1728) < 1e-8


def test_j_invariant_zero():
    pd = period_matrix(j_zero_curve())
    assert abs(j_invariant(pd.tau)) < 1e-8


def test_j_invariant_against_cross_ratio_oracle():
    # algebraic oracle: the Legendre parameter of y^2 = (x-e1)(x-e2)(x-e3)
    # is the root cross-ratio, and j is a rational function of it; this
    # binds curve -> periods -> theta -> j against pure algebra
    def j_oracle(e1, e2, e3):
        lam = (e2 - e1) / (e3 - e1)
        return 256 * (lam * lam - lam + 1) ** 3 / (lam * (1 - lam)) ** 2

    for curve in corpus_curves(1, 6):
        jt = j_invariant(period_matrix(curve).tau)
        ja = j_oracle(*curve.roots)
        assert abs(jt - ja) < 1e-9 * max(1.0, abs(ja))


def test_a_period_against_agm_oracle():
    # real ordered cubic: the A-period of dx/(2y) is pi / AGM(sqrt(e3-e1), sqrt(e3-e2))
    for roots in ([-1.0, 0.0, 1.0], [-1.3, 0.2, 0.9]):
        pd = period_matrix(HyperellipticCurve.from_roots(roots))
        e1, e2, e3 = roots
        oracle = math.pi / float(mpmath.agm(math.sqrt(e3 - e1), math.sqrt(e3 - e2)))
        assert abs(abs(pd.mu[0, 0]) - oracle) < 1e-10 * oracle


@pytest.mark.parametrize("genus", [1, 2, 3])
def test_tau_is_siegel_on_random_family(genus):
    rng = np.random.default_rng(60 + genus)
    produced = 0
    while produced < 20:
        n = 2 * genus + 1
        roots = rng.uniform(0.5, 2.0, n) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
        roots = sorted(roots, key=lambda z: z.real)
        sep = min(abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1 :])
        if sep < 0.2:
            continue
        try:
            pd = period_matrix(HyperellipticCurve.from_roots(roots))
        except Exception:
            continue  # rare awkward geometry; the family only needs 20 members
        produced += 1
        assert pd.tau.symmetry_defect < 1e-8
        assert np.all(np.linalg.eigvalsh(pd.tau.im) > 0)


def test_node_doubling_convergence_certificate(pd_quintic):
    pd_tight = period_matrix(quintic_04_curve(), tol=1e-12)
    assert np.max(np.abs(pd_quintic.mu - pd_tight.mu)) < 1e-10
    assert np.max(np.abs(pd_quintic.mu_prime - pd_tight.mu_prime)) < 1e-10


def test_dictionary_all_classes_g2(pd_quintic):
    res = weierstrass_dictionary_residuals(pd_quintic)
    type_i = [k for k in res if not k[1]]
    type_ii = [k for k in res if k[1]]
    assert len(type_i) == 6 and len(type_ii) == 20
    assert max(res.values()) < 1e-6


@pytest.mark.parametrize("idx", range(3))
def test_dictionary_on_corpus_curves(idx):
    pd = period_matrix(corpus_curves(2)[idx])
    assert max(weierstrass_dictionary_residuals(pd).values()) < 1e-6


def test_dictionary_g1_kappa_is_odd_half_period(pd_lemniscatic):
    # the empty divisor maps to kappa, which must be the odd half period
    eta_u = eta_of_subset(base_index_set(1), 1)
    assert eta_u.is_odd()
    target = half_period_point(eta_u, pd_lemniscatic.tau)
    assert lattice_distance(pd_lemniscatic.kappa, target, pd_lemniscatic.tau) < 1e-10


def test_branch_points_land_on_generator_half_periods(pd_quintic):
    # phi(W_k) is the half period of the k-th generator characteristic
    for k in range(1, 6):
        target = half_period_point(generator_char(2, k), pd_quintic.tau)
        d = lattice_distance(pd_quintic.aj_weierstrass[k - 1], target, pd_quintic.tau)
        assert d < 1e-8, k


def test_half_periods_doubled_are_periods(pd_quintic):
    for k in range(6):
        z = 2.0 * pd_quintic.aj_weierstrass[k]
        red, _, _ = lattice_reduce(z, pd_quintic.tau)
        assert np.linalg.norm(red) < 1e-8


def test_abel_jacobi_divisor_examples(pd_quintic):
    sp = pd_quintic.tau
    u_set = base_index_set(2)
    # single Weierstrass point. T = {1}
    u1 = abel_jacobi_divisor(pd_quintic, [(("W", 1), 1)])
    t1 = half_period_point(eta_of_subset(u_set.symmetric_difference({1}), 2), sp)
    assert lattice_distance(u1.z, t1, sp) < 1e-6
    # W1 + W2 - W3, T = {1, 2, 3}
    u2 = abel_jacobi_divisor(pd_quintic, [(("W", 1), 1), (("W", 2), 1), (("W", 3), -1)])
    t2 = half_period_point(eta_of_subset(u_set.symmetric_difference({1, 2, 3}), 2), sp)
    assert lattice_distance(u2.z, t2, sp) < 1e-6
    # complement equivalence: W1+W2-W3 ~ W4+W5-W6
    u3 = abel_jacobi_divisor(pd_quintic, [(("W", 4), 1), (("W", 5), 1), (("W", 6), -1)])
    assert lattice_distance(u2.z, u3.z, sp) < 1e-6


def test_abel_jacobi_divisor_degree_check(pd_quintic):
    with pytest.raises(ValueError):
        abel_jacobi_divisor(pd_quintic, [(("W", 1), 1), (("W", 2), 1)])
    with pytest.raises(ValueError):
        abel_jacobi_divisor(pd_quintic, [(("W", 9), 1)])


def test_abel_jacobi_point_involution(pd_quintic):
    curve = pd_quintic.curve
    x0 = 2.3 + 1.1j
    y0 = complex(np.sqrt(complex(curve.f(x0))))
    p_plus = abel_jacobi_point(pd_quintic, x0, y=y0)
    p_minus = abel_jacobi_point(pd_quintic, x0, y=-y0)
    assert lattice_distance(p_plus, -p_minus, pd_quintic.tau) < 1e-7


def test_abel_jacobi_point_validation(pd_quintic):
    with pytest.raises(ValueError):
        abel_jacobi_point(pd_quintic, 2.5, y=1.0)  # not on the curve
    with pytest.raises(ValueError):
        abel_jacobi_point(pd_quintic, 2.5, sheet=2)


def test_abel_jacobi_point_at_branch_point(pd_quintic):
    got = abel_jacobi_point(pd_quintic, 3.0, sheet=0)
    assert np.allclose(got, pd_quintic.aj_weierstrass[3])


def test_reduce_is_idempotent(pd_quintic):
    z = np.array([1.7 - 0.4j, -2.2 + 0.9j])
    red, m, n = lattice_reduce(z, pd_quintic.tau)
    red2, m2, n2 = lattice_reduce(red, pd_quintic.tau)
    assert np.allclose(red, red2)
    assert not np.any(m2) and not np.any(n2)


def test_reordering_gives_sp_equivalent_tau():
    # theta-level invariants agree across orderings; here just check both
    # orderings produce valid self-certified frames of the same curve
    from hypertheta.corpus import reordered

    base, alt, perm = reordered(2, 1)
    pd1 = period_matrix(base)
    pd2 = period_matrix(alt)
    assert pd1.path_log["dictionary_worst_residual"] < 1e-8
    assert pd2.path_log["dictionary_worst_residual"] < 1e-8
    key = lambda z: (z.real, z.imag)
    assert sorted(np.round(np.array(base.roots), 12).tolist(), key=key) == sorted(
        np.round(np.array(alt.roots), 12).tolist(), key=key
    )


def test_odd_model_runs_through_pipeline():
    from hypertheta.curves import odd_model_from_even

    roots = np.roots([1, 0, 0, 0, 0, 4, 0])  # x^6 + 4x
    moved = odd_model_from_even(roots, index_to_infinity=1)
    # re-sort by real part: the chain construction wants a simple polyline
    curve = HyperellipticCurve.from_roots(
        sorted(moved.roots, key=lambda z: (z.real, z.imag))
    )
    pd = period_matrix(curve)
    assert pd.path_log["dictionary_worst_residual"] < 1e-6


def test_root_on_chain_segment_raises_cleanly():
    from hypertheta.curves import odd_model_from_even
    from hypertheta.periods import BasisCalibrationError

    # sending the zero root of x^6 + 4x to infinity leaves two conjugate
    # pairs with identical real parts: real-part order then routes a chain
    # segment exactly through an interior root, which must error, not
    # silently produce a wrong basis
    roots = np.roots([1, 0, 0, 0, 0, 4, 0])
    moved = odd_model_from_even(roots, index_to_infinity=0)
    curve = HyperellipticCurve.from_roots(
        sorted(moved.roots, key=lambda z: (z.real, z.imag))
    )
    with pytest.raises((BasisCalibrationError, PathError)):
        period_matrix(curve)


def test_j_invariant_needs_genus_one(pd_quintic):
    with pytest.raises(ValueError):
        j_invariant(pd_quintic.tau)
