"""Theta-based norms: Faltings-normalized ||theta||, the modified Green
function, Petersson norms of the modular discriminant, and normalized
Jacobian Nullwerte.

Every quantity is assembled in log space; a NormedValue carries the named
log-space factors so the assembly can be audited (the factors must sum to
the log of the value).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import comb

import mpmath
import numpy as np

from .chars import base_index_set, eta_of_subset, fundamental_system_from_subset
from .curves import CurveError
from .periods import PeriodData, abel_jacobi_point, lattice_reduce
from .theta import SiegelPoint, jacobian_nullwert, theta, theta_nullwert

__all__ = [
    "NormedValue",
    "norm_theta",
    "green_prime",
    "norm_j",
    "norm_phi",
    "norm_delta",
    "lemma_formula_phi",
    "log_abs_modular_discriminant",
    "WEIERSTRASS_WEIGHT",
]


def WEIERSTRASS_WEIGHT(g: int) -> int:
    """Classical weight of a hyperelliptic Weierstrass point, g(g-1)/2."""
    return g * (g - 1) // 2


@dataclass(frozen=True)
class NormedValue:
    """Nonnegative real with a log-space audit trail.

    `components` maps factor names to their logarithms; their sum is
    log(value) up to rounding.  Keeping the audit in log space avoids the
    overflow that raw factors like (det Im tau)^2r or 2^-48 would hit.
    """

    value: float
    log_value: float
    components: dict = field(default_factory=dict)

    def audit_defect(self) -> float:
        return abs(sum(self.components.values()) - self.log_value)

    @classmethod
    def from_components(cls, components: dict) -> "NormedValue":
        log_value = math.fsum(components.values())
        return cls(_safe_exp(log_value), log_value, dict(components))


def _safe_exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _log_abs(value) -> float:
    if isinstance(value, (complex, float, int)):
        a = abs(value)
        return math.log(a) if a > 0 else -math.inf
    return float(mpmath.log(abs(value)))


def norm_theta(
    z, pd_or_sp, tol: float = 1e-12, precision: str = "standard", dps: int = 30
) -> NormedValue:
    """Faltings-normalized theta:
    (det Im tau)^(1/4) exp(-pi y' (Im tau)^-1 y) |theta(z; tau)|, y = Im z.

    Invariant under the full period lattice, unlike |theta| itself; the
    evaluation reduces z first, which realizes that invariance exactly.
    """
    sp = pd_or_sp.tau if isinstance(pd_or_sp, PeriodData) else pd_or_sp
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    z_red, _, _ = lattice_reduce(z, sp)
    y = z_red.imag
    exp_term = -math.pi * float(y @ np.linalg.solve(sp.im, y))
    from .chars import ThetaCharacteristic

    tv = theta(ThetaCharacteristic.zero(sp.genus), z_red, sp, tol, precision, dps)
    components = {
        "det_im_quarter": 0.25 * sp.log_det_im(),
        "gaussian_factor": exp_term,
        "abs_theta": _log_abs(tv.value),
    }
    return NormedValue.from_components(components)


def green_prime(pd: PeriodData, p_point, q_point, tol: float = 1e-12) -> float:
    """Modified Arakelov-Green function between curve points.

    G'(P, Q)^g = ||theta||(gP - Q) / prod_W ||theta||(gP - W)^(w/g^3)
    with the product over all 2g+2 Weierstrass points, each carrying the
    classical weight w = g(g-1)/2.  P must not be a Weierstrass point.
    """
    curve = pd.curve
    g = pd.genus
    xp, yp = p_point
    if curve.is_branch_x(xp):
        raise CurveError("G' needs a non-Weierstrass first argument")
    phi_p = abel_jacobi_point(pd, xp, y=yp, tol=tol)
    xq, yq = q_point
    phi_q = abel_jacobi_point(pd, xq, y=yq, tol=tol)
    num = norm_theta(g * phi_p - phi_q + pd.kappa, pd.tau, tol)
    w = WEIERSTRASS_WEIGHT(g)
    denom_log = 0.0
    for k in range(2 * g + 2):
        nv = norm_theta(g * phi_p - pd.aj_weierstrass[k] + pd.kappa, pd.tau, tol)
        denom_log += nv.log_value
    log_gp = (num.log_value - (w / g**3) * denom_log) / g
    return _safe_exp(log_gp)


def norm_j(pd: PeriodData, subset, tol: float = 1e-12, precision: str = "standard", dps: int = 30) -> NormedValue:
    """(det Im tau)^((g+2)/4) |J| for the odd characteristics attached to a
    g-subset of Weierstrass indices."""
    g = pd.genus
    fs = fundamental_system_from_subset(subset, g)
    jv = jacobian_nullwert(fs.odd_part, pd.tau, tol, precision, dps)
    components = {
        "det_im_power": (g + 2) / 4.0 * pd.tau.log_det_im(),
        "abs_jacobian": _log_abs(jv.value),
    }
    return NormedValue.from_components(components)


def log_abs_modular_discriminant(
    genus: int, sp: SiegelPoint, tol: float = 1e-12, precision: str = "standard", dps: int = 30
) -> float:
    """log |phi_g(tau)| accumulated factor by factor."""
    from .theta import modular_discriminant_subsets

    u = base_index_set(genus)
    total = 0.0
    for t in modular_discriminant_subsets(genus):
        c = eta_of_subset(t.symmetric_difference(u), genus)
        tv = theta_nullwert(c, sp, tol, precision, dps)
        total += 8.0 * _log_abs(tv.value)
    return total


def norm_phi(pd: PeriodData, tol: float = 1e-12, precision: str = "standard", dps: int = 30) -> NormedValue:
    """Petersson norm (det Im tau)^(2r) |phi_g(tau)|, r = C(2g+1, g+1)."""
    g = pd.genus
    r = comb(2 * g + 1, g + 1)
    components = {
        "det_im_power": 2.0 * r * pd.tau.log_det_im(),
        "abs_phi": log_abs_modular_discriminant(g, pd.tau, tol, precision, dps),
    }
    return NormedValue.from_components(components)


def norm_delta(pd: PeriodData, tol: float = 1e-12, precision: str = "standard", dps: int = 30) -> NormedValue:
    """2^(-(4g+4)n) times the Petersson norm of phi_g, n = C(2g, g+1)."""
    g = pd.genus
    n = comb(2 * g, g + 1)
    base = norm_phi(pd, tol, precision, dps)
    components = dict(base.components)
    components["two_power"] = -(4 * g + 4) * n * math.log(2.0)
    return NormedValue.from_components(components)


def lemma_formula_phi(
    pd: PeriodData, tol: float = 1e-12, precision: str = "standard", dps: int = 30
) -> dict:
    """Reconcile the Petersson norm of phi_g against the product of
    normalized theta values over the C(2g+2, g+1) Weierstrass divisor
    classes W_{i_1} + ... + W_{i_g} - W_{i_{g+1}}.

    Returns the relative residual together with both log values and the
    individual factors.
    """
    import itertools

    g = pd.genus
    log_prod = 0.0
    factors = {}
    for t in itertools.combinations(range(1, 2 * g + 3), g + 1):
        z = pd.kappa.astype(complex).copy()
        for i in t[:-1]:
            z = z + pd.aj_weierstrass[i - 1]
        z = z - pd.aj_weierstrass[t[-1] - 1]
        nv = norm_theta(z, pd.tau, tol, precision, dps)
        factors[t] = nv.log_value
        log_prod += 4.0 * nv.log_value
    log_phi = norm_phi(pd, tol, precision, dps).log_value
    residual = -math.expm1(-abs(log_prod - log_phi))
    return {
        "relative_residual": residual,
        "log_norm_phi": log_phi,
        "log_theta_product": log_prod,
        "factor_count": len(factors),
        "factors": factors,
    }
