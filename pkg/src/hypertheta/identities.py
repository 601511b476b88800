"""Residual checks for the product identities tying Jacobian Nullwerte,
Thetanullwerte, period matrices, and discriminants together.

All product comparisons run in log space on absolute values; the phase
ratio of the two sides is reported separately as `empirical_sign` (the
global signs are not determined here).  The relative residual of a
comparison is 1 - exp(-|log|lhs| - log|rhs||), which coincides with
| |lhs| - |rhs| | / max(|lhs|, |rhs|).
"""

from __future__ import annotations

import cmath
import hashlib
import itertools
import json
import math
from dataclasses import dataclass, field
from math import comb

import mpmath
import numpy as np

from .chars import (
    FundamentalSystem,
    base_index_set,
    enumerate_fundamental_systems,
    eta_of_subset,
    even_characteristics,
    odd_characteristics,
)
from .norms import norm_phi
from .periods import PeriodData
from .theta import (
    SiegelPoint,
    modular_discriminant_subsets,
    theta_gradient_null,
    theta_nullwert,
)

__all__ = [
    "IdentityReport",
    "ThetaCache",
    "check_jacobi",
    "check_rosenhain",
    "check_guardia",
    "check_guardia_all",
    "check_product_theorem",
    "check_fourth_power",
    "check_lockhart",
    "check_vanishing_structure",
    "DEFAULT_RESIDUAL_TOL",
]

DEFAULT_RESIDUAL_TOL = {1: 1e-10, 2: 1e-6, 3: 1e-4}


@dataclass(frozen=True)
class IdentityReport:
    identity_name: str
    genus: int
    relative_residual: float
    empirical_sign: complex | None
    tolerance_used: float
    inputs_digest: str
    status: str = "theorem"
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.relative_residual < self.tolerance_used

    def to_json_dict(self) -> dict:
        sign = self.empirical_sign
        return {
            "identity": self.identity_name,
            "genus": self.genus,
            "relative_residual": self.relative_residual,
            "empirical_sign": None if sign is None else [sign.real, sign.imag],
            "tolerance": self.tolerance_used,
            "passed": self.passed,
            "status": self.status,
            "inputs_digest": self.inputs_digest,
            "details": _jsonable(self.details),
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def _digest(sp: SiegelPoint, extra=None) -> str:
    payload = {
        "tau": [[repr(sp.tau[i, j]) for j in range(sp.genus)] for i in range(sp.genus)],
        "extra": extra,
    }
    blob = json.dumps(payload, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _log_residual(log_lhs: float, log_rhs: float) -> float:
    return -math.expm1(-abs(log_lhs - log_rhs))


def _phase_sign(arg_lhs: float, arg_rhs: float) -> complex:
    return cmath.exp(1j * (arg_lhs - arg_rhs))


def _log_arg(value) -> tuple[float, float]:
    """(log|value|, arg value) for a complex or mpmath value."""
    if isinstance(value, (complex, float, int)):
        a = abs(value)
        return (math.log(a) if a > 0 else -math.inf), cmath.phase(complex(value))
    return float(mpmath.log(abs(value))), float(mpmath.arg(value))


class ThetaCache:
    """All even Thetanullwerte and odd theta gradients at a fixed tau."""

    def __init__(self, sp: SiegelPoint, tol=1e-12, precision="standard", dps=30):
        self.sp = sp
        self.precision = precision
        self.dps = dps
        g = sp.genus
        self.nullwert = {
            c: theta_nullwert(c, sp, tol, precision, dps).value
            for c in even_characteristics(g)
        }
        self.gradient = {
            c: theta_gradient_null(c, sp, tol, precision, dps).value
            for c in odd_characteristics(g)
        }

    def jacobian(self, chars):
        rows = [self.gradient[c] for c in chars]
        g = self.sp.genus
        if self.precision == "extended":
            with mpmath.workdps(self.dps):
                mat = mpmath.matrix([[row[j] for j in range(g)] for row in rows])
                return mpmath.det(mat)
        return complex(np.linalg.det(np.array(rows)))


def check_jacobi(
    sp: SiegelPoint, tolerance: float | None = None, theta_tol: float = 1e-13
) -> IdentityReport:
    """Derivative formula in genus one: theta'[odd](0) vs -pi * product of
    the three even Thetanullwerte."""
    if sp.genus != 1:
        raise ValueError("Jacobi check is genus 1 only")
    tolerance = DEFAULT_RESIDUAL_TOL[1] if tolerance is None else tolerance
    odd = odd_characteristics(1)[0]
    lhs = theta_gradient_null(odd, sp, theta_tol).value[0]
    prod = 1.0 + 0.0j
    for c in even_characteristics(1):
        prod *= theta_nullwert(c, sp, theta_tol).value
    log_lhs, arg_lhs = _log_arg(lhs)
    log_rhs = math.log(math.pi) + _log_arg(prod)[0]
    arg_rhs = _log_arg(prod)[1]
    residual = _log_residual(log_lhs, log_rhs)
    sign = _phase_sign(arg_lhs, arg_rhs) if residual < tolerance else None
    return IdentityReport(
        "jacobi", 1, residual, sign, tolerance, _digest(sp),
        details={"lhs": complex(lhs), "rhs_unsigned": complex(math.pi * prod)},
    )


def check_rosenhain(
    sp: SiegelPoint,
    tolerance: float | None = None,
    theta_tol: float = 1e-12,
    precision: str = "standard",
    dps: int = 30,
) -> IdentityReport:
    """All 15 pairs of odd genus-2 characteristics:
    |J(eta_k, eta_l)| vs pi^2 prod over the other four odd m of
    |theta[eta_k + eta_l - eta_m](0)|."""
    if sp.genus != 2:
        raise ValueError("Rosenhain check is genus 2 only")
    tolerance = DEFAULT_RESIDUAL_TOL[2] if tolerance is None else tolerance
    cache = ThetaCache(sp, theta_tol, precision, dps)
    odd = odd_characteristics(2)
    worst = -1.0
    signs = {}
    per_pair = {}
    for k, l in itertools.combinations(range(6), 2):
        j_val = cache.jacobian([odd[k], odd[l]])
        log_j, arg_j = _log_arg(j_val)
        log_rhs = 2 * math.log(math.pi)
        arg_rhs = 0.0
        for m in range(6):
            if m in (k, l):
                continue
            c = odd[k] + odd[l] + odd[m]  # equals eta_k + eta_l - eta_m mod 1
            assert c.is_even()
            lg, ar = _log_arg(cache.nullwert[c])
            log_rhs += lg
            arg_rhs += ar
        residual = _log_residual(log_j, log_rhs)
        per_pair[f"{k + 1},{l + 1}"] = residual
        signs[f"{k + 1},{l + 1}"] = _phase_sign(arg_j, arg_rhs)
        worst = max(worst, residual)
    sign = None
    if worst < tolerance:
        sign = signs[max(per_pair, key=per_pair.get)]
    return IdentityReport(
        "rosenhain", 2, worst, sign, tolerance, _digest(sp),
        details={"pair_residuals": per_pair},
    )


def check_guardia(
    sp: SiegelPoint,
    fs: FundamentalSystem,
    tolerance: float | None = None,
    theta_tol: float = 1e-12,
    precision: str = "standard",
    dps: int = 30,
    cache: ThetaCache | None = None,
) -> IdentityReport:
    """Per-system identity |J(odd part)| vs pi^g prod |theta[even part](0)|.

    A theorem for g in {2, 3}; reported as conjecture evidence for g >= 4.
    """
    g = sp.genus
    if fs.genus != g:
        raise ValueError("system genus does not match tau")
    tolerance = DEFAULT_RESIDUAL_TOL.get(g, 1e-4) if tolerance is None else tolerance
    cache = cache or ThetaCache(sp, theta_tol, precision, dps)
    j_val = cache.jacobian(fs.odd_part)
    log_j, arg_j = _log_arg(j_val)
    log_rhs = g * math.log(math.pi)
    arg_rhs = 0.0
    for c in fs.even_part:
        lg, ar = _log_arg(cache.nullwert[c])
        log_rhs += lg
        arg_rhs += ar
    residual = _log_residual(log_j, log_rhs)
    sign = _phase_sign(arg_j, arg_rhs) if residual < tolerance else None
    return IdentityReport(
        "guardia",
        g,
        residual,
        sign,
        tolerance,
        _digest(sp, extra=list(fs.source_subset)),
        status="theorem" if g <= 3 else "conjecture",
        details={"source_subset": list(fs.source_subset)},
    )


def check_guardia_all(
    sp: SiegelPoint,
    tolerance: float | None = None,
    theta_tol: float = 1e-12,
    precision: str = "standard",
    dps: int = 30,
) -> IdentityReport:
    """Worst per-system residual over the whole family of fundamental systems."""
    g = sp.genus
    tolerance = DEFAULT_RESIDUAL_TOL.get(g, 1e-4) if tolerance is None else tolerance
    cache = ThetaCache(sp, theta_tol, precision, dps)
    worst, worst_subset, sign = -1.0, None, None
    for fs in enumerate_fundamental_systems(g):
        rep = check_guardia(sp, fs, tolerance, theta_tol, precision, dps, cache)
        if rep.relative_residual > worst:
            worst = rep.relative_residual
            worst_subset = fs.source_subset
            sign = rep.empirical_sign
    return IdentityReport(
        "guardia",
        g,
        worst,
        sign if worst < tolerance else None,
        tolerance,
        _digest(sp),
        status="theorem" if g <= 3 else "conjecture",
        details={"systems": comb(2 * g + 2, g), "worst_subset": list(worst_subset)},
    )


def check_product_theorem(
    sp: SiegelPoint,
    tolerance: float | None = None,
    theta_tol: float = 1e-12,
    precision: str = "standard",
    dps: int = 30,
) -> IdentityReport:
    """Product over the family of fundamental systems of the Jacobian
    Nullwerte vs pi^(g m) times the product of the subset Thetanullwerte
    to the power 2g+2, compared in log space."""
    g = sp.genus
    tolerance = DEFAULT_RESIDUAL_TOL.get(g, 1e-4) if tolerance is None else tolerance
    cache = ThetaCache(sp, theta_tol, precision, dps)
    m = comb(2 * g + 2, g)
    log_lhs, arg_lhs = 0.0, 0.0
    for fs in enumerate_fundamental_systems(g):
        lg, ar = _log_arg(cache.jacobian(fs.odd_part))
        log_lhs += lg
        arg_lhs += ar
    u = base_index_set(g)
    log_rhs = g * m * math.log(math.pi)
    arg_rhs = 0.0
    for t in modular_discriminant_subsets(g):
        c = eta_of_subset(t.symmetric_difference(u), g)
        lg, ar = _log_arg(cache.nullwert[c])
        log_rhs += (2 * g + 2) * lg
        arg_rhs += (2 * g + 2) * ar
    residual = _log_residual(log_lhs, log_rhs)
    sign = _phase_sign(arg_lhs, arg_rhs) if residual < tolerance else None
    return IdentityReport(
        "product", g, residual, sign, tolerance, _digest(sp),
        details={
            "m": m,
            "subset_count": len(modular_discriminant_subsets(g)),
            "log_lhs": log_lhs,
            "log_rhs": log_rhs,
        },
    )


def check_fourth_power(
    pd: PeriodData,
    tolerance: float | None = None,
    theta_tol: float = 1e-12,
    precision: str = "standard",
    dps: int = 30,
) -> IdentityReport:
    """prod over g-subsets of ||J||^4 vs pi^(4 g m) ||phi_g||^(g+1), in logs."""
    g = pd.genus
    sp = pd.tau
    tolerance = DEFAULT_RESIDUAL_TOL.get(g, 1e-4) if tolerance is None else tolerance
    cache = ThetaCache(sp, theta_tol, precision, dps)
    m = comb(2 * g + 2, g)
    log_det_pow = (g + 2) / 4.0 * sp.log_det_im()
    log_lhs = 0.0
    for fs in enumerate_fundamental_systems(g):
        log_lhs += 4.0 * (_log_arg(cache.jacobian(fs.odd_part))[0] + log_det_pow)
    npv = norm_phi(pd, theta_tol, precision, dps)
    log_rhs = 4 * g * m * math.log(math.pi) + (g + 1) * npv.log_value
    residual = _log_residual(log_lhs, log_rhs)
    return IdentityReport(
        "fourthpower", g, residual, None if residual >= tolerance else 1.0 + 0j,
        tolerance, _digest(sp),
        details={"log_lhs": log_lhs, "log_rhs": log_rhs, "m": m},
    )


def check_lockhart(
    pd: PeriodData,
    tolerance: float | None = None,
    theta_tol: float = 1e-12,
    precision: str = "standard",
    dps: int = 30,
) -> IdentityReport:
    """|D|^n vs pi^(4 g r) |det mu|^(-4 r) |phi_g(tau)| in log space, with
    n = C(2g, g+1) and r = C(2g+1, g+1); ties the discriminant, the period
    normalization, and the theta side together."""
    g = pd.genus
    tolerance = {1: 1e-8, 2: 1e-5, 3: 1e-4}.get(g, 1e-4) if tolerance is None else tolerance
    n = comb(2 * g, g + 1)
    r = comb(2 * g + 1, g + 1)
    d_val = pd.curve.discriminant()
    from .norms import log_abs_modular_discriminant

    log_lhs = n * math.log(abs(d_val))
    log_rhs = (
        4 * g * r * math.log(math.pi)
        - 4 * r * math.log(abs(pd.det_mu))
        + log_abs_modular_discriminant(g, pd.tau, theta_tol, precision, dps)
    )
    residual = _log_residual(log_lhs, log_rhs)
    return IdentityReport(
        "lockhart", g, residual, None if residual >= tolerance else 1.0 + 0j,
        tolerance, _digest(pd.tau, extra={"n": n, "r": r}),
        details={"n": n, "r": r, "log_lhs": log_lhs, "log_rhs": log_rhs,
                 "abs_discriminant": abs(d_val)},
    )


def check_vanishing_structure(
    sp: SiegelPoint,
    tolerance: float = 0.5,
    theta_tol: float = 1e-12,
    vanish_ratio: float = 1e-6,
    precision: str = "standard",
    dps: int = 30,
) -> IdentityReport:
    """Census of even Thetanullwerte at a hyperelliptic period matrix.

    For g = 3 exactly one of the 36 even values vanishes and the
    non-vanishing ones are exactly the subset characteristics; for g = 2
    none of the 10 vanish.  The report's residual is 0 when the census
    matches and 1 otherwise.
    """
    g = sp.genus
    values = {
        c: abs(complex(theta_nullwert(c, sp, theta_tol, precision, dps).value))
        for c in even_characteristics(g)
    }
    median = float(np.median(list(values.values())))
    vanishing = {c for c, v in values.items() if v < vanish_ratio * median}
    u = base_index_set(g)
    subset_chars = {
        eta_of_subset(t.symmetric_difference(u), g)
        for t in modular_discriminant_subsets(g)
    }
    expected_vanishing = {1: 0, 2: 0, 3: 1}.get(g)
    ok = (
        expected_vanishing is not None
        and len(vanishing) == expected_vanishing
        and not (vanishing & subset_chars)
        and all(values[c] >= vanish_ratio * median for c in subset_chars)
    )
    return IdentityReport(
        "vanishing", g, 0.0 if ok else 1.0, None, tolerance, _digest(sp),
        details={
            "even_count": len(values),
            "near_zero_count": len(vanishing),
            "expected_near_zero": expected_vanishing,
            "subset_char_count": len(subset_chars),
            "min_over_median": min(values.values()) / median,
        },
    )
