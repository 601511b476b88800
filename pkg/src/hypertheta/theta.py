"""Riemann theta functions with half-integer characteristics.

The series

    theta[eta](z; tau) = sum_n exp(pi i (n+a)' tau (n+a) + 2 pi i (n+a)'(z+b))

with a = top row, b = bottom row, is truncated over the lattice points
inside an ellipsoid ||L'(n + a - c)|| <= R, where L is the Cholesky factor
of Im tau and c recenters the sum for the imaginary part of z.  R is chosen
from a Gaussian tail bound so the omitted mass is certified below the
requested tolerance; the bound itself is returned with every value.

Two precision modes: "standard" is float64 with exact (fsum) accumulation,
"extended" re-sums the same lattice points with mpmath arbitrary precision
for headroom in long products.  Evaluations are pure functions of immutable
inputs with a fixed lattice ordering, so results are deterministic for a
given (input, tol, precision) triple and safe to compute concurrently.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import comb

import mpmath
import numpy as np
from scipy.special import gammaincc
from scipy.special import gamma as _gamma

from .chars import ThetaCharacteristic, base_index_set, eta_of_subset

__all__ = [
    "SiegelError",
    "LatticeBudgetError",
    "SiegelPoint",
    "ThetaValue",
    "ThetaGradient",
    "theta",
    "theta_nullwert",
    "theta_gradient_null",
    "jacobian_nullwert",
    "modular_discriminant",
    "modular_discriminant_subsets",
    "DEFAULT_LATTICE_BUDGET",
]

DEFAULT_LATTICE_BUDGET = 10_000_000


class SiegelError(ValueError):
    """Matrix is not a valid point of the Siegel upper half-space."""


class LatticeBudgetError(RuntimeError):
    """Requested tolerance needs more lattice points than the budget allows."""


@dataclass(frozen=True)
class SiegelPoint:
    """Symmetric complex g x g matrix with positive definite imaginary part."""

    genus: int
    tau: np.ndarray
    cholesky_im: np.ndarray
    symmetry_defect: float

    @classmethod
    def from_matrix(cls, mat, tol: float = 1e-8) -> "SiegelPoint":
        tau = np.atleast_2d(np.asarray(mat, dtype=complex))
        if tau.shape[0] != tau.shape[1]:
            raise SiegelError(f"tau must be square, got shape {tau.shape}")
        g = tau.shape[0]
        defect = float(np.max(np.abs(tau - tau.T))) if g > 1 else 0.0
        if defect > tol:
            raise SiegelError(f"symmetry defect {defect:.3e} exceeds tolerance {tol:.3e}")
        # only the symmetric part enters the quadratic form; symmetrize exactly
        tau = 0.5 * (tau + tau.T)
        try:
            chol = np.linalg.cholesky(tau.imag)
        except np.linalg.LinAlgError as exc:
            raise SiegelError("Im tau is not positive definite") from exc
        if np.any(np.diag(chol) <= 0):
            raise SiegelError("Im tau is not positive definite")
        tau.setflags(write=False)
        chol.setflags(write=False)
        return cls(g, tau, chol, defect)

    @property
    def im(self) -> np.ndarray:
        return self.tau.imag

    def log_det_im(self) -> float:
        return 2.0 * float(np.sum(np.log(np.diag(self.cholesky_im))))


@dataclass(frozen=True)
class ThetaValue:
    value: complex
    truncation_bound: float
    lattice_radius: float


@dataclass(frozen=True)
class ThetaGradient:
    value: np.ndarray
    truncation_bound: float
    lattice_radius: float
    even_input: bool = False


def _gauss_tail_moment(j: int, a: float) -> float:
    """Integral of u^j exp(-pi u^2) over [a, inf), a >= 0."""
    s = 0.5 * (j + 1)
    return float(gammaincc(s, math.pi * a * a) * _gamma(s)) / (2.0 * math.pi**s)


def _tail_bound(radius: float, g: int, rho: float, poly) -> float:
    """Certified bound on sum over lattice points outside the ellipsoid.

    Bounds sum_{||v|| > R} P(||v||) exp(-pi ||v||^2) over a lattice with
    minimal vector length rho, by covering the excluded points with
    disjoint balls of radius rho/2.  `poly` is the coefficient list of P
    in the shifted variable: term t_j multiplies (u + rho/2)^{g-1} u^j
    after the covering substitution has already been applied by the
    caller (see _value_poly / _gradient_poly).
    """
    a = radius - rho
    if a < 0:
        raise ValueError("truncation radius below lattice packing radius")
    # expand (u + rho/2)^(g-1) * poly(u) into monomials of u
    base = [0.0] * g
    for i in range(g):
        base[i] = comb(g - 1, i) * (rho / 2.0) ** (g - 1 - i)
    coeffs = [0.0] * (g + len(poly) - 1)
    for i, bi in enumerate(base):
        for j, pj in enumerate(poly):
            coeffs[i + j] += bi * pj
    integral = sum(cj * _gauss_tail_moment(j, a) for j, cj in enumerate(coeffs) if cj)
    return g * (2.0 / rho) ** g * integral


def _value_poly(rho):
    return [1.0]


def _gradient_poly(rho, sigma, mu0):
    # each omitted gradient term carries an extra factor 2 pi ||m|| with
    # ||m|| <= sigma (u + rho) + mu0 for points covered at radius u
    return [2.0 * math.pi * (sigma * rho + mu0), 2.0 * math.pi * sigma]


class _Lattice:
    """Ellipsoid lattice point selection shared by value and gradient sums."""

    def __init__(self, sp: SiegelPoint, shift, center, budget: int):
        self.sp = sp
        self.shift = np.asarray(shift, dtype=float)
        self.center = np.asarray(center, dtype=float)
        self.budget = budget
        y = sp.im
        self.y = y
        self.yinv = np.linalg.inv(y)
        evals = np.linalg.eigvalsh(y)
        self.rho = math.sqrt(max(evals[0], 0.0))
        if self.rho <= 0:
            raise SiegelError("Im tau is numerically singular")
        self.sigma = 1.0 / math.sqrt(evals[0])  # ||(L')^{-1}||_2

    def points(self, radius: float) -> np.ndarray:
        g = self.sp.genus
        half_width = radius * np.sqrt(np.diag(self.yinv))
        lo = np.ceil(self.center - self.shift - half_width).astype(int)
        hi = np.floor(self.center - self.shift + half_width).astype(int)
        count = np.prod((hi - lo + 1).astype(float))
        if count > self.budget:
            raise LatticeBudgetError(
                f"lattice box of {count:.3g} points exceeds budget {self.budget}"
            )
        grids = [np.arange(l, h + 1) for l, h in zip(lo, hi)]
        n = np.stack(np.meshgrid(*grids, indexing="ij"), axis=-1).reshape(-1, g)
        x = n + self.shift - self.center
        q = np.einsum("ni,ij,nj->n", x, self.y, x)
        pts = n[q <= radius * radius]
        if len(pts) > self.budget:
            raise LatticeBudgetError(
                f"{len(pts)} lattice points exceed budget {self.budget}"
            )
        # fixed (lexicographic) ordering keeps accumulation deterministic
        order = np.lexsort(pts.T[::-1])
        return pts[order]

    def choose_radius(self, tol: float, poly_fn, prefactor: float) -> tuple[float, float]:
        radius = self.rho + 1.0
        for _ in range(10_000):
            bound = prefactor * _tail_bound(radius, self.sp.genus, self.rho, poly_fn(self.rho))
            if bound <= tol:
                return radius, bound
            radius += 0.25
        raise LatticeBudgetError("radius search did not converge")


def _mp_term_sum(points, shift, tau, zb, dps, want_gradient):
    """mpmath re-summation of the lattice terms (and gradient terms)."""
    g = points.shape[1]
    with mpmath.workdps(dps):
        tau_mp = [[mpmath.mpc(tau[i, j]) for j in range(g)] for i in range(g)]
        zb_mp = [mpmath.mpc(v) for v in zb]
        shift_mp = [mpmath.mpf(s) for s in shift]
        terms = []
        grad_terms = [[] for _ in range(g)]
        for n in points:
            m = [shift_mp[i] + int(n[i]) for i in range(g)]
            quad = mpmath.mpf(0)
            for i in range(g):
                quad += tau_mp[i][i] * m[i] * m[i]
                for j in range(i + 1, g):
                    quad += 2 * tau_mp[i][j] * m[i] * m[j]
            lin = mpmath.fsum(mi * zi for mi, zi in zip(m, zb_mp))
            term = mpmath.expjpi(quad + 2 * lin)
            terms.append(term)
            if want_gradient:
                two_pi_j = 2j * mpmath.pi
                for i in range(g):
                    grad_terms[i].append(two_pi_j * m[i] * term)
        total = mpmath.fsum(terms)
        grad = [mpmath.fsum(gt) for gt in grad_terms] if want_gradient else None
    return total, grad


def _sum_terms(points, shift, tau, zb, precision, dps, want_gradient=False):
    if precision == "extended":
        return _mp_term_sum(points, shift, tau, zb, dps, want_gradient)
    m = points + shift
    quad = np.einsum("ni,ij,nj->n", m, tau, m)
    lin = m @ zb
    terms = np.exp(1j * math.pi * quad + 2j * math.pi * lin)
    total = complex(math.fsum(terms.real), math.fsum(terms.imag))
    grad = None
    if want_gradient:
        grad = []
        for i in range(points.shape[1]):
            gt = 2j * math.pi * m[:, i] * terms
            grad.append(complex(math.fsum(gt.real), math.fsum(gt.imag)))
    return total, grad


def _check_precision(precision: str):
    if precision not in ("standard", "extended"):
        raise ValueError(f"unknown precision mode {precision!r}")


def _reduce_argument(z, sp: SiegelPoint):
    """Split z = z_red + tau n0 + m0 with n0, m0 integer vectors.

    Returns (z_red, n0, m0).  The quasi-periodicity factor relating
    theta(z) to theta(z_red) is assembled by the caller.
    """
    y = np.linalg.solve(sp.im, z.imag)
    n0 = np.rint(y).astype(int)
    z1 = z - sp.tau @ n0
    m0 = np.rint(z1.real).astype(int)
    return z1 - m0, n0, m0


def theta(
    char: ThetaCharacteristic,
    z,
    sp: SiegelPoint,
    tol: float = 1e-12,
    precision: str = "standard",
    dps: int = 30,
    budget: int = DEFAULT_LATTICE_BUDGET,
) -> ThetaValue:
    """Evaluate theta[char](z; tau) with a certified truncation bound."""
    _check_precision(precision)
    if tol <= 0:
        raise ValueError("tol must be positive")
    g = sp.genus
    if char.genus != g:
        raise ValueError("characteristic genus does not match tau")
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if z.shape != (g,):
        raise ValueError(f"z must have length {g}")
    a = np.array(char.top)
    b = np.array(char.bottom)

    z_red, n0, m0 = _reduce_argument(z, sp)
    # theta(z) = s * exp(-pi i n0' tau n0 - 2 pi i n0'(z_red + b)) * theta(z_red)
    # with s = exp(2 pi i a' m0) = +-1 exactly.
    sign = -1.0 if int(np.dot(2 * a, m0).round()) % 2 else 1.0
    log_factor = -1j * math.pi * (n0 @ sp.tau @ n0) - 2j * math.pi * (n0 @ (z_red + b))

    yv = z_red.imag
    center = -np.linalg.solve(sp.im, yv)
    prefactor = math.exp(math.pi * float(yv @ np.linalg.solve(sp.im, yv)))
    lattice = _Lattice(sp, a, center, budget)
    radius, bound = lattice.choose_radius(tol, _value_poly, prefactor)
    pts = lattice.points(radius)
    total, _ = _sum_terms(pts, a, sp.tau, z_red + b, precision, dps)

    scale = complex(sign) * np.exp(log_factor)
    if precision == "extended":
        with mpmath.workdps(dps):
            scale_mp = mpmath.mpc(sign) * mpmath.exp(mpmath.mpc(log_factor))
            value = scale_mp * total
        return ThetaValue(value, abs(scale) * bound, radius)
    return ThetaValue(scale * total, abs(scale) * bound, radius)


def theta_nullwert(
    char: ThetaCharacteristic,
    sp: SiegelPoint,
    tol: float = 1e-12,
    precision: str = "standard",
    dps: int = 30,
    budget: int = DEFAULT_LATTICE_BUDGET,
) -> ThetaValue:
    return theta(char, np.zeros(sp.genus), sp, tol, precision, dps, budget)


def theta_gradient_null(
    char: ThetaCharacteristic,
    sp: SiegelPoint,
    tol: float = 1e-12,
    precision: str = "standard",
    dps: int = 30,
    budget: int = DEFAULT_LATTICE_BUDGET,
) -> ThetaGradient:
    """z-gradient of theta[char] at z = 0 (term-differentiated series).

    For an even characteristic the gradient vanishes identically; the zero
    vector is returned with the even_input flag set.
    """
    _check_precision(precision)
    if tol <= 0:
        raise ValueError("tol must be positive")
    g = sp.genus
    if char.genus != g:
        raise ValueError("characteristic genus does not match tau")
    if char.is_even():
        return ThetaGradient(np.zeros(g, dtype=complex), 0.0, 0.0, even_input=True)
    a = np.array(char.top)
    b = np.array(char.bottom)
    lattice = _Lattice(sp, a, np.zeros(g), budget)
    mu0 = float(np.linalg.norm(a))
    poly = lambda rho: _gradient_poly(rho, lattice.sigma, mu0)
    radius, bound = lattice.choose_radius(tol, poly, 1.0)
    pts = lattice.points(radius)
    _, grad = _sum_terms(pts, a, sp.tau, b.astype(complex), precision, dps, want_gradient=True)
    if precision == "extended":
        vec = np.array(grad, dtype=object)
    else:
        vec = np.array(grad, dtype=complex)
    return ThetaGradient(vec, bound, radius)


def jacobian_nullwert(
    chars,
    sp: SiegelPoint,
    tol: float = 1e-12,
    precision: str = "standard",
    dps: int = 30,
    budget: int = DEFAULT_LATTICE_BUDGET,
) -> ThetaValue:
    """Determinant of the matrix of theta gradients at 0, rows in given order."""
    chars = list(chars)
    g = sp.genus
    if len(chars) != g:
        raise ValueError(f"need exactly {g} characteristics, got {len(chars)}")
    for c in chars:
        if not c.is_odd():
            raise ValueError(f"characteristic {c.text()} is not odd")
    grads = [
        theta_gradient_null(c, sp, tol, precision, dps, budget) for c in chars
    ]
    rows = [gr.value for gr in grads]
    if precision == "extended":
        with mpmath.workdps(dps):
            mat = mpmath.matrix([[row[j] for j in range(g)] for row in rows])
            value = mpmath.det(mat)
        norms = [float(mpmath.norm(mpmath.matrix([row[j] for j in range(g)]))) for row in rows]
    else:
        mat = np.array(rows)
        value = complex(np.linalg.det(mat))
        norms = [float(np.linalg.norm(row)) for row in rows]
    # |det(A+E) - det(A)| <= prod(|a_i| + |e_i|) - prod |a_i| (Hadamard)
    errs = [math.sqrt(g) * gr.truncation_bound for gr in grads]
    bound = math.prod(n + e for n, e in zip(norms, errs)) - math.prod(norms)
    radius = max(gr.lattice_radius for gr in grads)
    return ThetaValue(value, bound, radius)


def modular_discriminant_subsets(genus: int) -> list[frozenset[int]]:
    """The (g+1)-subsets T of {1, ..., 2g+1} indexing the discriminant factors."""
    return [
        frozenset(t)
        for t in itertools.combinations(range(1, 2 * genus + 2), genus + 1)
    ]


def modular_discriminant(
    genus: int,
    sp: SiegelPoint,
    tol: float = 1e-12,
    precision: str = "standard",
    dps: int = 30,
    budget: int = DEFAULT_LATTICE_BUDGET,
) -> ThetaValue:
    """Product over (g+1)-subsets T of theta[eta_{T o U}](0; tau)^8."""
    if genus != sp.genus:
        raise ValueError("genus does not match tau")
    u = base_index_set(genus)
    vals = []
    for t in modular_discriminant_subsets(genus):
        c = eta_of_subset(t.symmetric_difference(u), genus)
        vals.append(theta_nullwert(c, sp, tol, precision, dps, budget))
    if precision == "extended":
        with mpmath.workdps(dps):
            value = mpmath.fprod([v.value**8 for v in vals])
    else:
        value = math.prod((v.value**8 for v in vals), start=1 + 0j)
    mags = [abs(v.value) for v in vals]
    bound = math.prod((m + v.truncation_bound) ** 8 for m, v in zip(mags, vals)) - math.prod(
        m**8 for m in mags
    )
    radius = max(v.lattice_radius for v in vals)
    return ThetaValue(value, bound, radius)
