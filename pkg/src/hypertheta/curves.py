"""Hyperelliptic curve models y^2 = f(x) with f monic, squarefree, odd degree.

The branch point at infinity is implicit: a degree 2g+1 model always has
2g+2 Weierstrass points, the last one being infinity.  Root order is
significant: it fixes the labelling W_1, ..., W_{2g+1} and with it the
homology basis the period code constructs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "CurveError",
    "HyperellipticCurve",
    "poly_discriminant_from_roots",
    "poly_discriminant",
    "odd_model_from_even",
]


class CurveError(ValueError):
    """Invalid or degenerate hyperelliptic model."""


SEPARATION_FACTOR = 1e-6  # roots closer than this times the scale are "repeated"


def poly_discriminant_from_roots(roots, lead=1.0) -> complex:
    """D(f) = lead^(2d-2) * prod over ordered pairs i != j of (r_i - r_j)."""
    roots = np.asarray(roots, dtype=complex)
    d = len(roots)
    diff = roots[:, None] - roots[None, :]
    off = diff[~np.eye(d, dtype=bool)]
    return complex(lead ** (2 * d - 2) * np.prod(off))


def poly_discriminant(coeffs) -> complex:
    """Discriminant of a polynomial given by coefficients, highest first.

    Degree-agnostic so that even-degree polynomials can be handled too;
    curve construction itself stays odd-degree-only.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    if len(coeffs) < 3:
        raise CurveError("polynomial must have degree >= 2")
    if coeffs[0] == 0:
        raise CurveError("leading coefficient must be nonzero")
    roots = np.roots(coeffs)
    return poly_discriminant_from_roots(roots, lead=complex(coeffs[0]))


@dataclass(frozen=True)
class HyperellipticCurve:
    genus: int
    coeffs: tuple[complex, ...]  # monic, highest first, length 2g+2
    roots: tuple[complex, ...]  # ordered, defines W_1..W_{2g+1}; W_{2g+2} = infinity
    separation: float

    @classmethod
    def from_roots(cls, roots) -> "HyperellipticCurve":
        roots = tuple(complex(r) for r in roots)
        d = len(roots)
        if d < 3 or d % 2 == 0:
            raise CurveError(f"need an odd number >= 3 of finite roots, got {d}")
        g = (d - 1) // 2
        sep = _min_separation(roots)
        scale = max(1.0, max(abs(r) for r in roots))
        if sep < SEPARATION_FACTOR * scale:
            raise CurveError(
                f"repeated or nearly repeated roots (separation {sep:.3e})"
            )
        coeffs = np.poly(np.asarray(roots, dtype=complex))
        return cls(g, tuple(complex(c) for c in coeffs), roots, sep)

    @classmethod
    def from_coeffs(cls, coeffs) -> "HyperellipticCurve":
        coeffs = [complex(c) for c in coeffs]
        if not coeffs or coeffs[0] != 1:
            raise CurveError("coefficient list must be monic (leading 1, highest first)")
        d = len(coeffs) - 1
        if d < 3 or d % 2 == 0:
            raise CurveError(f"degree must be odd and >= 3, got {d}")
        roots = np.roots(np.asarray(coeffs, dtype=complex))
        curve = cls.from_roots(roots)
        # keep the coefficients the caller supplied; the root product matches
        # them within rounding, which from_roots has already implied
        return cls(curve.genus, tuple(coeffs), curve.roots, curve.separation)

    def f(self, x):
        """Evaluate f at x (scalar or array)."""
        return np.polyval(np.asarray(self.coeffs), x)

    def discriminant(self) -> complex:
        return poly_discriminant_from_roots(self.roots)

    def weierstrass_x(self, k: int) -> complex:
        """Finite branch point x-value for index k in 1..2g+1."""
        if not 1 <= k <= 2 * self.genus + 1:
            raise CurveError(f"finite branch index {k} out of range")
        return self.roots[k - 1]

    def is_branch_x(self, x, rtol=1e-9) -> bool:
        scale = max(1.0, max(abs(r) for r in self.roots))
        return any(abs(x - r) < rtol * scale for r in self.roots)


def _min_separation(roots) -> float:
    d = len(roots)
    return min(
        abs(roots[i] - roots[j]) for i in range(d) for j in range(i + 1, d)
    )


def odd_model_from_even(roots, index_to_infinity: int = 0):
    """Send one root of an even-degree model to infinity.

    For y^2 = prod(x - r_i) of degree 2g+2 the substitution x = r_j + 1/t
    (with y rescaled) produces a monic odd model whose finite roots are
    1/(r_i - r_j); their order is inherited from the input, skipping r_j.
    """
    roots = [complex(r) for r in roots]
    d = len(roots)
    if d % 2 or d < 4:
        raise CurveError(f"need an even number >= 4 of roots, got {d}")
    if not 0 <= index_to_infinity < d:
        raise CurveError("index_to_infinity out of range")
    rj = roots[index_to_infinity]
    new_roots = [
        1.0 / (r - rj) for i, r in enumerate(roots) if i != index_to_infinity
    ]
    return HyperellipticCurve.from_roots(new_roots)
