"""Fixed test-curve corpus and a few named classical curves.

The seeded families live in _corpus_data.py (regenerated by
scripts/make_corpus.py); roots are sampled in an annulus with a
separation floor so the period quadrature stays well-conditioned, and
every entry passed the divisor-dictionary verification when generated.
"""

from __future__ import annotations

from ._corpus_data import CORPUS
from .curves import HyperellipticCurve

__all__ = [
    "corpus_curves",
    "corpus_entry_count",
    "reordered",
    "lemniscatic_curve",
    "j_zero_curve",
    "quintic_04_curve",
    "EVEN_MODEL_EXAMPLE_COEFFS",
]

# even-degree model y^2 = x^6 + 4x used by the discriminant worked example
EVEN_MODEL_EXAMPLE_COEFFS = (1, 0, 0, 0, 0, 4, 0)


def corpus_curves(genus: int, count: int | None = None) -> list[HyperellipticCurve]:
    entries = CORPUS[genus]
    if count is not None:
        entries = entries[:count]
    return [
        HyperellipticCurve.from_roots([complex(re, im) for re, im in e["roots"]])
        for e in entries
    ]


def corpus_entry_count(genus: int) -> int:
    return len(CORPUS[genus])


def reordered(genus: int, index: int) -> tuple[HyperellipticCurve, HyperellipticCurve, list[int]]:
    """A corpus curve together with its validated alternative root order.

    Returns (curve, same curve with permuted roots, permutation), where
    permutation[i] is the original index of the i-th root of the reordered
    curve.
    """
    e = CORPUS[genus][index]
    roots = [complex(re, im) for re, im in e["roots"]]
    perm = e["alt_order"]
    return (
        HyperellipticCurve.from_roots(roots),
        HyperellipticCurve.from_roots([roots[i] for i in perm]),
        list(perm),
    )


def lemniscatic_curve() -> HyperellipticCurve:
    """y^2 = x^3 - x, whose period lattice is square (j = 1728)."""
    return HyperellipticCurve.from_roots([-1.0, 0.0, 1.0])


def j_zero_curve() -> HyperellipticCurve:
    """y^2 = x^3 - 1, hexagonal period lattice (j = 0)."""
    return HyperellipticCurve.from_coeffs([1, 0, 0, -1])


def quintic_04_curve() -> HyperellipticCurve:
    """y^2 = x(x-1)(x-2)(x-3)(x-4), the standard real genus-2 example."""
    return HyperellipticCurve.from_roots([0.0, 1.0, 2.0, 3.0, 4.0])
