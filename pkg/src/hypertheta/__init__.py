"""Theta characteristics, Riemann theta numerics, hyperelliptic period
matrices, and numerical verification of the classical product identities
relating Jacobian Nullwerte to Thetanullwerte."""

from .chars import (
    FundamentalSystem,
    ThetaCharacteristic,
    enumerate_fundamental_systems,
    eta_of_subset,
    fundamental_system_from_subset,
    generator_char,
)
from .curves import HyperellipticCurve, odd_model_from_even, poly_discriminant
from .identities import (
    IdentityReport,
    check_fourth_power,
    check_guardia,
    check_guardia_all,
    check_jacobi,
    check_lockhart,
    check_product_theorem,
    check_rosenhain,
    check_vanishing_structure,
)
from .norms import (
    NormedValue,
    green_prime,
    lemma_formula_phi,
    norm_delta,
    norm_j,
    norm_phi,
    norm_theta,
)
from .periods import (
    JacobianPoint,
    PeriodData,
    abel_jacobi_divisor,
    abel_jacobi_point,
    half_period_point,
    j_invariant,
    period_matrix,
    riemann_vector,
    weierstrass_dictionary_residuals,
)
from .theta import (
    SiegelPoint,
    ThetaValue,
    jacobian_nullwert,
    modular_discriminant,
    theta,
    theta_gradient_null,
    theta_nullwert,
)

__version__ = "0.1.0"
