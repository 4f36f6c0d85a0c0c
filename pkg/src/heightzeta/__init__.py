"""Heights of rational points, bounded-height counting, height zeta
functions, and Igusa-type local zeta products over Q.

The package is organized around six pieces:

* :mod:`heightzeta.arith` - exact rational and modular arithmetic, p-adic
  absolute values, the product formula, Mobius and prime machinery,
  Riemann zeta evaluation;
* :mod:`heightzeta.heights` - primitive projective points, normalization,
  exponential/logarithmic heights under the max and Fubini-Study metrics,
  local height factors, and the monomial embedding of P^1;
* :mod:`heightzeta.counting` - Mobius-inverted counts for P^n, slab
  enumeration of arbitrary subschemes (compiled kernel with a pure-Python
  fallback), count series, and lattice-ball counts;
* :mod:`heightzeta.zeta` - height zeta partial sums, abscissa estimates,
  and log-space asymptotic fitting;
* :mod:`heightzeta.igusa` - finite-field stratum counting, the closed
  local zeta formula for normal-crossings data, convergence factors,
  regularized Euler products, leading constants, and volume predictions;
* :mod:`heightzeta.cli` - the ``heightzeta`` command.
"""

from .arith import (
    INFINITE_PLACE,
    Place,
    is_prime,
    mobius,
    padic_abs,
    primes_up_to,
    product_formula_check,
    riemann_zeta,
)
from .counting import (
    CountSeries,
    active_engine,
    circle_count,
    count_points,
    count_projective,
    count_series,
    enumerate_points,
    iter_coordinate_blocks,
    projective_height_histogram,
)
from .heights import (
    HeightValue,
    MetricKind,
    PrimitivePoint,
    height,
    local_height_factor,
    normalize,
    veronese_embed,
)
from .igusa import (
    BoundaryComponent,
    LeadingConstant,
    LocalZetaValue,
    NCDatum,
    RegularizedProduct,
    convergence_factor,
    count_strata_ff,
    denef_local_zeta,
    leading_constant,
    regularized_euler_product,
    volume_asymptotic,
    volume_prediction,
)
from .quadrature import ArchimedeanChart, archimedean_local_zeta, builtin_chart
from .varieties import Poly, Term, VarietySpec, poly, projective_space
from .zeta import (
    AbscissaEstimate,
    AsymptoticFit,
    ZetaPartialSum,
    abscissa_estimate,
    fit_asymptotic,
    zeta_partial_sum,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Place",
    "INFINITE_PLACE",
    "is_prime",
    "primes_up_to",
    "mobius",
    "padic_abs",
    "product_formula_check",
    "riemann_zeta",
    "PrimitivePoint",
    "MetricKind",
    "HeightValue",
    "normalize",
    "height",
    "local_height_factor",
    "veronese_embed",
    "Term",
    "Poly",
    "poly",
    "VarietySpec",
    "projective_space",
    "CountSeries",
    "active_engine",
    "count_projective",
    "projective_height_histogram",
    "count_points",
    "count_series",
    "enumerate_points",
    "iter_coordinate_blocks",
    "circle_count",
    "ZetaPartialSum",
    "AbscissaEstimate",
    "AsymptoticFit",
    "zeta_partial_sum",
    "abscissa_estimate",
    "fit_asymptotic",
    "BoundaryComponent",
    "NCDatum",
    "LocalZetaValue",
    "RegularizedProduct",
    "LeadingConstant",
    "count_strata_ff",
    "denef_local_zeta",
    "convergence_factor",
    "regularized_euler_product",
    "leading_constant",
    "volume_asymptotic",
    "volume_prediction",
    "ArchimedeanChart",
    "builtin_chart",
    "archimedean_local_zeta",
]
