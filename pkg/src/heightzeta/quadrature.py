"""Archimedean local integrals by adaptive quadrature.

A chart integrand is a density ``phi(x)**(s-1) * omega(x)`` over an
interval, a box, or the whole real line; the built-in charts realize the
anticanonical local integral on the real points of the projective line,

    max metric:    integral over R of max(1, |x|)**(-2s) dx,
    Fubini-Study:  integral over R of (1 + x**2)**(-s) dx,

both convergent for Re(s) > 1/2.  Values are computed by adaptive
quadrature (scipy's QUADPACK wrappers) to an absolute tolerance of 1e-8;
closed forms such as ``2 + 2/(2s-1)`` for the max-metric chart are kept
out of the evaluation path so they can serve as independent oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy.integrate import dblquad, quad

from .errors import DivergentIntegralError

__all__ = [
    "ArchimedeanChart",
    "builtin_chart",
    "BUILTIN_CHARTS",
    "archimedean_local_zeta",
]

_EPSABS = 1e-10
_EPSREL = 1e-11


@dataclass(frozen=True)
class ArchimedeanChart:
    """A 1D or 2D integrand ``phi(x)**(s-1) * omega(x)``.

    ``bounds`` is ``(a, b)`` for one variable (infinite endpoints allowed)
    or ``((ax, bx), (ay, by))`` for two.  ``threshold`` is the infimum of
    the real parameters for which the integral converges; evaluation at or
    below it is refused.  ``splits`` lists interior points where the
    integrand is not smooth.
    """

    name: str
    phi: Callable
    omega: Callable
    bounds: tuple
    threshold: float = 0.0
    splits: tuple[float, ...] = ()

    @property
    def dim(self) -> int:
        return 2 if isinstance(self.bounds[0], tuple) else 1


def _p1_max_density(x: float) -> float:
    m = max(1.0, abs(x))
    return 1.0 / (m * m)


def _p1_fs_density(x: float) -> float:
    return 1.0 / (1.0 + x * x)


BUILTIN_CHARTS = {
    "p1-max-anticanonical": ArchimedeanChart(
        name="p1-max-anticanonical",
        phi=_p1_max_density,
        omega=_p1_max_density,
        bounds=(-math.inf, math.inf),
        threshold=0.5,
        splits=(-1.0, 1.0),
    ),
    "p1-fs-anticanonical": ArchimedeanChart(
        name="p1-fs-anticanonical",
        phi=_p1_fs_density,
        omega=_p1_fs_density,
        bounds=(-math.inf, math.inf),
        threshold=0.5,
        splits=(0.0,),
    ),
}


def builtin_chart(name: str) -> ArchimedeanChart:
    try:
        return BUILTIN_CHARTS[name]
    except KeyError:
        raise ValueError(
            f"unknown archimedean chart {name!r}; "
            f"available: {sorted(BUILTIN_CHARTS)}"
        ) from None


def _quad_1d(fn, a: float, b: float, splits) -> float:
    cuts = [a] + [p for p in sorted(splits) if a < p < b] + [b]
    total = 0.0
    for lo, hi in zip(cuts, cuts[1:]):
        val, _ = quad(fn, lo, hi, epsabs=_EPSABS, epsrel=_EPSREL, limit=200)
        total += val
    return total


def archimedean_local_zeta(chart: ArchimedeanChart, s) -> float | complex:
    """Adaptive quadrature of ``phi**(s-1) * omega`` over the chart domain.

    Accepts complex ``s`` (real and imaginary parts are integrated
    separately); raises :class:`DivergentIntegralError` when Re(s) is at
    or below the chart's convergence threshold.
    """
    s = complex(s)
    if s.real <= chart.threshold:
        raise DivergentIntegralError(
            f"chart {chart.name!r} diverges for Re(s) <= {chart.threshold}, got {s}"
        )
    phi, omega = chart.phi, chart.omega
    if chart.dim == 1:
        a, b = chart.bounds

        def density(x, sv):
            return phi(x) ** (sv - 1) * omega(x)

        if s.imag == 0:
            return _quad_1d(lambda x: density(x, s.real), a, b, chart.splits)
        re = _quad_1d(lambda x: density(x, s).real, a, b, chart.splits)
        im = _quad_1d(lambda x: density(x, s).imag, a, b, chart.splits)
        return complex(re, im)

    (ax, bx), (ay, by) = chart.bounds

    def density2(y, x, sv):
        return phi(x, y) ** (sv - 1) * omega(x, y)

    if s.imag == 0:
        val, _ = dblquad(
            density2, ax, bx, ay, by, args=(s.real,), epsabs=_EPSABS, epsrel=_EPSREL
        )
        return val
    re, _ = dblquad(
        lambda y, x: density2(y, x, s).real, ax, bx, ay, by,
        epsabs=_EPSABS, epsrel=_EPSREL,
    )
    im, _ = dblquad(
        lambda y, x: density2(y, x, s).imag, ax, bx, ay, by,
        epsabs=_EPSABS, epsrel=_EPSREL,
    )
    return complex(re, im)
