"""Height zeta function partial sums and asymptotic fitting.

The generating Dirichlet series of a counting problem is

    Z_X(s) = sum over rational points x of H(x)**(-s),

summed here over points of height at most a cutoff B.  Points are grouped
by their exact integer height, so a partial sum costs one enumeration pass
plus B complex powers.  The abscissa of convergence of a positive
Dirichlet series equals the growth exponent of its counting function
(Landau), which motivates the two finite-B estimates reported by
:func:`abscissa_estimate`.  :func:`fit_asymptotic` fits the refined shape
``N(B) ~ c * B**a * (log B)**(t-1)`` by least squares in log space over a
small set of integer candidates for t.

Only finite-B estimates are computable; none of these routines claim
limits, and the growth exponents they report are empirical stand-ins for
the liminf/limsup exponents they approximate.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .counting import CountSeries, iter_coordinate_blocks, projective_height_histogram
from .errors import InsufficientDataError
from .varieties import VarietySpec

__all__ = [
    "ZetaPartialSum",
    "AbscissaEstimate",
    "AsymptoticFit",
    "zeta_partial_sum",
    "abscissa_estimate",
    "fit_asymptotic",
    "partial_sums_to_csv",
]


@dataclass(frozen=True)
class ZetaPartialSum:
    """Value of sum_{H(x) <= B} H(x)**(-s) together with its bookkeeping."""

    s: complex
    B: int
    value: complex
    terms_used: int


def _height_histogram(spec: VarietySpec, B: int, threads: int = 1) -> np.ndarray:
    if spec.is_full_space:
        return np.array(projective_height_histogram(spec.n, B), dtype=np.int64)
    counts = np.zeros(B + 1, dtype=np.int64)
    for block in iter_coordinate_blocks(spec, B, threads=threads):
        heights = np.max(np.abs(block), axis=1)
        counts += np.bincount(heights, minlength=B + 1)
    return counts


def zeta_partial_sum(
    spec: VarietySpec, s: complex, B: int, threads: int = 1
) -> ZetaPartialSum:
    """Partial sum of the height zeta function up to height B.

    Heights are exact integers, so the sum is grouped as
    ``sum_H (N(H) - N(H-1)) * H**(-s)`` with ``H**(-s) = exp(-s log H)``
    in double precision.
    """
    if B < 1:
        raise ValueError(f"height cutoff must be >= 1, got {B}")
    hist = _height_histogram(spec, B, threads=threads)
    s = complex(s)
    value = 0j
    for h in range(1, B + 1):
        if hist[h]:
            value += int(hist[h]) * cmath.exp(-s * math.log(h))
    return ZetaPartialSum(s, B, value, int(hist.sum()))


def partial_sums_to_csv(sums: Iterable[ZetaPartialSum]) -> str:
    lines = ["B,re,im"]
    lines.extend(f"{z.B},{z.value.real!r},{z.value.imag!r}" for z in sums)
    return "\n".join(lines) + "\n"


class AbscissaEstimate(NamedTuple):
    """Two finite-B estimates of the growth exponent.

    ``endpoint`` is log N(B_max) / log B_max; ``tail_slope`` is the least
    squares slope of log N against log B over the last half of the series.
    Both converge to the abscissa of convergence for counting functions of
    regular polynomial growth.
    """

    endpoint: float
    tail_slope: float


def abscissa_estimate(series: CountSeries) -> AbscissaEstimate:
    rows = [(b, n) for b, n in series if n > 0]
    if len(rows) < 3:
        raise InsufficientDataError(
            "abscissa estimation needs at least 3 samples with N > 0"
        )
    b_max, n_max = rows[-1]
    if b_max < 2:
        raise InsufficientDataError("the largest bound must exceed 1")
    endpoint = math.log(n_max) / math.log(b_max)
    tail = rows[len(rows) // 2 :]
    xs = np.log([b for b, _ in tail])
    ys = np.log([n for _, n in tail])
    slope = float(np.polyfit(xs, ys, 1)[0]) if len(tail) >= 2 else endpoint
    return AbscissaEstimate(endpoint, slope)


@dataclass(frozen=True)
class AsymptoticFit:
    """Fitted parameters of N(B) ~ c * B**a * (log B)**(t-1)."""

    c: float
    a: float
    t: int
    residual: float

    def __post_init__(self):
        if self.c <= 0 or self.t < 1:
            raise ValueError("fit requires c > 0 and t >= 1")

    def to_json(self) -> dict:
        return {"c": self.c, "a": self.a, "t": self.t, "residual": self.residual}


def fit_asymptotic(
    series: CountSeries, t_candidates: Iterable[int] = (1, 2, 3, 4)
) -> AsymptoticFit:
    """Least squares fit of log N over the tail of a counting series.

    For each candidate t the model ``log N = log c + a log B +
    (t-1) log log B`` is fitted over the last half of the series (tail
    behaviour is what an asymptotic describes); the t with the smallest
    RMS residual wins.  Requires at least 8 samples spanning two decades.
    """
    rows = [(b, n) for b, n in series if n > 0 and b > 1]
    if len(rows) < 8:
        raise InsufficientDataError("fitting needs at least 8 samples with N > 0")
    if rows[-1][0] < 100 * rows[0][0]:
        raise InsufficientDataError("fitting needs samples spanning >= 2 decades in B")
    tail = rows[len(rows) // 2 :]
    logb = np.log([b for b, _ in tail])
    logn = np.log([n for _, n in tail])
    loglogb = np.log(logb)
    design = np.column_stack([np.ones_like(logb), logb])
    best = None
    for t in sorted(set(int(t) for t in t_candidates)):
        if t < 1:
            raise ValueError(f"pole-order candidates must be >= 1, got {t}")
        target = logn - (t - 1) * loglogb
        coeffs, *_ = np.linalg.lstsq(design, target, rcond=None)
        resid = target - design @ coeffs
        rms = float(np.sqrt(np.mean(resid**2)))
        if best is None or rms < best[0]:
            best = (rms, t, coeffs)
    rms, t, (logc, a) = best
    return AsymptoticFit(c=float(np.exp(logc)), a=float(a), t=t, residual=rms)
