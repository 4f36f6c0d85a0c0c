"""Projective points over Q and their heights.

A point of ``P^n(Q)`` is stored by its unique primitive representative:
coprime integer homogeneous coordinates whose first nonzero entry is
positive.  With that normalization the exponential height under the max
metric is simply ``max(|x_i|)``, an exact integer, because every p-adic
factor of the product formula equals 1 on coprime coordinates.

Two metrics are supported.  Both use the max formula at finite places;
the Fubini-Study variant replaces the archimedean max by the euclidean
norm ``(sum x_i^2)**0.5``, which changes the height by a factor between 1
and ``sqrt(n+1)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import INFINITE_PLACE, Place, Rational, factorize, padic_abs
from .errors import SectionVanishesError

__all__ = [
    "PrimitivePoint",
    "MetricKind",
    "HeightValue",
    "normalize",
    "height",
    "local_height_factor",
    "relevant_places",
    "veronese_embed",
    "point_to_json",
    "point_from_json",
    "height_to_json",
]


class MetricKind(enum.Enum):
    MAX = "max"
    FUBINI_STUDY = "fubini-study"


@dataclass(frozen=True)
class PrimitivePoint:
    """Coprime integer homogeneous coordinates, first nonzero entry > 0."""

    coords: tuple[int, ...]

    def __post_init__(self):
        c = self.coords
        if not c or all(v == 0 for v in c):
            raise ValueError("homogeneous coordinates must not all vanish")
        if math.gcd(*c) != 1:
            raise ValueError(f"coordinates {c} are not coprime")
        first = next(v for v in c if v != 0)
        if first < 0:
            raise ValueError(f"first nonzero coordinate of {c} must be positive")

    @property
    def dim(self) -> int:
        """Dimension n of the ambient projective space P^n."""
        return len(self.coords) - 1

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return "[" + " : ".join(str(v) for v in self.coords) + "]"


@dataclass(frozen=True)
class HeightValue:
    """Exponential and logarithmic height of one point.

    ``exponential`` is an exact integer for the max metric and a float for
    Fubini-Study; ``logarithmic`` is always ``log(exponential)``.
    """

    exponential: int | float
    logarithmic: float


def normalize(raw) -> PrimitivePoint:
    """Canonical primitive representative of a rational coordinate vector.

    Clears denominators, divides by the gcd, and flips the overall sign so
    the first nonzero coordinate is positive.  Idempotent, and invariant
    under scaling by any nonzero rational.
    """
    vals = [Fraction(v) for v in raw]
    if not vals or all(v == 0 for v in vals):
        raise ValueError("cannot normalize the zero vector")
    common = math.lcm(*(v.denominator for v in vals))
    ints = [int(v * common) for v in vals]
    g = math.gcd(*ints)
    ints = [v // g for v in ints]
    first = next(v for v in ints if v != 0)
    if first < 0:
        ints = [-v for v in ints]
    return PrimitivePoint(tuple(ints))


def height(x: PrimitivePoint, metric: MetricKind = MetricKind.MAX) -> HeightValue:
    """Height of a primitive point under the chosen metric.

    Max metric: the exact integer ``max(|x_i|)`` (all finite places
    contribute 1 on primitive coordinates).  Fubini-Study: the euclidean
    norm of the coordinate vector, a float.
    """
    if metric is MetricKind.MAX:
        h = max(abs(v) for v in x.coords)
        return HeightValue(h, math.log(h))
    sq = sum(v * v for v in x.coords)
    h = math.sqrt(sq)
    return HeightValue(h, 0.5 * math.log(sq))


def relevant_places(x: PrimitivePoint, i: int) -> list[Place]:
    """Places where the i-th local height factor can differ from 1.

    On primitive coordinates those are the archimedean place and the
    primes dividing ``x_i``; everywhere else both ``|x_i|_v`` and the max
    equal 1.
    """
    xi = x.coords[i]
    if xi == 0:
        raise SectionVanishesError(f"coordinate {i} vanishes at {x}")
    places = [INFINITE_PLACE]
    places.extend(Place(p) for p in sorted(factorize(abs(xi))))
    return places


def local_height_factor(x: PrimitivePoint, i: int, v: Place) -> Fraction:
    """Norm ``|x_i|_v / max_j |x_j|_v`` of the i-th coordinate section.

    Well defined independently of the choice of homogeneous coordinates;
    lies in (0, 1].  The product of the inverses over all places
    reconstructs the max-metric height.  Raises
    :class:`SectionVanishesError` when ``x_i = 0``.
    """
    xi = x.coords[i]
    if xi == 0:
        raise SectionVanishesError(f"coordinate {i} vanishes at {x}")
    if v.is_archimedean:
        return Fraction(abs(xi), max(abs(c) for c in x.coords))
    num = padic_abs(xi, v.p)
    den = max(padic_abs(c, v.p) for c in x.coords if c != 0)
    return num / den


def veronese_embed(x: PrimitivePoint, d: int) -> PrimitivePoint:
    """Degree-d monomial embedding of P^1 into P^d.

    ``[a : b]`` maps to ``[a^d : a^(d-1) b : ... : b^d]``.  The monomials
    of a coprime pair are collectively coprime, so the image is primitive;
    the max-metric height satisfies ``H(image) = H(x)**d`` exactly.
    """
    if x.dim != 1:
        raise ValueError(f"expected a point of P^1, got one of P^{x.dim}")
    if d < 1:
        raise ValueError(f"the embedding degree must be positive, got {d}")
    a, b = x.coords
    return normalize([a ** (d - k) * b**k for k in range(d + 1)])


def point_to_json(x: PrimitivePoint) -> list[int]:
    return list(x.coords)


def point_from_json(data) -> PrimitivePoint:
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
        raise ValueError("a point must be a JSON array of integers")
    return normalize(data)


def height_to_json(h: HeightValue) -> dict:
    return {"H": str(h.exponential), "h": h.logarithmic}
