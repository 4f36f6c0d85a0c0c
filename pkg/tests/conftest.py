"""Shared fixtures: reference specs, boundary data, and independent oracles.

The brute-force helpers here deliberately share no code with the
enumeration engines: they loop over full coordinate boxes with their own
primitivity and sign logic, so they can serve as oracles for both.
"""

import math
from itertools import product

import pytest

from heightzeta.igusa import NCDatum
from heightzeta.varieties import VarietySpec, poly, projective_space


def brute_points(spec: VarietySpec, B: int) -> list[tuple[int, ...]]:
    """All normalized points of height <= B by full-box scan (small B only)."""
    out = []
    for cand in product(range(-B, B + 1), repeat=spec.n + 1):
        if all(v == 0 for v in cand):
            continue
        if math.gcd(*cand) != 1:
            continue
        if next(v for v in cand if v != 0) < 0:
            continue
        if spec.contains(cand):
            out.append(cand)
    out.sort()
    return out


def brute_ff_strata(variety, boundary, p):
    """Stratum counts over F_p by scalar loops, independent of the package."""

    def ev(q, pt):
        total = 0
        for t in q.terms:
            v = t.coef
            for x, e in zip(pt, t.exps):
                v *= pow(x, e, p)
            total += v
        return total % p

    counts = {}
    n = variety.n
    for slab in range(n + 1):
        for rest in product(range(p), repeat=n - slab):
            pt = (0,) * slab + (1,) + rest
            if any(ev(q, pt) != 0 for q in variety.polys):
                continue
            key = frozenset(
                lb for lb, sys in boundary.items() if all(ev(q, pt) == 0 for q in sys)
            )
            counts[key] = counts.get(key, 0) + 1
    return counts


@pytest.fixture(scope="session")
def p1():
    return projective_space(1)


@pytest.fixture(scope="session")
def p2():
    return projective_space(2)


@pytest.fixture(scope="session")
def p3():
    return projective_space(3)


@pytest.fixture(scope="session")
def conic_spec():
    # x0*x2 - x1^2 = 0 in P^2, parametrized by [s^2 : s t : t^2]
    return VarietySpec(2, (poly((1, (1, 0, 1)), (-1, (0, 2, 0))),))


@pytest.fixture(scope="session")
def quadric_spec():
    # x0*x2 - x1*x3 = 0 in P^3
    return VarietySpec(3, (poly((1, (1, 0, 1, 0)), (-1, (0, 1, 0, 1))),))


@pytest.fixture(scope="session")
def line_x0():
    return VarietySpec(2, (poly((1, (1, 0, 0))),))


@pytest.fixture(scope="session")
def line_sum():
    return VarietySpec(2, (poly((1, (1, 0, 0)), (1, (0, 1, 0)), (1, (0, 0, 1))),))


@pytest.fixture(scope="session")
def boundary_x0():
    return {"alpha": (poly((1, (1, 0))),)}


@pytest.fixture(scope="session")
def p1_anticanonical(p1, boundary_x0):
    """P^1 with the doubled boundary point x0 = 0; the affine-line datum."""
    return NCDatum(
        dim=1,
        components=[("alpha", 2)],
        rank_M0=0,
        rank_M1=0,
        variety=p1,
        boundary=boundary_x0,
        archimedean="p1-max-anticanonical",
    )


@pytest.fixture(scope="session")
def gm_datum(p1):
    """P^1 with boundary {0, oo}, each of multiplicity 1; the torus datum.

    Units on the complement have rank 1, so the convergence factors are
    nontrivial here: lambda_p = (1 - 1/p)**(-1).
    """
    return NCDatum(
        dim=1,
        components=[("zero", 1), ("infty", 1)],
        rank_M0=1,
        rank_M1=0,
        variety=p1,
        boundary={"zero": (poly((1, (1, 0))),), "infty": (poly((1, (0, 1))),)},
    )


@pytest.fixture(scope="session")
def p2_datum(p2):
    """P^2 with no boundary components: pole order 0."""
    return NCDatum(dim=2, components=[], variety=p2, boundary={})


@pytest.fixture(scope="session")
def quadric_datum(quadric_spec):
    """The smooth quadric surface in P^3 with no boundary."""
    return NCDatum(dim=2, components=[], variety=quadric_spec, boundary={})
