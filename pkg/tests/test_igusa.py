"""Finite-field strata, the closed local zeta formula, and Euler products."""

import cmath
import math
import random
from fractions import Fraction

import pytest

from conftest import brute_ff_strata
from heightzeta.arith import primes_up_to, riemann_zeta
from heightzeta.errors import (
    BadPrimeError,
    LocalZetaPoleError,
    MissingStrataError,
    PoleAtOne,
    ResourceLimitError,
)
from heightzeta.igusa import (
    NCDatum,
    convergence_factor,
    count_strata_ff,
    denef_local_zeta,
    leading_constant,
    regularized_euler_product,
    volume_asymptotic,
    volume_prediction,
)
from heightzeta.varieties import VarietySpec, poly, projective_space


def test_strata_examples(p1, p2, quadric_spec, boundary_x0):
    assert count_strata_ff(p1, boundary_x0, 5) == {
        frozenset(): 5,
        frozenset({"alpha"}): 1,
    }
    assert count_strata_ff(p2, {}, 2) == {frozenset(): 7}
    assert count_strata_ff(quadric_spec, {}, 3) == {frozenset(): 16}


def test_strata_against_brute_oracle(p1, p2, conic_spec, boundary_x0):
    cases = [
        (p1, boundary_x0, [2, 3, 7, 11]),
        (p2, {"l": (poly((1, (1, 0, 0))),), "m": (poly((1, (0, 1, 0))),)}, [2, 5]),
        (conic_spec, {"t": (poly((1, (0, 0, 1))),)}, [3, 7]),
    ]
    for spec, boundary, primes in cases:
        for p in primes:
            assert count_strata_ff(spec, boundary, p) == brute_ff_strata(
                spec, boundary, p
            )


def test_strata_partition_invariant(p1, p2, quadric_spec, boundary_x0):
    # strata partition the F_p points: totals must equal Card(X(F_p))
    for spec, boundary, total in [
        (p1, boundary_x0, lambda p: p + 1),
        (p2, {}, lambda p: p * p + p + 1),
        (quadric_spec, {}, lambda p: (p + 1) ** 2),
    ]:
        for p in (2, 3, 5, 13, 31):
            table = count_strata_ff(spec, boundary, p)
            assert sum(table.values()) == total(p)


def test_strata_guards(p3, p1, boundary_x0):
    with pytest.raises(ResourceLimitError):
        count_strata_ff(p3, {}, 991)
    with pytest.raises(BadPrimeError):
        count_strata_ff(p1, boundary_x0, 5, bad_primes={5})
    with pytest.raises(ValueError):
        count_strata_ff(p1, boundary_x0, 6)


def test_weil_identity_exact(p1_anticanonical, gm_datum, p2_datum, quadric_datum):
    cards = {
        id(p1_anticanonical): lambda p: p + 1,
        id(gm_datum): lambda p: p + 1,
        id(p2_datum): lambda p: p * p + p + 1,
        id(quadric_datum): lambda p: (p + 1) ** 2,
    }
    for datum in (p1_anticanonical, gm_datum, p2_datum, quadric_datum):
        for p in datum.good_primes(30):
            value = denef_local_zeta(datum, p, 1).value
            assert value == Fraction(cards[id(datum)](p), p**datum.dim)


def test_denef_hand_value(p1_anticanonical):
    v = denef_local_zeta(p1_anticanonical, 5, 2)
    assert v.value == Fraction(156, 155)
    assert float(v.value) == pytest.approx(1.0064516, abs=1e-7)


def test_denef_no_boundary_constant_in_s(p2_datum):
    base = denef_local_zeta(p2_datum, 7, 1).value
    assert base == Fraction(57, 49)
    for s in (2, 3.5, 1.25 + 2j):
        v = denef_local_zeta(p2_datum, 7, s).value
        assert abs(complex(v) - complex(base)) < 1e-12


def test_denef_matches_closed_form_random(p1_anticanonical):
    # single boundary point of multiplicity 2 on the line:
    # Z_q(s) = (1 - q**(-2s)) / (1 - q**(-(2s-1)))
    rng = random.Random(2008)
    primes = primes_up_to(1000)[3:]
    for _ in range(20):
        q = rng.choice(primes)
        s = complex(1.05 + 2 * rng.random(), rng.uniform(-2.0, 2.0))
        got = complex(denef_local_zeta(p1_anticanonical, q, s).value)
        want = (1 - q ** (-2 * s)) / (1 - q ** (-(2 * s - 1)))
        assert abs(got - want) <= 1e-12 * abs(want)


def test_denef_boundary_term_is_disk_integral(p1_anticanonical):
    # The stratum term of the boundary point equals the p-adic disk
    # integral of |t|^(2(s-1)): sum over m >= 1 of (1-1/q) q^-m q^(-2m(s-1)).
    q, s = 7, 1.75
    zeta_val = complex(denef_local_zeta(p1_anticanonical, q, s).value)
    affine_part = 1.0  # q^(-1) * Card(A^1(F_q))
    boundary_term = zeta_val - affine_part
    series = sum((1 - 1 / q) * q ** (-m * (2 * s - 1)) for m in range(1, 400))
    assert abs(boundary_term - series) < 1e-12


def test_denef_pole_error(p1_anticanonical):
    with pytest.raises(LocalZetaPoleError) as err:
        denef_local_zeta(p1_anticanonical, 5, Fraction(1, 2))
    assert err.value.label == "alpha"
    with pytest.raises(LocalZetaPoleError):
        denef_local_zeta(p1_anticanonical, 5, 0.5)


def test_denef_missing_strata():
    datum = NCDatum(dim=1, components=[("alpha", 2)], strata={"5": {"": 5, "alpha": 1}})
    assert denef_local_zeta(datum, 5, 1).value == Fraction(6, 5)
    with pytest.raises(MissingStrataError):
        denef_local_zeta(datum, 7, 1)


def test_explicit_strata_match_computed(p1_anticanonical, boundary_x0):
    explicit = NCDatum(
        dim=1,
        components=[("alpha", 2)],
        strata={
            str(p): {"": p, "alpha": 1} for p in (2, 3, 5, 7, 11, 13)
        },
        archimedean="p1-max-anticanonical",
    )
    for p in (2, 3, 5, 7, 11, 13):
        for s in (1, 2, 1.3):
            a = denef_local_zeta(explicit, p, s).value
            b = denef_local_zeta(p1_anticanonical, p, s).value
            assert complex(a) == pytest.approx(complex(b), rel=1e-15)


def test_convergence_factor_examples():
    assert convergence_factor(0, 1, 2) == Fraction(1, 2)
    assert convergence_factor(0, 0, 97) == 1
    assert convergence_factor(1, 0, 3) == Fraction(3, 2)
    with pytest.raises(ValueError):
        convergence_factor(-1, 0, 3)
    with pytest.raises(ValueError):
        convergence_factor(0, 0, 4)


def test_euler_product_p1_closed_form(p1_anticanonical):
    rp = regularized_euler_product(p1_anticanonical, 1.1, 10**4)
    want = riemann_zeta(1.2) / riemann_zeta(2.2) * (2 + 2 / 1.2)
    assert rp.pole_order == 1
    assert abs(rp.assembled.real - want) / want < 0.005
    # the regular part is the truncated product of (1 - p**(-2s))
    assert abs(rp.regular_part.real - 1 / riemann_zeta(2.2)) < 1e-3


def test_euler_product_complex_parameter(p1_anticanonical):
    s = 1.2 + 0.5j
    rp = regularized_euler_product(p1_anticanonical, s, 500)
    # closed form: zeta(2s-1)/zeta(2s) * (2 + 2/(2s-1)) with truncation slack
    from heightzeta.arith import zeta_complex

    want = zeta_complex(2 * s - 1) / zeta_complex(2 * s) * (2 + 2 / (2 * s - 1))
    assert abs(rp.assembled - want) / abs(want) < 2e-3


def test_euler_product_gm_datum(gm_datum):
    # two multiplicity-1 components with unit-rank M0: the regularized
    # finite product collapses to 1/zeta(2s)
    rp = regularized_euler_product(gm_datum, 1.5, 5000)
    assert rp.pole_order == 2
    assert abs(rp.regular_part.real - 1 / riemann_zeta(3)) < 1e-4
    want = riemann_zeta(1.5) ** 2 / riemann_zeta(3)
    assert abs(rp.assembled.real - want) / want < 1e-3
    assert rp.arch_factor == 1.0


def test_euler_product_no_boundary_finite_at_one(p2_datum):
    rp = regularized_euler_product(p2_datum, 1 + 0j, 2000)
    assert rp.pole_order == 0
    assert isinstance(rp.assembled, PoleAtOne)
    assert rp.assembled.order == 0
    # with no zeta factors the "pole" of order 0 is an honest finite value
    assert rp.assembled.leading == pytest.approx(rp.regular_part.real, rel=1e-12)


def test_euler_product_pole_marker(p1_anticanonical):
    rp = regularized_euler_product(p1_anticanonical, 1, 300)
    assert isinstance(rp.assembled, PoleAtOne)
    assert rp.assembled.order == 1
    target = 12 / math.pi**2
    assert abs(rp.assembled.leading - target) / target < 0.01


def test_euler_product_domain_validation(p1_anticanonical):
    with pytest.raises(ValueError):
        regularized_euler_product(p1_anticanonical, 0.9, 100)
    with pytest.raises(ValueError):
        regularized_euler_product(p1_anticanonical, 1.01 + 1j, 100)


def test_local_estimate_decay(p1_anticanonical):
    # Z_p(s) * prod (1 - p^-(1+d(s-1))) approaches the local volume of the
    # open stratum at rate 1/p: fit C on small primes, check the rest.
    s = 1.1
    ratios = {}
    for p in p1_anticanonical.good_primes(100):
        z = complex(denef_local_zeta(p1_anticanonical, p, s).value)
        for d in p1_anticanonical.multiplicities:
            z *= 1 - p ** (-(1 + d * (s - 1)))
        open_volume = p1_anticanonical.strata_for(p)[frozenset()] / p
        ratios[p] = abs(z / open_volume - 1)
    C = 1.5 * max(p * r for p, r in ratios.items() if p <= 50)
    assert all(r <= C / p for p, r in ratios.items() if p > 50)


def test_leading_constant_target(p1_anticanonical):
    lc = leading_constant(p1_anticanonical, 3000)
    target = 12 / math.pi**2
    assert abs(lc.value - target) / target < 0.01
    assert lc.tau == pytest.approx(2 * lc.value, rel=1e-12)
    assert lc.tail_bound > 0


def test_leading_constant_scaling_exact(p1, boundary_x0):
    base = NCDatum(dim=1, components=[("alpha", 2)], variety=p1,
                   boundary=boundary_x0, archimedean="p1-max-anticanonical")
    doubled = NCDatum(dim=1, components=[("alpha", 4)], variety=p1,
                      boundary=boundary_x0, archimedean="p1-max-anticanonical")
    a = leading_constant(base, 500)
    b = leading_constant(doubled, 500)
    assert b.value == a.value / 2
    assert b.tau == a.tau


def test_leading_constant_thread_determinism(p1_anticanonical):
    one = leading_constant(p1_anticanonical, 2000, threads=1)
    four = leading_constant(p1_anticanonical, 2000, threads=4)
    assert one.value == four.value


def test_product_order_insensitivity(p1_anticanonical):
    s = 1.25
    logs = []
    for p in p1_anticanonical.good_primes(3000):
        lam = 1.0  # both ranks are zero for this datum
        z = complex(denef_local_zeta(p1_anticanonical, p, s).value)
        for d in p1_anticanonical.multiplicities:
            z *= 1 - p ** (-(1 + d * (s - 1)))
        logs.append(cmath.log(lam * z))
    forward = cmath.exp(sum(logs))
    backward = cmath.exp(sum(reversed(logs)))
    assert abs(forward - backward) <= 1e-10 * abs(forward)
    rp = regularized_euler_product(p1_anticanonical, s, 3000)
    assert abs(rp.regular_part - forward) <= 1e-10 * abs(forward)


def test_volume_examples(p1_anticanonical):
    assert volume_prediction(1.0, (1, 1), 100.0) == pytest.approx(
        100 * math.log(100), rel=1e-12
    )
    assert volume_prediction(1.0, (1, 1), math.e) == pytest.approx(math.e, rel=1e-12)
    va = volume_asymptotic(p1_anticanonical, 10**6, 2000)
    target = (12 / math.pi**2) * 10**6
    assert abs(va - target) / target < 0.01
    with pytest.raises(ValueError):
        volume_prediction(1.0, (1,), 1.0)
    with pytest.raises(ValueError):
        volume_prediction(1.0, (), 10.0)


def test_datum_json_round_trip(p1_anticanonical):
    data = p1_anticanonical.to_json()
    back = NCDatum.from_json(data)
    assert back.dim == 1
    assert back.multiplicities == (2,)
    assert back.rank_M0 == 0 and back.rank_M1 == 0
    assert back.archimedean.name == "p1-max-anticanonical"
    assert denef_local_zeta(back, 11, 2).value == denef_local_zeta(
        p1_anticanonical, 11, 2
    ).value
    explicit = NCDatum(
        dim=1, components=[("alpha", 2)], strata={"5": {"": 5, "alpha": 1}}
    )
    again = NCDatum.from_json(explicit.to_json())
    assert again.strata_for(5) == {frozenset(): 5, frozenset({"alpha"}): 1}


def test_datum_validation(p1):
    with pytest.raises(ValueError):
        NCDatum(dim=1, components=[("a", 0)])
    with pytest.raises(ValueError):
        NCDatum(dim=1, components=[("a", 1), ("a", 2)])
    with pytest.raises(ValueError):
        NCDatum(dim=1, components=[("a", 1)], rank_M0=-1)
    with pytest.raises(ValueError):
        NCDatum(dim=1, components=[("a", 1)], strata={"5": {"b": 1}})
    with pytest.raises(ValueError):
        NCDatum(dim=1, components=[("a", 1)], variety=p1, boundary={"zz": ()})


def test_bad_primes_excluded(p1, boundary_x0):
    datum = NCDatum(
        dim=1, components=[("alpha", 2)], bad_primes={2, 5},
        variety=p1, boundary=boundary_x0,
    )
    assert 2 not in datum.good_primes(100) and 5 not in datum.good_primes(100)
    with pytest.raises(BadPrimeError):
        datum.strata_for(5)
    # explicit data for a bad prime is allowed and used
    manual = NCDatum(
        dim=1, components=[("alpha", 2)], bad_primes={5},
        variety=p1, boundary=boundary_x0, strata={"5": {"": 5, "alpha": 1}},
    )
    assert denef_local_zeta(manual, 5, 1).value == Fraction(6, 5)
