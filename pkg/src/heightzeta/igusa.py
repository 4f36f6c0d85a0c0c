"""Local zeta functions of normal-crossings boundary data and their
regularized Euler products.

The boundary datum consists of components with multiplicities ``d_a``
(the divisor is ``sum d_a * L_a``), the ranks of the two lattice modules
driving the convergence factors, and residue-field stratum counts
``Card(X_A(F_q))``: for each subset A of the components, the number of
points of X over F_q lying on exactly the components in A.  Strata are
either supplied explicitly or counted on the fly by brute force over the
canonical representatives of ``P^n(F_p)``.

With good reduction at q the local zeta value is the closed sum

    Z_q(s) = sum_A q**(-dim) * Card(X_A(F_q))
                 * prod_{a in A} (q - 1) / (q**(1 + d_a (s-1)) - 1),

which at s = 1 collapses to ``q**(-dim) * Card(X(F_q))``, the local
volume of the ambient space.  Extracting one Riemann zeta factor per
component leaves a convergent Euler product

    Phi(s) = prod_p lambda_p * Z_p(s) * prod_a (1 - p**-(1 + d_a (s-1))),

with convergence factors ``lambda_p = (1 - 1/p)**(rank_M1 - rank_M0)``.
The assembled product ``prod_a zeta(1 + d_a(s-1)) * Phi(s) * Z_oo(s)``
has a pole of order Card(components) at s = 1; its leading coefficient is
the adelic volume times ``prod_a 1/d_a``, and feeds the volume asymptotic
``V(B) ~ tau * B * (log B)**(a-1) / ((a-1)! * prod d_a)``.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import factorize, is_prime, primes_up_to, riemann_zeta, zeta_complex
from .errors import (
    BadPrimeError,
    LocalZetaPoleError,
    MissingStrataError,
    PoleAtOne,
    ResourceLimitError,
)
from .quadrature import ArchimedeanChart, archimedean_local_zeta, builtin_chart
from .varieties import Poly, VarietySpec

__all__ = [
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
    "volume_prediction",
    "volume_asymptotic",
    "default_bad_primes",
]

_FF_POINT_LIMIT = 10**8


@dataclass(frozen=True)
class BoundaryComponent:
    label: str
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"multiplicity of {self.label!r} must be >= 1")


@dataclass(frozen=True)
class LocalZetaValue:
    """Value of Z_q(s); ``q`` is None for an archimedean factor."""

    s: complex | Fraction
    value: complex | Fraction
    q: int | None


def default_bad_primes(variety: VarietySpec | None, boundary=None) -> frozenset[int]:
    """Primes dividing a leading coefficient of any defining polynomial.

    The leading term of a polynomial is the one with the lexicographically
    largest exponent vector.  This is a conservative desk-scale default;
    the true bad-reduction set is an input, not something computed here.
    """
    polys: list[Poly] = []
    if variety is not None:
        polys.extend(variety.polys)
        for sys in variety.excluded:
            polys.extend(sys)
    if boundary:
        for sys in boundary.values():
            polys.extend(sys)
    bad: set[int] = set()
    for p in polys:
        lead = max(p.terms, key=lambda t: t.exps)
        c = abs(lead.coef)
        if c > 1:
            bad |= set(factorize(c))
    return frozenset(bad)


def _eval_poly_mod(poly: Poly, point: list[int], p: int) -> int:
    total = 0
    for t in poly.terms:
        v = t.coef % p
        for x, e in zip(point, t.exps):
            if e:
                v = v * pow(x, e, p) % p
        total = (total + v) % p
    return total


def _eval_poly_mod_vec(poly: Poly, fixed: list[int], vec: np.ndarray, p: int):
    """Evaluate mod p with the last coordinate replaced by a vector.

    Returns a plain int when the specialized polynomial happens to be
    constant (no term survives with a positive power of the vectorized
    variable); callers rely on numpy broadcasting for that case.
    """
    last = len(fixed)
    const = 0
    total = None
    for t in poly.terms:
        c = t.coef % p
        for j in range(last):
            e = t.exps[j]
            if e and c:
                c = c * pow(fixed[j], e, p) % p
        if c == 0:
            continue
        e = t.exps[last]
        if e == 0:
            const = (const + c) % p
            continue
        term = vec * c % p
        for _ in range(e - 1):
            term = term * vec % p
        total = term if total is None else (total + term) % p
    if total is None:
        return const
    if const:
        total = (total + const) % p
    return total


def count_strata_ff(
    variety: VarietySpec,
    boundary: dict[str, tuple[Poly, ...]],
    p: int,
    bad_primes=frozenset(),
) -> dict[frozenset, int]:
    """Stratum counts over F_p by brute force over P^n(F_p).

    Each point of the variety is classified by the exact set of boundary
    components vanishing on it.  Canonical representatives (first nonzero
    coordinate equal to 1) are enumerated slab by slab with the innermost
    coordinate vectorized.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p in bad_primes:
        raise BadPrimeError(p, "supply its local data explicitly")
    n = variety.n
    total_points = (p ** (n + 1) - 1) // (p - 1)
    if total_points > _FF_POINT_LIMIT:
        raise ResourceLimitError(
            f"P^{n}(F_{p}) has {total_points} points, over the "
            f"{_FF_POINT_LIMIT} brute-force limit"
        )
    labels = list(boundary)
    systems = [boundary[lb] for lb in labels]
    nbits = len(labels)
    counts = np.zeros(1 << nbits, dtype=np.int64)

    def scan(point_prefix: list[int], remaining: int):
        """Fill counts for points point_prefix + (free values)^remaining."""
        if remaining == 0:
            pt = point_prefix
            if any(_eval_poly_mod(q, pt, p) != 0 for q in variety.polys):
                return
            mask = 0
            for bit, sys in enumerate(systems):
                if all(_eval_poly_mod(q, pt, p) == 0 for q in sys):
                    mask |= 1 << bit
            counts[mask] += 1
            return
        if remaining == 1:
            vec = np.arange(p, dtype=np.int64)
            on_x = np.ones(p, dtype=bool)
            for q in variety.polys:
                on_x &= _eval_poly_mod_vec(q, point_prefix, vec, p) == 0
            if not on_x.any():
                return
            mask = np.zeros(p, dtype=np.int64)
            for bit, sys in enumerate(systems):
                vanish = np.ones(p, dtype=bool)
                for q in sys:
                    vanish &= _eval_poly_mod_vec(q, point_prefix, vec, p) == 0
                mask |= vanish.astype(np.int64) << bit
            counts[:] += np.bincount(mask[on_x], minlength=1 << nbits)
            return
        for v in range(p):
            scan(point_prefix + [v], remaining - 1)

    for slab in range(n + 1):
        scan([0] * slab + [1], n - slab)

    out: dict[frozenset, int] = {}
    for mask in range(1 << nbits):
        if counts[mask]:
            key = frozenset(labels[b] for b in range(nbits) if mask >> b & 1)
            out[key] = int(counts[mask])
    return out


class NCDatum:
    """Normal-crossings boundary data for the local zeta machinery.

    Stratum counts come from an explicit per-prime table, from brute-force
    counting against an attached variety spec, or both (the explicit table
    wins).  ``archimedean`` optionally names a built-in chart whose local
    integral completes the global product.
    """

    def __init__(
        self,
        dim: int,
        components,
        rank_M0: int = 0,
        rank_M1: int = 0,
        bad_primes=None,
        strata: dict | None = None,
        variety: VarietySpec | None = None,
        boundary: dict | None = None,
        archimedean: str | ArchimedeanChart | None = None,
    ):
        if dim < 0:
            raise ValueError("dimension must be >= 0")
        if rank_M0 < 0 or rank_M1 < 0:
            raise ValueError("module ranks must be >= 0")
        self.dim = dim
        self.components = tuple(
            c if isinstance(c, BoundaryComponent) else BoundaryComponent(*c)
            for c in components
        )
        if len({c.label for c in self.components}) != len(self.components):
            raise ValueError("component labels must be distinct")
        self.rank_M0 = rank_M0
        self.rank_M1 = rank_M1
        self.variety = variety
        if boundary is not None:
            missing = {c.label for c in self.components} ^ set(boundary)
            if missing:
                raise ValueError(f"boundary systems mismatch component labels: {missing}")
        self.boundary = dict(boundary) if boundary else None
        if bad_primes is None:
            bad_primes = default_bad_primes(variety, self.boundary)
        self.bad_primes = frozenset(int(p) for p in bad_primes)
        self._explicit: dict[int, dict[frozenset, int]] = {}
        if strata:
            labels = {c.label for c in self.components}
            for q, table in strata.items():
                q = int(q)
                norm: dict[frozenset, int] = {}
                for key, cnt in table.items():
                    key = frozenset(key) if not isinstance(key, str) else frozenset(
                        lb for lb in key.split(",") if lb
                    )
                    if not key <= labels:
                        raise ValueError(f"stratum {sorted(key)} uses unknown labels")
                    if cnt < 0:
                        raise ValueError("stratum counts must be >= 0")
                    norm[key] = int(cnt)
                self._explicit[q] = norm
        if isinstance(archimedean, str):
            archimedean = builtin_chart(archimedean)
        self.archimedean = archimedean
        self._cache: dict[int, dict[frozenset, int]] = {}

    @property
    def pole_order(self) -> int:
        return len(self.components)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(c.d for c in self.components)

    def has_strata(self, q: int) -> bool:
        return q in self._explicit or self.variety is not None

    def strata_for(self, q: int) -> dict[frozenset, int]:
        if q in self._explicit:
            return self._explicit[q]
        if q in self.bad_primes:
            raise BadPrimeError(q, "no explicit stratum data was supplied")
        if self.variety is None:
            raise MissingStrataError(
                f"no stratum data for q={q} and no variety to count on"
            )
        if q not in self._cache:
            self._cache[q] = count_strata_ff(
                self.variety, self.boundary or {}, q, self.bad_primes
            )
        return self._cache[q]

    def good_primes(self, limit: int) -> list[int]:
        return [p for p in primes_up_to(limit) if p not in self.bad_primes]

    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "components": [{"label": c.label, "d": c.d} for c in self.components],
            "rank_M0": self.rank_M0,
            "rank_M1": self.rank_M1,
            "bad_primes": sorted(self.bad_primes),
        }
        if self._explicit:
            out["strata"] = {
                str(q): {",".join(sorted(k)): v for k, v in table.items()}
                for q, table in self._explicit.items()
            }
        if self.variety is not None:
            out["variety"] = self.variety.to_json()
        if self.boundary is not None:
            out["boundary"] = {
                lb: [p.to_json() for p in sys] for lb, sys in self.boundary.items()
            }
        if self.archimedean is not None:
            out["archimedean"] = self.archimedean.name
        return out

    @classmethod
    def from_json(cls, data: dict) -> "NCDatum":
        if "dim" not in data or "components" not in data:
            raise ValueError("a boundary datum needs 'dim' and 'components'")
        variety = None
        if data.get("variety") is not None:
            variety = VarietySpec.from_json(data["variety"])
        boundary = None
        if data.get("boundary") is not None:
            boundary = {
                lb: tuple(Poly.from_json(p) for p in sys)
                for lb, sys in data["boundary"].items()
            }
        return cls(
            dim=int(data["dim"]),
            components=[(c["label"], int(c["d"])) for c in data["components"]],
            rank_M0=int(data.get("rank_M0", 0)),
            rank_M1=int(data.get("rank_M1", 0)),
            bad_primes=data.get("bad_primes"),
            strata=data.get("strata"),
            variety=variety,
            boundary=boundary,
            archimedean=data.get("archimedean"),
        )


def convergence_factor(rank_M0: int, rank_M1: int, q: int) -> Fraction:
    """Local convergence factor ``(1 - 1/q)**(rank_M1 - rank_M0)``.

    For trivially-acted modules the local L-factor at 1 of a rank-r module
    is ``(1 - 1/q)**(-r)``, so this is the ratio of the M0 and M1 factors.
    Both ranks zero gives 1.
    """
    if rank_M0 < 0 or rank_M1 < 0:
        raise ValueError("module ranks must be >= 0")
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    return Fraction(q - 1, q) ** (rank_M1 - rank_M0)


def _is_exact_scalar(s) -> bool:
    return isinstance(s, (int, Fraction)) or (isinstance(s, float) and s == int(s))


def denef_local_zeta(datum: NCDatum, q: int, s) -> LocalZetaValue:
    """Closed-form local zeta value of the datum at a good prime.

    Exact rational arithmetic is used whenever every exponent
    ``1 + d_a (s - 1)`` is an integer (notably at s = 1, where the value
    reduces to ``q**(-dim) * Card(X(F_q))``); otherwise complex floating
    point.  Evaluation at a pole of a local factor raises
    :class:`LocalZetaPoleError` carrying the offending component.
    """
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    strata = datum.strata_for(q)
    comps = {c.label: c.d for c in datum.components}
    for key in strata:
        if not key <= set(comps):
            raise ValueError(f"stratum {sorted(key)} uses unknown component labels")

    exact = _is_exact_scalar(s) and all(
        (Fraction(s) - 1) * d == int((Fraction(s) - 1) * d) for d in comps.values()
    )
    if exact:
        sf = Fraction(s)
        factors: dict[str, Fraction] = {}
        for label, d in comps.items():
            w = 1 + d * (sf - 1)
            if w == 0:
                raise LocalZetaPoleError(label, q, s)
            qw = Fraction(q) ** int(w)
            if qw == 1:
                raise LocalZetaPoleError(label, q, s)
            factors[label] = Fraction(q - 1) / (qw - 1)
        total = Fraction(0)
        qdim = Fraction(1, q**datum.dim)
        for key, cnt in strata.items():
            term = qdim * cnt
            for label in key:
                term *= factors[label]
            total += term
        return LocalZetaValue(sf, total, q)

    sc = complex(s)
    lnq = math.log(q)
    cfactors: dict[str, complex] = {}
    for label, d in comps.items():
        w = 1 + d * (sc - 1)
        qw = cmath.exp(w * lnq)
        if abs(qw - 1) < 1e-12:
            raise LocalZetaPoleError(label, q, s)
        cfactors[label] = (q - 1) / (qw - 1)
    totalc = 0j
    qdimc = q ** (-float(datum.dim))
    for key, cnt in strata.items():
        termc = qdimc * cnt
        for label in key:
            termc *= cfactors[label]
        totalc += termc
    return LocalZetaValue(sc, totalc, q)


@dataclass(frozen=True)
class RegularizedProduct:
    """Euler product with its zeta factors split off.

    ``regular_part`` is the convergent product Phi(s) over the good primes
    up to the cutoff; ``assembled`` is the full value
    ``prod_a zeta(1 + d_a(s-1)) * Phi(s) * Z_oo(s)``, or a
    :class:`PoleAtOne` marker when s = 1 exactly.
    """

    pole_order: int
    regular_part: complex
    assembled: complex | PoleAtOne
    zeta_factor: complex
    arch_factor: complex
    prime_cutoff: int


@dataclass(frozen=True)
class LeadingConstant:
    """Limit of (s-1)**a times the assembled product at s -> 1.

    ``tau`` is the adelic volume (finite product times the archimedean
    factor); ``value`` divides it by the product of the multiplicities.
    ``tail_bound`` estimates the relative error from truncating the Euler
    product at ``prime_cutoff``.
    """

    value: float
    tau: float
    tail_bound: float
    prime_cutoff: int


def _local_log_factor(datum: NCDatum, p: int, s, lam: float) -> complex:
    zp = denef_local_zeta(datum, p, s).value
    zp = complex(zp)
    for d in datum.multiplicities:
        w = 1 + d * (complex(s) - 1)
        zp *= 1 - cmath.exp(-w * math.log(p))
    return cmath.log(lam * zp)


def _phi_log(datum: NCDatum, s, prime_cutoff: int, threads: int = 1):
    """Sum of local log-factors over good primes, plus a tail estimate.

    The summation order is fixed (ascending primes) so results are
    bit-identical regardless of how the per-prime work is scheduled.
    """
    primes = datum.good_primes(prime_cutoff)
    if not primes:
        return 0j, 0.0
    rank_diff = datum.rank_M1 - datum.rank_M0

    def factor(p: int) -> complex:
        lam = ((p - 1) / p) ** rank_diff
        return _local_log_factor(datum, p, s, lam)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=min(threads, 32)) as pool:
            logs = list(pool.map(factor, primes))
    else:
        logs = [factor(p) for p in primes]
    total = 0j
    for v in logs:
        total += v
    scale = 0.0
    for p, v in zip(primes, logs):
        if p * p >= prime_cutoff:
            scale = max(scale, p * p * abs(v))
    tail = scale / prime_cutoff if prime_cutoff > 1 else 0.0
    return total, tail


def _validate_s(s):
    sc = complex(s)
    if sc.imag != 0 and sc.real < 1.05:
        raise ValueError(
            "complex evaluation is restricted to Re(s) >= 1.05; "
            f"got {s}"
        )
    if sc.imag == 0 and sc.real < 1:
        raise ValueError(f"evaluation is restricted to real s >= 1, got {s}")
    return sc


def regularized_euler_product(
    datum: NCDatum, s, prime_cutoff: int, threads: int = 1
) -> RegularizedProduct:
    """Assemble the global product at s from its regularized pieces.

    At s = 1 exactly the result carries a :class:`PoleAtOne` marker (order
    and leading coefficient) in place of a value.
    """
    sc = _validate_s(s)
    a = datum.pole_order
    if sc == 1:
        lc = leading_constant(datum, prime_cutoff, threads=threads)
        log_phi, _ = _phi_log(datum, 1, prime_cutoff, threads=threads)
        phi = cmath.exp(log_phi)
        arch = (
            archimedean_local_zeta(datum.archimedean, 1.0)
            if datum.archimedean is not None
            else 1.0
        )
        return RegularizedProduct(
            pole_order=a,
            regular_part=phi,
            assembled=PoleAtOne(a, lc.value),
            zeta_factor=math.inf if a else 1.0,
            arch_factor=complex(arch),
            prime_cutoff=prime_cutoff,
        )
    log_phi, _ = _phi_log(datum, sc if sc.imag else sc.real, prime_cutoff, threads)
    phi = cmath.exp(log_phi)
    zeta_factor = 1 + 0j
    for d in datum.multiplicities:
        w = 1 + d * (sc - 1)
        zeta_factor *= zeta_complex(w) if sc.imag else riemann_zeta(w.real)
    arch = (
        archimedean_local_zeta(datum.archimedean, sc if sc.imag else sc.real)
        if datum.archimedean is not None
        else 1.0
    )
    assembled = zeta_factor * phi * arch
    if sc.imag == 0:
        assembled = complex(assembled.real, 0.0)
    return RegularizedProduct(
        pole_order=a,
        regular_part=phi,
        assembled=assembled,
        zeta_factor=zeta_factor,
        arch_factor=complex(arch),
        prime_cutoff=prime_cutoff,
    )


def leading_constant(
    datum: NCDatum, prime_cutoff: int, threads: int = 1
) -> LeadingConstant:
    """Leading coefficient of the order-a pole at s = 1.

    Each zeta factor contributes residue 1/d_a; what remains is the
    convergent product Phi(1) (each local factor is the local volume times
    the convergence factor and one factor (1 - 1/p) per component) times
    the archimedean volume.
    """
    log_phi, tail = _phi_log(datum, 1, prime_cutoff, threads=threads)
    phi = cmath.exp(log_phi).real
    arch = (
        archimedean_local_zeta(datum.archimedean, 1.0)
        if datum.archimedean is not None
        else 1.0
    )
    tau = phi * float(arch)
    value = tau
    for d in datum.multiplicities:
        value /= d
    return LeadingConstant(
        value=value, tau=tau, tail_bound=tail, prime_cutoff=prime_cutoff
    )


def volume_prediction(tau: float, multiplicities, B: float) -> float:
    """Predicted volume ``tau * B * (log B)**(a-1) / ((a-1)! * prod d_a)``."""
    if B <= 1:
        raise ValueError(f"the volume asymptotic needs B > 1, got {B}")
    ds = list(multiplicities)
    a = len(ds)
    if a == 0:
        raise ValueError("the volume asymptotic needs at least one boundary component")
    value = tau * B * math.log(B) ** (a - 1) / math.factorial(a - 1)
    for d in ds:
        value /= d
    return value


def volume_asymptotic(
    datum: NCDatum, B: float, prime_cutoff: int, threads: int = 1
) -> float:
    """Volume prediction evaluated with the datum's own leading constant."""
    lc = leading_constant(datum, prime_cutoff, threads=threads)
    return volume_prediction(lc.tau, datum.multiplicities, B)
