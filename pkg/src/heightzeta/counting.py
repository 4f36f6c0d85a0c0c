"""Counting and enumeration of rational points of bounded height.

Fast exact counts for the full projective space come from Mobius
inversion over primitive lattice vectors:

    N(B) = 1/2 * sum_{k<=B} mu(k) * ((2*floor(B/k)+1)**(n+1) - 1)

General subschemes are enumerated by coordinate slabs: the first nonzero
coordinate runs over ``1..B`` (sign convention), the remaining ones over
``-B..B`` with polynomial pruning, and the last coordinate is resolved
exactly.  Two interchangeable engines implement that walk: a compiled
kernel (int64, degree <= 2 in the last coordinate) and a pure-Python
reference that handles everything in arbitrary precision.  The compiled
engine is chosen at import when available; either way the stream is
deterministic and identical across engines, thread counts, and slab
partitions.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from . import _engine_py
from .arith import mobius_sieve
from .heights import PrimitivePoint
from .varieties import VarietySpec

try:  # compiled kernel is optional
    from . import _fastenum as _fast
except ImportError:  # pragma: no cover - depends on build environment
    _fast = None

__all__ = [
    "CountSeries",
    "active_engine",
    "count_projective",
    "projective_height_histogram",
    "iter_coordinate_blocks",
    "enumerate_points",
    "count_points",
    "count_series",
    "circle_count",
]

_MAX_VARS = 32
_MAX_LEAF_POLYS = 64
_EVAL_LIMIT = 1 << 61
_QUAD_LIMIT = 1 << 30


def active_engine() -> str:
    """Name of the engine picked at import time."""
    if _fast is not None and not os.environ.get("HEIGHTZETA_PURE"):
        return "compiled"
    return "pure"


def count_projective(n: int, B: int) -> int:
    """Exact number of points of P^n(Q) with height at most B."""
    if n < 1:
        raise ValueError(f"projective dimension must be >= 1, got {n}")
    if B < 1:
        raise ValueError(f"height bound must be >= 1, got {B}")
    mu = mobius_sieve(B)
    total = 0
    for k in range(1, B + 1):
        if mu[k]:
            total += mu[k] * ((2 * (B // k) + 1) ** (n + 1) - 1)
    return total // 2


def projective_height_histogram(n: int, B: int) -> list[int]:
    """Number of points of P^n(Q) of height exactly H, for H = 0..B.

    Differencing the Mobius formula leaves a divisor sum,

        a_H = 1/2 * sum_{k | H} mu(k) * ((2H/k+1)**(n+1) - (2H/k-1)**(n+1)),

    which a sieve evaluates for all H <= B in O(B log B) integer
    operations.  For n = 1 this reduces to four times Euler's totient.
    """
    if n < 1 or B < 1:
        raise ValueError("projective_height_histogram expects n >= 1, B >= 1")
    mu = mobius_sieve(B)
    hist = [0] * (B + 1)
    for k in range(1, B + 1):
        m = mu[k]
        if not m:
            continue
        for h in range(k, B + 1, k):
            q = h // k
            hist[h] += m * ((2 * q + 1) ** (n + 1) - (2 * q - 1) ** (n + 1))
    for h in range(1, B + 1):
        hist[h] //= 2
    return hist


@dataclass(frozen=True)
class CountSeries:
    """Ordered samples (B, N(B)) of a counting function."""

    rows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev_b = 0
        prev_n = -1
        for b, nn in self.rows:
            if b <= prev_b:
                raise ValueError("bounds B must be strictly increasing")
            if nn < max(prev_n, 0):
                raise ValueError("counts N must be nondecreasing and >= 0")
            prev_b, prev_n = b, nn

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def to_csv(self) -> str:
        lines = ["B,N"]
        lines.extend(f"{b},{nn}" for b, nn in self.rows)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "CountSeries":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines or lines[0].replace(" ", "") != "B,N":
            raise ValueError("count series CSV must start with a 'B,N' header")
        rows = []
        for ln in lines[1:]:
            b_str, n_str = ln.split(",")
            rows.append((int(b_str), int(n_str)))
        return cls(tuple(rows))


# ---------------------------------------------------------------------------
# Engine dispatch


def _fast_tables(spec: VarietySpec, B: int):
    """Flat int64/int32 tables for the compiled kernel, or None if out of range."""
    if _fast is None or os.environ.get("HEIGHTZETA_PURE"):
        return None
    k = spec.n + 1
    if k > _MAX_VARS or B > 2**31:
        return None
    det, leaf = [], []
    for p in spec.polys:
        if p.max_var() < 0:
            return ()  # nonzero constant equation: empty variety, no kernel run
        if p.eval_bound(B) > _EVAL_LIMIT:
            return None
        dw = p.degree_in(spec.n)
        if dw == 0:
            det.append(p)
        elif dw <= 2:
            if dw == 2 and p.eval_bound(B) > _QUAD_LIMIT:
                return None
            leaf.append(p)
        else:
            return None
    if len(leaf) > _MAX_LEAF_POLYS:
        return None
    for sys in spec.excluded:
        for p in sys:
            if p.eval_bound(B) > _EVAL_LIMIT:
                return None

    det.sort(key=lambda p: p.max_var())
    d_coef, d_exps, d_tstart = [], [], [0]
    d_by_depth = [0] * (k + 1)
    for p in det:
        depth = p.max_var() + 1
        d_by_depth[depth] += 1
        for t in p.terms:
            d_coef.append(t.coef)
            d_exps.append(t.exps)
        d_tstart.append(len(d_coef))
    starts = [0]
    for d in range(k):
        starts.append(starts[-1] + d_by_depth[d])
    d_by_depth = starts

    l_coef, l_exps, l_gstart = [], [], []
    for p in leaf:
        row = [len(l_coef)]
        for e in range(3):
            for t in p.terms:
                if t.exps[spec.n] == e:
                    l_coef.append(t.coef)
                    l_exps.append(t.exps[: spec.n])
            row.append(len(l_coef))
        l_gstart.append(row)

    e_coef, e_exps, e_tstart, e_sys = [], [], [0], [0]
    for sys in spec.excluded:
        for p in sys:
            for t in p.terms:
                e_coef.append(t.coef)
                e_exps.append(t.exps)
            e_tstart.append(len(e_coef))
        e_sys.append(len(e_tstart) - 1)

    def i64(x):
        return np.asarray(x, dtype=np.int64)

    def i32m(x, width):
        return np.asarray(x, dtype=np.int32).reshape(len(x), width)

    return (
        i64(d_coef),
        i32m(d_exps, k),
        np.asarray(d_tstart, dtype=np.int32),
        np.asarray(d_by_depth, dtype=np.int32),
        len(leaf),
        i64(l_coef),
        i32m(l_exps, k - 1),
        np.asarray(l_gstart, dtype=np.int32).reshape(len(leaf), 4),
        len(spec.excluded),
        i64(e_coef),
        i32m(e_exps, k),
        np.asarray(e_tstart, dtype=np.int32),
        np.asarray(e_sys, dtype=np.int32),
    )


def _blocks_range(spec, B, lo, hi, tables):
    """Blocks for first coordinate in [lo, hi], as int64 arrays."""
    k = spec.n + 1
    if tables == ():
        return
    if tables is not None:
        yield from _fast.iter_blocks(k, B, lo, hi, tables)
        return
    for block in _engine_py.iter_blocks(spec, B, lo, hi):
        yield np.array(block, dtype=np.int64).reshape(len(block), k)


def iter_coordinate_blocks(
    spec: VarietySpec, B: int, threads: int = 1
) -> Iterator[np.ndarray]:
    """Stream the enumeration as int64 arrays of shape (m, n+1).

    Rows are normalized primitive coordinates in lexicographic order;
    concatenating all blocks gives the full point list.  ``threads``
    partitions the range of the first coordinate; the output stream is
    identical for every thread count.
    """
    if B < 1:
        raise ValueError(f"height bound must be >= 1, got {B}")
    tables = _fast_tables(spec, B)
    if threads <= 1 or B < 8:
        yield from _blocks_range(spec, B, 0, B, tables)
        return
    threads = min(threads, 64)
    edges = [0] + [1 + (B * i) // threads for i in range(threads + 1)]
    chunks = [
        (edges[i], edges[i + 1] - 1)
        for i in range(len(edges) - 1)
        if edges[i] <= edges[i + 1] - 1
    ]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(lambda c: list(_blocks_range(spec, B, c[0], c[1], tables)), c)
            for c in chunks
        ]
        for fut in futures:
            yield from fut.result()


def enumerate_points(
    spec: VarietySpec, B: int, threads: int = 1
) -> Iterator[PrimitivePoint]:
    """Yield every rational point of the spec with height <= B.

    Deterministic lexicographic order, no duplicates; an empty stream is a
    valid result.  Termination is guaranteed: only finitely many primitive
    coordinate tuples fit under any height bound.
    """
    for block in iter_coordinate_blocks(spec, B, threads=threads):
        for row in block:
            yield PrimitivePoint(tuple(int(v) for v in row))


def count_points(spec: VarietySpec, B: int, threads: int = 1) -> int:
    return sum(
        block.shape[0] for block in iter_coordinate_blocks(spec, B, threads=threads)
    )


def count_series(
    spec: VarietySpec, Bs: Iterable[int], threads: int = 1
) -> CountSeries:
    """N_X(B) for each bound in ``Bs``, sharing one enumeration pass.

    Points are enumerated once up to max(Bs) and bucketed by exact height;
    the cumulative histogram then answers every threshold.
    """
    Bs = [int(b) for b in Bs]
    if not Bs or any(b2 <= b1 for b1, b2 in zip(Bs, Bs[1:])) or Bs[0] < 1:
        raise ValueError("bounds must be a strictly increasing list of integers >= 1")
    bmax = Bs[-1]
    if spec.is_full_space:
        hist = projective_height_histogram(spec.n, bmax)
        acc = np.cumsum(hist)
        return CountSeries(tuple((b, int(acc[b])) for b in Bs))
    counts = np.zeros(bmax + 1, dtype=np.int64)
    for block in iter_coordinate_blocks(spec, bmax, threads=threads):
        heights = np.max(np.abs(block), axis=1)
        counts += np.bincount(heights, minlength=bmax + 1)
    acc = np.cumsum(counts)
    return CountSeries(tuple((b, int(acc[b])) for b in Bs))


# ---------------------------------------------------------------------------
# Lattice points in balls (the circle problem)


def _ball_count(n: int, r2_num: int, r2_den: int) -> int:
    """Integer vectors of squared euclidean norm <= r2_num/r2_den."""
    if r2_num < 0:
        return 0
    if n == 1:
        return 2 * math.isqrt(r2_num // r2_den) + 1
    xmax = math.isqrt(r2_num // r2_den)
    total = _ball_count(n - 1, r2_num, r2_den)
    for x in range(1, xmax + 1):
        total += 2 * _ball_count(n - 1, r2_num - x * x * r2_den, r2_den)
    return total


def circle_count(n: int, B, norm: str = "euclidean") -> int:
    """Exact count of integer vectors in Z^n with ||x|| <= B (origin included).

    Euclidean comparisons are done on B**2 in exact rational arithmetic, so
    fractional bounds are handled without rounding artifacts.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    b = Fraction(B)
    if b < 0:
        raise ValueError(f"radius must be >= 0, got {B}")
    if norm == "sup":
        return (2 * math.floor(b) + 1) ** n
    if norm != "euclidean":
        raise ValueError(f"unknown norm {norm!r}; use 'euclidean' or 'sup'")
    b2 = b * b
    return _ball_count(n, b2.numerator, b2.denominator)
