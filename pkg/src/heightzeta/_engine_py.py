"""Pure-Python enumeration engine.

Reference implementation of bounded-height point enumeration: transparent
nested loops in exact (arbitrary-precision) integer arithmetic.  It is the
correctness oracle for the compiled kernel and the fallback when that
kernel is unavailable or refuses an input (degree or overflow limits).

Enumeration order
-----------------
Points are produced in lexicographic order of their normalized coordinate
tuples.  The first nonzero coordinate is positive by convention, so at
every depth the candidate values run over ``0..B`` while the prefix is
still all zero and over ``-B..B`` afterwards; the induced generation order
is exactly lexicographic.

Pruning
-------
* a polynomial whose variables are all assigned must vanish on the prefix,
  otherwise the whole subtree is skipped;
* polynomials involving the last coordinate are specialized per prefix to
  exact univariate coefficients and evaluated by Horner's rule;
* the running gcd of the prefix makes the final primitivity test a single
  ``gcd`` with the last coordinate.
"""

from __future__ import annotations

import math
from typing import Iterator

from .varieties import VarietySpec

BLOCK_ROWS = 1 << 15


def _not_excluded(pt, excluded) -> bool:
    for sys in excluded:
        if all(p.eval(pt) == 0 for p in sys):
            return False
    return True


def iter_blocks(
    spec: VarietySpec, B: int, x0_lo: int | None = None, x0_hi: int | None = None
) -> Iterator[list[tuple[int, ...]]]:
    """Yield lists of normalized coordinate tuples, in lexicographic order.

    ``x0_lo``/``x0_hi`` restrict the first coordinate to a subrange of
    ``0..B``; concatenating the streams of a partition of that range
    reproduces the full stream, which is the slab-parallelism contract.
    """
    if B < 1:
        raise ValueError(f"height bound must be >= 1, got {B}")
    n = spec.n
    by_depth: list[list] = [[] for _ in range(n + 1)]
    leaf_polys = []
    for p in spec.polys:
        mv = p.max_var()
        if mv < n:
            by_depth[mv + 1].append(p)
        else:
            leaf_polys.append(p)
    if by_depth[0]:
        return  # a nonzero constant equation: empty variety

    # Terms of each leaf polynomial grouped by the exponent of the last
    # coordinate, for per-prefix univariate specialization.
    leaf_groups = []
    for p in leaf_polys:
        groups: list[list] = [[] for _ in range(p.degree_in(n) + 1)]
        for t in p.terms:
            groups[t.exps[n]].append((t.coef, t.exps[:n]))
        leaf_groups.append(groups)

    excluded = spec.excluded
    lo = 0 if x0_lo is None else max(0, x0_lo)
    hi = B if x0_hi is None else min(B, x0_hi)
    if lo > hi:
        return

    buf: list[tuple[int, ...]] = []

    def specialize(prefix):
        out = []
        for groups in leaf_groups:
            cs = []
            for grp in groups:
                c = 0
                for coef, exps in grp:
                    v = coef
                    for x, e in zip(prefix, exps):
                        if e:
                            v *= x**e
                    c += v
                cs.append(c)
            out.append(cs)
        return out

    def leaf(prefix, all_zero, g):
        wrange = range(1, B + 1) if all_zero else range(-B, B + 1)
        coeffs = specialize(prefix)
        if all(all(c == 0 for c in cs) for cs in coeffs):
            # Last coordinate unconstrained: primitivity only.
            if g == 1 and not excluded:
                buf.extend(prefix + (w,) for w in wrange)
            else:
                for w in wrange:
                    if math.gcd(g, w) != 1:
                        continue
                    pt = prefix + (w,)
                    if _not_excluded(pt, excluded):
                        buf.append(pt)
            return
        for w in wrange:
            ok = True
            for cs in coeffs:
                v = 0
                for c in reversed(cs):
                    v = v * w + c
                if v != 0:
                    ok = False
                    break
            if ok and math.gcd(g, w) == 1:
                pt = prefix + (w,)
                if _not_excluded(pt, excluded):
                    buf.append(pt)

    def rec(depth, prefix, all_zero, g):
        if depth == n:
            leaf(prefix, all_zero, g)
            if len(buf) >= BLOCK_ROWS:
                block = list(buf)
                buf.clear()
                yield block
            return
        if depth == 0:
            values = range(lo, hi + 1)
        elif all_zero:
            values = range(0, B + 1)
        else:
            values = range(-B, B + 1)
        checks = by_depth[depth + 1]
        for v in values:
            prefix2 = prefix + (v,)
            if checks and any(p.eval(prefix2) != 0 for p in checks):
                continue
            yield from rec(depth + 1, prefix2, all_zero and v == 0, math.gcd(g, v))

    yield from rec(0, (), True, 0)
    if buf:
        yield buf
