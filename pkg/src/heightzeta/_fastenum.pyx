# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel.

Same stream as ``_engine_py`` (normalized coordinate tuples in
lexicographic order) but with the recursion, pruning, and last-coordinate
root solving done in C on int64 values.  The dispatcher only routes inputs
here after checking that every polynomial evaluation fits comfortably in
int64 and that the last coordinate occurs with degree <= 2, so all
arithmetic below is overflow-safe by construction.
"""

import numpy as np


cdef long long c_gcd(long long a, long long b) noexcept:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef long long c_isqrt(long long d) noexcept:
    # d >= 0; exact floor square root with float seed and adjustment
    cdef long long r = <long long> ((<long double> d) ** 0.5)
    while r > 0 and r * r > d:
        r -= 1
    while (r + 1) * (r + 1) <= d:
        r += 1
    return r


cdef class _Kernel:
    cdef int k, n
    cdef long long B
    cdef long long prefix[32]
    # determined polynomials, grouped by the depth at which they resolve
    cdef long long[::1] d_coef
    cdef int[:, ::1] d_exps
    cdef int[::1] d_tstart      # term range per determined poly
    cdef int[::1] d_by_depth    # poly index range per depth (len k+1)
    # leaf polynomials: term ranges per (poly, exponent of last coord)
    cdef int n_leaf
    cdef long long[::1] l_coef
    cdef int[:, ::1] l_exps     # exponents of the first k-1 coords
    cdef int[:, ::1] l_gstart   # (n_leaf, 4): term starts for w-degree 0..2
    cdef long long lcoeffs[64][3]
    # excluded systems: full-width polynomials
    cdef int n_exsys
    cdef long long[::1] e_coef
    cdef int[:, ::1] e_exps
    cdef int[::1] e_tstart
    cdef int[::1] e_sys
    # output buffer
    cdef long long[:, ::1] buf
    cdef int buf_rows, count
    cdef list pending

    def __init__(self, k, B, d_coef, d_exps, d_tstart, d_by_depth,
                 n_leaf, l_coef, l_exps, l_gstart,
                 n_exsys, e_coef, e_exps, e_tstart, e_sys):
        self.k = k
        self.n = k - 1
        self.B = B
        self.d_coef = d_coef
        self.d_exps = d_exps
        self.d_tstart = d_tstart
        self.d_by_depth = d_by_depth
        self.n_leaf = n_leaf
        self.l_coef = l_coef
        self.l_exps = l_exps
        self.l_gstart = l_gstart
        self.n_exsys = n_exsys
        self.e_coef = e_coef
        self.e_exps = e_exps
        self.e_tstart = e_tstart
        self.e_sys = e_sys
        self.buf_rows = 1 << 15
        self.count = 0
        self.buf = np.empty((self.buf_rows, k), dtype=np.int64)
        self.pending = []

    cdef long long eval_determined(self, int ip) noexcept:
        cdef long long total = 0, v
        cdef int t, j, e
        for t in range(self.d_tstart[ip], self.d_tstart[ip + 1]):
            v = self.d_coef[t]
            for j in range(self.k):
                e = self.d_exps[t, j]
                while e:
                    v *= self.prefix[j]
                    e -= 1
            total += v
        return total

    cdef bint check_determined(self, int depth) noexcept:
        cdef int ip
        for ip in range(self.d_by_depth[depth], self.d_by_depth[depth + 1]):
            if self.eval_determined(ip) != 0:
                return False
        return True

    cdef void specialize_leaf(self) noexcept:
        # univariate coefficients of each leaf polynomial at the current prefix
        cdef int ip, e, t, j, ex
        cdef long long c, v
        for ip in range(self.n_leaf):
            for e in range(3):
                c = 0
                for t in range(self.l_gstart[ip, e], self.l_gstart[ip, e + 1]):
                    v = self.l_coef[t]
                    for j in range(self.k - 1):
                        ex = self.l_exps[t, j]
                        while ex:
                            v *= self.prefix[j]
                            ex -= 1
                    c += v
                self.lcoeffs[ip][e] = c

    cdef bint not_excluded(self) noexcept:
        cdef int s, ip, t, j, e
        cdef long long v, total
        cdef bint all_zero
        for s in range(self.n_exsys):
            all_zero = True
            for ip in range(self.e_sys[s], self.e_sys[s + 1]):
                total = 0
                for t in range(self.e_tstart[ip], self.e_tstart[ip + 1]):
                    v = self.e_coef[t]
                    for j in range(self.k):
                        e = self.e_exps[t, j]
                        while e:
                            v *= self.prefix[j]
                            e -= 1
                    total += v
                if total != 0:
                    all_zero = False
                    break
            if all_zero:
                return False
        return True

    cdef int emit(self, long long w) except -1:
        cdef int j
        self.prefix[self.n] = w
        if self.n_exsys and not self.not_excluded():
            return 0
        for j in range(self.k):
            self.buf[self.count, j] = self.prefix[j]
        self.count += 1
        if self.count == self.buf_rows:
            self.pending.append(np.array(self.buf[: self.count]))
            self.count = 0
        return 0

    cdef int try_root(self, long long w, long long wlo, long long g) except -1:
        # verify all leaf polynomials vanish at w, then primitivity
        cdef int ip
        cdef long long v
        if w < wlo or w > self.B:
            return 0
        for ip in range(self.n_leaf):
            v = self.lcoeffs[ip][2]
            v = v * w + self.lcoeffs[ip][1]
            v = v * w + self.lcoeffs[ip][0]
            if v != 0:
                return 0
        if c_gcd(g, w) != 1:
            return 0
        return self.emit(w)

    cdef int leaf(self, bint all_zero, long long g) except -1:
        cdef long long wlo = 1 if all_zero else -self.B
        cdef long long w, c0, c1, c2, disc, r, den, r1, r2
        cdef int ip, pick = -1
        self.specialize_leaf()
        for ip in range(self.n_leaf):
            if (self.lcoeffs[ip][0] or self.lcoeffs[ip][1]
                    or self.lcoeffs[ip][2]):
                pick = ip
                break
        if pick < 0:
            # last coordinate unconstrained
            for w in range(wlo, self.B + 1):
                if c_gcd(g, w) == 1:
                    self.emit(w)
            return 0
        c0 = self.lcoeffs[pick][0]
        c1 = self.lcoeffs[pick][1]
        c2 = self.lcoeffs[pick][2]
        if c2 == 0 and c1 == 0:
            return 0  # nonzero constant: no solutions
        if c2 == 0:
            if c0 % c1 == 0:
                self.try_root(-(c0 // c1), wlo, g)
            return 0
        disc = c1 * c1 - 4 * c2 * c0
        if disc < 0:
            return 0
        r = c_isqrt(disc)
        if r * r != disc:
            return 0
        den = 2 * c2
        r1 = -c1 - r
        r2 = -c1 + r
        if den < 0:
            r1, r2 = r2, r1
        if r1 % den == 0:
            self.try_root(r1 // den, wlo, g)
        if r != 0 and r2 % den == 0:
            self.try_root(r2 // den, wlo, g)
        return 0

    cdef int rec(self, int depth, bint all_zero, long long g) except -1:
        cdef long long v, lo
        if depth == self.n:
            return self.leaf(all_zero, g)
        lo = 0 if all_zero else -self.B
        for v in range(lo, self.B + 1):
            self.prefix[depth] = v
            if not self.check_determined(depth + 1):
                continue
            self.rec(depth + 1, all_zero and v == 0, c_gcd(g, v))
        return 0

    def run_top(self, long long v):
        """Enumerate the slab with first coordinate equal to ``v``."""
        self.prefix[0] = v
        if not self.check_determined(1):
            return
        if self.k == 1:
            raise ValueError("ambient dimension must be >= 1")
        self.rec(1, v == 0, v if v >= 0 else -v)

    def drain(self):
        out = self.pending
        self.pending = []
        return out

    def flush_tail(self):
        if self.count:
            out = np.array(self.buf[: self.count])
            self.count = 0
            return out
        return None


def iter_blocks(int k, long long B, long long x0_lo, long long x0_hi, tables):
    """Drive the kernel over first-coordinate slabs, yielding int64 blocks."""
    kern = _Kernel(k, B, *tables)
    cdef long long v
    for v in range(x0_lo, x0_hi + 1):
        kern.run_top(v)
        for blk in kern.drain():
            yield blk
    tail = kern.flush_tail()
    if tail is not None:
        yield tail
