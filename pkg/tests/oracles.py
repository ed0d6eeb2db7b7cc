"""Independent brute-force oracles used by the test-suite.

None of these share code paths with the package internals they check.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial

# --- linear algebra -------------------------------------------------------


def cofactor_det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    if n == 1:
        return m[0][0]
    total = Fraction(0)
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * cofactor_det(minor)
    return total


def solve_cramer(m, v):
    d = cofactor_det(m)
    out = []
    for j in range(len(m)):
        mj = [list(row) for row in m]
        for i in range(len(m)):
            mj[i][j] = v[i]
        out.append(cofactor_det(mj) / d)
    return out


# --- lattices and cones ---------------------------------------------------


def brute_min_inf_norm(cols, bound=10):
    """Minimum infinity norm over nonzero combinations with |coeff| <= bound."""
    n = len(cols[0])
    best = None
    for c in itertools.product(range(-bound, bound + 1), repeat=len(cols)):
        if not any(c):
            continue
        v = [sum(ci * col[i] for ci, col in zip(c, cols)) for i in range(n)]
        norm = max(abs(Fraction(x)) for x in v)
        if best is None or norm < best:
            best = norm
    return best


def box_scan_parallelepiped(cols, vertex=None):
    """Integer points p with coordinates of p - vertex in [0,1)^d, by scanning the box hull."""
    d = len(cols)
    v = [Fraction(x) for x in vertex] if vertex is not None else [Fraction(0)] * d
    corners = []
    for mask in itertools.product((0, 1), repeat=d):
        corners.append([v[i] + sum(m * col[i] for m, col in zip(mask, cols)) for i in range(d)])
    lo = [min(c[i] for c in corners) for i in range(d)]
    hi = [max(c[i] for c in corners) for i in range(d)]
    rows = [[col[i] for col in cols] for i in range(d)]
    pts = []
    ranges = [range(int(_floor(lo[i])), int(_floor(hi[i])) + 1) for i in range(d)]
    for p in itertools.product(*ranges):
        k = solve_cramer(rows, [Fraction(pi) - vi for pi, vi in zip(p, v)])
        if all(0 <= x < 1 for x in k):
            pts.append(tuple(p))
    return sorted(pts)


def _floor(x):
    x = Fraction(x)
    return x.numerator // x.denominator


def monomial(y, e):
    out = Fraction(1)
    for yi, ei in zip(y, e):
        out *= Fraction(yi) ** int(ei)
    return out


def knapsack_cone_gf(f, alist, t, y):
    """Lattice points of (t/f, 0, ..., 0) + C(H): x >= 0 with f | t - a.x.

    Stanley form over the primitive rays (-a_j/g_j, (f/g_j) e_j).
    """
    from math import gcd

    d = len(alist)
    steps = [f // gcd(f, a) for a in alist]
    rays = []
    for j, a in enumerate(alist):
        g = gcd(f, a)
        r = [0] * (d + 1)
        r[0] = -a // g
        r[j + 1] = f // g
        rays.append(r)
    num = Fraction(0)
    for x in itertools.product(*(range(s) for s in steps)):
        rest = t - sum(a * xi for a, xi in zip(alist, x))
        if rest % f == 0:
            num += monomial(y, [rest // f, *x])
    den = Fraction(1)
    for r in rays:
        den *= 1 - monomial(y, r)
    return num / den


# --- truncated power series ----------------------------------------------


def ps_mul(a, b, n):
    return [sum(a[i] * b[k - i] for i in range(k + 1) if i < len(a) and k - i < len(b)) for k in range(n + 1)]


def ps_inv(a, n):
    out = [Fraction(0)] * (n + 1)
    out[0] = 1 / Fraction(a[0])
    for k in range(1, n + 1):
        out[k] = -sum(a[i] * out[k - i] for i in range(1, k + 1) if i < len(a)) / a[0]
    return out


def ps_exp(c, n):
    return [Fraction(c) ** k / factorial(k) for k in range(n + 1)]


def todd_direct(rates, n):
    """e^(sum b/2 s) * prod b s/(1 - e^(b s)) by plain series arithmetic."""
    out = ps_exp(sum(Fraction(b) for b in rates) / 2, n)
    for b in rates:
        b = Fraction(b)
        # (1 - e^(b s)) / (b s) = -sum_{k>=0} b^k s^k / (k+1)!
        quot = [-(b**k) / factorial(k + 1) for k in range(n + 1)]
        out = ps_mul(out, ps_inv(quot, n), n)
    return out


def laurent_coeff_G(c, b0, rates, m):
    """[s^(-1-m)] c e^(b0 s) / prod (1 - e^(b s)) for concrete numbers."""
    u = len(rates)
    need = u - 1 - m
    if need < 0:
        return Fraction(0)
    series = ps_exp(b0, need)
    for b in rates:
        b = Fraction(b)
        # 1 - e^(b s) = s * (-sum b^(k+1) s^k/(k+1)!)
        base = [-(b ** (k + 1)) / factorial(k + 1) for k in range(need + 1)]
        series = ps_mul(series, ps_inv(base, need), need)
    return Fraction(c) * series[need]


def ct_x_oracle(sign, m0, b0, B0, mixed, pureq, q):
    """Constant term in x after fixing q to a rational number."""
    q = Fraction(q)
    n0 = len(B0)
    series = ps_exp(b0, n0)
    for b in B0:
        b = Fraction(b)
        # (1 - e^(b x))/x
        base = [-(b ** (k + 1)) / factorial(k + 1) for k in range(n0 + 1)]
        series = ps_mul(series, ps_inv(base, n0), n0)
    for m, b in mixed:
        qm = q**m
        b = Fraction(b)
        base = [1 - qm] + [-qm * b**k / factorial(k) for k in range(1, n0 + 1)]
        series = ps_mul(series, ps_inv(base, n0), n0)
    val = sign * q**m0 * series[n0]
    for m in pureq:
        val /= 1 - q**m
    return val


# --- counting -------------------------------------------------------------


def enumerate_solutions(a, t):
    """Count x >= 0 with a.x = t by nested enumeration."""
    def rec(i, rest):
        if i == len(a) - 1:
            return 1 if rest % a[i] == 0 else 0
        return sum(rec(i + 1, rest - k * a[i]) for k in range(rest // a[i] + 1))
    return rec(0, t)
