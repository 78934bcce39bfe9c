"""Correlation kernels, k-point correlations, limit shape, scaling probes.

The kernels act on the half-integer lattice. Half-integer indices are
carried as doubled integers internally so no floating-point index drift can
occur; the public API accepts floats like 0.5 or fractions.

Numerical route: all kernel values are built from Fourier coefficients
c_n = q^{n/2} J^(3)_n(2 xi; q) of the unimodular generating function, taken
by FFT on the unit circle. The generating function has modulus 1 there, so
the coefficients come out with absolute accuracy near machine precision
even for q close to 1, where the raw hypergeometric series cancels
catastrophically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.special import gamma, jv

from .measures import MiwaTimes
from .qspecial import KernelTable, QParams, fourier_coefficients

__all__ = [
    "LimitShape",
    "twice",
    "schur_kernel",
    "q_bessel_kernel",
    "discrete_bessel_kernel",
    "correlation",
    "limit_shape",
    "airy",
    "airy_kernel",
    "sine_kernel",
    "scaling_probe",
]


def twice(r) -> int:
    """Validate a half-integer and return 2r as an odd integer."""
    fr = Fraction(r).limit_denominator(4)
    t = fr * 2
    if t.denominator != 1 or t.numerator % 2 == 0:
        raise ValueError(f"{r} is not a half-integer")
    return int(t)


@lru_cache(maxsize=64)
def _j_gen_table(params: QParams, n_span: int) -> KernelTable:
    """Coefficients c_n = q^{n/2} J^(3)_n(2 xi;q) for |n| <= n_span."""
    return fourier_coefficients("J_gen", params, -n_span, n_span, grid=512)


def _tail_span(params: QParams, lo: int, hi: int) -> int:
    """Span of orders needed so the dropped coefficient tail is negligible.

    Coefficients decay super-exponentially once |n| passes the edge scale
    -alpha0/log q; add that scale plus a fixed buffer.
    """
    q, xi = params.q, params.xi
    if xi == 0.0 or q == 0.0:
        return max(abs(lo), abs(hi)) + 8
    edge = -2.0 * math.log(1.0 - xi) / (-math.log(q))
    return int(max(abs(lo), abs(hi)) + edge + 60)


def q_bessel_kernel(params: QParams, r, s) -> float:
    """Correlation kernel of the squared-type measure on the half-integer lattice.

    Off the diagonal the Christoffel-Darboux form
        xi (J_{r+1/2} J_{s-1/2} - J_{r-1/2} J_{s+1/2})
           / (q^{(r-s)/2} - q^{-(r-s)/2})
    with J_n = J^(3)_n(2 xi;q); on the diagonal the series
        q^r sum_{k in Z'_{>0}} q^k J_{r+k}^2,
    which in terms of c_n = q^{n/2} J_n is sum_k c_{r+k}^2.
    """
    tr, ts = twice(r), twice(s)
    q, xi = params.q, params.xi
    if xi == 0.0:
        return 1.0 if (tr == ts and tr < 0) else 0.0
    span = _tail_span(params, min(tr, ts) // 2 - 1, max(tr, ts) // 2 + 1)
    table = _j_gen_table(params, span)
    if tr == ts:
        # r + k runs over integers > r for half-integer k > 0
        n0 = (tr + 1) // 2
        total = 0.0
        for n in range(n0, span + 1):
            total += table[n] ** 2
        return total
    # indices r +- 1/2 are integers; J_m = q^{-m/2} c_m, and the prefactors
    # combine into exact half-integer powers of q
    a = (tr + 1) // 2  # r + 1/2
    b = (tr - 1) // 2  # r - 1/2
    c = (ts + 1) // 2  # s + 1/2
    d = (ts - 1) // 2  # s - 1/2
    num = table[a] * table[d] - table[b] * table[c]
    # c_a c_d = q^{(r+s)/2} J_{r+1/2} J_{s-1/2}; divide out the prefactor
    # and the antisymmetric denominator q^{(r-s)/2} - q^{-(r-s)/2}
    m = (tr - ts) // 2  # r - s, a nonzero integer
    den = q ** (m / 2.0) - q ** (-m / 2.0)
    return xi * num * q ** (-(tr + ts) / 4.0) / den


def schur_kernel(
    t: MiwaTimes, t_tilde: MiwaTimes, r, s,
    tail_tol: float = 1e-16,
    n_span: int = 128,
    grid: int = 1024,
) -> float:
    """Series form K(r,s) = sum_{k in Z'_{>0}} J_{r+k} Jtilde_{s+k}.

    J and Jtilde are Fourier coefficients of exp(sum t_n z^n - ttilde_n z^-n)
    and of the same expression with t and ttilde swapped, taken by FFT.
    The summation index k runs over positive half-integers so that r + k is
    an integer order.
    """
    tr, ts = twice(r), twice(s)
    theta = 2.0 * math.pi * np.arange(grid) / grid
    z = np.exp(1j * theta)
    log_j = np.zeros_like(z)
    for n in range(1, n_span + 1):
        tn, ttn = t.value(n), t_tilde.value(n)
        if tn == 0.0 and ttn == 0.0 and n > 8:
            break
        log_j = log_j + tn * z**n - ttn * z ** (-n)
    j_coeff = np.fft.fft(np.exp(log_j)) / grid
    # exp(-log J)(z) is the swapped-times symbol evaluated at 1/z, so its
    # z^b coefficient is Jtilde_{-b}; read it with the index negated below
    jt_coeff = np.fft.fft(np.exp(-log_j)) / grid

    def coeff(c: np.ndarray, n: int) -> float:
        if abs(n) > grid // 4:
            return 0.0
        return float(c[n % grid].real)

    total = 0.0
    k2 = 1  # doubled half-integer k = 1/2
    stall = 0
    while k2 < 4 * grid:
        a = (tr + k2) // 2
        b = (ts + k2) // 2
        term = coeff(j_coeff, a) * coeff(jt_coeff, -b)
        total += term
        stall = stall + 1 if abs(term) < tail_tol * max(1.0, abs(total)) else 0
        if stall >= 8:
            return total
        k2 += 2
    return total


def discrete_bessel_kernel(eta: float, r, s) -> float:
    """q -> 1 limit kernel built from ordinary Bessel functions.

    Off-diagonal: eta (J_{r-1/2}(2 eta) J_{s+1/2}(2 eta)
                       - J_{r+1/2}(2 eta) J_{s-1/2}(2 eta)) / (r - s);
    diagonal via the series sum_{k in Z'_{>0}} J_{r+k}(2 eta)^2.
    """
    if eta < 0:
        raise ValueError("eta must be nonnegative")
    tr, ts = twice(r), twice(s)
    if eta == 0.0:
        return 1.0 if (tr == ts and tr < 0) else 0.0
    x = 2.0 * eta
    if tr == ts:
        n0 = (tr + 1) // 2
        total = 0.0
        n = n0
        stall = 0
        while stall < 8:
            term = jv(n, x) ** 2
            total += term
            stall = stall + 1 if term < 1e-18 * max(1.0, total) else 0
            n += 1
        return total
    rv, sv = tr / 2.0, ts / 2.0
    num = jv(rv - 0.5, x) * jv(sv + 0.5, x) - jv(rv + 0.5, x) * jv(sv - 0.5, x)
    return eta * num / (rv - sv)


def correlation(kernel: Callable[[object, object], float], points: Sequence) -> float:
    """k-point correlation det[K(z_i, z_j)] for distinct half-integer points."""
    pts = [twice(p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("points must be distinct")
    if not pts:
        return 1.0
    k = len(pts)
    mat = np.empty((k, k))
    for i, p in enumerate(pts):
        for j, p2 in enumerate(pts):
            mat[i, j] = kernel(Fraction(p, 2), Fraction(p2, 2))
    return float(np.linalg.det(mat))


@dataclass(frozen=True)
class LimitShape:
    xi: float
    a: float
    b: float
    alpha0: float
    beta0: float
    rho: Callable[[float], float]
    omega: Callable[[float], float]


def limit_shape(xi: float) -> LimitShape:
    """Macroscopic density rho and profile Omega of the squared-type measure."""
    if not (0.0 <= xi < 1.0):
        raise ValueError("xi must be in [0, 1)")
    a = -2.0 * math.log1p(xi)
    b = -2.0 * math.log1p(-xi)
    alpha0 = -2.0 * math.log1p(-xi)
    beta0 = xi / (1.0 - xi) ** 2

    def rho(x: float) -> float:
        if xi == 0.0:
            return 1.0 if x < 0.0 else 0.0
        if x < a:
            return 1.0
        if x > b:
            return 0.0
        arg = 0.5 * (xi + (1.0 - math.exp(-x)) / xi)
        arg = min(1.0, max(-1.0, arg))
        return math.acos(arg) / math.pi

    def omega(x: float) -> float:
        if x <= a or x >= b:
            return abs(x)
        integral, _ = quad(rho, a, x, limit=200)
        return x - 2.0 * a - 2.0 * integral

    return LimitShape(xi=xi, a=a, b=b, alpha0=alpha0, beta0=beta0, rho=rho, omega=omega)


# Airy function by the standard Maclaurin pair: f'' = x f with
# f(0)=1, f'(0)=0 and g(0)=0, g'(0)=1; Ai = c1 f - c2 g.
_AI0 = 3.0 ** (-2.0 / 3.0) / gamma(2.0 / 3.0)
_AIP0 = -(3.0 ** (-1.0 / 3.0)) / gamma(1.0 / 3.0)


def airy(x: float) -> tuple[float, float]:
    """(Ai(x), Ai'(x)) from the Maclaurin series pair, for |x| <= 8."""
    if abs(x) > 8.0:
        raise ValueError("airy series pair is restricted to |x| <= 8")
    # f = sum a_k x^{3k}, g = sum b_k x^{3k+1}
    f_val, fp_val = 1.0, 0.0
    g_val, gp_val = x, 1.0
    a_k = 1.0
    b_k = 1.0
    xk3 = 1.0  # x^{3k}
    for k in range(1, 60):
        a_k /= (3 * k) * (3 * k - 1)
        b_k /= (3 * k + 1) * (3 * k)
        xk3 *= x * x * x
        f_term = a_k * xk3
        g_term = b_k * xk3 * x
        f_val += f_term
        g_val += g_term
        fp_val += f_term * (3 * k) / x if x != 0.0 else 0.0
        gp_val += g_term * (3 * k + 1) / x if x != 0.0 else 0.0
        if abs(f_term) < 1e-18 and abs(g_term) < 1e-18:
            break
    ai = _AI0 * f_val + _AIP0 * g_val
    aip = _AI0 * fp_val + _AIP0 * gp_val
    return ai, aip


def airy_kernel(x: float, y: float) -> float:
    """(Ai(x) Ai'(y) - Ai'(x) Ai(y)) / (x - y); diagonal Ai'(x)^2 - x Ai(x)^2."""
    ax, apx = airy(x)
    if x == y:
        return apx * apx - x * ax * ax
    ay, apy = airy(y)
    return (ax * apy - apx * ay) / (x - y)


def sine_kernel(rho: float, d: int) -> float:
    """sin(pi rho d) / (pi d), with value rho on the diagonal d = 0."""
    if d == 0:
        return rho
    return math.sin(math.pi * rho * d) / (math.pi * d)


def _nearest_half_integer(x: float) -> Fraction:
    # floor keeps the map monotone; round-half-to-even would collapse
    # neighboring probe positions onto the same lattice site
    return Fraction(2 * math.floor(x) + 1, 2)


def scaling_probe(
    kind: str,
    xi: float,
    q_schedule: Sequence[float],
    x: float = 0.0,
    y: float = 0.0,
    u: int = 1,
    v: int = 0,
) -> list[dict]:
    """Deviation of the rescaled kernel from its universal limit along a q schedule.

    kind="bulk_sine": K at positions -x/log q + u, -x/log q + v (rounded to the
    lattice) against sin(pi rho (u-v)) / (pi (u-v)); x must lie in (a, b).
    kind="edge_airy": cube-root rescaled kernel at the spectral edge against
    the Airy kernel at (x, y). Reports trends; the limits come with no rate.
    """
    shape = limit_shape(xi)
    rows = []
    for q in q_schedule:
        eps = -math.log(q)
        params = QParams(q=q, xi=xi)
        if kind == "bulk_sine":
            if not (shape.a < x < shape.b):
                raise ValueError(f"bulk probe needs x in ({shape.a}, {shape.b})")
            base = x / eps
            r = _nearest_half_integer(base + u)
            s = _nearest_half_integer(base + v)
            got = q_bessel_kernel(params, r, s)
            target = sine_kernel(shape.rho(x), u - v)
        elif kind == "edge_airy":
            scale = (shape.beta0 / eps) ** (1.0 / 3.0)
            base = shape.alpha0 / eps
            r = _nearest_half_integer(base + scale * x)
            s = _nearest_half_integer(base + scale * y)
            got = scale * q_bessel_kernel(params, r, s)
            # compare at the effective lattice coordinates: rounding shifts
            # the Airy argument by up to 1/(2 scale), which would otherwise
            # mask the convergence trend
            x_eff = (float(r) - base) / scale
            y_eff = (float(s) - base) / scale
            target = airy_kernel(x_eff, y_eff)
        else:
            raise ValueError(f"unknown probe kind {kind!r}")
        rows.append(
            {"q": q, "value": got, "target": target, "deviation": abs(got - target)}
        )
    return rows
