"""Scalar q-special functions.

q-Pochhammer symbols, basic hypergeometric series, the modified MacMahon
function, the three q-Bessel families with their modified variants, and
Fourier-coefficient extraction of the circle weights that feed the Toeplitz
and kernel machinery.

All series here are geometric-or-faster for q, xi in [0,1), so binary64
with a tail tolerance is enough at desk scale.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Union

import numpy as np

__all__ = [
    "QParams",
    "HypergeometricSpec",
    "KernelTable",
    "NonconvergenceError",
    "q_pochhammer",
    "basic_hypergeometric",
    "macmahon",
    "q_bessel",
    "modified_q_bessel",
    "fourier_coefficients",
]

DEFAULT_TAIL_TOL = 1e-16
DEFAULT_MAX_TERMS = 10_000

# coefficients this small are numerically indistinguishable from 0 and can
# underflow in downstream products; flush them
_FLUSH = 1e-300


class NonconvergenceError(RuntimeError):
    """A series or product hit max_terms with its tail above tail_tol."""


@dataclass(frozen=True)
class QParams:
    """The parameter pair (q, xi) plus series-truncation controls."""

    q: float
    xi: float
    tail_tol: float = DEFAULT_TAIL_TOL
    max_terms: int = DEFAULT_MAX_TERMS

    def __post_init__(self) -> None:
        if not (0.0 <= self.q < 1.0):
            raise ValueError(f"q must be in [0, 1), got {self.q}")
        if not (0.0 <= self.xi < 1.0):
            raise ValueError(f"xi must be in [0, 1), got {self.xi}")
        if not self.tail_tol > 0.0:
            raise ValueError("tail_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


@dataclass(frozen=True)
class HypergeometricSpec:
    """Parameters of an r-phi-s basic hypergeometric series."""

    upper: tuple[float, ...]
    lower: tuple[float, ...]
    q: float
    x: float
    tail_tol: float = DEFAULT_TAIL_TOL
    max_terms: int = DEFAULT_MAX_TERMS

    def __post_init__(self) -> None:
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        # a lower parameter of the form q^{-m} zeroes a denominator factor
        # at term m+1, making the series undefined
        for b in self.lower:
            if b == 0.0:
                continue
            if self.q == 0.0:
                if b == 1.0:
                    raise ValueError("lower parameter 1 with q = 0; undefined")
                continue
            qk = 1.0
            for m in range(self.max_terms + 1):
                if abs(b - qk) <= 1e-14 * abs(qk):
                    raise ValueError(
                        f"lower parameter {b} equals q^-{m}; series undefined"
                    )
                if abs(qk) > abs(b):
                    # q^{-m} grows past b; no later power can match
                    break
                qk /= self.q


def q_pochhammer(
    x: float,
    q: float,
    n: Union[int, float] = math.inf,
    tail_tol: float = DEFAULT_TAIL_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> float:
    """(x;q)_n = prod_{k=0}^{n-1} (1 - x q^k), with n = inf allowed for |q| < 1."""
    if n == math.inf:
        if abs(q) >= 1.0:
            raise ValueError("(x;q)_infinity requires |q| < 1")
        prod = 1.0
        xqk = x
        for _ in range(max_terms):
            if abs(xqk) < tail_tol:
                return prod
            prod *= 1.0 - xqk
            xqk *= q
        raise NonconvergenceError(
            f"(x;q)_inf: {max_terms} factors, tail {abs(xqk):.3e} > {tail_tol:.3e}"
        )
    m = int(n)
    if m < 0:
        raise ValueError("n must be a nonnegative integer or inf")
    prod = 1.0
    xqk = x
    for _ in range(m):
        prod *= 1.0 - xqk
        xqk *= q
    return prod


def basic_hypergeometric(spec: HypergeometricSpec) -> float:
    """Evaluate the r-phi-s series term by term.

    term_n = [(a_1..a_r;q)_n / ((q;q)_n (b_1..b_s;q)_n)]
             * ((-1)^n q^C(n,2))^(1+s-r) * x^n
    """
    r, s = len(spec.upper), len(spec.lower)
    power = 1 + s - r
    q, x = spec.q, spec.x

    total = 0.0
    term = 1.0  # n = 0
    n = 0
    while n < spec.max_terms:
        total += term
        if abs(term) < spec.tail_tol * max(1.0, abs(total)) and n > 0:
            return total
        # update term n -> n+1 multiplicatively
        num = 1.0
        for a in spec.upper:
            num *= 1.0 - a * q**n
        den = 1.0 - q ** (n + 1)
        for b in spec.lower:
            den *= 1.0 - b * q**n
        factor = num / den * x
        if power != 0:
            factor *= (-(q**n)) ** power
        term *= factor
        n += 1
        if term == 0.0:
            return total
    raise NonconvergenceError(
        f"basic_hypergeometric: {spec.max_terms} terms, tail {abs(term):.3e}"
    )


def macmahon(params: QParams) -> float:
    """Modified MacMahon function M(xi;q) = prod_{n>=1} (1 - xi^2 q^n)^-n."""
    q, xi = params.q, params.xi
    if xi == 0.0:
        return 1.0
    # log M = sum_n xi^{2n} / (n (q^{n/2} - q^{-n/2})^2); near q = 1 this
    # converges in a handful of terms while the defining product needs
    # O(1/(1-q)) factors, so try it first and fall back to the product
    log_m = 0.0
    prev = math.inf
    for n in range(1, 200):
        term = xi ** (2 * n) / (n * (q ** (n / 2.0) - q ** (-n / 2.0)) ** 2)
        if term > prev:
            break
        log_m += term
        if term < params.tail_tol:
            return math.exp(log_m)
        prev = term
    log_m = 0.0
    w = xi * xi * q
    for n in range(1, params.max_terms + 1):
        log_m -= n * math.log1p(-w)
        w *= q
        # remaining |log| tail is below sum_{m>n} m xi^2 q^m in closed form
        tail = w * ((n + 1.0) - n * q) / (1.0 - q) ** 2 if q < 1.0 else math.inf
        if tail < params.tail_tol:
            return math.exp(log_m)
    raise NonconvergenceError("macmahon: product did not converge")


def macmahon_series_coefficient(k: int, k_max: int = 64) -> int:
    """Exact integer coefficient of q^k in prod_{n>=1} (1 - q^n)^{-n}.

    Counts plane partitions of k. Expanded by repeated polynomial division
    over the integers, truncated at degree k_max.
    """
    if k < 0 or k > k_max:
        raise ValueError(f"k must lie in [0, {k_max}]")
    coeffs = [0] * (k_max + 1)
    coeffs[0] = 1
    for n in range(1, k_max + 1):
        for _ in range(n):
            # multiply by 1/(1 - q^n): running prefix sums with stride n
            for i in range(n, k_max + 1):
                coeffs[i] += coeffs[i - n]
    return coeffs[k]


def _phi_series_sum(
    a: float, b_qnu1: float, q: float, arg: float, tail_tol: float, max_terms: int
) -> float:
    """1-phi-1(a; b; q, arg) with the b parameter given directly."""
    spec = HypergeometricSpec(
        upper=(a,), lower=(b_qnu1,), q=q, x=arg, tail_tol=tail_tol, max_terms=max_terms
    )
    return basic_hypergeometric(spec)


def q_bessel(
    kind: int,
    nu: float,
    x: float,
    q: float,
    tail_tol: float = DEFAULT_TAIL_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> float:
    """q-Bessel function J^(kind)_nu(x;q), kind in {1,2,3}.

    nu may be any real > -1 for the direct series (the (q^{nu+1};q)_infinity
    prefactor converges there); negative integer orders are reached by
    downward recurrence from two nonnegative seeds.
    """
    if kind not in (1, 2, 3):
        raise ValueError("kind must be 1, 2 or 3")
    if q == 0.0:
        # only the n=0 term of each series survives
        if nu < 0 and nu == int(nu):
            raise ValueError("q=0 with negative integer order is undefined")
        return (x / 2.0) ** nu

    is_neg_int = nu < 0 and float(nu).is_integer()
    if is_neg_int:
        return _q_bessel_negative(kind, int(nu), x, q, tail_tol, max_terms)

    pref = (
        q_pochhammer(q ** (nu + 1), q, math.inf, tail_tol, max_terms)
        / q_pochhammer(q, q, math.inf, tail_tol, max_terms)
        * (x / 2.0) ** nu
    )
    b = q ** (nu + 1)
    if kind == 1:
        spec = HypergeometricSpec(
            upper=(0.0, 0.0), lower=(b,), q=q, x=-x * x / 4.0,
            tail_tol=tail_tol, max_terms=max_terms,
        )
        return pref * basic_hypergeometric(spec)
    if kind == 2:
        spec = HypergeometricSpec(
            upper=(), lower=(b,), q=q, x=-x * x * b / 4.0,
            tail_tol=tail_tol, max_terms=max_terms,
        )
        return pref * basic_hypergeometric(spec)
    spec = HypergeometricSpec(
        upper=(0.0,), lower=(b,), q=q, x=q * x * x / 4.0,
        tail_tol=tail_tol, max_terms=max_terms,
    )
    return pref * basic_hypergeometric(spec)


def _q_bessel_negative(
    kind: int, nu: int, x: float, q: float, tail_tol: float, max_terms: int
) -> float:
    """Negative integer orders.

    Kind 3 uses the reflection identity
    J_{-n}(x;q) = (-1)^n q^{n/2} J_n(q^{n/2} x; q), obtained by shifting the
    series index past the n vanishing leading terms; it is stable at every
    order, unlike the downward recurrence (the negative-order values decay,
    so the recurrence amplifies the dominant solution).
    Kinds 1 and 2 use the downward three-term recurrence from orders 1, 0.
    """
    if kind == 3:
        n = -nu
        return (-1.0) ** n * q ** (n / 2.0) * q_bessel(
            kind, n, q ** (n / 2.0) * x, q, tail_tol, max_terms
        )
    j_up = q_bessel(kind, 1, x, q, tail_tol, max_terms)  # J_{m+1}
    j_mid = q_bessel(kind, 0, x, q, tail_tol, max_terms)  # J_m
    m = 0
    while m > nu:
        # solve the recurrence for J_{m-1}
        if kind == 3:
            j_dn = ((2.0 / x) * (1.0 - q**m) + x / 2.0) * j_mid - j_up
        else:
            j_dn = (2.0 / x) * (1.0 - q**m) * j_mid - q**m * j_up
        j_up, j_mid = j_mid, j_dn
        m -= 1
    return j_mid


def modified_q_bessel(
    kind: int,
    nu: float,
    x: float,
    q: float,
    tail_tol: float = DEFAULT_TAIL_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> float:
    """Modified q-Bessel function I^(kind)_nu(x;q), kind in {1,2}.

    Evaluated through the 1-phi-1 representation
        I^(1)_nu(2u;q) = u^nu / ((u^2, q;q)_inf) * 1phi1(u^2; 0; q, q^{nu+1}),
        I^(2)_nu(2u;q) = u^nu / ((q;q)_inf)      * 1phi1(u^2; 0; q, q^{nu+1}),
    which is well defined for any integer nu (the lower parameter is 0).
    """
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    u = x / 2.0
    u2 = u * u
    if kind == 1 and u2 >= 1.0:
        raise ValueError("kind 1 requires x^2/4 < 1 ((x^2/4;q)_inf prefactor pole)")
    phi = _phi_series_sum(u2, 0.0, q, q ** (nu + 1), tail_tol, max_terms)
    if nu < 0 and not float(nu).is_integer():
        raise ValueError("negative non-integer order not supported")
    pref = u**nu if nu >= 0 else u ** int(nu)
    pref /= q_pochhammer(q, q, math.inf, tail_tol, max_terms)
    if kind == 1:
        pref /= q_pochhammer(u2, q, math.inf, tail_tol, max_terms)
    return pref * phi


@dataclass(frozen=True)
class KernelTable:
    """Immutable table of Fourier coefficients indexed by integer order."""

    family: str
    coeffs: dict[int, float] = field(repr=False)
    params: QParams | None = None

    def __getitem__(self, n: int) -> float:
        return self.coeffs.get(n, 0.0)

    def orders(self) -> list[int]:
        return sorted(self.coeffs)


def _weight_on_circle(weight: str, params: QParams, theta: np.ndarray) -> np.ndarray:
    """Evaluate the requested circle weight at the angles theta."""
    q, xi = params.q, params.xi
    if weight in ("I", "I_check"):
        # product over n >= 0 of (1 + xi^2 q^{2n+1} -/+ 2 xi q^{n+1/2} cos)
        # (inverted for I); all factors positive for q, xi in [0,1)
        sign = -1.0 if weight == "I" else 1.0
        cos_t = np.cos(theta)
        log_w = np.zeros_like(theta)
        a = xi * math.sqrt(q) if q > 0.0 else 0.0
        if q == 0.0:
            a = xi * 0.0  # q^{1/2} = 0: weight is 1
        for _ in range(params.max_terms):
            if a < params.tail_tol:
                break
            log_w += np.log1p(a * a + sign * 2.0 * a * cos_t)
            a *= q
        else:
            raise NonconvergenceError("weight product did not converge")
        return np.exp(-log_w if weight == "I" else log_w)
    if weight == "J_gen":
        # (xi q^{1/2} z^{-1};q)_inf / (xi q^{1/2} z;q)_inf, |value| = 1 on the
        # circle, so FFT coefficients carry no cancellation error
        z = np.exp(1j * theta)
        a = xi * math.sqrt(q)
        num = np.ones_like(z)
        den = np.ones_like(z)
        for _ in range(params.max_terms):
            if a < params.tail_tol:
                break
            num *= 1.0 - a / z
            den *= 1.0 - a * z
            a *= q
        else:
            raise NonconvergenceError("generating function product did not converge")
        return num / den
    raise ValueError(f"unknown weight {weight!r}")


def fourier_coefficients(
    weight: str,
    params: QParams,
    n_min: int,
    n_max: int,
    grid: int = 512,
) -> KernelTable:
    """Fourier coefficients c_n = (1/2pi) int w(e^{i theta}) e^{-in theta} dtheta.

    For weight "I" these are the symbol moments I_n, for "I_check" the
    moments of the dual symbol, and for "J_gen" the coefficients
    q^{n/2} J^(3)_n(2 xi; q) of the kernel generating function.
    """
    if n_min > n_max:
        raise ValueError("n_min must be <= n_max")
    span = max(abs(n_min), abs(n_max))
    if grid < 4 * (abs(n_min) + abs(n_max) + 1):
        grid = 1 << max(9, (4 * (abs(n_min) + abs(n_max) + 1) - 1).bit_length())
    if span > grid // 4:
        raise ValueError(
            f"aliasing: top requested order {span} exceeds grid/4 = {grid // 4}"
        )
    theta = 2.0 * math.pi * np.arange(grid) / grid
    w = _weight_on_circle(weight, params, theta)
    c = np.fft.fft(w) / grid  # c[k] = (1/G) sum w_j e^{-2pi i jk/G}
    coeffs: dict[int, float] = {}
    for n in range(n_min, n_max + 1):
        v = c[n % grid]
        val = float(v.real)
        coeffs[n] = 0.0 if abs(val) < _FLUSH else val
    return KernelTable(family=weight, coeffs=coeffs, params=params)
