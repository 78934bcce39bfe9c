"""Orthogonal polynomials on the unit circle, Riemann-Hilbert data, the Lax
pair, and the q-Painleve V / d-P_II recurrences.

Two weight variants run through everything here:

  plain  -- the weight whose moments are the I_n symbol (length gap variant);
            Verblunsky-type data x_n = pi_n(0), Painleve variable
            xs_n = xi^{1/2} q^{n/2} x_n.
  check  -- the dual weight with moments the Icheck_n symbol (first-part
            variant); data y_n, Painleve variable ys_n = (-xi)^{1/2}
            q^{-n/2} y_n, which is imaginary for xi > 0. All public
            quantities for this branch are the real bilinears ys_n^2 and
            ys_n ys_{n+1}, so storage stays real.

The determinant route (shifted Toeplitz ratios) is the ground truth; the
forward recurrence is validated against it, not trusted standalone.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from mpmath import mp

from .gap import symbol_table
from .qspecial import QParams, q_pochhammer

__all__ = [
    "OPSequence",
    "PainleveState",
    "LaxMatrices",
    "RHPSample",
    "op_sequence",
    "monic_coefficients",
    "inner_product_series",
    "painleve_trajectory",
    "x_recurrence_rhs",
    "y_recurrence_rhs",
    "dpii_limit_check",
    "lax_matrices",
    "lax_checks",
    "rhp_sample",
    "tau_relation_check",
]

OP_VARIANTS = ("plain", "check")
_SYMBOL_OF = {"plain": "I", "check": "I_check"}
MAX_N = 25


@dataclass(frozen=True)
class OPSequence:
    variant: str
    params: QParams
    n_max: int
    z: tuple[float, ...]        # Z_0 .. Z_{n_max+2} (shift 0)
    z_shift1: tuple[float, ...]  # Z_0^{(1)} .. Z_{n_max+1}^{(1)}
    kappa_sq: tuple[float, ...]  # kappa_n^2 = Z_n / Z_{n+1}, n = 0..n_max+1
    x: tuple[float, ...]         # x_n = pi_n(0) = (-1)^n Z_n^{(1)} / Z_n


@dataclass(frozen=True)
class PainleveState:
    variant: str  # "x" or "y"
    source: str   # "determinant" or "recurrence"
    params: QParams
    # x branch: values[n] = xs_n. y branch: sq[n] = ys_n^2 and
    # cross[n] = ys_n ys_{n+1}, both real.
    values: tuple[float, ...] = ()
    sq: tuple[float, ...] = ()
    cross: tuple[float, ...] = ()


@dataclass(frozen=True)
class LaxMatrices:
    variant: str
    n: int
    u1: np.ndarray
    u0: np.ndarray
    t2: np.ndarray
    t1: np.ndarray
    t0: np.ndarray
    z_pole: float

    def u(self, z: complex) -> np.ndarray:
        return self.u1 * z + self.u0

    def t(self, z: complex) -> np.ndarray:
        return (self.t2 * z * z + self.t1 * z + self.t0) / (1.0 - z / self.z_pole)


@dataclass(frozen=True)
class RHPSample:
    variant: str
    n: int
    z: complex
    y: np.ndarray
    det_y: complex


def _mp_moment(variant: str, n: int, q: "mp.mpf", xi: "mp.mpf") -> "mp.mpf":
    """Symbol moment at the working precision from its q-series.

    plain:  sum_k u^{2k+|n|} / ((q;q)_k (q;q)_{k+|n|}), u = xi sqrt(q);
    check:  q^{n^2/2} sum_k q^{k(k+|n|)} u^{2k+|n|} / ((q;q)_k (q;q)_{k+|n|}),
            u = xi.
    All terms are positive, so the evaluation carries no cancellation even
    as q approaches 1. Both symbols are even, so only |n| enters.
    """
    m = abs(n)
    u = xi * mp.sqrt(q) if variant == "plain" else xi
    floor = mp.mpf(10) ** (-mp.dps - 5)
    fac_k = mp.mpf(1)          # (q; q)_k
    fac_km = mp.mpf(1)         # (q; q)_{k+m}
    for j in range(1, m + 1):
        fac_km *= 1 - q**j
    upow = u**m
    total = mp.mpf(0)
    k = 0
    while True:
        if variant == "plain":
            term = upow / (fac_k * fac_km)
        else:
            term = q ** (k * (k + m)) * upow / (fac_k * fac_km)
        total += term
        if term < floor * total:
            break
        k += 1
        fac_k *= 1 - q**k
        fac_km *= 1 - q ** (k + m)
        upow *= u * u
    if variant == "check":
        total *= q ** (mp.mpf(m * m) / 2)
    return total


def _mp_dps_for(variant: str, params: QParams, n_max: int) -> int:
    """Working precision covering the cancellation in the shifted dets.

    Two sources of lost digits: the shifted determinant of size n shrinks
    roughly like q^{n^2/2} xi^n (plain) or (xi sqrt(q))^n (check) while the
    matrix entries stay comparable, and near q = 1 the moment series has a
    large interior term peak before its q^{k^2/2} decay takes over.
    """
    q, xi = params.q, params.xi
    if xi == 0.0:
        return 25
    lost_plain = -(n_max * n_max / 2.0) * math.log10(q) - n_max * math.log10(xi)
    lost_check = -n_max * math.log10(xi * math.sqrt(q))
    lost = lost_plain if variant == "plain" else lost_check
    return 25 + max(0, int(lost))


@lru_cache(maxsize=32)
def op_sequence(variant: str, params: QParams, n_max: int) -> OPSequence:
    """Toeplitz-determinant route to kappa_n^2 and x_n (or y_n).

    Determinants are evaluated at elevated working precision: the shifted
    determinant decays super-exponentially in n, so fixed double precision
    turns it into noise past n around 8. Results are returned as floats
    with full relative accuracy.
    """
    if variant not in OP_VARIANTS:
        raise ValueError(f"variant must be one of {OP_VARIANTS}")
    if n_max > MAX_N:
        raise ValueError(f"n_max {n_max} exceeds guard {MAX_N}")
    top = n_max + 2
    with mp.workdps(_mp_dps_for(variant, params, top)):
        q, xi = mp.mpf(params.q), mp.mpf(params.xi)
        span = top + 2
        moments = {
            k: _mp_moment(variant, k, q, xi) for k in range(-span, span + 1)
        }

        def det(n: int, shift: int) -> "mp.mpf":
            if n == 0:
                return mp.mpf(1)
            mat = mp.matrix(n, n)
            for i in range(n):
                for j in range(n):
                    mat[i, j] = moments[-i + j - shift]
            return mp.det(mat)

        z_mp = [det(n, 0) for n in range(top + 1)]
        z1_mp = [det(n, 1) for n in range(top)]
        # ratios are scale invariant and stay in range even when the raw
        # determinants overflow a double (moments grow like 1/(q;q)_inf)
        kappa_sq = tuple(float(z_mp[n] / z_mp[n + 1]) for n in range(top))
        x = tuple(
            float((-1) ** n * z1_mp[n] / z_mp[n]) for n in range(top)
        )
        z = tuple(float(v) for v in z_mp)
        z1 = tuple(float(v) for v in z1_mp)
    return OPSequence(variant=variant, params=params, n_max=n_max,
                      z=z, z_shift1=z1, kappa_sq=kappa_sq, x=x)


def monic_coefficients(variant: str, params: QParams, n: int) -> np.ndarray:
    """Coefficients (low to high) of the monic orthogonal polynomial pi_n.

    Orthogonality against z^i for i < n reduces to the Toeplitz system
    sum_j a_j c_{j-i} = -c_{n-i} over the symbol moments c.
    """
    if variant not in OP_VARIANTS:
        raise ValueError(f"variant must be one of {OP_VARIANTS}")
    if n == 0:
        return np.array([1.0])
    table = symbol_table(_SYMBOL_OF[variant], params, n + 4)
    mat = np.array([[table[j - i] for j in range(n)] for i in range(n)])
    rhs = -np.array([table[n - i] for i in range(n)])
    return np.append(np.linalg.solve(mat, rhs), 1.0)


def inner_product_series(
    f_coeffs: Sequence[float], g_coeffs: Sequence[float], params: QParams
) -> float:
    """Residue-sum (q-hypergeometric) form of the symmetrized inner product.

    f and g are polynomials in the symmetrized variable (z + 1/z)/2,
    evaluated at the nodes z_n = (xi q^{n+1/2} + xi^{-1} q^{-n-1/2})/2:

      <f, g> = 1/((xi^2 q;q)_inf (q;q)_inf)
               * sum_n f(z_n) g(z_n) (xi^2 q;q)_n / (q;q)_n (-1)^n q^C(n,2) q^n

    Cross-checks the circle-quadrature moments; <1,1> equals the zeroth
    symbol moment.
    """
    q, xi = params.q, params.xi
    if xi == 0.0:
        # single node contributes f*g at infinity limit; with xi = 0 the
        # weight is trivial and <f,g> reduces to the constant term pairing
        raise ValueError("residue-sum form needs xi > 0")
    pref = 1.0 / (
        q_pochhammer(xi * xi * q, q, math.inf) * q_pochhammer(q, q, math.inf)
    )
    total = 0.0
    ratio = 1.0  # (xi^2 q;q)_n / (q;q)_n
    qfac = 1.0   # (-1)^n q^C(n,2) q^n
    for n in range(params.max_terms):
        zn = 0.5 * (xi * q ** (n + 0.5) + q ** (-n - 0.5) / xi)
        fv = np.polyval(list(reversed(f_coeffs)), zn)
        gv = np.polyval(list(reversed(g_coeffs)), zn)
        term = fv * gv * ratio * qfac * q**n
        total += term
        if n > 2 and abs(term) < params.tail_tol * max(1.0, abs(total)):
            return pref * total
        ratio *= (1.0 - xi * xi * q ** (n + 1)) / (1.0 - q ** (n + 1))
        qfac *= -(q**n)
    raise RuntimeError("inner product series did not converge")


# ---------------------------------------------------------------------------
# Painleve trajectories


def x_recurrence_rhs(xs_n: float, n: int, params: QParams) -> float:
    """(xs^2 - xi)(xs^2 - 1/xi) / (1 - q^{-n} xs^2 / xi)."""
    q, xi = params.q, params.xi
    s = xs_n * xs_n
    return (s - xi) * (s - 1.0 / xi) / (1.0 - s / (xi * q**n))


def y_recurrence_rhs(ys_sq_n: float, n: int, params: QParams) -> float:
    """(ys^2 + xi)(ys^2 + 1/xi) / (1 + q^{n} ys^2 / xi), in the real
    bilinear ys_n^2."""
    q, xi = params.q, params.xi
    s = ys_sq_n
    return (s + xi) * (s + 1.0 / xi) / (1.0 + s * q**n / xi)


def painleve_trajectory(
    variant: str, source: str, params: QParams, n_max: int
) -> PainleveState:
    """Painleve variables up to index n_max from either route.

    x branch, determinant: xs_n = (-q^{1/2})^n xi^{1/2} Z_n^{(1)} / Z_n.
    y branch, determinant: real bilinears ys_n^2 = -xi q^{-n} y_n^2 and
    ys_n ys_{n+1} = -xi q^{-n-1/2} y_n y_{n+1} with
    y_n = (-1)^n Zcheck_n^{(1)} / Zcheck_n.
    Recurrence source iterates the q-Painleve V relation forward, seeded
    from the determinant values at n = 0, 1 (the relation at n = 0 would
    reference an undefined index -1). The x branch decays like a minimal
    recurrence solution, so its forward iteration is exponentially
    unstable; expect agreement with the determinant route only for small n.
    The y branch grows and iterates stably.
    """
    if variant not in ("x", "y"):
        raise ValueError("variant must be 'x' or 'y'")
    if source not in ("determinant", "recurrence"):
        raise ValueError("source must be 'determinant' or 'recurrence'")
    q, xi = params.q, params.xi

    op = op_sequence("plain" if variant == "x" else "check", params, min(n_max, MAX_N))

    if variant == "x":
        det_vals = [
            (-math.sqrt(q)) ** n * math.sqrt(xi) * op.z_shift1[n] / op.z[n]
            for n in range(n_max + 1)
        ]
        if source == "determinant":
            return PainleveState(variant="x", source=source, params=params,
                                 values=tuple(det_vals))
        vals = [det_vals[0], det_vals[1]]
        for n in range(1, n_max):
            rhs = x_recurrence_rhs(vals[n], n, params)
            prev = vals[n - 1] * vals[n] - 1.0
            if abs(prev) < 1e-13 or abs(vals[n]) < 1e-280:
                raise ZeroDivisionError(
                    f"recurrence near-singular at index {n}"
                )
            vals.append((1.0 + rhs / prev) / vals[n])
        return PainleveState(variant="x", source=source, params=params,
                             values=tuple(vals))

    y_vals = [op.x[n] for n in range(n_max + 2)]
    det_sq = [-xi * q ** (-n) * y_vals[n] ** 2 for n in range(n_max + 1)]
    det_cross = [
        -xi * q ** (-n - 0.5) * y_vals[n] * y_vals[n + 1] for n in range(n_max + 1)
    ]
    if source == "determinant":
        return PainleveState(variant="y", source=source, params=params,
                             sq=tuple(det_sq), cross=tuple(det_cross))
    sq = [det_sq[0]]
    cross = [det_cross[0]]
    for n in range(1, n_max + 1):
        sq.append(cross[n - 1] ** 2 / sq[n - 1])
        rhs = y_recurrence_rhs(sq[n], n, params)
        prev = cross[n - 1] - 1.0
        if abs(prev) < 1e-13:
            raise ZeroDivisionError(f"recurrence near-singular at index {n}")
        cross.append(1.0 + rhs / prev)
    return PainleveState(variant="y", source=source, params=params,
                         sq=tuple(sq), cross=tuple(cross))


def dpii_limit_check(
    eta: float, q_schedule: Sequence[float], n_range: Sequence[int]
) -> list[dict]:
    """Residual of (x_{n-1} + x_{n+1})(1 - x_n^2) + (n/eta) x_n along a q
    schedule with xi = (1 - q) eta, for both branches, on determinant-sourced
    data. The residuals must shrink as q -> 1."""
    rows = []
    for q in q_schedule:
        xi = (1.0 - q) * eta
        params = QParams(q=q, xi=xi)
        n_top = max(n_range) + 1
        op_x = op_sequence("plain", params, n_top)
        op_y = op_sequence("check", params, n_top)
        for n in n_range:
            res_x = (op_x.x[n - 1] + op_x.x[n + 1]) * (1.0 - op_x.x[n] ** 2) \
                + (n / eta) * op_x.x[n]
            res_y = (op_y.x[n - 1] + op_y.x[n + 1]) * (1.0 - op_y.x[n] ** 2) \
                + (n / eta) * op_y.x[n]
            rows.append({"q": q, "n": n,
                         "residual_x": abs(res_x) / max(abs(op_x.x[n]), 1e-300),
                         "residual_y": abs(res_y) / max(abs(op_y.x[n]), 1e-300)})
    return rows


# ---------------------------------------------------------------------------
# Lax pair


def lax_matrices(n: int, params: QParams, op: OPSequence) -> LaxMatrices:
    """Assemble U_n(z) = U1 z + U0 and the rational T_n(z) from closed forms.

    plain variant (data x_n, pole z = xi q^{-1/2}):
        T2 = diag(q^{n+1}, 0),
        T0 = q^n [[1-x_n^2, x_n], [(1-x_n^2) x_n, x_n^2]],
        T1 = [[alpha, beta], [gamma, delta]] with
        beta  = -q^{n+1} x_{n+1},
        gamma = -q^n (1 - x_n^2) x_{n-1},
        delta = -q^{1/2}/xi,
        alpha = q^n (x_n^2 - 1)(q x_{n+1} + x_{n-1})/x_n - q^{1/2}/xi.

    check variant (data y_n, pole z = -xi q^{-1/2}):
        T2 = diag(0, q),
        T0 = [[y_n^2, -y_n], [-(1-y_n^2) y_n, 1-y_n^2]],
        beta  = y_{n+1},
        gamma = q (1 - y_n^2) y_{n-1},
        alpha = q^{n+1/2}/xi,
        delta = (y_n^2 - 1)(q y_{n-1} + y_{n+1})/y_n + q^{n+1/2}/xi.
    """
    if n < 1:
        raise ValueError("n must be >= 1 (entries reference index n-1)")
    if n + 1 >= len(op.x):
        raise ValueError("op sequence too short for this n")
    q, xi = params.q, params.xi
    xm, x, xp = op.x[n - 1], op.x[n], op.x[n + 1]
    if x == 0.0:
        raise ZeroDivisionError("x_n = 0 singular configuration")
    u1 = np.diag([1.0, 0.0])
    u0 = np.array([[x * xp, -xp], [-(1.0 - xp * xp) * x, 1.0 - xp * xp]])
    if op.variant == "plain":
        t2 = np.diag([q ** (n + 1), 0.0])
        t0 = q**n * np.array([[1.0 - x * x, x], [(1.0 - x * x) * x, x * x]])
        beta = -(q ** (n + 1)) * xp
        gamma = -(q**n) * (1.0 - x * x) * xm
        delta = -math.sqrt(q) / xi
        alpha = q**n * (x * x - 1.0) * (q * xp + xm) / x - math.sqrt(q) / xi
        pole = xi / math.sqrt(q)
    else:
        t2 = np.diag([0.0, q])
        t0 = np.array([[x * x, -x], [-(1.0 - x * x) * x, 1.0 - x * x]])
        beta = xp
        gamma = q * (1.0 - x * x) * xm
        alpha = q ** (n + 0.5) / xi
        delta = (x * x - 1.0) * (q * xm + xp) / x + q ** (n + 0.5) / xi
        pole = -xi / math.sqrt(q)
    t1 = np.array([[alpha, beta], [gamma, delta]])
    return LaxMatrices(variant=op.variant, n=n, u1=u1, u0=u0,
                       t2=t2, t1=t1, t0=t0, z_pole=pole)


def inversion_k(variant: str, x_n: float) -> np.ndarray:
    """Involutive matrix of the T inversion relation; determinant -1."""
    return np.array([[x_n, -1.0], [-(1.0 - x_n * x_n), -x_n]])


def lax_checks(
    n: int,
    params: QParams,
    op: OPSequence,
    probes: Sequence[complex],
) -> dict:
    """Residuals of the compatibility and inversion relations at probe points.

    compatibility: U_n(qz) T_n(z) - T_{n+1}(z) U_n(z)
    inversion:     T_n(z)^{-1} - q^{-n} K_n T_n((qz)^{-1}) K_n
    """
    q = params.q
    m_n = lax_matrices(n, params, op)
    m_np1 = lax_matrices(n + 1, params, op)
    k = inversion_k(op.variant, op.x[n])
    comp, inv = [], []
    for z in probes:
        if abs(z) < 1e-8 or abs(z - m_n.z_pole) < 1e-8:
            raise ValueError(f"probe {z} too close to pole or origin")
        c = m_n.u(q * z) @ m_n.t(z) - m_np1.t(z) @ m_n.u(z)
        comp.append(float(np.max(np.abs(c))))
        i = np.linalg.inv(m_n.t(z)) - q ** (-n) * k @ m_n.t(1.0 / (q * z)) @ k
        inv.append(float(np.max(np.abs(i))))
    return {
        "n": n,
        "compatibility": comp,
        "inversion": inv,
        "det_k": float(np.linalg.det(k)),
    }


# ---------------------------------------------------------------------------
# Riemann-Hilbert samples


def _weight_values(variant: str, params: QParams, z: np.ndarray) -> np.ndarray:
    """Circle weight evaluated at complex points (off its poles/zeros)."""
    q, xi = params.q, params.xi
    a = xi * math.sqrt(q)
    w = np.ones_like(z, dtype=complex)
    sign = -1.0 if variant == "plain" else 1.0
    # plain: prod 1/((1 - a q^k z)(1 - a q^k / z)); check: same product with
    # -a, not inverted
    aa = a if variant == "plain" else -a
    for _ in range(params.max_terms):
        if abs(aa) < params.tail_tol:
            break
        w = w * (1.0 - aa * z) * (1.0 - aa / z)
        aa *= q
    return 1.0 / w if variant == "plain" else w


def rhp_sample(
    n: int,
    z: complex,
    params: QParams,
    variant: str = "plain",
    quadrature_points: int = 2048,
    contour_radius: float = 1.0,
) -> RHPSample:
    """The 2x2 Riemann-Hilbert matrix at a probe point by circle quadrature.

    Y_n(z) = [[pi_n(z),              C[w^{-n} pi_n w](z)],
              [-k_{n-1}^2 pi*_{n-1}(z), -k_{n-1}^2 C[w^{-n} pi*_{n-1} w](z)]]
    with C the Cauchy transform over the circle of radius contour_radius.
    The integrand is analytic in the annulus between the weight poles, so
    the contour may be deformed off |w| = 1 to evaluate boundary values.
    """
    if variant not in OP_VARIANTS:
        raise ValueError(f"variant must be one of {OP_VARIANTS}")
    if n < 1:
        raise ValueError("n must be >= 1")
    op = op_sequence(variant, params, n + 1)
    pn = monic_coefficients(variant, params, n)
    pnm1 = monic_coefficients(variant, params, n - 1)
    pstar = pnm1[::-1].copy()  # real coefficients: dual is plain reversal
    k2 = op.kappa_sq[n - 1]

    g = quadrature_points
    theta = 2.0 * math.pi * np.arange(g) / g
    w = contour_radius * np.exp(1j * theta)
    wv = _weight_values(variant, params, w)

    # (1/2pi i) oint f(w)/(w - z) dw with dw = i w dtheta, dtheta = 2 pi / g
    def cauchy(coeffs: np.ndarray) -> complex:
        pw = np.polyval(coeffs[::-1], w)
        integrand = w ** (-float(n)) * pw * wv / (w - z)
        return complex(np.sum(integrand * w) / g)

    y = np.array([
        [np.polyval(pn[::-1], z), cauchy(pn)],
        [-k2 * np.polyval(pstar[::-1], z), -k2 * cauchy(pstar)],
    ])
    return RHPSample(variant=variant, n=n, z=z, y=y, det_y=complex(np.linalg.det(y)))


def rhp_jump_residual(
    n: int,
    z_angle: float,
    params: QParams,
    variant: str = "plain",
    radius_offset: float = 1e-2,
    quadrature_points: int = 2048,
) -> float:
    """|Y_+ - Y_- J| at a point of the unit circle, J the upper-triangular
    jump with the weight in the corner.

    Both boundary values are taken exactly at z on the circle; the
    quadrature contour is deformed to radius 1 -/+ radius_offset, which the
    analyticity of the integrand in the annulus between the weight poles
    permits. The + value uses the outer contour (z inside), the - value the
    inner one."""
    z = cmath.exp(1j * z_angle)
    y_plus = rhp_sample(n, z, params, variant, quadrature_points,
                        contour_radius=1.0 + radius_offset).y
    y_minus = rhp_sample(n, z, params, variant, quadrature_points,
                         contour_radius=1.0 - radius_offset).y
    wz = complex(_weight_values(variant, params, np.array([z]))[0])
    jump = np.array([[1.0, z ** (-float(n)) * wz], [0.0, 1.0]])
    return float(np.max(np.abs(y_plus - y_minus @ jump)))


def tau_relation_check(
    params: QParams, n_range: Sequence[int], variant: str = "plain"
) -> list[dict]:
    """Residual of log Z_{n+1} - 2 log Z_n + log Z_{n-1} = log(1 - x_n^2).

    The second difference equals log(kappa_{n-1}^2 / kappa_n^2), which is
    scale invariant and usable even where the raw determinants overflow.
    """
    op = op_sequence(variant, params, max(n_range) + 1)
    rows = []
    for n in n_range:
        lhs = math.log(op.kappa_sq[n - 1]) - math.log(op.kappa_sq[n])
        rhs = math.log1p(-op.x[n] ** 2)
        rows.append({"n": n, "residual": abs(lhs - rhs)})
    return rows
