"""The expansion zeta(s) = sum_m x_m P_m(s) in the critical strip.

Coefficients:

    x_m = gamma + sum_{k=1}^m C(m,k) (-2)^k zeta(k+1) + r_m
    y_m = log 2 + sum_{k=1}^m C(m,k) ((-2)^k - (-1)^k) / k
    z_m = x_m + y_m = R-sum of (1/(n+1)) ((n-1)/(n+1))^m

with r_m = (-1)^(m+1) + sum_{k=1}^m (1 + (-1)^(k-1)) / k. The binomial form
cancels terms of size ~3^m down to O(1/m), hence the growing guard bits;
the Laguerre integral, the generating function and the critical-line
projection give independent routes to the same numbers.
"""

from __future__ import annotations

import csv
import io
import math
import statistics
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf, mpc

from .basis import eval_P_table, family, laguerre
from .numcore import PrecisionPolicy, bernoulli_list, binomial, harmonic
from .quadrature import (
    QuadratureSpec,
    cauchy_coefficients,
    integrate_finite,
    integrate_halfline,
    integrate_sech_line,
)
from .rsum import AnalyticFunction, ramanujan_sum
from .specfun import ZetaOracleConfig, digamma, euler_gamma, log_2pi, zeta_integers, zeta_reference

__all__ = [
    "CoefficientRecord",
    "ExpansionResult",
    "r_coefficient",
    "y_rational",
    "coeff_x",
    "coeff_x_table",
    "coeff_y",
    "coeff_y_integral",
    "coeff_z",
    "coeff_z_rsum",
    "coeff_x_integral",
    "coeff_x_genfunc",
    "x_moment_check",
    "coefficient_table",
    "coefficient_csv",
    "zeta_expansion",
    "polar_residual",
    "polar_expansion_check",
    "theorem6_expansion",
    "theorem9_projection",
    "parseval_closed_form",
    "parseval_sum",
    "identity43_check",
    "lemma2_diagnostic",
    "f0",
]


@dataclass(frozen=True)
class CoefficientRecord:
    m: int
    x: mpf
    y: mpf
    z: mpf
    r: Fraction
    precision_bits: int
    route: str = "binomial"


@dataclass
class ExpansionResult:
    s: mpc
    terms_used: int
    value: mpc
    tail_estimate: mpf
    oracle_gap: mpf | None = None


def _to_mpf(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


def r_coefficient(m: int) -> Fraction:
    """r_m = (-1)^(m+1) + sum_{k=1}^m (1 + (-1)^(k-1)) / k."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return Fraction(-1)
    return (-1) ** (m + 1) + sum((Fraction(1 + (-1) ** (k - 1), k) for k in range(1, m + 1)), Fraction(0))


def y_rational(m: int) -> Fraction:
    """y_m - log 2 = sum_{k=1}^m C(m,k) ((-2)^k - (-1)^k) / k, exactly."""
    return sum((Fraction(binomial(m, k) * ((-2) ** k - (-1) ** k), k) for k in range(1, m + 1)), Fraction(0))


def _binomial_zeta_sum(m: int, zetas: list[mpf]) -> mpf:
    # sum_{k=1}^m C(m,k) (-2)^k zeta(k+1); zetas[j] = zeta(j+2)
    acc = mpf(0)
    c = 1
    for k in range(1, m + 1):
        c = c * (m - k + 1) // k
        acc += c * (-2) ** k * zetas[k - 1]
    return acc


def coeff_x_table(max_m: int, precision: int = 128) -> list[mpf]:
    """[x_0, ..., x_max_m] by the binomial form, each accurate to ~2^-precision."""
    if max_m < 0:
        raise ValueError("max_m must be >= 0")
    wp = PrecisionPolicy(precision).working_bits(max_m, "coeff")
    zetas = zeta_integers(max_m + 1, wp)
    out = []
    with mp.workprec(wp):
        g = euler_gamma(wp)
        for m in range(max_m + 1):
            out.append(g + _binomial_zeta_sum(m, zetas) + _to_mpf(r_coefficient(m)))
    with mp.workprec(precision):
        return [+v for v in out]


def coeff_x(m: int, precision: int = 128) -> mpf:
    if m < 0:
        raise ValueError("m must be >= 0")
    wp = PrecisionPolicy(precision).working_bits(m, "coeff")
    zetas = zeta_integers(m + 1, wp)
    with mp.workprec(wp):
        v = euler_gamma(wp) + _binomial_zeta_sum(m, zetas) + _to_mpf(r_coefficient(m))
    with mp.workprec(precision):
        return +v


def coeff_y(m: int, precision: int = 128) -> mpf:
    if m < 0:
        raise ValueError("m must be >= 0")
    with mp.workprec(precision + 16):
        v = mpmath.log(2) + _to_mpf(y_rational(m))
    with mp.workprec(precision):
        return +v


def coeff_y_integral(m: int, spec: QuadratureSpec | None = None) -> mpf:
    """y_m = int_0^1 ((x-1)/(x+1))^m dx/(x+1) by quadrature."""
    spec = spec or QuadratureSpec()
    with mp.workprec(spec.working_bits):
        res = integrate_finite(lambda x: ((x - 1) / (x + 1)) ** m / (x + 1), 0, 1, spec)
        if not res.converged:
            raise ArithmeticError("quadrature failed for y_m")
        return res.value


def coeff_z(m: int, precision: int = 128) -> mpf:
    """z_m = gamma + log 2 + sum C(m,k) (-2)^k zeta(k+1) + (-1)^(m+1) + H_m."""
    if m < 0:
        raise ValueError("m must be >= 0")
    wp = PrecisionPolicy(precision).working_bits(m, "coeff")
    zetas = zeta_integers(m + 1, wp)
    with mp.workprec(wp):
        v = (euler_gamma(wp) + mpmath.log(2) + _binomial_zeta_sum(m, zetas)
             + (-1) ** (m + 1) + _to_mpf(harmonic(m)))
    with mp.workprec(precision):
        return +v


def coeff_z_rsum(m: int, spec: QuadratureSpec | None = None) -> mpf:
    """z_m as the Ramanujan sum of f(x) = (1/(x+1)) ((x-1)/(x+1))^m."""
    spec = spec or QuadratureSpec()
    f = AnalyticFunction(lambda x: ((x - 1) / (x + 1)) ** m / (x + 1), (0.0, 0.0), True, f"z:{m}")
    return ramanujan_sum(f, spec).value


def coefficient_table(max_m: int, precision: int = 128) -> list[CoefficientRecord]:
    xs = coeff_x_table(max_m, precision)
    out = []
    for m, x in enumerate(xs):
        y = coeff_y(m, precision)
        with mp.workprec(precision):
            z = x + y
        out.append(CoefficientRecord(m, x, y, z, r_coefficient(m), precision))
    return out


def _digits(bits: int) -> int:
    return int(bits * math.log10(2)) + 1


def coefficient_csv(records: list[CoefficientRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "x_m", "y_m", "z_m", "r_m_num", "r_m_den", "precision_bits"])
    for rec in records:
        d = _digits(rec.precision_bits)
        with mp.workprec(rec.precision_bits):
            w.writerow([rec.m, mpmath.nstr(rec.x, d, strip_zeros=False), mpmath.nstr(rec.y, d, strip_zeros=False),
                        mpmath.nstr(rec.z, d, strip_zeros=False), rec.r.numerator, rec.r.denominator,
                        rec.precision_bits])
    return buf.getvalue()


# --- independent routes for x_m ------------------------------------------------


def f0(t, prec: int | None = None):
    """1/(e^t - 1) - 1/t, with the Bernoulli series near 0."""
    p = mp.prec if prec is None else prec
    t = mpmath.mpmathify(t)
    with mp.workprec(p + 8):
        if abs(t) < mpf(2) ** (-(p // 4)):
            # sum_{n>=1} B_n t^(n-1)/n!; terms shrink by ~t^2 per even step
            bern = bernoulli_list(12)
            acc = mpf(0)
            tp = mpf(1)
            fact = 1
            for n in range(1, 12):
                fact *= n
                if bern[n]:
                    acc += _to_mpf(bern[n]) * tp / fact
                tp *= t
            return acc
    with mp.workprec(p + p // 4 + 16):
        v = 1 / mpmath.expm1(t) - 1 / t
    with mp.workprec(p):
        return +v


def coeff_x_integral(m: int, spec: QuadratureSpec | None = None) -> mpf:
    """x_m = int_0^inf e^-t L_m(2t) f0(t) dt."""
    spec = spec or QuadratureSpec()
    wp = spec.working_bits
    with mp.workprec(wp):
        res = integrate_halfline(lambda t: mpmath.exp(-t) * laguerre(m, 2 * t) * f0(t, wp), spec)
        if not res.converged:
            raise ArithmeticError(f"quadrature failed for x_{m}")
        return res.value


def x_moment_check(k: int, spec: QuadratureSpec | None = None) -> mpf:
    """|int_0^inf e^-t t^k/k! f0(t) dt - (zeta(k+1) - 1 - 1/k)| for k >= 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    spec = spec or QuadratureSpec()
    wp = spec.working_bits
    with mp.workprec(wp):
        res = integrate_halfline(lambda t: mpmath.exp(-t) * t**k / math.factorial(k) * f0(t, wp), spec)
        target = zeta_reference(mpf(k + 1), ZetaOracleConfig(precision=wp)) - 1 - mpf(1) / k
        return abs(res.value - target)


def _genfunc(u):
    z = (1 + u) / (1 - u)
    return (mpmath.log(z) - digamma(z)) / (1 - u) - 1 / (1 + u)


def coeff_x_genfunc(max_m: int, precision: int = 128, radius=Fraction(1, 2)) -> list[mpf]:
    """x_0..x_max_m as Taylor coefficients of the generating function.

    Round-off in the circle sums is magnified by radius^-m and aliasing
    decays like radius^N, so both precision and node count scale with m.
    """
    if max_m < 0:
        raise ValueError("max_m must be >= 0")
    r = mpf(radius.numerator) / radius.denominator if isinstance(radius, Fraction) else mpf(radius)
    if not 0 < r < 1:
        raise ValueError("radius must lie in (0, 1)")
    lg = -math.log2(float(r))
    count = max_m + 1
    nodes = max(4 * count, count + math.ceil((precision + 24) / lg) + 8)
    wp = precision + math.ceil(max_m * lg) + 32 + nodes.bit_length()
    coeffs = cauchy_coefficients(_genfunc, count, r, nodes=nodes, prec=wp)
    with mp.workprec(precision):
        return [+mpmath.re(c) for c in coeffs]


def theorem9_projection(m: int, spec: QuadratureSpec | None = None) -> mpf:
    """x_m = (1/2) int conj(Q_m(t)) zeta(1/2+it) sech(pi t) dt.

    With Q_m = i^(m mod 2) R_m the integrand reduces to R_m(t) Re zeta for
    even m and R_m(t) Im zeta for odd m, both even in t.
    """
    spec = spec or QuadratureSpec(target_bits=96)
    if m < 0:
        raise ValueError("m must be >= 0")
    rm = family(m).R[m]
    wp = spec.working_bits
    cfg = ZetaOracleConfig(precision=wp)
    part = mpmath.re if m % 2 == 0 else mpmath.im
    with mp.workprec(wp):
        half = mpf(1) / 2

        def h(t):
            return rm(t) * part(zeta_reference(mpc(half, t), cfg))

        scale = 1 + sum(abs(float(a)) * 60.0**k for k, a in enumerate(rm.coeffs))
        res = integrate_sech_line(h, spec, even=True, scale=scale * 10)
        if not res.converged:
            raise ArithmeticError(f"projection quadrature failed for m={m}")
        return res.value / 2


# --- expansions ----------------------------------------------------------------


def _require_strip(s) -> None:
    if not 0 < mpmath.re(s) < 1:
        raise ValueError("outside critical strip")


def _tail_estimate(xs: list[mpf], s: mpc, M: int) -> mpf:
    """Fitted envelope c m^-p for |x_m| times the growth bound lemma1_bound, summed past M."""
    lo = max(1, M // 2)
    pts = [(math.log(m), math.log(abs(float(xs[m])))) for m in range(lo, M) if xs[m] != 0]
    if len(pts) < 2:
        return mpf("inf")
    slope, intercept = statistics.linear_regression([a for a, _ in pts], [b for _, b in pts])
    p = -slope
    c = math.exp(intercept)
    sigma = float(mpmath.re(s))
    base = math.exp(math.pi * abs(float(mpmath.im(s))))
    total = 0.0
    for alpha, g in ((sigma, math.gamma(sigma)), (1 - sigma, math.gamma(1 - sigma))):
        q = p + alpha
        if q <= 1:
            return mpf("inf")
        total += g * M ** (1 - q) / (q - 1)
    return mpf(c * base * total)


def zeta_expansion(s, M: int, precision: int = 128, with_oracle: bool = False) -> ExpansionResult:
    """Partial sum sum_{m<M} x_m P_m(s) of the expansion of zeta(s)."""
    s = mpmath.mpmathify(s)
    _require_strip(s)
    if M < 1:
        raise ValueError("M must be >= 1")
    xs = coeff_x_table(M - 1, precision)
    with mp.workprec(precision + 16):
        ps = eval_P_table(M, s)
        value = mpc(0)
        for x, p in zip(xs, ps):
            value += x * p
    gap = None
    if with_oracle:
        with mp.workprec(precision + 16):
            ref = zeta_reference(mpc(s), ZetaOracleConfig(precision=precision + 16))
            gap = abs(value - ref)
    with mp.workprec(precision):
        return ExpansionResult(mpc(s), M, +value, _tail_estimate(xs, mpc(s), M),
                               None if gap is None else +gap)


def polar_residual(s, M: int, precision: int = 128):
    """1/(s-1) + sum_{m<M} y_m P_m(s), which tends to 0."""
    s = mpmath.mpmathify(s)
    _require_strip(s)
    with mp.workprec(precision + 16):
        ps = eval_P_table(M, s)
        log2 = mpmath.log(2)
        acc = 1 / (s - 1)
        for m, p in enumerate(ps):
            acc += (log2 + _to_mpf(y_rational(m))) * p
    with mp.workprec(precision):
        return +acc


def polar_expansion_check(s, M: int, precision: int = 128) -> mpf:
    """|1/(s-1) + sum_{m<M} y_m P_m(s)|."""
    return abs(polar_residual(s, M, precision))


def theorem6_expansion(s, M: int, precision: int = 128):
    """1/(s-1) + sum_{m<M} z_m P_m(s), with z_m from its own closed form."""
    s = mpmath.mpmathify(s)
    _require_strip(s)
    wp = PrecisionPolicy(precision).working_bits(M, "coeff")
    zetas = zeta_integers(M, wp)
    with mp.workprec(wp):
        g = euler_gamma(wp)
        log2 = mpmath.log(2)
        zs = [g + log2 + _binomial_zeta_sum(m, zetas) + (-1) ** (m + 1) + _to_mpf(harmonic(m)) for m in range(M)]
    with mp.workprec(precision + 16):
        ps = eval_P_table(M, s)
        acc = 1 / (s - 1)
        for z, p in zip(zs, ps):
            acc += z * p
    with mp.workprec(precision):
        return +acc


# --- Parseval and the critical-line identity -----------------------------------


def parseval_closed_form(precision: int = 128) -> mpf:
    """(1/2) log(2 pi) - gamma/2 - 1/4."""
    with mp.workprec(precision + 8):
        v = log_2pi(precision + 8) / 2 - euler_gamma(precision + 8) / 2 - mpf(1) / 4
    with mp.workprec(precision):
        return +v


def parseval_sum(M: int, precision: int = 128, xs: list[mpf] | None = None) -> mpf:
    """sum_{m<M} x_m^2."""
    if M < 1:
        raise ValueError("M must be >= 1")
    xs = xs if xs is not None else coeff_x_table(M - 1, precision)
    with mp.workprec(precision + 16):
        acc = mpf(0)
        for x in xs[:M]:
            acc += x * x
    with mp.workprec(precision):
        return +acc


def identity43_check(spec: QuadratureSpec | None = None) -> tuple[mpf, mpf, mpf]:
    """lhs = int |zeta(1/2+it)|^2 sech(pi t) dt, rhs = 2 log(2 pi) - 2 gamma - 1, and |lhs - rhs|."""
    spec = spec or QuadratureSpec()
    wp = spec.working_bits
    cfg = ZetaOracleConfig(precision=wp)
    with mp.workprec(wp):
        half = mpf(1) / 2
        # sup of |zeta|^2 on the line from cheap samples, for the truncation point
        with mp.workprec(53):
            sup = max(abs(zeta_reference(mpc(0.5, t), ZetaOracleConfig(precision=53))) ** 2
                      for t in range(0, 80))
        res = integrate_sech_line(lambda t: abs(zeta_reference(mpc(half, t), cfg)) ** 2, spec,
                                  even=True, scale=float(sup) + 1)
        if not res.converged:
            raise ArithmeticError("identity quadrature did not converge")
        lhs = res.value
        rhs = 2 * log_2pi(wp) - 2 * euler_gamma(wp) - 1
        return lhs, rhs, abs(lhs - rhs)


def lemma2_diagnostic(s, t, M: int = 200) -> mpf:
    """Majorant minus the M-term partial sum of the absolute series sum |y_m P_m(s)| t^m (>= 0)."""
    s = mpmath.mpmathify(s)
    _require_strip(s)
    t = mpf(t)
    if t <= 0:
        raise ValueError("t must be positive")
    with mp.workprec(mp.prec + 16):
        ps = eval_P_table(M, s)
        a = 1 / mpc(2, t)
        b = 1 / mpc(2, -t)
        wa = mpc(0, t) * a
        wb = mpc(0, -t) * b
        partial = mpf(0)
        for p in ps:
            partial += abs((a - b) * p)
            a *= wa
            b *= wb
        sigma = mpmath.re(s)
        root = mpmath.sqrt(t * t + 4)
        q = t / root
        series = (mpmath.gamma(sigma) * mpmath.polylog(sigma, q)
                  + mpmath.gamma(1 - sigma) * mpmath.polylog(1 - sigma, q))
        majorant = 4 * t / (4 + t * t) + mpmath.exp(mpmath.pi * abs(mpmath.im(s))) * 4 / root * series
        return majorant - partial
