"""Ramanujan summation through the Plana integral.

For f analytic on Re z > 0 with growth below e^(pi |Im z|),

    R(f) = f(1)/2 + i * int_0^inf (f(1+it) - f(1-it)) / (e^(2 pi t) - 1) dt.

Membership in that growth class cannot be checked from samples; callers
assert it through :class:`AnalyticFunction.growth`. ``sin(pi z)`` is the
standard trap: it vanishes on the integers yet has R = 1/pi, and its
asserted growth ``a = pi`` is rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath
from mpmath import mp, mpf, mpc

from .numcore import bernoulli
from .quadrature import (
    QuadratureResult,
    QuadratureSpec,
    integrate_finite,
    integrate_plana_kernel,
)
from .specfun import ZetaOracleConfig, digamma, euler_gamma, log_2pi, loggamma, zeta_reference

__all__ = [
    "AnalyticFunction",
    "RamanujanSum",
    "ramanujan_sum",
    "ramanujan_zeta",
    "phi_interpolant",
    "shift_sum",
    "plana_check",
    "theorem4_check",
    "plana_integral",
    "Preset",
    "preset",
    "PRESET_NAMES",
]


@dataclass(frozen=True)
class AnalyticFunction:
    """A function on Re z > 0 with asserted growth |f(z)| <= C e^(b Re z) e^(a |Im z|)."""

    eval: Callable
    growth: tuple[float, float] = (0.0, 0.0)
    real_on_reals: bool = True
    tag: str = "f"
    antiderivative: Callable | None = None

    def __call__(self, z):
        return self.eval(z)

    def shifted(self) -> "AnalyticFunction":
        f, F = self.eval, self.antiderivative
        return AnalyticFunction(
            lambda z: f(z + 1),
            self.growth,
            self.real_on_reals,
            f"shift:{self.tag}",
            (lambda z: F(z + 1)) if F is not None else None,
        )


@dataclass
class RamanujanSum:
    value: mpf | mpc
    quadrature: QuadratureResult
    function_tag: str


def _require_epi(f: AnalyticFunction) -> None:
    if abs(f.growth[0]) >= math.pi:
        raise ValueError(f"not in E^pi: asserted growth a={f.growth[0]} for {f.tag}")


def _scale(f: AnalyticFunction, x) -> mpf:
    with mp.workprec(53):
        return 1 + abs(f(x)) * mpmath.exp(abs(f.growth[0]))


def plana_integral(f: AnalyticFunction, x, spec: QuadratureSpec) -> tuple[mpc, QuadratureResult]:
    """J(x) = i * int_0^inf (f(x+it) - f(x-it)) / (e^(2 pi t) - 1) dt."""
    if abs(f.growth[0]) >= 2 * math.pi:
        raise ValueError(f"growth a={f.growth[0]} too large for the Plana formula")
    x = mpmath.mpmathify(x)
    two_pi = 2 * mpmath.pi
    real_point = not isinstance(x, mpc) or x.imag == 0
    if f.real_on_reals and real_point:
        x = mpf(x.real) if isinstance(x, mpc) else x

        def g(t):
            return mpmath.im(f(mpc(x, t))) / mpmath.expm1(two_pi * t)

        res = integrate_plana_kernel(g, spec, abs(f.growth[0]), _scale(f, x))
        return -2 * res.value, res

    guard = 2 * spec.working_bits

    def g(t):
        # f(x+it) - f(x-it) = O(t) near 0; evaluate the difference at doubled precision
        with mp.workprec(guard):
            diff = f(x + mpc(0, t)) - f(x - mpc(0, t))
        return diff / mpmath.expm1(two_pi * t)

    res = integrate_plana_kernel(g, spec, abs(f.growth[0]), _scale(f, x))
    return mpc(0, 1) * res.value, res


def ramanujan_sum(f: AnalyticFunction, spec: QuadratureSpec | None = None) -> RamanujanSum:
    """Ramanujan's sum of the series f(1) + f(2) + ..."""
    spec = spec or QuadratureSpec()
    _require_epi(f)
    with mp.workprec(spec.working_bits):
        j, res = plana_integral(f, mpf(1), spec)
        value = f(mpf(1)) / 2 + j
        if f.real_on_reals:
            value = mpmath.re(value)
    return RamanujanSum(value, res, f.tag)


def ramanujan_zeta(s, spec: QuadratureSpec | None = None):
    """Ramanujan's sum of n^(-s), an entire function of s.

    Uses the real form 1/2 + 2 int_0^inf sin(s atan t) (1+t^2)^(-s/2) / (e^(2 pi t) - 1) dt.
    """
    spec = spec or QuadratureSpec()
    s_in = mpmath.mpmathify(s)
    with mp.workprec(spec.working_bits):
        s = mpc(s_in)
        two_pi = 2 * mpmath.pi

        def g(t):
            return mpmath.sin(s * mpmath.atan(t)) * mpmath.power(1 + t * t, -s / 2) / mpmath.expm1(two_pi * t)

        scale = mpmath.exp(abs(s.imag) * mpmath.pi / 2) * (1 + abs(s))
        res = integrate_plana_kernel(g, spec, 0.0, scale)
        if not res.converged:
            raise ArithmeticError(f"quadrature did not converge for s={s}")
        value = mpf(1) / 2 + 2 * res.value
        return mpmath.re(value) if not isinstance(s_in, mpc) else value


def _segment_integral(f: AnalyticFunction, a, b, spec: QuadratureSpec):
    """int_a^b f(u) du along the straight segment."""
    if f.antiderivative is not None:
        return f.antiderivative(b) - f.antiderivative(a)
    if a == b:
        return mpf(0)
    a_real = not isinstance(a, mpc) or a.imag == 0
    b_real = not isinstance(b, mpc) or b.imag == 0
    if a_real and b_real:
        res = integrate_finite(f.eval, mpmath.re(a), mpmath.re(b), spec)
        return res.value
    d = b - a
    res = integrate_finite(lambda tau: f(a + tau * d), 0, 1, spec)
    return d * res.value


def phi_interpolant(f: AnalyticFunction, z, spec: QuadratureSpec | None = None, rsum=None):
    """The interpolant of the partial sums: phi(n) = f(1) + ... + f(n).

    Evaluated directly for Re z >= 1 and by phi(z) = phi(z+1) - f(z+1)
    below that (valid down to Re z > -1 as long as f is defined at z+1).
    ``rsum`` may carry a precomputed Ramanujan sum of f.
    """
    spec = spec or QuadratureSpec()
    _require_epi(f)
    z_in = mpmath.mpmathify(z)
    with mp.workprec(spec.working_bits):
        w = z_in
        correction = mpf(0)
        while mpmath.re(w) < 1:
            w = w + 1
            correction -= f(w)
        if rsum is None:
            rsum = ramanujan_sum(f, spec).value
        j_w, _ = plana_integral(f, w, spec)
        value = _segment_integral(f, mpf(1), w, spec) + f(w) / 2 + rsum - j_w + correction
        if f.real_on_reals and not (isinstance(z_in, mpc) and z_in.imag != 0):
            value = mpmath.re(value)
        return value


def shift_sum(f: AnalyticFunction, spec: QuadratureSpec | None = None):
    """Ramanujan's sum of f(n+1), from R(f) - f(1) + int_0^1 f(x+1) dx."""
    spec = spec or QuadratureSpec()
    base = ramanujan_sum(f, spec).value
    with mp.workprec(spec.working_bits):
        return base - f(mpf(1)) + _segment_integral(f, mpf(1), mpf(2), spec)


def plana_check(f: AnalyticFunction, n: int, spec: QuadratureSpec | None = None) -> mpf:
    """|LHS - RHS| of the Plana summation formula on 1..n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    spec = spec or QuadratureSpec()
    with mp.workprec(spec.working_bits):
        lhs = mpf(0)
        for k in range(1, n + 1):
            lhs += f(mpf(k))
        one, big_n = mpf(1), mpf(n)
        j1, _ = plana_integral(f, one, spec)
        jn, _ = plana_integral(f, big_n, spec) if n > 1 else (j1, None)
        rhs = (f(one) + f(big_n)) / 2 + _segment_integral(f, one, big_n, spec) + j1 - jn
        return abs(lhs - rhs)


def theorem4_check(f: AnalyticFunction, spec: QuadratureSpec | None = None) -> mpf:
    """|R(f) - int_0^1 phi_f(x) dx|, with phi_f continued into (0, 1) by the shift relation."""
    spec = spec or QuadratureSpec()
    rs = ramanujan_sum(f, spec).value
    with mp.workprec(spec.working_bits):
        outer = integrate_finite(lambda x: phi_interpolant(f, x, spec, rsum=rs), 0, 1, spec)
        return abs(rs - outer.value)


# --- catalog -----------------------------------------------------------------


@dataclass(frozen=True)
class Preset:
    function: AnalyticFunction
    closed_form: Callable[[], object] | None = None
    integral_1_2: Callable[[], object] | None = field(default=None, repr=False)


def _power(k: int) -> Preset:
    def f(z):
        return mpmath.power(z, k)

    if k == -1:
        return _harmonic()
    if k >= 0:
        def closed():
            if k == 0:
                return mpf(1) / 2
            b = bernoulli(k + 1)
            v = (1 - b) / (k + 1)
            return mpf(v.numerator) / v.denominator

        def antiderivative(z):
            return mpmath.power(z, k + 1) / (k + 1)

        def i12():
            v = Fraction(2 ** (k + 1) - 1, k + 1)
            return mpf(v.numerator) / v.denominator
    else:
        def closed():
            return zeta_reference(-k, ZetaOracleConfig(precision=mp.prec)) - mpf(1) / (-k - 1)

        def antiderivative(z):
            return mpmath.power(z, k + 1) / (k + 1)

        def i12():
            return (mpf(2) ** (k + 1) - 1) / (k + 1)

    return Preset(AnalyticFunction(f, (0.0, 1.0), True, f"power:{k}", antiderivative), closed, i12)


def _harmonic() -> Preset:
    return Preset(
        AnalyticFunction(lambda z: 1 / z, (0.0, 0.0), True, "harmonic", mpmath.log),
        lambda: euler_gamma(mp.prec),
        lambda: mpmath.log(2),
    )


def _zeta(s) -> Preset:
    s = mpmath.mpmathify(s)

    def f(z):
        return mpmath.power(z, -s)

    def closed():
        if s == 1:
            return euler_gamma(mp.prec)
        if mpmath.re(s) > 0:
            return zeta_reference(s, ZetaOracleConfig(precision=mp.prec)) - 1 / (s - 1)
        return zeta_reference(s, ZetaOracleConfig("euler-maclaurin", precision=mp.prec)) - 1 / (s - 1)

    def i12():
        if s == 1:
            return mpmath.log(2)
        return (mpmath.power(2, 1 - s) - 1) / (1 - s)

    real = not isinstance(s, mpc) or s.imag == 0
    return Preset(AnalyticFunction(f, (0.0, 0.0), real, f"zeta:{mpmath.nstr(s, 15)}"), closed, i12)


def _exp(a) -> Preset:
    a = mpf(a)
    if a == 0:
        return _power(0)

    def closed():
        ea = mpmath.exp(a)
        return ea / a - ea / mpmath.expm1(a)

    return Preset(
        AnalyticFunction(lambda z: mpmath.exp(a * z), (0.0, float(abs(a))), True, f"exp:{mpmath.nstr(a, 15)}",
                         lambda z: mpmath.exp(a * z) / a),
        closed,
        lambda: (mpmath.exp(2 * a) - mpmath.exp(a)) / a,
    )


def _parse_complex(text: str):
    parts = text.split(",")
    if len(parts) == 1:
        return mpf(parts[0])
    if len(parts) == 2:
        return mpc(mpf(parts[0]), mpf(parts[1]))
    raise ValueError(f"cannot parse complex value {text!r}")


PRESET_NAMES = ("harmonic", "one", "power:k", "log", "digamma", "zeta:s", "exp:a", "shift:<preset>")


def preset(name: str) -> Preset:
    """Catalog entry by name; see ``PRESET_NAMES``. Closed forms evaluate at the context precision."""
    if name.startswith("shift:"):
        base = preset(name[len("shift:"):])
        if base.closed_form is None or base.integral_1_2 is None:
            closed = None
        else:
            f1 = base.function

            def closed():
                return base.closed_form() - f1(mpf(1)) + base.integral_1_2()
        return Preset(base.function.shifted(), closed, None)
    if name == "harmonic":
        return _harmonic()
    if name == "one":
        return _power(0)
    if name == "log":
        return Preset(
            AnalyticFunction(mpmath.log, (0.0, 0.0), True, "log", lambda z: z * mpmath.log(z) - z),
            lambda: log_2pi(mp.prec) / 2 - 1,
            lambda: 2 * mpmath.log(2) - 1,
        )
    if name == "digamma":
        return Preset(
            AnalyticFunction(digamma, (0.0, 0.0), True, "digamma", loggamma),
            lambda: -log_2pi(mp.prec) / 2 + mpf(1) / 2,
            lambda: mpf(0),
        )
    if name.startswith("power:"):
        return _power(int(name[len("power:"):]))
    if name.startswith("zeta:"):
        return _zeta(_parse_complex(name[len("zeta:"):]))
    if name.startswith("exp:"):
        return _exp(mpf(name[len("exp:"):]))
    raise KeyError(f"unknown preset {name!r}")
