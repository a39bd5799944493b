"""Double-exponential quadrature at arbitrary precision.

Three transforms share one level-refinement driver:

* tanh-sinh on a finite interval (endpoint singularities allowed),
* exp-sinh on (0, inf) for the Plana kernel 1/(e^(2 pi t) - 1),
* sinh-sinh on the whole line for sech(pi t)-weighted integrals.

Level ``k`` uses step ``2**-k`` in the transformed variable and only adds the
odd nodes, so every level reuses the previous sum. The error estimate is the
difference between the last two levels, which for double-exponential rules
overestimates the error of the newer level by a wide margin.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Callable

import mpmath
from mpmath import mp, mpf, mpc

__all__ = [
    "QuadratureSpec",
    "QuadratureResult",
    "integrate_finite",
    "integrate_halfline",
    "integrate_plana_kernel",
    "integrate_sech_line",
    "cauchy_coefficients",
]

SCHEMES = ("tanh-sinh", "exp-sinh", "sinh-sinh", "trapezoid-contour")


@dataclass(frozen=True)
class QuadratureSpec:
    """Quadrature controls.

    ``target_bits`` is an absolute accuracy goal: success means the
    estimated error is at most ``2**-target_bits``. ``truncation`` is an
    optional cutoff for infinite ranges; when ``None`` each integrator picks
    one from the decay of its kernel.
    """

    scheme: str = "tanh-sinh"
    level_max: int = 12
    target_bits: int = 128
    truncation: float | None = None
    guard_bits: int = 40

    def __post_init__(self) -> None:
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown quadrature scheme {self.scheme!r}")
        if self.level_max < 1:
            raise ValueError("level_max must be >= 1")
        if self.target_bits < 8:
            raise ValueError("target_bits must be >= 8")

    @property
    def working_bits(self) -> int:
        return self.target_bits + self.guard_bits

    @property
    def tolerance(self) -> mpf:
        return mpf(2) ** (-self.target_bits)

    def with_target(self, bits: int) -> "QuadratureSpec":
        return QuadratureSpec(self.scheme, self.level_max, bits, self.truncation, self.guard_bits)


@dataclass
class QuadratureResult:
    value: mpf | mpc
    est_error: mpf
    nodes_used: int
    converged: bool
    history: list[mpf] = field(default_factory=list, repr=False)


# --- node tables -----------------------------------------------------------

_lock = threading.Lock()
_tables: dict[tuple[str, int, int], list[tuple]] = {}


def _u_limit(kind: str, wp: int) -> float:
    # far enough that the transformed endpoint distance is ~2^(-16 wp)
    if kind == "sinh-sinh":
        return math.asinh(2 / math.pi * math.log(2e6))
    return math.asinh(2 / math.pi * 16 * wp * math.log(2))


def _make_node(kind: str, u: mpf) -> tuple:
    """Return (u, primary, secondary, weight) for transform ``kind``.

    tanh-sinh: primary = 1 - |y| (distance to the nearer endpoint of [-1, 1]),
    secondary = sign of y; exp-sinh: primary = t; sinh-sinh: primary = t.
    """
    half_pi = mpmath.pi / 2
    v = half_pi * mpmath.sinh(u)
    dv = half_pi * mpmath.cosh(u)
    if kind == "tanh-sinh":
        e = mpmath.exp(-2 * abs(v))
        comp = 2 * e / (1 + e)
        # dy/du = dv * sech(v)^2 = dv * 4e/(1+e)^2
        w = dv * 4 * e / (1 + e) ** 2
        return (u, comp, 1 if u > 0 else (-1 if u < 0 else 0), w)
    if kind == "exp-sinh":
        t = mpmath.exp(v)
        return (u, t, 0, t * dv)
    if kind == "sinh-sinh":
        t = mpmath.sinh(v)
        return (u, t, 0, dv * mpmath.cosh(v))
    raise ValueError(kind)


def _level_nodes(kind: str, wp: int, level: int) -> list[tuple]:
    key = (kind, wp, level)
    nodes = _tables.get(key)
    if nodes is not None:
        return nodes
    limit = _u_limit(kind, wp)
    h = mpf(2) ** (-level)
    count = int(limit * 2**level) + 1
    step = 1 if level == 0 else 2
    start = 0 if level == 0 else 1
    out = []
    with mp.workprec(wp + 20):
        for j in range(start, count + 1, step):
            for sgn in ((1,) if j == 0 else (1, -1)):
                out.append(_make_node(kind, sgn * j * h))
    with _lock:
        _tables[key] = out
    return out


# --- driver ------------------------------------------------------------------


def _drive(kind: str, spec: QuadratureSpec, evaluate: Callable[[tuple], object],
           u_cap: tuple[float, float] | None = None) -> QuadratureResult:
    wp = spec.working_bits
    with mp.workprec(wp):
        tol = spec.tolerance
        small = tol * mpf(2) ** (-24)
        lo_cap, hi_cap = u_cap if u_cap is not None else (-math.inf, math.inf)
        limit = _u_limit(kind, wp)
        lo_cap = max(lo_cap, -limit)
        hi_cap = min(hi_cap, limit)

        # level 0: integer nodes, scanned outward to find the significant range
        nodes = _level_nodes(kind, wp, 0)
        values = {}
        for node in nodes:
            if node[0] == 0:
                values[0] = evaluate(node)
        u_range = [0.0, 0.0]
        for side, sign in ((1, 1), (0, -1)):
            quiet = 0
            for node in sorted((n for n in nodes if n[0] * sign > 0), key=lambda n: abs(n[0])):
                u = float(node[0])
                if u < lo_cap or u > hi_cap:
                    break
                val = evaluate(node)
                values[u] = val
                u_range[side] = u
                quiet = quiet + 1 if abs(val) < small else 0
                if quiet >= 2:
                    break
            else:
                u_range[side] = hi_cap if sign > 0 else lo_cap
        u_lo = max(lo_cap, u_range[0] - 1.0)
        u_hi = min(hi_cap, u_range[1] + 1.0)

        partial = mpf(0)
        for val in values.values():
            partial += val
        used = len(values)
        current = partial
        history: list[mpf] = []
        est = mpf("inf")
        converged = False
        for level in range(1, spec.level_max + 1):
            for node in _level_nodes(kind, wp, level):
                u = float(node[0])
                if u_lo <= u <= u_hi:
                    partial += evaluate(node)
                    used += 1
            prior = current
            current = partial * mpf(2) ** (-level)
            est = abs(current - prior)
            history.append(est)
            if level >= 2 and est <= tol:
                converged = True
                break
            if level >= 1 and est == 0 and current == 0:
                converged = True
                break
        return QuadratureResult(current, est, used, converged, history)


def _halfline_cap(cutoff) -> tuple[float, float]:
    if cutoff is None:
        return (-math.inf, math.inf)
    c = float(cutoff)
    if c <= 1:
        raise ValueError("cutoff must exceed 1")
    return (-math.inf, math.asinh(2 / math.pi * math.log(c)))


def integrate_halfline(g: Callable, spec: QuadratureSpec, cutoff=None) -> QuadratureResult:
    """int_0^inf g(t) dt by exp-sinh; nodes beyond ``cutoff`` are dropped."""
    cutoff = spec.truncation if cutoff is None else cutoff

    def evaluate(node):
        return g(node[1]) * node[3]

    return _drive("exp-sinh", spec, evaluate, _halfline_cap(cutoff))


def plana_cutoff(spec: QuadratureSpec, growth: float = 0.0, scale=1) -> float:
    """Truncation point T with e^(-(2 pi - growth) T) * scale below the budget."""
    if growth >= 2 * math.pi:
        raise ValueError("growth rate must be below 2*pi")
    budget = (spec.working_bits + 16) * math.log(2) + math.log(max(1.0, float(abs(scale))))
    return max(2.0, budget / (2 * math.pi - growth) + 1.0)


def integrate_plana_kernel(g: Callable, spec: QuadratureSpec, growth: float = 0.0,
                           scale=1) -> QuadratureResult:
    """int_0^inf g(t) dt for integrands dominated by e^(-(2 pi - growth) t).

    ``g`` must have a finite limit at 0+; nodes never land on 0.
    """
    cutoff = spec.truncation if spec.truncation is not None else plana_cutoff(spec, growth, scale)
    return integrate_halfline(g, spec, cutoff)


def sech_cutoff(spec: QuadratureSpec, growth: float = 0.0, scale=1) -> float:
    if growth >= math.pi:
        raise ValueError("growth rate must be below pi")
    budget = (spec.working_bits + 16) * math.log(2) + math.log(2 * max(1.0, float(abs(scale))))
    return max(2.0, budget / (math.pi - growth) + 1.0)


def integrate_sech_line(h: Callable, spec: QuadratureSpec, even: bool = False,
                        growth: float = 0.0, scale=1) -> QuadratureResult:
    """int_{-inf}^{inf} h(t) sech(pi t) dt by sinh-sinh.

    With ``even=True`` the integrand is taken to satisfy h(-t) = h(t) and only
    t >= 0 is sampled.
    """
    cutoff = spec.truncation if spec.truncation is not None else sech_cutoff(spec, growth, scale)
    cap_u = math.asinh(2 / math.pi * math.asinh(float(cutoff)))
    pi = mpmath.pi

    if even:
        def evaluate(node):
            u, t, _, w = node
            if u < 0:
                return mpf(0)
            val = h(t) * w / mpmath.cosh(pi * t)
            return val if u == 0 else 2 * val
    else:
        def evaluate(node):
            t, w = node[1], node[3]
            return h(t) * w / mpmath.cosh(pi * t)

    return _drive("sinh-sinh", spec, evaluate, (-cap_u, cap_u))


def integrate_finite(g: Callable, a, b, spec: QuadratureSpec) -> QuadratureResult:
    """int_a^b g(x) dx by tanh-sinh.

    Abscissae next to an endpoint are stored with enough bits that
    ``x - a`` and ``b - x`` are exact, so integrable endpoint singularities
    are resolved.
    """
    a = mpmath.mpmathify(a)
    b = mpmath.mpmathify(b)
    wp = spec.working_bits
    with mp.workprec(wp):
        half = (b - a) / 2
        mid = (a + b) / 2

    def evaluate(node):
        _, comp, sgn, w = node
        if sgn == 0:
            x = mid
        else:
            # bits needed to keep comp exact after adding an O(1) endpoint
            extra = max(0, -mpmath.mag(comp)) + 8
            with mp.workprec(wp + extra):
                x = a + half * comp if sgn < 0 else b - half * comp
        return g(x) * (half * w)

    return _drive("tanh-sinh", spec, evaluate)


def cauchy_coefficients(f: Callable, count: int, radius, nodes: int | None = None,
                        prec: int | None = None) -> list:
    """Taylor coefficients c_0..c_{count-1} of f at 0 from f on |u| = radius.

    Trapezoid rule on the circle; aliasing error ~ radius**nodes and
    round-off is amplified by radius**-m, so ``prec`` should cover both.
    """
    n = nodes if nodes is not None else max(4 * count, 16)
    if n < count:
        raise ValueError("need at least as many nodes as coefficients")
    p = mp.prec if prec is None else prec
    with mp.workprec(p):
        r = mpf(radius)
        roots = [mpmath.expjpi(mpf(2 * j) / n) for j in range(n)]
        values = [f(r * w) for w in roots]
        out = []
        for m in range(count):
            acc = mpc(0)
            for j, v in enumerate(values):
                acc += v * roots[(-j * m) % n]
            out.append(acc / (n * r**m))
        return out
