"""High-precision special functions and reference oracles.

Values are mpmath ``mpf``/``mpc`` numbers. Functions take an optional
``prec`` in bits; when omitted the active mpmath context precision is used.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import mp, mpf, mpc

from .numcore import bernoulli_list

__all__ = [
    "ZetaOracleConfig",
    "euler_gamma",
    "log_2pi",
    "digamma",
    "gamma",
    "loggamma",
    "zeta_reference",
    "zeta_integers",
]

_LOG2_BORWEIN = math.log2(3 + math.sqrt(8))
_lock = threading.Lock()
_const_cache: dict[tuple[str, int], mpf] = {}


def _prec(prec: int | None) -> int:
    return mp.prec if prec is None else int(prec)


def _memo_const(name: str, prec: int, compute) -> mpf:
    for (key, p), value in _const_cache.items():
        if key == name and p >= prec:
            return value
    value = compute(prec)
    with _lock:
        _const_cache.setdefault((name, prec), value)
    return value


def _brent_mcmillan(prec: int) -> mpf:
    # B1 algorithm: gamma = U/V - O(exp(-4n))
    wp = prec + 32
    with mp.workprec(wp):
        n = int(wp * math.log(2) / 4) + 2
        n2 = n * n
        a = -mpmath.log(n)
        b = mpf(1)
        u, v = a, b
        eps = mpf(2) ** (-wp)
        k = 1
        while True:
            b = b * n2 / (k * k)
            a = (a * n2 / k + b) / k
            u += a
            v += b
            if k > 3 * n and abs(a) < eps * abs(u) and b < eps * v:
                break
            k += 1
        return u / v


def euler_gamma(prec: int | None = None) -> mpf:
    """Euler's constant by the Brent-McMillan Bessel-function method."""
    p = _prec(prec)
    value = _memo_const("gamma", p, _brent_mcmillan)
    with mp.workprec(p):
        return +value


def log_2pi(prec: int | None = None) -> mpf:
    p = _prec(prec)

    def compute(q: int) -> mpf:
        with mp.workprec(q + 16):
            return mpmath.log(2 * mpmath.pi)

    value = _memo_const("log2pi", p, compute)
    with mp.workprec(p):
        return +value


def _is_nonpositive_integer(z: mpc) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == mpmath.floor(z.real)


@lru_cache(maxsize=64)
def _digamma_coeffs(prec: int, count: int) -> tuple[mpf, ...]:
    bern = bernoulli_list(2 * count)
    with mp.workprec(prec):
        return tuple(
            mpf(bern[2 * k].numerator) / (bern[2 * k].denominator * 2 * k)
            for k in range(1, count + 1)
        )


def digamma(z, prec: int | None = None):
    """Psi(z) = Gamma'(z)/Gamma(z).

    Shifts upward by Psi(z) = Psi(z+1) - 1/z until Re z exceeds a
    precision-dependent threshold, then sums the Stirling-type series with
    the sec^(2k)(arg z / 2) remainder bound.
    """
    p = _prec(prec)
    z = mpmath.mpmathify(z)
    zc = mpc(z)
    if _is_nonpositive_integer(zc):
        raise ValueError("digamma pole")
    wp = p + 20
    # smallest term of the series is about exp(-2*pi*Re w)
    threshold = max(8, math.ceil((wp + 30) / 9))
    with mp.workprec(wp):
        w = zc
        shift = mpc(0)
        while w.real < threshold:
            shift -= 1 / w
            w += 1
        eps = mpf(2) ** (-wp)
        theta = mpmath.arg(w)
        sec2 = 1 / mpmath.cos(theta / 2) ** 2
        inv_w2 = 1 / (w * w)
        result = mpmath.log(w) - 1 / (2 * w)
        count = int(4 * threshold) + 8
        coeffs = _digamma_coeffs(wp, count)
        power = inv_w2
        for k in range(count):
            term = coeffs[k] * power
            result -= term
            if abs(term) * sec2 ** (k + 2) < eps:
                break
            power *= inv_w2
        else:
            raise ArithmeticError("digamma asymptotic series did not reach target")
        result += shift
    with mp.workprec(p):
        return +result if isinstance(z, mpc) else +result.real


def gamma(z, prec: int | None = None):
    z = mpmath.mpmathify(z)
    if _is_nonpositive_integer(mpc(z)):
        raise ValueError("gamma pole")
    with mp.workprec(_prec(prec)):
        return mpmath.gamma(z)


def loggamma(z, prec: int | None = None):
    z = mpmath.mpmathify(z)
    if _is_nonpositive_integer(mpc(z)):
        raise ValueError("gamma pole")
    with mp.workprec(_prec(prec)):
        return mpmath.loggamma(z)


@dataclass(frozen=True)
class ZetaOracleConfig:
    """How zeta_reference evaluates. ``terms=None`` picks the count from the error bound."""

    method: str = "alternating"
    terms: int | None = None
    precision: int = 128

    def __post_init__(self) -> None:
        if self.method not in ("alternating", "euler-maclaurin"):
            raise ValueError(f"unknown zeta oracle method {self.method!r}")
        if self.precision < 2:
            raise ValueError("precision must be >= 2 bits")
        if self.terms is not None and self.terms < 1:
            raise ValueError("terms must be positive")


@lru_cache(maxsize=32)
def _borwein_table(n: int) -> tuple[tuple[int, ...], int]:
    """Integers (-1)^k (d_k - d_n) for k < n, and d_n."""
    d = []
    acc = 0
    for i in range(n + 1):
        num = n * math.factorial(n + i - 1) * 4**i
        den = math.factorial(n - i) * math.factorial(2 * i)
        q, r = divmod(num, den)
        assert r == 0
        acc += q
        d.append(acc)
    dn = d[n]
    return tuple((d[k] - dn) if k % 2 == 0 else (dn - d[k]) for k in range(n)), dn


def borwein_terms(s, prec: int) -> int:
    """Terms needed by the accelerated alternating series for |error| < 2^-prec."""
    s = mpc(s)
    t = abs(float(s.imag))
    extra = math.log2(3 * (1 + 2 * t)) + t * math.pi / 2 * math.log2(math.e)
    if s.real < 0.5:
        extra += (0.5 - float(s.real)) * math.log2(2 + abs(complex(s)))
    return math.ceil((prec + 10 + extra) / _LOG2_BORWEIN) + 2


def _eta_factor_guard(s: mpc) -> int:
    with mp.workprec(64):
        fac = abs(1 - mpmath.power(2, 1 - s))
    if fac == 0:
        raise ValueError("eta factor vanishes; use the Euler-Maclaurin oracle")
    return max(0, math.ceil(-math.log2(float(fac))))


def _zeta_alternating(s: mpc, prec: int, terms: int | None) -> mpc:
    if s.real <= 0:
        raise ValueError("alternating oracle requires Re(s) > 0")
    guard = _eta_factor_guard(s)
    n = terms if terms is not None else borwein_terms(s, prec + guard)
    coeffs, dn = _borwein_table(n)
    wp = prec + 24 + guard + n.bit_length()
    with mp.workprec(wp):
        acc = mpc(0)
        for k in range(n):
            acc += coeffs[k] * mpmath.power(k + 1, -s)
        return -acc / (dn * (1 - mpmath.power(2, 1 - s)))


def _zeta_euler_maclaurin(s: mpc, prec: int, terms: int | None) -> mpc:
    wp = prec + 24
    n_cut = terms if terms is not None else math.ceil((abs(complex(s)) + wp) / math.pi) + 4
    with mp.workprec(wp + n_cut.bit_length()):
        eps = mpf(2) ** (-wp)
        total = mpc(0)
        for n in range(1, n_cut):
            total += mpmath.power(n, -s)
        big_n = mpf(n_cut)
        npow = mpmath.power(big_n, -s)
        total += big_n * npow / (s - 1) + npow / 2
        bern = bernoulli_list(2 * wp)
        rising = s  # s(s+1)...(s+2k-2)
        npow_k = npow / big_n
        fact = mpf(2)
        previous = None
        for k in range(1, wp):
            term = mpf(bern[2 * k].numerator) / bern[2 * k].denominator / fact * rising * npow_k
            total += term
            size = abs(term)
            if size < eps * max(1, abs(total)):
                break
            if previous is not None and size > previous and k > 4:
                raise ArithmeticError("Euler-Maclaurin tail diverging; raise terms")
            previous = size
            rising *= (s + 2 * k - 1) * (s + 2 * k)
            npow_k /= big_n * big_n
            fact *= (2 * k + 1) * (2 * k + 2)
        return total


_zeta_cache: dict[tuple, mpc] = {}


def zeta_reference(s, cfg: ZetaOracleConfig | None = None):
    """Reference zeta(s), independent of Ramanujan summation.

    ``alternating`` (default) is Borwein's accelerated eta series, valid for
    Re s > 0 including the critical line; ``euler-maclaurin`` works for any
    s != 1 and serves as a cross-check.
    """
    cfg = cfg or ZetaOracleConfig(precision=mp.prec)
    s_in = mpmath.mpmathify(s)
    s = mpc(s_in)
    if s == 1:
        raise ValueError("pole of zeta")
    key = (s.real, s.imag, cfg.method, cfg.terms, cfg.precision)
    value = _zeta_cache.get(key)
    if value is None:
        if cfg.method == "alternating":
            value = _zeta_alternating(s, cfg.precision, cfg.terms)
        else:
            value = _zeta_euler_maclaurin(s, cfg.precision, cfg.terms)
        with _lock:
            if len(_zeta_cache) > 200_000:
                _zeta_cache.clear()
            _zeta_cache[key] = value
    with mp.workprec(cfg.precision):
        return +value.real if isinstance(s_in, mpf) else +value


_zint_cache: dict[int, list[mpf]] = {}


def zeta_integers(kmax: int, prec: int | None = None) -> list[mpf]:
    """[zeta(2), ..., zeta(kmax)] sharing one set of accelerated-series weights.

    Index ``j`` of the result holds zeta(j + 2).
    """
    p = _prec(prec)
    if kmax < 2:
        return []
    for q, table in _zint_cache.items():
        if q >= p and len(table) >= kmax - 1:
            with mp.workprec(p):
                return [+v for v in table[: kmax - 1]]
    n = math.ceil((p + 16) / _LOG2_BORWEIN) + 2
    coeffs, dn = _borwein_table(n)
    wp = p + 24 + n.bit_length()
    out: list[mpf] = []
    with mp.workprec(wp):
        inv = [1 / mpf(k + 1) for k in range(n)]
        powers = [v * v for v in inv]  # (k+1)^-2
        for s in range(2, kmax + 1):
            # direct sum converges quickly once 2^(wp/(s-1)) is small
            log_limit = wp / (s - 1)
            if log_limit < math.log2(n):
                limit = 2.0**log_limit
                direct = mpf(1)
                j = 2
                while j <= limit + 1:
                    direct += mpmath.power(j, -s)
                    j += 1
                out.append(direct)
            else:
                acc = mpf(0)
                for k in range(n):
                    acc += coeffs[k] * powers[k]
                out.append(-acc / (dn * (1 - mpf(2) ** (1 - s))))
                powers = [pw * v for pw, v in zip(powers, inv)]
    with _lock:
        _zint_cache[p] = out
    with mp.workprec(p):
        return [+v for v in out]
