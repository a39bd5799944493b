"""The polynomial family P_m(s) and its critical-line form Q_m(t).

P_m(s) = sum_k C(m,k) (-1)^k 2^(k+1) (s)_k / k! are the Taylor coefficients
of G_s(z) = 2 (1-z)^(s-1) (1+z)^(-s) at z = 0. On the critical line,
Q_m(t) = P_m(1/2 + it) / 2 = i^(m mod 2) R_m(t) with R_m real, and the Q_m
are orthonormal for the weight sech(pi t) on the real line.

Everything structural (symmetry, contiguity, Gram matrix, root counts) is
done in exact rational arithmetic.
"""

from __future__ import annotations

import csv
import io
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
from mpmath import mp, mpf, mpc

from .numcore import binomial, euler_number
from .quadrature import QuadratureSpec, integrate_finite, integrate_halfline
from .specfun import gamma

__all__ = [
    "RationalPoly",
    "BasisFamily",
    "build_family",
    "family",
    "eval_P",
    "eval_P_table",
    "taylor_check_G",
    "lemma1_bound",
    "lemma1_bound_check",
    "contiguous_check",
    "sech_moment",
    "gram_matrix",
    "certify_real_roots",
    "laguerre",
    "mellin_laguerre_check",
    "integral_representation_check",
    "family_csv",
]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class RationalPoly:
    """Polynomial with exact rational coefficients, lowest degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x") -> None:
        c = [_frac(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)
        self.var = var

    @classmethod
    def monomial(cls, k: int, coeff=1, var: str = "x") -> "RationalPoly":
        return cls([0] * k + [coeff], var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RationalPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, a in enumerate(self.coeffs):
            if a:
                terms.append(f"{a}" if k == 0 else f"({a})*{self.var}^{k}")
        return " + ".join(terms)

    def _coerce(self, other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return other
        return RationalPoly([other], self.var)

    def __add__(self, other) -> "RationalPoly":
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return RationalPoly([self[k] + o[k] for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self) -> "RationalPoly":
        return RationalPoly([-a for a in self.coeffs], self.var)

    def __sub__(self, other) -> "RationalPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalPoly":
        o = self._coerce(other)
        if not self.coeffs or not o.coeffs:
            return RationalPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out, self.var)

    __rmul__ = __mul__

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction, else in the active mpmath context."""
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for a in reversed(self.coeffs):
                acc = acc * x + a
            return acc
        acc = mpf(0) if not isinstance(x, mpc) else mpc(0)
        for a in reversed(self.coeffs):
            acc = acc * x + mpf(a.numerator) / a.denominator
        return acc

    def derivative(self) -> "RationalPoly":
        return RationalPoly([k * a for k, a in enumerate(self.coeffs)][1:], self.var)

    def __divmod__(self, other: "RationalPoly") -> tuple["RationalPoly", "RationalPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading()
        quot = [Fraction(0)] * max(0, len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return RationalPoly(quot, self.var), RationalPoly(rem[:dq], self.var)

    def __mod__(self, other: "RationalPoly") -> "RationalPoly":
        return divmod(self, other)[1]

    def scaled_variable(self, c) -> "RationalPoly":
        """p(c x)."""
        c = _frac(c)
        return RationalPoly([a * c**k for k, a in enumerate(self.coeffs)], self.var)

    def taylor_shift(self, c) -> "RationalPoly":
        """p(x + c), by repeated synthetic division."""
        c = _frac(c)
        a = list(self.coeffs)
        n = len(a)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                a[j] += c * a[j + 1]
        return RationalPoly(a, self.var)

    def compose(self, inner: "RationalPoly") -> "RationalPoly":
        acc = RationalPoly([], inner.var)
        for a in reversed(self.coeffs):
            acc = acc * inner + a
        return acc

    # --- real roots -----------------------------------------------------

    def sturm_sequence(self) -> list["RationalPoly"]:
        """p, p', -rem(p, p'), ... with each entry scaled by a positive constant."""
        if self.degree < 1:
            return [self]
        seq = [self._monic_abs(), self.derivative()._monic_abs()]
        while True:
            r = seq[-2] % seq[-1]
            if r.is_zero():
                return seq
            seq.append((-r)._monic_abs())

    def _monic_abs(self) -> "RationalPoly":
        lead = abs(self.leading())
        return RationalPoly([a / lead for a in self.coeffs], self.var) if lead else self

    @staticmethod
    def _sign_changes(values: Sequence) -> int:
        signs = [v > 0 for v in values if v != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def integer_form(self) -> list[int]:
        """Coefficients times the positive lcm of their denominators."""
        den = math.lcm(*(a.denominator for a in self.coeffs)) if self.coeffs else 1
        return [int(a * den) for a in self.coeffs]

    @staticmethod
    def _sign_integer(ic: list[int], x: Fraction) -> int:
        # den^d * p(num/den) = sum c_i num^i den^(d-i), same sign as p(x)
        num, den = x.numerator, x.denominator
        acc = 0
        dpow = 1
        for c in reversed(ic):
            acc = acc * num + c * dpow
            dpow *= den
        return (acc > 0) - (acc < 0)

    @staticmethod
    def _signs_at(seq: list["RationalPoly"], x, ints: list[list[int]] | None = None) -> list:
        if x == math.inf or x == -math.inf:
            neg = x < 0
            return [p.leading() * (-1 if neg and p.degree % 2 else 1) for p in seq]
        x = _frac(x)
        ints = ints if ints is not None else [p.integer_form() for p in seq]
        return [RationalPoly._sign_integer(ic, x) for ic in ints]

    def count_real_roots(self, a=-math.inf, b=math.inf, seq: list["RationalPoly"] | None = None,
                         ints: list[list[int]] | None = None) -> int:
        """Number of distinct real roots in (a, b] by Sturm's theorem."""
        seq = seq if seq is not None else self.sturm_sequence()
        if ints is None:
            ints = [p.integer_form() for p in seq]
        return (self._sign_changes(self._signs_at(seq, a, ints))
                - self._sign_changes(self._signs_at(seq, b, ints)))

    def root_bound(self) -> Fraction:
        """Cauchy bound: every root satisfies |x| < 1 + max |a_k / a_n|."""
        lead = self.leading()
        return 1 + max((abs(a / lead) for a in self.coeffs[:-1]), default=Fraction(0))

    def isolate_real_roots(self) -> list[tuple[Fraction, Fraction]]:
        """Disjoint intervals (a, b], each holding exactly one distinct real root."""
        if self.degree < 1:
            return []
        seq = self.sturm_sequence()
        ints = [p.integer_form() for p in seq]
        bound = self.root_bound()
        # power of two bound keeps bisection points dyadic
        top = Fraction(2) ** max(0, math.ceil(math.log2(bound)))
        out = []
        stack = [(-top, top)]
        while stack:
            a, b = stack.pop()
            n = self.count_real_roots(a, b, seq, ints)
            if n == 0:
                continue
            if n == 1:
                out.append((a, b))
                continue
            mid = (a + b) / 2
            stack.append((mid, b))
            stack.append((a, mid))
        return sorted(out)

    def refine_root(self, a: Fraction, b: Fraction, bits: int) -> Fraction:
        """Bisect an isolating interval (a, b] of a simple root to width 2^-bits."""
        ic = self.integer_form()
        if self._sign_integer(ic, b) == 0:
            return b
        width = Fraction(1, 2**bits)
        fa_pos = self._sign_integer(ic, a) > 0
        while b - a > width:
            mid = (a + b) / 2
            fm = self._sign_integer(ic, mid)
            if fm == 0:
                return mid
            if (fm > 0) == fa_pos:
                a = mid
            else:
                b = mid
        return (a + b) / 2


@dataclass(frozen=True)
class BasisFamily:
    max_m: int
    P: tuple[RationalPoly, ...]
    R: tuple[RationalPoly, ...]
    moments: tuple[Fraction, ...]

    def Q_parity(self, m: int) -> int:
        """Q_m = i**Q_parity(m) * R_m."""
        return m % 2


def _pochhammer_polys(n: int) -> list[list[int]]:
    """Integer coefficient lists of (s)_k = s(s+1)...(s+k-1), k = 0..n."""
    out = [[1]]
    for k in range(n):
        prev = out[-1]
        nxt = [0] * (len(prev) + 1)
        for j, a in enumerate(prev):
            nxt[j] += k * a
            nxt[j + 1] += a
        out.append(nxt)
    return out


def _extract_R(p: RationalPoly, m: int) -> RationalPoly:
    shifted = p.taylor_shift(Fraction(1, 2))  # P_m(1/2 + w)
    coeffs = []
    for k, a in enumerate(shifted.coeffs):
        if (k - m) % 2:
            if a != 0:
                raise AssertionError(f"parity violated in P_{m} at degree {k}")
            coeffs.append(Fraction(0))
        else:
            # (i t)^k = i^(m mod 2) * (-1)^((k - m mod 2)/2) t^k
            coeffs.append(a / 2 * (-1) ** ((k - m % 2) // 2))
    return RationalPoly(coeffs, "t")


def sech_moment(k: int) -> Fraction:
    """int t^k sech(pi t) dt over the real line: |E_k| / 4^(k/2), zero for odd k."""
    if k % 2:
        return Fraction(0)
    return Fraction(abs(euler_number(k)), 4 ** (k // 2))


def build_family(max_m: int) -> BasisFamily:
    """P_0..P_max_m from the explicit Pochhammer sum, and the matching R_m."""
    if max_m < 0:
        raise ValueError("max_m must be >= 0")
    poch = _pochhammer_polys(max_m)
    P, R = [], []
    for m in range(max_m + 1):
        # m! P_m(s) = sum_k C(m,k) (-2)^k 2 (m!/k!) (s)_k has integer coefficients
        acc = [0] * (m + 1)
        fall = math.factorial(m)
        for k in range(m + 1):
            if k:
                fall //= k
            c = binomial(m, k) * (-2) ** k * 2 * fall
            for j, a in enumerate(poch[k]):
                acc[j] += c * a
        mf = math.factorial(m)
        p = RationalPoly([Fraction(a, mf) for a in acc], "s")
        P.append(p)
        R.append(_extract_R(p, m))
    moments = tuple(sech_moment(2 * n) for n in range(max_m + 1))
    return BasisFamily(max_m, tuple(P), tuple(R), moments)


_EXACT_LIMIT = 64
_family_lock = threading.Lock()
_family_cache: list[BasisFamily] = []


def family(max_m: int) -> BasisFamily:
    """Cached family covering at least P_0..P_max_m."""
    for fam in _family_cache:
        if fam.max_m >= max_m:
            return fam
    fam = build_family(max(max_m, 8))
    with _family_lock:
        _family_cache.append(fam)
        _family_cache.sort(key=lambda f: f.max_m)
    return fam


def _horner_guard(p: RationalPoly, s) -> int:
    # bits lost to cancellation: log2(sum |c_k| |s|^k / |result|) is bounded by log2 of the sum
    with mp.workprec(32):
        r = abs(s)
        total = mpf(0)
        for a in reversed(p.coeffs):
            total = total * r + abs(mpf(a.numerator) / a.denominator)
        return max(0, int(mpmath.mag(total))) + 16


def _eval_explicit(m: int, s):
    """P_m(s) straight from the Pochhammer sum, with guard bits for the ~3^m cancellation."""
    wp = mp.prec + math.ceil(1.6 * m) + 32
    with mp.workprec(wp):
        s = mpmath.mpmathify(s)
        acc = mpf(0) if not isinstance(s, mpc) else mpc(0)
        term = mpf(2)  # C(m,k) (-2)^k 2 (s)_k / k!
        for k in range(m + 1):
            acc += term
            term = term * (-2) * (m - k) * (s + k) / ((k + 1) * (k + 1))
    return +acc


def eval_P(m: int, s, fam: BasisFamily | None = None):
    """P_m(s) at the active precision.

    Uses exact coefficients (Horner with guard bits) up to a moderate degree
    and the explicit binomial sum beyond it. With ``fam`` given, m must lie
    inside that family.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if fam is not None:
        if m > fam.max_m:
            raise ValueError(f"m={m} out of range for family with max_m={fam.max_m}")
        p = fam.P[m]
    elif m <= _EXACT_LIMIT:
        p = family(m).P[m]
    else:
        return _eval_explicit(m, s)
    s = mpmath.mpmathify(s)
    with mp.workprec(mp.prec + _horner_guard(p, s)):
        v = p(s)
    return +v


def eval_P_table(count: int, s) -> list:
    """[P_0(s), ..., P_{count-1}(s)] by the three-term recurrence

        (m+1) P_{m+1} = (1 - 2s) P_m + m P_{m-1}.

    Both independent solutions have comparable size in the strip, so the
    forward direction is stable; 16 guard bits cover the accumulated rounding.
    """
    if count <= 0:
        return []
    with mp.workprec(mp.prec + 16 + count.bit_length()):
        s = mpmath.mpmathify(s)
        a = 1 - 2 * s
        out = [mpf(2) * (1 if not isinstance(s, mpc) else mpc(1))]
        if count > 1:
            out.append(2 * a)
        for m in range(1, count - 1):
            out.append((a * out[m] + m * out[m - 1]) / (m + 1))
    return [+v for v in out]


def taylor_check_G(s, z, M: int):
    """|G_s(z) - sum_{m<=M} P_m(s) z^m| for |z| < 1."""
    s = mpmath.mpmathify(s)
    z = mpmath.mpmathify(z)
    if abs(z) >= 1:
        raise ValueError("|z| must be < 1")
    with mp.workprec(mp.prec + 16):
        g = 2 * mpmath.power(1 - z, s - 1) * mpmath.power(1 + z, -s)
        acc = mpc(0)
        zp = mpf(1)
        for p in eval_P_table(M + 1, s):
            acc += p * zp
            zp *= z
        gap = abs(g - acc)
    return +gap


def _require_strip(s) -> None:
    if not 0 < mpmath.re(s) < 1:
        raise ValueError("outside critical strip")


def lemma1_bound(m: int, s):
    """e^(pi |Im s|) (Gamma(sigma)/m^sigma + Gamma(1-sigma)/m^(1-sigma))."""
    s = mpmath.mpmathify(s)
    _require_strip(s)
    if m < 1:
        raise ValueError("m must be >= 1")
    sigma = mpmath.re(s)
    return mpmath.exp(mpmath.pi * abs(mpmath.im(s))) * (
        gamma(sigma) / mpmath.power(m, sigma) + gamma(1 - sigma) / mpmath.power(m, 1 - sigma)
    )


def lemma1_bound_check(m: int, s) -> bool:
    return bool(abs(eval_P(m, s)) <= lemma1_bound(m, s))


def contiguous_check(m: int, fam: BasisFamily | None = None) -> bool:
    """Exact check of P_m(1-s) = (-1)^m P_m(s) and s P_m(s+1) - (s-1) P_m(s-1) = (2m+1) P_m(s)."""
    fam = fam if fam is not None else family(m)
    p = fam.P[m]
    s = RationalPoly([0, 1], "s")
    reflected = p.compose(1 - s)
    if reflected != (-1) ** m * p:
        return False
    lhs = s * p.taylor_shift(1) - (s - 1) * p.taylor_shift(-1)
    return lhs == (2 * m + 1) * p


def gram_matrix(fam: BasisFamily, upto: int) -> list[list[Fraction]]:
    """G[m][n] = int Q_m conj(Q_n) sech(pi t) dt, exactly."""
    if upto > fam.max_m:
        raise ValueError("upto exceeds family size")
    moments = [sech_moment(k) for k in range(2 * upto + 1)]
    G = [[Fraction(0)] * (upto + 1) for _ in range(upto + 1)]
    for m in range(upto + 1):
        for n in range(m, upto + 1):
            if (m + n) % 2:
                continue  # odd integrand
            # i^(m%2) * conj(i^(n%2)) = 1 when m, n share parity
            prod = fam.R[m] * fam.R[n]
            val = sum((a * moments[k] for k, a in enumerate(prod.coeffs) if a), Fraction(0))
            G[m][n] = G[n][m] = val
    return G


def certify_real_roots(m: int, bits: int = 128, fam: BasisFamily | None = None) -> tuple[int, list[mpf]]:
    """Sturm count of the distinct real roots of R_m, and the roots to ``bits`` bits.

    A count equal to m means every root of Q_m is real and simple, so every
    root of P_m lies on Re s = 1/2.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    fam = fam if fam is not None else family(m)
    r = fam.R[m]
    count = r.count_real_roots()
    roots = []
    with mp.workprec(bits + 8):
        for a, b in r.isolate_real_roots():
            x = r.refine_root(a, b, bits + 4)
            roots.append(mpf(x.numerator) / x.denominator)
    return count, roots


def laguerre(m: int, x):
    """L_m(x) by (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return 1 + 0 * x
    prev, cur = mpf(1), 1 - x
    for k in range(1, m):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur


def mellin_laguerre_check(m: int, s, spec: QuadratureSpec | None = None):
    """|int_0^inf sqrt2 e^-x L_m(2x) x^(s-1) dx - Gamma(s) P_m(s)/sqrt2|."""
    spec = spec or QuadratureSpec()
    s = mpmath.mpmathify(s)
    if mpmath.re(s) <= 0:
        raise ValueError("Re s must be positive")
    with mp.workprec(spec.working_bits):
        res = integrate_halfline(
            lambda x: mpmath.exp(-x) * laguerre(m, 2 * x) * mpmath.power(x, s - 1), spec
        )
        if not res.converged:
            raise ArithmeticError("quadrature failed in mellin_laguerre_check")
        root2 = mpmath.sqrt(2)
        return abs(root2 * res.value - gamma(s) * eval_P(m, s) / root2)


def integral_representation_check(m: int, s, spec: QuadratureSpec | None = None):
    """|2 sin(pi s)/pi int_0^1 t^(s-1) (1-t)^(-s) (1-2t)^m dt - P_m(s)| for s in the strip."""
    spec = spec or QuadratureSpec()
    s = mpmath.mpmathify(s)
    _require_strip(s)
    with mp.workprec(spec.working_bits):
        res = integrate_finite(
            lambda t: mpmath.power(t, s - 1) * mpmath.power(1 - t, -s) * (1 - 2 * t) ** m, 0, 1, spec
        )
        if not res.converged:
            raise ArithmeticError("quadrature failed in integral_representation_check")
        lhs = 2 * mpmath.sin(mpmath.pi * s) / mpmath.pi * res.value
        return abs(lhs - eval_P(m, s))


def family_csv(fam: BasisFamily, which: str = "P") -> str:
    """CSV with one row per m: m, c_0, ..., c_max_m as exact "p/q" strings."""
    polys = {"P": fam.P, "R": fam.R}[which]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m"] + [f"c_{k}" for k in range(fam.max_m + 1)])
    for m, p in enumerate(polys):
        cells = [f"{p[k].numerator}/{p[k].denominator}" for k in range(m + 1)]
        w.writerow([m] + cells + [""] * (fam.max_m - m))
    return buf.getvalue()
