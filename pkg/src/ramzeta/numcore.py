"""Exact integer/rational arithmetic and the working-precision policy.

Python ``int`` and :class:`fractions.Fraction` serve as the big-integer and
big-rational types; everything here is exact.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "binomial",
    "bernoulli",
    "bernoulli_list",
    "euler_number",
    "harmonic",
    "PrecisionPolicy",
]

_lock = threading.Lock()
_bernoulli: list[Fraction] = [Fraction(1)]
_secant: list[int] = [1]


def binomial(m: int, k: int) -> int:
    """Exact C(m, k); returns 0 when k > m."""
    if m < 0 or k < 0:
        raise ValueError("binomial arguments must be nonnegative")
    if k > m:
        return 0
    return math.comb(m, k)


def bernoulli_list(n: int) -> list[Fraction]:
    """B_0..B_n as exact fractions.

    Uses sum_{j=0}^{k} C(k+1, j) B_j = 0, which yields B_1 = -1/2, i.e. the
    values B_k(0) of the Bernoulli polynomials.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n >= len(_bernoulli):
        with _lock:
            table = list(_bernoulli)
            for k in range(len(table), n + 1):
                if k >= 3 and k % 2 == 1:
                    table.append(Fraction(0))
                    continue
                acc = Fraction(0)
                for j in range(k):
                    if table[j]:
                        acc += math.comb(k + 1, j) * table[j]
                table.append(-acc / (k + 1))
            # publish only after the table is complete
            _bernoulli[:] = table
    return _bernoulli[: n + 1]


def bernoulli(k: int) -> Fraction:
    return bernoulli_list(k)[k]


def _secant_numbers(n: int) -> list[int]:
    # Seidel boustrophedon; the zigzag numbers at even index are the secant numbers.
    if n < len(_secant):
        return _secant[: n + 1]
    with _lock:
        row = [1]
        zigzag = [1]
        for i in range(1, 2 * n + 1):
            new = [0] * (i + 1)
            if i % 2 == 1:
                for j in range(1, i + 1):
                    new[j] = new[j - 1] + row[j - 1]
                zigzag.append(new[i])
            else:
                for j in range(i - 1, -1, -1):
                    new[j] = new[j + 1] + row[j]
                zigzag.append(new[0])
            row = new
        _secant[:] = zigzag[0::2]
    return _secant[: n + 1]


def euler_number(n: int) -> int:
    """Euler number E_n (coefficients of sech x = sum E_n x^n / n!).

    E_0 = 1, E_2 = -1, E_4 = 5, ... Odd indices are rejected.
    """
    if n < 0:
        raise ValueError("Euler index must be nonnegative")
    if n % 2:
        raise ValueError("odd Euler index")
    half = n // 2
    value = _secant_numbers(half)[half]
    return -value if half % 2 else value


def harmonic(m: int) -> Fraction:
    return sum((Fraction(1, k) for k in range(1, m + 1)), Fraction(0))


@dataclass(frozen=True)
class PrecisionPolicy:
    """Maps a target accuracy in bits to working bits for an operation.

    Coefficient sums at index m alternate with terms up to ~3**m while the
    result stays O(1), so they get ``ceil(1.6*m) + 64`` guard bits.
    """

    target_bits: int = 128
    quad_guard: int = 40
    base_guard: int = 24

    def __post_init__(self) -> None:
        if self.target_bits <= 0:
            raise ValueError("target_bits must be positive")

    def guard_rule(self, max_index: int = 0, kind: str = "default") -> int:
        if kind == "coeff":
            return self.target_bits + math.ceil(1.6 * max_index) + 64
        if kind == "quadrature":
            return self.target_bits + self.quad_guard
        if kind == "default":
            return self.target_bits + self.base_guard + max(0, max_index).bit_length()
        raise ValueError(f"unknown operation kind {kind!r}")

    def working_bits(self, max_index: int = 0, kind: str = "default") -> int:
        return self.guard_rule(max_index, kind)
