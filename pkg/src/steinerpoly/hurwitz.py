"""Exact Routh-Hurwitz stability certification.

Floating point has no say here: polynomials carry arbitrary-precision
rational coefficients and the Routh array is eliminated exactly, so a
"stable"/"unstable" verdict is a certificate, not an estimate.  Binomial
coefficients up to n = 64 overflow fixed-width integers, which is the
reason everything stays in big-integer rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .quermass import SteinerPolynomial

STABLE = "stable"
UNSTABLE = "unstable"
BOUNDARY = "boundary"

_N_MAX = 64


@dataclass(frozen=True)
class RationalPolynomial:
    """Polynomial with exact rational coefficients, ascending degree."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if not coeffs or coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def strip_zero_roots(self) -> tuple["RationalPolynomial", int]:
        """Divide out the exact power of the variable; returns (quotient, k)."""
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        return RationalPolynomial(self.coeffs[k:]), k

    def scaled(self, factor) -> "RationalPolynomial":
        f = Fraction(factor)
        if f <= 0:
            raise ValueError("scaling factor must be positive")
        return RationalPolynomial(tuple(c * f for c in self.coeffs))

    def coeffs_float(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.coeffs)

    @classmethod
    def from_steiner(cls, p: SteinerPolynomial) -> "RationalPolynomial":
        top = p.n
        while top > 0 and p.coeffs[top] == 0:
            top -= 1
        return cls(p.coeffs[:top + 1])


def is_hurwitz(p: RationalPolynomial) -> str:
    """Exact stability verdict: ``stable``, ``unstable`` or ``boundary``.

    Stable means every root lies strictly in the open left half plane,
    decided by sign changes in the first column of the exact Routh array.
    A vanishing pivot or an all-zero row (roots on the imaginary axis or
    symmetric root pairs) is reported as ``boundary``, never resolved by
    perturbation.  Zero roots must be stripped by the caller: the
    criterion is undefined with a zero constant term.
    """
    n = p.degree
    if n < 1:
        raise ValueError("stability of a constant polynomial is undefined")
    if p.coeffs[-1] <= 0:
        raise ValueError("leading coefficient must be positive")
    if p.coeffs[0] == 0:
        raise ValueError("zero constant term: strip zero roots before the test")

    width = n // 2 + 1
    row_hi = [p.coeffs[n - 2 * j] if n - 2 * j >= 0 else Fraction(0)
              for j in range(width)]
    row_lo = [p.coeffs[n - 1 - 2 * j] if n - 1 - 2 * j >= 0 else Fraction(0)
              for j in range(width)]
    pivots = [row_hi[0]]
    prev, cur = row_hi, row_lo
    for _ in range(n):
        if all(x == 0 for x in cur):
            return BOUNDARY
        if cur[0] == 0:
            return BOUNDARY
        pivots.append(cur[0])
        nxt = []
        for j in range(width - 1):
            a = prev[j + 1] if j + 1 < width else Fraction(0)
            b = cur[j + 1] if j + 1 < width else Fraction(0)
            nxt.append((cur[0] * a - prev[0] * b) / cur[0])
        nxt.append(Fraction(0))
        prev, cur = cur, nxt
    changes = sum(1 for a, b in zip(pivots, pivots[1:]) if (a > 0) != (b > 0))
    return STABLE if changes == 0 else UNSTABLE


def truncated_binomial(n: int, k: int) -> RationalPolynomial:
    """The tail sum_{i=k}^{n} binom(n, i) mu^i with exact integer coefficients."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    coeffs = [Fraction(0)] * k + [Fraction(math.comb(n, i)) for i in range(k, n + 1)]
    return RationalPolynomial(tuple(coeffs))


def min_unstable_dimension(k: int, n_max: int) -> int | None:
    """Smallest n <= n_max whose truncated binomial tail is unstable.

    Zero roots are stripped before each test.  Returns None when the
    whole range is stable (k = 0 gives the plain binomial (1+mu)^n, which
    is always stable).
    """
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    if n_max > _N_MAX:
        raise ValueError(f"scan capped at n_max <= {_N_MAX}, got {n_max}")
    for n in range(max(k + 1, 1), n_max + 1):
        stripped, _ = truncated_binomial(n, k).strip_zero_roots()
        if stripped.degree < 1:
            continue
        if is_hurwitz(stripped) == UNSTABLE:
            return n
    return None
