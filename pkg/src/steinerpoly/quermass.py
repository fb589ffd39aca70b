"""Quermassintegral vectors and Steiner polynomials.

A body pair (K; E) in dimension n enters the library as the n+1 relative
quermassintegrals W_0..W_n.  The Steiner polynomial is

    f(s) = sum_i binom(n, i) W_i s^i,

whose complex roots the rest of the package studies.  Coefficients are
held as exact rationals (binomials in integer arithmetic times the exact
binary value of each W_i), so the polynomial transforms below are exact
and recovering the W_i from the coefficients round-trips bitwise.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

# Tolerances shared with the downstream checkers: exact identities are
# tested at 1e-12 relative, root-level identities at 1e-8, and the
# log-concavity validation of measured quermassintegrals at 1e-9.
EXACT_REL_TOL = 1e-12
ROOT_REL_TOL = 1e-8
AF_REL_TOL = 1e-9


def _as_fraction(x) -> Fraction:
    if isinstance(x, Rational):
        return Fraction(x)
    return Fraction(float(x))


@dataclass(frozen=True)
class QuermassVector:
    """Dimension n plus the quermassintegrals W_0(K;E) .. W_n(K;E).

    With ``valid_body=True`` the vector is asserted to come from an actual
    convex body against a full-dimensional gauge: entries are checked for
    the log-concavity W_i^2 >= W_{i-1} W_{i+1} (within ``AF_REL_TOL``
    relative) and, when K is lower-dimensional, for the exact leading-zero
    pattern W_0 = ... = W_{n-m-1} = 0 < W_{n-m}.
    """

    n: int
    w: tuple[float, ...]
    valid_body: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got n={self.n}")
        w = tuple(float(x) for x in self.w)
        object.__setattr__(self, "w", w)
        if len(w) != self.n + 1:
            raise ValueError(
                f"need n+1 = {self.n + 1} quermassintegrals, got {len(w)}")
        if any(x < 0.0 or math.isnan(x) or math.isinf(x) for x in w):
            raise ValueError(f"quermassintegrals must be finite and >= 0: {w}")
        if self.valid_body:
            if not w[self.n] > 0.0:
                raise ValueError("W_n must be positive for a full-dimensional gauge")
            lead = self._leading_zeros()
            if any(x == 0.0 for x in w[lead:]):
                raise ValueError(
                    f"zero entries of a body vector must form a prefix: {w}")
            bad = self.log_concavity_violations()
            if bad:
                raise ValueError(
                    f"log-concavity fails at indices {bad} beyond "
                    f"{AF_REL_TOL} relative: {w}")

    def _leading_zeros(self) -> int:
        k = 0
        while k <= self.n and self.w[k] == 0.0:
            k += 1
        return k

    @property
    def dim(self) -> int:
        """Dimension of K implied by the leading-zero pattern."""
        return self.n - self._leading_zeros()

    def log_concavity_violations(self, rel_tol: float = AF_REL_TOL) -> list[int]:
        """Indices i where W_i^2 >= W_{i-1} W_{i+1} fails beyond rel_tol."""
        bad = []
        for i in range(1, self.n):
            lhs = self.w[i] * self.w[i]
            rhs = self.w[i - 1] * self.w[i + 1]
            scale = max(lhs, rhs, 1e-300)
            if lhs - rhs < -rel_tol * scale:
                bad.append(i)
        return bad

    def is_log_concave(self, rel_tol: float = AF_REL_TOL) -> bool:
        return not self.log_concavity_violations(rel_tol)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "W": list(self.w)})

    @classmethod
    def from_json(cls, text: str, valid_body: bool = False) -> "QuermassVector":
        obj = json.loads(text)
        return cls(n=int(obj["n"]), w=tuple(float(x) for x in obj["W"]),
                   valid_body=valid_body)


@dataclass(frozen=True)
class RadiusPair:
    """Relative inradius r(K;E) and circumradius R(K;E).

    ``R`` is None when the body family does not determine it (abstract
    tangential bodies); checks needing it are then reported as
    not applicable rather than guessed.
    """

    r: float
    R: float | None

    def __post_init__(self):
        if self.r < 0.0:
            raise ValueError(f"inradius must be >= 0, got {self.r}")
        if self.R is not None:
            if not self.R > 0.0:
                raise ValueError(f"circumradius must be positive, got {self.R}")
            if self.r > self.R * (1.0 + 1e-12):
                raise ValueError(f"need r <= R, got r={self.r}, R={self.R}")


def swap_radii(rad: RadiusPair) -> RadiusPair:
    """Radii of the swapped pair (E; K) from those of (K; E).

    Uses r(K;E) R(E;K) = 1 in both directions; a zero inradius swaps to an
    unknown circumradius and an unknown circumradius to a zero inradius.
    """
    r_new = 1.0 / rad.R if rad.R is not None else 0.0
    R_new = 1.0 / rad.r if rad.r > 0.0 else None
    return RadiusPair(r=r_new, R=R_new)


@dataclass(frozen=True)
class SteinerPolynomial:
    """Degree-n polynomial with coeffs[i] = binom(n, i) W_i, held exactly."""

    n: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(_as_fraction(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.n + 1:
            raise ValueError(
                f"degree-{self.n} polynomial needs {self.n + 1} coefficients, "
                f"got {len(coeffs)}")
        if any(c < 0 for c in coeffs):
            raise ValueError("Steiner polynomial coefficients must be >= 0")

    @property
    def coeffs_float(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.coeffs)

    def evaluate(self, s: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs_float):
            acc = acc * s + c
        return acc

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "coeffs": [float(c) for c in self.coeffs]})

    @classmethod
    def from_json(cls, text: str) -> "SteinerPolynomial":
        obj = json.loads(text)
        return cls(n=int(obj["n"]),
                   coeffs=tuple(Fraction(float(c)) for c in obj["coeffs"]))


def build_polynomial(q: QuermassVector) -> SteinerPolynomial:
    """Steiner polynomial of a quermassintegral vector.

    Binomial weights are exact integers; each coefficient is the exact
    product binom(n, i) * W_i, so dividing back by the binomials recovers
    the input to the last bit.
    """
    coeffs = tuple(math.comb(q.n, i) * Fraction(q.w[i]) for i in range(q.n + 1))
    return SteinerPolynomial(n=q.n, coeffs=coeffs)


def quermass_of(p: SteinerPolynomial, valid_body: bool = False) -> QuermassVector:
    """Inverse of :func:`build_polynomial` (exact division by binomials)."""
    w = tuple(float(p.coeffs[i] / math.comb(p.n, i)) for i in range(p.n + 1))
    return QuermassVector(n=p.n, w=w, valid_body=valid_body)


def shift_by_gauge(p: SteinerPolynomial, nu) -> SteinerPolynomial:
    """Polynomial of the outer-parallel pair (K + nu*E; E): s -> f(s + nu).

    Expanded by exact binomial convolution, never by repeated synthetic
    division, so coefficientwise error stays at the conversion level of nu
    itself (zero for rational nu).
    """
    nu_f = _as_fraction(nu)
    if nu_f < 0:
        raise ValueError(f"shift must be >= 0, got {nu}")
    n = p.n
    new = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        ci = p.coeffs[i]
        if ci == 0:
            continue
        power = Fraction(1)
        # contributions c_i * binom(i, j) nu^{i-j} s^j, highest j first
        for j in range(i, -1, -1):
            new[j] += ci * math.comb(i, j) * power
            power *= nu_f
    return SteinerPolynomial(n=n, coeffs=tuple(new))


def swap_bodies(q: QuermassVector) -> QuermassVector:
    """Reverse the vector: W_i(E; K) = W_{n-i}(K; E).

    An involution.  The nonzero roots of the swapped polynomial are the
    reciprocals of the nonzero roots of the original.  The body flag is
    kept only when K is full-dimensional, since otherwise the swapped
    vector describes a degenerate gauge.
    """
    keep_flag = q.valid_body and q.w[0] > 0.0
    return QuermassVector(n=q.n, w=q.w[::-1], valid_body=keep_flag)


def vieta_sums(p: SteinerPolynomial) -> tuple[float, float]:
    """(sum of roots, product term) from the coefficients alone.

    Returns (-n W_{n-1}/W_n, (-1)^n W_0/W_n); an independent check for any
    computed root set.  Requires a nonzero leading coefficient.
    """
    if p.coeffs[p.n] == 0:
        raise ValueError("leading coefficient is zero; root sum undefined")
    root_sum = float(-p.coeffs[p.n - 1] / p.coeffs[p.n])
    product = float(p.coeffs[0] / p.coeffs[p.n])
    if p.n % 2:
        product = -product
    return root_sum, product
