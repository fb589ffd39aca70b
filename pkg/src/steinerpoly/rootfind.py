"""Certified complex roots of Steiner polynomials.

Zero roots are split off exactly by counting leading zero coefficients;
the remaining polynomial is balanced, solved by Aberth-Ehrlich
simultaneous iteration, and each root is polished by Newton steps using
compensated (error-free transformation) polynomial evaluation.  Every
returned root carries an a-posteriori error radius.

The solver is deterministic: fixed initial configuration, fixed
iteration order, no randomness, so identical inputs give bitwise
identical outputs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .quermass import SteinerPolynomial, RadiusPair

_EPS = float(np.finfo(float).eps)

MAX_SWEEPS = 200
POLISH_STEPS = 5
RESIDUAL_REL_TOL = 1e-10
CLUSTER_REL_TOL = 1e-7
_SWEEP_STOP = 1e-14


class RootFindingError(RuntimeError):
    """Iteration budget exhausted or residual gate failed."""


@dataclass(frozen=True)
class Root:
    value: complex
    multiplicity: int
    error_radius: float


@dataclass(frozen=True)
class RootSet:
    """Roots with multiplicities, sorted by real part then imaginary part."""

    roots: tuple[Root, ...]

    @property
    def degree(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    def expanded(self) -> list[complex]:
        """Roots repeated according to multiplicity."""
        out: list[complex] = []
        for r in self.roots:
            out.extend([r.value] * r.multiplicity)
        return out

    def real_parts(self) -> list[float]:
        return [r.value.real for r in self.expanded()]

    @property
    def min_real(self) -> float:
        return min(r.value.real for r in self.roots)

    @property
    def max_real(self) -> float:
        return max(r.value.real for r in self.roots)

    def to_json(self) -> str:
        return json.dumps({"roots": [
            {"re": r.value.real, "im": r.value.imag,
             "mult": r.multiplicity, "err": r.error_radius}
            for r in self.roots]})


@dataclass(frozen=True)
class Annulus:
    """Ring rho1 <= |s| <= rho2 containing every nonzero root."""

    rho1: float
    rho2: float

    def __post_init__(self):
        if not (0.0 <= self.rho1 <= self.rho2):
            raise ValueError(f"need 0 <= rho1 <= rho2, got {self.rho1}, {self.rho2}")

    def to_json(self) -> str:
        return json.dumps({"rho1": self.rho1, "rho2": self.rho2})


# ---------------------------------------------------------------------------
# error-free transformations (Dekker / Veltkamp, no FMA required)

_SPLITTER = 134217729.0  # 2^27 + 1


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a: float) -> tuple[float, float]:
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _comp_horner(coeffs: list[float], z: complex) -> tuple[complex, float]:
    """Compensated Horner for real coefficients at a complex point.

    Returns the evaluated value (accurate as if computed in roughly twice
    the working precision) and an upper bound on its remaining error.
    """
    m = len(coeffs) - 1
    x, y = z.real, z.imag
    u, v = coeffs[m], 0.0
    cu, cv = 0.0, 0.0  # compensation, plain arithmetic
    az = abs(z)
    hsum = abs(coeffs[m])
    for i in range(m - 1, -1, -1):
        p1, e1 = _two_prod(u, x)
        p2, e2 = _two_prod(v, y)
        sre, e3 = _two_sum(p1, -p2)
        p3, e4 = _two_prod(u, y)
        p4, e5 = _two_prod(v, x)
        sim, e6 = _two_sum(p3, p4)
        tre, e7 = _two_sum(sre, coeffs[i])
        ncu = cu * x - cv * y + (e1 - e2 + e3 + e7)
        ncv = cu * y + cv * x + (e4 + e5 + e6)
        u, v, cu, cv = tre, sim, ncu, ncv
        hsum = hsum * az + abs(coeffs[i])
    val = complex(u + cu, v + cv)
    bound = _EPS * abs(val) + (4.0 * (m + 1) * _EPS) ** 2 * hsum
    return val, bound


def _horner(coeffs, z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _abs_horner(coeffs, az: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * az + abs(c)
    return acc


def _derivative(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


# ---------------------------------------------------------------------------


def _aberth(coeffs: list[float], max_sweeps: int) -> np.ndarray:
    """Simultaneous iteration on a balanced copy of the polynomial.

    After substituting s = tau*t with tau = (c_0/c_m)^(1/m) the root
    magnitudes of the working polynomial have geometric mean 1, which
    keeps extreme coefficient ranges (the squashed crosspolytopes exceed
    1e30) inside double range.  A root stops iterating once its update is
    below 1e-14 relatively or its residual reaches the evaluation noise
    floor (multiple roots never meet the displacement test).
    """
    m = len(coeffs) - 1
    tau = (coeffs[0] / coeffs[m]) ** (1.0 / m)
    q = np.array([coeffs[i] * tau**i for i in range(m + 1)], dtype=float)
    q /= np.abs(q).max()
    dq = q[1:] * np.arange(1.0, m + 1.0)
    aq = np.abs(q)

    def vec_val(cs, zz):
        acc = np.zeros(zz.shape, dtype=zz.dtype)
        for c in cs[::-1]:
            acc = acc * zz + c
        return acc

    ang = 2.0 * np.pi * np.arange(m) / m + np.pi / (2.0 * m) + 0.1
    z = np.exp(1j * ang)
    active = np.ones(m, dtype=bool)

    for _ in range(max_sweeps):
        p = vec_val(q, z)
        dp = vec_val(dq, z)
        eta = 2.0 * m * _EPS * vec_val(aq, np.abs(z))
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        diff = np.where(diff == 0, 1e-300, diff)
        recip = 1.0 / diff
        np.fill_diagonal(recip, 0.0)
        pair_sum = recip.sum(axis=1)
        dp_safe = np.where(dp == 0, 1.0, dp)
        ratio = np.where(dp == 0, 0.0, p / dp_safe)
        denom = 1.0 - ratio * pair_sum
        denom = np.where(denom == 0, 1.0, denom)
        delta = np.where(active, ratio / denom, 0.0)
        z = z - delta
        done = (np.abs(p) <= eta) | (np.abs(delta) <= _SWEEP_STOP * (1.0 + np.abs(z)))
        active &= ~done
        if not active.any():
            return z * tau
    raise RootFindingError(
        f"Aberth iteration did not settle in {max_sweeps} sweeps "
        f"for coefficients {coeffs}")


def _cluster(points: list[complex], guards: list[float],
             cluster_rel_tol: float) -> list[list[int]]:
    """Union-find grouping of points whose error disks overlap.

    The generous relative floor merges the ring of iterates that a
    multiple root collapses into; genuinely close simple roots keep
    guards at rounding level and are never merged.
    """
    m = len(points)
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            floor = cluster_rel_tol * max(1.0, abs(points[i]), abs(points[j]))
            if abs(points[i] - points[j]) <= max(guards[i] + guards[j], floor):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _newton_polish(coeffs: list[float], z: complex, steps: int) -> complex:
    dcoeffs = _derivative(coeffs)
    for _ in range(steps):
        fz, _ = _comp_horner(coeffs, z)
        dfz, _ = _comp_horner(dcoeffs, z)
        if dfz == 0:
            break
        step = fz / dfz
        z = z - step
        if abs(step) <= _EPS * (1.0 + abs(z)):
            break
    return z


def _exact_newton(coeffs: list[float], z: complex, steps: int = 3) -> complex:
    """Escalated polish: evaluate f and f' in exact rational arithmetic."""
    cs = [Fraction(c) for c in coeffs]
    dcs = [i * c for i, c in enumerate(cs)][1:]
    zr, zi = Fraction(z.real), Fraction(z.imag)
    for _ in range(steps):
        fr, fi = _frac_horner(cs, zr, zi)
        dr, di = _frac_horner(dcs, zr, zi)
        dd = dr * dr + di * di
        if dd == 0:
            break
        sr = (fr * dr + fi * di) / dd
        si = (fi * dr - fr * di) / dd
        zr, zi = zr - sr, zi - si
    return complex(float(zr), float(zi))


def _frac_horner(cs: list[Fraction], zr: Fraction, zi: Fraction):
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(cs):
        ar, ai = ar * zr - ai * zi + c, ar * zi + ai * zr
    return ar, ai


def _error_radius(coeffs: list[float], z: complex, mu: int, m: int) -> float:
    """Inclusion radius around z for a multiplicity-mu root.

    Derived from the logarithmic-derivative bound: some root lies within
    m |f/f'| of any point, generalised through the mu-th derivative for
    merged clusters.  Floored at representation level so a zero residual
    never claims an impossible certificate.
    """
    g = list(coeffs)
    for _ in range(mu - 1):
        g = _derivative(g)
    gz, gerr = _comp_horner(g, z)
    dg = _derivative(g)
    dgz, _ = _comp_horner(dg, z)
    floor = m * _EPS * (1.0 + abs(z))
    if dgz == 0:
        return float(max(floor, abs(gz) ** (1.0 / max(mu, 1))))
    raw = m * (abs(gz) + gerr) / abs(dgz)
    if mu > 1:
        raw = raw ** (1.0 / mu)
    return float(max(raw, floor))


def find_roots(p: SteinerPolynomial, max_sweeps: int = MAX_SWEEPS,
               polish_steps: int = POLISH_STEPS,
               residual_rel_tol: float = RESIDUAL_REL_TOL,
               cluster_rel_tol: float = CLUSTER_REL_TOL) -> RootSet:
    """All roots of the polynomial, with multiplicities and error radii.

    Raises :class:`RootFindingError` (naming the polynomial) instead of
    returning unvetted values when the iteration budget runs out or a
    root fails the residual gate |f(z)| <= 1e-10 * scale(f).
    """
    cs = list(p.coeffs_float)
    if all(c == 0.0 for c in cs):
        raise ValueError("polynomial has no nonzero coefficient")

    nzeros = 0
    while cs[nzeros] == 0.0:
        nzeros += 1
    top = len(cs) - 1
    while cs[top] == 0.0:
        top -= 1
    defl = cs[nzeros:top + 1]
    m = len(defl) - 1

    roots: list[Root] = []
    if nzeros:
        roots.append(Root(0j, nzeros, 0.0))
    if m == 0:
        return RootSet(tuple(roots))
    if m == 1:
        z = complex(-defl[0] / defl[1])
        roots.append(Root(z, 1, _error_radius(defl, z, 1, 1)))
        return _finish(p, roots, defl, residual_rel_tol)

    approx = [complex(z) for z in _aberth(defl, max_sweeps)]

    dcoeffs = _derivative(defl)
    guards = []
    for z in approx:
        fz = _horner(defl, z)
        eta = 2.0 * m * _EPS * _abs_horner(defl, abs(z))
        dfz = _horner(dcoeffs, z)
        guards.append(math.inf if dfz == 0 else m * (abs(fz) + eta) / abs(dfz))

    polished: list[tuple[complex, int]] = []
    for group in _cluster(approx, guards, cluster_rel_tol):
        mu = len(group)
        center = sum(approx[i] for i in group) / mu
        g = list(defl)
        for _ in range(mu - 1):
            g = _derivative(g)
        z = _newton_polish(g, center, polish_steps)
        if abs(z.imag) <= 1e-13 * (1.0 + abs(z.real)):
            z = complex(z.real, 0.0)
        polished.append((z, mu))

    polished = _pair_conjugates(polished)
    for z, mu in polished:
        roots.append(Root(z, mu, _error_radius(defl, z, mu, m)))
    return _finish(p, roots, defl, residual_rel_tol)


def _pair_conjugates(items: list[tuple[complex, int]]) -> list[tuple[complex, int]]:
    """Symmetrise the multiset under conjugation (real coefficients).

    Nonreal roots are matched with their nearest conjugate partner and
    both replaced by the exact conjugate pair of their average, making
    conjugate symmetry structural rather than approximate.
    """
    reals = [(z, mu) for z, mu in items if z.imag == 0.0]
    upper = [(z, mu) for z, mu in items if z.imag > 0.0]
    lower = [(z, mu) for z, mu in items if z.imag < 0.0]
    out = list(reals)
    for z, mu in sorted(upper, key=lambda t: (t[0].real, t[0].imag)):
        if not lower:
            out.append((complex(z.real, 0.0), mu))
            continue
        j = min(range(len(lower)),
                key=lambda k: abs(lower[k][0] - z.conjugate()))
        zl, mul = lower.pop(j)
        w = (z + zl.conjugate()) / 2.0
        out.append((w, mu))
        out.append((w.conjugate(), mul))
    for z, mu in lower:  # unmatched stragglers collapse to the real axis
        out.append((complex(z.real, 0.0), mu))
    return out


def _finish(p: SteinerPolynomial, roots: list[Root], defl: list[float],
            residual_rel_tol: float) -> RootSet:
    full = list(p.coeffs_float)
    scale = max(abs(c) for c in full)
    checked: list[Root] = []
    for r in roots:
        if r.value == 0:
            checked.append(r)
            continue
        gate = residual_rel_tol * scale * max(1.0, abs(r.value)) ** p.n
        fz, ferr = _comp_horner(full, r.value)
        if abs(fz) + ferr > gate:
            z2 = _exact_newton(defl, r.value)
            fz2, ferr2 = _comp_horner(full, z2)
            if abs(fz2) + ferr2 > gate:
                raise RootFindingError(
                    f"residual {abs(fz2):.3e} above gate {gate:.3e} at root "
                    f"{z2} of polynomial with coefficients {p.coeffs_float}")
            r = Root(z2, r.multiplicity, _error_radius(
                defl, z2, r.multiplicity, len(defl) - 1))
        checked.append(r)
    checked.sort(key=lambda r: (r.value.real, r.value.imag))
    return RootSet(tuple(checked))


def annulus_bounds(p: SteinerPolynomial) -> Annulus:
    """A-priori ring containing all nonzero roots.

    For positive coefficients c_k..c_t the nonzero roots satisfy
    min(c_j/c_{j+1}) <= |s| <= max(c_j/c_{j+1}) over the consecutive
    ratios of the nonzero span; for log-concave body data these are
    ((n-m+1)/m) W_{n-m}/W_{n-m+1} and n W_{n-1}/W_n.
    """
    cs = p.coeffs_float
    lo = 0
    while lo <= p.n and cs[lo] == 0.0:
        lo += 1
    hi = p.n
    while hi >= 0 and cs[hi] == 0.0:
        hi -= 1
    if hi - lo < 1:
        raise ValueError("need at least two nonzero coefficients for root bounds")
    span = cs[lo:hi + 1]
    if any(c <= 0.0 for c in span):
        raise ValueError(
            f"interior zero or negative coefficient in {cs}; not a body polynomial")
    ratios = [span[j] / span[j + 1] for j in range(len(span) - 1)]
    return Annulus(rho1=min(ratios), rho2=max(ratios))


def re_sum_bounds(rs: RootSet, rad: RadiusPair,
                  tol: float = 1e-9) -> tuple[bool, bool | None]:
    """Check sum_i |Re gamma_i| against n*r (lower) and n*R (upper).

    The upper check applies only when R is known and every real part is
    nonpositive; otherwise it reports None (not applicable).
    """
    n = rs.degree
    total = sum(abs(x) for x in rs.real_parts())
    lower_ok = total >= n * rad.r - tol
    if rad.R is None or rs.max_real > tol:
        return lower_ok, None
    return lower_ok, total <= n * rad.R + tol
