"""Constructors for every body family the library studies.

Each constructor returns the quermassintegral vector of the pair (K; E)
together with the relative inradius/circumradius when the family
determines them.  Closed forms are used wherever they exist (balls,
segments, planar bodies, tangential families); orthogonal crosspolytopes
need one-dimensional external-angle quadrature.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import combinations

from .quadrature import SQRT_PI, IntegrandSpec, integrate_gaussian_erf, solve_scalar
from .quermass import QuermassVector, RadiusPair
from .hurwitz import RationalPolynomial, truncated_binomial
from .rootfind import Root, RootSet


def unit_ball_volume(n: int) -> float:
    """kappa_n from the even/odd closed forms (no Gamma evaluation)."""
    if n < 0:
        raise ValueError(f"dimension must be >= 0, got {n}")
    if n % 2 == 0:
        m = n // 2
        return math.pi**m / math.factorial(m)
    m = (n - 1) // 2
    return 2.0**n * math.factorial(m) * math.pi**m / math.factorial(n)


def make_ball(n: int) -> tuple[QuermassVector, RadiusPair]:
    """The pair (B_n; B_n): every quermassintegral equals kappa_n, r = R = 1."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    kappa = unit_ball_volume(n)
    q = QuermassVector(n=n, w=(kappa,) * (n + 1), valid_body=True)
    return q, RadiusPair(r=1.0, R=1.0)


def make_segment(n: int, length: float) -> tuple[QuermassVector, RadiusPair]:
    """Line segment of the given length against the unit ball.

    The outer parallel volume of a segment is kappa_n rho^n +
    length kappa_{n-1} rho^{n-1}, which pins W_{n-1} = length kappa_{n-1} / n
    and leaves every lower quermassintegral zero.
    """
    if n < 2:
        raise ValueError("a segment needs ambient dimension >= 2")
    if not length > 0:
        raise ValueError(f"length must be positive, got {length}")
    w = [0.0] * (n + 1)
    w[n - 1] = length * unit_ball_volume(n - 1) / n
    w[n] = unit_ball_volume(n)
    q = QuermassVector(n=n, w=tuple(w), valid_body=True)
    return q, RadiusPair(r=0.0, R=length / 2.0)


def make_planar3d(area: float, perimeter: float,
                  circumradius: float | None = None) -> tuple[QuermassVector, RadiusPair]:
    """A planar convex body embedded in R^3, described by area and perimeter.

    W = (0, 2A/3, pi p / 6, 4 pi / 3); the inradius against B_3 is zero.
    """
    if area < 0 or perimeter < 0:
        raise ValueError("area and perimeter must be >= 0")
    q = QuermassVector(
        n=3,
        w=(0.0, 2.0 * area / 3.0, math.pi * perimeter / 6.0, 4.0 * math.pi / 3.0),
        valid_body=True)
    return q, RadiusPair(r=0.0, R=circumradius)


@dataclass(frozen=True)
class LensGeometry:
    """Symmetric lens: two equal circular arcs meeting at half-angle phi.

    The defining relations p sin(phi) = 4 R phi and
    8 phi A = p (p - 4 R cos(phi)) are validated at construction.
    """

    R: float
    p: float
    phi: float
    A: float

    def __post_init__(self):
        if not 0.0 < self.phi < math.pi / 2.0 + 1e-12:
            raise ValueError(f"half-angle out of range: {self.phi}")
        resid = self.p * math.sin(self.phi) - 4.0 * self.R * self.phi
        if abs(resid) > 1e-12 * max(self.p, 1.0):
            raise ValueError(f"inconsistent lens data: residual {resid}")
        area = self.p * (self.p - 4.0 * self.R * math.cos(self.phi)) / (8.0 * self.phi)
        if abs(area - self.A) > 1e-12 * max(area, 1.0):
            raise ValueError(f"area {self.A} does not match geometry ({area})")


def make_lens(R: float, p: float) -> tuple[LensGeometry, QuermassVector, RadiusPair]:
    """Symmetric planar lens in R^3 with circumradius R and perimeter p.

    Solvable exactly when 4R < p < 2 pi R: the half-angle comes from
    bisection of p sin(phi) = 4 R phi on (0, pi/2) and the area from the
    equality case of the sharp perimeter-circumradius-area bound, for
    which symmetric lenses are the extremal bodies.
    """
    if not (4.0 * R < p < 2.0 * math.pi * R):
        raise ValueError(
            f"perimeter {p} outside the solvable window (4R, 2 pi R) "
            f"= ({4.0 * R}, {2.0 * math.pi * R})")
    phi = solve_scalar(lambda t: p * math.sin(t) - 4.0 * R * t,
                       1e-9, math.pi / 2.0, tol=1e-14)
    A = p * (p - 4.0 * R * math.cos(phi)) / (8.0 * phi)
    geom = LensGeometry(R=R, p=p, phi=phi, A=A)
    q, _ = make_planar3d(A, p)
    return geom, q, RadiusPair(r=0.0, R=R)


def make_cap_body(n: int, alpha: float, w0: float = 1.0
                  ) -> tuple[QuermassVector, RadiusPair]:
    """Cap body (1-tangential body) of a full-dimensional gauge.

    The quermassintegral sequence is constant up to the last entry:
    W_0 = ... = W_{n-1} = w0, W_n = alpha * w0 with alpha in (0, 1]
    (the gauge sits inside the body, so alpha cannot exceed 1).
    The relative inradius of any tangential body is 1; the circumradius
    is not determined by alpha alone.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"need 0 < alpha <= 1, got {alpha}")
    if not w0 > 0:
        raise ValueError(f"base value must be positive, got {w0}")
    w = (w0,) * n + (alpha * w0,)
    q = QuermassVector(n=n, w=w, valid_body=True)
    return q, RadiusPair(r=1.0, R=None)


def cap_body_roots_closed_form(n: int, alpha: float) -> RootSet:
    """The n explicit roots of the cap-body polynomial.

    They satisfy 1/gamma_k = -1 + (1 - alpha)^{1/n} e^{2 pi i k / n};
    for alpha = 1 all roots coincide at -1.  Conjugate pairs are emitted
    exactly (k and n-k mirrored), so the set is structurally symmetric.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"need 0 < alpha <= 1, got {alpha}")
    if alpha == 1.0:
        return RootSet((Root(complex(-1.0, 0.0), n, 0.0),))
    t = (1.0 - alpha) ** (1.0 / n)
    roots = []
    for k in range(0, n // 2 + 1):
        inv = complex(-1.0 + t * math.cos(2.0 * math.pi * k / n),
                      t * math.sin(2.0 * math.pi * k / n))
        z = 1.0 / inv
        if k == 0 or 2 * k == n:
            roots.append(Root(complex(z.real, 0.0), 1, 0.0))
        else:
            roots.append(Root(z, 1, 0.0))
            roots.append(Root(z.conjugate(), 1, 0.0))
    roots.sort(key=lambda r: (r.value.real, r.value.imag))
    return RootSet(tuple(roots))


def make_two_tangential(n: int, beta: float, alpha: float, w0: float = 1.0
                        ) -> tuple[QuermassVector, RadiusPair]:
    """2-tangential body: constant quermassintegrals up to W_{n-2}.

    W_{n-1} = beta * w0 and W_n = alpha * w0.  Log-concavity pins the
    admissible parameters to 0 < alpha <= beta^2 <= 1, enforced here even
    though the interesting regime is beta, alpha arbitrarily small.
    """
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"need 0 < beta <= 1, got {beta}")
    if not 0.0 < alpha <= beta * beta:
        raise ValueError(
            f"log-concavity requires 0 < alpha <= beta^2; "
            f"got alpha={alpha}, beta^2={beta * beta}")
    if not w0 > 0:
        raise ValueError(f"base value must be positive, got {w0}")
    w = (w0,) * (n - 1) + (beta * w0, alpha * w0)
    q = QuermassVector(n=n, w=w, valid_body=True)
    return q, RadiusPair(r=1.0, R=None)


def truncated_binomial_body(n: int, k: int) -> RationalPolynomial:
    """Reciprocal-variable polynomial of the degenerate k-tangential limit.

    A k-tangential body whose last k quermassintegral ratios shrink to
    zero has, in the variable mu = 1/s, the limiting polynomial
    sum_{i=k}^{n} binom(n, i) mu^i.  Instability of that polynomial (after
    removing its zero roots) certifies a root with positive real part for
    the nearby genuine bodies, since roots move continuously with the
    coefficients.
    """
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    return truncated_binomial(n, k)


def truncated_binomial_quermass(n: int, k: int) -> QuermassVector:
    """Steiner-side view of the same limit: W_i = 1 for i <= n-k, else 0."""
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    w = (1.0,) * (n - k + 1) + (0.0,) * k
    return QuermassVector(n=n, w=w, valid_body=False)


# ---------------------------------------------------------------------------
# orthogonal crosspolytopes


def external_angle(lams: list[float], subset) -> float:
    """External angle of the face spanned by the given axis indices.

    For the crosspolytope conv{+-lam_i e_i} and a face on the axes in
    ``subset`` (size i+1, 0 <= i <= n-2), the angle equals

        2^{n-i-1} / pi^{(n-i)/2} * sqrt(S_L)/prod(lam)
          * int_0^inf e^{-a x^2} prod_{j not in L} int_0^x e^{-y^2/lam_j^2} dy dx

    with a = sum_{k in L} 1/lam_k^2 and S_L = prod_L lam^2 * a.  The inner
    integrals are erf terms, leaving one 1-D quadrature.  The full-index
    set (i = n-1) is outside the formula's range and rejected.
    """
    n = len(lams)
    L = sorted(set(int(i) for i in subset))
    if any(i < 0 or i >= n for i in L):
        raise ValueError(f"subset {subset} out of range for n={n}")
    if not 1 <= len(L) <= n - 1:
        raise ValueError(
            f"face must use between 1 and n-1 axes, got {len(L)} of {n}")
    if any(l <= 0 for l in lams):
        raise ValueError("axis half-lengths must be positive")
    i = len(L) - 1
    a = sum(1.0 / lams[j] ** 2 for j in L)
    prod_L = math.prod(lams[j] for j in L)
    sqrt_SL = prod_L * math.sqrt(a)
    factors = tuple(lams[j] for j in range(n) if j not in L)
    integral = integrate_gaussian_erf(IntegrandSpec(a=a, factors=factors))
    value = (2.0 ** (n - i - 1) / math.pi ** ((n - i) / 2.0)
             * sqrt_SL / math.prod(lams) * integral)
    if not 0.0 < value < 1.0:
        raise ValueError(f"external angle {value} outside (0, 1); subset {L}")
    return value


def _subset_signatures(values, counts, size):
    """All ways to pick `size` entries from a multiset, as count tuples."""
    def rec(idx, left):
        if idx == len(values):
            if left == 0:
                yield ()
            return
        for t in range(0, min(counts[idx], left) + 1):
            for rest in rec(idx + 1, left - t):
                yield (t,) + rest
    return rec(0, size)


def crosspolytope_quermass(lams, rel_tol: float = 1e-10
                           ) -> tuple[QuermassVector, RadiusPair]:
    """Quermassintegrals of the orthogonal crosspolytope conv{+-lam_i e_i}.

    W_0 and W_1 come from the volume and surface closed forms; the rest
    combine face volumes with external angles, summed per face dimension.
    Subsets of axes are enumerated by multiset signature (how many of each
    distinct lambda), shrinking e.g. the half-and-half n = 20 body from
    about 10^6 subset integrals to around a hundred.

    A sanity gate makes every instance pay its way: the vertex external
    angles must sum to 1 (the normal cones of the vertices tile space)
    within 1e-6, otherwise the quadrature is rejected.
    """
    lams = [float(l) for l in lams]
    n = len(lams)
    if n < 2:
        raise ValueError("crosspolytope needs at least 2 axes")
    if any(l <= 0 for l in lams):
        raise ValueError(f"axis half-lengths must be positive: {lams}")
    if any(lams[i] > lams[i + 1] for i in range(n - 1)):
        raise ValueError(f"axis half-lengths must be sorted ascending: {lams}")

    prod_all = math.prod(lams)
    w = [0.0] * (n + 1)
    w[0] = 2.0**n / math.factorial(n) * prod_all
    w[1] = 2.0**n / math.factorial(n) * prod_all * math.sqrt(
        sum(1.0 / l**2 for l in lams))

    values = sorted(set(lams))
    counts = [lams.count(v) for v in values]

    vertex_angle_sum = 0.0
    for i in range(0, n - 1):
        total = 0.0
        for sig in _subset_signatures(values, counts, i + 1):
            count = math.prod(math.comb(c, t) for c, t in zip(counts, sig))
            prod_L = math.prod(v**t for v, t in zip(values, sig))
            a = sum(t / v**2 for v, t in zip(values, sig))
            S_L = prod_L * prod_L * a
            factors = []
            for v, c, t in zip(values, counts, sig):
                factors.extend([v] * (c - t))
            integral = integrate_gaussian_erf(
                IntegrandSpec(a=a, factors=tuple(factors)), rel_tol=rel_tol)
            total += count * (S_L / prod_all) * integral
            if i == 0:
                # the same integral gives the vertex angle; 2 vertices per axis
                vertex_angle_sum += (count * 2.0 * 2.0 ** (n - 1)
                                     / math.pi ** (n / 2.0)
                                     * (prod_L * math.sqrt(a)) / prod_all * integral)
        w[n - i] = (unit_ball_volume(n - i) / math.comb(n, i)
                    * 2.0**n / (math.factorial(i) * math.pi ** ((n - i) / 2.0))
                    * total)

    if abs(vertex_angle_sum - 1.0) > 1e-6:
        raise ValueError(
            f"vertex external angles sum to {vertex_angle_sum}, not 1; "
            f"quadrature rejected for lams={lams}")

    q = QuermassVector(n=n, w=tuple(w), valid_body=True)
    rad = RadiusPair(r=1.0 / math.sqrt(sum(1.0 / l**2 for l in lams)), R=lams[-1])
    return q, rad


def vertex_angle_sum(lams) -> float:
    """Sum of the external angles over all 2n vertices (should be 1)."""
    n = len(lams)
    return sum(2.0 * external_angle(lams, [j]) for j in range(n))


# ---------------------------------------------------------------------------
# body grammar shared with the command line


@dataclass(frozen=True)
class BodySpec:
    """Parsed body descriptor: a family tag plus its parameters."""

    kind: str
    params: tuple[tuple[str, object], ...]

    def get(self, key, default=None):
        for k, v in self.params:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class RealizedBody:
    label: str
    quermass: QuermassVector
    radii: RadiusPair
    lens: LensGeometry | None = None


class BodySpecError(ValueError):
    """Malformed body description; carries the offending position."""

    def __init__(self, text: str, pos: int, message: str):
        super().__init__(f"{message} (at position {pos} in {text!r})")
        self.text = text
        self.pos = pos


_KINDS = {
    "ball": ("n",),
    "segment": ("n", "len"),
    "lens": ("R", "p"),
    "cap": ("n", "alpha"),
    "twotan": ("n", "beta", "alpha"),
    "cross": ("lams",),
    "binbody": ("n", "k"),
    "planar": ("A", "p"),
}

_INT_KEYS = {"n", "k"}


def _parse_lams(text: str, spec: str, offset: int) -> tuple[float, ...]:
    out: list[float] = []
    for piece in text.split(","):
        m = re.fullmatch(r"([0-9.eE+-]+)x([0-9]+)", piece)
        if m:
            out.extend([float(m.group(1))] * int(m.group(2)))
            continue
        try:
            out.append(float(piece))
        except ValueError:
            raise BodySpecError(spec, spec.find(piece, offset),
                                f"bad axis length {piece!r}") from None
    return tuple(out)


def parse_body_spec(text: str) -> BodySpec:
    """Parse the command grammar, e.g. ``lens:R=1,p=5.2`` or
    ``cross:lams=0.01x10,1x10``."""
    head, sep, rest = text.partition(":")
    if not sep:
        raise BodySpecError(text, len(text), "expected ':' after the family tag")
    kind = head.strip()
    if kind not in _KINDS:
        raise BodySpecError(text, 0,
                            f"unknown body family {kind!r}; "
                            f"choose from {sorted(_KINDS)}")
    params: list[tuple[str, object]] = []
    if kind == "cross":
        if not rest.startswith("lams="):
            raise BodySpecError(text, len(head) + 1, "expected lams=...")
        params.append(("lams", _parse_lams(rest[5:], text, len(head) + 6)))
    else:
        pos = len(head) + 1
        for piece in rest.split(","):
            key, eq, value = piece.partition("=")
            if not eq:
                raise BodySpecError(text, pos, f"expected key=value, got {piece!r}")
            key = key.strip()
            if key not in _KINDS[kind]:
                raise BodySpecError(text, pos,
                                    f"unknown parameter {key!r} for {kind}; "
                                    f"expected {_KINDS[kind]}")
            try:
                parsed: object = int(value) if key in _INT_KEYS else float(value)
            except ValueError:
                raise BodySpecError(text, pos + len(key) + 1,
                                    f"bad number {value!r}") from None
            params.append((key, parsed))
            pos += len(piece) + 1
        missing = [k for k in _KINDS[kind] if all(k != p[0] for p in params)]
        if missing:
            raise BodySpecError(text, len(text), f"missing parameters {missing}")
    return BodySpec(kind=kind, params=tuple(params))


def realize_body(spec: BodySpec) -> RealizedBody:
    """Build the quermassintegral vector and radii for a parsed spec."""
    if spec.kind == "ball":
        q, rad = make_ball(int(spec.get("n")))
        return RealizedBody(f"ball:n={spec.get('n')}", q, rad)
    if spec.kind == "segment":
        q, rad = make_segment(int(spec.get("n")), float(spec.get("len")))
        return RealizedBody(f"segment:n={spec.get('n')},len={spec.get('len')}", q, rad)
    if spec.kind == "lens":
        geom, q, rad = make_lens(float(spec.get("R")), float(spec.get("p")))
        return RealizedBody(f"lens:R={spec.get('R')},p={spec.get('p')}",
                            q, rad, lens=geom)
    if spec.kind == "cap":
        q, rad = make_cap_body(int(spec.get("n")), float(spec.get("alpha")))
        return RealizedBody(f"cap:n={spec.get('n')},alpha={spec.get('alpha')}", q, rad)
    if spec.kind == "twotan":
        q, rad = make_two_tangential(int(spec.get("n")), float(spec.get("beta")),
                                     float(spec.get("alpha")))
        return RealizedBody(
            f"twotan:n={spec.get('n')},beta={spec.get('beta')},"
            f"alpha={spec.get('alpha')}", q, rad)
    if spec.kind == "cross":
        lams = tuple(sorted(spec.get("lams")))
        q, rad = crosspolytope_quermass(list(lams))
        return RealizedBody(f"cross:n={len(lams)}", q, rad)
    if spec.kind == "binbody":
        n, k = int(spec.get("n")), int(spec.get("k"))
        q = truncated_binomial_quermass(n, k)
        return RealizedBody(f"binbody:n={n},k={k}", q, RadiusPair(r=1.0, R=None))
    if spec.kind == "planar":
        q, rad = make_planar3d(float(spec.get("A")), float(spec.get("p")))
        return RealizedBody(f"planar:A={spec.get('A')},p={spec.get('p')}", q, rad)
    raise BodySpecError(spec.kind, 0, f"unhandled body family {spec.kind!r}")
