"""Verdicts for the conjectured root ordering and related inequalities.

The conjectured chain for the real parts a_1 <= ... <= a_n of the roots
of a Steiner polynomial is

    a_1 <= -R(K;E) <= -r(K;E) <= a_n <= 0.

Each clause is judged with a signed margin (positive means satisfied)
against an absolute tolerance; an unknown circumradius makes its clause
not applicable, never a guess.  The trailing clause a_n <= 0 is weak:
lower-dimensional bodies contribute roots exactly at zero and count as
satisfying it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .quermass import RadiusPair
from .rootfind import RootSet

HOLDS = "holds"
FAILS = "fails"
NOT_APPLICABLE = "not_applicable"

MARGIN_TOL = 1e-9


@dataclass(frozen=True)
class ClauseVerdict:
    verdict: str
    margin: float | None


@dataclass(frozen=True)
class ConjectureReport:
    """Per-clause verdicts with signed margins.

    negativity  : margin -a_n            (roots in the closed left half plane)
    inradius    : margin a_n + r
    circumradius: margin -R - a_1
    ordering    : holds only when all three clauses hold.
    """

    negativity: ClauseVerdict
    inradius: ClauseVerdict
    circumradius: ClauseVerdict
    ordering: str
    tolerance: float

    def to_json(self) -> str:
        def clause(c: ClauseVerdict):
            return {"verdict": c.verdict, "margin": c.margin}
        return json.dumps({
            "negativity": clause(self.negativity),
            "inradius": clause(self.inradius),
            "circumradius": clause(self.circumradius),
            "ordering": self.ordering,
        })


def _judge(margin: float, tol: float) -> ClauseVerdict:
    margin += 0.0  # normalise -0.0
    return ClauseVerdict(HOLDS if margin >= -tol else FAILS, margin)


def check_conjecture(rs: RootSet, rad: RadiusPair,
                     tol: float = MARGIN_TOL) -> ConjectureReport:
    """Evaluate all clauses of the root conjecture for a computed root set."""
    a1 = rs.min_real
    an = rs.max_real
    negativity = _judge(-an, tol)
    inradius = _judge(an + rad.r, tol)
    if rad.R is None:
        circumradius = ClauseVerdict(NOT_APPLICABLE, None)
    else:
        circumradius = _judge(-rad.R - a1, tol)
    clauses = (negativity, inradius, circumradius)
    if any(c.verdict == FAILS for c in clauses):
        ordering = FAILS
    elif all(c.verdict == HOLDS for c in clauses):
        ordering = HOLDS
    else:
        ordering = NOT_APPLICABLE
    return ConjectureReport(negativity=negativity, inradius=inradius,
                            circumradius=circumradius, ordering=ordering,
                            tolerance=tol)


def lens_violation_test(A: float, p: float, R: float) -> bool:
    """Characterisation of planar bodies in R^3 beating the circumradius bound.

    True exactly when every root of the degree-3 polynomial of the planar
    body has real part greater than -R, which happens iff both strict
    inequalities p^2 < (128 / (3 pi)) A and p < (16/3) R hold.
    """
    if A < 0 or p < 0:
        raise ValueError("area and perimeter must be >= 0")
    if not R > 0:
        raise ValueError(f"circumradius must be positive, got {R}")
    return p * p < 128.0 / (3.0 * math.pi) * A and p < 16.0 / 3.0 * R


def cap_circumradius_inequality(n: int, alpha: float, R: float) -> bool:
    """Circumradius clause for cap bodies in closed form.

    Checks 1 - alpha >= (1 - 1/R)^n.  When true, the extreme root
    -1 / (1 - (1-alpha)^{1/n}) lies at or below -R, so the cap body with
    this circumradius satisfies the circumradius bound.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"need 0 < alpha <= 1, got {alpha}")
    if R < 1.0:
        raise ValueError(f"a tangential body has R >= 1, got {R}")
    return 1.0 - alpha >= (1.0 - 1.0 / R) ** n
