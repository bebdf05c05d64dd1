"""Consistency web between the closed forms: the two routes to the eta
constants d1, d2 must coincide, c7 is a fixed quotient of c2 away from m=2,
and the tanh^2- and -sinh^2-argument forms of c2, c7 agree.  These checks
depend only on the special-function layer, so they isolate hypergeometric
bugs from spectral-numerics bugs.
"""

from __future__ import annotations

import math

import numpy as np

from .coefficients import eta_constants, universal_constants
from .specialfn import hyp2f1


def _scaled(diff: float, *values: float) -> float:
    """Residual normalized by max(1, magnitudes).  The identities are exact,
    so the attainable absolute agreement degrades linearly with the size of
    the compared values (which reach ~1e6 at m=12, |theta|=2); scaling keeps
    a single tolerance meaningful across the whole grid."""
    return diff / max(1.0, *(abs(v) for v in values))


def check_ball_cylinder_d1(theta: float, m: int) -> float:
    """Scaled |d1(ball form) - d1(cylinder form)|."""
    ball = eta_constants(theta, m, "ball_form")
    cyl = eta_constants(theta, m, "cylinder_form")
    return _scaled(abs(ball.d1 - cyl.d1), ball.d1)


def check_ball_cylinder_d2(theta: float, m: int) -> float:
    """Max scaled residual of the d2 ball/cylinder comparison and of the
    underlying hypergeometric identity

      cosh^2 t 2F1(1, 1-m/2; 1/2; -sinh^2 t)
        = 1 + (m-1) sinh^2 t cosh^{m-1} t 2F1(1/2, (m+1)/2; 3/2; -sinh^2 t).
    """
    ball = eta_constants(theta, m, "ball_form")
    cyl = eta_constants(theta, m, "cylinder_form")
    sh, ch = math.sinh(theta), math.cosh(theta)
    lhs = ch * ch * hyp2f1(1.0, 1 - m / 2, 0.5, -sh * sh)
    rhs = 1.0 + (m - 1) * sh * sh * ch ** (m - 1) * \
        hyp2f1(0.5, (m + 1) / 2, 1.5, -sh * sh)
    return max(_scaled(abs(ball.d2 - cyl.d2), ball.d2),
               _scaled(abs(lhs - rhs), lhs))


def check_c7_relation(theta: float, m: int) -> float:
    """Scaled |c7 + (m-1)/(m-2) (c2 + 1/6)|; the quotient form needs
    m >= 4."""
    if m < 4:
        raise ValueError("the c7/c2 quotient form requires m >= 4; "
                         "use the explicit c7 at m=2")
    uc = universal_constants(theta, m)
    return _scaled(abs(uc.c7 + (m - 1) / (m - 2) * (uc.c2 + 1.0 / 6.0)),
                   uc.c7)


def check_alternate_forms(theta: float, m: int) -> float:
    """Max residual between the tanh^2-argument forms of c2, c7 (as built by
    universal_constants) and their -sinh^2-argument counterparts

      c2 = [(2m-5)/3 + (2-m) cosh^2 t 2F1(1, 2-m/2; 3/2; -sinh^2 t)]
           / (2(m-1))
      c7 = -[1 - cosh^2 t 2F1(1, 2-m/2; 3/2; -sinh^2 t)] / 2.
    """
    uc = universal_constants(theta, m)
    sh, ch = math.sinh(theta), math.cosh(theta)
    g = ch * ch * hyp2f1(1.0, 2 - m / 2, 1.5, -sh * sh)
    c2_alt = ((2 * m - 5) / 3.0 + (2 - m) * g) / (2.0 * (m - 1))
    c7_alt = -0.5 * (1.0 - g)
    return max(_scaled(abs(uc.c2 - c2_alt), uc.c2),
               _scaled(abs(uc.c7 - c7_alt), uc.c7))


def check_evaluation_paths(theta: float, m: int) -> float:
    """For terminating hypergeometric constants (c5, c6 and the cylinder d's
    contain 2F1(., 1-m/2; .; .) polynomials for even m), compare the
    terminating-polynomial evaluation with the Pfaff-transformed series."""
    from .specialfn import hyp2f1_via_pfaff
    sh = math.sinh(theta)
    z = -sh * sh
    worst = 0.0
    for (a, b, c) in ((1.0, 1 - m / 2, 0.5), (1.0, 1 - m / 2, 1.5),
                      (1.0, 2 - m / 2, 1.5)):
        direct = hyp2f1(a, b, c, z)
        if z < 0.0:
            via = hyp2f1_via_pfaff(a, b, c, z)
            worst = max(worst, _scaled(abs(direct - via), direct))
    return worst


GRID_THETAS = tuple(np.arange(-2.0, 2.0 + 1e-9, 0.5))
GRID_MS = (2, 4, 6, 8, 10, 12)


def grid_report(thetas=GRID_THETAS, ms=GRID_MS) -> dict:
    """Max residual of each identity over the (theta, m) grid."""
    out = {"ball_cylinder_d1": 0.0, "ball_cylinder_d2": 0.0,
           "c7_relation": 0.0, "alternate_forms": 0.0,
           "evaluation_paths": 0.0}
    for m in ms:
        for theta in thetas:
            theta = float(theta)
            out["ball_cylinder_d1"] = max(out["ball_cylinder_d1"],
                                          check_ball_cylinder_d1(theta, m))
            out["ball_cylinder_d2"] = max(out["ball_cylinder_d2"],
                                          check_ball_cylinder_d2(theta, m))
            if m >= 4:
                out["c7_relation"] = max(out["c7_relation"],
                                         check_c7_relation(theta, m))
            out["alternate_forms"] = max(out["alternate_forms"],
                                         check_alternate_forms(theta, m))
            out["evaluation_paths"] = max(out["evaluation_paths"],
                                          check_evaluation_paths(theta, m))
    return out
