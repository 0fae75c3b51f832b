"""Closed-form hyperbolic trigonometry for right-angled polygons.

Every length here is a hyperbolic length.  The functions are pure and take
plain floats.  Relations with a pole (``arccoth`` of something close to 1,
a vanishing radicand) are guarded: the argument must clear its pole by
``EPS_GEO`` or a :class:`GeometryError` naming the relation is raised,
so NaN never leaks into downstream integrals.
"""

import math
from dataclasses import dataclass

from .errors import DomainError, GeometryError

EPS_GEO = 1e-12

HEXAGON_RELATION = "hexagon relation coth(a) = tanh(b/2)cosh(l/2)"
DELTA_RELATION = "pentagon relation cosh(delta') = sinh(l/2)sinh(a)"
ALPHA_DPRIME_RELATION = "trirectangle relation coth(alpha'') = cosh(b/2)^2 tanh(l/2)"
ARC_C_RELATION = "trirectangle relation sinh(c) = cosh(beta/4)/sqrt(tanh(b/2)^2 cosh(l/2)^2 - 1)"
TRIRECT_RELATION = "trirectangle boundary tanh(s) = cosh(t) tanh(w)"


def _require_finite(**values):
    for name, v in values.items():
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite, got {v!r}")


def _require_positive(**values):
    _require_finite(**values)
    for name, v in values.items():
        if v <= 0:
            raise DomainError(f"{name} must be positive, got {v!r}")


def arccoth(x):
    """Inverse hyperbolic cotangent for ``|x| > 1``."""
    return math.atanh(1.0 / x)


def arccosh(x):
    """``acosh`` in log form, compensated near 1."""
    if x < 1.0:
        raise DomainError(f"arccosh argument {x!r} < 1")
    y = x - 1.0
    return math.log1p(y + math.sqrt(y * (x + 1.0)))


def collar_half_width(gamma):
    """Width of the standard collar around a closed geodesic of length *gamma*."""
    _require_positive(gamma=gamma)
    return math.asinh(1.0 / math.sinh(gamma / 2.0))


def gudermann_H(s):
    """``H(s) = 2 arctan(exp(s))``; strictly increasing from 0 to pi.

    This is twice the Gudermannian shifted by pi/2; ``H'(s) = 1/cosh(s)``.
    """
    _require_finite(s=s)
    # arctan(e^s) = pi/2 - arctan(e^-s) keeps exp from overflowing
    if s > 0:
        return math.pi - 2.0 * math.atan(math.exp(-s))
    return 2.0 * math.atan(math.exp(s))


def H_difference(s_hi, s_lo):
    """``H(s_hi) - H(s_lo)`` without cancellation for nearby arguments."""
    if s_lo > 0:
        # H(x) + H(-x) = pi
        return H_difference(-s_lo, -s_hi)
    if abs(s_hi - s_lo) > 1.0:
        return gudermann_H(s_hi) - gudermann_H(s_lo)
    # atan(u) - atan(v) = atan((u - v) / (1 + u v)); here s_lo <= 0 and s_hi <= 1
    u, v = math.exp(s_hi), math.exp(s_lo)
    return 2.0 * math.atan2(u * -math.expm1(s_lo - s_hi), 1.0 + u * v)


def trirect_pole(w):
    """Largest base length a trirectangle with short side *w* can have."""
    _require_positive(w=w)
    return math.asinh(1.0 / math.sinh(w))


def trirect_gap(w, t):
    """``coth(w) - cosh(t)``, positive before the pole, free of cancellation."""
    return 2.0 / math.expm1(2.0 * w) - 2.0 * math.sinh(t / 2.0) ** 2


def trirect_boundary(w, t):
    """Fermi distance of the fourth side of a trirectangle.

    The trirectangle has its base on the baseline, a side of length *w*
    perpendicular to the base at ``t = 0``, and its fourth side meeting that
    side at a right angle.  Returns ``arctanh(cosh(t) tanh(w))``.
    """
    _require_positive(w=w)
    _require_finite(t=t)
    # 1 - cosh(t) tanh(w) = tanh(w) (coth(w) - cosh(t))
    one_minus = math.tanh(w) * trirect_gap(w, t)
    if one_minus <= EPS_GEO:
        raise GeometryError(
            TRIRECT_RELATION,
            f"|t| = {abs(t):.17g} reaches the pole {trirect_pole(w):.17g} for w = {w:.17g}",
        )
    return 0.5 * math.log1p(2.0 * (1.0 - one_minus) / one_minus)


def pentagon_half_b(beta, alpha2):
    """Half the shortest arc between the two copies of a cut curve.

    ``sinh(b/2) = cosh(beta/4) / sinh(alpha2/2)``.
    """
    _require_positive(beta=beta, alpha2=alpha2)
    return math.asinh(math.cosh(beta / 4.0) / math.sinh(alpha2 / 2.0))


def _hexagon_excess(half_b, alpha2):
    # tanh(b/2)cosh(l/2) - 1 = 2 sinh(l/4)^2 - cosh(l/2) (1 - tanh(b/2))
    return 2.0 * math.sinh(alpha2 / 4.0) ** 2 - math.cosh(alpha2 / 2.0) * 2.0 / (math.exp(2.0 * half_b) + 1.0)


def _check_hexagon(half_b, alpha2, relation):
    e = _hexagon_excess(half_b, alpha2)
    if not e > EPS_GEO:
        raise GeometryError(
            relation,
            f"tanh(b/2)cosh(l/2) = {1.0 + e:.17g} does not exceed 1 "
            f"(b/2 = {half_b:.17g}, l = {alpha2:.17g}); degenerate hexagon",
        )
    return e


def hexagon_a(half_b, alpha2):
    """Length of the seam from the cut curve to the boundary geodesic."""
    _require_positive(half_b=half_b, alpha2=alpha2)
    e = _check_hexagon(half_b, alpha2, HEXAGON_RELATION)
    # arccoth(1 + e) = log(1 + 2/e) / 2
    return 0.5 * math.log1p(2.0 / e)


def _radicand(half_b, alpha2, relation):
    # tanh(b/2)^2 cosh(l/2)^2 - 1 = e (2 + e)
    e = _check_hexagon(half_b, alpha2, relation)
    return e * (2.0 + e)


def delta_prime(half_b, alpha2):
    """Half of the cut-locus arc ``delta`` inside one hexagon."""
    _require_positive(half_b=half_b, alpha2=alpha2)
    rad = _radicand(half_b, alpha2, DELTA_RELATION)
    cosh_d = math.sinh(alpha2 / 2.0) / math.sqrt(rad)
    if cosh_d < 1.0:
        raise GeometryError(DELTA_RELATION, f"cosh(delta') = {cosh_d!r} < 1")
    return arccosh(cosh_d)


def alpha_double_prime(half_b, alpha2):
    """Base of the trirectangle adjacent to ``b/2``.

    ``coth(alpha'') = cosh(b/2)^2 tanh(alpha2/2)``.
    """
    _require_positive(half_b=half_b, alpha2=alpha2)
    x = math.cosh(half_b) ** 2 * math.tanh(alpha2 / 2.0)
    if not x > 1.0 + EPS_GEO:
        raise GeometryError(ALPHA_DPRIME_RELATION, f"argument {x:.17g} does not exceed 1")
    return arccoth(x)


def arc_c(beta, half_b, alpha2):
    """Perpendicular from the corner of the cut locus to the cut curve."""
    _require_positive(beta=beta, half_b=half_b, alpha2=alpha2)
    rad = _radicand(half_b, alpha2, ARC_C_RELATION)
    return math.asinh(math.cosh(beta / 4.0) / math.sqrt(rad))


@dataclass(frozen=True)
class HexagonData:
    """Lengths of the hexagon decomposition obtained by cutting along one curve.

    ``length`` is the cut curve, ``half_b`` half the shortest arc joining its
    two copies, ``a`` the seam to the boundary, ``delta_prime`` half the
    cut-locus arc, ``alpha_dprime``/``alpha_prime`` the two trirectangle bases
    (they add up to ``length / 2``) and ``c`` the corner perpendicular.
    """

    beta: float
    length: float
    half_b: float
    a: float
    delta_prime: float
    alpha_prime: float
    alpha_dprime: float
    c: float


def hexagon_data(beta, length):
    """Full hexagon decomposition for cutting a Q-piece with boundary *beta* along *length*.

    Uses the exact forms, with ``s = sinh(l/2)``, ``k = cosh(beta/4)``::

        tanh(b/2)^2 cosh(l/2)^2 - 1 = s^2 sinh(beta/4)^2 / (s^2 + k^2)
        coth(alpha'') - 1 = (k^2 - s exp(-l/2)) / (s cosh(l/2))
        tanh(alpha') = tanh(l/2) tanh(beta/4)^2

    so neither a short boundary nor a short curve loses digits.
    """
    _require_positive(beta=beta, length=length)
    half_b = pentagon_half_b(beta, length)
    s = math.sinh(length / 2.0)
    k = math.cosh(beta / 4.0)
    rad = (s * math.sinh(beta / 4.0)) ** 2 / (s * s + k * k)
    e = rad / (1.0 + math.sqrt(1.0 + rad))
    if not e > EPS_GEO:
        raise GeometryError(
            HEXAGON_RELATION,
            f"tanh(b/2)cosh(l/2) = {1.0 + e:.17g} does not exceed 1 "
            f"(beta = {beta:.17g}, l = {length:.17g}); degenerate hexagon",
        )
    a = 0.5 * math.log1p(2.0 / e)
    dp = arccosh(s / math.sqrt(rad))
    xm1 = (k * k - s * math.exp(-length / 2.0)) / (s * math.cosh(length / 2.0))
    if not xm1 > EPS_GEO:
        raise GeometryError(ALPHA_DPRIME_RELATION, f"argument {1.0 + xm1:.17g} does not exceed 1")
    adp = 0.5 * math.log1p(2.0 / xm1)
    # alpha' = l/2 - alpha'', without the subtraction
    ap = math.atanh(math.tanh(length / 2.0) * math.tanh(beta / 4.0) ** 2)
    if not ap > 0:
        raise GeometryError(ALPHA_DPRIME_RELATION, f"alpha' = {ap!r} vanishes")
    c = math.asinh(k / math.sqrt(rad))
    return HexagonData(beta, length, half_b, a, dp, ap, adp, c)
