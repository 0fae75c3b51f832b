"""Projection lower bound for the diagonal energies.

The energy of the dual form is bounded below by the energy of its gradient
projected onto a family of lines crossing the tube from one copy of the
cut-locus arc ``delta`` to the other.  Each line runs perpendicularly from
``delta`` down to the equidistant curve at distance ``b/2``, then crosses the
baseline under the angle ``nu`` along a skewed geodesic parallel to the arc
``lambda`` joining the midpoints of the two copies of ``delta``.  Minimising
the projected energy line by line gives::

    E >= 2 * int_0^{a''} k1 k2(t) / (k2(t) + 2 k1) dt
"""

import math

from . import hypgeo
from .annulus import BoundInterval, collar_capacity
from .errors import DomainError, GeometryError
from .quadrature import adaptive_simpson

DEGENERATE_GAP = 1e-9


def lambda_nu(half_b, curve_len, twist):
    """Arc ``lambda`` between the midpoints of the two copies of ``delta``, and its angle ``nu``.

    ``cosh(lambda/2) = cosh(b/2) cosh(l t / 2)`` and
    ``sin(nu) = sinh(b/2) / sinh(lambda/2)``.
    """
    if not half_b > 0:
        raise DomainError(f"half_b must be positive, got {half_b!r}")
    if not 0.0 <= twist <= 0.5:
        raise DomainError(f"twist must lie in [0, 1/2], got {twist!r}")
    sb, cb = math.sinh(half_b), math.cosh(half_b)
    st = math.sinh(curve_len * twist / 2.0)
    # sinh^2(lambda/2) = sinh^2(b/2) + cosh^2(b/2) sinh^2(l t / 2)
    sl = math.hypot(sb, cb * st)
    lam = 2.0 * math.asinh(sl)
    nu = math.atan2(sb, cb * st)
    return lam, nu


def k1(lam, nu):
    """Projected energy density of the middle strip (width ``lambda``, angle ``nu``)."""
    return math.sin(nu) / hypgeo.H_difference(lam / 2.0, -lam / 2.0)


def inv_k2(x, half_b):
    """``1 / k2 = H(x) - H(b/2)``; zero when ``x = b/2``."""
    return hypgeo.H_difference(x, half_b)


def k2(x, half_b):
    """Energy density of a perpendicular strip from distance ``b/2`` out to ``x``."""
    if not x - half_b > DEGENERATE_GAP:
        raise GeometryError(
            "outer strip x > b/2", f"x = {x!r} does not exceed b/2 = {half_b!r}; strip degenerates"
        )
    return 1.0 / inv_k2(x, half_b)


def x_of_t(h, t0):
    """Distance from the baseline to ``delta`` along the projection line through *t0*.

    *t0* is measured from the foot of ``b``; the line meets ``delta`` over the
    trirectangle of width ``b/2``, so ``x(0) = b/2`` and ``x(+-a'') = c``.
    """
    if abs(t0) > h.alpha_dprime * (1.0 + 1e-14):
        raise DomainError(f"|t0| = {abs(t0)!r} exceeds alpha'' = {h.alpha_dprime!r}")
    t0 = min(abs(t0), h.alpha_dprime)
    if t0 == h.alpha_dprime:
        return h.c
    return hypgeo.trirect_boundary(h.half_b, t0)


def strip_density(kk1, x, half_b):
    """``k1 k2 / (k2 + 2 k1)`` written to stay finite as ``x -> b/2``."""
    return kk1 / (1.0 + 2.0 * kk1 * inv_k2(x, half_b))


def lower_bound_details(geo, which, tol=1e-10):
    """Projection bound for the tube around *which*; returns ``(value, error, k1)``."""
    h = geo.hex[which]
    lam, nu = lambda_nu(h.half_b, h.length, geo.twist(which))
    kk1 = k1(lam, nu)

    def f(t):
        return strip_density(kk1, x_of_t(h, t), h.half_b)

    v, e = adaptive_simpson(f, 0.0, h.alpha_dprime, tol / 2.0)
    return 2.0 * v, 2.0 * e, kk1


def lower_bound_qii(geo, which, tol=1e-10):
    """Lower bound for the energy dual to the tube around curve *which*.

    The quadrature error estimate is subtracted.
    """
    v, e, _ = lower_bound_details(geo, which, tol)
    return max(0.0, v - e)


def simplified_bounds(geo, which):
    """Closed-form bounds: collar of half-width ``min(a, b/2)`` above, ``x = c`` below."""
    h = geo.hex[which]
    w = min(h.a, h.half_b)
    upper = collar_capacity(h.length, w)
    lam, nu = lambda_nu(h.half_b, h.length, geo.twist(which))
    kk1 = k1(lam, nu)
    lower = 2.0 * h.alpha_dprime * strip_density(kk1, h.c, h.half_b)
    return BoundInterval(lower, upper)
