"""The annulus obtained by cutting a Q-piece open along the cut locus of a curve.

Cutting the Q-piece along the cut-locus arc ``delta`` of an interior curve
``gamma`` leaves a topological cylinder around ``gamma``.  Each of its two
rims is the boundary of one hexagon of the cut-open pair of pants and is
made of four trirectangle arcs per period::

    u in [0, a'']          width b/2, rising   (over delta)
    u in [a'', l/2]        width a,   falling  (over the boundary geodesic)
    u in [l/2, l - a'']    width a,   rising
    u in [l - a'', l]      width b/2, falling  (over delta)

where ``u = 0`` is the foot of ``b`` and the arcs meet at height ``c`` at
the corners ``u = a''`` and ``u = l - a''``.  The two rims are mirror images
shifted against each other by ``twist * l``.  The baseline origin ``t = 0``
sits halfway between the two feet of ``b``.
"""

import csv
import math

from scipy.optimize import minimize_scalar

from . import hypgeo
from .annulus import (
    Annulus,
    capacity_bounds,
    capacity_integrals,
    constant_segment,
    trirect_segment,
    wrap_segments,
)
from .errors import GeometryError, ValidationError

DEFAULT_CEILING = 1e6


def _arc_q2(w, tau):
    cw, ch = 1.0 / math.tanh(w), math.cosh(tau)
    return math.sinh(tau) ** 2 / (hypgeo.trirect_gap(w, tau) * (cw + ch))


def _reach(w, s_cap):
    """Distance from the foot at which an arc of width *w* climbs to *s_cap*."""
    if s_cap <= w:
        return 0.0
    return hypgeo.arccosh(math.tanh(s_cap) / math.tanh(w))


def _check_poles(h):
    p2 = hypgeo.trirect_pole(h.half_b)
    if not h.alpha_dprime < p2:
        raise GeometryError(
            "trirectangle bound alpha'' < arcsinh(1/sinh(b/2))",
            f"alpha'' = {h.alpha_dprime:.17g} >= {p2:.17g}",
        )
    p1 = hypgeo.trirect_pole(h.a)
    if not h.alpha_prime < p1:
        raise GeometryError(
            "trirectangle bound alpha' < arcsinh(1/sinh(a))",
            f"alpha' = {h.alpha_prime:.17g} >= {p1:.17g}",
        )


def max_trim(h):
    """Trim that flattens both rims to the collar of half-width ``min(a, b/2)``."""
    return h.c - min(h.a, h.half_b)


def cap_height(h, trim):
    """Height of the constant-distance cap after cutting *trim* off the corners."""
    return h.c - trim


def corner_integrand(h, trim):
    """Estimate of the upper integrand at the (possibly trimmed) corners."""
    s_cap = cap_height(h, trim)
    q2 = max(
        _arc_q2(h.half_b, min(_reach(h.half_b, s_cap), h.alpha_dprime)),
        _arc_q2(h.a, min(_reach(h.a, s_cap), h.alpha_prime)),
    )
    w = min(h.a, h.half_b)
    return (1.0 + q2) / hypgeo.H_difference(w, -w)


def ceiling_trim(h, ceiling=DEFAULT_CEILING):
    """Smallest trim keeping :func:`corner_integrand` below *ceiling*."""
    if corner_integrand(h, 0.0) <= ceiling:
        return 0.0
    lo, hi = 0.0, max_trim(h)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if corner_integrand(h, mid) <= ceiling:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-15 * h.c:
            break
    return hi


def optimal_trim(h, twist, ceiling=DEFAULT_CEILING, tol=1e-6):
    """Trim minimising the upper capacity integral of the tube.

    Every trim yields a valid upper bound, so the search only needs to be
    deterministic, not exact: a coarse scan over ``[t_min, max_trim]``
    followed by a bounded golden-section refinement around the best node.
    """
    t_min = ceiling_trim(h, ceiling)
    t_max = max_trim(h)
    if t_max - t_min <= 1e-12 * h.c:
        return t_min

    def upper(trim):
        A = _tube(h, twist, trim)
        return capacity_integrals(A, tol)[2]

    nodes = [t_min + (t_max - t_min) * k / 8 for k in range(9)]
    vals = [upper(x) for x in nodes]
    k = min(range(9), key=vals.__getitem__)
    lo, hi = nodes[max(k - 1, 0)], nodes[min(k + 1, 8)]
    res = minimize_scalar(upper, bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-6 * max(1.0, h.c)})
    if res.success and res.fun < vals[k]:
        return float(res.x)
    return nodes[k]


def _clipped_arc(t0, t1, w, orientation, s_cap):
    """Arc on ``[t0, t1]`` with everything above *s_cap* replaced by ``s = s_cap``."""
    foot = t0 if orientation == "rising" else t1
    reach = _reach(w, s_cap)
    if reach >= (t1 - t0) * (1.0 - 1e-12):
        return [trirect_segment(t0, t1, w, orientation)]
    if reach == 0.0:
        return [constant_segment(t0, t1, s_cap)]
    if orientation == "rising":
        return [trirect_segment(t0, foot + reach, w, "rising"), constant_segment(foot + reach, t1, s_cap)]
    return [constant_segment(t0, foot - reach, s_cap), trirect_segment(foot - reach, t1, w, "falling")]


def rim_segments(h, trim=0.0):
    """Segments of one rim over ``u in [0, l]`` (``u = 0`` at the foot of ``b``)."""
    _check_poles(h)
    if not 0.0 <= trim <= max_trim(h) * (1.0 + 1e-12):
        raise ValidationError(f"trim must lie in [0, {max_trim(h):.6g}], got {trim!r}")
    trim = min(trim, max_trim(h))
    l, adp = h.length, h.alpha_dprime
    s_cap = cap_height(h, trim)
    segs = []
    segs += _clipped_arc(0.0, adp, h.half_b, "rising", s_cap)
    segs += _clipped_arc(adp, l / 2.0, h.a, "falling", s_cap)
    segs += _clipped_arc(l / 2.0, l - adp, h.a, "rising", s_cap)
    segs += _clipped_arc(l - adp, l, h.half_b, "falling", s_cap)
    return _merge_constants(segs)


def _merge_constants(segs):
    out = [segs[0]]
    for s in segs[1:]:
        p = out[-1]
        if p.kind == s.kind == "constant" and p.s0 == s.s0:
            out[-1] = constant_segment(p.t0, s.t1, p.s0)
        else:
            out.append(s)
    return out


def build_tube(geo, which, trim=None, ceiling=DEFAULT_CEILING):
    """Annulus around the interior curve *which* (``"i"``, ``"tau"`` or ``"diag"``).

    ``trim`` is the height cut off the corners over the endpoints of
    ``delta``; ``None`` picks it with :func:`optimal_trim`.
    """
    h = geo.hex[which]
    t = geo.twist(which)
    return tube_from_hexagon(h, t, trim, ceiling)


def tube_from_hexagon(h, twist, trim=None, ceiling=DEFAULT_CEILING):
    if not 0.0 <= twist <= 0.5:
        raise ValidationError(f"folded twist must lie in [0, 1/2], got {twist!r}")
    _check_poles(h)
    if trim is None:
        trim = optimal_trim(h, twist, ceiling)
    return _tube(h, twist, trim)


def _tube(h, twist, trim):
    rim = rim_segments(h, trim)
    l = h.length
    shift = 0.5 * twist * l
    upper = wrap_segments([s.shifted(shift) for s in rim], l)
    lower = wrap_segments([s.negated().shifted(-shift) for s in rim], l)
    return Annulus(l, lower, upper)


def tube_capacity_bounds(geo, which, tol=1e-8, trim=None):
    return capacity_bounds(build_tube(geo, which, trim), tol)


def tube_upper_bound_qii(geo, which, tol=1e-8, trim=None):
    """Upper bound for the energy dual to the tube around curve *which*."""
    return tube_capacity_bounds(geo, which, tol, trim).upper


def write_boundary_csv(annulus, path, n=256):
    """Dump ``n`` samples ``t, a1, a2`` of the annulus boundary for plotting."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "a1", "a2"])
        for row in annulus.sample(n):
            w.writerow([repr(float(x)) for x in row])
