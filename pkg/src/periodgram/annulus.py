"""Capacity bounds for annuli in a hyperbolic cylinder.

An annulus is described in Fermi coordinates ``(t, s)`` around the
cylinder's closed geodesic of length ``L``::

    A = {(t, s) : a1(t) <= s <= a2(t), 0 <= t <= L}

with ``a1``, ``a2`` made of two kinds of pieces: arcs at constant distance
from the baseline, and arcs of trirectangles.  With ``H(s) = 2 arctan(e^s)``
and ``q_i = H'(a_i) a_i'`` the capacity satisfies::

    int 1/(H(a2) - H(a1)) dt  <=  cap(A)
        <=  int (1 + (q1^2 + q1 q2 + q2^2)/3) / (H(a2) - H(a1)) dt

Both integrals are evaluated segment by segment with adaptive Simpson; the
quadrature error estimate widens the interval outwards.
"""

import math
from dataclasses import dataclass

from . import hypgeo
from .errors import DomainError, GeometryError, ValidationError
from .quadrature import adaptive_simpson

JOINT_TOL = 1e-9
CONSTANT = "constant"
TRIRECT = "trirect"


@dataclass(frozen=True)
class BoundInterval:
    lower: float
    upper: float

    def __post_init__(self):
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise ValidationError(f"non-finite interval [{self.lower}, {self.upper}]")
        if self.lower > self.upper:
            raise ValidationError(f"empty interval [{self.lower!r}, {self.upper!r}]")

    @property
    def width(self):
        return self.upper - self.lower

    def __contains__(self, x):
        return self.lower <= x <= self.upper

    def as_tuple(self):
        return (self.lower, self.upper)


@dataclass(frozen=True)
class BoundarySegment:
    """One smooth piece of a boundary curve ``s = a(t)`` on ``[t0, t1]``.

    For ``kind == "constant"`` the curve is ``s = s0``.  For
    ``kind == "trirect"`` it is ``s = sign * arctanh(cosh(t - foot) tanh(width))``,
    the fourth side of a trirectangle whose short side ``width`` stands on
    the baseline at ``t = foot``.
    """

    kind: str
    t0: float
    t1: float
    s0: float = 0.0
    width: float = 0.0
    foot: float = 0.0
    sign: int = 1

    def __post_init__(self):
        if not self.t1 > self.t0:
            raise ValidationError(f"segment range [{self.t0}, {self.t1}] is empty")
        if self.kind == TRIRECT:
            if not self.width > 0:
                raise ValidationError(f"trirectangle width must be positive, got {self.width}")
            if self.sign not in (1, -1):
                raise ValidationError(f"sign must be +1 or -1, got {self.sign}")
            reach = max(abs(self.t0 - self.foot), abs(self.t1 - self.foot))
            pole = hypgeo.trirect_pole(self.width)
            if reach >= pole:
                raise GeometryError(
                    hypgeo.TRIRECT_RELATION,
                    f"segment [{self.t0:.12g}, {self.t1:.12g}] reaches {reach:.12g} "
                    f"from its foot, beyond the pole {pole:.12g} (w = {self.width:.12g})",
                )
        elif self.kind != CONSTANT:
            raise ValidationError(f"unknown segment kind {self.kind!r}")

    @property
    def orientation(self):
        """``"rising"`` if ``|a|`` grows with ``t`` on the segment, else ``"falling"``."""
        if self.kind == CONSTANT:
            return "flat"
        return "rising" if self.t0 >= self.foot else "falling"

    def shifted(self, dt):
        return BoundarySegment(
            self.kind, self.t0 + dt, self.t1 + dt, self.s0, self.width, self.foot + dt, self.sign
        )

    def restricted(self, t0, t1):
        return BoundarySegment(self.kind, t0, t1, self.s0, self.width, self.foot, self.sign)

    def reflected(self, length):
        """Image under ``t -> length - t``."""
        return BoundarySegment(
            self.kind,
            length - self.t1,
            length - self.t0,
            self.s0,
            self.width,
            length - self.foot,
            self.sign,
        )

    def negated(self):
        """Image under ``s -> -s``."""
        return BoundarySegment(
            self.kind, self.t0, self.t1, -self.s0, self.width, self.foot, -self.sign
        )

    def _check(self, t):
        span = 1e-12 * max(1.0, abs(self.t1))
        if not self.t0 - span <= t <= self.t1 + span:
            raise DomainError(f"t = {t!r} outside segment [{self.t0!r}, {self.t1!r}]")

    def value(self, t):
        if self.kind == CONSTANT:
            return self.s0
        return self.sign * hypgeo.trirect_boundary(self.width, t - self.foot)

    def slope(self, t):
        """``da/dt``."""
        if self.kind == CONSTANT:
            return 0.0
        tau = t - self.foot
        tw = math.tanh(self.width)
        # 1 - x^2 with x = cosh(tau) tanh(w)
        one_minus = tw * hypgeo.trirect_gap(self.width, tau)
        return self.sign * math.sinh(tau) * tw / (one_minus * (2.0 - one_minus))

    def H_and_q(self, t):
        """``(H(a(t)), q(t))`` with ``q = H'(a) a'``, in closed form."""
        self._check(t)
        if self.kind == CONSTANT:
            return hypgeo.gudermann_H(self.s0), 0.0
        tau = t - self.foot
        cw = 1.0 / math.tanh(self.width)
        ch = math.cosh(tau)
        lo, hi = hypgeo.trirect_gap(self.width, tau), cw + ch
        if lo <= 0:
            raise GeometryError(
                hypgeo.TRIRECT_RELATION, f"pole reached at t = {t!r} (w = {self.width!r})"
            )
        H = 2.0 * math.atan(math.sqrt(hi / lo))
        q = math.sinh(tau) / math.sqrt(lo * hi)
        if self.sign < 0:
            return math.pi - H, -q
        return H, q


def constant_segment(t0, t1, s0):
    return BoundarySegment(CONSTANT, t0, t1, s0=s0)


def trirect_segment(t0, t1, width, orientation="rising", sign=1):
    """Trirectangle arc on ``[t0, t1]`` touching ``s = sign*width`` at one end."""
    if orientation == "rising":
        foot = t0
    elif orientation == "falling":
        foot = t1
    else:
        raise ValidationError(f"orientation must be 'rising' or 'falling', got {orientation!r}")
    return BoundarySegment(TRIRECT, t0, t1, width=width, foot=foot, sign=sign)


def segment_H_and_q(seg, t):
    return seg.H_and_q(t)


def wrap_segments(segments, length):
    """Fold segments given on arbitrary ranges into ``[0, length]``.

    Segments crossing a multiple of *length* are split there.  The result
    is sorted by ``t0``.
    """
    out = []
    for seg in segments:
        k = math.floor(seg.t0 / length)
        seg = seg.shifted(-k * length)
        while seg.t1 > length * (1.0 + 1e-15):
            if seg.t0 < length:
                out.append(seg.restricted(seg.t0, length))
            rest = seg.restricted(length, seg.t1)
            seg = rest.shifted(-length)
        out.append(seg)
    eps = 1e-14 * length
    out = [s for s in out if s.t1 - s.t0 > eps]
    out.sort(key=lambda s: s.t0)
    # snap ends that rounding left a hair away from 0 and length
    if out and abs(out[0].t0) <= eps:
        out[0] = out[0].restricted(0.0, out[0].t1)
    if out and abs(out[-1].t1 - length) <= eps:
        out[-1] = out[-1].restricted(out[-1].t0, length)
    return out


@dataclass(frozen=True)
class Annulus:
    """Annulus ``a1(t) <= s <= a2(t)`` over a closed baseline of length ``length``."""

    length: float
    lower: tuple
    upper: tuple

    def __post_init__(self):
        if not (math.isfinite(self.length) and self.length > 0):
            raise ValidationError(f"baseline length must be positive, got {self.length!r}")
        object.__setattr__(self, "lower", tuple(self.lower))
        object.__setattr__(self, "upper", tuple(self.upper))
        for name in ("lower", "upper"):
            self._check_tiling(name, getattr(self, name))
        bps = self.breakpoints()
        for t in bps + [0.5 * (u + v) for u, v in zip(bps, bps[1:])]:
            lo, hi = self.a1(t), self.a2(t)
            if not lo < hi:
                raise ValidationError(f"a1 >= a2 at t = {t!r}: {lo!r} >= {hi!r}")

    def _check_tiling(self, name, segs):
        if not segs:
            raise ValidationError(f"{name} boundary has no segments")
        L = self.length
        tol = 1e-12 * max(1.0, L)
        if abs(segs[0].t0) > tol or abs(segs[-1].t1 - L) > tol:
            raise ValidationError(f"{name} boundary does not cover [0, {L}]")
        for s, n in zip(segs, segs[1:] + segs[:1]):
            if n is not segs[0] and abs(s.t1 - n.t0) > tol:
                raise ValidationError(f"{name} boundary has a gap or overlap at t = {s.t1!r}")
            jump = abs(s.value(s.t1) - n.value(n.t0))
            if jump > JOINT_TOL:
                raise ValidationError(
                    f"{name} boundary is discontinuous at t = {s.t1!r} (jump {jump:.3g})"
                )

    @staticmethod
    def _segment_at(segs, t):
        for seg in segs:
            if seg.t0 <= t <= seg.t1:
                return seg
        tol = 1e-12 * max(1.0, abs(segs[-1].t1))
        if abs(t - segs[0].t0) <= tol:
            return segs[0]
        if abs(t - segs[-1].t1) <= tol:
            return segs[-1]
        raise DomainError(f"t = {t!r} not covered")

    def a1(self, t):
        return self._segment_at(self.lower, t).value(t)

    def a2(self, t):
        return self._segment_at(self.upper, t).value(t)

    def breakpoints(self):
        """Sorted union of segment ends on both boundaries, including 0 and L."""
        pts = {0.0, self.length}
        for seg in self.lower + self.upper:
            pts.add(seg.t0)
            pts.add(seg.t1)
        pts = sorted(pts)
        merged = [pts[0]]
        for p in pts[1:]:
            if p - merged[-1] > 1e-13 * max(1.0, self.length):
                merged.append(p)
        merged[-1] = self.length
        return merged

    def pieces(self):
        """``(t0, t1, lower_segment, upper_segment)`` on which both boundaries are smooth."""
        bps = self.breakpoints()
        out = []
        for t0, t1 in zip(bps, bps[1:]):
            m = 0.5 * (t0 + t1)
            out.append((t0, t1, self._segment_at(self.lower, m), self._segment_at(self.upper, m)))
        return out

    def reversed(self):
        """The same annulus with baseline orientation ``t -> L - t``."""
        L = self.length
        lo = sorted((s.reflected(L) for s in self.lower), key=lambda s: s.t0)
        hi = sorted((s.reflected(L) for s in self.upper), key=lambda s: s.t0)
        return Annulus(L, lo, hi)

    def sample(self, n):
        """``n`` evenly spaced rows ``(t, a1(t), a2(t))`` with ``t`` in ``[0, L)``."""
        return [(t, self.a1(t), self.a2(t)) for t in (self.length * k / n for k in range(n))]


def constant_width_annulus(length, w_lower, w_upper=None):
    """The annulus ``-w_lower <= s <= w_upper`` (symmetric if *w_upper* is omitted)."""
    if w_upper is None:
        w_upper = w_lower
    return Annulus(length, [constant_segment(0.0, length, -w_lower)],
                   [constant_segment(0.0, length, w_upper)])


def collar_capacity(l, w):
    """Capacity of the constant-width cylinder of half-width *w* around a geodesic of length *l*."""
    if not (l > 0 and w > 0):
        raise DomainError(f"collar_capacity needs l > 0, w > 0, got ({l!r}, {w!r})")
    return l / (math.pi - 2.0 * math.asin(1.0 / math.cosh(w)))


def _integrands(lo_seg, hi_seg):
    def lower_f(t):
        H1, _ = lo_seg.H_and_q(t)
        H2, _ = hi_seg.H_and_q(t)
        return 1.0 / (H2 - H1)

    def upper_f(t):
        H1, q1 = lo_seg.H_and_q(t)
        H2, q2 = hi_seg.H_and_q(t)
        return (1.0 + (q1 * q1 + q1 * q2 + q2 * q2) / 3.0) / (H2 - H1)

    return lower_f, upper_f


def capacity_integrals(A, tol=1e-8):
    """Raw integrals ``(lower, lower_err, upper, upper_err)`` of the capacity bounds."""
    lo_total = lo_err = hi_total = hi_err = 0.0
    for t0, t1, lo_seg, hi_seg in A.pieces():
        piece_tol = tol * (t1 - t0) / A.length
        lower_f, upper_f = _integrands(lo_seg, hi_seg)
        try:
            v, e = adaptive_simpson(lower_f, t0, t1, piece_tol)
            lo_total += v
            lo_err += e
            v, e = adaptive_simpson(upper_f, t0, t1, piece_tol)
            hi_total += v
            hi_err += e
        except ValueError as exc:
            raise DomainError(f"integrand undefined on piece [{t0:.12g}, {t1:.12g}]: {exc}") from exc
    return lo_total, lo_err, hi_total, hi_err


def capacity_bounds(A, tol=1e-8):
    """Certified interval for ``cap(A)``; quadrature error widens it outwards."""
    lo, lo_err, hi, hi_err = capacity_integrals(A, tol)
    lower = max(0.0, lo - lo_err)
    upper = hi + hi_err
    return BoundInterval(lower, max(upper, lower))
