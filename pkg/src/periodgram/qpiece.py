"""Geometry of a Q-piece (one-holed torus) from one Fenchel-Nielsen triple.

A Q-piece with boundary geodesic ``beta`` contains three interior simple
closed geodesics that pairwise intersect once: the pair ``alpha_i``,
``alpha_tau`` of the homology basis and the diagonal ``alpha_diag`` in the
class ``alpha_i alpha_tau^-1``.  Given one of them with its twist, the
other two are found by dropping the common perpendicular ``eta`` and
solving right-angled triangles.
"""

import math
import warnings
from dataclasses import dataclass, field

from . import hypgeo
from .errors import GeometryError, ValidationError

CURVES = ("i", "tau", "diag")


@dataclass(frozen=True)
class FenchelNielsenTriple:
    """``(beta, curve, twist)``: boundary length, interior curve length, twist.

    ``role`` tells which of the three interior curves ``curve`` is.
    """

    beta: float
    curve: float
    twist: float = 0.0
    role: str = "i"

    def __post_init__(self):
        for name in ("beta", "curve"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValidationError(f"{name} must be a positive finite number, got {v!r}")
        t = self.twist
        if not (isinstance(t, (int, float)) and math.isfinite(t)):
            raise ValidationError(f"twist must be a finite number, got {t!r}")
        if not -0.5 < t <= 0.5:
            raise ValidationError(f"twist {t!r} outside (-1/2, 1/2]")
        if self.role not in CURVES:
            raise ValidationError(f"role must be one of {CURVES}, got {self.role!r}")


def normalize_twist(x):
    """Fold a relative offset ``x`` (in curve lengths) to ``[0, 1/2]``."""
    x = x % 1.0
    return min(x, 1.0 - x)


@dataclass(frozen=True)
class Partner:
    """A curve reached from a base curve through the perpendicular ``eta``.

    ``offset`` is the distance from the foot of ``eta`` to the endpoint of
    the lifted arc, ``theta`` the intersection angle with the base curve,
    ``r`` the corresponding offset on the partner and ``twist`` the partner's
    folded twist.  ``twist_candidates`` keeps both readings of the fold.
    """

    length: float
    theta: float
    r: float
    twist: float
    twist_candidates: tuple


def _partner(base, eta, offset):
    # right triangle with legs offset, eta/2 and hypotenuse length/2
    ch_eta = math.cosh(eta / 2.0)
    sh_half = math.sqrt(math.sinh(offset) ** 2 * ch_eta**2 + math.sinh(eta / 2.0) ** 2)
    length = 2.0 * math.asinh(sh_half)
    cos_theta = math.tanh(offset) / math.tanh(length / 2.0)
    theta = math.acos(min(1.0, cos_theta))
    r = math.atanh(cos_theta * math.tanh(base / 2.0))
    x = 2.0 * r / length
    cands = (x % 1.0, 1.0 - x % 1.0)
    return Partner(length, theta, r, normalize_twist(x), cands)


@dataclass(frozen=True)
class QPieceGeometry:
    """All derived lengths and angles of one Q-piece.

    ``r1`` is the half-offset of the input curve, ``r2`` the one of its
    first partner.  ``hex`` maps each curve name to its
    :class:`~periodgram.hypgeo.HexagonData`.  ``theta`` is the angle between
    ``alpha_i`` and ``alpha_tau``.
    """

    fn: FenchelNielsenTriple
    beta: float
    alpha_i: float
    alpha_tau: float
    alpha_diag: float
    t_i: float
    t_tau: float
    t_diag: float
    theta: float
    eta1: float
    r1: float
    r2: float
    twist_sign: int
    hex: dict = field(repr=False)
    diagnostics: dict = field(default_factory=dict, repr=False)

    def length(self, which):
        return {"i": self.alpha_i, "tau": self.alpha_tau, "diag": self.alpha_diag}[which]

    def twist(self, which):
        return {"i": self.t_i, "tau": self.t_tau, "diag": self.t_diag}[which]


# partners of the input curve, by role: (first partner, second partner)
_PARTNER_ROLES = {"i": ("tau", "diag"), "tau": ("i", "diag"), "diag": ("i", "tau")}


def complete_from_triple(fn):
    """Derive the full :class:`QPieceGeometry` of the Q-piece given by *fn*.

    Negative twists are replaced by their absolute value; every length
    depends on ``|t|`` only and the sign is kept in ``twist_sign``.
    """
    ok, diag = check_systole_condition(fn)
    if not ok:
        warnings.warn(
            "curve is longer than the short-curve condition allows "
            f"(cosh(l/2) = {diag['lhs']:.6g} > {diag['rhs']:.6g}); bounds may be loose",
            stacklevel=2,
        )
    beta, l1 = float(fn.beta), float(fn.curve)
    t1 = abs(float(fn.twist))
    sign = -1 if fn.twist < 0 else 1

    eta1 = 2.0 * hypgeo.pentagon_half_b(beta, l1)
    r1 = l1 * t1 / 2.0
    first = _partner(l1, eta1, r1)
    # one more turn around the input curve: offset l1/2 - r1
    second = _partner(l1, eta1, l1 / 2.0 - r1)

    lengths = {fn.role: l1}
    twists = {fn.role: t1}
    p1, p2 = _PARTNER_ROLES[fn.role]
    lengths[p1], twists[p1] = first.length, first.twist
    lengths[p2], twists[p2] = second.length, second.twist

    hexes = {}
    for name in CURVES:
        try:
            hexes[name] = hypgeo.hexagon_data(beta, lengths[name])
        except GeometryError as exc:
            raise GeometryError(exc.relation, f"curve alpha_{name}: {exc.detail}") from exc

    if fn.role == "diag":
        theta = _angle_between(lengths["i"], lengths["tau"], lengths["diag"], beta)
    else:
        theta = first.theta
    diagnostics = {
        "twist_candidates": {p1: first.twist_candidates, p2: second.twist_candidates},
        "offsets": {p1: r1, p2: l1 / 2.0 - r1},
        "angles": {p1: first.theta, p2: second.theta},
        "systole_condition": diag,
    }
    return QPieceGeometry(
        fn=fn,
        beta=beta,
        alpha_i=lengths["i"],
        alpha_tau=lengths["tau"],
        alpha_diag=lengths["diag"],
        t_i=twists["i"],
        t_tau=twists["tau"],
        t_diag=twists["diag"],
        theta=theta,
        eta1=eta1,
        r1=r1,
        r2=first.r,
        twist_sign=sign,
        hex=hexes,
        diagnostics=diagnostics,
    )


def _angle_between(l1, l2, l12, beta):
    # sinh(l1/2) sinh(l2/2) sin(theta) = cosh(beta/4) in a one-holed torus
    s = math.cosh(beta / 4.0) / (math.sinh(l1 / 2.0) * math.sinh(l2 / 2.0))
    return math.asin(min(1.0, s))


def check_systole_condition(fn):
    """Whether ``cosh(curve/2) <= cosh(beta/6) + 1/2``.

    Returns ``(holds, {"lhs": ..., "rhs": ...})``.
    """
    lhs = math.cosh(fn.curve / 2.0)
    rhs = math.cosh(fn.beta / 6.0) + 0.5
    return lhs <= rhs, {"lhs": lhs, "rhs": rhs}
