"""Interval bounds for the whole period Gram matrix.

Layout: the homology basis is ordered ``(alpha_1, alpha_tau(1), ...)`` unless
a piece declares its own pair of indices.  For a Q-piece with curves
``alpha_i`` and ``alpha_tau``:

* ``q_ii`` lives on the tube around ``alpha_tau`` and ``q_tau,tau`` on the
  tube around ``alpha_i`` (the dual form of a curve is supported across its
  partner);
* ``q_i,tau`` comes from the scalar-product identity
  ``2 q = E(s_i + s_tau) - E(s_i) - E(s_tau)`` with ``E(s_i + s_tau)``
  bounded on the tube around the diagonal curve;
* entries coupling two pieces are bounded by half the sum of the two
  diagonal gaps.

Every off-diagonal interval is finally intersected with the Cauchy-Schwarz
envelope ``|q_ij| <= (q_ii + q_jj) / 2`` built from the diagonal uppers.
"""

import warnings
from dataclasses import dataclass, field

from .annulus import BoundInterval, capacity_bounds
from .errors import ConvergenceError, GeometryError, ValidationError
from .lowerbound import lower_bound_details
from .qpiece import FenchelNielsenTriple, complete_from_triple
from .tube import build_tube

OK = "ok"
LOWER_FALLBACK = "lower-fallback"
WEAK_LOWER = "weak-lower"
WEAK_TWIST = 0.25
WEAK_RATIO = 0.01

# the tube carrying each diagonal entry
DUAL_TUBE = {"i": "tau", "tau": "i"}


@dataclass(frozen=True)
class SurfaceSpec:
    """Genus, one Fenchel-Nielsen triple per Q-piece and the basis pairing.

    ``pairs[k] = (p, q)`` puts ``alpha_i`` of piece *k* at basis index *p*
    and ``alpha_tau`` at *q* (0-based).  The default is ``(2k, 2k + 1)``.
    """

    genus: int
    pieces: tuple
    pairs: tuple = None

    def __post_init__(self):
        g = self.genus
        if isinstance(g, bool) or not isinstance(g, int) or g < 2:
            raise ValidationError(f"genus must be an integer >= 2, got {g!r}")
        pieces = tuple(self.pieces)
        if len(pieces) != g:
            raise ValidationError(f"genus {g} needs exactly {g} Q-pieces, got {len(pieces)}")
        for k, p in enumerate(pieces):
            if not isinstance(p, FenchelNielsenTriple):
                raise ValidationError(f"Q-piece {k}: expected FenchelNielsenTriple, got {type(p).__name__}")
        object.__setattr__(self, "pieces", pieces)
        pairs = self.pairs
        if pairs is None:
            pairs = tuple((2 * k, 2 * k + 1) for k in range(g))
        pairs = tuple(tuple(int(x) for x in p) for p in pairs)
        if len(pairs) != g or any(len(p) != 2 for p in pairs):
            raise ValidationError(f"need {g} index pairs, got {pairs!r}")
        flat = sorted(x for p in pairs for x in p)
        if flat != list(range(2 * g)):
            raise ValidationError(f"pairs {pairs!r} are not a perfect matching of 0..{2 * g - 1}")
        object.__setattr__(self, "pairs", pairs)

    @property
    def size(self):
        return 2 * self.genus

    def slot(self, index):
        """``(piece, "i" | "tau")`` of a basis index."""
        for k, (p, q) in enumerate(self.pairs):
            if index == p:
                return k, "i"
            if index == q:
                return k, "tau"
        raise ValidationError(f"basis index {index} out of range")


@dataclass(frozen=True)
class GramIntervalMatrix:
    """Symmetric ``2g x 2g`` matrix of :class:`BoundInterval` with per-entry quality."""

    size: int
    entries: tuple
    quality: tuple
    diagnostics: dict = field(default_factory=dict, compare=False, repr=False)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def quality_of(self, i, j):
        return self.quality[i][j]

    def lowers(self):
        return [[e.lower for e in row] for row in self.entries]

    def uppers(self):
        return [[e.upper for e in row] for row in self.entries]

    def is_symmetric(self):
        n = self.size
        return all(
            self.entries[i][j] == self.entries[j][i] and self.quality[i][j] == self.quality[j][i]
            for i in range(n)
            for j in range(n)
        )


@dataclass(frozen=True)
class TubeEstimate:
    """Certified capacity interval of one tube and the projection lower bound on it."""

    which: str
    capacity: BoundInterval
    lower: float
    quality: str
    annulus: object = field(default=None, compare=False, repr=False)


@dataclass
class PieceBounds:
    geo: object
    tubes: dict


def _stage_error(exc, piece, stage):
    where = f"Q-piece {piece}, {stage}"
    if isinstance(exc, GeometryError):
        return GeometryError(exc.relation, f"{where}: {exc.detail}")
    return type(exc)(f"{where}: {exc}")


def tube_estimate(geo, which, tol=1e-8, trim=None):
    """Bounds of the tube around *which*; a failing lower bound falls back to 0."""
    A = build_tube(geo, which, trim)
    cap = capacity_bounds(A, tol)
    quality = OK
    try:
        v, e, _ = lower_bound_details(geo, which, min(tol, 1e-10))
        low = max(0.0, v - e)
    except GeometryError:
        low, quality = 0.0, LOWER_FALLBACK
    if quality == OK and (geo.twist(which) > WEAK_TWIST or low < WEAK_RATIO * cap.upper):
        quality = WEAK_LOWER
    return TubeEstimate(which, cap, low, quality, A)


def piece_bounds(fn_or_geo, tol=1e-8, trim=None, index=0):
    """All three tube estimates of one Q-piece."""
    stage = "completion"
    try:
        geo = fn_or_geo
        if isinstance(fn_or_geo, FenchelNielsenTriple):
            geo = complete_from_triple(fn_or_geo)
        tubes = {}
        for which in ("i", "tau", "diag"):
            stage = f"tube around alpha_{which}"
            tubes[which] = tube_estimate(geo, which, tol, trim)
    except (GeometryError, ConvergenceError, ValidationError) as exc:
        raise _stage_error(exc, index, stage) from exc
    return PieceBounds(geo, tubes)


def _worst(*qs):
    for q in (LOWER_FALLBACK, WEAK_LOWER):
        if q in qs:
            return q
    return OK


def _diag_from(pb, slot):
    te = pb.tubes[DUAL_TUBE[slot]]
    return BoundInterval(min(te.lower, te.capacity.upper), te.capacity.upper), te.quality


def diagonal_bounds(geo, slot, tol=1e-8, trim=None):
    """Interval for ``q_ii`` where *slot* (``"i"`` or ``"tau"``) names the curve."""
    if slot not in DUAL_TUBE:
        raise ValidationError(f"slot must be 'i' or 'tau', got {slot!r}")
    te = tube_estimate(geo, DUAL_TUBE[slot], tol, trim)
    return BoundInterval(min(te.lower, te.capacity.upper), te.capacity.upper)


def _cs_envelope(u1, u2):
    m = 0.5 * (u1 + u2)
    return -m, m


def _clip(lo, hi, env):
    lo, hi = max(lo, env[0]), min(hi, env[1])
    if lo > hi:
        # cannot happen for exact bounds; keep the envelope if rounding crosses
        lo, hi = env
    return BoundInterval(lo, hi)


def _paired_from(pb):
    t = pb.tubes
    di, _ = _diag_from(pb, "i")
    dt, _ = _diag_from(pb, "tau")
    lo = 0.5 * (t["diag"].lower - t["i"].capacity.upper - t["tau"].capacity.upper)
    hi = 0.5 * (t["diag"].capacity.upper - t["i"].lower - t["tau"].lower)
    q = _worst(t["i"].quality, t["tau"].quality, t["diag"].quality)
    return _clip(lo, hi, _cs_envelope(di.upper, dt.upper)), q


def paired_offdiag_bounds(geo, tol=1e-8, trim=None):
    """Interval for ``q_i,tau(i)`` inside one Q-piece."""
    return _paired_from(piece_bounds(geo, tol, trim))[0]


def _cross_from(pb_i, slot_i, pb_l, slot_l):
    di, qi = _diag_from(pb_i, slot_i)
    dl, ql = _diag_from(pb_l, slot_l)
    m = 0.5 * (di.width + dl.width)
    m = min(m, 0.5 * (di.upper + dl.upper))
    return BoundInterval(-m, m), _worst(qi, ql)


def cross_offdiag_bound(geo_i, geo_l, slot_i, slot_l, tol=1e-8, trim=None):
    """Symmetric interval ``[-M, M]`` for an entry coupling two different Q-pieces."""
    pb_i = piece_bounds(geo_i, tol, trim)
    pb_l = piece_bounds(geo_l, tol, trim)
    return _cross_from(pb_i, slot_i, pb_l, slot_l)[0]


def assemble(spec, tol=1e-8, trim=None):
    """Full :class:`GramIntervalMatrix` of the surface described by *spec*."""
    return assemble_with_pieces(spec, tol, trim)[0]


def assemble_with_pieces(spec, tol=1e-8, trim=None):
    """Like :func:`assemble` but also returns the per-piece :class:`PieceBounds`."""
    if spec.genus == 2:
        warnings.warn(
            "genus 2: the two Q-pieces share their boundary geodesic; "
            "bounds are computed as if they were disjoint",
            stacklevel=3,
        )
    pbs = [piece_bounds(fn, tol, trim, index=k) for k, fn in enumerate(spec.pieces)]
    n = spec.size
    ent = [[None] * n for _ in range(n)]
    qual = [[None] * n for _ in range(n)]
    slots = [spec.slot(i) for i in range(n)]
    for i in range(n):
        for j in range(i, n):
            (ki, si), (kj, sj) = slots[i], slots[j]
            if i == j:
                iv, q = _diag_from(pbs[ki], si)
            elif ki == kj:
                iv, q = _paired_from(pbs[ki])
            else:
                iv, q = _cross_from(pbs[ki], si, pbs[kj], sj)
            ent[i][j] = ent[j][i] = iv
            qual[i][j] = qual[j][i] = q
    diagnostics = {
        "pieces": [
            {
                "lengths": {w: pb.geo.length(w) for w in ("i", "tau", "diag")},
                "twists": {w: pb.geo.twist(w) for w in ("i", "tau", "diag")},
                "tubes": {
                    w: {
                        "capacity_lower": te.capacity.lower,
                        "capacity_upper": te.capacity.upper,
                        "projection_lower": te.lower,
                        "quality": te.quality,
                    }
                    for w, te in pb.tubes.items()
                },
            }
            for pb in pbs
        ]
    }
    M = GramIntervalMatrix(n, tuple(map(tuple, ent)), tuple(map(tuple, qual)), diagnostics)
    return M, pbs


def cauchy_schwarz_ok(M, slack=0.0):
    """Whether every off-diagonal entry lies in its envelope from the diagonal uppers."""
    n = M.size
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            m = 0.5 * (M[i, i].upper + M[j, j].upper) + slack
            if M[i, j].lower < -m or M[i, j].upper > m:
                return False
    return True

