"""Two reference surfaces: the necklace and the linear surface.

The necklace is only used through its closed-form test-form bound; its
homology basis is not adapted to Q-pieces.  For the linear surface only the
end Q-piece (a pair of pants closed up along ``eta``) is generated, which is
enough to look at ``q_22``.
"""

import math
import warnings
from dataclasses import dataclass, field

from .errors import ValidationError
from .gram import diagonal_bounds
from .hypgeo import collar_half_width
from .qpiece import FenchelNielsenTriple, check_systole_condition, complete_from_triple

DEFAULT_GAMMA = 1.0


def necklace_testform_bound(g, gamma):
    """Energy bound for ``sigma_2`` on the genus *g* necklace with waist curves of length *gamma*.

    ``gamma / ((g - 1) (pi - 2 asin(1 / cosh w)))`` with ``w`` the collar
    half-width of *gamma*.
    """
    if isinstance(g, bool) or not isinstance(g, int) or g < 2:
        raise ValidationError(f"g must be an integer >= 2, got {g!r}")
    if not gamma > 0:
        raise ValidationError(f"gamma must be positive, got {gamma!r}")
    w = collar_half_width(gamma)
    return gamma / ((g - 1) * (math.pi - 2.0 * math.asin(1.0 / math.cosh(w))))


def cylinder_floor(gamma):
    """Capacity of the infinitely wide cylinder around a curve of length *gamma*."""
    return gamma / math.pi


def first_genus_below_floor(gamma, g_max=1000):
    """Smallest genus at which the test-form bound drops below :func:`cylinder_floor`."""
    floor = cylinder_floor(gamma)
    for g in range(2, g_max + 1):
        if necklace_testform_bound(g, gamma) < floor:
            return g
    return None


@dataclass(frozen=True)
class LinearSurfaceFragment:
    """End Q-piece of the linear surface of genus ``g``.

    ``piece`` describes ``alpha_1 = eta_1`` with zero twist; ``alpha_2``
    crosses it perpendicularly.  ``entry`` is the basis index pair of
    ``q_22`` under the default layout.
    """

    genus: int
    eta: float
    gamma: float
    piece: FenchelNielsenTriple
    entry: tuple = (1, 1)
    metadata: dict = field(default_factory=dict, compare=False)


def linear_surface_spec(g, eta, gamma=DEFAULT_GAMMA):
    """End Q-piece of the genus *g* linear surface with neck length *eta*.

    *gamma* is the length of the boundary of the piece, which the
    construction leaves free.
    """
    if isinstance(g, bool) or not isinstance(g, int) or g < 3:
        raise ValidationError(f"g must be an integer >= 3, got {g!r}")
    if not eta > 0:
        raise ValidationError(f"eta must be positive, got {eta!r}")
    piece = FenchelNielsenTriple(beta=float(gamma), curve=float(eta), twist=0.0, role="i")
    ok, _ = check_systole_condition(piece)
    meta = {
        "expectation": "q22 equals the capacity of the tube around alpha_1 up to a "
        "term that vanishes as eta grows; the interval gap should shrink",
        "short_curve_condition": ok,
    }
    return LinearSurfaceFragment(g, float(eta), float(gamma), piece, (1, 1), meta)


def q22_interval(fragment, tol=1e-8):
    """Interval for ``q_22`` from the tube around ``alpha_1`` of the end piece."""
    with warnings.catch_warnings():
        # long necks break the short-curve condition by design
        warnings.simplefilter("ignore", UserWarning)
        geo = complete_from_triple(fragment.piece)
    return diagonal_bounds(geo, "tau", tol)
