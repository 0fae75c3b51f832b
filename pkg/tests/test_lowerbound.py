import math

import mpmath as mp
import pytest
from hypothesis import given
from hypothesis import strategies as st

import mpref
from conftest import geometry
from periodgram import lowerbound as lb
from periodgram.errors import DomainError, GeometryError
from periodgram.tube import tube_capacity_bounds

half_bs = st.floats(0.05, 4.0)
ls = st.floats(0.2, 5.0)
ts = st.floats(0.0, 0.5)


def mp_lambda_nu(hb, l, t):
    hb = mp.mpf(hb)
    lam = 2 * mp.acosh(mp.cosh(hb) * mp.cosh(mp.mpf(l) * t / 2))
    # sin(nu) = sinh(b/2) / sinh(lambda/2); asin is clamped against rounding above 1
    nu = mp.asin(min(mp.mpf(1), mp.sinh(hb) / mp.sinh(lam / 2)))
    return lam, nu


@given(half_bs, ls, ts)
def test_lambda_nu_matches_mpmath(hb, l, t):
    lam, nu = lb.lambda_nu(hb, l, t)
    rl, rn = mp_lambda_nu(hb, l, t)
    assert lam == pytest.approx(float(rl), rel=1e-12)
    # asin is ill-conditioned near pi/2, so compare sine and cosine separately
    assert math.sin(nu) == pytest.approx(float(mp.sin(rn)), rel=1e-12)
    cos_ref = mp.cosh(hb) * mp.sinh(mp.mpf(l) * t / 2) / mp.sinh(rl / 2)
    assert math.cos(nu) == pytest.approx(float(cos_ref), rel=1e-12, abs=1e-15)


@given(half_bs, ls)
def test_zero_twist_collapses(hb, l):
    lam, nu = lb.lambda_nu(hb, l, 0.0)
    assert lam == pytest.approx(2 * hb, rel=1e-12)
    assert nu == pytest.approx(math.pi / 2, abs=1e-12)


@given(half_bs, ls, st.floats(0.0, 0.49), st.floats(0.001, 0.01))
def test_k1_decreases_with_twist(hb, l, t, dt):
    a = lb.k1(*lb.lambda_nu(hb, l, t))
    b = lb.k1(*lb.lambda_nu(hb, l, t + dt))
    assert b <= a * (1 + 1e-12)


def test_k1_matches_mpmath():
    lam, nu = mp_lambda_nu(0.7, 2.0, 0.2)
    ref = mp.sin(nu) / (mpref.gudermann(lam / 2) - mpref.gudermann(-lam / 2))
    assert lb.k1(*lb.lambda_nu(0.7, 2.0, 0.2)) == pytest.approx(float(ref), rel=1e-13)


def test_x_of_t_endpoints(golden_piece):
    h = golden_piece.hex["tau"]
    assert lb.x_of_t(h, 0.0) == pytest.approx(h.half_b, rel=1e-15)
    assert lb.x_of_t(h, h.alpha_dprime) == h.c
    assert lb.x_of_t(h, -0.3 * h.alpha_dprime) == lb.x_of_t(h, 0.3 * h.alpha_dprime)
    with pytest.raises(DomainError):
        lb.x_of_t(h, 1.1 * h.alpha_dprime)


def test_strip_density_is_finite_at_the_inner_edge():
    assert lb.strip_density(0.3, 0.8, 0.8) == 0.3
    with pytest.raises(GeometryError):
        lb.k2(0.8, 0.8)
    kk1, x, hb = 0.3, 1.2, 0.8
    assert lb.strip_density(kk1, x, hb) == pytest.approx(kk1 * lb.k2(x, hb) / (lb.k2(x, hb) + 2 * kk1), rel=1e-14)


def test_lower_bound_against_mpmath(golden_piece):
    g = golden_piece
    for which in ("i", "tau", "diag"):
        h = g.hex[which]
        lam, nu = mp_lambda_nu(h.half_b, h.length, g.twist(which))
        kk1 = mp.sin(nu) / (mpref.gudermann(lam / 2) - mpref.gudermann(-lam / 2))

        def f(t):
            x = mpref.trirect(h.half_b, t)
            return kk1 / (1 + 2 * kk1 * (mpref.gudermann(x) - mpref.gudermann(h.half_b)))

        ref = 2 * mp.quad(f, [0, h.alpha_dprime])
        v, e, _ = lb.lower_bound_details(g, which, 1e-12)
        assert v == pytest.approx(float(ref), rel=1e-10)
        assert lb.lower_bound_qii(g, which) <= float(ref)


@given(st.floats(2.0, 6.0), st.floats(1.0, 3.0), st.floats(0.0, 0.3))
def test_sandwich(beta, l, t):
    g = geometry(beta, l, t)
    for which in ("i", "tau", "diag"):
        s = lb.simplified_bounds(g, which)
        low = lb.lower_bound_qii(g, which)
        assert s.lower <= low + 1e-8
        assert low <= s.upper + 1e-8


def test_projection_lower_below_tube_upper(golden_piece):
    for which in ("i", "tau", "diag"):
        assert lb.lower_bound_qii(golden_piece, which) <= tube_capacity_bounds(golden_piece, which).upper


def test_lambda_nu_domain():
    with pytest.raises(DomainError):
        lb.lambda_nu(0.0, 1.0, 0.1)
    with pytest.raises(DomainError):
        lb.lambda_nu(1.0, 1.0, 0.6)
