"""Acceptance criteria, one test each.

Every test records a one-line summary; ``conftest.py`` prints PASS/FAIL per
criterion at the end of the run.
"""

import math
import time
import warnings

import numpy as np
import pytest

from conftest import geometry, golden_path
from periodgram import cli, hypgeo
from periodgram import lowerbound as lb
from periodgram.annulus import capacity_bounds, collar_capacity, constant_width_annulus
from periodgram.gram import SurfaceSpec, assemble, piece_bounds
from periodgram.oracle import discrete_capacity
from periodgram.qpiece import FenchelNielsenTriple
from periodgram.scenarios import (
    cylinder_floor,
    first_genus_below_floor,
    linear_surface_spec,
    necklace_testform_bound,
    q22_interval,
)
from periodgram.tube import tube_upper_bound_qii

TUBES = ("i", "tau", "diag")


def rel(x, y):
    return abs(x - y) / abs(y)


@pytest.mark.criterion(1, "collar exactness")
def test_collar_exactness(record_property):
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    worst = 0.0
    for L, w in rng.uniform(0.5, 5.0, size=(20, 2)):
        b = capacity_bounds(constant_width_annulus(L, w))
        c = collar_capacity(L, w)
        worst = max(worst, rel(b.lower, c), rel(b.upper, c))
    dt = time.perf_counter() - t0
    record_property("detail", f"max rel error {worst:.2e} over 20 collars")
    assert worst <= 1e-9
    assert dt < 1.0


@pytest.mark.criterion(2, "oracle sandwich at 256x256")
def test_oracle_sandwich(record_property):
    rng = np.random.default_rng(20261015)
    t0 = time.perf_counter()
    inside = within = 0
    for k in range(10):
        beta, l, t = rng.uniform(2, 6), rng.uniform(1, 3), rng.uniform(0, 0.3)
        te = piece_bounds(geometry(beta, l, t)).tubes[TUBES[k % 3]]
        c = te.capacity
        e = discrete_capacity(te.annulus, 256, 256)
        within += 0.99 * c.lower <= e <= 1.01 * c.upper
        inside += c.lower < e < c.upper
    dt = time.perf_counter() - t0
    record_property("detail", f"{within}/10 within 1%, {inside}/10 strictly inside")
    assert within == 10
    assert inside >= 8
    assert dt < 300


@pytest.mark.criterion(3, "projection/tube/closed-form sandwich")
def test_full_sandwich(record_property):
    rng = np.random.default_rng(3)
    t0 = time.perf_counter()
    bad = []
    for beta, l, t in zip(rng.uniform(2, 6, 20), rng.uniform(1, 3, 20), rng.uniform(0, 0.3, 20)):
        g = geometry(beta, l, t)
        for w in TUBES:
            s = lb.simplified_bounds(g, w)
            low = lb.lower_bound_qii(g, w)
            up = tube_upper_bound_qii(g, w)
            if not (s.lower <= low + 1e-8 and low <= up + 1e-8 and up <= s.upper + 1e-8):
                bad.append((beta, l, t, w))
    dt = time.perf_counter() - t0
    record_property("detail", f"{60 - len(bad)}/60 chains ordered")
    assert not bad
    assert dt < 30


@pytest.mark.criterion(4, "dual-route polygon identities")
def test_dual_route_identities(record_property):
    rng = np.random.default_rng(4)
    t0 = time.perf_counter()
    worst = 0.0
    n = 0
    while n < 100:
        beta, l = rng.uniform(0.1, 10.0), rng.uniform(0.1, 6.0)
        try:
            h = hypgeo.hexagon_data(beta, l)
        except hypgeo.GeometryError:
            continue
        n += 1
        worst = max(
            worst,
            rel(math.cosh(h.delta_prime), math.sinh(l / 2) * math.sinh(h.a)),
            rel(math.sinh(h.c), math.cosh(h.delta_prime) * math.sinh(h.half_b)),
            rel(1 / math.tanh(h.alpha_dprime), math.cosh(h.half_b) / math.tanh(h.delta_prime)),
        )
    dt = time.perf_counter() - t0
    record_property("detail", f"max rel defect {worst:.2e} on 100 hexagons")
    assert worst <= 1e-12
    assert dt < 1.0


@pytest.mark.criterion(5, "trivial-twist degeneracies")
def test_trivial_twist(record_property):
    rng = np.random.default_rng(5)
    t0 = time.perf_counter()
    worst = 0.0
    for beta, l in zip(rng.uniform(0.5, 8, 20), rng.uniform(0.3, 3, 20)):
        g = geometry(beta, l, 0.0)
        hb = g.hex["i"].half_b
        lam, nu = lb.lambda_nu(hb, l, 0.0)
        worst = max(worst, abs(g.theta - math.pi / 2), abs(g.t_tau), rel(lam, 2 * hb), abs(nu - math.pi / 2))
    dt = time.perf_counter() - t0
    record_property("detail", f"max defect {worst:.2e}")
    assert worst <= 1e-12
    assert dt < 1.0


@pytest.mark.criterion(6, "necklace order check")
def test_necklace_order(record_property):
    t0 = time.perf_counter()
    worst = max(
        rel((g - 1) * necklace_testform_bound(g, 1.0), necklace_testform_bound(2, 1.0)) for g in range(2, 101)
    )
    g0 = first_genus_below_floor(1.0)
    dt = time.perf_counter() - t0
    record_property("detail", f"g0 = {g0}, (g-1)*bound constant to {worst:.1e}")
    assert worst <= 1e-14
    assert g0 is not None and g0 <= 20
    assert all(necklace_testform_bound(g, 1.0) < cylinder_floor(1.0) for g in range(g0, 101))
    assert dt < 1.0


@pytest.mark.criterion(7, "linear surface q22 gap shrinks from eta=3 to eta=6")
def test_linear_surface_gap(record_property):
    t0 = time.perf_counter()
    a = q22_interval(linear_surface_spec(3, 3.0))
    b = q22_interval(linear_surface_spec(3, 6.0))
    dt = time.perf_counter() - t0
    record_property(
        "detail",
        f"gap(3) = {a.width:.4f} [{a.lower:.4f}, {a.upper:.4f}], "
        f"gap(6) = {b.width:.4f} [{b.lower:.4f}, {b.upper:.4f}]",
    )
    assert b.width < a.width
    assert dt < 60


@pytest.mark.criterion(8, "matrix contracts on a random genus 3 spec")
def test_matrix_contracts(record_property):
    rng = np.random.default_rng(8)
    pieces = tuple(
        FenchelNielsenTriple(rng.uniform(2, 6), rng.uniform(1, 2.5), rng.uniform(-0.3, 0.3), rng.choice(TUBES))
        for _ in range(3)
    )
    t0 = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        M = assemble(SurfaceSpec(3, pieces))
    dt = time.perf_counter() - t0
    n = M.size
    empty = sum(M[i, j].lower > M[i, j].upper for i in range(n) for j in range(n))
    outside = 0
    for i in range(n):
        for j in range(n):
            if i != j:
                env = math.sqrt(M[i, i].upper * M[j, j].upper)
                outside += not (-env <= M[i, j].lower and M[i, j].upper <= env)
    record_property("detail", f"symmetric={M.is_symmetric()}, {empty} empty, {outside} outside envelope")
    assert M.is_symmetric()
    assert empty == 0 and outside == 0
    assert dt < 60


@pytest.mark.criterion(9, "CLI determinism")
def test_cli_determinism(tmp_path, record_property):
    t0 = time.perf_counter()
    outs = []
    for k in range(2):
        p = tmp_path / f"run{k}.json"
        assert cli.run([golden_path("g3_spec.json"), "-o", str(p)]) == 0
        outs.append(p.read_bytes())
    dt = time.perf_counter() - t0
    record_property("detail", f"{len(outs[0])} bytes, identical={outs[0] == outs[1]}")
    assert outs[0] == outs[1]
    assert dt < 60
