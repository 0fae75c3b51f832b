import pytest

from periodgram import oracle
from periodgram.annulus import (
    Annulus,
    capacity_bounds,
    collar_capacity,
    constant_segment,
    constant_width_annulus,
    trirect_segment,
    wrap_segments,
)
from periodgram.errors import ConvergenceError, ValidationError
from periodgram.oracle import column_grid, discrete_capacity
from periodgram.tube import build_tube


def bump(shift=0.0, L=2.0, w=0.6):
    up = [trirect_segment(0.0, L / 2, w, "rising"), trirect_segment(L / 2, L, w, "falling")]
    return Annulus(L, [constant_segment(0.0, L, -w)], wrap_segments([s.shifted(shift) for s in up], L))


@pytest.mark.parametrize("n, tol", [(128, 0.02), (256, 0.005)])
def test_collar(n, tol):
    c = collar_capacity(2.0, 1.0)
    e = discrete_capacity(constant_width_annulus(2.0, 1.0), n, n)
    assert abs(e - c) / c < tol
    assert e >= c * (1 - 1e-12)


def test_nested_refinement_is_monotone():
    A = bump()
    prev = None
    for n in (16, 32, 64, 128):
        e = discrete_capacity(A, n, n)
        if prev is not None:
            assert e <= prev + 1e-12
        prev = e


def test_grid_is_nested_and_contains_breakpoints():
    A = bump(shift=0.3)
    g1, g2 = column_grid(A, 64), column_grid(A, 128)
    assert set(g1.round(12)) <= set(g2.round(12))
    for b in A.breakpoints():
        assert min(abs(g1 - b)) < 1e-12


def test_cyclic_relabeling():
    # shifting by half the period maps the breakpoints onto themselves
    a = discrete_capacity(bump(), 64, 32)
    b = discrete_capacity(bump(shift=1.0), 64, 32)
    assert b == pytest.approx(a, rel=1e-9)


def test_seed_energy_is_not_below_minimum():
    e, info = discrete_capacity(bump(), 32, 32, return_info=True)
    assert info["seed_energy"] >= e - 1e-12
    assert info["residual"] <= 1e-10


def test_golden_tube_inside_certified_interval(tube_piece):
    A = build_tube(tube_piece, "i")
    b = capacity_bounds(A)
    e = discrete_capacity(A, 128, 128)
    assert b.lower < e < b.upper


def test_result_is_reproducible(tube_piece):
    A = build_tube(tube_piece, "tau")
    assert discrete_capacity(A, 32, 16) == discrete_capacity(A, 32, 16)


def test_grid_too_small():
    with pytest.raises(ValidationError):
        discrete_capacity(bump(), 4, 16)


def test_convergence_failure(monkeypatch):
    monkeypatch.setattr(oracle, "MAX_ITER", 1)
    with pytest.raises(ConvergenceError):
        discrete_capacity(bump(), 64, 64)
