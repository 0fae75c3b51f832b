import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodgram.errors import ConvergenceError
from periodgram.quadrature import adaptive_simpson


def test_polynomial_up_to_cubic_is_exact():
    v, e = adaptive_simpson(lambda x: 4 * x**3 - x + 2, -1.0, 2.0, 1e-12)
    assert v == pytest.approx(15 - 1.5 + 6, rel=1e-14)
    assert e < 1e-13


@given(st.floats(0.1, 5.0), st.floats(1e-10, 1e-4))
def test_error_estimate_covers_true_error(k, tol):
    v, e = adaptive_simpson(lambda x: math.exp(k * x), 0.0, 1.0, tol)
    exact = math.expm1(k) / k
    assert abs(v - exact) <= max(e, 1e-14 * exact)
    assert abs(v - exact) <= 10 * tol


def test_reversed_limits_and_empty_interval():
    v, _ = adaptive_simpson(math.sin, math.pi, 0.0, 1e-10)
    assert v == pytest.approx(-2.0, rel=1e-10)
    assert adaptive_simpson(math.sin, 1.0, 1.0, 1e-10) == (0.0, 0.0)


def test_integrable_endpoint_singularity():
    v, _ = adaptive_simpson(lambda x: 1 / math.sqrt(x) if x > 0 else 0.0, 0.0, 1.0, 1e-6)
    assert v == pytest.approx(2.0, abs=1e-3)


def test_gives_up_on_discontinuity_with_tiny_budget():
    with pytest.raises(ConvergenceError):
        adaptive_simpson(lambda x: 1.0 if x > 1 / 3 else 0.0, 0.0, 1.0, 1e-14, max_depth=10)
    with pytest.raises(ConvergenceError):
        adaptive_simpson(lambda x: 1.0 if x > 1 / 3 else 0.0, 0.0, 1.0, 1e-14, max_evals=20)
