"""Adaptive Simpson quadrature with an accumulated error estimate."""

from .errors import ConvergenceError

MAX_DEPTH = 50
MAX_EVALS = 200_000


def adaptive_simpson(f, a, b, tol, max_depth=MAX_DEPTH, max_evals=MAX_EVALS):
    """Integrate *f* over ``[a, b]`` to absolute tolerance *tol*.

    Returns ``(value, error)``.  ``value`` carries the Richardson correction
    and ``error`` is the sum of the uncorrected local estimates
    ``|S2 - S1| / 15``, which dominates the true error of ``value`` for
    integrands that are smooth on ``[a, b]``.

    Raises :class:`ConvergenceError` if *tol* is not met within
    *max_depth* bisections or *max_evals* function evaluations.
    """
    if b == a:
        return 0.0, 0.0
    if b < a:
        v, e = adaptive_simpson(f, b, a, tol, max_depth, max_evals)
        return -v, e
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    evals = [3]
    total, err = 0.0, 0.0
    # explicit stack: (a, b, fa, fm, fb, whole, tol, depth)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    while stack:
        a0, b0, fa0, fm0, fb0, s0, tol0, depth = stack.pop()
        m = 0.5 * (a0 + b0)
        lm, rm = 0.5 * (a0 + m), 0.5 * (m + b0)
        flm, frm = f(lm), f(rm)
        evals[0] += 2
        left = (m - a0) / 6.0 * (fa0 + 4.0 * flm + fm0)
        right = (b0 - m) / 6.0 * (fm0 + 4.0 * frm + fb0)
        delta = left + right - s0
        if abs(delta) <= 15.0 * tol0 or (b0 - a0) < 1e-15 * max(1.0, abs(a0)):
            total += left + right + delta / 15.0
            err += abs(delta) / 15.0
            continue
        if depth >= max_depth or evals[0] > max_evals:
            raise ConvergenceError(
                f"adaptive Simpson on [{a:.6g}, {b:.6g}] did not reach tol {tol:.3g} "
                f"(stuck near t = {m:.6g})"
            )
        stack.append((m, b0, fm0, frm, fb0, right, 0.5 * tol0, depth + 1))
        stack.append((a0, m, fa0, flm, fm0, left, 0.5 * tol0, depth + 1))
    return total, err
