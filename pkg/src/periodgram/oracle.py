"""Discrete capacity of an annulus by Ritz minimisation (test oracle).

The annulus ``a1(t) <= s <= a2(t)`` is mapped onto ``[0, L) x [0, 1]`` by
``s = a1(t) + u (a2(t) - a1(t))``.  Trial functions are continuous and
bilinear in ``(t, u)``, periodic in ``t``, 0 at ``u = 0`` and 1 at ``u = 1``.
Their energy::

    E(f) = iint (1/cosh s) f_t^2 + cosh(s) f_s^2  ds dt

is computed in the pulled-back metric with tensor Gauss quadrature, so the
discrete minimum is the exact energy of a function on the true annulus up to
quadrature error: it overestimates the capacity and decreases under nested
refinement.  Grid columns always include the breakpoints of both boundaries.

This module is not on the certified path; it only checks the intervals
produced by :mod:`periodgram.annulus`.
"""

import numpy as np
import pyamg
import scipy.sparse as sp
from scipy.sparse.linalg import cg

from .errors import ConvergenceError, ValidationError

GAUSS_ORDER = 5
RESIDUAL_TOL = 1e-10
MAX_ITER = 2000
MAX_RESTARTS = 4


def column_grid(A, nt):
    """Column positions in ``[0, L]`` refining every interval between breakpoints.

    The allocation is computed on the coarsest level ``nt0 = nt / 2^j`` that
    still has at least four columns per interval and then scaled by ``2^j``,
    so doubling ``nt`` bisects every column.
    """
    bps = np.array(A.breakpoints())
    lens = np.diff(bps)
    nint = len(lens)
    nt0, scale = nt, 1
    while nt0 % 2 == 0 and nt0 // 2 >= 4 * nint:
        nt0 //= 2
        scale *= 2
    counts = scale * np.maximum(1, np.rint(nt0 * lens / A.length).astype(int))
    cols = [bps[0]]
    for a, b, n in zip(bps[:-1], bps[1:], counts):
        cols.extend(a + (b - a) * np.arange(1, n + 1) / n)
    cols = np.array(cols)
    cols[-1] = A.length
    return cols


def _boundary_arrays(A, t):
    a1 = np.empty_like(t)
    a2 = np.empty_like(t)
    d1 = np.empty_like(t)
    d2 = np.empty_like(t)
    for segs, val, der in ((A.lower, a1, d1), (A.upper, a2, d2)):
        for k, tk in enumerate(t):
            seg = A._segment_at(segs, tk)
            val[k] = seg.value(tk)
            der[k] = seg.slope(tk)
    return a1, a2, d1, d2


def _assemble(A, cols, ns):
    nt = len(cols) - 1
    xg, wg = np.polynomial.legendre.leggauss(GAUSS_ORDER)
    xg = 0.5 * (xg + 1.0)
    wg = 0.5 * wg
    dt = np.diff(cols)
    # quadrature abscissae in t: (nt, G)
    tq = cols[:-1, None] + dt[:, None] * xg[None, :]
    a1, a2, d1, d2 = (x.reshape(nt, GAUSS_ORDER) for x in _boundary_arrays(A, tq.ravel()))
    h = a2 - a1
    dh = d2 - d1
    du = 1.0 / ns
    u_nodes = np.arange(ns) * du
    # (nt, ns, Gt, Gu)
    uq = u_nodes[None, :, None, None] + du * xg[None, None, None, :]
    s = a1[:, None, :, None] + uq * h[:, None, :, None]
    ut = -(d1[:, None, :, None] + uq * dh[:, None, :, None]) / h[:, None, :, None]
    us = 1.0 / h[:, None, :, None]
    jac = h[:, None, :, None] * dt[:, None, None, None] * du
    w = wg[None, None, :, None] * wg[None, None, None, :] * jac
    cs = np.cosh(s)
    # bilinear shape functions on the reference square
    xi = xg[:, None] * np.ones((1, GAUSS_ORDER))
    eta = np.ones((GAUSS_ORDER, 1)) * xg[None, :]
    Nxi = np.stack([-(1 - eta), (1 - eta), -eta, eta])
    Neta = np.stack([-(1 - xi), -xi, (1 - xi), xi])
    # derivatives wrt t and u: (4, nt, 1, Gt, Gu) / (4, 1, 1, Gt, Gu)
    Ft = Nxi[:, None, None] / dt[None, :, None, None, None]
    Fu = Neta[:, None, None, :, :] / du
    # f_t = F_t + F_u u_t ; f_s = F_u u_s
    ft = Ft + Fu * ut[None]
    fs = Fu * us[None]
    ke = np.einsum("anjgh,bnjgh,njgh->njab", ft, ft, w / cs) + np.einsum(
        "anjgh,bnjgh,njgh->njab", fs, fs, w * cs
    )
    # global numbering: node (i, j) -> i * (ns + 1) + j, column nt wraps to 0
    i = np.arange(nt)[:, None]
    j = np.arange(ns)[None, :]
    ip = (i + 1) % nt
    nodes = np.stack(
        [i * (ns + 1) + j, ip * (ns + 1) + j, i * (ns + 1) + j + 1, ip * (ns + 1) + j + 1]
    )
    nodes = np.broadcast_to(nodes, (4, nt, ns))
    rows = np.broadcast_to(nodes.transpose(1, 2, 0)[..., :, None], ke.shape)
    colsi = np.broadcast_to(nodes.transpose(1, 2, 0)[..., None, :], ke.shape)
    n = nt * (ns + 1)
    K = sp.coo_matrix((ke.ravel(), (rows.ravel(), colsi.ravel())), shape=(n, n)).tocsr()
    return K


def discrete_capacity(A, nt, ns, return_info=False):
    """Minimal discrete energy on an ``nt x ns`` boundary-fitted grid.

    Raises :class:`ConvergenceError` if preconditioned CG stalls above a
    relative residual of ``1e-10`` on the Jacobi-scaled system.
    """
    if nt < 8 or ns < 8:
        raise ValidationError(f"grid must be at least 8 x 8, got {nt} x {ns}")
    cols = column_grid(A, nt)
    nt_eff = len(cols) - 1
    K = _assemble(A, cols, ns)
    jj = np.tile(np.arange(ns + 1), nt_eff)
    bottom, top = jj == 0, jj == ns
    free = ~(bottom | top)
    g = np.where(top, 1.0, 0.0)

    # initial guess: linear in H between the two boundaries
    tc = cols[:-1]
    a1, a2, _, _ = _boundary_arrays(A, tc)
    u = np.arange(ns + 1) / ns
    s = a1[:, None] + u[None, :] * (a2 - a1)[:, None]
    H = 2.0 * np.arctan(np.exp(s))
    H1 = 2.0 * np.arctan(np.exp(a1))[:, None]
    H2 = 2.0 * np.arctan(np.exp(a2))[:, None]
    seed = ((H - H1) / (H2 - H1)).ravel()
    seed[bottom], seed[top] = 0.0, 1.0

    Kff = K[free][:, free].tocsr()
    rhs = -(K[free] @ g)
    # symmetric Jacobi scaling: entries of K span several decades where cosh(s) is large
    d = 1.0 / np.sqrt(Kff.diagonal())
    D = sp.diags(d)
    Ks = (D @ Kff @ D).tocsr()
    bs = d * rhs
    # pyamg draws random vectors from the global generator; pin it for reproducibility
    state = np.random.get_state()
    try:
        np.random.seed(0)
        ml = pyamg.smoothed_aggregation_solver(Ks, symmetry="symmetric")
    finally:
        np.random.set_state(state)
    M = ml.aspreconditioner(cycle="V")
    y = seed[free] / d
    bnorm = max(np.linalg.norm(bs), 1e-300)
    # the recursively updated CG residual drifts on fine grids; restarting
    # recomputes it from scratch
    for _ in range(MAX_RESTARTS):
        y, info = cg(Ks, bs, x0=y, rtol=1e-13, atol=0.0, maxiter=MAX_ITER, M=M)
        res = np.linalg.norm(bs - Ks @ y) / bnorm
        if res <= RESIDUAL_TOL:
            break
    x = d * y
    if res > RESIDUAL_TOL:
        raise ConvergenceError(f"CG stopped at relative residual {res:.3g} (info={info})")
    f = g.copy()
    f[free] = x
    energy = float(f @ (K @ f))
    if return_info:
        return energy, {
            "seed_energy": float(seed @ (K @ seed)),
            "residual": res,
            "columns": nt_eff,
            "unknowns": int(free.sum()),
        }
    return energy
