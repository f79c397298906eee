"""Numeric inner loops with a numba path and a pure-numpy fallback.

Set ``DRG_MNHD_DISABLE_NUMBA=1`` to force the numpy implementations (also
used automatically when numba cannot be imported).  Both paths are always
importable so they can be compared against each other.
"""
from __future__ import annotations

import math
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


USE_NUMBA = HAVE_NUMBA and os.environ.get("DRG_MNHD_DISABLE_NUMBA", "").strip() not in ("1", "true", "yes")


def _rotation(app, aqq, apq):
    tau = (aqq - app) / (2.0 * apq)
    if tau >= 0.0:
        t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
    else:
        t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    return c, t * c


_rotation_jit = njit(cache=True)(_rotation)


@njit(cache=True)
def jacobi_numba(a, max_sweeps, rel_tol):
    """Cyclic Jacobi on a copy of symmetric ``a``.

    Returns ``(eigenvalues, eigenvectors_as_columns, sweeps, converged)``.
    Convergence: off-diagonal Frobenius norm <= rel_tol * ||a||_F.
    """
    n = a.shape[0]
    A = a.copy()
    V = np.eye(n)
    norm = math.sqrt((A * A).sum())
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += A[i, j] * A[i, j]
        if math.sqrt(off) <= rel_tol * norm:
            return np.diag(A).copy(), V, sweep, True
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                c, s = _rotation_jit(A[p, p], A[q, q], apq)
                for k in range(n):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = c * akp - s * akq
                    A[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = A[p, k]
                    aqk = A[q, k]
                    A[p, k] = c * apk - s * aqk
                    A[q, k] = s * apk + c * aqk
                A[p, q] = 0.0
                A[q, p] = 0.0
                for k in range(n):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = c * vkp - s * vkq
                    V[k, q] = s * vkp + c * vkq
    return np.diag(A).copy(), V, max_sweeps, False


def jacobi_numpy(a, max_sweeps, rel_tol):
    n = a.shape[0]
    A = np.array(a, dtype=float)
    V = np.eye(n)
    norm = np.linalg.norm(A)
    offmask = ~np.eye(n, dtype=bool)
    for sweep in range(max_sweeps + 1):
        if np.sqrt((A[offmask] ** 2).sum()) <= rel_tol * norm:
            return np.diag(A).copy(), V, sweep, True
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                c, s = _rotation(A[p, p], A[q, q], apq)
                cols = A[:, [p, q]]
                A[:, p] = c * cols[:, 0] - s * cols[:, 1]
                A[:, q] = s * cols[:, 0] + c * cols[:, 1]
                rows = A[[p, q], :]
                A[p, :] = c * rows[0] - s * rows[1]
                A[q, :] = s * rows[0] + c * rows[1]
                A[p, q] = A[q, p] = 0.0
                vcols = V[:, [p, q]]
                V[:, p] = c * vcols[:, 0] - s * vcols[:, 1]
                V[:, q] = s * vcols[:, 0] + c * vcols[:, 1]
    return np.diag(A).copy(), V, max_sweeps, False


@njit(cache=True)
def h_grid_numba(lams, puu, puv, times):
    """h(t) for a batch of pairs via the pairwise spectral sum.

    ``puu[p, k] = P_k(u, u)`` and ``puv[p, k] = P_k(u, v)`` for pair ``p``;
    result has shape ``(pairs, len(times))``.
    """
    npairs, s = puu.shape
    nt = times.shape[0]
    out = np.zeros((npairs, nt))
    E = np.empty(s)
    for ti in range(nt):
        t = times[ti]
        for k in range(s):
            E[k] = math.exp(-t * lams[k])
        for p in range(npairs):
            acc = 0.0
            for k in range(s):
                for l in range(k + 1, s):
                    w = (lams[l] - lams[k]) * (puv[p, k] * puu[p, l] - puv[p, l] * puu[p, k])
                    acc += w * E[k] * E[l]
            out[p, ti] = acc
    return out


def h_grid_numpy(lams, puu, puv, times):
    lams = np.asarray(lams, dtype=float)
    gap = lams[None, :] - lams[:, None]  # gap[k, l] = lam_l - lam_k
    W = gap[None] * (puv[:, :, None] * puu[:, None, :] - puv[:, None, :] * puu[:, :, None])
    W = np.triu(W, k=1)
    E = np.exp(-np.outer(np.asarray(times, dtype=float), lams))
    return np.einsum("tk,pkl,tl->pt", E, W, E)


def jacobi(a, max_sweeps=100, rel_tol=1e-12):
    a = np.ascontiguousarray(a, dtype=float)
    fn = jacobi_numba if USE_NUMBA else jacobi_numpy
    return fn(a, max_sweeps, rel_tol)


def h_grid(lams, puu, puv, times):
    args = [np.ascontiguousarray(x, dtype=float) for x in (lams, puu, puv, times)]
    fn = h_grid_numba if USE_NUMBA else h_grid_numpy
    return fn(*args)
