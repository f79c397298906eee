"""Floating-point spectral oracle for arbitrary graphs.

Laplacian eigendecomposition (cyclic Jacobi), eigenspace projections, the heat
kernel as a spectral sum, the ratio ``r_t(u, v) = H_t(u, v) / H_t(u, u)`` and
its numerator-derivative ``h_{u,v}(t)``, plus time-grid monotonicity scans.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .analysis import DeltaProfile
from .errors import NegativeTime, NoConvergence, SameVertex, WrongSpectrumSize
from .graphs import Graph

MAX_SWEEPS = 100
JACOBI_REL_TOL = 1e-12
CLUSTER_REL_GAP = 1e-6
RECONSTRUCTION_TOL = 1e-9
DEFAULT_TOL = 1e-9
REFINE_FACTOR = 10


def laplacian(g: Graph) -> np.ndarray:
    """``L = Deg - A`` as a float matrix."""
    A = g.adjacency.astype(float)
    return np.diag(A.sum(axis=1)) - A


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Distinct eigenvalues (ascending), their multiplicities and orthogonal projections."""

    eigenvalues: np.ndarray
    multiplicities: Tuple[int, ...]
    projections: Tuple[np.ndarray, ...]
    sweeps: int = 0

    def __post_init__(self):
        for arr in (self.eigenvalues, *self.projections):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return self.projections[0].shape[0]

    @property
    def s(self) -> int:
        """Number of distinct nonzero eigenvalues (for a connected graph)."""
        return len(self.eigenvalues) - 1

    @property
    def spectral_radius(self) -> float:
        return float(np.max(np.abs(self.eigenvalues)))

    def projection_stack(self) -> np.ndarray:
        return np.stack(self.projections)


def cluster_eigenvalues(values: np.ndarray) -> List[np.ndarray]:
    """Group indices of sorted ``values``; a gap above the threshold starts a new group."""
    order = np.argsort(values, kind="stable")
    sv = values[order]
    thresh = CLUSTER_REL_GAP * max(1.0, float(np.max(np.abs(sv))) if sv.size else 1.0)
    groups, start = [], 0
    for i in range(1, len(sv) + 1):
        if i == len(sv) or sv[i] - sv[i - 1] > thresh:
            groups.append(order[start:i])
            start = i
    return groups


def eigendecompose(L, max_sweeps: int = MAX_SWEEPS, rel_tol: float = JACOBI_REL_TOL) -> SpectralDecomposition:
    L = np.asarray(L, dtype=float)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(L, L.T, rtol=0, atol=1e-12 * (1 + np.abs(L).max(initial=0))):
        raise ValueError("matrix must be symmetric")
    vals, vecs, sweeps, converged = kernels.jacobi(L, max_sweeps, rel_tol)
    if not converged:
        raise NoConvergence(f"Jacobi did not converge within {max_sweeps} sweeps")

    lams, mults, projs = [], [], []
    for idx in cluster_eigenvalues(vals):
        lams.append(float(np.mean(vals[idx])))
        mults.append(len(idx))
        V = vecs[:, idx]
        P = V @ V.T
        projs.append((P + P.T) / 2)

    recon = sum(lam * P for lam, P in zip(lams, projs))
    err = np.abs(recon - L).max(initial=0.0)
    if err > RECONSTRUCTION_TOL * (1 + np.abs(L).max(initial=0.0)):
        raise NoConvergence(f"reconstruction error {err:.3g} exceeds tolerance")
    return SpectralDecomposition(np.array(lams), tuple(mults), tuple(projs), int(sweeps))


def decompose_graph(g: Graph) -> SpectralDecomposition:
    return eigendecompose(laplacian(g))


# --------------------------------------------------------------------------
# heat kernel and ratio

def _check_time(t: float):
    if t < 0:
        raise NegativeTime(f"t must be nonnegative, got {t}")


def heat_kernel(decomp: SpectralDecomposition, t: float) -> np.ndarray:
    """``H_t = sum_lambda exp(-t*lambda) P_lambda``."""
    _check_time(t)
    weights = np.exp(-t * decomp.eigenvalues)
    return np.einsum("k,kij->ij", weights, decomp.projection_stack())


def heat_kernel_derivative(decomp: SpectralDecomposition, t: float) -> np.ndarray:
    _check_time(t)
    weights = -decomp.eigenvalues * np.exp(-t * decomp.eigenvalues)
    return np.einsum("k,kij->ij", weights, decomp.projection_stack())


def _check_pair(u: int, v: int):
    if u == v:
        raise SameVertex(f"need two distinct vertices, got {u} twice")


def ratio_r(decomp: SpectralDecomposition, u: int, v: int, t: float) -> float:
    _check_pair(u, v)
    _check_time(t)
    E = np.exp(-t * decomp.eigenvalues)
    P = decomp.projection_stack()
    return float(E @ P[:, u, v] / (E @ P[:, u, u]))


def _pair_entries(decomp: SpectralDecomposition, pairs: np.ndarray):
    P = decomp.projection_stack()
    puu = P[:, pairs[:, 0], pairs[:, 0]].T
    puv = P[:, pairs[:, 0], pairs[:, 1]].T
    return puu, puv


def h_values(decomp: SpectralDecomposition, pairs, times) -> np.ndarray:
    """``h`` for many pairs and times at once; shape ``(len(pairs), len(times))``.

    Uses the pairwise spectral sum over distinct eigenvalues.  The terms that
    pair an eigenvalue with 0 are the ``lambda_i / n * Delta_i`` terms when
    ``P_0 = J/n``; keeping them in the same double sum means disconnected
    inputs are still handled correctly.
    """
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if np.any(pairs[:, 0] == pairs[:, 1]):
        raise SameVertex("pairs must consist of distinct vertices")
    times = np.asarray(times, dtype=float)
    if np.any(times < 0):
        raise NegativeTime("times must be nonnegative")
    puu, puv = _pair_entries(decomp, pairs)
    return kernels.h_grid(decomp.eigenvalues, puu, puv, times)


def h_function(decomp: SpectralDecomposition, u: int, v: int, t: float) -> float:
    _check_pair(u, v)
    return float(h_values(decomp, [(u, v)], [t])[0, 0])


def h_direct(decomp: SpectralDecomposition, u: int, v: int, t: float) -> float:
    """``H'_t(u,v) H_t(u,u) - H_t(u,v) H'_t(u,u)`` from the two spectral sums separately."""
    _check_pair(u, v)
    _check_time(t)
    lam = decomp.eigenvalues
    E = np.exp(-t * lam)
    P = decomp.projection_stack()
    huv, huu = E @ P[:, u, v], E @ P[:, u, u]
    duv, duu = (-lam * E) @ P[:, u, v], (-lam * E) @ P[:, u, u]
    return float(duv * huu - huv * duu)


def delta_from_projections(decomp: SpectralDecomposition, u: int, v: int) -> DeltaProfile:
    """The six pair quantities read off the projections of the three nonzero eigenvalues."""
    _check_pair(u, v)
    if decomp.s != 3:
        raise WrongSpectrumSize(f"need exactly 3 nonzero distinct eigenvalues, found {decomp.s}")
    P = decomp.projections
    uu = {i: float(P[i][u, u]) for i in (1, 2, 3)}
    uv = {i: float(P[i][u, v]) for i in (1, 2, 3)}
    single = [uu[i] - uv[i] for i in (1, 2, 3)]
    pair = [uv[i] * uu[j] - uv[j] * uu[i] for i, j in ((1, 2), (1, 3), (2, 3))]
    return DeltaProfile(*single, *pair)


# --------------------------------------------------------------------------
# monotonicity scans

@dataclass(frozen=True)
class GridSpec:
    tmin: float = 1e-3
    tmax: float = 1e2
    points: int = 400
    include_zero: bool = True

    def __post_init__(self):
        if not (0 < self.tmin < self.tmax) or self.points < 2:
            raise ValueError("grid needs 0 < tmin < tmax and at least 2 points")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse ``"tmin,tmax,points"``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"grid must be 'tmin,tmax,points', got {text!r}")
        return cls(float(parts[0]), float(parts[1]), int(parts[2]))

    def times(self) -> np.ndarray:
        ts = np.geomspace(self.tmin, self.tmax, self.points)
        return np.concatenate([[0.0], ts]) if self.include_zero else ts


@dataclass
class MonotonicityReport:
    pair: Tuple[int, int]
    grid: List[float]
    min_h: float
    argmin_t: float
    violations: List[Tuple[float, float]] = field(default_factory=list)
    r_start: float = 0.0
    r_end_gap: float = 0.0
    refined: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations


def _refine(decomp, u, v, times, k, tol):
    """Denser sampling around grid index ``k``, evaluated by both numeric routes.

    Returns ``(min_h, argmin_t, violations)`` where a point only counts as a
    violation when both routes put it below ``-tol``.
    """
    lo = times[max(k - 1, 0)]
    hi = times[min(k + 1, len(times) - 1)]
    span = 2 * REFINE_FACTOR + 1
    fine = np.unique(np.concatenate([np.linspace(lo, hi, span), [times[k]]]))
    via_sum = h_values(decomp, [(u, v)], fine)[0]
    via_direct = np.array([h_direct(decomp, u, v, t) for t in fine])
    h = np.maximum(via_sum, via_direct)
    j = int(np.argmin(h))
    bad = [(float(t), float(x)) for t, x in zip(fine, h) if x < -tol]
    return float(h[j]), float(fine[j]), bad


def _report_from_row(decomp, u, v, times, row, tol) -> MonotonicityReport:
    k = int(np.argmin(row))
    min_h, arg_t = float(row[k]), float(times[k])
    violations = [(float(t), float(x)) for t, x in zip(times, row) if x < -tol]
    refined = False
    if violations and min_h >= -REFINE_FACTOR * tol:
        # marginal dip: could be eigensolver noise, so re-sample before reporting
        refined = True
        min_h, arg_t, violations = _refine(decomp, u, v, times, k, tol)
    return MonotonicityReport(
        pair=(int(u), int(v)),
        grid=[float(t) for t in times],
        min_h=min_h,
        argmin_t=arg_t,
        violations=violations,
        r_start=ratio_r(decomp, u, v, float(times[0])),
        r_end_gap=abs(ratio_r(decomp, u, v, float(times[-1])) - 1.0),
        refined=refined,
    )


def scan_pairs(
    decomp: SpectralDecomposition,
    pairs: Sequence[Tuple[int, int]],
    grid: Optional[GridSpec] = None,
    tol: float = DEFAULT_TOL,
) -> List[MonotonicityReport]:
    grid = grid or GridSpec()
    times = grid.times()
    pairs = [(int(u), int(v)) for u, v in pairs]
    if not pairs:
        return []
    H = h_values(decomp, pairs, times)
    return [_report_from_row(decomp, u, v, times, H[i], tol) for i, (u, v) in enumerate(pairs)]


def monotonicity_scan(
    decomp: SpectralDecomposition, u: int, v: int, grid: Optional[GridSpec] = None, tol: float = DEFAULT_TOL
) -> MonotonicityReport:
    _check_pair(u, v)
    return scan_pairs(decomp, [(u, v)], grid, tol)[0]


def all_pairs(n: int) -> List[Tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


# --------------------------------------------------------------------------
# hygiene checks used by tests and the analyze command

def projection_defects(decomp: SpectralDecomposition) -> dict:
    """Max-norm defects of the projection algebra; all should be tiny."""
    n = decomp.n
    P = decomp.projections
    I = np.eye(n)
    out = {
        "sum_to_identity": float(np.abs(sum(P) - I).max()),
        "idempotent": max(float(np.abs(p @ p - p).max()) for p in P),
        "orthogonal": max(
            (float(np.abs(P[i] @ P[j]).max()) for i in range(len(P)) for j in range(len(P)) if i != j),
            default=0.0,
        ),
        "p0_is_J_over_n": float(np.abs(P[0] - np.full((n, n), 1.0 / n)).max()),
    }
    return out


def stochasticity_defect(decomp: SpectralDecomposition, times=(0.0, 0.1, 1.0, 10.0)) -> float:
    return max(float(np.abs(heat_kernel(decomp, t).sum(axis=1) - 1).max()) for t in times)


def semigroup_defect(decomp: SpectralDecomposition, s: float, t: float) -> float:
    lhs = heat_kernel(decomp, s + t)
    return float(np.abs(lhs - heat_kernel(decomp, s) @ heat_kernel(decomp, t)).max())


def diagonal_spread(decomp: SpectralDecomposition, t: float) -> float:
    d = np.diag(heat_kernel(decomp, t))
    return float(d.max() - d.min())
