"""Minimal sectional curvature over the Grassmannian of 2-planes.

Strategy: a deterministic low-discrepancy sweep of orthonormal pairs scored
through the bivector form of the tensor, followed by local descent (L-BFGS
with the analytic gradient of the GL(2)-invariant Rayleigh-type quotient
R(u,v,u,v) / (|u|^2 |v|^2 - <u,v>^2)) from the best cells.  Certified on the
closed-form models in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize
from scipy.stats import norm, qmc

from .curvature import (
    AlgCurvTensor,
    Plane,
    RATIONAL,
    identity_metric,
    kulkarni_nomizu,
    pair_index,
    scalar,
)


class MinSectionalError(RuntimeError):
    """No refinement start converged; carries grid diagnostics."""


class DegenerateEpsError(ValueError):
    """eps at or beyond 1/(n(n-1)): the modified scalar curvature
    (1 - n(n-1)*eps) * R degenerates and the shift equation has no solution."""


@dataclass(frozen=True)
class SearchOptions:
    grid_points: int | None = None   # default: min(20**(2(n-2)), 160000)
    refine_starts: int = 32
    max_iters: int = 400
    tol: float = 1e-8

    def grid_for(self, n):
        if self.grid_points is not None:
            return self.grid_points
        return min(20 ** (2 * (n - 2)), 160_000)


def pair_operator(Rm: AlgCurvTensor) -> np.ndarray:
    """Rhat[a, b] = R_{i_a j_a i_b j_b} over the bivector pair basis."""
    pairs = pair_index(Rm.n)
    comp = np.asarray(Rm.comp, dtype=float) if Rm.mode == RATIONAL else Rm.comp
    idx = np.array(pairs)
    return comp[idx[:, 0][:, None], idx[:, 1][:, None], idx[:, 0][None, :], idx[:, 1][None, :]]


_GRID_CACHE = {}


def _plane_grid(n, count):
    """Deterministic stratified orthonormal pairs: Halton points in [0,1]^{2n}
    pushed to Gaussians, then Gram-Schmidt.  Cached per (n, count)."""
    key = (n, count)
    if key not in _GRID_CACHE:
        h = qmc.Halton(d=2 * n, scramble=False)
        h.fast_forward(1)  # skip the origin
        z = norm.ppf(h.random(count))
        u, v = z[:, :n], z[:, n:]
        x = u / np.linalg.norm(u, axis=1, keepdims=True)
        v = v - (v * x).sum(axis=1, keepdims=True) * x
        y = v / np.linalg.norm(v, axis=1, keepdims=True)
        _GRID_CACHE[key] = (x, y)
    return _GRID_CACHE[key]


def _bivector(x, y, pairs):
    return np.stack([x[:, i] * y[:, j] - x[:, j] * y[:, i] for i, j in pairs], axis=1)


def grid_sectionals(Rm: AlgCurvTensor, count):
    """Sectional curvature on the deterministic grid; (values, x, y)."""
    x, y = _plane_grid(Rm.n, count)
    w = _bivector(x, y, pair_index(Rm.n))
    rhat = pair_operator(Rm)
    return np.einsum("pa,ab,pb->p", w, rhat, w), x, y


def sample_sectionals(Rm: AlgCurvTensor, count, seed):
    """Independent dense-sampling oracle: seeded random planes, raw values."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((count, 2 * Rm.n))
    n = Rm.n
    u, v = z[:, :n], z[:, n:]
    x = u / np.linalg.norm(u, axis=1, keepdims=True)
    v = v - (v * x).sum(axis=1, keepdims=True) * x
    y = v / np.linalg.norm(v, axis=1, keepdims=True)
    w = _bivector(x, y, pair_index(n))
    rhat = pair_operator(Rm)
    return np.einsum("pa,ab,pb->p", w, rhat, w)


def _quotient_and_grad(comp, z):
    n = comp.shape[0]
    u, v = z[:n], z[n:]
    num = float(np.einsum("ijkl,i,j,k,l", comp, u, v, u, v))
    uu, vv, uv = u @ u, v @ v, u @ v
    den = uu * vv - uv * uv
    dnum_u = 2.0 * np.einsum("ijkl,j,k,l->i", comp, v, u, v)
    dnum_v = 2.0 * np.einsum("ijkl,i,k,l->j", comp, u, u, v)
    dden_u = 2.0 * (vv * u - uv * v)
    dden_v = 2.0 * (uu * v - uv * u)
    f = num / den
    grad = np.concatenate([(dnum_u - f * dden_u), (dnum_v - f * dden_v)]) / den
    return f, grad


def min_sectional(Rm: AlgCurvTensor, opts: SearchOptions = SearchOptions()):
    """Minimal sectional curvature over all 2-planes; returns (value, Plane).

    Coarse deterministic grid, then local descent from the best cells.
    Raises MinSectionalError if no start converges within opts.max_iters.
    """
    if Rm.n > 8:
        raise ValueError("search supported for n <= 8 only")
    count = opts.grid_for(Rm.n)
    values, gx, gy = grid_sectionals(Rm, count)
    order = np.argsort(values, kind="stable")[: opts.refine_starts]

    comp = np.asarray(Rm.comp, dtype=float) if Rm.mode == RATIONAL else Rm.comp
    best_val, best_z, converged = np.inf, None, 0
    for p in order:
        z0 = np.concatenate([gx[p], gy[p]])
        res = minimize(lambda z: _quotient_and_grad(comp, z), z0, jac=True,
                       method="L-BFGS-B",
                       options={"maxiter": opts.max_iters, "gtol": opts.tol * 1e-2,
                                "ftol": 1e-17})
        if res.success or res.fun <= values[p] + opts.tol:
            converged += 1
            if res.fun < best_val:
                best_val, best_z = res.fun, res.x
    if best_z is None:
        raise MinSectionalError(
            f"no refinement start converged ({opts.refine_starts} starts, "
            f"max_iters={opts.max_iters}); grid min {values.min()} over {count} planes")
    u, v = best_z[: Rm.n], best_z[Rm.n:]
    x = u / np.linalg.norm(u)
    v = v - (v @ x) * x
    y = v / np.linalg.norm(v)
    plane = Plane(x, y)
    w = _bivector(x[None, :], y[None, :], pair_index(Rm.n))[0]
    rhat = pair_operator(Rm)
    return float(w @ rhat @ w), plane


def shift_to_pinching(Rm: AlgCurvTensor, eps, margin=0,
                      opts: SearchOptions = SearchOptions()) -> AlgCurvTensor:
    """Shift by a multiple of g^g so that Sec >= eps*R (+ margin slack).

    Solves min Sec(Rm') = eps R' for Rm' = Rm + (c/2) g^g, where both sides
    move with c:  sigma -> sigma + c  and  R -> R + n(n-1) c.
    """
    n = Rm.n
    if float(eps) * n * (n - 1) >= 1:
        raise DegenerateEpsError(
            f"eps = {eps} >= 1/(n(n-1)) = 1/{n * (n - 1)}: the modified scalar "
            "curvature (1 - n(n-1)*eps)*R degenerates; shift equation unsolvable")
    min_sec, _ = min_sectional(Rm, opts)
    R = float(scalar(Rm))
    c = (float(eps) * R - min_sec) / (1 - float(eps) * n * (n - 1)) + float(margin)
    gg = kulkarni_nomizu(identity_metric(n, Rm.mode), identity_metric(n, Rm.mode))
    if Rm.mode == RATIONAL:
        half_c = Fraction(c) / 2  # exact dyadic conversion of the float shift
    else:
        half_c = c / 2.0
    return AlgCurvTensor(n, Rm.mode, Rm.comp + half_c * gg.comp)
