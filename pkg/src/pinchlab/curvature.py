"""Algebra of pointwise algebraic curvature tensors in an orthonormal frame.

Everything here is pointwise linear algebra: the frame is orthonormal, so the
metric is the identity and no index raising/lowering ever happens.  The sign
convention is fixed so that the constant-curvature-kappa tensor has sectional
curvature kappa on every plane and sigma_ij = R_ijij on coordinate planes;
the round sphere is positively curved.

Two arithmetic modes are supported: exact Fractions ("rational") for identity
checks and float64 ("float") for sampling and optimization campaigns.  A
tensor carries its mode and mixed-mode operations are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .scalars import (
    FLOAT,
    RATIONAL,
    ArithmeticModeError,
    check_mode,
    exact_div,
    join_modes,
    scalar_to_json,
)

SYMMETRY_RTOL = 1e-14   # float mode; rational mode symmetries must hold exactly
PLANE_TOL = 1e-12


class SymmetryError(ValueError):
    """Component array violates a curvature-tensor symmetry."""


class PlaneError(ValueError):
    """Plane vectors are not orthonormal within tolerance."""


def zeros(shape, mode):
    check_mode(mode)
    if mode == RATIONAL:
        a = np.empty(shape, dtype=object)
        a[...] = Fraction(0)
        return a
    return np.zeros(shape)


def as_mode_array(values, mode):
    check_mode(mode)
    if mode == RATIONAL:
        a = np.empty(np.shape(values), dtype=object)
        flat = a.reshape(-1)
        src = np.asarray(values, dtype=object).reshape(-1)
        for idx, v in enumerate(src):
            flat[idx] = v if isinstance(v, Fraction) else Fraction(v)
        return a
    return np.asarray(values, dtype=float)


def _max_abs(a):
    if isinstance(a, np.ndarray) and a.dtype != object:
        return float(np.abs(a).max()) if a.size else 0.0
    m = 0
    for v in np.asarray(a, dtype=object).reshape(-1):
        av = -v if v < 0 else v
        if av > m:
            m = av
    return m


def _check_small(residual, mode, scale, what):
    tol = 0 if mode == RATIONAL else SYMMETRY_RTOL * max(1.0, float(scale))
    worst = _max_abs(residual)
    if worst > tol:
        raise SymmetryError(f"{what} violated: residual {worst} > tol {tol}")


# ---------------------------------------------------------------------------
# Symmetric 2-tensors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymTensor2:
    """Symmetric n x n tensor (Ric, traceless Ric, the metric, Hessians)."""

    n: int
    mode: str
    comp: np.ndarray

    def __post_init__(self):
        check_mode(self.mode)
        if self.comp.shape != (self.n, self.n):
            raise ValueError("component shape mismatch")
        _check_small(self.comp - self.comp.T, self.mode, _max_abs(self.comp),
                     "symmetry S_ij = S_ji")
        self.comp.setflags(write=False)

    @classmethod
    def from_components(cls, values, mode):
        a = as_mode_array(values, mode)
        return cls(a.shape[0], mode, a)

    @classmethod
    def identity(cls, n, mode):
        a = zeros((n, n), mode)
        one = Fraction(1) if mode == RATIONAL else 1.0
        for i in range(n):
            a[i, i] = one
        return cls(n, mode, a)

    def trace(self):
        return self.comp.trace()

    def norm_sq(self):
        return np.einsum("ij,ij", self.comp, self.comp)


def identity_metric(n, mode):
    return SymTensor2.identity(n, mode)


# ---------------------------------------------------------------------------
# Algebraic curvature tensors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlgCurvTensor:
    """Pointwise algebraic curvature tensor R_ijkl, dense over {0..n-1}^4.

    Invariants (enforced on construction): antisymmetry in the first and the
    last index pair, pair symmetry R_ijkl = R_klij, and the first Bianchi
    identity R_ijkl + R_iklj + R_iljk = 0.
    """

    n: int
    mode: str
    comp: np.ndarray

    def __post_init__(self):
        check_mode(self.mode)
        if self.n < 3:
            raise ValueError("dimension must be >= 3")
        if self.comp.shape != (self.n,) * 4:
            raise ValueError("component shape mismatch")
        scale = _max_abs(self.comp)
        c = self.comp
        _check_small(c + c.transpose(1, 0, 2, 3), self.mode, scale,
                     "antisymmetry R_ijkl = -R_jikl")
        _check_small(c + c.transpose(0, 1, 3, 2), self.mode, scale,
                     "antisymmetry R_ijkl = -R_ijlk")
        _check_small(c - c.transpose(2, 3, 0, 1), self.mode, scale,
                     "pair symmetry R_ijkl = R_klij")
        _check_small(c + c.transpose(0, 2, 3, 1) + c.transpose(0, 3, 1, 2),
                     self.mode, scale, "first Bianchi identity")
        self.comp.setflags(write=False)

    @classmethod
    def from_components(cls, values, mode):
        a = as_mode_array(values, mode)
        return cls(a.shape[0], mode, a)

    def bianchi_residual(self):
        c = self.comp
        return _max_abs(c + c.transpose(0, 2, 3, 1) + c.transpose(0, 3, 1, 2))

    # -- serialization ------------------------------------------------------

    def generating_entries(self):
        """Canonical nonzero entries with i<j, k<l, (i,j) <= (k,l)."""
        out = []
        pairs = list(combinations(range(self.n), 2))
        for a, (i, j) in enumerate(pairs):
            for (k, l) in pairs[a:]:
                v = self.comp[i, j, k, l]
                if v != 0:
                    out.append([i, j, k, l, v])
        return out

    def to_json(self):
        entries = [[i, j, k, l, scalar_to_json(v)]
                   for i, j, k, l, v in self.generating_entries()]
        return json.dumps({"n": self.n, "mode": self.mode, "entries": entries})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        n, mode = data["n"], check_mode(data["mode"])
        comp = zeros((n,) * 4, mode)
        for i, j, k, l, raw in data["entries"]:
            v = Fraction(raw) if mode == RATIONAL else float(raw)
            for (a, b, c, d, s) in _symmetry_orbit(i, j, k, l):
                comp[a, b, c, d] = s * v
        return cls(n, mode, comp)


def _symmetry_orbit(i, j, k, l):
    seen = {}
    for (a, b, c, d), s in (((i, j, k, l), 1), ((j, i, k, l), -1),
                            ((i, j, l, k), -1), ((j, i, l, k), 1)):
        for idx, sg in (((a, b, c, d), s), ((c, d, a, b), s)):
            seen[idx] = sg
    return [(a, b, c, d, s) for (a, b, c, d), s in seen.items()]


# ---------------------------------------------------------------------------
# Contractions
# ---------------------------------------------------------------------------

def kulkarni_nomizu(h: SymTensor2, k: SymTensor2) -> AlgCurvTensor:
    """(h ^ k)_ijkl = h_ik k_jl + h_jl k_ik - h_il k_jk - h_jk k_il."""
    if h.n != k.n:
        raise ValueError("dimension mismatch in Kulkarni-Nomizu product")
    mode = join_modes(h.mode, k.mode)
    a, b = h.comp, k.comp
    comp = (np.einsum("ik,jl->ijkl", a, b) + np.einsum("jl,ik->ijkl", a, b)
            - np.einsum("il,jk->ijkl", a, b) - np.einsum("jk,il->ijkl", a, b))
    return AlgCurvTensor(h.n, mode, comp)


def constant_curvature(n, kappa, mode) -> AlgCurvTensor:
    """Space form of sectional curvature kappa: (kappa/2) g ^ g."""
    g = identity_metric(n, mode)
    gg = kulkarni_nomizu(g, g)
    half = Fraction(kappa, 2) if mode == RATIONAL else kappa / 2.0
    return AlgCurvTensor(n, mode, gg.comp * half)


def ricci(Rm: AlgCurvTensor) -> SymTensor2:
    """R_ik = sum_j R_ijkj (orthonormal frame)."""
    return SymTensor2(Rm.n, Rm.mode, np.einsum("ijkj->ik", Rm.comp))


def scalar(Rm: AlgCurvTensor):
    return ricci(Rm).trace()


def traceless_ricci(Rm: AlgCurvTensor) -> SymTensor2:
    ric = ricci(Rm)
    mean = exact_div(ric.trace(), Rm.n)
    comp = ric.comp.copy()
    for i in range(Rm.n):
        comp[i, i] = comp[i, i] - mean
    return SymTensor2(Rm.n, Rm.mode, comp)


@dataclass(frozen=True)
class CurvatureInvariants:
    """The four scalars the pinching estimates are built from."""

    R: object            # scalar curvature
    ricNormSq: object    # |traceless Ric|^2
    ricCubic: object     # tr(traceless Ric^3)
    lhs: object          # R_ijkl oR_ik oR_jl

    def as_dict(self):
        return {"R": self.R, "ricNormSq": self.ricNormSq,
                "ricCubic": self.ricCubic, "lhs": self.lhs}


def invariants(Rm: AlgCurvTensor) -> CurvatureInvariants:
    t = traceless_ricci(Rm).comp
    return CurvatureInvariants(
        R=scalar(Rm),
        ricNormSq=np.einsum("ij,ij", t, t),
        ricCubic=np.einsum("ij,ik,jk", t, t, t),
        lhs=np.einsum("ijkl,ik,jl", Rm.comp, t, t),
    )


# ---------------------------------------------------------------------------
# Planes and sectional curvature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Plane:
    """Oriented 2-plane spanned by an orthonormal pair (x, y)."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x, y = self.x, self.y
        if x.shape != y.shape or x.ndim != 1:
            raise PlaneError("plane vectors must be n-vectors of equal length")
        for label, val in (("|x|^2 - 1", np.dot(x, x) - 1),
                           ("|y|^2 - 1", np.dot(y, y) - 1),
                           ("<x, y>", np.dot(x, y))):
            if abs(val) > PLANE_TOL:
                raise PlaneError(f"plane not orthonormal: {label} = {val}")
        self.x.setflags(write=False)
        self.y.setflags(write=False)

    @property
    def n(self):
        return self.x.shape[0]


def coordinate_plane(n, i, j, mode=FLOAT) -> Plane:
    x, y = zeros(n, mode), zeros(n, mode)
    one = Fraction(1) if mode == RATIONAL else 1.0
    x[i] = one
    y[j] = one
    return Plane(x, y)


def sectional(Rm: AlgCurvTensor, p: Plane):
    """R(x, y, x, y); equals sigma_ij for the coordinate plane (e_i, e_j)."""
    if p.n != Rm.n:
        raise ValueError("plane dimension mismatch")
    return np.einsum("ijkl,i,j,k,l", Rm.comp, p.x, p.y, p.x, p.y)


# ---------------------------------------------------------------------------
# Modified curvature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModifiedCurvature:
    """Curvature shifted by the pinching parameter: Rm - (eps/2) R g^g.

    Its sectional curvatures are sigma(p) - eps*R, which the pinching
    hypothesis makes non-negative.
    """

    epsilon: object
    rmBar: AlgCurvTensor
    ricBar: SymTensor2
    rBar: object


def modified_curvature(Rm: AlgCurvTensor, eps) -> ModifiedCurvature:
    n, mode = Rm.n, Rm.mode
    R = scalar(Rm)
    g = identity_metric(n, mode)
    gg = kulkarni_nomizu(g, g)
    if mode == RATIONAL:
        eps = eps if isinstance(eps, Fraction) else Fraction(eps)
        shift = eps * R / 2
    else:
        shift = float(eps) * R / 2.0
    rm_bar = AlgCurvTensor(n, mode, Rm.comp - shift * gg.comp)
    ric_bar = SymTensor2(n, mode, ricci(Rm).comp - ((n - 1) * eps * R) * g.comp)
    r_bar = (1 - n * (n - 1) * eps) * R
    return ModifiedCurvature(eps, rm_bar, ric_bar, r_bar)


# ---------------------------------------------------------------------------
# Random curvature tensors
# ---------------------------------------------------------------------------

def pair_index(n):
    """Basis of the bivector space: ordered list of index pairs i < j."""
    return list(combinations(range(n), 2))


def tensor_from_pair_operator(M, n, mode) -> AlgCurvTensor:
    """Symmetric operator on bivectors -> curvature tensor (Bianchi-projected).

    The 4-index tensor induced by M has all curvature symmetries except the
    first Bianchi identity; subtracting its totally antisymmetric part (the
    cyclic average) restores Bianchi exactly while preserving the others.
    """
    pairs = pair_index(n)
    T = zeros((n,) * 4, mode)
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            v = M[a, b]
            if not isinstance(v, Fraction) and mode == RATIONAL:
                v = Fraction(v)
            T[i, j, k, l] = v
            T[j, i, k, l] = -v
            T[i, j, l, k] = -v
            T[j, i, l, k] = v
    cyc = T + T.transpose(0, 2, 3, 1) + T.transpose(0, 3, 1, 2)
    if mode == RATIONAL:
        comp = T - cyc * Fraction(1, 3)
    else:
        comp = T - cyc / 3.0
    return AlgCurvTensor(n, mode, comp)


def random_curvature(n, seed, mode=FLOAT, scale=10) -> AlgCurvTensor:
    """Seeded random curvature tensor with exact first Bianchi identity.

    Rational mode draws integer operator entries in [-scale, scale]; float
    mode draws standard normals.  Same seed, same tensor.
    """
    check_mode(mode)
    rng = np.random.default_rng(seed)
    m = n * (n - 1) // 2
    if mode == RATIONAL:
        raw = rng.integers(-scale, scale + 1, size=(m, m))
        M = np.empty((m, m), dtype=object)
        for a in range(m):
            for b in range(m):
                M[a, b] = Fraction(int(raw[a, b]) + int(raw[b, a]), 2)
    else:
        raw = rng.standard_normal((m, m))
        M = (raw + raw.T) / 2.0
    return tensor_from_pair_operator(M, n, mode)
