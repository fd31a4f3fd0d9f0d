"""Pinching estimates, the eigenbasis sigma-profile model, and campaigns.

A sigma-profile is the data the eigenbasis proof of the estimates actually
manipulates: traceless-Ricci eigenvalues lambda_i and sectional curvatures
sigma_ij of the coordinate 2-planes of that eigenbasis.  Both estimates, the
convex combination, the exact cross-term identity and the eigenvalue-gap
inequality live here, together with seeded Monte Carlo campaigns over
profiles and over full Bianchi-projected tensors.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .curvature import (
    AlgCurvTensor,
    FLOAT,
    RATIONAL,
    as_mode_array,
    check_mode,
    invariants,
    random_curvature,
    scalar,
    traceless_ricci,
    zeros,
)
from .minsec import DegenerateEpsError, SearchOptions, min_sectional, shift_to_pinching
from .scalars import exact_div, is_rational, scalar_to_json

GAP_RTOL = 1e-10   # float-mode inequality slack, relative to max(1,|lhs|,|rhs|)


class UncertifiedSourceError(ValueError):
    """Source does not (verifiably) satisfy Sec >= eps*R."""


def _require_subcritical(n, eps):
    if float(eps) * n * (n - 1) >= 1:
        raise DegenerateEpsError(
            f"eps = {eps} >= 1/(n(n-1)) = 1/{n * (n - 1)}: modified scalar "
            "curvature (1 - n(n-1)*eps)*R degenerates; sampler scale unsolvable")


@dataclass(frozen=True)
class PinchingParams:
    """Pinching constant eps (any real) and convex-combination weight s."""

    eps: object = 0
    s: object = 1

    def __post_init__(self):
        if not 0 <= self.s <= 1:
            raise ValueError(f"s = {self.s} outside [0, 1]")


@dataclass(frozen=True)
class SigmaProfile:
    """Eigenbasis model: lambda_i, sigma_ij, R, with the consistency relations
    sum lambda = 0,  lambda_k + R/n = sum_{i != k} sigma_ik,  R = sum sigma."""

    n: int
    mode: str
    sigma: np.ndarray    # symmetric, zero diagonal
    lam: np.ndarray
    R: object

    def __post_init__(self):
        check_mode(self.mode)
        tol = 0 if self.mode == RATIONAL else 1e-10 * max(1.0, abs(float(self.R)))
        if any(self.sigma[i, i] != 0 for i in range(self.n)):
            raise ValueError("sigma diagonal must vanish")
        if (abs(self.sigma - self.sigma.T) > tol).any():
            raise ValueError("sigma must be symmetric")
        if abs(sum(self.lam)) > tol:
            raise ValueError("eigenvalues must sum to zero")
        if abs(self.sigma.sum() - self.R) > tol:
            raise ValueError("R must equal the full sigma sum")
        for k in range(self.n):
            mu_k = self.sigma[:, k].sum()
            if abs(self.lam[k] + exact_div(self.R, self.n) - mu_k) > tol:
                raise ValueError(f"mu_{k} inconsistent with lambda_{k} + R/n")
        self.sigma.setflags(write=False)
        self.lam.setflags(write=False)

    def sigma_bar(self, eps):
        """sigma_ij - eps * R off the diagonal (the shifted plane curvatures)."""
        shift = eps * self.R
        out = self.sigma.copy()
        for i in range(self.n):
            for j in range(self.n):
                if i != j:
                    out[i, j] = out[i, j] - shift
        return out

    def min_sigma(self):
        return min(self.sigma[i, j] for i in range(self.n)
                   for j in range(self.n) if i != j)

    def as_dict(self):
        return {
            "n": self.n,
            "mode": self.mode,
            "sigma": [[scalar_to_json(v) for v in row] for row in self.sigma.tolist()],
            "lambda": [scalar_to_json(v) for v in self.lam.tolist()],
            "R": scalar_to_json(self.R),
        }


def profile_from_sigma_bar(n, sb_pairs, eps, mode):
    """Assemble a SigmaProfile from non-negative shifted curvatures sb >= 0.

    Solves the scale equation R = 2 * sum(sb) / (1 - n(n-1) eps), then
    sigma = sb + eps R on each pair and lambda_k = sum_{i != k} sigma_ik - R/n.
    The pinching condition sigma >= eps R holds by construction.
    """
    _require_subcritical(n, eps)
    pairs = list(combinations(range(n), 2))
    total = sum(sb_pairs)
    R = exact_div(2 * total, 1) / (1 - n * (n - 1) * eps) if is_rational(total) \
        else 2.0 * total / (1 - n * (n - 1) * float(eps))
    sigma = zeros((n, n), mode)
    for (i, j), sb in zip(pairs, sb_pairs):
        v = sb + eps * R
        sigma[i, j] = v
        sigma[j, i] = v
    lam = zeros(n, mode)
    for k in range(n):
        lam[k] = sigma[:, k].sum() - exact_div(R, n)
    return SigmaProfile(n, mode, sigma, lam, R)


def sample_sigma_profile(n, eps, seed, mode=FLOAT, distribution="half-normal"):
    """Seeded random profile satisfying Sec >= eps*R by construction.

    Float mode draws half-normal shifted curvatures; rational mode draws
    small non-negative integers.  "sparse" zeroes entries with probability
    1/2 to reach the equality cases of the cross-term identity; "uniform"
    draws from [0, 1) (floats) as an alternative shape.
    """
    _require_subcritical(n, eps)
    rng = np.random.default_rng(seed)
    m = n * (n - 1) // 2
    if mode == RATIONAL:
        sb = [Fraction(int(v)) for v in rng.integers(0, 10, size=m)]
        if distribution == "sparse":
            mask = rng.integers(0, 2, size=m)
            sb = [v if keep else Fraction(0) for v, keep in zip(sb, mask)]
        eps = eps if isinstance(eps, Fraction) else Fraction(eps)
    else:
        if distribution == "uniform":
            sb = rng.uniform(0.0, 1.0, size=m)
        else:
            sb = np.abs(rng.standard_normal(m))
            if distribution == "sparse":
                sb = sb * rng.integers(0, 2, size=m)
        sb = list(sb)
        eps = float(eps)
    return profile_from_sigma_bar(n, sb, eps, mode)


def profile_to_tensor(p: SigmaProfile) -> AlgCurvTensor:
    """Diagonal curvature tensor realizing the profile: R_ijij = sigma_ij."""
    comp = zeros((p.n,) * 4, p.mode)
    for i in range(p.n):
        for j in range(p.n):
            if i != j:
                comp[i, j, i, j] = p.sigma[i, j]
                comp[i, j, j, i] = -p.sigma[i, j]
    return AlgCurvTensor(p.n, p.mode, comp)


# ---------------------------------------------------------------------------
# The two estimates and their convex combination
# ---------------------------------------------------------------------------

def lhs_contraction(source):
    """R_ijkl oR_ik oR_jl; for a profile this is sum_{i != j} l_i l_j sigma_ij."""
    if isinstance(source, AlgCurvTensor):
        t = traceless_ricci(source).comp
        return np.einsum("ijkl,ik,jl", source.comp, t, t)
    p = source
    return sum(p.lam[i] * p.lam[j] * p.sigma[i, j]
               for i in range(p.n) for j in range(p.n) if i != j)


def rhs_estimate1(n, params: PinchingParams, inv):
    """((1 - n^2 eps)/n) R |oRic|^2 + tr(oRic^3)."""
    return exact_div(1 - n * n * params.eps, n) * inv.R * inv.ricNormSq + inv.ricCubic


def rhs_estimate2(n, params: PinchingParams, inv):
    """((n^2-4n+2 - n^2(n-2)(n-3) eps)/(2n)) R |oRic|^2 - (n-1) tr(oRic^3)."""
    coef = exact_div(n * n - 4 * n + 2 - n * n * (n - 2) * (n - 3) * params.eps,
                     2 * n)
    return coef * inv.R * inv.ricNormSq - (n - 1) * inv.ricCubic


def rhs_convex(n, params: PinchingParams, inv):
    """Convex combination: s=1 gives estimate 1, s=0 gives estimate 2.

    Quadratic coefficient
        (n^2-4n+2 - n^2(n-2)(n-3) eps)/(2n) - ((n-4)/2)(1 - n(n-1) eps) s,
    cubic coefficient -(n-1-ns).
    """
    eps, s = params.eps, params.s
    coef = (exact_div(n * n - 4 * n + 2 - n * n * (n - 2) * (n - 3) * eps, 2 * n)
            - exact_div((n - 4) * (1 - n * (n - 1) * eps), 2) * s)
    return coef * inv.R * inv.ricNormSq - (n - 1 - n * s) * inv.ricCubic


def equno_identity(p: SigmaProfile, eps):
    """Both sides of the shifted cross-term identity; they agree exactly:

        sum_{ij} l_i l_j sb_ij - sum_k mub_k l_k^2
            = - sum_{i<j} (l_i - l_j)^2 sb_ij   (<= 0 when all sb >= 0)

    with sb = sigma - eps R and mub_k = sum_{i != k} sb_ik.
    """
    sb = p.sigma_bar(eps)
    lhs_side = sum(p.lam[i] * p.lam[j] * sb[i, j]
                   for i in range(p.n) for j in range(p.n))
    lhs_side -= sum(sb[:, k].sum() * p.lam[k] ** 2 for k in range(p.n))
    rhs_side = -sum((p.lam[i] - p.lam[j]) ** 2 * sb[i, j]
                    for i, j in combinations(range(p.n), 2))
    return lhs_side, rhs_side


def slack_term(p: SigmaProfile, eps):
    """sum_{i<j} (l_i - l_j)^2 (sigma_ij - eps R): the exact estimate-1 slack."""
    sb = p.sigma_bar(eps)
    return sum((p.lam[i] - p.lam[j]) ** 2 * sb[i, j]
               for i, j in combinations(range(p.n), 2))


def eigen_gap_lemma(lam, i, j):
    """Cauchy-Schwarz gap for traceless eigenvalues:

        sum_{k != i,j} l_k^2  >=  (l_i + l_j)^2 / (n - 2),

    with equality iff l_k is constant over k not in {i, j}.
    Returns (lhs, rhs, equality_flag).
    """
    lam = list(lam)
    n = len(lam)
    total = sum(lam)
    exact = all(is_rational(v) for v in lam)
    scale = max([1] + [abs(v) for v in lam])
    tol = 0 if exact else 1e-10 * float(scale)
    if abs(total) > tol:
        raise ValueError(f"eigenvalues must be traceless, got sum {total}")
    rest = [lam[k] for k in range(n) if k not in (i, j)]
    lhs = sum(v * v for v in rest)
    rhs = exact_div((lam[i] + lam[j]) ** 2, n - 2)
    eq_tol = 0 if exact else 1e-9 * float(scale)
    flag = max(rest) - min(rest) <= eq_tol
    return lhs, rhs, flag


# ---------------------------------------------------------------------------
# Checking a single source
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EstimateReport:
    lhs: object
    rhs1: object
    rhs2: object
    rhsConvex: object
    gap1: object
    gap2: object
    gapConvex: object
    equnoResidual: object
    slackResidual: object   # gap1 - slack_term (profiles; exact zero in rational mode)
    passed: bool

    def as_dict(self):
        return {k: scalar_to_json(getattr(self, k)) for k in
                ("lhs", "rhs1", "rhs2", "rhsConvex", "gap1", "gap2",
                 "gapConvex", "equnoResidual", "slackResidual", "passed")}


def _profile_invariants(p: SigmaProfile):
    from .curvature import CurvatureInvariants
    return CurvatureInvariants(
        R=p.R,
        ricNormSq=sum(v * v for v in p.lam),
        ricCubic=sum(v ** 3 for v in p.lam),
        lhs=lhs_contraction(p),
    )


def check_estimates(source, params: PinchingParams,
                    opts: SearchOptions = SearchOptions(),
                    certified=False) -> EstimateReport:
    """Evaluate both estimates and the convex combination on one source.

    The hypothesis Sec >= eps*R is a precondition: profiles are checked
    directly on their sigma entries, tensors through min_sectional unless
    the caller certifies construction (e.g. shift_to_pinching output).
    """
    eps = params.eps
    if isinstance(source, SigmaProfile):
        inv = _profile_invariants(source)
        exact = source.mode == RATIONAL
        tol = 0 if exact else GAP_RTOL * max(1.0, abs(float(inv.R)))
        if not certified and source.min_sigma() - eps * source.R < -tol:
            raise UncertifiedSourceError(
                f"profile violates Sec >= eps*R: min sigma {source.min_sigma()}, "
                f"eps*R = {eps * source.R}")
        l, r = equno_identity(source, eps)
        equno_res = l - r
        slack_res = None  # filled below from gap1
    elif isinstance(source, AlgCurvTensor):
        inv = invariants(source)
        exact = False
        if not certified:
            min_sec, _ = min_sectional(source, opts)
            bound = float(eps) * float(inv.R)
            if min_sec < bound - GAP_RTOL * max(1.0, abs(bound)):
                raise UncertifiedSourceError(
                    f"tensor violates Sec >= eps*R: min Sec {min_sec} < {bound}")
        equno_res = _tensor_equno_residual(source, eps)
        slack_res = None
    else:
        raise TypeError(f"unsupported source {type(source)!r}")

    rhs1 = rhs_estimate1(source.n, params, inv)
    rhs2 = rhs_estimate2(source.n, params, inv)
    rhsc = rhs_convex(source.n, params, inv)
    gap1, gap2, gapc = rhs1 - inv.lhs, rhs2 - inv.lhs, rhsc - inv.lhs
    if isinstance(source, SigmaProfile):
        slack_res = gap1 - slack_term(source, eps)
    scale = max(1.0, abs(float(inv.lhs)), abs(float(rhs1)), abs(float(rhs2)))
    tol = 0 if exact else GAP_RTOL * scale
    passed = all(float(g) >= -tol for g in (gap1, gap2, gapc))
    if isinstance(source, SigmaProfile) and exact and slack_res != 0:
        passed = False
    return EstimateReport(inv.lhs, rhs1, rhs2, rhsc, gap1, gap2, gapc,
                          equno_res, slack_res, passed)


def _tensor_equno_residual(Rm: AlgCurvTensor, eps):
    """Cross-term identity residual via the eigenbasis of oRic (float)."""
    t = np.asarray(traceless_ricci(Rm).comp, dtype=float)
    comp = np.asarray(Rm.comp, dtype=float)
    lam, vecs = np.linalg.eigh(t)
    R = float(scalar(Rm))
    n = Rm.n
    rot = np.einsum("ia,jb,kc,ld,ijkl->abcd", vecs, vecs, vecs, vecs, comp)
    sb = np.array([[rot[i, j, i, j] - float(eps) * R if i != j else 0.0
                    for j in range(n)] for i in range(n)])
    lhs_side = (np.outer(lam, lam) * sb).sum() - (sb.sum(axis=0) * lam ** 2).sum()
    rhs_side = -sum((lam[i] - lam[j]) ** 2 * sb[i, j]
                    for i, j in combinations(range(n), 2))
    return lhs_side - rhs_side


# ---------------------------------------------------------------------------
# Vectorized campaign kernels
# ---------------------------------------------------------------------------

def _incidence(n):
    pairs = list(combinations(range(n), 2))
    inc = np.zeros((len(pairs), n))
    for a, (i, j) in enumerate(pairs):
        inc[a, i] = inc[a, j] = 1.0
    return pairs, inc


def _combo_rng(seed, n, eps):
    f = Fraction(eps) if not isinstance(eps, Fraction) else eps
    return np.random.default_rng(
        [int(seed), n, f.numerator % (2 ** 32), f.denominator])


def profile_batch_float(n, eps, s_list, count, seed, distribution="half-normal",
                        coeff_delta=0.0):
    """Float-mode batch: min gaps and violation indices over `count` profiles.

    coeff_delta perturbs the estimate-1 quadratic coefficient; nonzero values
    exist only as a corrupted fixture for the exit-code contract tests.
    """
    _require_subcritical(n, eps)
    eps = float(eps)
    rng = _combo_rng(seed, n, eps)
    pairs, inc = _incidence(n)
    m = len(pairs)
    if distribution == "uniform":
        sb = rng.uniform(0.0, 1.0, size=(count, m))
    else:
        sb = np.abs(rng.standard_normal((count, m)))
        if distribution == "sparse":
            sb *= rng.integers(0, 2, size=(count, m))
    R = 2.0 * sb.sum(axis=1) / (1 - n * (n - 1) * eps)
    sig = sb + eps * R[:, None]
    lam = sig @ inc - R[:, None] / n
    i_idx = np.array([i for i, _ in pairs])
    j_idx = np.array([j for _, j in pairs])
    lprod = lam[:, i_idx] * lam[:, j_idx]
    lhs = 2.0 * (lprod * sig).sum(axis=1)
    P2 = (lam ** 2).sum(axis=1)
    P3 = (lam ** 3).sum(axis=1)
    rhs1 = ((1 - n * n * eps) / n + coeff_delta) * R * P2 + P3
    rhs2 = (n * n - 4 * n + 2 - n * n * (n - 2) * (n - 3) * eps) / (2 * n) * R * P2 \
        - (n - 1) * P3
    slack = ((lam[:, i_idx] - lam[:, j_idx]) ** 2 * sb).sum(axis=1)
    gap1, gap2 = rhs1 - lhs, rhs2 - lhs
    scale = np.maximum(1.0, np.maximum(np.abs(lhs), np.maximum(np.abs(rhs1), np.abs(rhs2))))
    tol = GAP_RTOL * scale
    bad = (gap1 < -tol) | (gap2 < -tol)
    result = {
        "count": count,
        "minGap1": float(gap1.min()) if count else None,
        "minGap2": float(gap2.min()) if count else None,
        "maxSlackResidual": float(np.abs(gap1 - slack).max()) if count else None,
        "violations": [],
        "minGapConvex": {},
    }
    for s in s_list:
        s = float(s)
        coef = ((n * n - 4 * n + 2 - n * n * (n - 2) * (n - 3) * eps) / (2 * n)
                - (n - 4) / 2 * (1 - n * (n - 1) * eps) * s)
        gapc = coef * R * P2 - (n - 1 - n * s) * P3 - lhs
        bad |= gapc < -tol
        result["minGapConvex"][repr(s)] = float(gapc.min()) if count else None
    for idx in np.nonzero(bad)[0][:10]:
        result["violations"].append({
            "index": int(idx),
            "sigmaBar": sb[idx].tolist(),
            "gap1": float(gap1[idx]),
            "gap2": float(gap2[idx]),
        })
    return result


# bound constants for the exact integer kernel (see profile_batch_exact)
_EXACT_SB_MAX = 9
_INT64_GUARD = 2 ** 61


def profile_batch_exact(n, eps, count, seed):
    """Rational-mode batch over integer common denominators: exact gap signs
    and the exact estimate-1 slack identity, vectorized in int64.

    With eps = p/q and integer shifted curvatures sb, every profile quantity
    is an integer over a fixed positive denominator, so inequality signs and
    the identity residual are exact.  Overflow is excluded by the small draw
    range and a float-shadowed magnitude guard.
    """
    _require_subcritical(n, eps)
    f = Fraction(eps) if not isinstance(eps, Fraction) else eps
    p, q = f.numerator, f.denominator
    d = q - n * (n - 1) * p            # positive by the subcritical check
    rng = _combo_rng(seed, n, f)
    pairs, inc = _incidence(n)
    m = len(pairs)
    sb = rng.integers(0, _EXACT_SB_MAX + 1, size=(count, m)).astype(np.int64)
    S = sb.sum(axis=1)
    R_num = 2 * S * q                  # R = R_num / d
    sig = sb * d + 2 * S[:, None] * p  # sigma = sig / d
    lam = n * (sig @ inc.astype(np.int64)) - R_num[:, None]   # lambda = lam/(n d)
    i_idx = np.array([i for i, _ in pairs])
    j_idx = np.array([j for _, j in pairs])
    L3 = 2 * (lam[:, i_idx] * lam[:, j_idx] * sig).sum(axis=1)
    P2 = (lam ** 2).sum(axis=1)
    P3 = (lam ** 3).sum(axis=1)
    # common denominator n^3 q d^3 > 0 for gap1; 2 n^3 q d^3 for gap2
    gap1 = (q - n * n * p) * R_num * P2 + q * P3 - n * q * L3
    slack = n * q * d * ((lam[:, i_idx] - lam[:, j_idx]) ** 2 * sb).sum(axis=1)
    c2 = q * (n * n - 4 * n + 2) - n * n * (n - 2) * (n - 3) * p
    gap2 = c2 * R_num * P2 - 2 * q * (n - 1) * P3 - 2 * n * q * L3
    worst = max((np.abs(a).max(initial=0) for a in (gap1, slack, gap2)), default=0)
    if worst >= _INT64_GUARD:
        raise OverflowError("exact kernel magnitude guard tripped")
    bad = (gap1 < 0) | (gap2 < 0) | (gap1 != slack)
    result = {
        "count": count,
        "slackIdentityExact": bool((gap1 == slack).all()) if count else True,
        "violations": [],
        "minGap1Num": int(gap1.min()) if count else None,
        "minGap2Num": int(gap2.min()) if count else None,
    }
    for idx in np.nonzero(bad)[0][:10]:
        result["violations"].append({
            "index": int(idx),
            "sigmaBar": sb[idx].tolist(),
            "gap1Num": int(gap1[idx]),
            "gap2Num": int(gap2[idx]),
            "slackNum": int(slack[idx]),
        })
    return result


# ---------------------------------------------------------------------------
# Campaigns
# ---------------------------------------------------------------------------

@dataclass
class CampaignConfig:
    kind: str = "profile"            # "profile" | "tensor"
    dims: tuple = (4,)
    eps_list: tuple = (Fraction(1, 24),)
    s_list: tuple = (0, Fraction(1, 2), 1)
    count: int = 1000
    seed: int = 0
    mode: str = FLOAT
    distribution: str = "half-normal"
    margin: float = 0.1              # tensor kind: pinching slack after shift
    coeff_delta: float = 0.0         # corrupted-coefficient test fixture
    search: SearchOptions = field(default_factory=lambda: SearchOptions(
        grid_points=20_000, refine_starts=8))

    def as_dict(self):
        return {
            "kind": self.kind,
            "dims": list(self.dims),
            "epsList": [scalar_to_json(Fraction(e) if not isinstance(e, float) else e)
                        for e in self.eps_list],
            "sList": [scalar_to_json(Fraction(s) if not isinstance(s, float) else s)
                      for s in self.s_list],
            "count": self.count,
            "seed": self.seed,
            "mode": self.mode,
            "distribution": self.distribution,
            "margin": self.margin,
            "coeffDelta": self.coeff_delta,
        }


def mc_campaign(config: CampaignConfig):
    """Run the configured campaign; deterministic given config.seed."""
    started = time.monotonic()
    checks = []
    violations = []
    for n in config.dims:
        for eps in config.eps_list:
            if float(eps) * n * (n - 1) >= 1:
                continue    # combo outside the sampler domain, skipped by contract
            if config.kind == "profile":
                entry = {"n": n, "eps": scalar_to_json(Fraction(eps)), "kind": "profile"}
                entry["float"] = profile_batch_float(
                    n, eps, config.s_list, config.count, config.seed,
                    config.distribution, coeff_delta=config.coeff_delta)
                violations.extend(
                    dict(v, n=n, eps=scalar_to_json(Fraction(eps)), lane="float")
                    for v in entry["float"]["violations"])
                if config.mode == RATIONAL:
                    entry["exact"] = profile_batch_exact(
                        n, eps, config.count, config.seed)
                    violations.extend(
                        dict(v, n=n, eps=scalar_to_json(Fraction(eps)), lane="exact")
                        for v in entry["exact"]["violations"])
            elif config.kind == "tensor":
                entry = _tensor_combo(n, eps, config)
                violations.extend(entry.pop("violationDumps"))
            else:
                raise ValueError(f"unknown campaign kind {config.kind!r}")
            checks.append(entry)
    return {
        "config": config.as_dict(),
        "checks": checks,
        "violations": violations,
        "wallTime": time.monotonic() - started,
    }


def _tensor_combo(n, eps, config: CampaignConfig):
    params_by_s = [PinchingParams(float(eps), float(s)) for s in config.s_list]
    min_gaps = {"gap1": np.inf, "gap2": np.inf, "gapConvex": np.inf}
    dumps = []
    recheck_ok = 0
    for idx in range(config.count):
        rng_seed = [int(config.seed), n, idx]
        Rm = random_curvature(n, rng_seed, FLOAT)
        shifted = shift_to_pinching(Rm, float(eps), config.margin, config.search)
        min_sec, _ = min_sectional(shifted, config.search)
        R = float(scalar(shifted))
        if min_sec >= float(eps) * R - GAP_RTOL * max(1.0, abs(R)):
            recheck_ok += 1
        rep = None
        for params in params_by_s:
            rep = check_estimates(shifted, params, config.search, certified=True)
            min_gaps["gap1"] = min(min_gaps["gap1"], float(rep.gap1))
            min_gaps["gap2"] = min(min_gaps["gap2"], float(rep.gap2))
            min_gaps["gapConvex"] = min(min_gaps["gapConvex"], float(rep.gapConvex))
            if not rep.passed:
                dumps.append({"index": idx, "n": n, "eps": scalar_to_json(Fraction(eps)),
                              "s": scalar_to_json(params.s), "tensor": shifted.to_json(),
                              "report": rep.as_dict(), "lane": "tensor"})
    return {
        "n": n, "eps": scalar_to_json(Fraction(eps)), "kind": "tensor",
        "count": config.count,
        "minGap1": None if config.count == 0 else min_gaps["gap1"],
        "minGap2": None if config.count == 0 else min_gaps["gap2"],
        "minGapConvex": None if config.count == 0 else min_gaps["gapConvex"],
        "minSecRecheckPassed": recheck_ok,
        "violations": [d["index"] for d in dumps],
        "violationDumps": dumps,
    }
