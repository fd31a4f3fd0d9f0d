from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pinchlab.curvature import FLOAT, RATIONAL, invariants
from pinchlab.minsec import DegenerateEpsError, SearchOptions
from pinchlab.profiles import (
    CampaignConfig,
    PinchingParams,
    SigmaProfile,
    UncertifiedSourceError,
    check_estimates,
    eigen_gap_lemma,
    equno_identity,
    lhs_contraction,
    mc_campaign,
    profile_batch_exact,
    profile_batch_float,
    profile_from_sigma_bar,
    profile_to_tensor,
    rhs_convex,
    rhs_estimate1,
    rhs_estimate2,
    sample_sigma_profile,
    slack_term,
)
from pinchlab.curvature import CurvatureInvariants

FAST = SearchOptions(grid_points=20_000, refine_starts=8)


def test_params_reject_bad_s():
    with pytest.raises(ValueError):
        PinchingParams(Fraction(1, 24), Fraction(3, 2))


def test_sampler_satisfies_pinching_by_construction():
    for mode in (RATIONAL, FLOAT):
        p = sample_sigma_profile(4, Fraction(1, 24), 3, mode)
        assert p.min_sigma() - Fraction(1, 24) * p.R >= 0 if mode == RATIONAL \
            else p.min_sigma() - p.R / 24.0 >= -1e-12
        assert abs(sum(p.lam)) <= (0 if mode == RATIONAL else 1e-10)


def test_sampler_rejects_degenerate_eps():
    with pytest.raises(DegenerateEpsError):
        sample_sigma_profile(4, Fraction(1, 12), 0, RATIONAL)


def test_profile_consistency_enforced():
    p = sample_sigma_profile(4, 0, 5, RATIONAL)
    sigma = np.array(p.sigma, dtype=object).copy()
    sigma[0, 1] = sigma[0, 1] + 1   # breaks mu_k and the R sum
    with pytest.raises(ValueError):
        SigmaProfile(4, RATIONAL, sigma, p.lam.copy(), p.R)


def test_equno_identity_exact_rational():
    for seed in range(10):
        p = sample_sigma_profile(5, Fraction(1, 48), seed, RATIONAL)
        l, r = equno_identity(p, Fraction(1, 48))
        assert l == r


def test_slack_is_exact_gap1_rational():
    eps = Fraction(1, 48)
    for seed in range(10):
        p = sample_sigma_profile(4, eps, seed, RATIONAL)
        rep = check_estimates(p, PinchingParams(eps, Fraction(1)))
        assert rep.slackResidual == 0
        assert rep.gap1 == slack_term(p, eps)
        assert rep.gap1 >= 0 and rep.gap2 >= 0
        assert rep.passed


def test_convex_combination_endpoints_exact():
    inv = CurvatureInvariants(R=Fraction(10), ricNormSq=Fraction(7, 3),
                              ricCubic=Fraction(-2, 5), lhs=Fraction(0))
    for n in (3, 4, 5, 6):
        for eps in (Fraction(0), Fraction(1, 48), Fraction(-1, 10)):
            e1 = rhs_estimate1(n, PinchingParams(eps, 1), inv)
            e2 = rhs_estimate2(n, PinchingParams(eps, 0), inv)
            assert rhs_convex(n, PinchingParams(eps, Fraction(1)), inv) == e1
            assert rhs_convex(n, PinchingParams(eps, Fraction(0)), inv) == e2
            # interior s is the straight-line interpolation
            s = Fraction(2, 7)
            mid = rhs_convex(n, PinchingParams(eps, s), inv)
            assert mid == (1 - s) * e2 + s * e1


def test_cubic_term_drops_at_n4_s34():
    # at n = 4, s = 3/4 the tr(oRic^3) coefficient -(n-1-ns) vanishes
    a = CurvatureInvariants(R=Fraction(6), ricNormSq=Fraction(2),
                            ricCubic=Fraction(5), lhs=Fraction(0))
    b = CurvatureInvariants(R=Fraction(6), ricNormSq=Fraction(2),
                            ricCubic=Fraction(-11), lhs=Fraction(0))
    params = PinchingParams(Fraction(0), Fraction(3, 4))
    assert rhs_convex(4, params, a) == rhs_convex(4, params, b)


def test_eigen_gap_lemma_equality_case():
    lam = [Fraction(3), Fraction(1), Fraction(-2), Fraction(-2)]
    lhs, rhs, flag = eigen_gap_lemma(lam, 0, 1)
    assert lhs == rhs == Fraction(8)
    assert flag
    lhs2, rhs2, flag2 = eigen_gap_lemma(lam, 2, 3)
    assert lhs2 >= rhs2 and not flag2


def test_eigen_gap_lemma_rejects_nontraceless():
    with pytest.raises(ValueError):
        eigen_gap_lemma([1, 1, 1], 0, 1)


def test_profile_to_tensor_matches_invariants():
    p = sample_sigma_profile(4, Fraction(0), 7, RATIONAL)
    Rm = profile_to_tensor(p)
    inv = invariants(Rm)
    assert inv.R == p.R
    assert inv.ricNormSq == sum(v * v for v in p.lam)
    assert inv.lhs == lhs_contraction(p)


def test_uncertified_profile_raises():
    p = sample_sigma_profile(4, Fraction(0), 1, RATIONAL)  # only Sec >= 0
    big_eps = Fraction(1, 13)
    assert p.min_sigma() < big_eps * p.R
    with pytest.raises(UncertifiedSourceError):
        check_estimates(p, PinchingParams(big_eps, 1))


def test_tensor_source_certification_path():
    from pinchlab.curvature import random_curvature
    from pinchlab.minsec import shift_to_pinching
    Rm = shift_to_pinching(random_curvature(4, 0, FLOAT), 0.0, margin=0.1, opts=FAST)
    rep = check_estimates(Rm, PinchingParams(0.0, 1.0), FAST)
    assert rep.passed
    assert abs(rep.equnoResidual) < 1e-8 * max(1.0, abs(float(rep.lhs)))


@given(seed=st.integers(0, 5000),
       dist=st.sampled_from(["half-normal", "uniform", "sparse"]))
@settings(max_examples=30, deadline=None)
def test_float_profile_gaps_nonnegative(seed, dist):
    eps = 1.0 / 48.0
    p = sample_sigma_profile(4, eps, seed, FLOAT, dist)
    rep = check_estimates(p, PinchingParams(eps, 0.5))
    assert rep.passed


def test_batch_float_clean_and_corrupted():
    clean = profile_batch_float(4, Fraction(1, 24), [0.0, 1.0], 2000, 42)
    assert not clean["violations"]
    assert clean["minGap1"] >= -1e-10
    assert clean["maxSlackResidual"] < 1e-9
    corrupt = profile_batch_float(4, Fraction(1, 24), [1.0], 2000, 42,
                                  coeff_delta=-1.0)
    assert corrupt["violations"]


def test_batch_exact_identity_and_signs():
    out = profile_batch_exact(5, Fraction(1, 48), 2000, 7)
    assert out["slackIdentityExact"]
    assert not out["violations"]
    assert out["minGap1Num"] >= 0 and out["minGap2Num"] >= 0


def test_batch_exact_negative_eps():
    out = profile_batch_exact(4, Fraction(-1, 10), 500, 3)
    assert out["slackIdentityExact"] and not out["violations"]


def test_mc_campaign_profile_skips_supercritical():
    config = CampaignConfig(kind="profile", dims=(4, 6),
                            eps_list=(Fraction(1, 24),), s_list=(0, 1),
                            count=500, seed=1, mode=RATIONAL)
    report = mc_campaign(config)
    # 1/24 >= 1/30 so the n = 6 combo is outside the sampler domain
    assert [c["n"] for c in report["checks"]] == [4]
    assert not report["violations"]
    assert "exact" in report["checks"][0]


def test_mc_campaign_tensor_kind():
    config = CampaignConfig(kind="tensor", dims=(4,), eps_list=(Fraction(0),),
                            s_list=(0, 1), count=3, seed=5, mode=FLOAT,
                            search=FAST)
    report = mc_campaign(config)
    entry = report["checks"][0]
    assert entry["minSecRecheckPassed"] == 3
    assert not report["violations"]
    assert entry["minGap1"] >= -1e-9
