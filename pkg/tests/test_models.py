from fractions import Fraction

import pytest

from pinchlab.curvature import invariants, ricci, scalar, traceless_ricci
from pinchlab.models import (
    default_models,
    flat,
    fubini_study_cp2,
    literature_constants,
    literature_table,
    model,
    model_names,
    oracle_min_sectional,
    pinching_threshold,
    product_spheres,
    round_cylinder_s3xr,
    soliton_identity_check,
    sphere,
)


def test_registry():
    assert model_names() == sorted(["sphere", "flat", "product_spheres",
                                    "fubini_study_cp2", "round_cylinder_s3xr"])
    assert model("sphere", n=4, kappa=Fraction(2)).minSecClosedForm == 2
    with pytest.raises(KeyError):
        model("nope")


def test_sphere_invariants():
    m = sphere(4, 1)
    assert scalar(m.Rm) == 12
    assert traceless_ricci(m.Rm).norm_sq() == 0
    assert m.solitonConstant == 3


def test_cp2_invariants():
    m = fubini_study_cp2()
    assert scalar(m.Rm) == 24
    ric = ricci(m.Rm)
    assert all(ric.comp[i, i] == 6 for i in range(4))
    assert traceless_ricci(m.Rm).norm_sq() == 0
    # holomorphic plane has curvature 4, the totally real one curvature 1
    assert m.Rm.comp[0, 1, 0, 1] == 4
    assert m.Rm.comp[0, 2, 0, 2] == 1


def test_product_spheres_invariants():
    m = product_spheres(1, 1)
    assert scalar(m.Rm) == 4
    assert m.einstein
    uneven = product_spheres(1, 2)
    assert not uneven.einstein
    assert uneven.solitonConstant is None


def test_cylinder_invariants():
    m = round_cylinder_s3xr()
    assert scalar(m.Rm) == 6
    ric = ricci(m.Rm)
    assert [ric.comp[i, i] for i in range(4)] == [2, 2, 2, 0]
    assert not m.einstein


def test_threshold_ratios_closed_form():
    assert pinching_threshold(sphere(4, 1)).ratio == Fraction(1, 12)
    assert pinching_threshold(fubini_study_cp2()).ratio == Fraction(1, 24)
    assert pinching_threshold(product_spheres(1, 1)).ratio == 0
    assert pinching_threshold(round_cylinder_s3xr()).ratio == 0
    rep = pinching_threshold(flat(4))
    assert rep.ratio is None and rep.passes124


def test_threshold_search_agrees_with_closed_form():
    rep = pinching_threshold(fubini_study_cp2(), use_search=True)
    assert float(rep.ratio) == pytest.approx(1.0 / 24.0, abs=1e-7)


def test_oracle_upper_bounds_closed_form():
    m = fubini_study_cp2()
    est = oracle_min_sectional(m, count=200_000, seed=1)
    assert est >= 1.0 - 1e-12
    assert est == pytest.approx(1.0, abs=5e-3)


def test_soliton_identities_all_models():
    for m in default_models():
        rep = soliton_identity_check(m)
        assert rep["allZero"], rep
        assert all(v in ("0", 0) for v in rep["residuals"].values())


def test_cylinder_identity_is_nontrivial():
    assert not soliton_identity_check(round_cylinder_s3xr())["integralIdentityTrivial"]
    assert soliton_identity_check(sphere(4, 1))["integralIdentityTrivial"]
    assert soliton_identity_check(flat(4))["integralIdentityTrivial"]


def test_identity_check_requires_potential():
    with pytest.raises(ValueError):
        soliton_identity_check(product_spheres(1, 2))


def test_pinched_models_are_einstein():
    for m in default_models():
        rep = pinching_threshold(m)
        if scalar(m.Rm) != 0 and rep.ratio is not None and rep.ratio >= Fraction(1, 24):
            assert m.einstein


def test_literature_table():
    consts = literature_constants()
    assert consts["Ribeiro"]["value"] == pytest.approx(1 / 48)
    assert consts["Costa"]["value"] < consts["Yang"]["value"] < \
        consts["soliton(1/24)"]["value"]
    table = literature_table()
    rows = {r["model"]: r for r in table["models"]}
    assert rows["fubini_study_cp2"]["meets[soliton(1/24)]"]
    assert rows["sphere(4,1)"]["meets[Yang]"]
    assert not rows["product_spheres(1,1)"]["meets[Ribeiro]"]
    assert rows["flat(4)"]["meets[soliton(1/24)]"]   # vacuous: R = 0


def test_einstein_flag_contradiction_rejected():
    import dataclasses
    m = round_cylinder_s3xr()
    with pytest.raises(ValueError):
        dataclasses.replace(m, einstein=True)
