from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pinchlab.curvature import (
    AlgCurvTensor,
    FLOAT,
    RATIONAL,
    PlaneError,
    Plane,
    SymmetryError,
    SymTensor2,
    constant_curvature,
    coordinate_plane,
    identity_metric,
    invariants,
    kulkarni_nomizu,
    modified_curvature,
    random_curvature,
    ricci,
    scalar,
    sectional,
    traceless_ricci,
)
from pinchlab.scalars import ArithmeticModeError


def random_plane(n, rng):
    x = rng.standard_normal(n)
    x /= np.linalg.norm(x)
    y = rng.standard_normal(n)
    y -= (y @ x) * x
    y /= np.linalg.norm(y)
    return Plane(x, y)


def test_constant_curvature_sectional_is_kappa_everywhere():
    rng = np.random.default_rng(7)
    Rm = constant_curvature(4, 2.5, FLOAT)
    for _ in range(20):
        assert sectional(Rm, random_plane(4, rng)) == pytest.approx(2.5, abs=1e-12)


def test_constant_curvature_rational_exact():
    Rm = constant_curvature(5, Fraction(3), RATIONAL)
    for i in range(5):
        for j in range(i + 1, 5):
            assert Rm.comp[i, j, i, j] == Fraction(3)
    assert ricci(Rm).comp[0, 0] == 4 * Fraction(3)
    assert scalar(Rm) == 5 * 4 * Fraction(3)
    assert traceless_ricci(Rm).norm_sq() == 0


def test_kulkarni_nomizu_has_all_symmetries():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((4, 4))
    h = SymTensor2.from_components((a + a.T) / 2, FLOAT)
    b = rng.standard_normal((4, 4))
    k = SymTensor2.from_components((b + b.T) / 2, FLOAT)
    Rm = kulkarni_nomizu(h, k)   # constructor enforces the symmetries
    assert Rm.bianchi_residual() < 1e-13


def test_mixed_mode_rejected():
    h = identity_metric(4, RATIONAL)
    k = identity_metric(4, FLOAT)
    with pytest.raises(ArithmeticModeError):
        kulkarni_nomizu(h, k)


def test_symmetry_violation_detected():
    comp = np.zeros((4, 4, 4, 4))
    comp[0, 1, 0, 1] = 1.0   # missing the antisymmetric partners
    with pytest.raises(SymmetryError):
        AlgCurvTensor(4, FLOAT, comp)


def test_symtensor_rejects_asymmetric():
    with pytest.raises(SymmetryError):
        SymTensor2.from_components([[0.0, 1.0], [0.0, 0.0]], FLOAT)


def test_plane_rejects_non_orthonormal():
    with pytest.raises(PlaneError):
        Plane(np.array([1.0, 0.0]), np.array([1.0, 0.0]))
    with pytest.raises(PlaneError):
        Plane(np.array([2.0, 0.0]), np.array([0.0, 1.0]))


def test_sectional_on_coordinate_plane_reads_component():
    Rm = random_curvature(4, 11, FLOAT)
    for i in range(4):
        for j in range(4):
            if i != j:
                p = coordinate_plane(4, i, j)
                assert sectional(Rm, p) == pytest.approx(Rm.comp[i, j, i, j])


@given(seed=st.integers(0, 10_000), n=st.sampled_from([3, 4, 5]))
@settings(max_examples=25, deadline=None)
def test_random_curvature_rational_bianchi_exact(seed, n):
    Rm = random_curvature(n, seed, RATIONAL, scale=5)
    assert Rm.bianchi_residual() == 0


def test_random_curvature_deterministic():
    a = random_curvature(4, 123, FLOAT)
    b = random_curvature(4, 123, FLOAT)
    assert np.array_equal(a.comp, b.comp)


def test_json_round_trip_rational():
    Rm = random_curvature(4, 5, RATIONAL)
    back = AlgCurvTensor.from_json(Rm.to_json())
    assert (back.comp == Rm.comp).all()
    assert back.mode == RATIONAL


def test_json_round_trip_float():
    Rm = random_curvature(4, 5, FLOAT)
    back = AlgCurvTensor.from_json(Rm.to_json())
    assert np.allclose(np.asarray(back.comp, dtype=float),
                       np.asarray(Rm.comp, dtype=float), atol=0, rtol=0)


def test_invariants_lhs_matches_loop_oracle():
    Rm = random_curvature(4, 21, FLOAT)
    inv = invariants(Rm)
    t = traceless_ricci(Rm).comp
    acc = 0.0
    for i in range(4):
        for j in range(4):
            for k in range(4):
                for l in range(4):
                    acc += Rm.comp[i, j, k, l] * t[i, k] * t[j, l]
    assert inv.lhs == pytest.approx(acc, rel=1e-12)
    assert inv.ricNormSq == pytest.approx(float((np.asarray(t) ** 2).sum()))


def test_modified_curvature_shifts_sectional_by_eps_R():
    rng = np.random.default_rng(2)
    Rm = random_curvature(4, 9, FLOAT)
    eps = 0.03
    mod = modified_curvature(Rm, eps)
    R = scalar(Rm)
    for _ in range(10):
        p = random_plane(4, rng)
        assert sectional(mod.rmBar, p) == pytest.approx(
            sectional(Rm, p) - eps * R, rel=1e-10, abs=1e-10)
    assert mod.rBar == pytest.approx((1 - 12 * eps) * R)


def test_modified_curvature_rational_exact():
    Rm = constant_curvature(4, Fraction(1), RATIONAL)
    mod = modified_curvature(Rm, Fraction(1, 24))
    # sigma - eps*R = 1 - 12/24 = 1/2 on every coordinate plane
    assert mod.rmBar.comp[0, 1, 0, 1] == Fraction(1, 2)
    assert mod.rBar == (1 - Fraction(12, 24)) * 12
