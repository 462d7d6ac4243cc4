"""Smoke tests for the python bindings."""

import numpy as np
import pytest

kyfan = pytest.importorskip("kyfan")


def test_norms():
    x = np.diag([3.0, 2.0, 1.0])
    assert kyfan.norm(x, 2) == pytest.approx(5.0, abs=1e-12)
    assert kyfan.dual_norm(np.eye(3), 2) == pytest.approx(1.5, abs=1e-12)
    assert kyfan.vector_norm(np.array([1.0, -4.0, 2.0]), 2) == pytest.approx(
        6.0, abs=1e-12
    )


def test_prox_pair_moreau():
    rng = np.random.default_rng(7)
    x = rng.normal(size=(4, 6))
    xb, sb = kyfan.prox_pair(x, 3)
    assert np.max(np.abs(xb + sb - x)) < 1e-10
    # the pair solves the generalized equation, so analysis succeeds
    info = kyfan.analyze(xb, sb, 3)
    assert info["case"] in ("POSITIVE_SIGMA_K", "ZERO_SIGMA_K")


def test_analyze_rejects_invalid_pair():
    x = np.diag([1.0, 1.0])
    with pytest.raises(ValueError):
        kyfan.analyze(x, x, 1)  # dual norm of S is 2 > 1


def test_derivatives_match_finite_differences():
    xb, sb = kyfan.random_instance(3, 4, 2, "generic", 11)
    h = np.random.default_rng(3).normal(size=(3, 4))
    d1 = kyfan.theta_dd1(xb, h, 2)
    t = 1e-6
    fd = (kyfan.norm(xb + t * h, 2) - kyfan.norm(xb, 2)) / t
    assert d1 == pytest.approx(fd, abs=1e-4)


def test_sigma_term_routes_agree():
    xb, sb = kyfan.random_instance(4, 5, 2, "boundary_u", 5)
    h = np.random.default_rng(9).normal(size=(4, 5))
    res = kyfan.sigma_term(xb, sb, 2, h)
    assert res["upsilon"]["route_gap"] < 1e-9 * max(
        1.0, float(np.sum(h * h))
    )
    assert res["upsilon"]["omega_route"] <= 1e-9


def test_verify_battery_passes():
    xb, sb = kyfan.random_instance(3, 4, 2, "generic", 21)
    checks = kyfan.verify(xb, sb, 2, seed=1)
    failed = [c["name"] for c in checks if not c["pass"]]
    assert failed == []
