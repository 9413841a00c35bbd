import math

import numpy as np
import pytest

import sighyp


def test_signature_of_l_path():
    path = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]])
    sig = dict(zip(sighyp.component_names(2, 2), sighyp.signature(path, 2)))
    assert sig[""] == 1.0
    assert sig["1.2"] == pytest.approx(1.0)
    assert sig["2.1"] == pytest.approx(0.0)
    assert sig["1.1"] == pytest.approx(0.5)


def test_chen_identity():
    rng = np.random.default_rng(3)
    p = np.cumsum(rng.normal(size=(6, 3)), axis=0)
    q = p[-1] + np.cumsum(rng.normal(size=(5, 3)), axis=0)
    joined = np.vstack([p, q])
    lhs = sighyp.signature(joined, 3)
    rhs = sighyp.tensor_mul(sighyp.signature(p, 3), sighyp.signature(np.vstack([p[-1:], q]), 3), 3, 3)
    assert np.max(np.abs(lhs - np.asarray(rhs))) < 1e-10


def test_development_stays_on_hyperboloid():
    rng = np.random.default_rng(5)
    path = np.cumsum(rng.normal(scale=0.5, size=(11, 4)), axis=0)
    x = sighyp.development(path, 1.2)
    assert x.shape == (5,)
    assert abs(sighyp.hyperboloid_residual(x)) < 1e-9
    seg = sighyp.development(np.array([[0.0, 0.0], [1.5, 0.0]]), 1.0)
    assert seg[0] == pytest.approx(math.sinh(1.5))
    assert seg[2] == pytest.approx(math.cosh(1.5))


def test_published_table_values():
    ok, rows = sighyp.verify("table1")
    assert ok
    by_id = {r["check"]: r for r in rows}
    assert by_id["d=5 [Theta+Err](2.5)"]["value"] == pytest.approx(-1.315936, abs=1e-5)
    ok2, _ = sighyp.verify("table2")
    assert ok2


def test_root_bracket_and_blowup():
    b = sighyp.bracket_theta_root(2)
    assert b["certified"] and 2.5 < b["lo"] < b["hi"] < 3.0
    assert b["width"] <= 1e-8
    near = abs(sighyp.hd1_center_general(1.0, b["root"] - 1e-4, 2))
    far = abs(sighyp.hd1_center_general(1.0, b["root"] - 1e-2, 2))
    assert near > far and near > 1e3


def test_closed_forms():
    assert sighyp.h1_closed_form(1.0, 1.3, 4) == pytest.approx(0.0, abs=1e-12)
    assert sighyp.hd1_closed_form(1.0, 1.3, 4) == pytest.approx(1.0)
    assert sighyp.hd1_closed_form(0.0, 1.3, 4) == pytest.approx(sighyp.numerator_ball(1.3, 4) / sighyp.theta(1.3, 4))
    assert abs(sighyp.bessel_j(0.0, 1 + 2j) - (1.5862594502023713 - 1.3916024523273359j)) < 1e-14


def test_monte_carlo_exit_time_and_determinism():
    disc = sighyp.Domain.ball([0.0, 0.0], 1.0)
    a = sighyp.mc_exit_time(disc, [0.0, 0.0], seed=1, paths=1500, step=1e-3, threads=1)
    b = sighyp.mc_exit_time(disc, [0.0, 0.0], seed=1, paths=1500, step=1e-3, threads=2)
    assert a == b
    assert abs(a["mean"][0] - 0.5) <= 4 * a["stderr"][0]
    with pytest.raises(ValueError, match="config.start"):
        sighyp.mc_exit_time(disc, [2.0, 0.0], paths=10)


def test_pde_centre_value():
    disc = sighyp.Domain.from_json('{"kind": "ball", "center": [0, 0], "radius": 1}')
    v = sighyp.pde_point_values(disc, 2, [0.0, 0.0], h=0.05)
    vals = dict(zip(v["components"], v["value"]))
    assert vals["1.1"] == pytest.approx(0.25, abs=1e-8)
    assert vals["1.2"] == pytest.approx(0.0, abs=1e-10)


def test_pole_error_is_raised():
    lo, hi = 2.5, 3.0
    for _ in range(80):
        m = 0.5 * (lo + hi)
        if sighyp.theta(m, 4) < 0:
            lo = m
        else:
            hi = m
    with pytest.raises(sighyp.PoleError):
        sighyp.hd1_closed_form(0.5, lo, 4)
    assert issubclass(sighyp.PoleError, ArithmeticError)
