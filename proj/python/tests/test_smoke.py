import math

import pytest

import macksolve as ms


@pytest.fixture(scope="module")
def mean():
    flow = ms.blasius(20.0, 2000)
    return ms.MeanFlow(flow, 3.0)


def test_blasius_shear():
    flow = ms.blasius()
    assert abs(flow.wall_shear - 0.332057) < 1e-4
    assert flow.u[0] == 0.0
    assert len(flow.grid) == 2000


def test_base_flow_json_round_trip():
    flow = ms.tanh_profile(20.0, 600)
    again = ms.baseflow_from_json(flow.to_json())
    assert again.u == flow.u


def test_turning_point(mean):
    td = ms.turning_point(mean, 0.8)
    assert td.y0 < td.yc
    assert abs(mean.Fr(td.y0, 0.8)) < 1e-8


def test_j_negative(mean):
    j, err = ms.j_integral(mean, 0.8)
    assert j < 0.0
    assert err <= 1e-6 * abs(j)


def test_roots_and_selection(mean):
    ctx = ms.DispersionContext(mean, 0.8)
    roots = ctx.roots(10.0, 35.0)
    assert len(roots) == 4
    w = ctx.supersonic_weight
    for a, b in zip(roots, roots[1:]):
        assert abs(w * (b.alpha - a.alpha) - math.pi) < 0.15 * math.pi
    sel = ms.select_unstable_subsequence(roots, 1)
    assert all(roots[i].cos_sign == 1 for i in sel)


def test_eigenvalue_and_fields(mean):
    mode = ms.find_eigenvalue(mean, 2.0, complex(0.8, 1e-4))
    assert mode["c"].imag > 0.0
    assert mode["boundary_residual"] <= 1e-8
    assert max(v for k, v in mode["residuals"].items() if k != "guard") <= 1e-4
    f = mode["fields"]
    r = ms.residual_check(mean, 2.0, mode["c"], f["y"], f["p"], mode["dp"])
    assert r["continuity"] == pytest.approx(mode["residuals"]["continuity"])


def test_errors(mean):
    with pytest.raises(ValueError):
        ms.turning_point(mean, 0.5)
    with pytest.raises(ms.FloorError):
        ms.find_eigenvalue(mean, 2.0, complex(0.8, 1e-14))
