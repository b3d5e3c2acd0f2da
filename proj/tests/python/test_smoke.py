import json
import math

import numpy as np
import pytest

import trotterlab as tl


def approx(x, rel=1e-10):
    return pytest.approx(x, rel=rel)


def test_version_and_presets():
    assert isinstance(tl.__version__, str) and tl.__version__
    names = tl.preset_names()
    assert "hydrogen_s_wave" in names
    assert "gaussian_control" in names
    cfg = json.loads(tl.preset_text("hydrogen_s_wave"))
    assert cfg["potential"]["c"] == -2.0


def test_constants():
    assert tl.chls3() == 2.0
    assert tl.c_n(2, 1.0) == approx(82.97056274847714)
    assert tl.tilde_cn_certified(2, 1.0) == approx(796958843.2589761)
    assert tl.h2_growth_one_body(2.0) == approx(46.0)
    assert tl.second_moment_bound(1.0, 1.0, 2, 1.0) == approx(33.0 + 8.0 * math.sqrt(2.0))
    value, warn = tl.theorem_bound(1.0, 0.0625, 2.0, 2, 1.0)
    assert not warn
    assert value == approx(796958843.2589761 * 0.0625**0.25 * 2.0)
    _, warn_late = tl.theorem_bound(1.0, 2.0, 1.0, 2, 1.0)
    assert warn_late


def test_cutoff_profile():
    prof = tl.cutoff_profile()
    assert prof["c0"] == approx(8.374882934628545e7, rel=1e-6)
    assert prof["cf1_within_cap"]
    assert prof["cf2_within_cap"]
    assert prof["cf2_within_c0"]
    vals = tl.f_le(np.array([0.2, 0.5, 1.0, 1.5]))
    assert vals[0] == 1.0 and vals[1] == 1.0
    assert vals[2] == 0.0 and vals[3] == 0.0
    assert tl.vsin_l2_norm(0.25, 0.5) <= 2.0 * math.sqrt(math.pi) * 0.25**0.25


def test_grid_round_trip():
    g = tl.Grid("radial-1d", [256], [20.0])
    assert g.total == 256
    assert g.naxes == 1
    rng = np.random.default_rng(7)
    arr = rng.normal(size=256) + 1j * rng.normal(size=256)
    mom = g.transform(arr)
    back = g.transform(mom, from_rep="momentum", to_rep="position")
    assert np.allclose(back, arr, atol=1e-12)
    manual = math.sqrt(float(np.sum(np.abs(arr) ** 2)) * g.spacing(0))
    assert g.norm(arr) == approx(manual)
    assert g.h2_norm(arr) >= g.norm(arr)


def test_run_errrep_check():
    cfg = {
        "command": "errrep-check",
        "seed": 11,
        "grid": {"kind": "radial-1d", "dims": [128], "extents": [10.0]},
        "potential": {"kind": "gaussian-well", "depth": 5.0, "width": 2.0},
        "errrep": {"t": 0.1, "nodes": [8, 16], "states": 3, "decay": 4.0, "tol": 1e-6},
    }
    out = tl.run_errrep_check(json.dumps(cfg))
    assert out["pass"]
    assert out["final"] <= 1e-6
    assert len(out["worst"]) == 2


def test_run_rate_study_smooth():
    cfg = {
        "command": "rate-study",
        "seed": 5,
        "grid": {"kind": "radial-1d", "dims": [128], "extents": [10.0]},
        "potential": {"kind": "gaussian-well", "depth": 5.0, "width": 2.0},
        "state": {"kind": "random", "decay": 4.0},
        "study": {"kind": "global", "T": 1.0, "k_min": 3, "k_max": 8},
    }
    out = tl.run_rate_study(json.dumps(cfg))
    assert len(out["rows"]) == 6
    assert out["reliable"]
    assert 0.8 <= out["slope"] <= 1.2
    for row in out["rows"]:
        assert row["kind"] == "global"
        if row["in_window"]:
            assert row["error"] <= row["bound"]


def test_run_h2_trace():
    cfg = {
        "command": "h2-trace",
        "seed": 9,
        "grid": {"kind": "radial-1d", "dims": [256], "extents": [20.0]},
        "potential": {"kind": "coulomb-one-body", "c": -2.0},
        "state": {"kind": "radial-packet", "center": 8.0, "sigma": 1.0},
        "h2trace": {"T": 1.0, "samples": 21},
    }
    out = tl.run_h2_trace(json.dumps(cfg))
    assert out["growth_bound"] == approx(46.0)
    assert out["pass"]
    assert len(out["times"]) == 21
    assert out["ratios"][0] == approx(1.0)
