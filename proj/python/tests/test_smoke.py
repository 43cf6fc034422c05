import math

import numpy as np
import pytest

import dqdcorr


def test_defaults():
    dot = dqdcorr.DotParameters()
    assert dot.t2star_theory() == pytest.approx(12.2855, rel=1e-4)
    assert dot.alpha == pytest.approx(83 / 1.5e6)


def test_state_and_measures():
    rho = dqdcorr.state("bell:psi-")
    assert rho.shape == (4, 4)
    b = dqdcorr.discord_bounds(rho)
    assert b["ds_lower"] == pytest.approx(0.5)
    assert b["coincide"]
    assert dqdcorr.concurrence("werner:p=0.5") == pytest.approx(0.25)
    assert dqdcorr.g_ratio("werner:p=0") is None
    k = 1 - math.sqrt(3) / 2
    assert dqdcorr.rescaled_discord(0.5, 1.0) == pytest.approx(0.5 * k * k)


def test_channel_zero_field_identity():
    t = dqdcorr.short_grid()
    p, c = dqdcorr.channel(dqdcorr.DotParameters(), t)
    assert len(p) == 1001
    np.testing.assert_allclose(c.real, 1 - 2 * p, atol=1e-12)


def test_evolve_kink():
    d = dqdcorr.evolve("belldiag:a=0.4,b=0.4", dqdcorr.DotParameters(B=0.1), dqdcorr.short_grid())
    assert len(d["kink_times"]) == 1
    assert d["kink_times"][0] == pytest.approx(4.66, abs=0.02)
    assert np.all(d["d_lower"] <= d["d_upper"] + 1e-12)


def test_errors_carry_kind():
    with pytest.raises(dqdcorr.DqdError) as info:
        dqdcorr.state("werner:p=2")
    assert info.value.kind == "invalid-parameter"
    with pytest.raises(dqdcorr.DqdError):
        dqdcorr.channel(dqdcorr.DotParameters(), [0.0, 50000.0])


def test_verify_one():
    res = dqdcorr.verify([7])
    assert res[0][0] == 7 and res[0][2]
