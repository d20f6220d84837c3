# SPDX-License-Identifier: Apache-2.0
import math

import pytest

import stit

PERP = stit.axis_orthogonal([1, 1])
SQUARE = stit.box([-1, -1], [1, 1])


def test_measure_hitting():
    assert stit.measure_hitting(PERP, SQUARE) == pytest.approx(4.0)
    disc = stit.polygon(
        [(math.cos(2 * math.pi * k / 64), math.sin(2 * math.pi * k / 64)) for k in range(64)]
    )
    assert stit.measure_hitting(stit.isotropic(1.0), disc) == pytest.approx(2.0, abs=0.005)


def test_bound_values():
    assert stit.lower_bound(0.0, 4.0, [1, 1, 1, 1]) == 0.0
    assert stit.lower_bound(math.inf, 4.0, [1, 1, 1, 1]) == pytest.approx(1 / 70, abs=1e-12)
    assert stit.t_star(0.19, 4.0) == pytest.approx(-math.log(0.9) / 4)
    assert stit.r_of_s(0.1, 0.19, 1.0, 2) == pytest.approx(36.50, abs=0.01)


def test_simulate_is_deterministic():
    a = stit.simulate(PERP, stit.box([-2, -2], [2, 2]), 2.0, seed=5, method="rejection")
    b = stit.simulate(PERP, stit.box([-2, -2], [2, 2]), 2.0, seed=5, method="rejection")
    assert a == b
    assert len(a["nodes"]) >= 1


def test_simulate_pht():
    p = stit.simulate_pht(PERP, SQUARE, rho=1.0, seed=2)
    assert p["rho"] == 1.0
    assert isinstance(p["hyperplanes"], list)


def test_verify_small():
    summary = stit.verify("capacity", n_scale=0.1)
    assert summary["experiment"] == "capacity"
    assert summary["pass"] is True
    assert "capacity" in stit.experiment_names()


def test_errors():
    with pytest.raises(stit.ConfigError):
        stit.verify("no_such_experiment")
    with pytest.raises(stit.StitError):
        stit.simulate(PERP, SQUARE, -1.0)


def test_cli():
    code, out, _ = stit.cli("bound", "--lambda", "4", "--masses", "1,1,1,1", "--t-grid", "0")
    assert code == 0
    assert out.splitlines() == ["t,lower_bound", "0,0"]
    code, _, err = stit.cli("verify", "nope")
    assert code == 2
    assert "error" in err
