"""Figure data series."""

import math

import pytest

from hsofdmtdr.cli.sweeps import complexity_series, dmax_series, rate_series, sidelobe_series
from hsofdmtdr.network.cable import VELOCITY_PRESETS


def test_complexity_series_rows():
    rows = complexity_series([64, 128])
    assert rows[1][:3] == (128, 9728, 4352)
    assert all(r[3] > 2 for r in rows)


def test_dmax_series_saturates(fcc_grid):
    rows = dmax_series(fcc_grid, dict(VELOCITY_PRESETS), [0, 30, 256, 300])
    mv = {cp: d for cp, cable, d in rows if cable == "mv"}
    assert mv[0] == 0.0
    assert mv[30] == pytest.approx(3200.0)
    assert mv[300] == mv[256]


def test_rate_series_orders_by_plm_count(fcc_grid):
    rows = rate_series(fcc_grid, [1, 2], [30])
    assert [(r[1], r[2]) for r in rows] == [
        ("tdma", 1), ("fdma", 1), ("cdma", 1), ("tdma", 2), ("fdma", 2), ("cdma", 2),
    ]
    fdma_2 = rows[4]
    assert fdma_2[3] == pytest.approx(1 / fcc_grid.symbol_duration)


def test_sidelobe_series_is_seeded():
    a = sidelobe_series([16], payloads=3, seed=1, eta=4)
    b = sidelobe_series([16], payloads=3, seed=1, eta=4)
    assert len(a) == 4
    assert a[0][1:3] == ("channel_estimation", "any")
    assert [r[2] for r in a[1:]] == ["bpsk", "qpsk", "8psk"]
    assert all(len(r) == 8 for r in a)
    assert a[0][6:] == (0.0, 0.0)
    for ra, rb in zip(a, b):
        assert ra[:3] == rb[:3]
        assert ra[3] == rb[3] or (math.isnan(ra[3]) and math.isnan(rb[3]))


@pytest.mark.slow
def test_channel_estimation_pulse_at_128():
    ce = sidelobe_series([128], payloads=1, seed=0)[0]
    assert ce[3] == pytest.approx(-13.26, abs=0.05)
    assert ce[4] == pytest.approx(-9.66, abs=0.1)


@pytest.mark.slow
@pytest.mark.parametrize("n", [64, 256, 1024])
def test_channel_estimation_integrates_less_sidelobe_energy(n):
    rows = {r[2]: r for r in sidelobe_series([n], payloads=100, seed=0)}
    assert all(r[5] == 100 for m, r in rows.items() if m != "any")
    ce = rows["any"][4]
    assert rows["bpsk"][3] > rows["qpsk"][3]
    assert rows["bpsk"][3] > rows["8psk"][3]
    assert rows["qpsk"][4] - ce == pytest.approx(6.4, abs=0.7)
    assert rows["8psk"][4] - ce == pytest.approx(6.4, abs=0.7)
    assert rows["bpsk"][4] - ce == pytest.approx(8.9, abs=0.7)
