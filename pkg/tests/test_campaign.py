"""Measurement campaigns over synthetic and preset channel matrices."""

import json
import math

import numpy as np
import pytest

from hsofdmtdr.access.campaign import ChannelMatrix, build_channel_matrix, run_campaign
from hsofdmtdr.access.schemes import SchemeType, TdmaScheme
from hsofdmtdr.core.errors import AccessError
from hsofdmtdr.network.channel import ReflectionChannel
from hsofdmtdr.network.presets import MV_PLM_PORTS, mv_line
from hsofdmtdr.processing.reflectogram import hermitian_active_set
from hsofdmtdr.txrx.constellation import Constellation, random_symbols
from hsofdmtdr.txrx.link import StreamChannel
from hsofdmtdr.txrx.mapping import hs_map_batch, place_symbol_batch
from hsofdmtdr.txrx.noise import NoiseModel, substream

QUIET = NoiseModel(enabled=False)


def synthetic_matrix(grid, n_plm, transfer_gain=0.0):
    reflections = [
        ReflectionChannel.from_impulse_response(np.array([0.4, 0.0, -0.2 + 0.05 * u]), grid)
        for u in range(n_plm)
    ]
    transfers = {
        (u, v): ReflectionChannel.from_impulse_response(np.array([transfer_gain]), grid)
        for u in range(n_plm)
        for v in range(u + 1, n_plm)
    }
    return ChannelMatrix([f"p{u}" for u in range(n_plm)], reflections, transfers)


def campaign(scheme, grid, active, n_plm=4, noise=None, **kwargs):
    kwargs.setdefault("matrix", synthetic_matrix(grid, n_plm))
    return run_campaign(
        scheme, None, [f"p{u}" for u in range(n_plm)], grid,
        NoiseModel() if noise is None else noise, active_bins=active, **kwargs,
    )


# ----------------------------------------------------------------------------
# Basic bookkeeping
# ----------------------------------------------------------------------------
def test_noise_free_tdma_recovers_band_limited_channel(fcc, fcc_grid):
    matrix = synthetic_matrix(fcc_grid, 2)
    result = campaign("tdma", fcc_grid, fcc.active_bins(), n_plm=2, noise=QUIET, n_symbols=6, matrix=matrix)
    active_full = hermitian_active_set(fcc.active_bins(), fcc_grid.n_half)
    for plm in result.plms:
        h = matrix.reflection(plm.index).freq_response
        masked = np.zeros(fcc_grid.n_bins, dtype=complex)
        masked[active_full] = h[active_full]
        np.testing.assert_allclose(plm.mean_reflectogram, np.fft.ifft(masked, norm="ortho").real, atol=1e-10)
        assert plm.reflectogram_count == 3
        assert plm.sinr_db == math.inf


def test_duration_sets_symbol_count(fcc, fcc_grid):
    result = campaign("tdma", fcc_grid, fcc.active_bins(), duration_s=10.5 * fcc_grid.symbol_duration)
    assert result.n_symbols == 10
    assert result.duration_s == pytest.approx(10 * fcc_grid.symbol_duration)
    assert [p.reflectogram_count for p in result.plms] == [3, 3, 2, 2]


def test_slot_order_changes_the_turns(fcc, fcc_grid):
    plain = campaign("tdma", fcc_grid, fcc.active_bins(), n_symbols=10)
    reordered = campaign("tdma", fcc_grid, fcc.active_bins(), n_symbols=10, slot_order=[3, 2, 1, 0])
    assert [p.reflectogram_count for p in plain.plms] == [3, 3, 2, 2]
    assert [p.reflectogram_count for p in reordered.plms] == [2, 2, 3, 3]
    with pytest.raises(AccessError):
        campaign("tdma", fcc_grid, fcc.active_bins(), n_symbols=10, slot_order=[0, 1, 2])


def test_campaign_argument_checks(fcc, fcc_grid):
    with pytest.raises(AccessError):
        campaign("tdma", fcc_grid, fcc.active_bins())
    with pytest.raises(AccessError):
        campaign("cdma", fcc_grid, fcc.active_bins(), n_symbols=3)
    with pytest.raises(AccessError):
        campaign(TdmaScheme(2, fcc_grid), fcc_grid, fcc.active_bins(), n_symbols=8)


def test_kept_reflectograms_are_capped(fcc, fcc_grid):
    result = campaign("fdma", fcc_grid, fcc.active_bins(), n_symbols=20, keep_reflectograms=5)
    for plm in result.plms:
        assert plm.reflectogram_count == 20
        assert len(plm.reflectograms) == 5
        assert plm.mean_reflectogram.size == 2 * fcc_grid.n_half // 4


def test_transferograms_are_recorded_per_source(fcc, fcc_grid):
    result = campaign(
        "tdma", fcc_grid, fcc.active_bins(), n_plm=2, n_symbols=8,
        record_transferograms=True, matrix=synthetic_matrix(fcc_grid, 2, transfer_gain=0.1),
    )
    listener = result.plms[1]
    assert listener.transferogram_count == 4
    assert set(listener.transferograms) == {0}
    first = listener.transferograms[0][0]
    np.testing.assert_array_equal(first.active_bins, hermitian_active_set(fcc.active_bins(), fcc_grid.n_half))
    assert len(listener.transferograms[0]) == 4


# ----------------------------------------------------------------------------
# Reproducibility
# ----------------------------------------------------------------------------
@pytest.mark.parametrize("scheme", ["tdma", "fdma", "cdma"])
def test_same_seed_same_campaign(fcc, fcc_grid, scheme):
    a = campaign(scheme, fcc_grid, fcc.active_bins(), n_symbols=16, seed=5)
    b = campaign(scheme, fcc_grid, fcc.active_bins(), n_symbols=16, seed=5, workers=3)
    c = campaign(scheme, fcc_grid, fcc.active_bins(), n_symbols=16, seed=6)
    assert a.sinr_table == b.sinr_table
    for pa, pb in zip(a.plms, b.plms):
        np.testing.assert_array_equal(pa.mean_reflectogram, pb.mean_reflectogram)
    assert a.sinr_table != c.sinr_table
    json.dumps(a.to_dict())


# ----------------------------------------------------------------------------
# SINR across schemes
# ----------------------------------------------------------------------------
def test_cdma_analytic_gain_is_three_db(fcc, fcc_grid):
    tdma = campaign("tdma", fcc_grid, fcc.active_bins(), n_symbols=4)
    cdma = campaign("cdma", fcc_grid, fcc.active_bins(), n_symbols=4)
    for t, c in zip(tdma.analytic_sinr_table, cdma.analytic_sinr_table):
        assert c - t == pytest.approx(10 * np.log10(2), abs=1e-9)


def test_cdma_simulated_gain_tracks_code_length(fcc, fcc_grid):
    tdma = campaign("tdma", fcc_grid, fcc.active_bins(), n_symbols=1600, seed=2)
    cdma = campaign("cdma", fcc_grid, fcc.active_bins(), n_symbols=1600, seed=2,
                    matrix=synthetic_matrix(fcc_grid, 4, transfer_gain=0.2))
    for t, c in zip(tdma.sinr_table, cdma.sinr_table):
        assert c - t == pytest.approx(10 * np.log10(4), abs=0.5)
    for plm in cdma.plms:
        assert plm.interference.sum() < 1e-12 * plm.signal.sum()


def test_fdma_sinr_rises_with_comb_frequency(fcc, fcc_grid):
    flat = ChannelMatrix(
        [f"p{u}" for u in range(4)],
        [ReflectionChannel.from_impulse_response(np.array([0.5]), fcc_grid)] * 4,
        {(u, v): ReflectionChannel.from_impulse_response(np.array([0.1]), fcc_grid)
         for u in range(4) for v in range(u + 1, 4)},
    )
    result = campaign("fdma", fcc_grid, fcc.active_bins(), n_symbols=1024, matrix=flat)
    assert np.all(np.diff(result.analytic_sinr_table) > 0)
    assert np.all(np.diff(result.sinr_table) > 0)
    noise = [p.noise.sum() / p.reflectogram_count for p in result.plms]
    assert np.all(np.diff(noise) < 0)


# ----------------------------------------------------------------------------
# Preset network
# ----------------------------------------------------------------------------
@pytest.mark.slow
def test_mv_line_campaign(mv_net, fcc, fcc_grid):
    matrix = build_channel_matrix(mv_net, list(MV_PLM_PORTS), fcc_grid)
    assert matrix.n_plm == 4
    result = run_campaign(
        SchemeType.TDMA, mv_net, list(MV_PLM_PORTS), fcc_grid, NoiseModel(),
        n_symbols=64, active_bins=fcc.active_bins(), matrix=matrix,
    )
    assert all(math.isfinite(s) for s in result.sinr_table)
    assert result.rates.n_rho == pytest.approx(1 / (4 * fcc_grid.symbol_duration))
    assert "Campaign TDMA" in result.dump_state()


# ----------------------------------------------------------------------------
# Short cyclic prefix
# ----------------------------------------------------------------------------
def long_echo_matrix(grid, n_plm):
    h = np.zeros(61)
    h[0], h[60] = 0.5, 0.3
    reflections = [ReflectionChannel.from_impulse_response(h, grid)] * n_plm
    transfers = {
        (u, v): ReflectionChannel.from_impulse_response(np.array([0.0]), grid)
        for u in range(n_plm)
        for v in range(u + 1, n_plm)
    }
    return ChannelMatrix([f"p{u}" for u in range(n_plm)], reflections, transfers)


def masked_reflectogram(h, active_full, n_bins):
    masked = np.zeros(n_bins, dtype=complex)
    masked[active_full] = h[active_full]
    return np.fft.ifft(masked, norm="ortho").real


@pytest.mark.parametrize("scheme", ["tdma", "fdma", "cdma"])
def test_short_prefix_biases_the_estimates(fcc, fcc_grid, scheme):
    assert fcc_grid.cp_len == 30
    matrix = long_echo_matrix(fcc_grid, 4)
    result = campaign(scheme, fcc_grid, fcc.active_bins(), noise=QUIET, n_symbols=16, matrix=matrix)
    assert any("ISI regime" in w for w in result.warnings)
    active_full = hermitian_active_set(fcc.active_bins(), fcc_grid.n_half)
    for plm in result.plms:
        assert plm.sinr_db == math.inf
        assert math.isfinite(plm.sir_isi_db)
        assert plm.isi.sum() > 0
        if scheme != "fdma":
            ideal = masked_reflectogram(matrix.reflection(plm.index).freq_response, active_full, fcc_grid.n_bins)
            assert np.max(np.abs(plm.mean_reflectogram - ideal)) > 1e-3
    json.dumps(result.to_dict())


def test_short_prefix_campaign_follows_the_symbol_stream(fcc, fcc_grid):
    matrix = long_echo_matrix(fcc_grid, 1)
    result = campaign("tdma", fcc_grid, fcc.active_bins(), n_plm=1, noise=QUIET, n_symbols=3,
                      matrix=matrix, keep_reflectograms=3)
    # same payload draw as the campaign; the transmit amplitude cancels in Y / X
    active = fcc.active_bins()
    syms = random_symbols(substream(0, 0, 0), Constellation.of("bpsk"), (3, active.size))
    x = hs_map_batch(place_symbol_batch(syms, active, fcc_grid.n_half))
    y = StreamChannel(matrix.reflection(0), fcc_grid).apply(x)
    active_full = hermitian_active_set(active, fcc_grid.n_half)
    for k, refl in enumerate(result.plms[0].reflectograms):
        np.testing.assert_allclose(refl.freq[active_full], y[k, active_full] / x[k, active_full], atol=1e-10)
    # the second symbol also carries the first one's tail
    alone = StreamChannel(matrix.reflection(0), fcc_grid).apply(x[1:2])[0]
    assert np.max(np.abs(y[1, active_full] - alone[active_full])) > 1e-6 * np.max(np.abs(alone))


@pytest.mark.slow
def test_mv_line_noise_free_estimate_carries_isi(mv_net, fcc, fcc_grid):
    matrix = build_channel_matrix(mv_net, list(MV_PLM_PORTS), fcc_grid)
    assert matrix.reflection(0).channel_len > fcc_grid.cp_len
    result = run_campaign(
        SchemeType.TDMA, mv_net, list(MV_PLM_PORTS), fcc_grid, QUIET,
        n_symbols=16, active_bins=fcc.active_bins(), matrix=matrix,
    )
    active_full = hermitian_active_set(fcc.active_bins(), fcc_grid.n_half)
    for plm in result.plms:
        h = matrix.reflection(plm.index).freq_response
        ideal = masked_reflectogram(h, active_full, fcc_grid.n_bins)
        assert np.max(np.abs(plm.mean_reflectogram - ideal)) > 1e-3
        assert math.isfinite(plm.sir_isi_db)
    assert "SIR_isi" in result.dump_state()


# ----------------------------------------------------------------------------
# MV line Monte-Carlo
# ----------------------------------------------------------------------------
def mv_campaign(net, fcc, fcc_grid, scheme, n_symbols=10_000):
    return run_campaign(
        scheme, net, list(MV_PLM_PORTS), fcc_grid, NoiseModel(),
        n_symbols=n_symbols, active_bins=fcc.active_bins(), seed=3, workers=4,
    )


@pytest.mark.slow
def test_mv_line_tdma_sinr_is_equal_across_symmetric_plms(mv_net, fcc, fcc_grid):
    sinr = mv_campaign(mv_net, fcc, fcc_grid, "tdma").sinr_table
    # PLM 0 and 1 sit on the feeder, PLM 2 and 3 on the tap
    assert sinr[0] == pytest.approx(sinr[1], abs=0.2)
    assert sinr[2] == pytest.approx(sinr[3], abs=0.2)


@pytest.mark.slow
def test_mv_line_fdma_sinr_rises_with_plm_index(fcc, fcc_grid):
    # modems matched to the cable: the feeder-tap section no longer rings, so
    # the comb-to-comb spread of |H|^2 stays below the noise slope
    result = mv_campaign(mv_line(plm_impedance=350.0), fcc, fcc_grid, "fdma")
    assert np.all(np.diff(result.sinr_table) > 0)
    assert np.all(np.diff(result.analytic_sinr_table) > 0)


@pytest.mark.slow
def test_mv_line_cdma_gain_in_both_noise_readings(mv_net, fcc, fcc_grid):
    tdma = mv_campaign(mv_net, fcc, fcc_grid, "tdma")
    cdma = mv_campaign(mv_net, fcc, fcc_grid, "cdma")
    for t, c in zip(tdma.analytic_sinr_table, cdma.analytic_sinr_table):
        assert c - t == pytest.approx(10 * np.log10(np.sqrt(4)), abs=0.1)
    for t, c in zip(tdma.sinr_table, cdma.sinr_table):
        assert c - t == pytest.approx(10 * np.log10(4), abs=0.3)
