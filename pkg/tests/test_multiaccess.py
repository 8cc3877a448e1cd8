"""Subcarrier combs, Hadamard spreading, access schemes and their rates."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hsofdmtdr.access.cdma import cdma_decode, cdma_encode, decoded_noise_variance, hadamard
from hsofdmtdr.access.fdma import fdma_allocate, fdma_fold, fdma_reflectogram, wrapped_delay
from hsofdmtdr.access.schemes import (
    CdmaScheme,
    FdmaScheme,
    SchemeType,
    TdmaScheme,
    create_scheme,
    rate_table,
)
from hsofdmtdr.core.errors import AccessError
from hsofdmtdr.core.spectral import dft, hermitian_extend, idft
from hsofdmtdr.txrx.noise import NoiseModel, gen_noise, substream


# ----------------------------------------------------------------------------
# FDMA
# ----------------------------------------------------------------------------
def test_combs_partition_the_band():
    combs = [fdma_allocate(u, 4, 32) for u in range(4)]
    np.testing.assert_array_equal(combs[1], [1, 5, 9, 13, 17, 21, 25, 29])
    np.testing.assert_array_equal(np.sort(np.concatenate(combs)), np.arange(32))


@pytest.mark.parametrize("u, n_plm, n_half", [(0, 0, 8), (0, 3, 8), (4, 4, 8), (-1, 2, 8)])
def test_fdma_allocate_rejects_bad_arguments(u, n_plm, n_half):
    with pytest.raises(AccessError):
        fdma_allocate(u, n_plm, n_half)


def test_fold_doubles_inner_bins():
    p = dft(np.arange(8.0))
    folded = fdma_fold(p)
    assert folded.shape == (5,)
    assert folded[0] == p[0] and folded[4] == p[4]
    np.testing.assert_allclose(folded[1:4], 2 * p[1:4])
    np.testing.assert_allclose(fdma_fold(np.vstack([p, p]))[1], folded)
    with pytest.raises(AccessError):
        fdma_fold(np.ones(5))


@given(n=st.integers(min_value=2, max_value=32), seed=st.integers(min_value=0, max_value=2**31))
def test_single_plm_reflectogram_equals_inverse_transform(n, seed):
    rng = np.random.default_rng(seed)
    half = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    half[n] = 0.0
    p = hermitian_extend(half)
    rho = fdma_reflectogram(fdma_fold(p), np.arange(n), n, n_plm=1)
    np.testing.assert_allclose(rho, idft(p).real, atol=1e-10)


def _direct_comb_sum(p, comb, n, length):
    full = set(int(k) for k in comb) | {2 * n - int(k) for k in comb if 0 < k < n}
    rho = np.zeros(length)
    for m in range(length):
        acc = 0j
        for k in sorted(full):
            acc += p[k] * np.exp(1j * np.pi * k * m / n)
        rho[m] = acc.real / np.sqrt(length)
    return rho


def test_two_plm_reflectogram_matches_direct_sum():
    rng = np.random.default_rng(31)
    for _ in range(100):
        n = 2 * int(rng.integers(2, 33))
        half = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
        p = hermitian_extend(half)
        folded = fdma_fold(p)
        for u in range(2):
            comb = fdma_allocate(u, 2, n)
            rho = fdma_reflectogram(folded, comb, n, n_plm=2)
            assert rho.size == n
            np.testing.assert_allclose(rho, _direct_comb_sum(p, comb, n, n), rtol=0, atol=1e-10)


def test_echo_wraps_into_short_reflectogram():
    n, n_plm, delay = 128, 4, 70
    h = np.zeros(2 * n)
    h[delay] = 1.0
    folded = fdma_fold(np.fft.fft(h))
    for u in range(n_plm):
        rho = fdma_reflectogram(folded, fdma_allocate(u, n_plm, n), n)
        assert rho.size == 64
        assert int(np.argmax(np.abs(rho))) == wrapped_delay(delay, n_plm, n) == 6


def test_fdma_reflectogram_rejects_bad_input():
    with pytest.raises(AccessError):
        fdma_reflectogram(np.ones(4), np.arange(3), 4)
    with pytest.raises(AccessError):
        fdma_reflectogram(np.ones(5), np.array([], dtype=int), 4)
    with pytest.raises(AccessError):
        fdma_reflectogram(np.ones(5), np.array([6]), 4)


# ----------------------------------------------------------------------------
# CDMA
# ----------------------------------------------------------------------------
@pytest.mark.parametrize("n", [1, 2, 4, 8, 16])
def test_hadamard_rows_are_orthogonal(n):
    h = hadamard(n)
    np.testing.assert_array_equal(h @ h.T, n * np.eye(n))
    assert set(np.unique(h)) <= {-1.0, 1.0}


@pytest.mark.parametrize("n", [0, 3, 6])
def test_hadamard_needs_power_of_two(n):
    with pytest.raises(AccessError):
        hadamard(n)


def test_despreading_cancels_other_users(rng):
    codes = hadamard(4)
    payloads = rng.standard_normal((4, 10)) + 1j * rng.standard_normal((4, 10))
    block = sum(cdma_encode(payloads[u], codes[u]) for u in range(4))
    assert block.shape == (4, 10)
    for u in range(4):
        np.testing.assert_allclose(cdma_decode(block, codes[u]), payloads[u], atol=1e-12)


def test_decoded_noise_variance_against_monte_carlo(small_grid):
    n_plm, groups = 4, 20_000
    model = NoiseModel()
    sigma2 = model.variances(small_grid)
    v = gen_noise(model, small_grid, substream(9, 0, 1), size=groups * n_plm)
    blocks = v.reshape(groups, n_plm, small_grid.n_bins)
    codes = hadamard(n_plm)
    for code in codes:
        decoded = np.array([cdma_decode(b, code) for b in blocks])
        measured = np.mean(np.abs(decoded) ** 2, axis=0)
        np.testing.assert_allclose(measured, decoded_noise_variance(sigma2, n_plm), rtol=0.05)
        # the closed-form reading overstates the decoded noise by sqrt(N_PLM)
        analytic = decoded_noise_variance(sigma2, n_plm, "analytic")
        np.testing.assert_allclose(measured / analytic, 1 / np.sqrt(n_plm), rtol=0.05)


def test_cdma_shape_checks():
    with pytest.raises(AccessError):
        cdma_encode(np.ones((2, 2)), np.ones(2))
    with pytest.raises(AccessError):
        cdma_decode(np.ones((3, 5)), np.ones(4))


def test_decoded_noise_variance_modes():
    sigma2 = np.array([4.0, 16.0])
    np.testing.assert_allclose(decoded_noise_variance(sigma2, 4), [1.0, 4.0])
    np.testing.assert_allclose(decoded_noise_variance(sigma2, 4, "analytic"), [2.0, 8.0])
    with pytest.raises(AccessError):
        decoded_noise_variance(sigma2, 4, "exact")


# ----------------------------------------------------------------------------
# Schemes and rates
# ----------------------------------------------------------------------------
def test_scheme_factory(fcc_grid):
    assert isinstance(create_scheme("tdma", 4, fcc_grid), TdmaScheme)
    assert isinstance(create_scheme(SchemeType.FDMA, 4, fcc_grid), FdmaScheme)
    assert isinstance(create_scheme("CDMA", 4, fcc_grid), CdmaScheme)
    with pytest.raises(AccessError):
        create_scheme("ofdma", 4, fcc_grid)
    with pytest.raises(AccessError):
        create_scheme("tdma", 0, fcc_grid)


def test_create_scheme_forwards_slot_order(fcc_grid):
    tdma = create_scheme("tdma", 4, fcc_grid, slot_order=[2, 0, 3, 1])
    assert [tdma.transmitter(s) for s in range(8)] == [2, 0, 3, 1, 2, 0, 3, 1]
    assert [create_scheme("tdma", 4, fcc_grid).transmitter(s) for s in range(4)] == [0, 1, 2, 3]
    with pytest.raises(AccessError):
        create_scheme("tdma", 4, fcc_grid, slot_order=[0, 0, 1, 2])
    # only TDMA has turns
    assert isinstance(create_scheme("cdma", 4, fcc_grid, slot_order=[3, 2, 1, 0]), CdmaScheme)


def test_rates_per_scheme(fcc_grid):
    t = fcc_grid.symbol_duration
    tdma = TdmaScheme(4, fcc_grid).rates()
    assert tdma.n_rho == pytest.approx(1 / (4 * t))
    assert tdma.n_t == pytest.approx(3 / (4 * t))
    assert tdma.n_meas == pytest.approx(1 / t)
    fdma = FdmaScheme(4, fcc_grid).rates()
    assert fdma.n_rho == pytest.approx(1 / t)
    assert fdma.n_meas == pytest.approx(4 / t)
    assert CdmaScheme(4, fcc_grid).rates() == tdma


def test_tdma_slots(fcc_grid):
    scheme = TdmaScheme(3, fcc_grid, slot_order=[2, 0, 1])
    assert [scheme.transmitter(s) for s in range(5)] == [2, 0, 1, 2, 0]
    assert scheme.symbols_per_reflectogram == 3
    with pytest.raises(AccessError):
        TdmaScheme(3, fcc_grid, slot_order=[0, 0, 1])


def test_fdma_combs_follow_active_band(fcc, fcc_grid):
    scheme = FdmaScheme(4, fcc_grid, fcc.active_bins())
    assert scheme.comb(0)[0] == 3
    actives = [scheme.active_comb(u) for u in range(4)]
    np.testing.assert_array_equal(np.sort(np.concatenate(actives)), fcc.active_bins())
    with pytest.raises(AccessError):
        scheme.comb(4)
    with pytest.raises(AccessError):
        FdmaScheme(3, fcc_grid)


def test_cdma_codes(fcc_grid):
    scheme = CdmaScheme(4, fcc_grid)
    np.testing.assert_array_equal(scheme.code(0), np.ones(4))
    assert scheme.codes.shape == (4, 4)
    with pytest.raises(AccessError):
        CdmaScheme(3, fcc_grid)


def test_rate_table_skips_unsupported_counts(fcc_grid):
    rows = rate_table(fcc_grid, [1, 3, 4])
    kinds = {(scheme, n) for scheme, n, _ in rows}
    assert (SchemeType.TDMA, 3) in kinds
    assert (SchemeType.CDMA, 3) not in kinds
    assert (SchemeType.FDMA, 3) not in kinds
    assert len(rows) == 3 + 1 + 3
