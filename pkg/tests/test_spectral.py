"""Unitary transforms, Hermitian symmetry and reflectogram reconstruction."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hsofdmtdr.core.errors import SpectralError
from hsofdmtdr.core.grid import ChannelGrid
from hsofdmtdr.core.spectral import (
    dft,
    hermitian_check,
    hermitian_extend,
    idft,
    periodic_sinc_interpolate,
    real_part,
    reconstruct,
    zero_pad,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
halves = st.integers(min_value=1, max_value=64)


@given(n=halves, seed=seeds)
def test_dft_idft_are_inverse_and_unitary(n, seed):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(2 * n) + 1j * rng.standard_normal(2 * n)
    np.testing.assert_allclose(idft(dft(v)), v, atol=1e-10)
    assert np.sum(np.abs(dft(v)) ** 2) == pytest.approx(np.sum(np.abs(v) ** 2), rel=1e-10)


def test_dft_matches_unitary_matrix():
    rng = np.random.default_rng(11)
    for _ in range(100):
        m = 2 * int(rng.integers(1, 65))
        j, k = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
        w = np.exp(-2j * np.pi * ((j * k) % m) / m) / np.sqrt(m)
        v = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        np.testing.assert_allclose(dft(v), w @ v, rtol=0, atol=1e-12)
        np.testing.assert_allclose(idft(v), w.conj().T @ v, rtol=0, atol=1e-12)


def test_dft_of_impulse_is_flat():
    v = np.zeros(8)
    v[0] = 1.0
    np.testing.assert_allclose(dft(v), np.full(8, 1 / np.sqrt(8)))


def test_transforms_reject_bad_input():
    with pytest.raises(SpectralError):
        dft(np.zeros((2, 2)))
    with pytest.raises(SpectralError):
        idft(np.array([]))
    with pytest.raises(SpectralError):
        dft(np.array([1.0, np.nan]))


@given(n=halves, seed=seeds)
def test_real_signal_has_hermitian_spectrum(n, seed):
    x = np.random.default_rng(seed).standard_normal(2 * n)
    assert hermitian_check(dft(x))


def test_hermitian_check_detects_broken_symmetry():
    x = dft(np.arange(8.0))
    x[1] += 0.5
    assert not hermitian_check(x)
    y = dft(np.arange(8.0))
    y[0] += 1j
    assert not hermitian_check(y)


def test_hermitian_check_odd_length_raises():
    with pytest.raises(SpectralError):
        hermitian_check(np.ones(5))


def test_hermitian_check_all_zero_is_symmetric():
    assert hermitian_check(np.zeros(6, dtype=complex))


@pytest.mark.parametrize("scale", [1e-20, 1.0, 1e20])
def test_hermitian_check_is_scale_invariant(scale):
    x = dft(np.arange(8.0)) * scale
    assert hermitian_check(x)
    x[2] += 1e-9 * scale
    assert not hermitian_check(x)


@given(n=halves, seed=seeds)
def test_hermitian_extend_yields_real_time_signal(n, seed):
    rng = np.random.default_rng(seed)
    half = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    full = hermitian_extend(half)
    assert full.size == 2 * n
    assert hermitian_check(full)
    np.testing.assert_allclose(full[1:n], half[1:n])
    assert np.max(np.abs(idft(full).imag)) < 1e-12


def test_zero_pad():
    out = zero_pad(np.array([1.0, 2.0]), 5)
    np.testing.assert_array_equal(out, [1.0, 2.0, 0.0, 0.0, 0.0])
    with pytest.raises(SpectralError):
        zero_pad(np.ones(4), 3)


def test_real_part_rejects_complex_residue():
    with pytest.raises(SpectralError):
        real_part(np.array([1.0 + 0.1j, 2.0]))
    np.testing.assert_array_equal(real_part(np.array([1.0 + 1e-15j])), [1.0])


@settings(max_examples=50)
@given(n=st.integers(min_value=1, max_value=32), eta=st.integers(min_value=1, max_value=8), seed=seeds)
def test_reconstruct_preserves_lattice_samples(n, eta, seed):
    x = np.random.default_rng(seed).standard_normal(2 * n)
    dense = reconstruct(dft(x), eta)
    assert dense.size == 2 * n * eta
    np.testing.assert_allclose(dense[::eta], x, atol=1e-10)


def test_reconstruct_eta_one_is_plain_inverse():
    x = np.random.default_rng(3).standard_normal(16)
    np.testing.assert_allclose(reconstruct(dft(x), 1), x, atol=1e-12)


def test_reconstruct_rejects_bad_arguments():
    with pytest.raises(SpectralError):
        reconstruct(np.array([1.0, 1.0j, 0.0, 1.0]), 2)
    with pytest.raises(SpectralError):
        reconstruct(dft(np.ones(4)), 0)
    with pytest.raises(SpectralError):
        reconstruct(dft(np.ones(4)), 1.5)


@settings(max_examples=30)
@given(n=st.integers(min_value=1, max_value=16), eta=st.integers(min_value=1, max_value=6), seed=seeds)
def test_sinc_interpolation_matches_zero_insertion(n, eta, seed):
    x = np.random.default_rng(seed).standard_normal(2 * n)
    np.testing.assert_allclose(periodic_sinc_interpolate(x, eta), reconstruct(dft(x), eta), atol=1e-9)


def test_reconstruct_of_single_tone_is_smooth_cosine():
    length, eta = 16, 4
    n = np.arange(length)
    x = np.cos(2 * np.pi * 3 * n / length)
    dense = reconstruct(dft(x), eta)
    t = np.arange(length * eta) / eta
    np.testing.assert_allclose(dense, np.cos(2 * np.pi * 3 * t / length), atol=1e-10)


# ----------------------------------------------------------------------------
# ChannelGrid
# ----------------------------------------------------------------------------
def test_grid_derived_quantities(fcc_grid):
    assert fcc_grid.n_bins == 256
    assert fcc_grid.bandwidth == pytest.approx(600e3)
    assert fcc_grid.delta_f == pytest.approx(1.2e6 / 256)
    assert fcc_grid.symbol_len == 286
    assert fcc_grid.symbol_duration == pytest.approx(286 / 1.2e6)


def test_grid_bin_frequencies_fold_upper_half():
    grid = ChannelGrid(4, 800.0)
    np.testing.assert_allclose(grid.bin_frequencies(), [0, 100, 200, 300, 400, 300, 200, 100])
    np.testing.assert_allclose(grid.one_sided_frequencies(), [0, 100, 200, 300, 400])


def test_grid_distance_axis():
    grid = ChannelGrid(4, 1e6)
    d = grid.distance_axis(8, 2e8, eta=2)
    assert d[2] == pytest.approx(2e8 * 1e-6 * 2 / 4)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"n_half": 0, "sample_rate": 1.0},
        {"n_half": 4, "sample_rate": 0.0},
        {"n_half": 4, "sample_rate": 1.0, "cp_len": -1},
        {"n_half": 4, "sample_rate": 1.0, "channel_len": 9},
    ],
)
def test_grid_validation(kwargs):
    with pytest.raises(SpectralError):
        ChannelGrid(**kwargs)


def test_grid_copies():
    grid = ChannelGrid(8, 1e6, 4)
    assert grid.with_cp(12).cp_len == 12
    assert grid.with_channel_len(5).channel_len == 5
    assert grid.cp_len == 4
    assert "N=8" in grid.dump_state()
