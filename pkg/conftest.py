"""Shared fixtures for the hsofdmtdr test suite."""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from hsofdmtdr.config.presets import PRESETS  # noqa: E402
from hsofdmtdr.core.grid import ChannelGrid  # noqa: E402
from hsofdmtdr.network.presets import lv_feeder, mv_line  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def fcc():
    return PRESETS["fcc"]


@pytest.fixture
def fcc_grid(fcc):
    return fcc.grid("standard")


@pytest.fixture
def small_grid():
    return ChannelGrid(n_half=16, sample_rate=1.2e6, cp_len=8)


@pytest.fixture
def mv_net():
    return mv_line()


@pytest.fixture
def lv_net():
    return lv_feeder()
