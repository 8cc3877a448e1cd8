"""
hsofdmtdr.txrx - HS-OFDM transmitter/receiver chain.

Modules:
    - constellation: Gray-mapped BPSK/QPSK/8PSK.
    - mapping:       premap, hs_map, cyclic prefix, HsOfdmFrame.
    - noise:         Colored background noise and PSD/power conversions.
    - link:          channel_pass and StreamChannel (frequency or time-domain path).
"""

from hsofdmtdr.txrx.constellation import Constellation, Modulation, modulate
from hsofdmtdr.txrx.link import ChannelPath, Reception, StreamChannel, channel_pass
from hsofdmtdr.txrx.mapping import (
    HsOfdmFrame,
    add_cp,
    build_frame,
    hs_map,
    premap,
    remove_cp,
    unpack_premap,
)
from hsofdmtdr.txrx.noise import NoiseModel, default_noise_psd, gen_noise

__all__ = [
    "ChannelPath",
    "Constellation",
    "HsOfdmFrame",
    "Modulation",
    "NoiseModel",
    "Reception",
    "StreamChannel",
    "add_cp",
    "build_frame",
    "channel_pass",
    "default_noise_psd",
    "gen_noise",
    "hs_map",
    "modulate",
    "premap",
    "remove_cp",
    "unpack_premap",
]
