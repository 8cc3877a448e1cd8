"""Band presets, value parsers and scenario files."""

import json

import numpy as np
import pytest

from hsofdmtdr.config import (
    PRESETS,
    ScenarioConfig,
    dump_config,
    get_preset,
    load_config,
    preset_table,
)
from hsofdmtdr.config.parsing import format_bin_range, parse_bin_range, parse_int_list, parse_quantity
from hsofdmtdr.core.errors import ConfigError
from hsofdmtdr.network.cable import LV_VELOCITY

# ----------------------------------------------------------------------------
# Presets
# ----------------------------------------------------------------------------
@pytest.mark.parametrize(
    "name, fs, first, last, n_active, cp_long",
    [
        ("fcc", 1.2e6, 3, 104, 102, 52),
        ("arib", 1.2e6, 3, 96, 94, 52),
        ("cenelec", 0.4e6, 2, 95, 94, None),
    ],
)
def test_band_presets(name, fs, first, last, n_active, cp_long):
    p = get_preset(name)
    assert p.sample_rate_hz == fs
    assert p.fft_size == 256 and p.n_half == 128
    assert p.active_range == (first, last)
    assert p.n_active == n_active
    assert p.cp_standard == 30
    assert p.cp_long == cp_long
    np.testing.assert_array_equal(p.active_bins(), np.arange(first, last + 1))
    grid = p.grid()
    assert grid.sample_rate == fs and grid.cp_len == 30


def test_long_prefix_only_where_defined():
    assert PRESETS["fcc"].grid("long").cp_len == 52
    with pytest.raises(ConfigError) as info:
        PRESETS["cenelec"].cp_len("long")
    assert info.value.field == "cp"
    with pytest.raises(ConfigError):
        PRESETS["fcc"].cp_len("short")


def test_preset_lookup():
    assert get_preset("FCC") is PRESETS["fcc"]
    with pytest.raises(ConfigError) as info:
        get_preset("etsi")
    assert info.value.field == "preset"


def test_preset_table_rows():
    table = preset_table()
    assert [row["name"] for row in table] == ["FCC", "ARIB", "CENELEC"]
    assert table[0]["band_khz"] == [10.0, 490.0]
    assert table[2]["cp_long"] is None
    json.dumps(table)


# ----------------------------------------------------------------------------
# Value parsers
# ----------------------------------------------------------------------------
@pytest.mark.parametrize(
    "text, expected",
    [("1.2M", 1.2e6), ("480k", 480e3), ("30u", 30e-6), ("5m", 5e-3), (" 2.5 ", 2.5), (7, 7.0), ("-3e2", -300.0)],
)
def test_parse_quantity(text, expected):
    assert parse_quantity(text) == pytest.approx(expected)


@pytest.mark.parametrize("bad", ["1.2X", "M", "", True])
def test_parse_quantity_rejects(bad):
    with pytest.raises(ConfigError):
        parse_quantity(bad, field="f")


def test_bin_ranges():
    assert parse_bin_range("3-104") == (3, 104)
    assert parse_bin_range("3..104") == (3, 104)
    assert parse_bin_range("7") == (7, 7)
    assert parse_bin_range([2, 95]) == (2, 95)
    assert format_bin_range(3, 104) == "3-104"
    assert format_bin_range(7, 7) == "7"
    for bad in ("104-3", "a-b", [1, 2, 3]):
        with pytest.raises(ConfigError):
            parse_bin_range(bad)


def test_int_lists():
    assert parse_int_list("64, 256,1024") == [64, 256, 1024]
    assert parse_int_list([1, 2]) == [1, 2]
    with pytest.raises(ConfigError):
        parse_int_list("")
    with pytest.raises(ConfigError):
        parse_int_list("1,x")


# ----------------------------------------------------------------------------
# Scenario
# ----------------------------------------------------------------------------
def test_default_scenario_builds():
    cfg = ScenarioConfig()
    cfg.validate()
    grid = cfg.build_grid()
    assert (grid.n_half, grid.cp_len) == (128, 30)
    assert cfg.occupied_bandwidth() == 480e3
    assert cfg.ports() == ["feeder", "feeder", "tap", "tap"]
    assert cfg.symbol_count(grid) == 10_000
    assert cfg.build_network().plm_impedance == 50.0


def test_scenario_round_trip_is_stable():
    cfg = ScenarioConfig.from_dict({
        "preset": "arib",
        "cp": "long",
        "active_subcarriers": "4..90",
        "sample_rate_hz": "1.2M",
        "scheme": "cdma",
        "plm_ports": ["feeder", "tap"],
        "slot_order": [1, 0],
        "noise": {"floor_dbm_hz": -95, "enabled": True},
        "window": "hann",
        "seed": 11,
    })
    assert cfg.active_subcarriers == "4-90"
    assert cfg.sample_rate_hz == 1.2e6
    assert cfg.noise.floor_dbm_hz == -95.0
    assert cfg.slot_order == (1, 0)
    assert cfg.to_dict()["slot_order"] == [1, 0]
    assert ScenarioConfig.from_dict(cfg.to_dict()) == cfg
    text = dump_config(cfg)
    assert dump_config(ScenarioConfig.from_dict(json.loads(text))) == text


@pytest.mark.parametrize(
    "data, field",
    [
        ({"colour": "red"}, "colour"),
        ({"seed": "abc"}, "seed"),
        ({"seed": True}, "seed"),
        ({"shared_channel": "yes"}, "shared_channel"),
        ({"noise": {"hum": 50}}, "noise.hum"),
        ({"noise": {"enabled": 1}}, "noise.enabled"),
        ({"preset": None}, "preset"),
        ({"active_subcarriers": "3-200"}, "active_subcarriers"),
        ({"cable": "hv"}, "cable"),
        ({"eta": 0}, "eta"),
        ({"alpha": 1.5}, "alpha"),
        ({"cp": "long", "preset": "cenelec"}, "cp"),
        ({"plm_ports": "feeder"}, "plm_ports"),
        ({"fft_size": 255}, "fft_size"),
        ({"slot_order": [0, 1, 2]}, "slot_order"),
        ({"slot_order": [0, 1, 1, 3]}, "slot_order"),
        ({"slot_order": [0, 1, 2, 4]}, "slot_order"),
        ({"slot_order": "0123"}, "slot_order"),
        ({"slot_order": [0, 1, True, 3]}, "slot_order"),
    ],
)
def test_scenario_errors_name_the_field(data, field):
    with pytest.raises(ConfigError) as info:
        ScenarioConfig.from_dict(data)
    assert info.value.field == field
    assert info.value.to_dict()["field"] == field


def test_scenario_rejects_unknown_scheme_and_method():
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict({"scheme": "ofdma"})
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict({"method": "music"})
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict([1, 2])


def test_overrides_skip_missing_flags():
    cfg = ScenarioConfig(seed=4).with_overrides(seed=None, eta=8, alpha=None)
    assert (cfg.seed, cfg.eta, cfg.alpha) == (4, 8, 0.9)
    with pytest.raises(ConfigError):
        ScenarioConfig().with_overrides(eta=0)


def test_velocity_and_symbol_count():
    cfg = ScenarioConfig(cable="lv", duration_s=0.01)
    grid = cfg.build_grid()
    assert cfg.velocity() == LV_VELOCITY
    assert cfg.symbol_count(grid) == int(0.01 / grid.symbol_duration)
    assert ScenarioConfig(velocity_m_s=1.9e8).velocity() == 1.9e8


def test_custom_network_scenario():
    cfg = ScenarioConfig.from_dict({
        "network": {
            "name": "root",
            "segments": [{"cable": "lv", "length_m": 120.0, "node": {"name": "end", "load": "open"}}],
        },
        "plm_impedance_ohm": 75,
    })
    net = cfg.build_network()
    assert net.node_count == 2
    assert net.plm_impedance == 75.0
    assert cfg.ports() == ["root"]
    with pytest.raises(ConfigError) as info:
        ScenarioConfig(network="city_grid").build_network()
    assert info.value.field == "network"
    with pytest.raises(ConfigError):
        ScenarioConfig(network={"segments": []}).build_network()


def test_noise_settings_model(fcc_grid):
    assert np.all(ScenarioConfig.from_dict({"noise": {"enabled": False}}).noise.model().variances(fcc_grid) == 0)
    louder = ScenarioConfig.from_dict({"noise": {"floor_dbm_hz": -80}}).noise.model()
    quieter = ScenarioConfig().noise.model()
    assert np.all(louder.variances(fcc_grid) > quieter.variances(fcc_grid))


# ----------------------------------------------------------------------------
# Files
# ----------------------------------------------------------------------------
def test_load_config_reads_file(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps({"preset": "cenelec", "seed": 3}), encoding="utf-8")
    cfg = load_config(path)
    assert cfg.preset == "cenelec" and cfg.seed == 3


def test_load_config_reports_json_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "seed": 1,\n}\n', encoding="utf-8")
    with pytest.raises(ConfigError) as info:
        load_config(path)
    assert (info.value.line, info.value.column) == (3, 1)
    assert "line 3" in str(info.value)


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.json")
