import json

import pytest

from settings import DEFAULT_SETTINGS, Settings, load_settings, save_settings


def test_defaults():
    assert DEFAULT_SETTINGS.tol == 1e-12
    assert DEFAULT_SETTINGS.dps >= 30
    assert DEFAULT_SETTINGS.verify_bound == 1e-9


def test_missing_default_file_gives_defaults(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert load_settings() == DEFAULT_SETTINGS


def test_save_and_load_toml(tmp_path):
    path = tmp_path / "settings.toml"
    custom = DEFAULT_SETTINGS.replace(tol=1e-10, panel_budget=512)
    save_settings(custom, path)
    assert load_settings(path) == custom


def test_load_json(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"dps": 60, "delta_pole": 1e-4}), encoding="utf-8")
    loaded = load_settings(path)
    assert loaded.dps == 60
    assert loaded.delta_pole == 1e-4
    assert loaded.tol == DEFAULT_SETTINGS.tol


def test_unknown_key(tmp_path):
    path = tmp_path / "settings.toml"
    path.write_text("tolerance = 1e-9\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_settings(path)


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_settings(tmp_path / "nothing.toml")


@pytest.mark.parametrize(
    "changes",
    [{"tol": 0}, {"eps_switch": -1.0}, {"delta_pole": 1.5}, {"panel_budget": 0}, {"dps": 15}, {"eps_m": -1.0}],
)
def test_invalid_values(changes):
    with pytest.raises(ValueError):
        Settings(**changes)


def test_replace_keeps_other_values():
    changed = DEFAULT_SETTINGS.replace(tol=1e-8)
    assert changed.tol == 1e-8
    assert changed.dps == DEFAULT_SETTINGS.dps
    assert DEFAULT_SETTINGS.tol == 1e-12
