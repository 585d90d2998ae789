"""Tests for settings_store.py - persistent user defaults."""

import json
from pathlib import Path
from unittest.mock import MagicMock

from pseudocat_workbench import config
from pseudocat_workbench.settings_store import (
    KNOWN_DEFAULTS,
    effective_defaults,
    load_settings,
    save_settings,
)


class TestLoadSettings:
    """Tests for load_settings function."""

    def test_missing_file_gives_empty_dict(self, monkeypatch):
        mock_path = MagicMock(spec=Path)
        mock_path.is_file.return_value = False
        monkeypatch.setattr("pseudocat_workbench.settings_store.SETTINGS_FILE", mock_path)

        assert load_settings() == {}
        mock_path.is_file.assert_called_once()

    def test_valid_file_is_returned(self, monkeypatch, tmp_path):
        settings_file = tmp_path / "settings.json"
        settings_file.write_text(json.dumps({"search_bound": 100}), encoding="utf-8")
        monkeypatch.setattr("pseudocat_workbench.settings_store.SETTINGS_FILE", settings_file)

        assert load_settings() == {"search_bound": 100}

    def test_invalid_json_is_logged(self, monkeypatch, tmp_path, caplog):
        settings_file = tmp_path / "settings.json"
        settings_file.write_text("{not json", encoding="utf-8")
        monkeypatch.setattr("pseudocat_workbench.settings_store.SETTINGS_FILE", settings_file)

        assert load_settings() == {}
        assert "Could not read saved settings:" in caplog.text

    def test_non_object_is_ignored(self, monkeypatch, tmp_path, caplog):
        settings_file = tmp_path / "settings.json"
        settings_file.write_text("[1, 2]", encoding="utf-8")
        monkeypatch.setattr("pseudocat_workbench.settings_store.SETTINGS_FILE", settings_file)

        assert load_settings() == {}
        assert "not an object" in caplog.text

    def test_io_error_is_logged(self, monkeypatch, caplog):
        mock_path = MagicMock(spec=Path)
        mock_path.is_file.return_value = True
        mock_path.read_text.side_effect = OSError("disk gone")
        monkeypatch.setattr("pseudocat_workbench.settings_store.SETTINGS_FILE", mock_path)

        assert load_settings() == {}
        assert "disk gone" in caplog.text


class TestSaveSettings:
    """Tests for save_settings function."""

    def test_round_trip_through_disk(self, monkeypatch, tmp_path):
        settings_file = tmp_path / "nested" / "settings.json"
        monkeypatch.setattr("pseudocat_workbench.settings_store.SETTINGS_FILE", settings_file)

        assert save_settings({"hcomp_variant": "w2"}) is True
        assert settings_file.is_file()
        assert load_settings() == {"hcomp_variant": "w2"}

    def test_unserializable_value_returns_false(self, monkeypatch, tmp_path, caplog):
        settings_file = tmp_path / "settings.json"
        monkeypatch.setattr("pseudocat_workbench.settings_store.SETTINGS_FILE", settings_file)

        assert save_settings({"search_bound": object()}) is False
        assert "Could not save settings:" in caplog.text


class TestEffectiveDefaults:
    """Tests for merging user settings over the built-in defaults."""

    def test_no_settings_gives_builtin_defaults(self):
        assert effective_defaults() == KNOWN_DEFAULTS
        assert effective_defaults({})["search_bound"] == config.DEFAULT_SEARCH_BOUND

    def test_known_keys_override(self):
        merged = effective_defaults(
            {"search_bound": 42, "span_size": 3, "hcomp_variant": "w2", "json": True}
        )
        assert merged == {"search_bound": 42, "span_size": 3, "hcomp_variant": "w2", "json": True}

    def test_unknown_keys_are_dropped(self):
        merged = effective_defaults({"colour": "blue"})
        assert "colour" not in merged

    def test_bad_values_fall_back(self, caplog):
        merged = effective_defaults(
            {"search_bound": -1, "span_size": "big", "hcomp_variant": "w9", "json": "yes"}
        )
        assert merged == KNOWN_DEFAULTS
        assert "Ignoring setting 'search_bound'" in caplog.text
