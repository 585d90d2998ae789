"""Persistent user defaults for pseudocat-workbench."""

import json
import logging
from typing import Any

from pseudocat_workbench import config

logger = logging.getLogger(__name__)

SETTINGS_FILE = config.APP_DIR / "settings.json"

# Keys understood by effective_defaults and the values used when absent
KNOWN_DEFAULTS: dict[str, Any] = {
    "search_bound": config.DEFAULT_SEARCH_BOUND,
    "span_size": config.DEFAULT_SPAN_SIZE,
    "hcomp_variant": config.DEFAULT_HCOMP_VARIANT,
    "json": False,
}


def load_settings() -> dict[str, Any]:
    """Load saved settings from disk, returning an empty dict on failure."""
    try:
        if SETTINGS_FILE.is_file():
            settings = json.loads(SETTINGS_FILE.read_text(encoding="utf-8"))
            if isinstance(settings, dict):
                return settings
            logger.error(f"Ignoring settings file that is not an object: {SETTINGS_FILE}")
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
        # OSError: File access errors
        # UnicodeDecodeError: Invalid UTF-8 encoding
        # JSONDecodeError: Invalid JSON format
        logger.error(f"Could not read saved settings: {e}")
    return {}


def save_settings(settings: dict[str, Any]) -> bool:
    """Persist settings to disk. Returns True on success, False otherwise."""
    try:
        SETTINGS_FILE.parent.mkdir(parents=True, exist_ok=True)
        SETTINGS_FILE.write_text(json.dumps(settings, indent=2), encoding="utf-8")
        return True
    except (OSError, TypeError, ValueError) as e:
        # OSError: File/directory write errors
        # TypeError: Non-serializable values in settings
        # ValueError: Circular references
        logger.error(f"Could not save settings: {e}")
        return False


def effective_defaults(settings: dict[str, Any] | None = None) -> dict[str, Any]:
    """Merge known keys of ``settings`` over the built-in defaults.

    Values of the wrong type or outside their range fall back to the default.
    """
    merged = dict(KNOWN_DEFAULTS)
    for key, value in (settings or {}).items():
        if key not in KNOWN_DEFAULTS:
            logger.debug(f"Ignoring unknown setting {key!r}")
            continue
        try:
            merged[key] = _coerce(key, value)
        except (TypeError, ValueError) as e:
            logger.warning(f"Ignoring setting {key!r}: {e}")
    return merged


def _coerce(key: str, value: Any) -> Any:
    if key == "search_bound":
        if not isinstance(value, int) or isinstance(value, bool):
            raise TypeError(f"expected an integer, got {value!r}")
        return config.resolve_search_bound(value)
    if key == "span_size":
        if not isinstance(value, int) or isinstance(value, bool):
            raise TypeError(f"expected an integer, got {value!r}")
        return config.resolve_span_size(value)
    if key == "hcomp_variant":
        if value not in config.HCOMP_VARIANTS:
            raise ValueError(f"expected one of {config.HCOMP_VARIANTS}, got {value!r}")
        return value
    if not isinstance(value, bool):
        raise TypeError(f"expected a boolean, got {value!r}")
    return value
