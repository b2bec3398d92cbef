#!/usr/bin/env python3
"""
Oracle settings management for repvar.

Loads and saves the sampling/search parameters of the randomized oracles
with validation against typed defaults.
"""

import json
import logging
from pathlib import Path
from typing import Dict, Any, Optional

from .config import Config


logger = logging.getLogger(__name__)


class OracleSettings:
    """
    Oracle settings store.

    Every pipeline reads its primes, sample counts, seeds and caps from an
    instance of this class. Values are validated against the type of the
    corresponding default.
    """

    DEFAULTS = Config.get_oracle_defaults()

    def __init__(self, settings_file: Optional[Path] = None, load: bool = False):
        """
        Initialize the settings store.

        Args:
            settings_file: Path to a JSON settings file (uses default if None)
            load: Read the file immediately
        """
        self.settings_file = Path(settings_file) if settings_file else Config.SETTINGS_FILE
        self._values: Dict[str, Any] = self._defaults()
        if load:
            self.load()

    @classmethod
    def _defaults(cls) -> Dict[str, Any]:
        values = dict(cls.DEFAULTS)
        values["small_primes"] = list(cls.DEFAULTS["small_primes"])
        return values

    def load(self) -> bool:
        """
        Load settings from file.

        Returns:
            bool: True if loaded successfully
        """
        if not self.settings_file.exists():
            logger.info(f"No settings file at {self.settings_file}, using defaults")
            self._values = self._defaults()
            return False

        try:
            with open(self.settings_file, 'r', encoding='utf-8') as f:
                loaded = json.load(f)

            if not isinstance(loaded, dict):
                logger.error(f"Settings file {self.settings_file} does not hold an object")
                self._values = self._defaults()
                return False

            self._values = self._defaults()
            for key, value in loaded.items():
                try:
                    self.set(key, value)
                except (ValueError, TypeError) as e:
                    logger.warning(f"Ignoring setting from file: {e}")

            logger.info(f"Loaded settings from {self.settings_file}")
            return True

        except json.JSONDecodeError as e:
            logger.error(f"Invalid JSON in settings file: {e}")
            self._values = self._defaults()
            return False
        except OSError as e:
            logger.error(f"Error reading settings file: {e}")
            self._values = self._defaults()
            return False

    def save(self) -> bool:
        """
        Save settings to file.

        Returns:
            bool: True if saved successfully
        """
        try:
            self.settings_file.parent.mkdir(parents=True, exist_ok=True)
            temp_file = self.settings_file.with_suffix('.tmp')

            with open(temp_file, 'w', encoding='utf-8') as f:
                json.dump(self._values, f, indent=2, sort_keys=True)

            temp_file.replace(self.settings_file)
            logger.info(f"Saved settings to {self.settings_file}")
            return True

        except OSError as e:
            logger.error(f"Error writing settings: {e}")
            return False

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a setting value.

        Args:
            key: Setting key
            default: Value returned for unknown keys

        Returns:
            Setting value or default
        """
        return self._values.get(key, default)

    def set(self, key: str, value: Any) -> None:
        """
        Set a setting value.

        Args:
            key: Setting key
            value: New value

        Raises:
            ValueError: If key is unknown or the value is out of range
            TypeError: If the value has the wrong type
        """
        if key not in self.DEFAULTS:
            raise ValueError(f"Unknown setting key: {key}")

        expected_type = type(self.DEFAULTS[key])
        # bool is an int subclass; keep them apart
        if not isinstance(value, expected_type) or isinstance(value, bool):
            raise TypeError(
                f"Invalid type for '{key}': expected {expected_type}, got {type(value)}"
            )

        if key == "small_primes":
            if not value or not all(isinstance(p, int) and p >= 2 for p in value):
                raise ValueError("small_primes must be a non-empty list of primes")
            value = list(value)
        elif key != "seed" and value < 1:
            raise ValueError(f"Setting '{key}' must be positive, got {value}")

        self._values[key] = value
        logger.debug(f"Set setting '{key}' = {value}")

    def update(self, values: Dict[str, Any]) -> None:
        """
        Update several settings; invalid entries are skipped with a warning.

        Args:
            values: Mapping of setting keys to new values
        """
        for key, value in values.items():
            try:
                self.set(key, value)
            except (ValueError, TypeError) as e:
                logger.warning(f"Skipping invalid setting update: {e}")

    def reset(self) -> None:
        """Reset all settings to defaults."""
        self._values = self._defaults()
        logger.info("Reset settings to defaults")

    def get_all(self) -> Dict[str, Any]:
        """
        Get all settings.

        Returns:
            Dictionary of all settings
        """
        values = dict(self._values)
        values["small_primes"] = list(values["small_primes"])
        return values

    def __getitem__(self, key: str) -> Any:
        """Allow dictionary-style access."""
        if key not in self._values:
            raise KeyError(key)
        return self._values[key]

    def __setitem__(self, key: str, value: Any) -> None:
        """Allow dictionary-style setting."""
        self.set(key, value)

    def __contains__(self, key: str) -> bool:
        """Check if setting key exists."""
        return key in self._values
