#!/usr/bin/env python3
"""
Unit tests for settings module.

Tests settings loading, saving, and validation.
"""

import json
import unittest
import tempfile
from pathlib import Path

from ..utils.config import Config
from ..utils.settings import OracleSettings


class TestOracleSettings(unittest.TestCase):
    """Test cases for OracleSettings class."""

    def setUp(self):
        """Set up test fixtures."""
        self.temp_dir = tempfile.TemporaryDirectory()
        self.temp_file = Path(self.temp_dir.name) / "settings.json"
        self.settings = OracleSettings(self.temp_file)

    def tearDown(self):
        """Clean up after tests."""
        self.temp_dir.cleanup()

    def test_get_default_value(self):
        """Test getting default values."""
        self.assertEqual(self.settings.get("prime"), Config.LARGE_PRIME)
        self.assertEqual(self.settings.get("small_primes"), list(Config.SMALL_PRIMES))

    def test_set_and_get(self):
        """Test setting and getting values."""
        self.settings.set("samples", 24)
        self.assertEqual(self.settings.get("samples"), 24)

    def test_save_and_load(self):
        """Test saving and loading settings."""
        self.settings.set("seed", 17)
        self.settings.set("small_primes", [3, 11])
        self.assertTrue(self.settings.save())

        reloaded = OracleSettings(self.temp_file, load=True)
        self.assertEqual(reloaded.get("seed"), 17)
        self.assertEqual(reloaded.get("small_primes"), [3, 11])

    def test_saved_file_is_sorted_json(self):
        """Test the settings file is deterministic JSON."""
        self.settings.save()
        data = json.loads(self.temp_file.read_text(encoding='utf-8'))
        self.assertEqual(list(data), sorted(data))
        self.assertFalse(self.temp_file.with_suffix('.tmp').exists())

    def test_load_missing_file(self):
        """Test loading a missing file falls back to defaults."""
        self.assertFalse(self.settings.load())
        self.assertEqual(self.settings.get_all(), Config.get_oracle_defaults())

    def test_load_malformed_file(self):
        """Test loading malformed JSON falls back to defaults."""
        self.temp_file.write_text("{not json", encoding='utf-8')
        self.assertFalse(self.settings.load())
        self.assertEqual(self.settings.get("prime"), Config.LARGE_PRIME)

    def test_load_skips_invalid_entries(self):
        """Test invalid file entries are ignored individually."""
        self.temp_file.write_text(json.dumps({"samples": "many", "seed": 5}), encoding='utf-8')
        self.assertTrue(self.settings.load())
        self.assertEqual(self.settings.get("samples"), Config.DEFAULT_SAMPLES)
        self.assertEqual(self.settings.get("seed"), 5)

    def test_invalid_key(self):
        """Test setting invalid key raises error."""
        with self.assertRaises(ValueError):
            self.settings.set("invalid_key", 1)

    def test_invalid_type(self):
        """Test setting invalid type raises error."""
        with self.assertRaises(TypeError):
            self.settings.set("samples", "twelve")
        with self.assertRaises(TypeError):
            self.settings.set("samples", True)

    def test_out_of_range(self):
        """Test non-positive counts and bad prime lists are rejected."""
        with self.assertRaises(ValueError):
            self.settings.set("samples", 0)
        with self.assertRaises(ValueError):
            self.settings.set("small_primes", [])
        with self.assertRaises(ValueError):
            self.settings.set("small_primes", [1])

    def test_update_multiple(self):
        """Test updating multiple settings."""
        self.settings.update({"samples": 30, "gamma_trials": 5, "bogus": 1})

        self.assertEqual(self.settings.get("samples"), 30)
        self.assertEqual(self.settings.get("gamma_trials"), 5)
        self.assertNotIn("bogus", self.settings)

    def test_reset_to_defaults(self):
        """Test resetting to default values."""
        self.settings.set("prime", 101)
        self.settings.reset()

        self.assertEqual(self.settings.get("prime"), Config.LARGE_PRIME)

    def test_get_all_is_a_copy(self):
        """Test get_all does not expose internal state."""
        values = self.settings.get_all()
        values["small_primes"].append(13)
        self.assertEqual(self.settings.get("small_primes"), list(Config.SMALL_PRIMES))

    def test_dictionary_access(self):
        """Test dictionary-style access."""
        self.settings["filtration_cap"] = 500
        self.assertEqual(self.settings["filtration_cap"], 500)
        with self.assertRaises(KeyError):
            self.settings["nonexistent"]

    def test_contains(self):
        """Test __contains__ method."""
        self.assertIn("seed", self.settings)
        self.assertNotIn("nonexistent", self.settings)


if __name__ == '__main__':
    unittest.main()
