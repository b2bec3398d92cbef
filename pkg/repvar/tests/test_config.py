#!/usr/bin/env python3
"""
Unit tests for configuration module.

Tests constants, oracle defaults, enums and bundled fixtures.
"""

import unittest

from ..utils.config import (
    CandidateStatus, Certification, Config, DetectionRoute, Indecomposability,
    OutputFormat, PipelineMode, TaskState,
)


class TestConfig(unittest.TestCase):
    """Test cases for Config class."""

    def test_oracle_defaults(self):
        """Test oracle defaults mirror the constants."""
        defaults = Config.get_oracle_defaults()

        self.assertEqual(defaults['prime'], Config.LARGE_PRIME)
        self.assertEqual(defaults['hereditary_prime'], Config.HEREDITARY_PRIME)
        self.assertEqual(defaults['small_primes'], [5, 7])
        self.assertEqual(defaults['samples'], 12)
        self.assertEqual(defaults['decomposition_rounds'], 3)

    def test_oracle_defaults_are_fresh(self):
        """Test each call returns an independent dictionary."""
        first = Config.get_oracle_defaults()
        first['small_primes'].append(11)
        self.assertEqual(Config.get_oracle_defaults()['small_primes'], [5, 7])

    def test_fixtures_exist(self):
        """Test bundled algebra files are present."""
        for name in ("kronecker", "a2", "chain7", "chain7_l3", "two_cycle", "bipartite23", "local_r2", "local_r3"):
            with self.subTest(name=name):
                self.assertTrue(Config.fixture(name).exists())

    def test_pipeline_modes(self):
        """Test PipelineMode values match the CLI choices."""
        self.assertEqual(PipelineMode("rad-square-zero"), PipelineMode.RAD_SQUARE_ZERO)
        self.assertEqual(PipelineMode.AUTO.value, "auto")

    def test_report_enums(self):
        """Test report enum values."""
        self.assertEqual(DetectionRoute.GAMMA_CERTIFIED.value, "gamma-certified")
        self.assertEqual(Certification.FP_SPECIALIZATION.value, "F_p-specialization")
        self.assertEqual(Indecomposability.UNKNOWN.value, "unknown")
        self.assertEqual(CandidateStatus.UNDECIDED.value, "undecided")
        self.assertEqual(OutputFormat.STRUCTURED.value, "structured")

    def test_task_states(self):
        """Test TaskState enum."""
        self.assertEqual(TaskState.PENDING.value, "pending")
        self.assertEqual(TaskState.DONE.value, "done")
        self.assertEqual(TaskState.ERROR.value, "error")


if __name__ == '__main__':
    unittest.main()
