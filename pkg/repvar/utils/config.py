#!/usr/bin/env python3
"""
Configuration module for repvar.
Contains all constants, defaults and shared enumerations.
"""

from pathlib import Path
from enum import Enum


class TaskState(Enum):
    """Worker task state enumeration."""
    PENDING = "pending"
    RUNNING = "running"
    DONE = "done"
    ERROR = "error"


class PipelineMode(Enum):
    """Component pipeline selection."""
    AUTO = "auto"
    LOCAL = "local"
    ACYCLIC = "acyclic"
    RAD_SQUARE_ZERO = "rad-square-zero"
    GENERAL = "general"


class DetectionRoute(Enum):
    """How a component was detected."""
    LOCAL = "local"
    ACYCLIC_THETA = "acyclic-theta"
    RAD_SQUARE_ZERO = "rad-square-zero"
    THETA_MINIMAL = "theta-minimal"
    GAMMA_CERTIFIED = "gamma-certified"


class Certification(Enum):
    """Strength of a component claim."""
    EXACT = "exact"
    FP_SPECIALIZATION = "F_p-specialization"


class Indecomposability(Enum):
    """Sampled indecomposability flag of a generic module."""
    GENERIC_INDECOMPOSABLE = "generic-indecomposable (probabilistic)"
    DECOMPOSES = "decomposes"
    UNKNOWN = "unknown"


class CandidateStatus(Enum):
    """Outcome of a rigidity test in the general pipeline."""
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    UNDECIDED = "undecided"


class OutputFormat(Enum):
    """Report rendering."""
    TEXT = "text"
    STRUCTURED = "structured"


class Config:
    """Main configuration class with all settings."""

    # Application info
    APP_NAME = "repvar"
    APP_VERSION = "0.3.0"
    APP_DESCRIPTION = "Irreducible components of module varieties over truncated path algebras"

    # Primes
    LARGE_PRIME = 10007  # sampling invariants, specialization
    HEREDITARY_PRIME = 32003
    SMALL_PRIMES = (5, 7)  # exhaustive filtration search

    # Sampling
    DEFAULT_SEED = 0
    DEFAULT_SAMPLES = 12
    SPECIALIZATION_RETRIES = 20
    DECOMPOSITION_ROUNDS = 3  # doubling rounds for canonical decomposition
    FITTING_ATTEMPTS = 6  # endomorphism samples before declaring a summand indecomposable
    GAMMA_TRIALS = 3  # specializations per prime in a rigidity test
    EXTENSION_DEGREE = 2  # re-search over F_{p^k} after a negative F_p search

    # Caps
    SEQUENCE_CAP = 10 ** 7
    FILTRATION_CAP = 200000  # subspaces visited per search

    # Parallelism
    WORKERS = 1

    # Files
    HOME_DIR = Path.home()
    SETTINGS_FILE = HOME_DIR / ".repvar_settings.json"
    DATA_DIR = Path(__file__).resolve().parent.parent / "data"

    @classmethod
    def fixture(cls, name: str) -> Path:
        """
        Path of a bundled algebra file.

        Args:
            name: File stem, e.g. "kronecker"

        Returns:
            Path: Location of ``<name>.alg`` in the data directory
        """
        return cls.DATA_DIR / f"{name}.alg"

    @classmethod
    def get_oracle_defaults(cls):
        """
        Default oracle parameters, keyed as in the settings file.

        Returns:
            dict: Settings defaults
        """
        return {
            "seed": cls.DEFAULT_SEED,
            "samples": cls.DEFAULT_SAMPLES,
            "prime": cls.LARGE_PRIME,
            "hereditary_prime": cls.HEREDITARY_PRIME,
            "small_primes": list(cls.SMALL_PRIMES),
            "specialization_retries": cls.SPECIALIZATION_RETRIES,
            "decomposition_rounds": cls.DECOMPOSITION_ROUNDS,
            "fitting_attempts": cls.FITTING_ATTEMPTS,
            "gamma_trials": cls.GAMMA_TRIALS,
            "extension_degree": cls.EXTENSION_DEGREE,
            "sequence_cap": cls.SEQUENCE_CAP,
            "filtration_cap": cls.FILTRATION_CAP,
            "workers": cls.WORKERS,
        }
