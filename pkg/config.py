import os
from dotenv import load_dotenv

load_dotenv()


def _env_bool(name, default):
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


class Config:
    """Central configuration for the Lorentzian symmetric function tester"""

    # Logging
    LOG_LEVEL = os.getenv("SYMLOR_LOG_LEVEL", "INFO").upper()

    # Seed shared by the random samplers (tests and bench)
    RANDOM_SEED = int(os.getenv("SYMLOR_SEED", "20240611"))

    # Desk-scale limits for the brute-force paths
    ORACLE_MAX_VARS = int(os.getenv("SYMLOR_ORACLE_MAX_VARS", "8"))
    ORACLE_MAX_DEGREE = int(os.getenv("SYMLOR_ORACLE_MAX_DEGREE", "6"))
    CHROMATIC_MAX_VERTICES = int(os.getenv("SYMLOR_CHROMATIC_MAX_VERTICES", "8"))
    DUAL_CAUCHY_MAX_CELLS = int(os.getenv("SYMLOR_DUAL_CAUCHY_MAX_CELLS", "20"))

    # Degree-3 region sampling: steps per side of the simplex a+b+c=1
    REGION_STEPS = int(os.getenv("SYMLOR_REGION_STEPS", "140"))

    # Variable counts used by the bench command
    BENCH_NVARS = tuple(
        int(n) for n in os.getenv("SYMLOR_BENCH_NVARS", "10,100,1000").split(",") if n.strip()
    )

    # Progress bars for long sweeps
    SHOW_PROGRESS = _env_bool("SYMLOR_SHOW_PROGRESS", "false")

    @classmethod
    def validate(cls):
        """Validate that configuration values are usable"""
        if cls.LOG_LEVEL not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(
                f"Unknown log level '{cls.LOG_LEVEL}'. "
                "Set SYMLOR_LOG_LEVEL to DEBUG, INFO, WARNING, ERROR or CRITICAL."
            )

        limits = {
            "SYMLOR_ORACLE_MAX_VARS": cls.ORACLE_MAX_VARS,
            "SYMLOR_ORACLE_MAX_DEGREE": cls.ORACLE_MAX_DEGREE,
            "SYMLOR_CHROMATIC_MAX_VERTICES": cls.CHROMATIC_MAX_VERTICES,
            "SYMLOR_DUAL_CAUCHY_MAX_CELLS": cls.DUAL_CAUCHY_MAX_CELLS,
            "SYMLOR_REGION_STEPS": cls.REGION_STEPS,
        }
        for name, value in limits.items():
            if value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value}.")

        if not cls.BENCH_NVARS or min(cls.BENCH_NVARS) < 1:
            raise ValueError(
                "SYMLOR_BENCH_NVARS must be a comma-separated list of positive integers."
            )
