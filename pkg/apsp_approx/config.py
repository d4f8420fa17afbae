"""
Configuration management for the approximate APSP toolkit

Handles environment variables and tunable constants shared by the algorithm
modules and the command-line harness.
"""

import logging
import os
from typing import Optional

_LEVEL_NAMES = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class ApspConfig:
    """Configuration manager for the APSP toolkit"""

    def __init__(self):
        self._threads: Optional[int] = None
        self._log_level: Optional[str] = None
        self._bunch_const: Optional[float] = None
        self._pivot_const: Optional[float] = None
        self._hit_const: Optional[float] = None
        self._max_retries: Optional[int] = None
        self._problems = []
        self._load_config()

    def _load_config(self):
        """Load configuration from environment variables"""
        self._threads = self._read_int('APSP_THREADS', 0)
        self._log_level = os.getenv('APSP_LOG_LEVEL', 'INFO').upper()
        self._bunch_const = self._read_float('APSP_BUNCH_CONST', 4.0)
        self._pivot_const = self._read_float('APSP_PIVOT_CONST', 4.0)
        self._hit_const = self._read_float('APSP_HIT_CONST', 4.0)
        self._max_retries = self._read_int('APSP_MAX_RETRIES', 20)

    def _read_int(self, name: str, default: int) -> int:
        raw = os.getenv(name)
        if raw is None or raw.strip() == '':
            return default
        try:
            return int(raw)
        except ValueError:
            self._problems.append(f"{name}={raw!r} is not an integer; using {default}")
            return default

    def _read_float(self, name: str, default: float) -> float:
        raw = os.getenv(name)
        if raw is None or raw.strip() == '':
            return default
        try:
            return float(raw)
        except ValueError:
            self._problems.append(f"{name}={raw!r} is not a number; using {default}")
            return default

    @property
    def threads(self) -> int:
        """Requested worker cap (0 = auto)"""
        return self._threads

    @property
    def worker_count(self) -> int:
        """Resolved number of workers for multi-source sweeps"""
        if self._threads and self._threads > 0:
            return self._threads
        return os.cpu_count() or 1

    @property
    def log_level(self) -> int:
        if self._log_level in _LEVEL_NAMES:
            return getattr(logging, self._log_level)
        return logging.INFO

    @property
    def bunch_const(self) -> float:
        """c_B in the bunch/cluster bound c_B * log(n) / p"""
        return self._bunch_const

    @property
    def pivot_const(self) -> float:
        """c_S in the pivot-set bound c_S * p * n * log(n)"""
        return self._pivot_const

    @property
    def hit_const(self) -> float:
        """c in the hitting-set bound c * (n / s) * ln(n) + 1"""
        return self._hit_const

    @property
    def max_retries(self) -> int:
        return self._max_retries

    def validate_config(self) -> tuple[bool, str]:
        """Validate the current configuration"""
        if self._problems:
            return False, "; ".join(self._problems)

        if self._threads < 0:
            return False, f"APSP_THREADS must be >= 0, got {self._threads}"

        if self._log_level not in _LEVEL_NAMES:
            return False, f"APSP_LOG_LEVEL must be one of {', '.join(_LEVEL_NAMES)}, got {self._log_level}"

        for name, value in (('APSP_BUNCH_CONST', self._bunch_const),
                            ('APSP_PIVOT_CONST', self._pivot_const),
                            ('APSP_HIT_CONST', self._hit_const)):
            if value <= 0:
                return False, f"{name} must be positive, got {value}"

        if self._max_retries < 1:
            return False, f"APSP_MAX_RETRIES must be >= 1, got {self._max_retries}"

        return True, "Configuration is valid"

    def get_configuration_help(self) -> str:
        """Get help text for configuration"""
        return """
Configuration Help:
==================

All settings are optional environment variables:

1. APSP_THREADS       worker cap for multi-source sweeps (0 = auto)
2. APSP_LOG_LEVEL     DEBUG, INFO, WARNING, ERROR (default INFO)
3. APSP_BUNCH_CONST   c_B in the bunch/cluster size bound (default 4)
4. APSP_PIVOT_CONST   c_S in the pivot-set size bound (default 4)
5. APSP_HIT_CONST     c in the hitting-set size bound (default 4)
6. APSP_MAX_RETRIES   resampling budget for bunches and hierarchies (default 20)

Linux/macOS:
  export APSP_THREADS=4
"""


# Global configuration instance
_config = None


def get_config() -> ApspConfig:
    """Get the global configuration instance"""
    global _config
    if _config is None:
        _config = ApspConfig()
    return _config


def reset_config() -> ApspConfig:
    """Re-read the environment (tests change it between cases)"""
    global _config
    _config = ApspConfig()
    return _config
