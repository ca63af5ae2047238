import os
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Final, Optional

from dotenv import load_dotenv

__all__ = [
    "THREADS_VARIABLE",
    "LOG_LEVEL_VARIABLE",
    "RuntimeSettings",
]

THREADS_VARIABLE: Final = "RATE_REGION_THREADS"
LOG_LEVEL_VARIABLE: Final = "RATE_REGION_LOG_LEVEL"

_LOG_LEVELS: Final = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class RuntimeSettings:
    """Process-level knobs of the command-line tool.

    Attributes:
        threads (int) : Worker threads for property sweeps; 0 means one per CPU.
        log_level (str) : Log level used when --verbose is not given.
    """
    threads: int = 0
    log_level: str = "WARNING"

    def __post_init__(self):
        if isinstance(self.threads, bool) or not isinstance(self.threads, int) or self.threads < 0:
            raise ValueError(f"{THREADS_VARIABLE} must be a nonnegative integer, got {self.threads!r}.")
        if self.log_level not in _LOG_LEVELS:
            raise ValueError(f"{LOG_LEVEL_VARIABLE} must be one of {_LOG_LEVELS}, got {self.log_level!r}.")

    @property
    def worker_count(self) -> int:
        return self.threads or (os.cpu_count() or 1)

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None, *, dotenv: bool = True) -> "RuntimeSettings":
        """Reads the settings from ``environ`` (the process environment by default).

        When reading the process environment, a ``.env`` file in the working directory is loaded first;
        variables already set in the environment win.

        Raises:
            ValueError : A variable holds a malformed value.
        """
        if environ is None:
            if dotenv:
                load_dotenv()
            environ = os.environ
        raw_threads = environ.get(THREADS_VARIABLE, "0").strip() or "0"
        try:
            threads = int(raw_threads)
        except ValueError:
            raise ValueError(f"{THREADS_VARIABLE} must be a nonnegative integer, got {raw_threads!r}.") from None
        log_level = (environ.get(LOG_LEVEL_VARIABLE, "WARNING").strip() or "WARNING").upper()
        return cls(threads=threads, log_level=log_level)
