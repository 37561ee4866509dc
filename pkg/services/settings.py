"""Runtime defaults loaded from the environment (.env supported)."""
import logging
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

load_dotenv()

LOG_FORMAT = "%(asctime)s %(levelname)s [%(name)s] %(message)s"


@dataclass
class Settings:
    """Defaults for windows, degrees and verification bounds."""

    default_window: int = 32
    default_degree: int = 2
    tolerance: float = 1e-12
    default_bound: int = 12
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        """Read NCG_* variables, falling back to the defaults above.

        Raises:
            ValueError: a variable is set but cannot be parsed.
        """
        try:
            return cls(
                default_window=int(os.getenv("NCG_DEFAULT_WINDOW", cls.default_window)),
                default_degree=int(os.getenv("NCG_DEFAULT_DEGREE", cls.default_degree)),
                tolerance=float(os.getenv("NCG_TOLERANCE", cls.tolerance)),
                default_bound=int(os.getenv("NCG_DEFAULT_BOUND", cls.default_bound)),
                log_level=os.getenv("NCG_LOG_LEVEL", cls.log_level).upper(),
            )
        except ValueError as e:
            raise ValueError(f"Invalid NCG_* environment setting: {str(e)}")


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get or create the global Settings singleton."""
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next call re-reads the environment."""
    global _settings
    _settings = None


def configure_logging(level: Optional[str] = None) -> None:
    """Configure root logging.

    Raises:
        ValueError: the level name is not a logging level.
    """
    name = (level or get_settings().log_level).upper()
    if not isinstance(logging.getLevelName(name), int):
        raise ValueError(f"Unknown log level: {name!r}")
    logging.basicConfig(level=name, format=LOG_FORMAT)
