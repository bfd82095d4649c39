import os

from errors import ConfigError


class Config:
    """Application configuration."""

    TAIL_TOL = float(os.environ.get("HORIZON_TAIL_TOL", "1e-12"))
    RELAXED_TAIL_TOL = 1e-8
    RELAXED_GAMMA = 2.0
    MAX_TRUNCATION = int(os.environ.get("HORIZON_MAX_TRUNCATION", "512"))
    GAMMA_MIN = 0.0
    GAMMA_MAX = 2.0
    GAMMA_STEP = 0.01
    THRESHOLD_BRACKET = (0.5, 1.2)
    THRESHOLD_TOL = 1e-6
    WORKERS = int(os.environ.get("HORIZON_WORKERS", "4"))
    LOG_LEVEL = os.environ.get("HORIZON_LOG_LEVEL", "INFO")
    OUTPUT_FORMAT = "csv"
    CLOSED_FORM = "both"


CONFIG_FILE_KEYS = frozenset(
    {
        "state",
        "measure",
        "gamma",
        "truncation",
        "tail_tol",
        "closed_form",
        "format",
        "out",
        "workers",
    }
)


def read_config_file(path):
    """Read a ``key = value`` sweep configuration file.

    Blank lines and lines starting with ``#`` are skipped. Keys may be
    written with dashes or underscores.

    Args:
        path: Location of the file

    Returns:
        Dict mapping normalized keys to raw string values
    """
    values = {}
    with open(path, encoding="utf-8") as handle:
        for number, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{number}: expected 'key = value', got {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_").lower()
            if key not in CONFIG_FILE_KEYS:
                raise ConfigError(f"{path}:{number}: unknown key {key!r}")
            if key in values:
                raise ConfigError(f"{path}:{number}: duplicate key {key!r}")
            if not value:
                raise ConfigError(f"{path}:{number}: missing value for {key!r}")
            values[key] = value
    return values
