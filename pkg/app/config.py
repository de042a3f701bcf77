import os
from dotenv import load_dotenv
from .errors import ConfigError

load_dotenv()


def _int_setting(name: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ConfigError(f"{name} must be at least {minimum}, got {value}")
    return value


TRUNC_FACTOR = _int_setting("BRANCHINV_TRUNC_FACTOR", 1)
DATABASE_URL = os.getenv("BRANCHINV_DATABASE_URL", "sqlite:///./database/app.db")
SWEEP_WORKERS = _int_setting("BRANCHINV_SWEEP_WORKERS", os.cpu_count() or 1)
LOG_LEVEL = os.getenv("BRANCHINV_LOG_LEVEL", "WARNING").upper()
