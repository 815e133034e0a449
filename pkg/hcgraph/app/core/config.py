import json
import logging
import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

REPO_ROOT = Path(__file__).resolve().parents[3]
DEFAULT_CONFIG_PATH = REPO_ROOT / "config" / "hcgraph.json"


def _load_file(path: str) -> dict:
    """Lit le fichier JSON de config (caps des oracles, limites); vide si absent."""
    p = Path(path)
    if not p.exists():
        return {}
    try:
        with open(p, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.warning(f"Config file {p} unreadable, using defaults: {e}")
        return {}
    if not isinstance(data, dict):
        logger.warning(f"Config file {p} is not a JSON object, ignored")
        return {}
    return data


class Settings:
    # env > config file > default
    _INT_DEFAULTS = {
        "CHI_BRUTEFORCE_MAX_N": 12,
        "GRUNDY_MAX_N": 8,
        "STRONG_MODULES_MAX_N": 9,
        "COLORINGS_MAX_STATES": 2_000_000,
        "PRIME_SOLVER_MAX_WEIGHT": 14,
        "COTREE_ENUM_LIMIT": 10_000,
        "BENCH_COMPONENT_SIZE": 12,
    }

    def __init__(self):
        self.reload()

    def reload(self) -> "Settings":
        self.LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
        self.CONFIG_PATH = os.getenv("HCGRAPH_CONFIG", str(DEFAULT_CONFIG_PATH))
        file_values = _load_file(self.CONFIG_PATH)
        for name, default in self._INT_DEFAULTS.items():
            raw = os.getenv(name)
            if raw is None:
                raw = file_values.get(name, default)
            try:
                value = int(raw)
            except (TypeError, ValueError):
                logger.warning(f"Invalid value for {name}: {raw!r}, using {default}")
                value = default
            setattr(self, name, value)
        return self

    def as_dict(self) -> dict:
        out = {"LOG_LEVEL": self.LOG_LEVEL, "CONFIG_PATH": self.CONFIG_PATH}
        out.update({name: getattr(self, name) for name in self._INT_DEFAULTS})
        return out


settings = Settings()
