import logging
import os
from fractions import Fraction
from typing import Any, Dict

import ujson as json

from qbailey.constants import (
    DEFAULT_MAX_TERMS, DEFAULT_ORDER, DEFAULT_PAIRS_PATH, DEFAULT_REGISTRY_PATH,
    DEFAULT_SLOW_VERIFICATION_THRESHOLD_MS, DEFAULT_THREADS
)

logger = logging.getLogger(__name__)

CONFIG_FILE = "config.json"


def load_config(path: str = CONFIG_FILE) -> Dict[str, Any]:
    """Read config.json if present and apply environment overrides.

    Only the default order and the registry path can be overridden from the environment
    (`QBAILEY_ORDER`, `QBAILEY_REGISTRY`).
    """
    config = {}
    try:
        with open(path) as f:
            config = json.load(f)
        assert isinstance(config, dict), "config.json must hold an object"
    except FileNotFoundError:
        pass
    except (ValueError, AssertionError) as e:
        # ValueError for ujson
        logger.warning(f"Ignoring {path}:\n{e.__class__.__name__}: {str(e)}")
        config = {}

    config.setdefault("DEFAULT_ORDER", DEFAULT_ORDER)
    config.setdefault("REGISTRY_PATH", DEFAULT_REGISTRY_PATH)
    config.setdefault("PAIRS_PATH", DEFAULT_PAIRS_PATH)
    config.setdefault("MAX_TERMS", DEFAULT_MAX_TERMS)
    config.setdefault("THREADS", DEFAULT_THREADS)
    config.setdefault("SLOW_VERIFICATION_THRESHOLD_MS", DEFAULT_SLOW_VERIFICATION_THRESHOLD_MS)

    if os.environ.get("QBAILEY_ORDER"):
        config["DEFAULT_ORDER"] = os.environ["QBAILEY_ORDER"]
    if os.environ.get("QBAILEY_REGISTRY"):
        config["REGISTRY_PATH"] = os.environ["QBAILEY_REGISTRY"]

    config["DEFAULT_ORDER"] = Fraction(str(config["DEFAULT_ORDER"]))
    return config


__all__ = ("load_config",)
