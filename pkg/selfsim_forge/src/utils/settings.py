"""
Settings loader.

Defaults live in src/config/defaults.yaml. Environment variables (optionally
from a .env file) override them, and CLI flags override both; the runner
applies the flags after calling load_settings().
"""

import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv


logger = logging.getLogger(__name__)

CONFIG_PATH = Path(__file__).parent.parent / "config" / "defaults.yaml"

FALLBACK: Dict[str, Any] = {
    "search": {"bound": 10000, "max_cycle_enumeration": 500, "cover_oracle_length": 4},
    "groupoid": {"stream_bound": 10000},
    "report": {"format": "text"},
    "logging": {"level": "INFO"},
    "fuzz": {"cases": 1000, "seed": 20240601},
}


@dataclass
class Settings:
    """
    Effective configuration.

    Attributes:
        bound: State budget for every bounded search
        max_cycle_enumeration: Cap on enumerated simple cycles
        cover_oracle_length: Path length used by the brute-force cover check
        stream_bound: State budget for restriction streams of germs
        report_format: 'text' or 'machine'
        log_level: Default logging level name
        fuzz_cases: Cases per randomized law suite
        fuzz_seed: Seed of the randomized law suites
    """
    bound: int = 10000
    max_cycle_enumeration: int = 500
    cover_oracle_length: int = 4
    stream_bound: int = 10000
    report_format: str = "text"
    log_level: str = "INFO"
    fuzz_cases: int = 1000
    fuzz_seed: int = 20240601


def load_config(path: Optional[Path] = None) -> Dict[str, Any]:
    """Read the YAML defaults, falling back to built-in values when unreadable."""
    config_path = path or CONFIG_PATH
    try:
        with open(config_path, 'r') as f:
            loaded = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        logger.warning(f"Could not load config from {config_path}: {e}")
        return {section: dict(values) for section, values in FALLBACK.items()}
    config = {section: dict(values) for section, values in FALLBACK.items()}
    for section, values in loaded.items():
        if isinstance(values, dict):
            config.setdefault(section, {}).update(values)
    return config


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring {name}={raw!r}: not an integer")
        return default


def load_settings(path: Optional[Path] = None) -> Settings:
    """
    YAML defaults overridden by SELFSIM_BOUND, SELFSIM_LOG_LEVEL and
    SELFSIM_FORMAT from the environment or a .env file.
    """
    load_dotenv()
    config = load_config(path)
    search, report = config["search"], config["report"]
    settings = Settings(
        bound=int(search["bound"]),
        max_cycle_enumeration=int(search["max_cycle_enumeration"]),
        cover_oracle_length=int(search["cover_oracle_length"]),
        stream_bound=int(config["groupoid"]["stream_bound"]),
        report_format=str(report["format"]),
        log_level=str(config["logging"]["level"]).upper(),
        fuzz_cases=int(config["fuzz"]["cases"]),
        fuzz_seed=int(config["fuzz"]["seed"]),
    )
    settings.bound = _env_int("SELFSIM_BOUND", settings.bound)
    settings.log_level = os.getenv("SELFSIM_LOG_LEVEL", settings.log_level).upper()
    settings.report_format = os.getenv("SELFSIM_FORMAT", settings.report_format)
    return settings
