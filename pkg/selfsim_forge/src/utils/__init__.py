"""Configuration helpers."""

from .settings import Settings, load_config, load_settings

__all__ = ["Settings", "load_config", "load_settings"]
