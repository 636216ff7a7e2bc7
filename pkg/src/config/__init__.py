"""Configuration module for the closure engine."""

from src.config.settings import (
    CorrespondenceConfig,
    SampleConfig,
    Settings,
    get_settings,
    override_settings,
)

__all__ = [
    "CorrespondenceConfig",
    "SampleConfig",
    "Settings",
    "get_settings",
    "override_settings",
]
