"""
Configuration Management Module.

Handles loading and validation of:
- Linkage configuration files (.cfg/.ini, YAML, JSON).
- Parameter ranges through JSON schema validation.
- The frozen Config consumed by every pipeline step.
"""

from src.config.loader import ConfigLoader, parse_config
from src.config.schema_registry import SchemaRegistry, SchemaValidationError
from src.config.settings import FEATURE_IDS, Config, ConfigurationError

__all__ = [
    "FEATURE_IDS",
    "Config",
    "ConfigLoader",
    "ConfigurationError",
    "SchemaRegistry",
    "SchemaValidationError",
    "parse_config",
]
