"""
Configuration Loader Module.

Provides the configuration loader used by the CLI and the scripts:
- Loading line-oriented ``.cfg``/``.ini`` files, YAML and JSON.
- Flattening sections and coercing text values to typed ones.
- Schema validation of the result (through SchemaRegistry).
- Building the frozen Config consumed by the pipeline.
"""

from __future__ import annotations

import configparser
import json
from pathlib import Path
from typing import Any, Dict, List

import yaml
from loguru import logger

from src.config.schema_registry import SchemaRegistry
from src.config.settings import (
    CONFIG_SCHEMA,
    Config,
    ConfigurationError,
    parse_relationship_sets,
    validate_mapping,
)

_TRUE_WORDS = {"true", "yes", "on", "1"}
_FALSE_WORDS = {"false", "no", "off", "0"}

# Section holding keys written before the first [section] header.
_IMPLICIT_SECTION = "linkage"
_TRANSFORMS_SECTION = "transforms"


class ConfigLoader:
    """
    Configuration loader with coercion and schema validation.

    Reads a configuration file, flattens its sections into a single
    key -> value mapping, coerces text values using the types declared
    in ``linkage_config_schema.json`` and returns a validated Config.
    Missing keys keep their defaults.

    Attributes:
        schema_registry: Registry the config schema is loaded from.
    """

    SUPPORTED_EXTENSIONS = {".cfg", ".ini", ".yaml", ".yml", ".json"}

    def __init__(self, schema_dir: str | Path | None = None) -> None:
        self.schema_registry = SchemaRegistry(schema_dir)
        self._cache: Dict[str, Config] = {}

    def load(self, path: str | Path, *, use_cache: bool = True) -> Config:
        """
        Load and validate a configuration file.

        Args:
            path: Path to a ``.cfg``, ``.ini``, ``.yaml``, ``.yml`` or ``.json`` file.
            use_cache: Return the previously loaded Config for the same path.

        Returns:
            The resolved Config (defaults overlaid with the file's values).

        Raises:
            FileNotFoundError: If the file does not exist.
            ConfigurationError: If the file cannot be parsed or a value is invalid.
        """
        file_path = Path(path)
        if not file_path.exists():
            raise FileNotFoundError(f"Configuration file not found: {file_path}")

        cache_key = str(file_path.resolve())
        if use_cache and cache_key in self._cache:
            logger.debug(f"Returning cached config for: {file_path}")
            return self._cache[cache_key]

        logger.info(f"Loading configuration: {file_path}")
        mapping = self.load_mapping(file_path)
        config = Config.from_mapping(mapping)

        if use_cache:
            self._cache[cache_key] = config
        return config

    def load_mapping(self, path: str | Path) -> Dict[str, Any]:
        """Read, flatten, coerce and validate a file without building a Config."""
        file_path = Path(path)
        data = self._read_file(file_path)
        mapping = self._coerce(self._flatten(data))
        try:
            validate_mapping(mapping, self.schema_registry)
        except ConfigurationError as e:
            raise ConfigurationError(f"{file_path}: {e}") from e
        return mapping

    def clear_cache(self) -> None:
        self._cache.clear()

    # ------------------------------------------------------------------
    # Reading
    # ------------------------------------------------------------------

    def _read_file(self, file_path: Path) -> Dict[str, Any]:
        suffix = file_path.suffix.lower()
        if suffix not in self.SUPPORTED_EXTENSIONS:
            raise ConfigurationError(
                f"Unsupported file format '{suffix}'. "
                f"Supported: {sorted(self.SUPPORTED_EXTENSIONS)}"
            )

        try:
            content = file_path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigurationError(f"Failed to read file {file_path}: {e}") from e

        try:
            if suffix in {".cfg", ".ini"}:
                return self._parse_ini(content)
            if suffix in {".yaml", ".yml"}:
                data = yaml.safe_load(content)
            else:
                data = json.loads(content) if content.strip() else {}
        except (configparser.Error, yaml.YAMLError, json.JSONDecodeError) as e:
            raise ConfigurationError(f"Failed to parse {file_path}: {e}") from e

        if data is None:
            return {}
        if not isinstance(data, dict):
            raise ConfigurationError(
                f"Configuration file must contain a mapping, "
                f"got {type(data).__name__}: {file_path}"
            )
        return data

    @staticmethod
    def _parse_ini(content: str) -> Dict[str, Any]:
        parser = configparser.ConfigParser(
            interpolation=None,
            delimiters=("=",),
            comment_prefixes=("#", ";"),
            inline_comment_prefixes=("#",),
        )
        # keep attribute names case-sensitive
        parser.optionxform = str  # type: ignore[assignment,method-assign]
        parser.read_string(f"[{_IMPLICIT_SECTION}]\n{content}")
        return {section: dict(parser.items(section)) for section in parser.sections()}

    # ------------------------------------------------------------------
    # Normalisation
    # ------------------------------------------------------------------

    @staticmethod
    def _flatten(data: Dict[str, Any]) -> Dict[str, Any]:
        """
        Merge section mappings into one level.

        The ``transforms`` section stays a nested mapping. A key set in
        two sections is an error.
        """
        flat: Dict[str, Any] = {}
        origin: Dict[str, str] = {}

        def put(key: str, value: Any, section: str) -> None:
            if key in flat:
                raise ConfigurationError(
                    f"Key '{key}' set in both [{origin[key]}] and [{section}]"
                )
            flat[key] = value
            origin[key] = section

        for key, value in data.items():
            if key == _TRANSFORMS_SECTION:
                put(key, value, key)
            elif isinstance(value, dict):
                for inner_key, inner_value in value.items():
                    put(inner_key, inner_value, key)
            else:
                put(key, value, _IMPLICIT_SECTION)

        if _TRANSFORMS_SECTION in flat and not flat[_TRANSFORMS_SECTION]:
            del flat[_TRANSFORMS_SECTION]
        return flat

    def _coerce(self, flat: Dict[str, Any]) -> Dict[str, Any]:
        """Convert text values to the types the schema declares."""
        properties = self.schema_registry.get_schema(CONFIG_SCHEMA).get("properties", {})
        coerced: Dict[str, Any] = {}
        for key, value in flat.items():
            spec = properties.get(key)
            if spec is None:
                # let schema validation report the unknown key
                coerced[key] = value
                continue
            try:
                coerced[key] = self._coerce_value(key, value, spec)
            except ValueError as e:
                raise ConfigurationError(
                    f"Invalid value for '{key}': {value!r} ({spec.get('description', e)})"
                ) from e
        return coerced

    @staticmethod
    def _coerce_value(key: str, value: Any, spec: Dict[str, Any]) -> Any:
        if key == "relationships":
            return [list(s) for s in parse_relationship_sets(value)]
        if key == _TRANSFORMS_SECTION:
            if not isinstance(value, dict):
                raise ValueError("expected a mapping of attribute -> transform ids")
            return {attr: _split_list(ids) for attr, ids in value.items()}
        if not isinstance(value, str):
            return value

        text = value.strip()
        kind = spec.get("type")
        if kind == "integer":
            return int(text)
        if kind == "number":
            return float(text)
        if kind == "boolean":
            word = text.lower()
            if word in _TRUE_WORDS:
                return True
            if word in _FALSE_WORDS:
                return False
            raise ValueError(f"not a boolean: {text}")
        if kind == "array":
            return _split_list(text)
        return text


def _split_list(value: Any) -> List[str]:
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return [str(item).strip() for item in value]


def parse_config(path: str | Path) -> Config:
    """
    Parse a configuration file into a validated Config.

    An empty file yields the default Config; keys left out keep their
    defaults.
    """
    return ConfigLoader().load(path, use_cache=False)
