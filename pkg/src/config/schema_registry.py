"""
Schema Registry Module.

Loads the JSON schemas that guard linkage configuration and validates
mappings against them with jsonschema's Draft-7 validator.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

import jsonschema
from loguru import logger

from src.model.errors import RecordLinkageError

DEFAULT_SCHEMA_DIR = Path(__file__).resolve().parent / "schemas"


class SchemaValidationError(RecordLinkageError):
    """Raised when a configuration mapping fails schema validation."""

    def __init__(self, message: str, errors: Optional[List[str]] = None) -> None:
        super().__init__(message)
        self.errors = errors or []


class SchemaRegistry:
    """
    Registry of JSON schemas used to validate configuration mappings.

    Schemas are loaded lazily from a directory on disk and cached for
    subsequent validations. Each error message carries the offending
    key, the jsonschema message and, when the schema documents one, the
    field's ``description`` so the violated constraint is spelled out.

    Attributes:
        schema_dir: Directory containing ``<name>.json`` schema files.
    """

    def __init__(self, schema_dir: str | Path | None = None) -> None:
        self.schema_dir = Path(schema_dir) if schema_dir else DEFAULT_SCHEMA_DIR
        self._schemas: Dict[str, Dict[str, Any]] = {}
        logger.debug(f"SchemaRegistry initialized, schema_dir={self.schema_dir}")

    def get_schema(self, schema_name: str) -> Dict[str, Any]:
        """
        Retrieve a JSON schema by name, loading it from disk if not cached.

        Raises:
            FileNotFoundError: If the schema file does not exist.
            SchemaValidationError: If the schema file is not valid JSON.
        """
        if schema_name in self._schemas:
            return self._schemas[schema_name]

        schema_path = self.schema_dir / f"{schema_name}.json"
        if not schema_path.exists():
            raise FileNotFoundError(f"Schema not found: {schema_name} (expected at {schema_path})")

        try:
            schema = json.loads(schema_path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise SchemaValidationError(f"Failed to load schema {schema_name}: {e}") from e

        self._schemas[schema_name] = schema
        return schema

    def validate(self, data: Dict[str, Any], schema_name: str) -> None:
        """
        Validate a mapping against a named schema.

        Args:
            data: Mapping to validate.
            schema_name: Schema identifier (file name without ``.json``).

        Raises:
            SchemaValidationError: With one entry per violation in ``errors``.
        """
        schema = self.get_schema(schema_name)
        validator = jsonschema.Draft7Validator(schema)
        errors = sorted(validator.iter_errors(data), key=lambda e: [str(p) for p in e.path])

        if not errors:
            return

        messages = []
        for error in errors:
            path = " -> ".join(str(p) for p in error.absolute_path) or "(root)"
            line = f"  [{path}] {error.message}"
            description = self._describe(schema, list(error.absolute_path))
            if description:
                line += f" ({description})"
            messages.append(line)

        raise SchemaValidationError(
            f"Schema validation failed for '{schema_name}' "
            f"({len(errors)} error(s)):\n" + "\n".join(messages),
            errors=messages,
        )

    def list_schemas(self) -> List[str]:
        if not self.schema_dir.exists():
            return []
        return sorted(f.stem for f in self.schema_dir.glob("*.json") if f.is_file())

    @staticmethod
    def _describe(schema: Dict[str, Any], path: List[Any]) -> Optional[str]:
        if not path:
            return None
        prop = schema.get("properties", {}).get(str(path[0]))
        return prop.get("description") if isinstance(prop, dict) else None
