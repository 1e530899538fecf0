"""Schema tools for validating input documents against the bundled JSON Schemas.

The schemas live in src/schemas and are loaded once per process. Validation
reports problems as a status dict instead of raising, so callers decide which
error type to raise.
"""

import json
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict

from jsonschema import Draft7Validator

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"

SPACE_SCHEMA = "space_description_schema.json"
TREE_SCHEMA = "space_tree_schema.json"


@lru_cache(maxsize=None)
def load_validator(schema_name: str) -> Draft7Validator:
    """Load a schema from src/schemas and build a reusable validator.

    Args:
        schema_name: File name of the schema inside src/schemas

    Returns:
        Draft7Validator for the schema
    """
    schema = json.loads((SCHEMA_DIR / schema_name).read_text(encoding="utf-8"))
    Draft7Validator.check_schema(schema)
    return Draft7Validator(schema)


def validate_document(document: Any, schema_name: str) -> Dict[str, Any]:
    """Validate a parsed JSON document against one of the bundled schemas.

    Args:
        document: Parsed JSON value
        schema_name: File name of the schema inside src/schemas

    Returns:
        Dictionary with status, message and the list of violations
    """
    validator = load_validator(schema_name)
    errors = sorted(validator.iter_errors(document), key=lambda e: [str(p) for p in e.absolute_path])
    if not errors:
        return {"status": "success", "message": "document is valid", "errors": []}

    violations = [
        f"{'/'.join(str(p) for p in error.absolute_path) or '<root>'}: {error.message}"
        for error in errors
    ]
    return {
        "status": "error",
        "message": f"document violates {schema_name}: {violations[0]}",
        "errors": violations,
    }
