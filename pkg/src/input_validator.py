"""
Input file validation.

Every vector, schedule and index-set file passes three tiers before any
exact computation sees it:

1. Size and extension (.json, .yaml, .yml)
2. Structured parse (json / PyYAML safe loader)
3. Schema validation against the requested kind (pydantic models in schemas)

Failures raise MalformedInputError with what failed, where, and how to fix
it; the CLI turns that into exit code 2.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Literal, Union

import yaml

from .errors import MalformedInputError
from .schemas import LOADERS

logger = logging.getLogger(__name__)

Kind = Literal["vector", "schedule", "indexset"]


@dataclass(frozen=True)
class ValidationResult:
    """Parsed document plus its domain object"""
    kind: str
    format_type: Literal["json", "yaml"]
    parsed_data: Any
    value: Any


class InputValidator:
    """Size limit, extension whitelist, parse check, schema check"""

    STRUCTURED_FORMATS = {".json": "json", ".yaml": "yaml", ".yml": "yaml"}

    MAX_FILE_SIZE = 16 * 1024 * 1024  # 16MB

    def validate(self, filename: str, content: bytes, kind: Kind) -> ValidationResult:
        """
        Validate file content as a document of the given kind.

        Args:
            filename: Name used for the extension check and in messages
            content: Raw file bytes
            kind: "vector", "schedule" or "indexset"

        Returns:
            ValidationResult with the domain object in .value

        Raises:
            MalformedInputError: If any tier fails
        """
        if kind not in LOADERS:
            raise MalformedInputError(f"Unknown input kind '{kind}'. Valid: {', '.join(LOADERS)}")

        if len(content) > self.MAX_FILE_SIZE:
            raise MalformedInputError(
                f"File '{filename}' is too large ({len(content) / 1024 / 1024:.1f}MB).\n"
                f"Maximum allowed: {self.MAX_FILE_SIZE / 1024 / 1024:.0f}MB."
            )

        ext = Path(filename).suffix.lower()
        if ext not in self.STRUCTURED_FORMATS:
            raise MalformedInputError(
                f"Unsupported file extension '{ext or '<none>'}' in '{filename}'.\n"
                f"Supported: {', '.join(sorted(self.STRUCTURED_FORMATS))}"
            )
        format_type = self.STRUCTURED_FORMATS[ext]

        try:
            text = content.decode("utf-8")
        except UnicodeDecodeError as e:
            raise MalformedInputError(
                f"File '{filename}' is not valid UTF-8 text.\n"
                f"Error at byte position {e.start}: {e.reason}"
            ) from e

        parsed = self._parse(text, format_type, filename)
        value = LOADERS[kind](parsed)
        logger.debug(f"Validated {kind} from {filename} ({format_type}, {len(content)} bytes)")
        return ValidationResult(kind=kind, format_type=format_type, parsed_data=parsed, value=value)

    def _parse(self, text: str, format_type: str, filename: str) -> Any:
        try:
            if format_type == "json":
                return json.loads(text)
            return yaml.safe_load(text)
        except json.JSONDecodeError as e:
            raise MalformedInputError(
                f"Invalid JSON syntax in '{filename}':\n"
                f"  Line {e.lineno}, column {e.colno}\n"
                f"  Error: {e.msg}\n"
                f"  Context: ...{text[max(0, e.pos - 50):e.pos + 50]}..."
            ) from e
        except yaml.YAMLError as e:
            raise MalformedInputError(f"Invalid YAML syntax in '{filename}':\n  {str(e)[:300]}") from e


def load_input(path: Union[str, Path], kind: Kind) -> Any:
    """
    Read and validate a file, returning the domain object.

    Example:
        >>> load_input("tests/fixtures/e0.json", "vector").render()
        'e_0'
    """
    path = Path(path)
    try:
        content = path.read_bytes()
    except OSError as e:
        raise MalformedInputError(f"Cannot read {kind} file '{path}': {e.strerror}") from e
    return InputValidator().validate(path.name, content, kind).value
