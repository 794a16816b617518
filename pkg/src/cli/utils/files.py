"""
File helpers for reports and sweep results.
"""

import logging
from pathlib import Path
from typing import Iterator, List, Union

from pydantic import BaseModel

from src.config import LOG_FORMAT, LOG_LEVEL
from src.exceptions import InvalidParameterError

# Configure logging
logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


def ensure_writable(path: Union[str, Path]) -> Path:
    """
    Open path for appending once so an unwritable destination fails before any work.

    Raises:
        InvalidParameterError: If the file cannot be opened for writing
    """
    path = Path(path)
    try:
        with open(path, "a", encoding="utf-8"):
            pass
    except OSError as e:
        logger.error(f"Error opening {path} for writing: {str(e)}")
        raise InvalidParameterError(f"Output path {path} is not writable: {e.strerror}")
    return path


def write_json(path: Union[str, Path], model: BaseModel) -> Path:
    """Write one model as indented JSON."""
    path = ensure_writable(path)
    path.write_text(model.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


def append_jsonl(path: Union[str, Path], model: BaseModel) -> None:
    """Append one model as a single JSON line (UTF-8, LF)."""
    with open(path, "a", encoding="utf-8", newline="\n") as f:
        f.write(model.model_dump_json() + "\n")


def iter_jsonl(path: Union[str, Path], model_type: type) -> Iterator[BaseModel]:
    """Validate each non-empty line of a JSON-lines file as model_type."""
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            if line.strip():
                yield model_type.model_validate_json(line)


def read_jsonl(path: Union[str, Path], model_type: type) -> List[BaseModel]:
    return list(iter_jsonl(path, model_type))
