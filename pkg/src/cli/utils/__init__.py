"""
Utility helpers for the CLI.
"""

from .files import append_jsonl, ensure_writable, iter_jsonl, read_jsonl, write_json

__all__ = ["append_jsonl", "ensure_writable", "iter_jsonl", "read_jsonl", "write_json"]
