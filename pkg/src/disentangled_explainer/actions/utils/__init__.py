"""Utilities shared by the pipeline actions."""

from .artifacts import dump_json, write_json_artifact, write_text_artifact

__all__ = ["dump_json", "write_json_artifact", "write_text_artifact"]
