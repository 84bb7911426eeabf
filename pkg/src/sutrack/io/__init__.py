"""Readers and writers for MOT text files and embedding sidecars."""
from __future__ import annotations

from sutrack.config.loader import load_config
from sutrack.io.bundle import DEFAULT_FPS, SequenceBundle, load_bundle
from sutrack.io.embeddings import EmbeddingTable, attach_embeddings, read_embeddings
from sutrack.io.mot import (
    format_result,
    read_detections,
    read_gt,
    read_results,
    write_detections,
    write_gt,
    write_results,
)

__all__ = [
    "DEFAULT_FPS",
    "EmbeddingTable",
    "SequenceBundle",
    "attach_embeddings",
    "format_result",
    "load_bundle",
    "load_config",
    "read_detections",
    "read_embeddings",
    "read_gt",
    "read_results",
    "write_detections",
    "write_gt",
    "write_results",
]
