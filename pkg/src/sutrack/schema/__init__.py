"""Error taxonomy and configuration models."""
from __future__ import annotations
