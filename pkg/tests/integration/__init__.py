"""Integration tests.

These run the full simulate, track and evaluate stack or drive the CLI
end to end. Multi-seed runs carry the ``slow`` marker and can be skipped
with ``pytest -m "not slow"``.
"""
from __future__ import annotations
