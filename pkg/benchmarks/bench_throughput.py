"""Benchmark: FishIoU matrix throughput and whole-sequence tracking speed.

Measures how many pairwise FishIoU matrices can be built per second and how
many frames per second the full simulate-track loop sustains.
"""
from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from sutrack.association.tracker import track_sequence
from sutrack.geometry.similarity import pairwise_fish_iou
from sutrack.schema.config import SimParams
from sutrack.sim import corrupt, simulate

_ITERATIONS: int = 2_000
_SEQUENCE_FRAMES: int = 300


def bench_fish_iou_throughput(
    size: int = 30, iterations: int = _ITERATIONS
) -> dict[str, object]:
    """Benchmark a ``size x size`` pairwise FishIoU matrix.

    Returns
    -------
    dict with keys: operation, iterations, total_seconds, ops_per_second,
    avg_latency_ms.
    """
    rng = np.random.default_rng(0)
    corners = rng.uniform(0.0, 500.0, size=(2, size, 2))
    extents = rng.uniform(10.0, 40.0, size=(2, size, 2))
    boxes = np.concatenate([corners, corners + extents], axis=2)

    start = time.perf_counter()
    for _ in range(iterations):
        pairwise_fish_iou(boxes[0], boxes[1])
    total = time.perf_counter() - start

    result: dict[str, object] = {
        "operation": f"fish_iou_{size}x{size}",
        "iterations": iterations,
        "total_seconds": round(total, 4),
        "ops_per_second": round(iterations / total, 1),
        "avg_latency_ms": round(total / iterations * 1000, 4),
    }
    print(
        f"[bench_throughput] {result['operation']}: "
        f"{result['ops_per_second']:,.0f} ops/sec  "
        f"avg {result['avg_latency_ms']:.4f} ms"
    )
    return result


def bench_sequence_throughput(n_frames: int = _SEQUENCE_FRAMES) -> dict[str, object]:
    """Benchmark frames per second of ``track_sequence`` on ten simulated fish.

    Returns
    -------
    dict with keys: operation, iterations, total_seconds, ops_per_second,
    avg_latency_ms.
    """
    params = SimParams(n_frames=n_frames, miss_probability=0.05, center_jitter_sigma=1.0)
    detections = corrupt(simulate(params), params)

    start = time.perf_counter()
    track_sequence(detections, last_frame=n_frames)
    total = time.perf_counter() - start

    result: dict[str, object] = {
        "operation": "track_sequence_frames",
        "iterations": n_frames,
        "total_seconds": round(total, 4),
        "ops_per_second": round(n_frames / total, 1),
        "avg_latency_ms": round(total / n_frames * 1000, 4),
    }
    print(
        f"[bench_throughput] {result['operation']}: "
        f"{result['ops_per_second']:,.0f} frames/sec  "
        f"avg {result['avg_latency_ms']:.4f} ms"
    )
    return result


if __name__ == "__main__":
    results_dir = Path(__file__).parent / "results"
    results_dir.mkdir(exist_ok=True)

    for bench_fn, fname in [
        (bench_fish_iou_throughput, "fish_iou_throughput_baseline.json"),
        (bench_sequence_throughput, "sequence_throughput_baseline.json"),
    ]:
        result = bench_fn()
        output_path = results_dir / fname
        with open(output_path, "w", encoding="utf-8") as fh:
            json.dump(result, fh, indent=2)
        print(f"Results saved to {output_path}")
