"""Test that the quickstart shown in the README works for sutrack."""
from __future__ import annotations


def test_quickstart_version(expected_version: str) -> None:
    import sutrack

    assert sutrack.__version__ == expected_version


def test_quickstart_fish_iou() -> None:
    from sutrack import BoundingBox, fish_iou

    box = BoundingBox(0.0, 0.0, 10.0, 10.0)
    assert round(fish_iou(box, box), 9) == 1.6


def test_quickstart_track_and_score() -> None:
    from sutrack import SimParams, TrajectorySet, corrupt, evaluate, simulate, track_sequence

    params = SimParams(n_fish=2, n_frames=20, seed=1)
    ground_truth = simulate(params)
    outputs, stats = track_sequence(corrupt(ground_truth, params))
    report = evaluate(ground_truth, TrajectorySet.from_outputs(outputs))

    assert stats.frames == 20
    assert 0.0 <= report.idf1 <= 1.0


def test_quickstart_public_names(package_name: str) -> None:
    import importlib

    module = importlib.import_module(package_name)
    for name in module.__all__:
        assert hasattr(module, name), name
