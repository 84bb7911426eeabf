"""Bounding-box arithmetic and association similarity metrics."""
from __future__ import annotations

from sutrack.geometry.box import BoundingBox, boxes_to_array
from sutrack.geometry.similarity import (
    AssociationMetric,
    area_ratio_consistency,
    aspect_ratio_consistency,
    center_distance_penalty,
    central_iou,
    central_region,
    diou,
    fish_iou,
    giou,
    iou,
    pairwise_fish_iou,
    pairwise_iou,
    pairwise_similarity,
    small_target_scale,
)

__all__ = [
    "AssociationMetric",
    "BoundingBox",
    "area_ratio_consistency",
    "aspect_ratio_consistency",
    "boxes_to_array",
    "center_distance_penalty",
    "central_iou",
    "central_region",
    "diou",
    "fish_iou",
    "giou",
    "iou",
    "pairwise_fish_iou",
    "pairwise_iou",
    "pairwise_similarity",
    "small_target_scale",
]
