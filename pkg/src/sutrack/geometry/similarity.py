"""Association similarity metrics.

Every metric is implemented once, vectorized over two stacks of corner boxes
``(N, 4)`` and ``(M, 4)`` returning an ``(N, M)`` matrix.  The scalar
functions taking two ``BoundingBox`` values are thin wrappers, so the tracker
(which works on matrices) and the unit tests (which work on pairs) exercise
the same arithmetic.

FishIoU combines five terms::

    w1*IoU + w2*cIoU + w3*aspect_consistency + w4*area_consistency
        - w5 * small_target_scale * center_distance_penalty

where cIoU is the IoU of the asymmetric central regions of both boxes.
"""
from __future__ import annotations

from enum import Enum
from typing import TYPE_CHECKING

import numpy as np

from sutrack.geometry.box import BoundingBox
from sutrack.schema.config import FishIouParams

if TYPE_CHECKING:
    from collections.abc import Callable

    from numpy.typing import NDArray


DEFAULT_FISH_IOU_PARAMS = FishIouParams()


class AssociationMetric(str, Enum):
    """Similarity used to build association costs."""

    FISHIOU = "fishiou"
    IOU = "iou"
    GIOU = "giou"
    DIOU = "diou"


# ---------------------------------------------------------------------------
# Pairwise building blocks
# ---------------------------------------------------------------------------


def _split(
    a: NDArray[np.float64], b: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    return a[:, None, :], b[None, :, :]


def _areas(boxes: NDArray[np.float64]) -> NDArray[np.float64]:
    return (boxes[..., 2] - boxes[..., 0]) * (boxes[..., 3] - boxes[..., 1])


def _intersection_union(
    a: NDArray[np.float64], b: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    lhs, rhs = _split(a, b)
    inter_w = np.clip(
        np.minimum(lhs[..., 2], rhs[..., 2]) - np.maximum(lhs[..., 0], rhs[..., 0]), 0.0, None
    )
    inter_h = np.clip(
        np.minimum(lhs[..., 3], rhs[..., 3]) - np.maximum(lhs[..., 1], rhs[..., 1]), 0.0, None
    )
    inter = inter_w * inter_h
    union = _areas(lhs) + _areas(rhs) - inter
    return inter, union


def _enclosing_extent(
    a: NDArray[np.float64], b: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    lhs, rhs = _split(a, b)
    width = np.maximum(lhs[..., 2], rhs[..., 2]) - np.minimum(lhs[..., 0], rhs[..., 0])
    height = np.maximum(lhs[..., 3], rhs[..., 3]) - np.minimum(lhs[..., 1], rhs[..., 1])
    return width, height


def pairwise_iou(a: NDArray[np.float64], b: NDArray[np.float64]) -> NDArray[np.float64]:
    """Intersection over union for every pair; 0 for disjoint boxes."""
    inter, union = _intersection_union(a, b)
    return np.asarray(inter / union, dtype=np.float64)


def pairwise_center_distance_penalty(
    a: NDArray[np.float64], b: NDArray[np.float64]
) -> NDArray[np.float64]:
    """Squared center distance over the squared diagonal of the enclosing box.

    A zero diagonal can only arise from degenerate boxes; it maps to 0.
    """
    lhs, rhs = _split(a, b)
    dx = (lhs[..., 0] + lhs[..., 2]) / 2.0 - (rhs[..., 0] + rhs[..., 2]) / 2.0
    dy = (lhs[..., 1] + lhs[..., 3]) / 2.0 - (rhs[..., 1] + rhs[..., 3]) / 2.0
    width, height = _enclosing_extent(a, b)
    diag_sq = width**2 + height**2
    safe = np.where(diag_sq > 0.0, diag_sq, 1.0)
    return np.where(diag_sq > 0.0, (dx**2 + dy**2) / safe, 0.0)


def central_regions(
    boxes: NDArray[np.float64], params: FishIouParams = DEFAULT_FISH_IOU_PARAMS
) -> NDArray[np.float64]:
    """Inset every box: front and rear along x, equal top and bottom along y."""
    widths = boxes[:, 2] - boxes[:, 0]
    heights = boxes[:, 3] - boxes[:, 1]
    if params.front_edge == "left":
        left_inset, right_inset = params.alpha_front, params.gamma_rear
    else:
        left_inset, right_inset = params.gamma_rear, params.alpha_front
    return np.stack(
        [
            boxes[:, 0] + left_inset * widths,
            boxes[:, 1] + params.beta_vertical * heights,
            boxes[:, 2] - right_inset * widths,
            boxes[:, 3] - params.beta_vertical * heights,
        ],
        axis=1,
    )


def pairwise_central_iou(
    a: NDArray[np.float64],
    b: NDArray[np.float64],
    params: FishIouParams = DEFAULT_FISH_IOU_PARAMS,
) -> NDArray[np.float64]:
    return pairwise_iou(central_regions(a, params), central_regions(b, params))


def _ratio_consistency(
    values_a: NDArray[np.float64], values_b: NDArray[np.float64]
) -> NDArray[np.float64]:
    lhs = values_a[:, None]
    rhs = values_b[None, :]
    return np.asarray(np.minimum(lhs, rhs) / np.maximum(lhs, rhs), dtype=np.float64)


def pairwise_aspect_consistency(
    a: NDArray[np.float64], b: NDArray[np.float64]
) -> NDArray[np.float64]:
    """``min(r1, r2) / max(r1, r2)`` with ``r = w / h``."""
    aspect_a = (a[:, 2] - a[:, 0]) / (a[:, 3] - a[:, 1])
    aspect_b = (b[:, 2] - b[:, 0]) / (b[:, 3] - b[:, 1])
    return _ratio_consistency(aspect_a, aspect_b)


def pairwise_area_consistency(
    a: NDArray[np.float64], b: NDArray[np.float64]
) -> NDArray[np.float64]:
    return _ratio_consistency(_areas(a), _areas(b))


def pairwise_small_target_scale(
    a: NDArray[np.float64],
    b: NDArray[np.float64],
    params: FishIouParams = DEFAULT_FISH_IOU_PARAMS,
) -> NDArray[np.float64]:
    """``1 - exp(-min(a1, a2) / scale_constant)``; small boxes get a softer penalty."""
    min_area = np.minimum(_areas(a)[:, None], _areas(b)[None, :])
    return np.asarray(-np.expm1(-min_area / params.scale_constant), dtype=np.float64)


def pairwise_fish_iou(
    a: NDArray[np.float64],
    b: NDArray[np.float64],
    params: FishIouParams = DEFAULT_FISH_IOU_PARAMS,
) -> NDArray[np.float64]:
    """FishIoU for every pair.

    With the default weights the result lies in ``[-0.4, 1.6]`` and reaches
    1.6 only for identical boxes.
    """
    return (
        params.w1 * pairwise_iou(a, b)
        + params.w2 * pairwise_central_iou(a, b, params)
        + params.w3 * pairwise_aspect_consistency(a, b)
        + params.w4 * pairwise_area_consistency(a, b)
        - params.w5
        * pairwise_small_target_scale(a, b, params)
        * pairwise_center_distance_penalty(a, b)
    )


def pairwise_giou(a: NDArray[np.float64], b: NDArray[np.float64]) -> NDArray[np.float64]:
    """Generalized IoU: ``IoU - (|C| - |U|) / |C|`` with ``C`` the enclosing box."""
    inter, union = _intersection_union(a, b)
    width, height = _enclosing_extent(a, b)
    enclosing = width * height
    return np.asarray(inter / union - (enclosing - union) / enclosing, dtype=np.float64)


def pairwise_diou(a: NDArray[np.float64], b: NDArray[np.float64]) -> NDArray[np.float64]:
    """Distance IoU: ``IoU - center_distance_penalty``."""
    return pairwise_iou(a, b) - pairwise_center_distance_penalty(a, b)


def pairwise_similarity(
    metric: AssociationMetric | str,
    a: NDArray[np.float64],
    b: NDArray[np.float64],
    params: FishIouParams = DEFAULT_FISH_IOU_PARAMS,
) -> NDArray[np.float64]:
    """Dispatch to the pairwise function for *metric*.

    Empty inputs produce an empty ``(N, M)`` matrix.
    """
    metric = AssociationMetric(metric)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((a.shape[0], b.shape[0]), dtype=np.float64)
    if metric is AssociationMetric.FISHIOU:
        return pairwise_fish_iou(a, b, params)
    if metric is AssociationMetric.IOU:
        return pairwise_iou(a, b)
    if metric is AssociationMetric.GIOU:
        return pairwise_giou(a, b)
    return pairwise_diou(a, b)


# ---------------------------------------------------------------------------
# Scalar wrappers
# ---------------------------------------------------------------------------


def _scalar(
    func: Callable[[NDArray[np.float64], NDArray[np.float64]], NDArray[np.float64]],
    b1: BoundingBox,
    b2: BoundingBox,
) -> float:
    return float(func(b1.to_array()[None, :], b2.to_array()[None, :])[0, 0])


def iou(b1: BoundingBox, b2: BoundingBox) -> float:
    """Intersection over union.

    >>> iou(BoundingBox(0, 0, 10, 10), BoundingBox(5, 0, 15, 10))
    0.3333333333333333
    """
    return _scalar(pairwise_iou, b1, b2)


def center_distance_penalty(b1: BoundingBox, b2: BoundingBox) -> float:
    return _scalar(pairwise_center_distance_penalty, b1, b2)


def central_region(
    box: BoundingBox, params: FishIouParams = DEFAULT_FISH_IOU_PARAMS
) -> BoundingBox:
    x1, y1, x2, y2 = central_regions(box.to_array()[None, :], params)[0]
    return BoundingBox(float(x1), float(y1), float(x2), float(y2))


def central_iou(
    b1: BoundingBox, b2: BoundingBox, params: FishIouParams = DEFAULT_FISH_IOU_PARAMS
) -> float:
    return _scalar(lambda a, b: pairwise_central_iou(a, b, params), b1, b2)


def aspect_ratio_consistency(b1: BoundingBox, b2: BoundingBox) -> float:
    return _scalar(pairwise_aspect_consistency, b1, b2)


def area_ratio_consistency(b1: BoundingBox, b2: BoundingBox) -> float:
    return _scalar(pairwise_area_consistency, b1, b2)


def small_target_scale(
    b1: BoundingBox, b2: BoundingBox, params: FishIouParams = DEFAULT_FISH_IOU_PARAMS
) -> float:
    return _scalar(lambda a, b: pairwise_small_target_scale(a, b, params), b1, b2)


def fish_iou(
    b1: BoundingBox, b2: BoundingBox, params: FishIouParams = DEFAULT_FISH_IOU_PARAMS
) -> float:
    """FishIoU of two boxes.

    >>> round(fish_iou(BoundingBox(0, 0, 10, 10), BoundingBox(20, 20, 30, 30)), 5)
    0.28308
    """
    return _scalar(lambda a, b: pairwise_fish_iou(a, b, params), b1, b2)


def giou(b1: BoundingBox, b2: BoundingBox) -> float:
    return _scalar(pairwise_giou, b1, b2)


def diou(b1: BoundingBox, b2: BoundingBox) -> float:
    return _scalar(pairwise_diou, b1, b2)
