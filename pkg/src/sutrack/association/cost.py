"""Association cost construction for the three cascade stages.

Entries are similarities (higher is better); rows are detections, columns
are tracks.

- Stage 1 (high confidence): ``w_cost_iou * geo + w_cost_emb * cos``
- Stage 2 (low confidence):  ``geo + lambda_emb * cos``
- Stage 3 (last chance):     ``geo`` against each track's last observed box

``geo`` is the configured geometric metric (FishIoU by default) against the
tracks' predicted boxes.  The appearance term applies only to pairs where
both sides carry an embedding and Re-ID is enabled.  With
``score_cost_weight > 0`` stages 1 and 2 add
``score_cost_weight * (1 - |s_det - s_track_predicted|)``.
"""
from __future__ import annotations

from enum import IntEnum
from typing import TYPE_CHECKING, TypeAlias

import numpy as np

from sutrack.geometry.box import boxes_to_array
from sutrack.geometry.similarity import pairwise_similarity
from sutrack.schema.errors import InputFormatError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import NDArray

    from sutrack.association.detection import Detection
    from sutrack.association.track import Track
    from sutrack.schema.config import TrackerConfig

CostMatrix: TypeAlias = "NDArray[np.float64]"


class CascadeStage(IntEnum):
    HIGH = 1
    LOW = 2
    LAST_CHANCE = 3


def embedding_similarity(e1: NDArray[np.float64], e2: NDArray[np.float64]) -> float:
    """Cosine similarity of two unit vectors, in ``[-1, 1]``."""
    return float(np.clip(np.dot(e1, e2), -1.0, 1.0))


def embedding_dimension(detections: Sequence[Detection]) -> int | None:
    """Common embedding length of *detections*, or ``None`` when none carry one."""
    dims = {d.embedding.shape[0] for d in detections if d.embedding is not None}
    if len(dims) > 1:
        raise InputFormatError(
            f"Detections of one frame carry embeddings of different dimensions: {sorted(dims)}",
            context={"dimensions": sorted(dims)},
        )
    return dims.pop() if dims else None


def _appearance(
    detections: Sequence[Detection], tracks: Sequence[Track]
) -> tuple[NDArray[np.float64], NDArray[np.bool_]]:
    """Cosine matrix and the mask of pairs where both sides have an embedding."""
    shape = (len(detections), len(tracks))
    cosine = np.zeros(shape, dtype=np.float64)
    mask = np.zeros(shape, dtype=bool)
    dim = embedding_dimension(detections)
    if dim is None:
        return cosine, mask

    det_rows = [i for i, d in enumerate(detections) if d.embedding is not None]
    track_cols = [j for j, t in enumerate(tracks) if t.smoothed_embedding is not None]
    for j in track_cols:
        track_dim = tracks[j].smoothed_embedding.shape[0]  # type: ignore[union-attr]
        if track_dim != dim:
            raise InputFormatError(
                f"Embedding dimension {dim} does not match track {tracks[j].track_id} "
                f"dimension {track_dim}",
                context={"track_id": tracks[j].track_id},
            )
    if not det_rows or not track_cols:
        return cosine, mask

    det_emb = np.vstack([detections[i].embedding for i in det_rows])  # type: ignore[misc]
    track_emb = np.vstack([tracks[j].smoothed_embedding for j in track_cols])  # type: ignore[misc]
    block = np.clip(det_emb @ track_emb.T, -1.0, 1.0)
    cosine[np.ix_(det_rows, track_cols)] = block
    mask[np.ix_(det_rows, track_cols)] = True
    return cosine, mask


def build_cost(
    detections: Sequence[Detection],
    tracks: Sequence[Track],
    config: TrackerConfig,
    stage: CascadeStage,
) -> CostMatrix:
    """Similarity matrix for one cascade stage (rows: detections, cols: tracks)."""
    det_boxes = boxes_to_array(d.box for d in detections)
    if stage is CascadeStage.LAST_CHANCE:
        track_boxes = boxes_to_array(t.last_observation for t in tracks)
    else:
        track_boxes = boxes_to_array(t.predicted_box for t in tracks)
    geometry = pairwise_similarity(
        config.association_metric, det_boxes, track_boxes, config.fish_iou_params
    )
    if stage is CascadeStage.LAST_CHANCE:
        return geometry

    cost = geometry
    if config.reid_enabled and detections and tracks:
        cosine, mask = _appearance(detections, tracks)
        if stage is CascadeStage.HIGH:
            cost = np.where(
                mask,
                config.w_cost_iou * geometry + config.w_cost_emb * cosine,
                config.w_cost_iou * geometry,
            )
        else:
            cost = np.where(mask, geometry + config.lambda_emb * cosine, geometry)

    if config.score_cost_weight > 0.0 and detections and tracks:
        det_scores = np.array([d.score for d in detections])[:, None]
        track_scores = np.array([t.predicted_score for t in tracks])[None, :]
        cost = cost + config.score_cost_weight * (1.0 - np.abs(det_scores - track_scores))
    return np.asarray(cost, dtype=np.float64)
