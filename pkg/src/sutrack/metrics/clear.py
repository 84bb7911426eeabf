"""CLEAR MOT counts: FP, FN, identity switches, fragmentation, MOTA, MOTP."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from sutrack.association.hungarian import hungarian
from sutrack.geometry.box import boxes_to_array
from sutrack.geometry.similarity import pairwise_iou

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from sutrack.metrics.trajectory import TrajectoryEntry, TrajectorySet

logger = logging.getLogger(__name__)

DEFAULT_IOU_THRESHOLD = 0.5


@dataclass(frozen=True)
class ClearMetrics:
    """CLEAR MOT counts of one sequence (or a sum of sequences)."""

    gt_count: int
    pred_count: int
    matches: int
    fp: int
    fn: int
    idsw: int
    frag: int
    iou_sum: float

    @property
    def mota(self) -> float:
        return 1.0 - (self.fn + self.fp + self.idsw) / max(self.gt_count, 1)

    @property
    def motp(self) -> float:
        """Mean IoU of matched pairs (0 when nothing matched)."""
        return self.iou_sum / self.matches if self.matches else 0.0


def _iou_matrix(gt: list[TrajectoryEntry], pred: list[TrajectoryEntry]) -> NDArray[np.float64]:
    return pairwise_iou(boxes_to_array(e.box for e in gt), boxes_to_array(e.box for e in pred))


def match_frame(
    gt: list[TrajectoryEntry],
    pred: list[TrajectoryEntry],
    previous: dict[int, int],
    iou_threshold: float,
) -> dict[int, tuple[int, float]]:
    """Match one frame: ``gt identity -> (pred identity, IoU)``.

    Correspondences in *previous* (gt identity -> last matched pred identity)
    are kept whenever both identities are present and still overlap by at
    least *iou_threshold*; the remainder is matched by maximum total IoU.
    """
    if not gt or not pred:
        return {}
    overlap = _iou_matrix(gt, pred)
    pred_index = {e.identity: j for j, e in enumerate(pred)}
    matched: dict[int, tuple[int, float]] = {}
    used_rows: set[int] = set()
    used_cols: set[int] = set()

    for i, entry in enumerate(gt):
        candidate = previous.get(entry.identity)
        j = pred_index.get(candidate) if candidate is not None else None
        if j is None or j in used_cols or overlap[i, j] < iou_threshold:
            continue
        matched[entry.identity] = (pred[j].identity, float(overlap[i, j]))
        used_rows.add(i)
        used_cols.add(j)

    rows = [i for i in range(len(gt)) if i not in used_rows]
    cols = [j for j in range(len(pred)) if j not in used_cols]
    if rows and cols:
        sub = overlap[np.ix_(rows, cols)]
        gated = np.where(sub >= iou_threshold, sub, 0.0)
        for r, c in hungarian(gated).matches:
            if sub[r, c] < iou_threshold:
                continue
            i, j = rows[r], cols[c]
            matched[gt[i].identity] = (pred[j].identity, float(overlap[i, j]))
    return matched


def clear_metrics(
    gt: TrajectorySet, pred: TrajectorySet, iou_threshold: float = DEFAULT_IOU_THRESHOLD
) -> ClearMetrics:
    """CLEAR MOT evaluation with match carry-over between frames.

    An identity switch is counted when a ground-truth identity is matched to
    a different prediction than at its previous match.  A fragmentation is
    counted each time a ground-truth identity goes from matched to unmatched
    while it is still present.
    """
    if not 0.0 < iou_threshold < 1.0:
        raise ValueError(f"iou_threshold must lie in (0, 1), got {iou_threshold}")

    last_match: dict[int, int] = {}
    was_matched: dict[int, bool] = {}
    gt_count = pred_count = matches = idsw = frag = 0
    iou_sum = 0.0

    for frame in sorted(set(gt.frames()) | set(pred.frames())):
        gt_entries = gt.entries(frame)
        pred_entries = pred.entries(frame)
        gt_count += len(gt_entries)
        pred_count += len(pred_entries)
        matched = match_frame(gt_entries, pred_entries, last_match, iou_threshold)

        for entry in gt_entries:
            identity = entry.identity
            if identity in matched:
                pred_identity, overlap = matched[identity]
                if identity in last_match and last_match[identity] != pred_identity:
                    idsw += 1
                    logger.debug(
                        "Frame %d: gt %d switched %d -> %d",
                        frame,
                        identity,
                        last_match[identity],
                        pred_identity,
                    )
                last_match[identity] = pred_identity
                iou_sum += overlap
                was_matched[identity] = True
            else:
                if was_matched.get(identity, False):
                    frag += 1
                was_matched[identity] = False
        matches += len(matched)

    return ClearMetrics(
        gt_count=gt_count,
        pred_count=pred_count,
        matches=matches,
        fp=pred_count - matches,
        fn=gt_count - matches,
        idsw=idsw,
        frag=frag,
        iou_sum=iou_sum,
    )
