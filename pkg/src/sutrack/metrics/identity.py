"""Identity metrics: IDTP, IDFP, IDFN and the derived IDF1, IDP, IDR."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from sutrack.association.hungarian import hungarian
from sutrack.geometry.box import boxes_to_array
from sutrack.geometry.similarity import pairwise_iou
from sutrack.metrics.clear import DEFAULT_IOU_THRESHOLD

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from sutrack.metrics.trajectory import TrajectorySet


@dataclass(frozen=True)
class IdentityMetrics:
    idtp: int
    idfp: int
    idfn: int

    @property
    def idf1(self) -> float:
        denominator = 2 * self.idtp + self.idfp + self.idfn
        return 1.0 if denominator == 0 else 2 * self.idtp / denominator

    @property
    def idp(self) -> float:
        denominator = self.idtp + self.idfp
        return 1.0 if denominator == 0 else self.idtp / denominator

    @property
    def idr(self) -> float:
        denominator = self.idtp + self.idfn
        return 1.0 if denominator == 0 else self.idtp / denominator


def overlap_counts(
    gt: TrajectorySet, pred: TrajectorySet, iou_threshold: float = DEFAULT_IOU_THRESHOLD
) -> tuple[list[int], list[int], NDArray[np.int64]]:
    """Frames on which each (gt identity, pred identity) pair overlaps.

    Returns the gt identities, the pred identities and the count matrix
    indexed the same way.
    """
    gt_ids = gt.identities()
    pred_ids = pred.identities()
    gt_index = {identity: i for i, identity in enumerate(gt_ids)}
    pred_index = {identity: j for j, identity in enumerate(pred_ids)}
    counts = np.zeros((len(gt_ids), len(pred_ids)), dtype=np.int64)

    for frame in sorted(set(gt.frames()) & set(pred.frames())):
        gt_entries = gt.entries(frame)
        pred_entries = pred.entries(frame)
        overlap = pairwise_iou(
            boxes_to_array(e.box for e in gt_entries),
            boxes_to_array(e.box for e in pred_entries),
        )
        rows, cols = np.nonzero(overlap >= iou_threshold)
        for r, c in zip(rows, cols):
            counts[gt_index[gt_entries[r].identity], pred_index[pred_entries[c].identity]] += 1
    return gt_ids, pred_ids, counts


def id_metrics(
    gt: TrajectorySet, pred: TrajectorySet, iou_threshold: float = DEFAULT_IOU_THRESHOLD
) -> IdentityMetrics:
    """Global one-to-one identity correspondence maximizing IDTP."""
    if not 0.0 < iou_threshold < 1.0:
        raise ValueError(f"iou_threshold must lie in (0, 1), got {iou_threshold}")
    _, _, counts = overlap_counts(gt, pred, iou_threshold)
    idtp = int(hungarian(counts.astype(np.float64)).total(counts)) if counts.size else 0
    return IdentityMetrics(idtp=idtp, idfp=len(pred) - idtp, idfn=len(gt) - idtp)
