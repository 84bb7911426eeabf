"""Combined evaluation report."""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING

from sutrack.metrics.clear import DEFAULT_IOU_THRESHOLD, ClearMetrics, clear_metrics
from sutrack.metrics.identity import IdentityMetrics, id_metrics

if TYPE_CHECKING:
    from sutrack.metrics.trajectory import TrajectorySet

REPORT_COLUMNS = (
    "MOTA",
    "IDF1",
    "IDP",
    "IDR",
    "MOTP",
    "FP",
    "FN",
    "IDSW",
    "Frag",
    "IDTP",
    "IDFP",
    "IDFN",
    "GT",
)


@dataclass(frozen=True)
class EvalReport:
    """CLEAR and identity metrics of one or more sequences."""

    clear: ClearMetrics
    identity: IdentityMetrics

    @property
    def mota(self) -> float:
        return self.clear.mota

    @property
    def motp(self) -> float:
        return self.clear.motp

    @property
    def idf1(self) -> float:
        return self.identity.idf1

    @property
    def idp(self) -> float:
        return self.identity.idp

    @property
    def idr(self) -> float:
        return self.identity.idr

    @property
    def fp(self) -> int:
        return self.clear.fp

    @property
    def fn(self) -> int:
        return self.clear.fn

    @property
    def idsw(self) -> int:
        return self.clear.idsw

    @property
    def frag(self) -> int:
        return self.clear.frag

    @property
    def idtp(self) -> int:
        return self.identity.idtp

    @property
    def idfp(self) -> int:
        return self.identity.idfp

    @property
    def idfn(self) -> int:
        return self.identity.idfn

    @property
    def gt_count(self) -> int:
        return self.clear.gt_count

    @classmethod
    def combine(cls, reports: Iterable[EvalReport]) -> EvalReport:
        """Sum counts over sequences and recompute the ratios."""
        clear_totals: dict[str, float] = {}
        identity_totals: dict[str, int] = {}
        for report in reports:
            for key, value in asdict(report.clear).items():
                clear_totals[key] = clear_totals.get(key, 0) + value
            for key, value in asdict(report.identity).items():
                identity_totals[key] = identity_totals.get(key, 0) + value
        if not clear_totals:
            return cls(ClearMetrics(0, 0, 0, 0, 0, 0, 0, 0.0), IdentityMetrics(0, 0, 0))
        iou_sum = float(clear_totals.pop("iou_sum"))
        counts = {key: int(value) for key, value in clear_totals.items()}
        return cls(ClearMetrics(iou_sum=iou_sum, **counts), IdentityMetrics(**identity_totals))

    def as_row(self) -> dict[str, float | int]:
        return {
            "MOTA": self.mota,
            "IDF1": self.idf1,
            "IDP": self.idp,
            "IDR": self.idr,
            "MOTP": self.motp,
            "FP": self.fp,
            "FN": self.fn,
            "IDSW": self.idsw,
            "Frag": self.frag,
            "IDTP": self.idtp,
            "IDFP": self.idfp,
            "IDFN": self.idfn,
            "GT": self.gt_count,
        }


def evaluate(
    gt: TrajectorySet, pred: TrajectorySet, iou_threshold: float = DEFAULT_IOU_THRESHOLD
) -> EvalReport:
    return EvalReport(
        clear=clear_metrics(gt, pred, iou_threshold),
        identity=id_metrics(gt, pred, iou_threshold),
    )
