"""Configuration schema for sutrack.

Pydantic v2 models acting as the validated boundary between raw configuration
sources (YAML files, in-memory dicts) and the tracking engine.  Every model
is frozen and rejects unknown keys.

Shipped in this module
----------------------
- FishIouParams  : central-region insets, component weights, scale constant
- UkfSettings    : sigma-point spread, noise scales, state clamps
- TrackerConfig  : cascade thresholds, lifecycle, fusion weights
- SimParams      : synthetic sequence and detector-noise parameters
- SuTrackConfig  : file-level model with ``tracker``/``fishiou``/``ukf``/``sim``
"""
from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

AssociationMetricName = Literal["fishiou", "iou", "giou", "diou"]
MotionModelName = Literal["ukf", "kf"]

_FROZEN = ConfigDict(extra="forbid", frozen=True)


class FishIouParams(BaseModel):
    """Parameters of the FishIoU similarity.

    Parameters
    ----------
    alpha_front, beta_vertical, gamma_rear:
        Central-region insets as fractions of box width (front, rear) and
        height (top and bottom).
    w1 .. w5:
        Weights of IoU, central IoU, aspect consistency, area consistency and
        the scaled center-distance penalty.
    scale_constant:
        Area (px²) at which the small-target scale reaches ``1 - 1/e``.
    front_edge:
        Which box edge receives the ``alpha_front`` inset.
    """

    model_config = _FROZEN

    alpha_front: float = Field(default=0.15, ge=0.0, lt=1.0)
    beta_vertical: float = Field(default=0.3, ge=0.0, lt=0.5)
    gamma_rear: float = Field(default=0.25, ge=0.0, lt=1.0)
    w1: float = Field(default=1.0, ge=0.0)
    w2: float = Field(default=0.3, ge=0.0)
    w3: float = Field(default=0.1, ge=0.0)
    w4: float = Field(default=0.2, ge=0.0)
    w5: float = Field(default=0.4, ge=0.0)
    scale_constant: float = Field(default=1000.0, gt=0.0)
    front_edge: Literal["left", "right"] = "left"

    @model_validator(mode="after")
    def _central_region_non_degenerate(self) -> FishIouParams:
        if self.alpha_front + self.gamma_rear >= 1.0:
            raise ValueError("alpha_front + gamma_rear must be < 1")
        return self

    @property
    def max_similarity(self) -> float:
        """Value reached only by identical boxes: ``w1 + w2 + w3 + w4``."""
        return self.w1 + self.w2 + self.w3 + self.w4


class UkfSettings(BaseModel):
    """Unscented filter settings.

    Noise standard deviations are relative: position and speed terms scale
    with the box diagonal at track birth, area terms with the birth area,
    aspect terms with the birth aspect ratio.  Heading and turn-rate terms
    are absolute (radians, radians/frame).

    ``kappa=None`` resolves to ``3 - n`` for the eight-dimensional state.

    ``maneuver_gate`` bounds the normalized position innovation (chi-square,
    two degrees of freedom, 99.9 %).  An observation beyond it restarts the
    motion from the last two observed boxes, as after a wall bounce.  ``None``
    disables the restart.
    """

    model_config = _FROZEN

    alpha_spread: float = Field(default=1.0, gt=0.0)
    beta_prior: float = Field(default=2.0, ge=0.0)
    kappa: float | None = None

    process_position_std: float = Field(default=0.01, ge=0.0)
    process_speed_std: float = Field(default=0.02, ge=0.0)
    process_heading_std: float = Field(default=0.02, ge=0.0)
    process_turn_rate_std: float = Field(default=0.1, ge=0.0)
    process_area_std: float = Field(default=0.02, ge=0.0)
    process_area_rate_std: float = Field(default=0.005, ge=0.0)
    process_aspect_std: float = Field(default=0.01, ge=0.0)

    measurement_position_std: float = Field(default=0.05, gt=0.0)
    measurement_area_std: float = Field(default=0.1, gt=0.0)
    measurement_aspect_std: float = Field(default=0.05, gt=0.0)

    initial_speed_std: float = Field(default=0.5, gt=0.0)
    initial_heading_std: float = Field(default=1.0, gt=0.0)
    initial_turn_rate_std: float = Field(default=0.3, gt=0.0)
    initial_area_rate_std: float = Field(default=0.05, gt=0.0)

    turn_rate_epsilon: float = Field(default=1e-6, gt=0.0)
    min_area: float = Field(default=1.0, gt=0.0)
    min_aspect: float = Field(default=0.05, gt=0.0)
    max_aspect: float = Field(default=20.0, gt=0.0)
    maneuver_gate: float | None = Field(default=13.82, gt=0.0)

    @model_validator(mode="after")
    def _aspect_range(self) -> UkfSettings:
        if self.min_aspect >= self.max_aspect:
            raise ValueError("min_aspect must be < max_aspect")
        return self


class TrackerConfig(BaseModel):
    """Validated configuration of the cascade tracker.

    ``tau_iou`` gates matches on the FishIoU scale.  Because non-overlapping
    boxes of matching shape already score up to ``w3 + w4`` (0.3 with the
    default weights), the FishIoU gate must stay above that value.  The plain
    IoU-family baselines use ``tau_iou_baseline`` instead.

    A matched track emits its filtered box unless that box overlaps the
    matched detection by less than ``output_min_iou``, in which case the
    detection box is emitted.  Tentative tracks unobserved for more than
    ``tentative_max_age`` frames are dropped.
    """

    model_config = _FROZEN

    tau_high: float = Field(default=0.6, ge=0.0, le=1.0)
    tau_low: float = Field(default=0.1, ge=0.0, le=1.0)
    tau_iou: float = 0.45
    tau_iou_baseline: float = 0.3
    max_age: int = Field(default=30, ge=1)
    min_hits: int = Field(default=3, ge=0)
    tentative_max_age: int = Field(default=0, ge=0)
    output_min_iou: float = Field(default=0.6, ge=0.0, le=1.0)
    reid_enabled: bool = False
    w_cost_iou: float = Field(default=1.0, ge=0.0)
    w_cost_emb: float = Field(default=0.25, ge=0.0)
    lambda_emb: float = Field(default=0.25, ge=0.0)
    score_cost_weight: float = Field(default=0.0, ge=0.0)
    embedding_momentum: float = Field(default=0.9, ge=0.0, le=1.0)
    motion_model: MotionModelName = "ukf"
    association_metric: AssociationMetricName = "fishiou"
    fps: float = Field(default=25.0, gt=0.0)
    fish_iou_params: FishIouParams = Field(default_factory=FishIouParams)
    ukf_params: UkfSettings = Field(default_factory=UkfSettings)

    @model_validator(mode="after")
    def _threshold_order(self) -> TrackerConfig:
        if not self.tau_low < self.tau_high:
            raise ValueError("tau_low must be < tau_high")
        return self

    @property
    def acceptance_threshold(self) -> float:
        """Match gate for the configured association metric."""
        if self.association_metric == "fishiou":
            return self.tau_iou
        return self.tau_iou_baseline


class SimParams(BaseModel):
    """Synthetic multi-fish sequence parameters.

    Kinematics: per-fish Ornstein-Uhlenbeck speed (mean ``speed_mean``) and
    turn-rate (mean 0) processes.  Detector model: per-box miss probability,
    Gaussian center and size jitter, Poisson false positives per frame.
    """

    model_config = _FROZEN

    n_fish: int = Field(default=10, ge=0)
    n_frames: int = Field(default=500, ge=0)
    arena_width: float = Field(default=1920.0, gt=0.0)
    arena_height: float = Field(default=1080.0, gt=0.0)

    speed_mean: float = Field(default=4.0, ge=0.0)
    speed_reversion: float = Field(default=0.1, ge=0.0, le=1.0)
    speed_sigma: float = Field(default=0.5, ge=0.0)
    turn_reversion: float = Field(default=0.2, ge=0.0, le=1.0)
    turn_sigma: float = Field(default=0.05, ge=0.0)

    body_area_mean: float = Field(default=600.0, gt=0.0)
    body_area_jitter: float = Field(default=0.2, ge=0.0)
    aspect_mean: float = Field(default=2.5, gt=0.0)
    aspect_jitter: float = Field(default=0.1, ge=0.0)

    center_jitter_sigma: float = Field(default=0.0, ge=0.0)
    size_jitter_sigma: float = Field(default=0.0, ge=0.0)
    miss_probability: float = Field(default=0.0, ge=0.0, le=1.0)
    false_positive_rate: float = Field(default=0.0, ge=0.0)
    score_mean: float = Field(default=0.9, ge=0.0, le=1.0)
    score_sigma: float = Field(default=0.05, ge=0.0)
    fp_score_mean: float = Field(default=0.35, ge=0.0, le=1.0)
    fp_score_sigma: float = Field(default=0.1, ge=0.0)

    seed: int = Field(default=0, ge=0, lt=2**64)
    rng_algorithm: Literal["philox", "pcg64"] = "philox"


class SuTrackConfig(BaseModel):
    """Everything a config file can hold.

    On disk the tracker's nested parameter blocks live in their own sections
    (``fishiou`` and ``ukf``); see :meth:`to_sections`.
    """

    model_config = _FROZEN

    tracker: TrackerConfig = Field(default_factory=TrackerConfig)
    sim: SimParams = Field(default_factory=SimParams)

    def to_sections(self) -> dict[str, dict[str, object]]:
        """Return the on-disk section layout as plain dicts."""
        tracker = self.tracker.model_dump(exclude={"fish_iou_params", "ukf_params"})
        return {
            "tracker": tracker,
            "fishiou": self.tracker.fish_iou_params.model_dump(),
            "ukf": self.tracker.ukf_params.model_dump(),
            "sim": self.sim.model_dump(),
        }
