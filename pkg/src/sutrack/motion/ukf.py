"""Unscented Kalman filter core.

Functional, value-in/value-out implementation: ``generate_sigma_points``,
``predict`` and ``update`` take a ``StateEstimate`` and return a new one.
The nonlinear functions are bundled in a ``MotionModel`` so the same code
drives the CTRV tracker state and, in tests, purely linear systems.

Weights follow the scaled unscented transform::

    lambda = alpha^2 (n + kappa) - n
    w_m[0] = lambda / (n + lambda)
    w_c[0] = lambda / (n + lambda) + (1 - alpha^2 + beta)
    w_m[i] = w_c[i] = 1 / (2 (n + lambda))      i = 1 .. 2n

With the defaults (alpha=1, beta=2, kappa=3-n) the spread is ``n+lambda=3``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
import scipy.linalg

from sutrack.motion.ctrv import (
    HEADING,
    MotionState,
    clamp_state,
    ctrv_transition_array,
    measure_array,
    wrap_angle,
)
from sutrack.schema.config import UkfSettings
from sutrack.schema.errors import NumericalDegeneracyError

if TYPE_CHECKING:
    from collections.abc import Callable

    from numpy.typing import NDArray

    from sutrack.geometry.box import BoundingBox

logger = logging.getLogger(__name__)

_PSD_TOLERANCE = 1e-12
_PSD_FLOOR_FACTOR = 1e-9


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StateEstimate:
    """Mean vector and covariance matrix of one tracked target."""

    mean: NDArray[np.float64]
    covariance: NDArray[np.float64]

    def __post_init__(self) -> None:
        n = self.mean.shape[0]
        if self.mean.ndim != 1 or self.covariance.shape != (n, n):
            raise ValueError(
                f"Covariance shape {self.covariance.shape} does not match mean of length {n}"
            )
        if not (np.all(np.isfinite(self.mean)) and np.all(np.isfinite(self.covariance))):
            raise NumericalDegeneracyError("State estimate contains non-finite entries")

    @property
    def n(self) -> int:
        return int(self.mean.shape[0])


@dataclass(frozen=True)
class UkfParams:
    """Sigma-point spread and noise covariances for one filter.

    ``kappa=None`` resolves to ``3 - n``.
    """

    process_noise: NDArray[np.float64]
    measurement_noise: NDArray[np.float64]
    alpha_spread: float = 1.0
    beta_prior: float = 2.0
    kappa: float | None = None

    def __post_init__(self) -> None:
        for name, matrix in (("Q", self.process_noise), ("R", self.measurement_noise)):
            if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
                raise ValueError(f"{name} must be square, got shape {matrix.shape}")
            if not np.allclose(matrix, matrix.T, atol=1e-12):
                raise ValueError(f"{name} must be symmetric")
            if np.linalg.eigvalsh(matrix).min() < -_PSD_TOLERANCE:
                raise ValueError(f"{name} must be positive semi-definite")
        if self.n + self.lambda_ <= 0:
            raise ValueError(f"n + lambda must be positive, got {self.n + self.lambda_}")

    @property
    def n(self) -> int:
        return int(self.process_noise.shape[0])

    @property
    def resolved_kappa(self) -> float:
        return 3.0 - self.n if self.kappa is None else self.kappa

    @property
    def lambda_(self) -> float:
        return self.alpha_spread**2 * (self.n + self.resolved_kappa) - self.n

    @classmethod
    def for_box(cls, box: BoundingBox, settings: UkfSettings) -> UkfParams:
        """Diagonal Q and R scaled to a track's birth box."""
        diag, area, aspect = box.diagonal, box.area, box.aspect
        q = np.array(
            [
                settings.process_position_std * diag,
                settings.process_position_std * diag,
                settings.process_speed_std * diag,
                settings.process_heading_std,
                settings.process_turn_rate_std,
                settings.process_area_std * area,
                settings.process_area_rate_std * area,
                settings.process_aspect_std * aspect,
            ]
        )
        r = np.array(
            [
                settings.measurement_position_std * diag,
                settings.measurement_position_std * diag,
                settings.measurement_area_std * area,
                settings.measurement_aspect_std * aspect,
            ]
        )
        return cls(
            process_noise=np.diag(q**2),
            measurement_noise=np.diag(r**2),
            alpha_spread=settings.alpha_spread,
            beta_prior=settings.beta_prior,
            kappa=settings.kappa,
        )


@dataclass(frozen=True)
class SigmaSet:
    """``2n+1`` sigma points (rows) with mean and covariance weights."""

    points: NDArray[np.float64]
    w_m: NDArray[np.float64]
    w_c: NDArray[np.float64]


def _identity(state: NDArray[np.float64]) -> NDArray[np.float64]:
    return state


@dataclass(frozen=True)
class MotionModel:
    """Transition and measurement functions plus angle bookkeeping.

    ``transition`` and ``measurement`` act on arrays of shape ``(k, n)``.
    Components listed in ``angle_indices`` are averaged on the circle and
    their residuals wrapped.
    """

    transition: Callable[[NDArray[np.float64], float], NDArray[np.float64]]
    measurement: Callable[[NDArray[np.float64]], NDArray[np.float64]]
    angle_indices: tuple[int, ...] = ()
    constrain: Callable[[NDArray[np.float64]], NDArray[np.float64]] = field(
        default=_identity
    )


def ctrv_model(settings: UkfSettings | None = None) -> MotionModel:
    """The tracker's CTRV model with clamps taken from *settings*."""
    settings = settings or UkfSettings()
    epsilon = settings.turn_rate_epsilon

    def transition(states: NDArray[np.float64], dt: float) -> NDArray[np.float64]:
        return ctrv_transition_array(states, dt, epsilon)

    def constrain(state: NDArray[np.float64]) -> NDArray[np.float64]:
        return clamp_state(state, settings.min_area, settings.min_aspect, settings.max_aspect)

    return MotionModel(
        transition=transition,
        measurement=measure_array,
        angle_indices=(HEADING,),
        constrain=constrain,
    )


CTRV_MODEL = ctrv_model()


# ---------------------------------------------------------------------------
# Covariance health
# ---------------------------------------------------------------------------


def psd_repair(matrix: NDArray[np.float64]) -> NDArray[np.float64]:
    """Symmetrize and lift negative eigenvalues to ``1e-9 * trace / n``.

    Positive semi-definite input comes back symmetrized and otherwise
    unchanged.

    Raises
    ------
    NumericalDegeneracyError
        If the matrix holds non-finite entries.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if not np.all(np.isfinite(matrix)):
        raise NumericalDegeneracyError("Covariance contains non-finite entries")
    sym = (matrix + matrix.T) / 2.0
    eigvals, eigvecs = np.linalg.eigh(sym)
    tolerance = _PSD_TOLERANCE * max(1.0, float(np.abs(eigvals).max(initial=0.0)))
    if eigvals.size == 0 or eigvals.min() >= -tolerance:
        return sym

    n = sym.shape[0]
    floor = _PSD_FLOOR_FACTOR * float(np.trace(sym)) / n
    if floor <= 0.0:
        floor = _PSD_FLOOR_FACTOR
    lifted = np.where(eigvals < 0.0, floor, eigvals)
    repaired = (eigvecs * lifted) @ eigvecs.T
    logger.debug("Repaired covariance: min eigenvalue %.3e lifted to %.3e", eigvals.min(), floor)
    return (repaired + repaired.T) / 2.0


def _matrix_sqrt(matrix: NDArray[np.float64]) -> NDArray[np.float64]:
    """Factor ``S`` with ``S @ S.T == matrix``; lower-triangular when positive definite.

    Singular PSD matrices (a zero covariance, unobserved components) fall
    back to the symmetric eigen square root.
    """
    try:
        return np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError:
        pass
    repaired = psd_repair(matrix)
    try:
        return np.linalg.cholesky(repaired)
    except np.linalg.LinAlgError:
        eigvals, eigvecs = np.linalg.eigh(repaired)
        root = eigvecs * np.sqrt(np.clip(eigvals, 0.0, None))
    if not np.all(np.isfinite(root)):
        raise NumericalDegeneracyError("Covariance could not be factorized after repair")
    return np.asarray(root, dtype=np.float64)


# ---------------------------------------------------------------------------
# Sigma points
# ---------------------------------------------------------------------------


def sigma_weights(n: int, params: UkfParams) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    lam = params.lambda_
    w_m = np.full(2 * n + 1, 1.0 / (2.0 * (n + lam)))
    w_c = w_m.copy()
    w_m[0] = lam / (n + lam)
    w_c[0] = lam / (n + lam) + (1.0 - params.alpha_spread**2 + params.beta_prior)
    return w_m, w_c


def generate_sigma_points(estimate: StateEstimate, params: UkfParams) -> SigmaSet:
    """Build the ``2n+1`` sigma points of *estimate*.

    ``points[0]`` is the mean; ``points[i]`` and ``points[i+n]`` sit
    symmetrically at ``mean +/- S[:, i-1]`` where ``S S^T = (n+lambda) P``.
    """
    n = estimate.n
    if params.n != n:
        raise ValueError(f"Parameters are for n={params.n}, estimate has n={n}")
    root = _matrix_sqrt((n + params.lambda_) * estimate.covariance)
    points = np.empty((2 * n + 1, n), dtype=np.float64)
    points[0] = estimate.mean
    points[1 : n + 1] = estimate.mean + root.T
    points[n + 1 :] = estimate.mean - root.T
    w_m, w_c = sigma_weights(n, params)
    return SigmaSet(points=points, w_m=w_m, w_c=w_c)


def _circular_mean(
    angles: NDArray[np.float64], weights: NDArray[np.float64], reference: float
) -> float:
    offsets = angles - reference
    sin_sum = float(weights @ np.sin(offsets))
    cos_sum = float(weights @ np.cos(offsets))
    # A negative central weight can flip the resultant; it is taken about the
    # central point, so a negative cosine sum means the flip, not a true mean.
    if cos_sum < 0.0:
        sin_sum, cos_sum = -sin_sum, -cos_sum
    return float(wrap_angle(reference + np.arctan2(sin_sum, cos_sum)))


def unscented_mean(
    points: NDArray[np.float64],
    w_m: NDArray[np.float64],
    angle_indices: tuple[int, ...] = (),
) -> NDArray[np.float64]:
    mean = np.asarray(w_m @ points, dtype=np.float64)
    for idx in angle_indices:
        mean[idx] = _circular_mean(points[:, idx], w_m, float(points[0, idx]))
    return mean


def residuals(
    points: NDArray[np.float64],
    mean: NDArray[np.float64],
    angle_indices: tuple[int, ...] = (),
) -> NDArray[np.float64]:
    diff = points - mean
    for idx in angle_indices:
        diff[:, idx] = wrap_angle(diff[:, idx])
    return diff


def unscented_moments(
    sigma: SigmaSet, angle_indices: tuple[int, ...] = ()
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Weighted mean and covariance of a sigma set (no noise added)."""
    mean = unscented_mean(sigma.points, sigma.w_m, angle_indices)
    diff = residuals(sigma.points, mean, angle_indices)
    covariance = (diff * sigma.w_c[:, None]).T @ diff
    return mean, covariance


# ---------------------------------------------------------------------------
# Filter steps
# ---------------------------------------------------------------------------


def predict(
    estimate: StateEstimate,
    params: UkfParams,
    dt: float = 1.0,
    model: MotionModel = CTRV_MODEL,
) -> StateEstimate:
    """Propagate sigma points through the transition and add ``Q * dt``."""
    sigma = generate_sigma_points(estimate, params)
    propagated = SigmaSet(
        points=model.transition(sigma.points, dt), w_m=sigma.w_m, w_c=sigma.w_c
    )
    mean, covariance = unscented_moments(propagated, model.angle_indices)
    covariance = psd_repair(covariance + params.process_noise * dt)
    return StateEstimate(mean=mean, covariance=covariance)


def _checked_measurement(
    measurement: NDArray[np.float64], params: UkfParams
) -> NDArray[np.float64]:
    z = np.asarray(measurement, dtype=np.float64)
    m = params.measurement_noise.shape[0]
    if z.shape != (m,) or not np.all(np.isfinite(z)):
        raise ValueError(f"Measurement must be a finite vector of length {m}, got {z!r}")
    return z


def _measurement_moments(
    predicted: StateEstimate, params: UkfParams, model: MotionModel
) -> tuple[SigmaSet, NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """Sigma set, projected points, ``z_hat`` and ``P_zz`` (R included)."""
    sigma = generate_sigma_points(predicted, params)
    z_points = model.measurement(sigma.points)
    z_hat, p_zz = unscented_moments(SigmaSet(z_points, sigma.w_m, sigma.w_c))
    return sigma, z_points, z_hat, p_zz + params.measurement_noise


def normalized_innovation(
    predicted: StateEstimate,
    measurement: NDArray[np.float64],
    params: UkfParams,
    model: MotionModel = CTRV_MODEL,
    components: tuple[int, ...] | None = None,
) -> float:
    """Squared Mahalanobis distance of *measurement* from the predicted measurement.

    *components* restricts the distance to a subset of measurement indices
    (all of them by default).  Under a consistent filter the value follows
    a chi-square law with ``len(components)`` degrees of freedom.
    """
    z = _checked_measurement(measurement, params)
    _, _, z_hat, p_zz = _measurement_moments(predicted, params, model)
    index = np.arange(z.shape[0]) if components is None else np.asarray(components)
    residual = (z - z_hat)[index]
    block = p_zz[np.ix_(index, index)]
    try:
        return float(residual @ scipy.linalg.solve(block, residual, assume_a="sym"))
    except np.linalg.LinAlgError as exc:
        raise NumericalDegeneracyError(
            "Innovation covariance is singular; measurement noise must be positive definite",
        ) from exc


def update(
    predicted: StateEstimate,
    measurement: NDArray[np.float64],
    params: UkfParams,
    model: MotionModel = CTRV_MODEL,
) -> StateEstimate:
    """Measurement update.

    Sigma points of the prediction are pushed through the measurement
    function to get ``z_hat``, ``P_zz`` (plus R) and ``P_xz``; the gain is
    ``K = P_xz P_zz^-1``; the posterior covariance ``P - K P_zz K^T`` is
    symmetrized and repaired, and the mean passes through the model's
    constraints.

    Raises
    ------
    NumericalDegeneracyError
        If ``P_zz`` is singular.
    """
    z = _checked_measurement(measurement, params)
    sigma, z_points, z_hat, p_zz = _measurement_moments(predicted, params, model)

    x_diff = residuals(sigma.points, predicted.mean, model.angle_indices)
    z_diff = z_points - z_hat
    p_xz = (x_diff * sigma.w_c[:, None]).T @ z_diff

    try:
        gain = scipy.linalg.solve(p_zz, p_xz.T, assume_a="sym").T
    except np.linalg.LinAlgError as exc:
        raise NumericalDegeneracyError(
            "Innovation covariance is singular; measurement noise must be positive definite",
        ) from exc

    mean = predicted.mean + gain @ (z - z_hat)
    for idx in model.angle_indices:
        mean[idx] = float(wrap_angle(mean[idx]))
    covariance = psd_repair(predicted.covariance - gain @ p_zz @ gain.T)
    return StateEstimate(mean=model.constrain(mean), covariance=covariance)


def initial_estimate(box: BoundingBox, settings: UkfSettings) -> StateEstimate:
    """Birth estimate: observed components from *box*, wide priors elsewhere."""
    diag, area, aspect = box.diagonal, box.area, box.aspect
    stds = np.array(
        [
            settings.measurement_position_std * diag,
            settings.measurement_position_std * diag,
            settings.initial_speed_std * diag,
            settings.initial_heading_std,
            settings.initial_turn_rate_std,
            settings.measurement_area_std * area,
            settings.initial_area_rate_std * area,
            settings.measurement_aspect_std * aspect,
        ]
    )
    mean = MotionState.from_box(box).to_vector()
    return StateEstimate(mean=mean, covariance=np.diag(stds**2))
