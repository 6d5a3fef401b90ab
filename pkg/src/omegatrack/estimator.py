"""
Closed-form rotation-rate estimation from one tracked point.

Under orthographic projection, with the camera fixated on the rotation axis,
every body point obeys ``ydd + y * omega**2 = 0``. That gives

    omega**2 = -ydd / y

If the fixation point is off the axis by an unknown constant ``o``, two
tracked points (or a point and the fixation point) give

    omega**2 = -(ydd1 - ydd2) / (y1 - y2),    o = y1 + ydd1 / omega**2

Only the magnitude of omega is recoverable. Per-sample values are screened
for missing derivatives, near-singular displacement and negative omega**2
before aggregation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    CoincidentDisplacements,
    NonPositiveOmegaSq,
    TimestampMismatch,
    ZeroDisplacement,
)
from .numdiff import DerivativeSeries

VALID = "none"
NEGATIVE = "negative_omega_sq"
NEAR_SINGULAR = "near_singular"
MISSING = "missing_derivative"
REASONS = (VALID, NEGATIVE, NEAR_SINGULAR, MISSING)


@dataclass(frozen=True)
class EstimatorConfig:
    singular_eps_rel: float = 0.05
    aggregation: str = "mean"

    def __post_init__(self):
        if not 0 <= self.singular_eps_rel < 1:
            raise ValueError("singular_eps_rel must lie in [0, 1)")
        if self.aggregation not in ("mean", "median"):
            raise ValueError(f"unknown aggregation {self.aggregation!r}")


class OmegaSample(NamedTuple):
    t: float
    omega_sq: float | None
    omega: float | None
    valid: bool
    invalid_reason: str


@dataclass
class OmegaEstimate:
    """Per-sample omega for one trajectory plus aggregates over valid samples.

    Omega values are magnitudes; ``direction`` is always ``"unknown"``.
    Arrays ``omega_sq`` and ``omega`` hold NaN where a value is absent.
    """

    point_id: str
    t: np.ndarray
    omega_sq: np.ndarray
    omega: np.ndarray
    valid: np.ndarray
    reason: np.ndarray
    aggregation: str = "mean"
    center_offset: float | None = None
    reference_id: str | None = None
    direction: str = "unknown"

    @property
    def n_valid(self) -> int:
        return int(np.count_nonzero(self.valid))

    @property
    def samples(self) -> list[OmegaSample]:
        def opt(v):
            return None if np.isnan(v) else float(v)

        return [
            OmegaSample(float(t), opt(w2), opt(w), bool(v), str(r))
            for t, w2, w, v, r in zip(self.t, self.omega_sq, self.omega, self.valid, self.reason)
        ]

    def _valid_omegas(self):
        return self.omega[self.valid]

    @property
    def mean_omega(self) -> float | None:
        w = self._valid_omegas()
        return math.fsum(w) / w.size if w.size else None

    @property
    def median_omega(self) -> float | None:
        w = self._valid_omegas()
        return float(np.median(w)) if w.size else None

    @property
    def std_omega(self) -> float | None:
        w = self._valid_omegas()
        if not w.size:
            return None
        mu = math.fsum(w) / w.size
        return math.sqrt(math.fsum((w - mu) ** 2) / w.size)

    @property
    def value(self) -> float | None:
        """The configured aggregate (mean or median)."""
        return self.mean_omega if self.aggregation == "mean" else self.median_omega


def omega_sq_single(y: float, ydd: float) -> float:
    """``-ydd / y`` for a point measured from a fixation point on the axis."""
    if y == 0:
        raise ZeroDisplacement("y is exactly zero")
    return -ydd / y


def omega_sq_two_point(y1: float, ydd1: float, y2: float, ydd2: float) -> float:
    """Rotation rate squared when the axis offset is unknown."""
    if y1 == y2:
        raise CoincidentDisplacements("y1 and y2 coincide")
    return -(ydd1 - ydd2) / (y1 - y2)


def recover_center_offset(y: float, ydd: float, omega_sq: float) -> float:
    """Horizontal position of the rotation axis relative to the fixation point."""
    if not omega_sq > 0:
        raise NonPositiveOmegaSq(f"omega_sq must be > 0, got {omega_sq}")
    return y + ydd / omega_sq


def classify_sample(t, y, ydd_present, omega_sq_raw, cfg: EstimatorConfig, y_scale) -> OmegaSample:
    """Screen one sample. Checks run in order: missing, near-singular, negative."""
    if not ydd_present:
        return OmegaSample(t, None, None, False, MISSING)
    if abs(y) < cfg.singular_eps_rel * y_scale or y == 0:
        return OmegaSample(t, omega_sq_raw, None, False, NEAR_SINGULAR)
    if omega_sq_raw is None:
        return OmegaSample(t, None, None, False, MISSING)
    if omega_sq_raw < 0:
        return OmegaSample(t, omega_sq_raw, None, False, NEGATIVE)
    return OmegaSample(t, omega_sq_raw, math.sqrt(omega_sq_raw) + 0.0, True, VALID)


def _classify_arrays(y, ydd, cfg, y_scale):
    """Vectorised form of :func:`classify_sample` over a whole series."""
    y = np.asarray(y, dtype=float)
    ydd = np.asarray(ydd, dtype=float)
    missing = np.isnan(ydd)
    singular = ~missing & ((np.abs(y) < cfg.singular_eps_rel * y_scale) | (y == 0))
    with np.errstate(divide="ignore", invalid="ignore"):
        w2 = np.where(missing | (y == 0), np.nan, -ydd / np.where(y == 0, 1.0, y))
    negative = ~missing & ~singular & (w2 < 0)
    valid = ~missing & ~singular & ~negative
    omega = np.full(y.shape, np.nan)
    omega[valid] = np.sqrt(w2[valid]) + 0.0  # no -0.0
    reason = np.full(y.shape, VALID, dtype=object)
    reason[negative] = NEGATIVE
    reason[singular] = NEAR_SINGULAR
    reason[missing] = MISSING
    return w2, omega, valid, reason


def _y_scale(y):
    y = np.abs(np.asarray(y, dtype=float))
    return float(y.max()) if y.size else 0.0


def estimate_trajectory(series: DerivativeSeries, cfg: EstimatorConfig | None = None) -> OmegaEstimate:
    """Per-sample omega for a single-point series and its aggregates."""
    cfg = cfg or EstimatorConfig()
    if len(series) == 0:
        raise ValueError("empty series")
    w2, omega, valid, reason = _classify_arrays(series.y, series.ydd, cfg, _y_scale(series.y))
    return OmegaEstimate(series.point_id, series.t.copy(), w2, omega, valid, reason, cfg.aggregation)


def estimate_two_point_trajectory(
    series1: DerivativeSeries, series2: DerivativeSeries, cfg: EstimatorConfig | None = None
) -> OmegaEstimate:
    """Omega from the difference of two tracked points, plus the mean axis offset.

    The near-singular threshold is taken relative to ``max|y1 - y2|``.
    """
    cfg = cfg or EstimatorConfig()
    if series1.t.shape != series2.t.shape or np.any(series1.t != series2.t):
        raise TimestampMismatch("series must share timestamps exactly")
    if len(series1) == 0:
        raise ValueError("empty series")
    dy = series1.y - series2.y
    dydd = series1.ydd - series2.ydd
    w2, omega, valid, reason = _classify_arrays(dy, dydd, cfg, _y_scale(dy))
    offset = None
    usable = valid & (w2 > 0)
    if usable.any():
        o = series1.y[usable] + series1.ydd[usable] / w2[usable]
        offset = math.fsum(o) / o.size
    return OmegaEstimate(
        series1.point_id, series1.t.copy(), w2, omega, valid, reason, cfg.aggregation,
        center_offset=offset, reference_id=series2.point_id,
    )
