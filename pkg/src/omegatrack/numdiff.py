"""
Finite-difference time derivatives of tracked horizontal trajectories.

Two schemes are available:

``backward``
    First derivative by backward difference, second derivative by backward
    difference of the first derivatives. Works with non-uniform sampling
    (each step uses its own interval). This is the chain that reproduces
    the real-data table of the car video, so use it for hand-tracked data.

``central``
    Three-point central differences on a uniform grid. Second-order
    accurate; the default for simulated data.

Rows whose stencil is incomplete carry NaN ("absent") derivatives rather
than extrapolated values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import NonMonotonicTime, NonUniformSampling, TooFewSamples

SCHEMES = ("backward", "central")

# relative tolerance on dt jitter for the central scheme
UNIFORM_RTOL = 1e-9


class Sample(NamedTuple):
    t: float
    y: float


class DerivativeRow(NamedTuple):
    t: float
    y: float
    yd: float | None
    ydd: float | None


@dataclass
class TrackedTrajectory:
    """Time-stamped horizontal coordinate of one feature.

    ``y`` is measured relative to the image coordinate of the fixation point.
    """

    point_id: str
    t: np.ndarray
    y: np.ndarray
    units: str | None = None

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.y = np.asarray(self.y, dtype=float)
        if self.t.shape != self.y.shape or self.t.ndim != 1:
            raise ValueError("t and y must be 1-D arrays of equal length")

    def __len__(self):
        return self.t.size

    @property
    def samples(self) -> list[Sample]:
        return [Sample(float(a), float(b)) for a, b in zip(self.t, self.y)]


@dataclass
class DerivativeSeries:
    """Aligned y, dy/dt and d2y/dt2 for one trajectory.

    Absent derivatives are stored as NaN in ``yd`` / ``ydd``.
    """

    point_id: str
    t: np.ndarray
    y: np.ndarray
    yd: np.ndarray
    ydd: np.ndarray
    scheme: str
    units: str | None = field(default=None)

    def __len__(self):
        return self.t.size

    @property
    def rows(self) -> list[DerivativeRow]:
        def opt(v):
            return None if np.isnan(v) else float(v)

        return [
            DerivativeRow(float(t), float(y), opt(yd), opt(ydd))
            for t, y, yd, ydd in zip(self.t, self.y, self.yd, self.ydd)
        ]


def _check_times(t):
    if t.size < 3:
        raise TooFewSamples(f"need at least 3 samples, got {t.size}")
    if np.any(np.diff(t) <= 0):
        raise NonMonotonicTime("timestamps must be strictly increasing")


def backward_chain(t, y):
    """Backward difference of backward differences.

    Returns ``(yd, ydd)`` with NaN in the first one / two entries.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    h = np.diff(t)
    yd = np.full(y.shape, np.nan)
    ydd = np.full(y.shape, np.nan)
    yd[1:] = np.diff(y) / h
    ydd[2:] = np.diff(yd[1:]) / h[1:]
    return yd, ydd


def central_differences(t, y):
    """Three-point central differences on a uniform grid.

    Returns ``(yd, ydd)`` with NaN at both ends.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    n = t.size
    dt = (t[-1] - t[0]) / (n - 1)
    if np.max(np.abs(np.diff(t) - dt)) >= UNIFORM_RTOL * dt:
        raise NonUniformSampling("central scheme needs uniform sampling")
    yd = np.full(y.shape, np.nan)
    ydd = np.full(y.shape, np.nan)
    yd[1:-1] = (y[2:] - y[:-2]) / (2.0 * dt)
    ydd[1:-1] = (y[2:] - 2.0 * y[1:-1] + y[:-2]) / dt**2
    return yd, ydd


def differentiate(traj: TrackedTrajectory, scheme: str = "central") -> DerivativeSeries:
    """Differentiate a trajectory twice with the named scheme.

    Parameters
    ----------
    traj : TrackedTrajectory
        At least three samples with strictly increasing timestamps.
    scheme : {'backward', 'central'}

    Returns
    -------
    DerivativeSeries

    Raises
    ------
    TooFewSamples, NonMonotonicTime, NonUniformSampling
    """
    t, y = traj.t, traj.y
    _check_times(t)
    if scheme == "backward":
        yd, ydd = backward_chain(t, y)
    elif scheme == "central":
        yd, ydd = central_differences(t, y)
    else:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    return DerivativeSeries(traj.point_id, t.copy(), y.copy(), yd, ydd, scheme, traj.units)
