"""
Fixated rotating rigid body, camera models and trajectory synthesis.

A body point is described in cylindrical coordinates about the rotation
axis: radius ``R``, initial phase ``theta0`` and height ``h``. The axis is
vertical (perpendicular to the optical axis) and sits a horizontal distance
``o`` from the fixation point, so the horizontal world coordinate of the
point at time ``t`` is::

    y(t) = o + R cos(theta0 + omega t)

and its depth along the optical axis is ``Z_axis + R sin(theta0 + omega t)``.
The height never enters the horizontal image coordinate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NegativeSigma, NonPositiveDepth
from .numdiff import DerivativeSeries, TrackedTrajectory

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class BodyPoint:
    radius: float
    phase: float = 0.0
    height: float = 0.0
    label: str | None = None

    def __post_init__(self):
        if not self.radius >= 0:
            raise ValueError(f"radius must be >= 0, got {self.radius}")
        object.__setattr__(self, "phase", float(self.phase) % TWO_PI)


@dataclass(frozen=True)
class MotionProfile:
    """Constant rotation rate (rad/s, positive anticlockwise) and axis offset."""

    omega: float
    center_offset: float = 0.0


@dataclass(frozen=True)
class CameraModel:
    kind: str = "orthographic"
    focal_length: float = 1.0
    standoff: float | None = None

    def __post_init__(self):
        if self.kind not in ("orthographic", "perspective"):
            raise ValueError(f"unknown camera kind {self.kind!r}")
        if self.kind == "perspective":
            if not self.focal_length > 0:
                raise ValueError("focal_length must be > 0")
            if self.standoff is None or not self.standoff > 0:
                raise ValueError("perspective camera needs standoff > 0")

    @classmethod
    def orthographic(cls):
        return cls("orthographic")

    @classmethod
    def perspective(cls, focal_length, standoff):
        return cls("perspective", float(focal_length), float(standoff))


@dataclass(frozen=True)
class RigidScene:
    points: tuple[BodyPoint, ...]
    motion: MotionProfile
    # camera-to-axis distance; falls back to the camera standoff
    depth_of_axis: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise ValueError("a scene needs at least one point")

    def point_ids(self):
        return [p.label if p.label is not None else f"p{k}" for k, p in enumerate(self.points)]


@dataclass(frozen=True)
class SamplingPlan:
    t_start: float = 0.0
    dt: float = 0.01
    n_samples: int = 100

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be > 0")
        if int(self.n_samples) != self.n_samples or self.n_samples < 3:
            raise ValueError(f"n_samples must be an integer >= 3, got {self.n_samples}")

    def times(self):
        return self.t_start + np.arange(self.n_samples) * self.dt


def horizontal_position(p: BodyPoint, m: MotionProfile, t):
    """Horizontal world coordinate ``o + R cos(theta0 + omega t)``."""
    return m.center_offset + p.radius * np.cos(p.phase + m.omega * np.asarray(t, dtype=float))


def depth_offset(p: BodyPoint, m: MotionProfile, t):
    """Depth of the point relative to the rotation axis."""
    return p.radius * np.sin(p.phase + m.omega * np.asarray(t, dtype=float))


def analytic_derivatives(p: BodyPoint, m: MotionProfile, t):
    """Exact ``(y, dy/dt, d2y/dt2)`` of the orthographic trajectory."""
    phi = p.phase + m.omega * np.asarray(t, dtype=float)
    c = np.cos(phi)
    y = m.center_offset + p.radius * c
    yd = -p.radius * m.omega * np.sin(phi)
    ydd = -p.radius * m.omega**2 * c
    return y, yd, ydd


def analytic_series(p: BodyPoint, m: MotionProfile, t, point_id="p0") -> DerivativeSeries:
    t = np.asarray(t, dtype=float)
    y, yd, ydd = analytic_derivatives(p, m, t)
    return DerivativeSeries(point_id, t.copy(), y, yd, ydd, "analytic")


def project(cam: CameraModel, world_horizontal, world_depth=None):
    """Image horizontal coordinate of a point.

    Orthographic cameras return ``world_horizontal`` unchanged; perspective
    cameras return ``f * world_horizontal / world_depth``.
    """
    if cam.kind == "orthographic":
        return world_horizontal
    depth = np.asarray(world_depth, dtype=float)
    if np.any(~(depth > 0)):
        raise NonPositiveDepth("point at or behind the camera plane")
    out = cam.focal_length * np.asarray(world_horizontal, dtype=float) / depth
    return float(out) if out.ndim == 0 else out


def simulate(scene: RigidScene, cam: CameraModel, plan: SamplingPlan) -> list[TrackedTrajectory]:
    """One exact (noise-free) trajectory per body point."""
    t = plan.times()
    axis_depth = scene.depth_of_axis if scene.depth_of_axis is not None else cam.standoff
    out = []
    for pid, p in zip(scene.point_ids(), scene.points):
        x = horizontal_position(p, scene.motion, t)
        if cam.kind == "orthographic":
            y = x
        else:
            y = project(cam, x, axis_depth + depth_offset(p, scene.motion, t))
        out.append(TrackedTrajectory(pid, t.copy(), y))
    return out


def add_noise(trajs, sigma: float, seed: int) -> list[TrackedTrajectory]:
    """Add i.i.d. zero-mean Gaussian noise of std ``sigma`` to every y sample."""
    if sigma < 0:
        raise NegativeSigma(f"sigma must be >= 0, got {sigma}")
    rng = np.random.default_rng(seed)
    out = []
    for tr in trajs:
        y = tr.y.copy()
        if sigma > 0:
            y = y + rng.normal(0.0, sigma, size=y.shape)
        out.append(TrackedTrajectory(tr.point_id, tr.t.copy(), y, tr.units))
    return out


def random_points(n, r_range=(0.5, 5.0), seed=0, prefix="p"):
    """``n`` body points with uniform radius in ``r_range`` and uniform phase."""
    rng = np.random.default_rng(seed)
    radii = rng.uniform(r_range[0], r_range[1], size=n)
    phases = rng.uniform(0.0, TWO_PI, size=n)
    return [BodyPoint(float(r), float(ph), label=f"{prefix}{k}") for k, (r, ph) in enumerate(zip(radii, phases))]
