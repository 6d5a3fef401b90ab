"""
Rotation-rate error under perspective projection as a function of field of view.

The tracked point circles the axis at radius ``R``; the camera is fixated on
the axis. A half field of view ``a`` (the largest horizontal angle between
the fixation direction and the tracked point) fixes the standoff at
``Z0 = R / sin(a)``. ``a = 0`` stands for the orthographic limit.
"""
from __future__ import annotations

import math

from .errors import NonPositiveDepth
from .estimator import EstimatorConfig, estimate_trajectory
from .numdiff import differentiate
from .scene import BodyPoint, CameraModel, MotionProfile, RigidScene, SamplingPlan, simulate

STANDARD_RADIUS = 1.0
STANDARD_OMEGA = 0.5
STANDARD_DT = 1e-3


def standoff_for_half_fov(radius, half_fov_deg):
    if not 0 < half_fov_deg < 90:
        raise NonPositiveDepth(f"half-FOV must lie in (0, 90) degrees, got {half_fov_deg}")
    return radius / math.sin(math.radians(half_fov_deg))


def camera_for_half_fov(radius, half_fov_deg, focal_length=1.0):
    if half_fov_deg == 0:
        return CameraModel.orthographic()
    return CameraModel.perspective(focal_length, standoff_for_half_fov(radius, half_fov_deg))


def one_period_samples(omega, dt):
    return int(math.ceil(2 * math.pi / abs(omega) / dt)) + 1


def sweep_error(
    half_fov_deg,
    omega=STANDARD_OMEGA,
    radius=STANDARD_RADIUS,
    dt=STANDARD_DT,
    n_samples=None,
    scheme="central",
    cfg=None,
    focal_length=1.0,
):
    """Relative error ``|w_hat - |w|| / |w|`` for one half field of view."""
    if omega == 0:
        raise ValueError("omega must be nonzero: relative error is undefined at 0")
    if half_fov_deg < 0:
        raise ValueError("half-FOV must be >= 0")
    cam = camera_for_half_fov(radius, half_fov_deg, focal_length)
    n = n_samples or one_period_samples(omega, dt)
    scene = RigidScene([BodyPoint(radius, 0.0, label="p0")], MotionProfile(omega))
    (traj,) = simulate(scene, cam, SamplingPlan(0.0, dt, n))
    est = estimate_trajectory(differentiate(traj, scheme), cfg or EstimatorConfig())
    if est.value is None:
        return math.nan
    return abs(est.value - abs(omega)) / abs(omega)


def perspective_sweep(half_fovs_deg, **kwargs):
    """Two-column table ``[(half_fov_deg, relative_error), ...]``."""
    return [(float(a), sweep_error(a, **kwargs)) for a in half_fovs_deg]
