"""Rotation rate of a fixated rigid body from one tracked image point."""
from .errors import OmegaTrackError
from .estimator import (
    EstimatorConfig,
    OmegaEstimate,
    OmegaSample,
    classify_sample,
    estimate_trajectory,
    estimate_two_point_trajectory,
    omega_sq_single,
    omega_sq_two_point,
    recover_center_offset,
)
from .numdiff import DerivativeSeries, TrackedTrajectory, differentiate
from .scene import (
    BodyPoint,
    CameraModel,
    MotionProfile,
    RigidScene,
    SamplingPlan,
    add_noise,
    analytic_derivatives,
    analytic_series,
    horizontal_position,
    project,
    simulate,
)
from .segmentation import SegmentLabeling, segment_points
from .sweep import perspective_sweep
from .trackio import parse_tracks, table1_fixture, write_estimates, write_tracks

__version__ = "0.1.0"
