import numpy as np
import pytest

from omegatrack.scene import CameraModel, MotionProfile, RigidScene, SamplingPlan, random_points, simulate

# tracking cadence of the car video: every 16 frames at 30 fps
VIDEO_DT = 16.0 / 30.0


def two_body_tracks(omegas=(0.3, 0.7), n_points=5, dt=VIDEO_DT, n_samples=241):
    """Tracks for several orthographic bodies plus the true body of each point."""
    trajs, truth = [], {}
    for b, w in enumerate(omegas):
        pts = random_points(n_points, seed=11 + b, prefix=f"b{b}p")
        trajs += simulate(RigidScene(pts, MotionProfile(w)), CameraModel(), SamplingPlan(0.0, dt, n_samples))
        truth.update({p.label: b for p in pts})
    return trajs, truth


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
