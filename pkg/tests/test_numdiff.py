import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omegatrack.errors import NonMonotonicTime, NonUniformSampling, TooFewSamples
from omegatrack.numdiff import TrackedTrajectory, differentiate
from omegatrack.scene import BodyPoint, MotionProfile, analytic_derivatives
from omegatrack.trackio import TABLE1_DT

from table1_printed import PRINTED


def _naive_backward(t, y):
    # loop-by-loop oracle, independent of the vectorised implementation
    n = len(y)
    yd = [None] * n
    ydd = [None] * n
    for k in range(1, n):
        yd[k] = (y[k] - y[k - 1]) / (t[k] - t[k - 1])
    for k in range(2, n):
        ydd[k] = (yd[k] - yd[k - 1]) / (t[k] - t[k - 1])
    return yd, ydd


def _traj(y, dt=1.0, t0=0.0):
    y = np.asarray(y, dtype=float)
    return TrackedTrajectory("x", t0 + np.arange(y.size) * dt, y)


def test_table1_frame47_feature1():
    s = differentiate(_traj([-3.26, -3.26, -3.27], TABLE1_DT), "backward")
    assert s.yd[2] == pytest.approx(-0.01875)
    assert s.ydd[2] == pytest.approx(-0.03515625)
    assert round(s.yd[2], 2) == -0.02
    assert round(s.ydd[2], 3) == -0.035


def test_table1_frame63_feature1():
    s = differentiate(_traj([-3.26, -3.26, -3.27, -3.14], TABLE1_DT), "backward")
    assert s.yd[3] == pytest.approx(0.24375)
    assert s.ydd[3] == pytest.approx(0.4921875)


@pytest.mark.parametrize("pid", ["feature1", "feature2"])
def test_backward_chain_reproduces_printed_table(pid):
    rows = PRINTED[pid]
    y = [r[0] for r in rows]
    s = differentiate(_traj(y, TABLE1_DT), "backward")
    for k, (_, yd, ydd, _, _) in enumerate(rows):
        if yd is None:
            assert np.isnan(s.yd[k])
        else:
            assert abs(s.yd[k] - yd) <= 0.005 + 1e-12
        if ydd is None:
            assert np.isnan(s.ydd[k])
        else:
            assert abs(s.ydd[k] - ydd) <= 0.005 + 1e-12


def test_backward_matches_loop_oracle_nonuniform(rng):
    t = np.cumsum(rng.uniform(0.1, 1.0, 30))
    y = rng.normal(size=30)
    s = differentiate(TrackedTrajectory("x", t, y), "backward")
    yd, ydd = _naive_backward(list(t), list(y))
    for k in range(30):
        if yd[k] is None:
            assert np.isnan(s.yd[k])
        else:
            assert s.yd[k] == pytest.approx(yd[k], rel=1e-13)
        if ydd[k] is None:
            assert np.isnan(s.ydd[k])
        else:
            assert s.ydd[k] == pytest.approx(ydd[k], rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("scheme", ["backward", "central"])
def test_constant_trajectory(scheme):
    s = differentiate(_traj([5.0] * 12, 0.3), scheme)
    present = ~np.isnan(s.ydd)
    assert present.sum() == 10
    np.testing.assert_array_equal(s.yd[~np.isnan(s.yd)], 0.0)
    np.testing.assert_array_equal(s.ydd[present], 0.0)


def test_absent_rows_follow_stencils():
    b = differentiate(_traj(np.arange(6.0)), "backward")
    assert np.isnan(b.yd[0]) and not np.isnan(b.yd[1:]).any()
    assert np.isnan(b.ydd[:2]).all() and not np.isnan(b.ydd[2:]).any()
    c = differentiate(_traj(np.arange(6.0)), "central")
    assert np.isnan(c.yd[[0, -1]]).all() and not np.isnan(c.yd[1:-1]).any()
    assert np.isnan(c.ydd[[0, -1]]).all() and not np.isnan(c.ydd[1:-1]).any()
    rows = c.rows
    assert rows[0].yd is None and rows[0].ydd is None and rows[1].ydd is not None


def test_central_cosine_against_analytic():
    dt = 1e-3
    t = np.arange(0, 2 * np.pi, dt)
    p, m = BodyPoint(1.0, 0.0), MotionProfile(1.0)
    y, _, ydd_true = analytic_derivatives(p, m, t)
    s = differentiate(TrackedTrajectory("c", t, y), "central")
    err = np.abs(s.ydd[1:-1] - ydd_true[1:-1])
    assert err.max() < 1e-6


def test_central_second_derivative_is_second_order():
    p, m = BodyPoint(1.0, 0.3), MotionProfile(1.0)
    dts = np.array([0.1, 0.05, 0.025, 0.0125])
    errs = []
    for dt in dts:
        t = np.arange(0, 4.0 + dt / 2, dt)
        y, _, ydd_true = analytic_derivatives(p, m, t)
        s = differentiate(TrackedTrajectory("c", t, y), "central")
        errs.append(np.max(np.abs(s.ydd[1:-1] - ydd_true[1:-1])))
    slope = np.polyfit(np.log(dts), np.log(errs), 1)[0]
    assert abs(slope - 2.0) <= 0.1


def test_errors():
    with pytest.raises(TooFewSamples):
        differentiate(_traj([1.0, 2.0]), "backward")
    with pytest.raises(NonMonotonicTime):
        differentiate(TrackedTrajectory("x", [0.0, 2.0, 1.0], [1, 2, 3]), "backward")
    with pytest.raises(NonMonotonicTime):
        differentiate(TrackedTrajectory("x", [0.0, 1.0, 1.0], [1, 2, 3]), "central")
    with pytest.raises(NonUniformSampling):
        differentiate(TrackedTrajectory("x", [0.0, 1.0, 2.5, 3.0], [1, 2, 3, 4]), "central")
    with pytest.raises(ValueError):
        differentiate(_traj([1.0, 2.0, 3.0]), "forward")


def test_backward_accepts_nonuniform():
    s = differentiate(TrackedTrajectory("x", [0.0, 1.0, 3.0], [0.0, 1.0, 5.0]), "backward")
    assert s.yd[2] == 2.0
    assert s.ydd[2] == 0.5


finite = st.floats(-100, 100, allow_nan=False)


@settings(max_examples=100, deadline=None)
@given(
    y1=st.lists(finite, min_size=3, max_size=25),
    a=st.floats(-10, 10),
    b=st.floats(-10, 10),
    seed=st.integers(0, 2**16),
    scheme=st.sampled_from(["backward", "central"]),
)
def test_linearity(y1, a, b, seed, scheme):
    n = len(y1)
    y1 = np.array(y1)
    y2 = np.random.default_rng(seed).uniform(-100, 100, n)
    t = np.arange(n) * 0.25
    d1 = differentiate(TrackedTrajectory("a", t, y1), scheme)
    d2 = differentiate(TrackedTrajectory("b", t, y2), scheme)
    dc = differentiate(TrackedTrajectory("c", t, a * y1 + b * y2), scheme)
    scale = 1 + abs(a) * np.abs(y1).max() + abs(b) * np.abs(y2).max()
    for attr in ("yd", "ydd"):
        combo = a * getattr(d1, attr) + b * getattr(d2, attr)
        got = getattr(dc, attr)
        np.testing.assert_array_equal(np.isnan(got), np.isnan(combo))
        mask = ~np.isnan(got)
        # dt = 0.25 so second derivatives scale rounding by 1/dt^2 = 16
        np.testing.assert_allclose(got[mask], combo[mask], rtol=0, atol=1e-12 * 64 * scale)


dyadic = st.integers(-(2**20), 2**20).map(lambda k: k / 1024.0)


@settings(max_examples=100, deadline=None)
@given(
    y=st.lists(dyadic, min_size=3, max_size=25),
    c=st.integers(-(2**20), 2**20).map(lambda k: k / 8.0),
    scheme=st.sampled_from(["backward", "central"]),
)
def test_shift_invariance_exact(y, c, scheme):
    # dyadic samples keep every sum exact, so the invariance must be bitwise
    t = np.arange(len(y)) * 0.5
    a = differentiate(TrackedTrajectory("a", t, y), scheme)
    b = differentiate(TrackedTrajectory("b", t, np.array(y) + c), scheme)
    np.testing.assert_array_equal(a.yd, b.yd)
    np.testing.assert_array_equal(a.ydd, b.ydd)


def test_shift_invariance_general_floats(rng):
    t = np.arange(40) * 0.1
    y = rng.normal(size=40)
    a = differentiate(TrackedTrajectory("a", t, y), "central")
    b = differentiate(TrackedTrajectory("b", t, y + 0.1234567), "central")
    np.testing.assert_allclose(b.ydd[1:-1], a.ydd[1:-1], rtol=0, atol=1e-12)
