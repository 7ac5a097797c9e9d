"""Virtual motion capture and virtual IMU.

The motion-capture rig mirrors the three-retroreflective-marker setup: the
center marker rides on the body center, the anterior marker half a body
length ahead, and a third marker sits at an asymmetric offset so orientation
is always recoverable. Distance and orientation errors relative to a
destination use the anterior/center marker pair.

The IMU path synthesizes noisy gyro/accelerometer samples from true motion
and recovers yaw rate (10 Hz first-order low-pass) and linear speed (leaky
acceleration integration blended with a gait-vibration envelope, since a
constant speed is unobservable from a body accelerometer alone).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from . import geom
from .geom import Pose, Vec

MOCAP_WINDOW_S = 0.25  # moving-average window for mocap speeds
LOWPASS_CUTOFF_HZ = 10.0

ALIGNED_CROSS_TOL = 1e-12


@dataclass(frozen=True)
class MarkerTriple:
    anterior: Vec
    center: Vec
    third: Vec


@dataclass(frozen=True)
class SpeedEstimate:
    omega: float      # angular speed about the body center, deg/s
    v_l: float        # linear speed magnitude, cm/s
    v_f: float        # signed forward speed, cm/s
    timestamp: float  # s

    def __post_init__(self):
        if abs(self.v_f) > self.v_l + 1e-9:
            raise ValueError("forward speed cannot exceed linear speed")


@dataclass(frozen=True)
class ImuSample:
    yaw_rate: float    # deg/s
    accel: Vec         # body frame (forward, lateral), cm/s^2
    timestamp: float   # s


def markers_from_pose(pose: Pose, body_length: float) -> MarkerTriple:
    """Place the marker rig for a body pose.

    The third marker is offset both back and sideways; any straight-line
    placement would make orientation ambiguous.
    """
    if body_length <= 0:
        raise ValueError("body_length must be positive")
    h = geom.heading_vec(pose.heading)
    p = geom.perp(h)
    c = pose.position
    anterior = (c[0] + h[0] * body_length / 2, c[1] + h[1] * body_length / 2)
    third = (c[0] - h[0] * 0.35 * body_length + p[0] * 0.25 * body_length,
             c[1] - h[1] * 0.35 * body_length + p[1] * 0.25 * body_length)
    return MarkerTriple(anterior=anterior, center=c, third=third)


def distance_to_target(anterior: Vec, dest: Vec) -> float:
    """Euclidean distance from the anterior marker to the destination point."""
    return math.hypot(anterior[0] - dest[0], anterior[1] - dest[1])


def orientation_error(markers: MarkerTriple, dest: Vec) -> tuple[float, str]:
    """Unsigned angle between body axis and target direction, plus which side.

    gamma is the angle at the center marker between (center -> anterior) and
    (center -> dest), in [0, 180] degrees. side is "left" when the target
    lies left of the body axis, "right" when right, "aligned" when the cross
    product of the unit vectors vanishes (dead ahead or dead behind).
    """
    body = geom.sub(markers.anterior, markers.center)
    target = geom.sub(dest, markers.center)
    bn = geom.norm(body)
    tn = geom.norm(target)
    if bn == 0.0 or tn == 0.0:
        raise ValueError("degenerate zero-length vector in orientation_error")
    c = geom.dot(body, target) / (bn * tn)
    c = min(1.0, max(-1.0, c))
    gamma = math.degrees(math.acos(c))
    x = geom.cross(body, target) / (bn * tn)
    if abs(x) < ALIGNED_CROSS_TOL:
        side = "aligned"
    elif x > 0:
        side = "left"
    else:
        side = "right"
    return gamma, side


def mocap_speeds(window: list[tuple[float, float, float, float]]) -> SpeedEstimate:
    """Speed estimates from a trajectory window of (t, x, y, heading) samples.

    Finite differences averaged over the trailing 250 ms: omega is the mean
    magnitude of the heading rate, v_l the mean step speed, v_f the mean
    forward-projected step speed Both signed quantities use the per-step
    heading to project.
    """
    if len(window) < 2 or window[-1][0] - window[0][0] < MOCAP_WINDOW_S - 1e-9:
        raise ValueError("mocap window must span at least 250 ms")
    t_end = window[-1][0]
    samples = [s for s in window if s[0] >= t_end - MOCAP_WINDOW_S - 1e-9]
    span = samples[-1][0] - samples[0][0]
    turn = 0.0
    path = 0.0
    fwd = 0.0
    for prev, cur in zip(samples, samples[1:]):
        dt = cur[0] - prev[0]
        if dt <= 0:
            raise ValueError("non-increasing timestamps in mocap window")
        step = (cur[1] - prev[1], cur[2] - prev[2])
        turn += geom.wrap180(cur[3] - prev[3])
        path += geom.norm(step)
        fwd += geom.dot(step, geom.heading_vec(prev[3]))
    omega = abs(turn) / span
    v_l = path / span
    v_f = fwd / span
    # projection of each step never exceeds its length, but guard rounding
    v_f = min(v_l, max(-v_l, v_f))
    return SpeedEstimate(omega=omega, v_l=v_l, v_f=v_f, timestamp=t_end)


@dataclass(frozen=True)
class ImuNoise:
    gyro_sigma: float = 0.5        # deg/s
    gyro_bias: float = 0.1         # deg/s
    accel_sigma: float = 2.0       # cm/s^2
    accel_bias: float = 0.2        # cm/s^2
    vibration_gain: float = 2.5    # cm/s^2 of gait vibration per cm/s of speed
    vibration_hz: float = 8.0


@dataclass(frozen=True)
class TrueMotion:
    yaw_rate: float   # deg/s
    accel_fwd: float  # cm/s^2
    accel_lat: float  # cm/s^2
    speed_fwd: float  # cm/s (drives the gait-vibration amplitude)


def imu_sample(motion: TrueMotion, noise: ImuNoise, t: float, rng) -> ImuSample:
    """One noisy IMU reading: bias + white noise + speed-proportional gait buzz."""
    buzz = noise.vibration_gain * abs(motion.speed_fwd)
    phase = 2 * math.pi * noise.vibration_hz * t
    ax = (motion.accel_fwd + buzz * math.sin(phase)
          + noise.accel_bias + rng.gauss(0.0, noise.accel_sigma))
    ay = (motion.accel_lat + buzz * math.cos(phase)
          + rng.gauss(0.0, noise.accel_sigma))
    yaw = motion.yaw_rate + noise.gyro_bias + rng.gauss(0.0, noise.gyro_sigma)
    return ImuSample(yaw_rate=yaw, accel=(ax, ay), timestamp=t)


@dataclass(frozen=True)
class ImuFilterState:
    """Explicit filter memory threaded through imu_step calls."""

    omega_lp: float = 0.0
    accel_lp: float = 0.0
    v_est: float = 0.0
    buzz_rms: float = 0.0
    last_t: float | None = None


def imu_step(state: ImuFilterState, sample: ImuSample,
             noise: ImuNoise = ImuNoise()) -> tuple[SpeedEstimate, ImuFilterState]:
    """Advance the IMU speed estimator by one sample.

    Yaw rate goes through a first-order low-pass with exact ZOH pole
    (alpha = 1 - exp(-2*pi*fc*dt)). Linear speed uses a complementary blend:
    a leaky integral of the low-passed forward acceleration, pulled toward a
    speed proxy from the gait-vibration RMS envelope. The leak is what keeps
    accelerometer bias from winding up the integral.
    """
    if state.last_t is None:
        dt = 0.0
        st = replace(state, last_t=sample.timestamp)
    else:
        dt = sample.timestamp - state.last_t
        if dt <= 0:
            raise ValueError("IMU samples must have increasing timestamps")
        if dt > 0.05 + 1e-9:
            raise ValueError("IMU cadence below 20 Hz (Nyquist for the 10 Hz cutoff)")
        st = state
    alpha = 1.0 - math.exp(-2.0 * math.pi * LOWPASS_CUTOFF_HZ * dt) if dt > 0 else 1.0
    omega_lp = st.omega_lp + alpha * (sample.yaw_rate - st.omega_lp)
    accel_lp = st.accel_lp + alpha * (sample.accel[0] - st.accel_lp)

    # vibration envelope: RMS of the high-passed forward channel
    hp = sample.accel[0] - accel_lp
    env_alpha = 1.0 - math.exp(-dt / 0.4) if dt > 0 else 1.0
    buzz_rms = math.sqrt((1 - env_alpha) * st.buzz_rms ** 2 + env_alpha * hp * hp)
    v_proxy = buzz_rms * math.sqrt(2.0) / noise.vibration_gain if noise.vibration_gain > 0 else 0.0

    blend = 1.0 - math.exp(-dt / 1.0) if dt > 0 else 0.0
    v_est = (1.0 - blend) * (st.v_est + accel_lp * dt) + blend * v_proxy
    v_est = max(0.0, v_est)

    est = SpeedEstimate(omega=abs(omega_lp), v_l=v_est, v_f=v_est,
                        timestamp=sample.timestamp)
    return est, ImuFilterState(omega_lp=omega_lp, accel_lp=accel_lp, v_est=v_est,
                               buzz_rms=buzz_rms, last_t=sample.timestamp)


def imu_speeds(samples: list[ImuSample], noise: ImuNoise = ImuNoise()) -> SpeedEstimate:
    """Fold a sample batch through the estimator and return the final estimate."""
    if not samples:
        raise ValueError("imu_speeds needs at least one sample")
    state = ImuFilterState()
    est = None
    for s in samples:
        est, state = imu_step(state, s, noise)
    return est
