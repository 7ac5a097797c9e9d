"""Stochastic kinematic model of the stimulated cockroach.

A unicycle (position + heading + forward speed) augmented with the behaviors
the navigation study leans on:

* free walking with heading jitter and spontaneous stops (Poisson hazards),
* cercus-stimulated turning (left cercus -> clockwise) and dual-cercus
  acceleration dashes,
* wall negotiation: natural body alignment along the wall, jamming when
  pressed head-on, freeze-ups while steered into a wall, and backward
  retreats that pivot the nose toward the obstacle,
* climbing of low (1.5 cm) obstacles, either head-on or after following the
  edge, never for 10 cm walls.

`advance` is a pure transition function: identical (state, command, arena,
dt, rng state) gives a bit-identical successor, so trials parallelize by
seed. Free parameters are calibrated against the published aggregate
statistics; see data/behavior_default.txt for the target of each default.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace, fields

from . import geom
from .arena import Arena, Contact, ObstacleSegment
from .geom import Pose

# maneuver labels
FREE_WALK = "free_walk"
TURNING = "turning"
DASHING = "dashing"
WALL_FOLLOW = "wall_follow"
CLIMBING = "climbing"
BACKWARD = "backward"
STOPPED = "stopped"

# climb_outcome results
CLIMB_OVER = "climb_over"
EDGE_FOLLOW_THEN_CLIMB = "edge_follow_then_climb"
NO_CLIMB = "no_climb"

NO_SEGMENT = -999


@dataclass(frozen=True)
class Waveform:
    """Stimulation waveform constants, carried on commands for logging only."""

    frequency_hz: float = 40.0
    duty: float = 0.5
    amplitude_v: tuple[float, float] = (6.0, 8.0)


WAVEFORM = Waveform()


@dataclass(frozen=True)
class StimulusCommand:
    kind: str  # "none" | "left_cercus" | "right_cercus" | "accelerate"
    waveform: Waveform = WAVEFORM

    @property
    def is_steering(self) -> bool:
        return self.kind in ("left_cercus", "right_cercus")

    @property
    def is_stimulus(self) -> bool:
        return self.kind != "none"


CMD_NONE = StimulusCommand("none")
CMD_LEFT = StimulusCommand("left_cercus")
CMD_RIGHT = StimulusCommand("right_cercus")
CMD_ACCEL = StimulusCommand("accelerate")
COMMANDS = {c.kind: c for c in (CMD_NONE, CMD_LEFT, CMD_RIGHT, CMD_ACCEL)}


@dataclass(frozen=True)
class BehaviorParams:
    """Free parameters of the behavior model.

    Rates are hazards (1/s) applied per integration step; probabilities are
    per-event. The defaults here are the calibrated set; the checked-in
    behavior_default.txt documents which published statistic pins each one.
    """

    body_length: float = 5.7            # cm
    base_speed_mu: float = 3.0          # cm/s
    base_speed_sigma: float = 0.5
    speed_relax: float = 1.5            # 1/s pull toward the target speed
    speed_noise: float = 0.8            # cm/s per sqrt(s)
    heading_jitter: float = 10.0        # deg per sqrt(s)
    stim_turn_rate: float = 42.0        # deg/s under single-cercus stimulation
    turn_speed_factor: float = 0.8      # speed multiplier while turning
    dash_gain: float = 2.0              # speed multiplier under dual-cercus stimulus
    dash_speed_floor: float = 5.5       # cm/s
    dash_jitter_factor: float = 0.3     # heading jitter multiplier while dashing
    stop_hazard_free: float = 0.0035    # 1/s spontaneous stop in the open
    stop_hazard_at_wall: float = 0.22   # 1/s while steered into a wall
    stop_hazard_wall_free: float = 0.05 # 1/s at a wall without stimulation
    resume_hazard: float = 0.25         # 1/s spontaneous resume from a stop
    stim_resume_hazard: float = 1.5     # 1/s resume under steering when not blocked
    blocked_resume_hazard: float = 0.02 # 1/s resume while jammed against a wall
    wallfollow_bias: float = 55.0       # deg/s body alignment toward the wall tangent
    wallfollow_speed_factor: float = 0.85
    jam_angle: float = 60.0             # deg off the tangent beyond which the body jams
    jam_slip: float = 0.25              # residual slide speed fraction while jammed
    backward_trigger_prob: float = 0.12 # per second of stimulated wall contact
    backward_speed: float = 1.8         # cm/s (recorded forward speed is negative)
    backward_duration_mu: float = 2.6   # s, lognormal median
    backward_duration_sigma: float = 0.45  # lognormal shape
    backward_turn_rate: float = 28.0    # deg/s nose pivot toward the wall while backing
    stop_after_backward_prob: float = 0.30
    climb_prob_vs_theta: tuple[tuple[float, float], ...] = (
        (0.0, 0.01), (25.0, 0.05), (40.0, 0.28),
        (55.0, 0.62), (70.0, 0.90), (90.0, 0.95),
    )
    noclimb_prob: float = 0.06          # stay at the edge without ever climbing
    edge_climb_hazard: float = 0.5      # 1/s climb trigger while edge-following
    edge_climb_angle_mu: float = 38.8   # deg, pivot-in angle for edge climbs
    edge_climb_angle_sigma: float = 6.5
    edge_climb_angle_lo: float = 26.0
    edge_climb_angle_hi: float = 52.0
    climb_speed: float = 2.2            # cm/s while crossing an obstacle
    climb_clearance: float = 1.3        # cm of anterior lift above the obstacle top

    def climb_prob(self, theta: float) -> float:
        knots = self.climb_prob_vs_theta
        if theta <= knots[0][0]:
            return knots[0][1]
        for (x0, y0), (x1, y1) in zip(knots, knots[1:]):
            if theta <= x1:
                return y0 + (y1 - y0) * (theta - x0) / (x1 - x0)
        return knots[-1][1]


ZERO_NOISE_OVERRIDES = dict(
    base_speed_sigma=0.0, speed_noise=0.0, heading_jitter=0.0,
    stop_hazard_free=0.0, stop_hazard_at_wall=0.0, stop_hazard_wall_free=0.0,
    backward_trigger_prob=0.0, noclimb_prob=0.0, dash_jitter_factor=0.0,
)


def zero_noise_params(**overrides) -> BehaviorParams:
    """Deterministic parameter set used by analytic tests."""
    merged = dict(ZERO_NOISE_OVERRIDES)
    merged.update(overrides)
    return replace(BehaviorParams(), **merged)


@dataclass(frozen=True)
class AgentState:
    """Full agent state. `advance` never mutates; it returns a successor."""

    pose: Pose
    speed: float                 # commanded forward speed magnitude, cm/s
    maneuver: str = FREE_WALK
    climb_height: float = 0.0    # anterior elevation above the floor, cm
    time_in_maneuver: float = 0.0
    t: float = 0.0               # s since trial start
    base_speed: float = 3.0      # per-individual walking speed draw
    signed_forward: float = 0.0  # signed forward speed of the last step
    wall_dir: float = 0.0        # +-1 travel direction along the engaged wall
    last_wall_seg: int = NO_SEGMENT
    backward_left: float = 0.0   # s remaining in a committed retreat
    backward_turn_sign: float = 0.0
    climb_pending: bool = False  # edge-follow with a pending climb trigger
    climb_delay: float = 0.0     # s of edge-following left before climbing
    climb_seg: int = NO_SEGMENT  # segment being crossed (collision-exempt)
    climb_heading: float = 0.0
    climb_total: float = 0.0     # cm to travel to clear the obstacle
    climb_dist: float = 0.0
    climb_peak: float = 0.0      # cm, max anterior elevation for this crossing
    events: tuple = ()           # behavioral event log, (kind, t, data...)


def initial_state(pose: Pose, params: BehaviorParams, rng) -> AgentState:
    """Fresh walking agent with an individual base speed draw."""
    base = max(0.8, rng.gauss(params.base_speed_mu, params.base_speed_sigma))
    return AgentState(pose=pose, speed=base, base_speed=base)


def climb_outcome(theta: float, segment: ObstacleSegment, params: BehaviorParams,
                  rng) -> str:
    """Negotiation mode on first contact with an obstacle at body angle theta.

    Tall walls are never climbed. Low obstacles are climbed outright with a
    probability that grows with how squarely the body faces them; otherwise
    the insect follows the edge, usually climbing from the side later.
    """
    if not segment.climbable:
        return NO_CLIMB
    if rng.random() < params.climb_prob(theta):
        return CLIMB_OVER
    if rng.random() < params.noclimb_prob:
        return NO_CLIMB
    return EDGE_FOLLOW_THEN_CLIMB


def wall_response(state: AgentState, contact: Contact | None, cmd: StimulusCommand,
                  params: BehaviorParams, rng, dt: float = 0.03) -> str:
    """Maneuver decision for one step of (unclimbable) wall contact.

    Returns the next maneuver label: "backward" when the retreat reflex
    fires, "stopped" when the insect freezes at the wall, otherwise
    "wall_follow" (alignment / sliding, also the acceleration escape), or the
    current maneuver unchanged when there is no contact.
    """
    if contact is None:
        return state.maneuver
    if cmd.kind == "accelerate":
        return WALL_FOLLOW
    if cmd.is_steering and _steering_into_wall(state.pose.heading, contact, cmd):
        if rng.random() < _hazard(params.backward_trigger_prob, dt):
            return BACKWARD
        if rng.random() < _hazard(params.stop_hazard_at_wall, dt):
            return STOPPED
    elif rng.random() < _hazard(params.stop_hazard_wall_free, dt):
        return STOPPED
    return WALL_FOLLOW


def _hazard(rate: float, dt: float) -> float:
    return 1.0 - math.exp(-rate * dt) if rate > 0 else 0.0


def _steering_into_wall(heading: float, contact: Contact, cmd: StimulusCommand) -> bool:
    """True when the commanded rotation swings the nose toward the wall."""
    if not cmd.is_steering:
        return False
    inward = geom.vec_angle((-contact.normal[0], -contact.normal[1]))
    delta = geom.wrap180(inward - heading)
    turn = -1.0 if cmd.kind == "left_cercus" else 1.0
    if abs(delta) < 5.0:
        return True  # already facing in; stimulation keeps pressing
    return delta * turn > 0


def _turn_rate(cmd: StimulusCommand, params: BehaviorParams) -> float:
    if cmd.kind == "left_cercus":
        return -params.stim_turn_rate
    if cmd.kind == "right_cercus":
        return params.stim_turn_rate
    return 0.0


def advance(state: AgentState, cmd: StimulusCommand, arena: Arena, dt: float,
            rng) -> AgentState:
    """Integrate the agent by one step of dt seconds under a stimulus command."""
    if not (0.0 < dt <= 0.1):
        raise ValueError("dt must be in (0, 0.1] s")
    p = _params_of(arena)  # placeholder removed below; params passed explicitly
    raise NotImplementedError
