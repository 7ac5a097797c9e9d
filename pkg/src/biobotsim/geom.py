"""Small planar geometry helpers shared by the arena, agent and sensing code.

Everything works on plain float tuples (x, y) in centimeters and headings in
degrees, counterclockwise from the +x axis. Kept free of numpy on purpose:
these run inside the 30 ms simulation tick.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

Vec = tuple[float, float]


@dataclass(frozen=True)
class Pose:
    """Planar pose: position in cm, heading in degrees CCW from +x."""

    x: float
    y: float
    heading: float

    @property
    def position(self) -> Vec:
        return (self.x, self.y)


def heading_vec(heading_deg: float) -> Vec:
    a = math.radians(heading_deg)
    return (math.cos(a), math.sin(a))


def vec_angle(v: Vec) -> float:
    """Angle of a vector in degrees, CCW from +x, in (-180, 180]."""
    return math.degrees(math.atan2(v[1], v[0]))


def wrap180(angle_deg: float) -> float:
    """Wrap an angle difference into (-180, 180]."""
    a = math.fmod(angle_deg + 180.0, 360.0)
    if a <= 0.0:
        a += 360.0
    return a - 180.0


def acute_angle_to_line(heading_deg: float, line_angle_deg: float) -> float:
    """Acute angle in [0, 90] between a heading and an undirected line."""
    d = abs(wrap180(heading_deg - line_angle_deg))
    if d > 90.0:
        d = 180.0 - d
    return d


def dist(a: Vec, b: Vec) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def sub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def add(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1])


def scale(v: Vec, s: float) -> Vec:
    return (v[0] * s, v[1] * s)


def dot(a: Vec, b: Vec) -> float:
    return a[0] * b[0] + a[1] * b[1]


def cross(a: Vec, b: Vec) -> float:
    """z-component of the 2D cross product (positive = b lies CCW of a)."""
    return a[0] * b[1] - a[1] * b[0]


def norm(v: Vec) -> float:
    return math.hypot(v[0], v[1])


def unit(v: Vec) -> Vec:
    n = math.hypot(v[0], v[1])
    if n == 0.0:
        raise ValueError("cannot normalize zero vector")
    return (v[0] / n, v[1] / n)


def perp(v: Vec) -> Vec:
    """CCW perpendicular."""
    return (-v[1], v[0])


def closest_point_on_segment(p: Vec, a: Vec, b: Vec) -> tuple[Vec, float]:
    """Closest point on segment ab to p, plus the parameter t in [0, 1]."""
    ab = sub(b, a)
    denom = dot(ab, ab)
    if denom == 0.0:
        return a, 0.0
    t = dot(sub(p, a), ab) / denom
    t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
    return (a[0] + ab[0] * t, a[1] + ab[1] * t), t


def point_segment_distance(p: Vec, a: Vec, b: Vec) -> float:
    q, _ = closest_point_on_segment(p, a, b)
    return dist(p, q)


def segment_segment_closest(p1: Vec, p2: Vec, q1: Vec, q2: Vec) -> tuple[float, Vec, Vec]:
    """Minimum distance between segments p1p2 and q1q2.

    Returns (distance, closest point on p, closest point on q). Uses the
    standard clamped-parameter solution; robust for degenerate (point)
    segments.
    """
    d1 = sub(p2, p1)
    d2 = sub(q2, q1)
    r = sub(p1, q1)
    a = dot(d1, d1)
    e = dot(d2, d2)
    f = dot(d2, r)

    if a == 0.0 and e == 0.0:
        return dist(p1, q1), p1, q1
    if a == 0.0:
        t = min(1.0, max(0.0, f / e))
        cq = add(q1, scale(d2, t))
        return dist(p1, cq), p1, cq
    c = dot(d1, r)
    if e == 0.0:
        s = min(1.0, max(0.0, -c / a))
        cp = add(p1, scale(d1, s))
        return dist(cp, q1), cp, q1

    b = dot(d1, d2)
    denom = a * e - b * b
    if denom != 0.0:
        s = min(1.0, max(0.0, (b * f - c * e) / denom))
    else:
        s = 0.0
    t = (b * s + f) / e
    if t < 0.0:
        t = 0.0
        s = min(1.0, max(0.0, -c / a))
    elif t > 1.0:
        t = 1.0
        s = min(1.0, max(0.0, (b - c) / a))
    cp = add(p1, scale(d1, s))
    cq = add(q1, scale(d2, t))
    return dist(cp, cq), cp, cq
