"""Terrain geometry: bounded 2D arenas with thick wall segments and goal discs.

Obstacles are straight segments with a physical thickness and a height class:
1.5 cm walls are climbable by the agent, 10 cm walls are not. Preset builders
reproduce the three benchmark terrains (open field, low-obstacle enclosure,
tall-wall enclosure) and accept a user layout for mock-disaster scenes.

All queries are pure; an Arena never mutates after construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from . import geom
from .geom import Vec

# Benchmark enclosure dimensions (cm)
ENCLOSURE_LENGTH = 31.0
ENCLOSURE_WIDTH = 24.0
ENTRANCE_WIDTH = 8.0
LOW_HEIGHT = 1.5
LOW_THICKNESS = 2.5
TALL_HEIGHT = 10.0
TALL_THICKNESS = 0.3
OPEN_FIELD_DIST = 65.0
OBSTACLE_DIST = 45.0
GOAL_RADIUS = 5.0
MISSION_GOAL_RADIUS = 8.0

CLIMBABLE_MAX_HEIGHT = 5.0  # anything taller is treated as unclimbable


class ArenaError(ValueError):
    """Raised for invalid terrain specs (overlapping targets, out-of-bounds geometry)."""


@dataclass(frozen=True)
class Disc:
    center: Vec
    radius: float


@dataclass(frozen=True)
class ObstacleSegment:
    """A thick wall segment. The footprint is the centerline dilated by thickness/2."""

    a: Vec
    b: Vec
    height: float
    thickness: float
    seg_id: int = -1

    @property
    def climbable(self) -> bool:
        return self.height <= CLIMBABLE_MAX_HEIGHT

    @property
    def length(self) -> float:
        return geom.dist(self.a, self.b)

    @property
    def tangent(self) -> Vec:
        return geom.unit(geom.sub(self.b, self.a))

    @property
    def tangent_angle(self) -> float:
        return geom.vec_angle(geom.sub(self.b, self.a))


@dataclass(frozen=True)
class Contact:
    """Deepest body/obstacle contact. Normal points from the wall toward the body."""

    seg_id: int
    tangent: Vec
    normal: Vec
    penetration: float
    point: Vec
    climbable: bool


BOUNDS_SEG_ID = -100  # seg_id base for implicit boundary walls (not in obstacle list)


@dataclass(frozen=True)
class Arena:
    kind: str
    bounds_min: Vec
    bounds_max: Vec
    origin: Disc
    targets: tuple[Disc, ...]
    obstacles: tuple[ObstacleSegment, ...] = field(default_factory=tuple)

    def __post_init__(self):
        lo, hi = self.bounds_min, self.bounds_max
        if not (lo[0] < hi[0] and lo[1] < hi[1]):
            raise ArenaError("bounds must span a positive area")
        for disc in (self.origin, *self.targets):
            if disc.radius <= 0:
                raise ArenaError("goal disc radius must be positive")
            if not self.inside_bounds(disc.center):
                raise ArenaError(f"goal disc at {disc.center} outside bounds")
        for i, t1 in enumerate(self.targets):
            for t2 in self.targets[i + 1:]:
                if geom.dist(t1.center, t2.center) < t1.radius + t2.radius:
                    raise ArenaError("target discs overlap")
        for seg in self.obstacles:
            if seg.length <= 0:
                raise ArenaError("obstacle segment has zero length")
            if seg.thickness <= 0:
                raise ArenaError("obstacle thickness must be positive")
            for p in (seg.a, seg.b):
                if not self.inside_bounds(p):
                    raise ArenaError(f"obstacle endpoint {p} outside bounds")

    @property
    def destination(self) -> Disc:
        return self.targets[-1]

    def inside_bounds(self, p: Vec) -> bool:
        return (self.bounds_min[0] <= p[0] <= self.bounds_max[0]
                and self.bounds_min[1] <= p[1] <= self.bounds_max[1])

    def in_target(self, p: Vec, index: int = -1) -> bool:
        t = self.targets[index]
        return geom.dist(p, t.center) <= t.radius

    # -- geometric queries ---------------------------------------------------

    def nearest_obstacle_angle(self, pose) -> tuple[float, int] | None:
        """Acute angle between the body axis and the nearest obstacle tangent.

        Returns (theta in [0, 90] degrees, seg_id), or None when the arena has
        no obstacles. Nearest is measured from the pose position to obstacle
        centerlines.
        """
        if not self.obstacles:
            return None
        p = (pose.x, pose.y)
        best = None
        best_d = math.inf
        for seg in self.obstacles:
            d = geom.point_segment_distance(p, seg.a, seg.b)
            if d < best_d:
                best_d = d
                best = seg
        theta = geom.acute_angle_to_line(pose.heading, best.tangent_angle)
        return theta, best.seg_id

    def contact_query(self, pose, body_length: float) -> Contact | None:
        """Deepest contact between the body segment and any obstacle, or None.

        The body is the anterior-posterior segment of length body_length
        centred on the pose. An obstacle's footprint is a capsule of radius
        thickness/2 around its centerline; penetration 0 means exact touch.
        """
        if body_length <= 0:
            raise ValueError("body_length must be positive")
        head = geom.heading_vec(pose.heading)
        half = body_length / 2.0
        p1 = (pose.x - head[0] * half, pose.y - head[1] * half)
        p2 = (pose.x + head[0] * half, pose.y + head[1] * half)
        return self._deepest_contact(p1, p2, self.obstacles)

    def boundary_contact(self, pose, body_length: float) -> Contact | None:
        """Contact against the implicit arena boundary, treated as tall walls."""
        head = geom.heading_vec(pose.heading)
        half = body_length / 2.0
        p1 = (pose.x - head[0] * half, pose.y - head[1] * half)
        p2 = (pose.x + head[0] * half, pose.y + head[1] * half)
        return self._deepest_contact(p1, p2, self._boundary_segments())

    def any_contact(self, pose, body_length: float) -> Contact | None:
        """Deepest of obstacle and boundary contact (what the agent feels)."""
        c1 = self.contact_query(pose, body_length)
        c2 = self.boundary_contact(pose, body_length)
        if c1 is None:
            return c2
        if c2 is None or c1.penetration >= c2.penetration:
            return c1
        return c2

    def _boundary_segments(self) -> tuple[ObstacleSegment, ...]:
        (x0, y0), (x1, y1) = self.bounds_min, self.bounds_max
        t = 0.1
        corners = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
        segs = []
        for i in range(4):
            a, b = corners[i], corners[(i + 1) % 4]
            # centerline sits just outside the bounds so the usable area is untouched
            n = geom.perp(geom.unit(geom.sub(b, a)))
            off = (-n[0] * t / 2, -n[1] * t / 2)
            segs.append(ObstacleSegment(geom.add(a, off), geom.add(b, off),
                                        TALL_HEIGHT, t, seg_id=BOUNDS_SEG_ID - i))
        return tuple(segs)

    @staticmethod
    def _deepest_contact(p1: Vec, p2: Vec, segments) -> Contact | None:
        best: Contact | None = None
        for seg in segments:
            d, cp, cq = geom.segment_segment_closest(p1, p2, seg.a, seg.b)
            radius = seg.thickness / 2.0
            pen = radius - d
            if pen < 0:
                continue
            if d > 0:
                normal = geom.unit(geom.sub(cp, cq))
            else:
                # body crosses the centerline; push out sideways
                normal = geom.perp(seg.tangent)
            if best is None or pen > best.penetration:
                best = Contact(seg.seg_id, seg.tangent, normal, pen, cq, seg.climbable)
        return best


# -- preset builders ---------------------------------------------------------

def _enclosure(center: Vec, height: float, thickness: float,
               first_id: int = 0) -> list[ObstacleSegment]:
    """Rectangular enclosure around `center` with the entrance gap in the front face.

    Footprint is ENCLOSURE_LENGTH (along x) by ENCLOSURE_WIDTH (along y). The
    front face (toward -x, facing the origin) is open over ENTRANCE_WIDTH at
    its +y end; the exact in-figure placement of the gap is not published, so
    the offset here is a layout assumption recorded in the preset files.
    """
    cx, cy = center
    hx = ENCLOSURE_LENGTH / 2.0
    hy = ENCLOSURE_WIDTH / 2.0
    x_front, x_back = cx - hx, cx + hx
    y_lo, y_hi = cy - hy, cy + hy
    gap_lo = y_hi - ENTRANCE_WIDTH
    pts = [
        ((x_front, y_lo), (x_front, gap_lo)),   # front face below the entrance
        ((x_front, y_hi), (x_back, y_hi)),      # top side
        ((x_front, y_lo), (x_back, y_lo)),      # bottom side
        ((x_back, y_lo), (x_back, y_hi)),       # back face
    ]
    return [ObstacleSegment(a, b, height, thickness, seg_id=first_id + i)
            for i, (a, b) in enumerate(pts)]


def build_terrain(kind: str, mock_spec: "Arena | None" = None) -> Arena:
    """Construct one of the preset terrains.

    kind is one of "no_obstacle", "low_obstacle", "tall_wall", "mock_disaster".
    Mock-disaster arenas carry a user layout: pass a pre-validated Arena (for
    example from load_arena) and it is re-checked and tagged.
    """
    if kind == "no_obstacle":
        return Arena(
            kind=kind,
            bounds_min=(-25.0, -40.0), bounds_max=(95.0, 40.0),
            origin=Disc((0.0, 0.0), GOAL_RADIUS),
            targets=(Disc((OPEN_FIELD_DIST, 0.0), GOAL_RADIUS),),
        )
    if kind in ("low_obstacle", "tall_wall"):
        height = LOW_HEIGHT if kind == "low_obstacle" else TALL_HEIGHT
        thickness = LOW_THICKNESS if kind == "low_obstacle" else TALL_THICKNESS
        dest = (OBSTACLE_DIST, 0.0)
        return Arena(
            kind=kind,
            bounds_min=(-25.0, -40.0), bounds_max=(95.0, 40.0),
            origin=Disc((0.0, 0.0), GOAL_RADIUS),
            targets=(Disc(dest, GOAL_RADIUS),),
            obstacles=tuple(_enclosure(dest, height, thickness)),
        )
    if kind == "mock_disaster":
        if mock_spec is None:
            raise ArenaError("mock_disaster requires a layout spec")
        return replace(mock_spec, kind="mock_disaster")
    raise ArenaError(f"unknown terrain kind: {kind}")


# -- plain-text arena spec files ----------------------------------------------

def save_arena(arena: Arena, path: str, header: str = "") -> None:
    lines = []
    if header:
        for h in header.splitlines():
            lines.append(f"# {h}")
    lines.append(f"kind = {arena.kind}")
    lines.append("[bounds]")
    lines.append(f"min = {arena.bounds_min[0]!r} {arena.bounds_min[1]!r}")
    lines.append(f"max = {arena.bounds_max[0]!r} {arena.bounds_max[1]!r}")
    lines.append("[origin]")
    lines.append(f"center = {arena.origin.center[0]!r} {arena.origin.center[1]!r}")
    lines.append(f"radius = {arena.origin.radius!r}")
    for t in arena.targets:
        lines.append("[target]")
        lines.append(f"center = {t.center[0]!r} {t.center[1]!r}")
        lines.append(f"radius = {t.radius!r}")
    for seg in arena.obstacles:
        lines.append("[obstacle]")
        lines.append(f"endpoints = {seg.a[0]!r} {seg.a[1]!r} {seg.b[0]!r} {seg.b[1]!r}")
        lines.append(f"height = {seg.height!r}")
        lines.append(f"thickness = {seg.thickness!r}")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def load_arena(path: str) -> Arena:
    kind = "mock_disaster"
    bounds_min = bounds_max = None
    origin = None
    targets: list[Disc] = []
    obstacles: list[ObstacleSegment] = []
    section = None
    pending: dict[str, list[float]] = {}

    def flush():
        nonlocal origin, bounds_min, bounds_max
        if section is None:
            return
        if section == "bounds":
            bounds_min = tuple(pending["min"])
            bounds_max = tuple(pending["max"])
        elif section == "origin":
            origin = Disc(tuple(pending["center"]), pending["radius"][0])
        elif section == "target":
            targets.append(Disc(tuple(pending["center"]), pending["radius"][0]))
        elif section == "obstacle":
            e = pending["endpoints"]
            obstacles.append(ObstacleSegment(
                (e[0], e[1]), (e[2], e[3]),
                pending["height"][0], pending["thickness"][0],
                seg_id=len(obstacles)))

    with open(path) as f:
        for ln, raw in enumerate(f, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("[") and line.endswith("]"):
                flush()
                section = line[1:-1].strip()
                if section not in ("bounds", "origin", "target", "obstacle"):
                    raise ArenaError(f"{path}:{ln}: unknown section [{section}]")
                pending = {}
                continue
            if "=" not in line:
                raise ArenaError(f"{path}:{ln}: expected key = values")
            key, _, val = line.partition("=")
            key = key.strip()
            if section is None:
                if key != "kind":
                    raise ArenaError(f"{path}:{ln}: unknown key {key!r}")
                kind = val.strip()
                continue
            try:
                pending[key] = [float(tok) for tok in val.split()]
            except ValueError:
                raise ArenaError(f"{path}:{ln}: non-numeric value for {key!r}") from None
    flush()
    if bounds_min is None or origin is None or not targets:
        raise ArenaError(f"{path}: arena file must define bounds, origin and targets")
    return Arena(kind=kind, bounds_min=bounds_min, bounds_max=bounds_max,
                 origin=origin, targets=tuple(targets), obstacles=tuple(obstacles))
