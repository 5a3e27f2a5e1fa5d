"""Five-phase packing engine with Boundary Packing and Ring Packing subroutines.

Packs any instance of total area <= pi/2 completely into the unit disk; larger
instances are packed best-effort and reported incomplete. The engine is a
single-threaded deterministic state machine; results are immutable after
construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from .geometry import (
    ContainerDisk,
    PlacedDisk,
    Point,
    RingShape,
    Side,
    center_penetration,
    inscribed_disk_after_two,
    place_in_ring,
    place_tangent,
    polar_angle,
    unit_container,
)

MIN_RADIUS = 1e-9

# Threshold below which Phase 1 stops recursing, relative to the container.
RECURSION_RATIO = 0.495


class InstanceError(ValueError):
    """Invalid instance data (nonpositive or sub-resolution radii)."""


class RingState(Enum):
    OPEN = "open"
    CLOSED = "closed"
    FULL = "full"


@dataclass(frozen=True)
class InstanceSpec:
    """A multiset of disk radii in container units (container radius 1)."""

    radii: Tuple[float, ...]

    def __post_init__(self):
        for r in self.radii:
            if not (r > 0.0) or not math.isfinite(r):
                raise InstanceError(f"radii must be positive finite, got {r}")
            if r < MIN_RADIUS:
                raise InstanceError(f"radius {r} below resolution {MIN_RADIUS}")

    @staticmethod
    def of(radii: Sequence[float]) -> "InstanceSpec":
        return InstanceSpec(tuple(float(r) for r in radii))

    @property
    def total_area(self) -> float:
        return math.pi * sum(r * r for r in self.radii)


@dataclass
class RingRecord:
    shape: RingShape
    state: RingState = RingState.OPEN
    last_angle: float = 0.0
    last_side: Side = Side.INNER  # flipped before each placement; first is OUTER
    placed: List[int] = field(default_factory=list)
    started: bool = False


@dataclass
class PackingState:
    container: ContainerDisk
    threshold: float
    r_min: float
    rings: List[RingRecord] = field(default_factory=list)
    placed: List[PlacedDisk] = field(default_factory=list)
    pending: List[float] = field(default_factory=list)
    unplaced: List[float] = field(default_factory=list)
    trace: List[dict] = field(default_factory=list)

    def log(self, event: str, **data) -> None:
        rec = {"event": event}
        rec.update(data)
        self.trace.append(rec)


@dataclass(frozen=True)
class PackingResult:
    placements: Tuple[Tuple[float, Tuple[float, float]], ...]
    unplaced: Tuple[float, ...]
    phase_trace: Tuple[dict, ...]
    complete: bool


def _overlaps_disk_region(q: PlacedDisk, c: ContainerDisk) -> bool:
    d = math.hypot(q.center.x - c.center.x, q.center.y - c.center.y)
    return d < c.radius + q.radius - 1e-12


def _overlaps_ring_region(q: PlacedDisk, ring: RingShape) -> bool:
    d = math.hypot(q.center.x - ring.center.x, q.center.y - ring.center.y)
    return d - q.radius < ring.r_out - 1e-12 and d + q.radius > ring.r_in + 1e-12


def _max_overlapping_angle(center: Point, region_filter, placed) -> float:
    """Maximal polar angle realized by the midpoint of a placed disk that
    overlaps the region; 0 when none does."""
    best = 0.0
    for q in placed:
        if region_filter(q):
            a = polar_angle(center, q.center)
            if a > best:
                best = a
    return best


def boundary_packing(state: PackingState, c: ContainerDisk, threshold: float) -> int:
    """Pack pending disks adjacent to c's boundary at increasing polar angles
    until one does not fit or the next radius drops below the threshold.
    Returns the number of disks placed; the stopping disk stays pending."""
    floor = _max_overlapping_angle(
        c.center, lambda q: _overlaps_disk_region(q, c), state.placed
    )
    count = 0
    while state.pending and state.pending[0] >= threshold:
        r = state.pending[0]
        if r > c.radius:
            break
        disk = place_tangent(c, r, angle_floor=floor, prev=state.placed)
        if disk is None:
            break
        state.placed.append(disk)
        state.pending.pop(0)
        floor = max(floor, polar_angle(c.center, disk.center))
        count += 1
    return count


def ring_packing(state: PackingState, ring: RingRecord) -> int:
    """Pack pending disks into the ring, alternating outer/inner anchoring,
    until a disk does not fit (ring becomes FULL) or two consecutive disks
    could pass each other (ring becomes CLOSED). Returns disks placed."""
    if not ring.started:
        ring.last_angle = _max_overlapping_angle(
            ring.shape.center,
            lambda q: _overlaps_ring_region(q, ring.shape),
            state.placed,
        )
        ring.started = True
    count = 0
    width = ring.shape.width
    while state.pending:
        r = state.pending[0]
        if ring.placed:
            r_prev = state.placed[ring.placed[-1]].radius
            if 2.0 * r_prev + 2.0 * r < width:
                ring.state = RingState.CLOSED
                state.log(
                    "ring_state",
                    state="closed",
                    r_out=ring.shape.r_out,
                    r_in=ring.shape.r_in,
                )
                return count
        side = Side.OUTER if ring.last_side is Side.INNER else Side.INNER
        disk = place_in_ring(
            ring.shape, side, r, angle_floor=ring.last_angle, prev=state.placed
        )
        if disk is None:
            ring.state = RingState.FULL
            state.log(
                "ring_state",
                state="full",
                r_out=ring.shape.r_out,
                r_in=ring.shape.r_in,
            )
            return count
        state.placed.append(disk)
        ring.placed.append(len(state.placed) - 1)
        state.pending.pop(0)
        ring.last_side = side
        ring.last_angle = max(
            ring.last_angle, polar_angle(ring.shape.center, disk.center)
        )
        count += 1
    return count  # pending exhausted; ring stays OPEN


def create_ring(state: PackingState, r_i: float) -> Optional[RingRecord]:
    """Open a new ring R[r_min, r_min - 2*r_i] concentric with the container.

    Returns None when r_min - 2*r_i <= 0 (the caller routes to Phase 2 on the
    central disk instead)."""
    r_in = state.r_min - 2.0 * r_i
    if r_in <= 0.0:
        return None
    ring = RingRecord(RingShape(state.container.center, state.r_min, r_in))
    state.rings.append(ring)
    state.r_min = min(state.r_min, r_in)
    state.log(
        "ring_created",
        r_out=ring.shape.r_out,
        r_in=ring.shape.r_in,
        cx=ring.shape.center.x,
        cy=ring.shape.center.y,
    )
    return ring


def _phase1_recursion(state: PackingState) -> None:
    """Phase 1: while the two largest pending disks are >= 0.495*C, pack both
    adjacent to C's boundary and recurse on the largest disk that still fits."""
    while (
        len(state.pending) >= 2
        and state.pending[0] >= RECURSION_RATIO * state.container.radius
        and state.pending[1] >= RECURSION_RATIO * state.container.radius
    ):
        c = state.container
        if state.pending[0] > c.radius:
            return
        first = place_tangent(c, state.pending[0], angle_floor=0.0, prev=state.placed)
        if first is None:
            return
        state.placed.append(first)
        state.pending.pop(0)
        floor = polar_angle(c.center, first.center)
        second = place_tangent(
            c, state.pending[0], angle_floor=floor, prev=state.placed
        )
        if second is None:
            state.log("phase1_partial", placed_radius=first.radius)
            return
        state.placed.append(second)
        state.pending.pop(0)
        new_c = inscribed_disk_after_two(c, first, second)
        state.container = new_c
        state.threshold = new_c.radius
        state.r_min = new_c.radius
        state.log(
            "recursion",
            radius=new_c.radius,
            cx=new_c.center.x,
            cy=new_c.center.y,
            pair=(first.radius, second.radius),
        )


def pack(instance: InstanceSpec) -> PackingResult:
    """Run the five-phase algorithm on a radius multiset (unit container)."""
    state = PackingState(
        container=unit_container(),
        threshold=0.5,
        r_min=1.0,
        pending=sorted(instance.radii, reverse=True),
    )

    _phase1_recursion(state)

    while state.pending:
        progress_marker = (len(state.placed), len(state.rings))

        # Phase 2: boundary packing with threshold (r - d)/4.
        d = center_penetration(state.container, state.placed)
        threshold = (state.container.radius - d) / 4.0
        state.threshold = threshold
        state.log(
            "phase2",
            radius=state.container.radius,
            cx=state.container.center.x,
            cy=state.container.center.y,
            penetration=d,
            threshold=threshold,
        )
        boundary_packing(state, state.container, threshold)

        # Phases 3-5: ring packing loop.
        while state.pending:
            open_rings = [rg for rg in state.rings if rg.state is RingState.OPEN]
            if open_rings:
                ring = max(open_rings, key=lambda rg: rg.shape.r_in)
            else:
                ring = create_ring(state, state.pending[0])
                if ring is None:
                    # Guard: the next disk spans past the center; continue with
                    # Phase 2 on the central disk.
                    state.container = ContainerDisk(
                        state.container.center, state.r_min
                    )
                    state.threshold = state.r_min
                    state.log("central_container", radius=state.r_min)
                    break
            ring_packing(state, ring)
            if not state.pending:
                break

            # Phase 4: split a closed ring when the two largest pending disks
            # could pass one another inside it.
            if ring.state is RingState.CLOSED and len(state.pending) >= 2:
                r_i, r_next = state.pending[0], state.pending[1]
                shape = ring.shape
                if 2.0 * r_i + 2.0 * r_next <= shape.width:
                    mid = shape.r_out - 2.0 * r_i
                    for r_out, r_in in ((shape.r_out, mid), (mid, shape.r_in)):
                        rec = RingRecord(RingShape(shape.center, r_out, r_in))
                        state.rings.append(rec)
                        state.r_min = min(state.r_min, r_in)
                        state.log(
                            "ring_created",
                            r_out=r_out,
                            r_in=r_in,
                            cx=shape.center.x,
                            cy=shape.center.y,
                            split=True,
                        )

            # Phase 5: continue on an open ring, else move to the central disk.
            if any(rg.state is RingState.OPEN for rg in state.rings):
                continue
            state.container = ContainerDisk(state.container.center, state.r_min)
            state.threshold = state.r_min
            state.log("central_container", radius=state.r_min)
            break

        if state.pending and (len(state.placed), len(state.rings)) == progress_marker:
            state.log("no_progress", pending=len(state.pending))
            state.unplaced = list(state.pending)
            state.pending = []

    placements = tuple(
        (p.radius, (p.center.x, p.center.y)) for p in state.placed
    )
    return PackingResult(
        placements=placements,
        unplaced=tuple(state.unplaced),
        phase_trace=tuple(state.trace),
        complete=not state.unplaced,
    )
