"""Reeb graph extraction by exact event sweep.

The composed Morse function on the constructed hypersurface has its level
components in bijection with the connected components of region-and-ray
intersections in the plane, so the whole graph can be read off the planar
arrangement.  Away from vertex angles a ray meets the region in one interval
per edge channel (the boundary segment minus removed-disk chords); at a
vertex angle every circle of the two adjacent sectors is tangent to the ray,
the open disks miss it, and the level set is a single interval, which is the
merge event that produces the graph vertex.

All crossing decisions are certified.  A ray at turn offset dt from a
circle's bisector crosses the circle exactly when |sin(2 pi dt)| < sin(pi/k)
and cos(2 pi dt) > 0; the test is scale-free, so one interval certificate
per distinct (dt, k) covers every circle.  Offsets of exactly half a sector
are structural tangencies and are never decided numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from mpmath import iv

from .errors import (
    CountMismatch,
    DegenerateEvent,
    EulerMismatch,
    MissingSingularAngle,
)
from .graphs import ValidatedSpec
from .layout import CircleArrangement, TangencyEvent, tangency_events
from .numbers import (
    TurnAngle,
    format_rational,
    interval_inf,
    interval_precision,
    interval_sup,
    parse_rational,
    sin_half_sector_bounds,
    turn_sin_cos,
)
from .poly import fiber_word


# ---------------------------------------------------------------------------
# result types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReebVertex:
    left_channels: int
    right_channels: int
    angle: Optional[TurnAngle] = None
    abscissa: Optional[Fraction] = None

    @property
    def degree(self) -> int:
        return self.left_channels + self.right_channels

    def position_label(self) -> str:
        if self.angle is not None:
            return self.angle.label()
        return format_rational(self.abscissa)


@dataclass(frozen=True)
class ReebEdge:
    channel: tuple[int, int]  # (sector or strip, index from the inside out)
    source: int               # vertex index
    target: int
    fiber: str


@dataclass(frozen=True)
class ReebGraphResult:
    no_vertex_circle: bool
    vertices: tuple[ReebVertex, ...]
    edges: tuple[ReebEdge, ...]
    mode: str = "circle"

    def cyclic_multiplicities(self) -> tuple[int, ...]:
        """Edge count leaving each vertex toward the next, in sweep order."""
        return tuple(sum(1 for e in self.edges if e.source == i)
                     for i in range(len(self.vertices)))

    def to_json(self) -> dict:
        vertices = []
        for v in self.vertices:
            item: dict = {"degree": v.degree}
            if v.angle is not None:
                item["angle"] = v.angle.label()
            else:
                item["abscissa"] = format_rational(v.abscissa)
            vertices.append(item)
        return {
            "no_vertex_circle": self.no_vertex_circle,
            "vertices": vertices,
            "edges": [
                {"channel": list(e.channel), "from": e.source,
                 "to": e.target, "fiber": e.fiber}
                for e in self.edges
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "ReebGraphResult":
        edges = tuple(
            ReebEdge(channel=(int(e["channel"][0]), int(e["channel"][1])),
                     source=int(e["from"]), target=int(e["to"]),
                     fiber=e["fiber"])
            for e in data["edges"]
        )
        vertices = []
        mode = "circle"
        for i, item in enumerate(data["vertices"]):
            left = sum(1 for e in edges if e.target == i)
            right = sum(1 for e in edges if e.source == i)
            if "angle" in item:
                vertices.append(ReebVertex(left, right,
                                           angle=TurnAngle.parse(item["angle"])))
            else:
                mode = "line"
                vertices.append(ReebVertex(
                    left, right, abscissa=parse_rational(item["abscissa"])))
        return ReebGraphResult(bool(data["no_vertex_circle"]),
                               tuple(vertices), edges, mode)


# ---------------------------------------------------------------------------
# certified crossing predicate
# ---------------------------------------------------------------------------

def _normalize_offset(dt: Fraction) -> Fraction:
    dt = dt - (dt.numerator // dt.denominator)
    if dt > Fraction(1, 2):
        dt -= 1
    return dt


@lru_cache(maxsize=None)
def _crossing_state(dt: Fraction, k: int, bits: int) -> str:
    """'hit', 'miss', or 'tangent' for a ray at turn offset dt from the
    bisector of a circle tangent to both rays of a sector of k.  Scale-free:
    the circle's radius is d*sin(pi/k) at center distance d, so the ray-line
    distance d*|sin(2 pi dt)| compares to the radius independently of d."""
    dt = _normalize_offset(dt)
    if abs(dt) == Fraction(1, 2 * k):
        return "tangent"
    with interval_precision(bits):
        sin_dt, cos_dt = turn_sin_cos(dt)
        s = iv.sin(iv.pi / k)
        mag = abs(sin_dt)
        if interval_sup(mag) < interval_inf(s) and interval_inf(cos_dt) > 0:
            return "hit"
        if interval_inf(mag) > interval_sup(s) or interval_sup(cos_dt) < 0:
            return "miss"
    raise DegenerateEvent(
        "crossing of ray at offset %s of a turn undecided for k=%d" % (dt, k))


def _ray_crossing(arr: CircleArrangement, theta: Fraction, circle_index: int) -> str:
    circle = arr.circles[circle_index]
    dt = theta - arr.bisector_turn(circle.sector)
    return _crossing_state(dt, arr.k, arr.precision_bits)


# ---------------------------------------------------------------------------
# radial band structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SectorBands:
    sector: int
    removed: tuple[int, ...]                       # ascending distance
    handle_channels: tuple[tuple[int, ...], ...]   # per channel, ascending
    channels: int


def _sector_bands(arr: CircleArrangement, sector: int) -> SectorBands:
    """Channel bands of one sector from radial order alone; consecutive
    chords are certified disjoint by exact comparison against the sine
    bounds, so band membership is unambiguous."""
    s_hi = sin_half_sector_bounds(arr.k)[1]
    members = [(i, c) for i, c in enumerate(arr.circles) if c.sector == sector]
    members.sort(key=lambda ic: ic[1].d)
    for (_, inner), (_, outer) in zip(members, members[1:]):
        if not inner.d * (1 + s_hi) < outer.d * (1 - s_hi):
            raise DegenerateEvent("radial bands overlap in sector %d" % sector)
    removed = [i for i, c in members if c.role.kind == "removed"]
    buckets: list[list[int]] = [[] for _ in range(len(removed) + 1)]
    band = 0
    for i, c in members:
        if c.role.kind == "removed":
            band += 1
        else:
            buckets[band].append(i)
    return SectorBands(sector, tuple(removed),
                       tuple(tuple(b) for b in buckets), len(removed) + 1)


def _certified_channel_count(arr: CircleArrangement, sector: int,
                             bands: SectorBands) -> int:
    """Count region intervals on the bisector ray of a sector: one more than
    the removed chords it crosses.  Every crossing decision is certified and
    cross-checked against the sector attribution of the circles."""
    theta = arr.bisector_turn(sector)
    hits = 0
    for i, c in enumerate(arr.circles):
        state = _ray_crossing(arr, theta, i)
        if state == "tangent":
            raise DegenerateEvent(
                "structural tangency on a bisector ray in sector %d" % sector)
        if (state == "hit") != (c.sector == sector):
            raise DegenerateEvent(
                "crossing certificate disagrees with sector attribution "
                "for circle %d at the sector-%d bisector" % (i, sector))
        if state == "hit" and c.role.kind == "removed":
            hits += 1
    if hits != len(bands.removed):
        raise DegenerateEvent("chord count %d does not match the %d removed "
                              "disks of sector %d"
                              % (hits, len(bands.removed), sector))
    return hits + 1


def _certify_single_interval(arr: CircleArrangement, theta: Fraction) -> None:
    """At a vertex angle the adjacent circles only touch the ray, so no open
    disk removes anything: the level set must be one interval."""
    for i, c in enumerate(arr.circles):
        state = _ray_crossing(arr, theta, i)
        if state == "hit" and c.role.kind == "removed":
            raise DegenerateEvent(
                "removed disk %d still crosses the ray at %s of a turn"
                % (i, theta))


def _stage_counts(arr: CircleArrangement, circle_indices: tuple[int, ...],
                  dimension: int) -> list[int]:
    stages = (dimension - 1) // 2 if dimension > 2 else 0
    counts = [0] * stages
    for i in circle_indices:
        stage = arr.circles[i].role.stage
        if not 1 <= stage <= stages:
            raise ValueError("handle circle %d has stage %d outside the %d "
                             "stages of dimension %d"
                             % (i, stage, stages, dimension))
        counts[stage - 1] += 1
    return counts


# ---------------------------------------------------------------------------
# the sweep
# ---------------------------------------------------------------------------

def sweep_reeb(arr: CircleArrangement, dimension: int = 2) -> ReebGraphResult:
    """Extract the Reeb graph of the angular (circle mode) or abscissa
    (line mode) function from a certified arrangement."""
    if arr.mode == "line":
        return _sweep_line(arr, dimension)

    events = tangency_events(arr)
    if not events:
        return ReebGraphResult(no_vertex_circle=True, vertices=(), edges=())

    k = arr.k
    bands = {j: _sector_bands(arr, j) for j in range(1, k + 1)}
    counts = {j: _certified_channel_count(arr, j, bands[j])
              for j in range(1, k + 1)}

    vertex_turns = sorted({e.turn.turns for e in events})
    for t in vertex_turns:
        _certify_single_interval(arr, t)

    def sector_after(turn: Fraction) -> int:
        j = int(turn * k) % k
        return k if j == 0 else j

    vertices = []
    for t in vertex_turns:
        right = sector_after(t)
        left = right - 1 if right > 1 else k
        vertices.append(ReebVertex(left_channels=counts[left],
                                   right_channels=counts[right],
                                   angle=TurnAngle(t)))

    edges = []
    n_v = len(vertex_turns)
    for vi, t in enumerate(vertex_turns):
        target = (vi + 1) % n_v
        sector = sector_after(t)
        for index in range(1, counts[sector] + 1):
            word = fiber_word(dimension, _stage_counts(
                arr, bands[sector].handle_channels[index - 1], dimension))
            edges.append(ReebEdge(channel=(sector, index), source=vi,
                                  target=target, fiber=word))
    return ReebGraphResult(no_vertex_circle=False, vertices=tuple(vertices),
                           edges=tuple(edges))


def _line_counts(arr: CircleArrangement, strip: int) -> tuple[int, list]:
    """Removed chords crossed by the vertical line at a strip's midpoint;
    exact rational comparisons throughout."""
    mid = (arr.abscissae[strip - 1] + arr.abscissae[strip]) / 2
    chords = []
    for i, c in enumerate(arr.circles):
        gap = abs(mid - c.center[0])
        if gap == c.radius:
            raise DegenerateEvent("tangency on a strip midline")
        if gap < c.radius:
            if c.sector != strip:
                raise DegenerateEvent("crossing disagrees with strip "
                                      "attribution for circle %d" % i)
            chords.append((c.center[1], i))
        elif c.sector == strip:
            raise DegenerateEvent("strip-%d circle misses its own midline"
                                  % strip)
    chords.sort()
    return len(chords) + 1, chords


def _sweep_line(arr: CircleArrangement, dimension: int) -> ReebGraphResult:
    strips = arr.k
    counts = {}
    chords = {}
    for j in range(1, strips + 1):
        counts[j], chords[j] = _line_counts(arr, j)

    # interior walls are vertices when some adjacent circle touches them;
    # the two ellipse folds are always singular
    def wall_has_event(j: int) -> bool:
        wall = arr.abscissae[j - 1]
        for c in arr.circles:
            gap = abs(wall - c.center[0])
            if gap < c.radius:
                raise DegenerateEvent("removed disk crosses a wall")
            if gap == c.radius:
                return True
        return False

    vertex_walls = [1]
    vertex_walls.extend(j for j in range(2, strips + 1) if wall_has_event(j))
    vertex_walls.append(strips + 1)

    vertices = []
    for wall in vertex_walls:
        left = counts[wall - 1] if wall > 1 else 0
        right = counts[wall] if wall <= strips else 0
        vertices.append(ReebVertex(left_channels=left, right_channels=right,
                                   abscissa=arr.abscissae[wall - 1]))

    edges = []
    for pos in range(len(vertex_walls) - 1):
        strip = vertex_walls[pos]
        for index in range(1, counts[strip] + 1):
            edges.append(ReebEdge(channel=(strip, index), source=pos,
                                  target=pos + 1,
                                  fiber=fiber_word(dimension, ())))
    return ReebGraphResult(no_vertex_circle=False, vertices=tuple(vertices),
                           edges=tuple(edges), mode="line")


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepCertificate:
    events: tuple[TangencyEvent, ...]
    saddle_count: int
    handle_event_count: int
    sector_channel_counts: tuple[int, ...]
    vertices_single_interval: bool
    folds_nondegenerate: bool

    def to_json(self) -> dict:
        return {
            "events": len(self.events),
            "saddle_count": self.saddle_count,
            "handle_event_count": self.handle_event_count,
            "sector_channel_counts": list(self.sector_channel_counts),
            "vertices_single_interval": self.vertices_single_interval,
            "folds_nondegenerate": self.folds_nondegenerate,
        }


def verify_morse(arr: CircleArrangement) -> SweepCertificate:
    """Certify the Morse data of the arrangement's sweep: both tangencies of
    every circle are nondegenerate folds (the origin, respectively the strip
    walls, lie strictly off the circle), every vertex angle carries at least
    one tangency, and the saddle count matches the removed-disk count."""
    events = tangency_events(arr)
    saddles = sum(1 for e in events if e.role.kind == "removed")
    handle_events = sum(1 for e in events if e.role.kind == "handle")

    if arr.mode == "circle":
        s_hi = sin_half_sector_bounds(arr.k)[1] if arr.k else None
        for c in arr.circles:
            # center distance exceeds the radius: d > d*sin(pi/k)
            if not c.d * (1 - s_hi) > 0:
                raise DegenerateEvent("circle surrounds the origin")
        event_turns = {e.turn.turns for e in events}
        for j in range(1, arr.k + 1):
            t = arr.vertex_turn(j)
            if t not in event_turns:
                raise MissingSingularAngle(j)
            _certify_single_interval(arr, t)
        sector_counts = tuple(
            _certified_channel_count(arr, j, _sector_bands(arr, j))
            for j in range(1, arr.k + 1))
    else:
        for j in range(2, arr.k + 1):
            wall = arr.abscissae[j - 1]
            if not any(abs(wall - c.center[0]) == c.radius
                       for c in arr.circles):
                raise MissingSingularAngle(j)
        sector_counts = tuple(_line_counts(arr, j)[0]
                              for j in range(1, arr.k + 1))

    if saddles != 2 * len([c for c in arr.circles if c.role.kind == "removed"]):
        raise DegenerateEvent("saddle bookkeeping drifted")
    return SweepCertificate(
        events=events,
        saddle_count=saddles,
        handle_event_count=handle_events,
        sector_channel_counts=sector_counts,
        vertices_single_interval=True,
        folds_nondegenerate=True,
    )


@dataclass(frozen=True)
class EulerReport:
    chi_from_saddles: int
    chi_from_region: int
    genus: int

    @property
    def chi(self) -> int:
        return self.chi_from_saddles

    def to_json(self) -> dict:
        return {"chi_from_saddles": self.chi_from_saddles,
                "chi_from_region": self.chi_from_region,
                "genus": self.genus}


def euler_check(arr: CircleArrangement, dimension: int = 2) -> EulerReport:
    """Euler characteristic of the constructed surface two ways: Morse
    counting of the sweep events against doubling of the planar region's
    characteristic.  Surface case only."""
    if dimension != 2:
        raise ValueError("Euler bookkeeping is defined for surfaces")
    removed = len([c for c in arr.circles if c.role.kind == "removed"])
    cert = verify_morse(arr)
    if arr.mode == "circle":
        chi_sweep = -cert.saddle_count
        chi_region = 2 * (0 - removed)       # annulus minus holes, doubled
        genus = 1 + removed
    else:
        chi_sweep = 2 - cert.saddle_count    # two ellipse folds
        chi_region = 2 * (1 - removed)       # disk minus holes, doubled
        genus = removed
    if chi_sweep != chi_region:
        raise EulerMismatch("saddle count gives chi=%d, region doubling "
                            "gives chi=%d" % (chi_sweep, chi_region))
    return EulerReport(chi_from_saddles=chi_sweep,
                       chi_from_region=chi_region, genus=genus)


@dataclass(frozen=True)
class FiberRow:
    sector: int
    channel: int
    counts: tuple[int, ...]
    word: str
    sample_angle: str

    def to_json(self) -> dict:
        return {"sector": self.sector, "channel": self.channel,
                "counts": list(self.counts), "word": self.word,
                "sample_angle": self.sample_angle}


@dataclass(frozen=True)
class FiberTable:
    rows: tuple[FiberRow, ...]

    def to_json(self) -> dict:
        return {"rows": [r.to_json() for r in self.rows]}


def fiber_counts_check(arr: CircleArrangement,
                       spec: ValidatedSpec) -> FiberTable:
    """Count handle-circle chords per edge channel at each sector's bisector
    and compare with the spec's handle sequences; emit the connected-sum
    words as fiber metadata."""
    if arr.mode != "circle":
        raise ValueError("fiber counting applies to circle arrangements")
    rows = []
    for j in range(1, arr.k + 1):
        bands = _sector_bands(arr, j)
        _certified_channel_count(arr, j, bands)
        if bands.channels != spec.edge_multiplicity(j):
            raise CountMismatch("sector %d shows %d channels, spec says %d"
                                % (j, bands.channels, spec.edge_multiplicity(j)))
        for channel in range(1, bands.channels + 1):
            got = tuple(_stage_counts(arr, bands.handle_channels[channel - 1],
                                      spec.dimension))
            want = spec.handle_sequence(j, channel)
            if len(want) < len(got):
                want = want + (0,) * (len(got) - len(want))
            if got != want:
                raise CountMismatch(
                    "channel (%d,%d) counts %s, spec says %s"
                    % (j, channel, got, want))
            rows.append(FiberRow(
                sector=j, channel=channel, counts=got,
                word=fiber_word(spec.dimension, got),
                sample_angle=TurnAngle(arr.bisector_turn(j)).label()))
    return FiberTable(rows=tuple(rows))
