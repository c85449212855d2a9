"""Certified circle placement.

Circle mode: vertices sit at angles 2*pi*j/k on the unit circle and the
ambient region is the annulus 1-a <= |x| <= 1+a.  Every placed circle is
centred on a sector bisector at exact rational distance d from the origin
with radius d*sin(pi/k), which makes it tangent to both rays bounding its
sector; tangency points are where level sets of the angular function merge.

Distances within one sector form a geometric progression whose ratio
exceeds (1+s)/(1-s), s = sin(pi/k); that single inequality makes
consecutive circles disjoint.  Adjacent sectors must not reuse a distance:
two circles at the same d in neighbouring sectors would touch at the shared
tangency foot, so sectors carry a small multiplicative phase 1 + c*delta
with c a proper 3-colouring of the sector cycle.

All chosen parameters are exact rationals.  Predicates that involve
sin(pi/k) are decided against certified dyadic bounds; final clearances are
re-certified with interval arithmetic in ``certify_disjointness``.

Line mode: the region is bounded by an axis-aligned ellipse, vertices sit at
equally spaced abscissae, and circles are tangent to the two vertical lines
of their strip, stacked vertically with staggered offsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from mpmath import iv

from .errors import MarginViolation, PackingFailure
from .graphs import ValidatedSpec
from .numbers import (
    BOUND_BITS,
    BoxArray,
    TurnAngle,
    cos_half_sector_bounds,
    dyadic_significant,
    float_bounds,
    format_rational,
    interval_inf,
    interval_mid,
    interval_precision,
    interval_sup,
    parse_rational,
    sin_half_sector_bounds,
    to_interval,
    turn_sin_cos,
)

SAFETY = Fraction(5, 4)
STAGGER_STEP = Fraction(1, 32)             # per-colour phase increment
STAGGER_MAX = 1 + 2 * STAGGER_STEP
MARGIN_SHIFT = 20                          # epsilon = 2**-20 * feature scale


@dataclass(frozen=True)
class CircleRole:
    """What a placed circle is for.

    kind 'removed': its open disk is removed from the planar region; slot c
    means it separates edge channel c from channel c+1 of its sector.
    kind 'handle': it marks a handle surgery site for channel ``channel`` at
    stage ``stage`` (1-based), ``index`` counting within that stage.
    """

    kind: str
    channel: int
    stage: int = 0
    index: int = 0

    def to_json(self) -> dict:
        if self.kind == "removed":
            return {"kind": "removed", "slot": self.channel}
        return {"kind": "handle", "channel": self.channel,
                "stage": self.stage, "index": self.index}

    @staticmethod
    def from_json(data: dict) -> "CircleRole":
        if data["kind"] == "removed":
            return CircleRole("removed", int(data["slot"]))
        return CircleRole("handle", int(data["channel"]),
                          int(data["stage"]), int(data["index"]))


@dataclass(frozen=True)
class PlacedCircle:
    """One circle, exact.  Circle mode stores the bisector distance d (the
    radius is structurally d*sin(pi/k)); line mode stores a rational center
    and radius directly."""

    sector: int
    role: CircleRole
    d: Optional[Fraction] = None
    center: Optional[tuple[Fraction, Fraction]] = None
    radius: Optional[Fraction] = None


@dataclass(frozen=True)
class CircleArrangement:
    mode: str
    k: int                                  # sectors (strips in line mode)
    halfwidth: Fraction                     # annulus halfwidth a (circle mode)
    circles: tuple[PlacedCircle, ...]
    epsilon: Fraction
    precision_bits: int
    ellipse_axes: Optional[tuple[Fraction, Fraction]] = None
    abscissae: tuple[Fraction, ...] = ()

    # -- circle-mode geometry ------------------------------------------------

    @property
    def inner_radius(self) -> Fraction:
        return 1 - self.halfwidth

    @property
    def outer_radius(self) -> Fraction:
        return 1 + self.halfwidth

    def bisector_turn(self, sector: int) -> Fraction:
        return Fraction(2 * sector + 1, 2 * self.k)

    def vertex_turn(self, j: int) -> Fraction:
        t = Fraction(j, self.k)
        return t - (t.numerator // t.denominator)

    def sector_circles(self, sector: int) -> list[PlacedCircle]:
        return [c for c in self.circles if c.sector == sector]

    def removed_circles(self) -> list[PlacedCircle]:
        return [c for c in self.circles if c.role.kind == "removed"]

    def handle_circles(self) -> list[PlacedCircle]:
        return [c for c in self.circles if c.role.kind == "handle"]

    def radius_bounds(self, circle: PlacedCircle) -> tuple[Fraction, Fraction]:
        if circle.radius is not None:
            return circle.radius, circle.radius
        s_lo, s_hi = sin_half_sector_bounds(self.k)
        return circle.d * s_lo, circle.d * s_hi

    def center_interval(self, circle: PlacedCircle):
        """Interval enclosure of the center at the current iv precision."""
        if circle.center is not None:
            return (to_interval(circle.center[0]), to_interval(circle.center[1]))
        sin_t, cos_t = turn_sin_cos(self.bisector_turn(circle.sector))
        d = to_interval(circle.d)
        return (d * cos_t, d * sin_t)

    def radius_interval(self, circle: PlacedCircle):
        if circle.radius is not None:
            return to_interval(circle.radius)
        return to_interval(circle.d) * iv.sin(iv.pi / self.k)

    # -- serialisation -------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "mode": self.mode,
            "a": format_rational(self.halfwidth),
            "k": self.k,
            "circles": [],
            "epsilon": format_rational(self.epsilon),
            "precision_bits": self.precision_bits,
        }
        for c in self.circles:
            item = {"sector": c.sector, "role": c.role.to_json()}
            if c.d is not None:
                item["d"] = format_rational(c.d)
            if c.center is not None:
                item["center"] = [format_rational(c.center[0]),
                                  format_rational(c.center[1])]
                item["radius"] = format_rational(c.radius)
            out["circles"].append(item)
        if self.mode == "line":
            out["ellipse"] = [format_rational(self.ellipse_axes[0]),
                              format_rational(self.ellipse_axes[1])]
            out["abscissae"] = [format_rational(x) for x in self.abscissae]
        return out

    @staticmethod
    def from_json(data: dict) -> "CircleArrangement":
        circles = []
        for item in data["circles"]:
            role = CircleRole.from_json(item["role"])
            if "d" in item:
                circles.append(PlacedCircle(sector=int(item["sector"]),
                                            role=role,
                                            d=parse_rational(item["d"])))
            else:
                cx, cy = item["center"]
                circles.append(PlacedCircle(
                    sector=int(item["sector"]), role=role,
                    center=(parse_rational(cx), parse_rational(cy)),
                    radius=parse_rational(item["radius"])))
        axes = None
        if "ellipse" in data:
            axes = (parse_rational(data["ellipse"][0]),
                    parse_rational(data["ellipse"][1]))
        return CircleArrangement(
            mode=data["mode"],
            k=int(data["k"]),
            halfwidth=parse_rational(data["a"]),
            circles=tuple(circles),
            epsilon=parse_rational(data["epsilon"]),
            precision_bits=int(data.get("precision_bits", 128)),
            ellipse_axes=axes,
            abscissae=tuple(parse_rational(x) for x in data.get("abscissae", [])),
        )


# ---------------------------------------------------------------------------
# parameter selection
# ---------------------------------------------------------------------------

def _sector_colors(k: int) -> list[int]:
    """Proper colouring of the sector cycle with colours 0,1,2 so adjacent
    sectors never share a phase."""
    if k % 2 == 0:
        return [(j - 1) % 2 for j in range(1, k + 1)]
    return [(j - 1) % 2 for j in range(1, k)] + [2]


def _gap_factor(n_max: int) -> Fraction:
    """Largest 1 + 2**-u whose (n_max+1)-th power stays within the safety
    factor after reserving the stagger budget twice: the phase both stretches
    the chain's reach and eats into the outer clearance."""
    budget = SAFETY / STAGGER_MAX ** 2
    for u in range(1, 80):
        lam = 1 + Fraction(1, 1 << u)
        if lam ** (n_max + 1) <= budget:
            return lam
    raise PackingFailure("no spacing factor fits %d circles" % n_max)


def chain_ratio_bound(k: int) -> Fraction:
    """Certified upper bound for (1+s)/(1-s), the minimal ratio between
    consecutive tangent-circle distances in one sector."""
    s_lo, s_hi = sin_half_sector_bounds(k)
    return (1 + s_hi) / (1 - s_hi)


def choose_annulus_halfwidth(k: int, n_max: int) -> Fraction:
    """Smallest halfwidth of the form 1 - 2**-t wide enough for the deepest
    sector chain: (1+a)/(1-a) must exceed ((1+s)/(1-s))**n_max times the
    safety factor."""
    if k == 0 or n_max == 0:
        return Fraction(1, 2)
    need = chain_ratio_bound(k) ** n_max * SAFETY
    t = 1
    while (1 << (t + 1)) - 1 <= need:
        t += 1
        if t > 4096:
            raise PackingFailure("annulus bound ran away")
    return 1 - Fraction(1, 1 << t)


def place_sector_chain(sector: int, count: int, halfwidth: Fraction,
                       k: int, phase: Fraction = Fraction(1),
                       n_max: Optional[int] = None) -> list[Fraction]:
    """Distances d_1 < ... < d_count for one sector.

    The chain is centred at the geometric mean of the admissible distance
    range and grows by the exact ratio rho_hi * lam, where rho_hi certifiably
    exceeds (1+s)/(1-s) and lam > 1 leaves a uniform relative gap between
    consecutive circles and toward both annulus boundaries.  ``phase``
    multiplies every distance (sector stagger).  Raises PackingFailure when
    the verified margins do not hold.
    """
    if count == 0:
        return []
    if n_max is None:
        n_max = count
    s_lo, s_hi = sin_half_sector_bounds(k)
    rho_hi = (1 + s_hi) / (1 - s_hi)
    lam = _gap_factor(n_max)
    rhat = rho_hi * lam
    lo = 1 - halfwidth
    hi = 1 + halfwidth

    with interval_precision(BOUND_BITS + 32):
        fit_lo = to_interval(lo) / (1 - to_interval(s_hi))
        fit_hi = to_interval(hi) / (1 + to_interval(s_hi))
        gmean = iv.sqrt(fit_lo * fit_hi)
        anchor = gmean / iv.sqrt(to_interval(rhat) ** (count - 1))
        d_base = dyadic_significant(interval_mid(anchor), BOUND_BITS)
    if d_base <= 0:
        raise PackingFailure("empty admissible range in sector %d" % sector)

    distances = [d_base * rhat ** (i - 1) * phase for i in range(1, count + 1)]

    # exact containment verification with a quarter-step relative margin
    mu = 1 + (lam - 1) / 4
    if distances[0] * (1 - s_hi) < lo * mu:
        raise PackingFailure("inner margin failed in sector %d" % sector)
    if distances[-1] * (1 + s_hi) * mu > hi:
        raise PackingFailure("outer margin failed in sector %d" % sector)
    return distances


def _radial_roles(spec: ValidatedSpec, j: int) -> list[CircleRole]:
    """Roles of sector j's circles from the inside out: each edge channel's
    handle circles (stage ascending), then the removed disk that separates
    the channel from the next one."""
    roles: list[CircleRole] = []
    a_j = spec.edge_multiplicity(j)
    for channel in range(1, a_j + 1):
        seq = spec.handle_sequence(j, channel)
        for stage in range(1, spec.stages + 1):
            for index in range(1, seq[stage - 1] + 1):
                roles.append(CircleRole("handle", channel, stage, index))
        if channel < a_j:
            roles.append(CircleRole("removed", channel))
    return roles


def _epsilon_for(halfwidth: Fraction, circles: list[PlacedCircle],
                 k: int, mode: str) -> Fraction:
    scale = 2 * halfwidth
    if mode == "line":
        scale = 2  # ellipse x-diameter
    diameters = []
    for c in circles:
        if c.radius is not None:
            diameters.append(2 * c.radius)
        else:
            s_lo, _ = sin_half_sector_bounds(k)
            diameters.append(2 * c.d * s_lo)
    if diameters:
        scale = min(scale, min(diameters))
    return scale / (1 << MARGIN_SHIFT)


def build_arrangement(spec: ValidatedSpec) -> CircleArrangement:
    """Place every circle demanded by a validated spec."""
    if spec.mode == "line":
        return _build_line_arrangement(spec)
    k = spec.vertex_count
    if k == 0:
        halfwidth = spec.annulus_halfwidth or Fraction(1, 2)
        if not (0 < halfwidth < 1):
            raise PackingFailure("annulus halfwidth must lie in (0,1)")
        return CircleArrangement(
            mode="circle", k=0, halfwidth=halfwidth, circles=(),
            epsilon=_epsilon_for(halfwidth, [], 0, "circle"),
            precision_bits=spec.precision_bits)

    n_max = spec.max_sector_circle_count()
    colors = _sector_colors(k)
    halfwidth = spec.annulus_halfwidth
    chosen = halfwidth if halfwidth is not None else choose_annulus_halfwidth(k, n_max)
    if not (0 < chosen < 1):
        raise PackingFailure("annulus halfwidth must lie in (0,1)")

    for attempt in range(8):
        try:
            circles: list[PlacedCircle] = []
            for j in range(1, k + 1):
                roles = _radial_roles(spec, j)
                phase = 1 + colors[j - 1] * STAGGER_STEP
                distances = place_sector_chain(j, len(roles), chosen, k,
                                               phase=phase, n_max=n_max)
                for role, d in zip(roles, distances):
                    circles.append(PlacedCircle(sector=j, role=role, d=d))
            return CircleArrangement(
                mode="circle", k=k, halfwidth=chosen, circles=tuple(circles),
                epsilon=_epsilon_for(chosen, circles, k, "circle"),
                precision_bits=spec.precision_bits)
        except PackingFailure:
            if halfwidth is not None:
                raise  # a pinned halfwidth is not widened behind the caller
            # widen: next value of the form 1 - 2**-t
            t = (1 - chosen).denominator.bit_length()
            chosen = 1 - Fraction(1, 1 << t)
    raise PackingFailure("no annulus halfwidth accommodated the spec")


def place_handle_circles(spec: ValidatedSpec) -> list[PlacedCircle]:
    """Just the handle-role circles of the full arrangement, radially
    interleaved so each sits in the annular band of its edge channel."""
    return list(build_arrangement(spec).handle_circles())


# ---------------------------------------------------------------------------
# line mode
# ---------------------------------------------------------------------------

def _build_line_arrangement(spec: ValidatedSpec) -> CircleArrangement:
    k = spec.vertex_count
    strips = k - 1
    axis_x = Fraction(1)
    width = 2 * axis_x / strips
    radius = width / 2
    abscissae = tuple(-axis_x + width * (j - 1) for j in range(1, k + 1))

    spacing = Fraction(9, 8)
    circles: list[PlacedCircle] = []
    for j in range(1, strips + 1):
        n_j = spec.edge_multiplicity(j) - 1
        if n_j == 0:
            continue
        mid_x = (abscissae[j - 1] + abscissae[j]) / 2
        offset = ((j - 1) % 3) * radius / 16
        for i in range(1, n_j + 1):
            c_y = (Fraction(2 * i - n_j - 1, 2)) * 2 * radius * spacing + offset
            circles.append(PlacedCircle(
                sector=j, role=CircleRole("removed", i),
                center=(mid_x, c_y), radius=radius))

    # smallest power-of-two vertical semi-axis containing every circle's
    # bounding box with a 1/16 functional margin
    axis_y = Fraction(1, 2)
    for _ in range(48):
        ok = True
        for c in circles:
            edge_x = max(abs(c.center[0] - radius), abs(c.center[0] + radius))
            top_y = abs(c.center[1]) + radius
            if edge_x ** 2 / axis_x ** 2 + top_y ** 2 / axis_y ** 2 > Fraction(15, 16):
                ok = False
                break
        if ok:
            break
        axis_y *= 2
    else:
        raise PackingFailure("ellipse could not absorb the circle stacks")

    return CircleArrangement(
        mode="line", k=strips, halfwidth=Fraction(0),
        circles=tuple(circles),
        epsilon=_epsilon_for(Fraction(0), circles, 0, "line"),
        precision_bits=spec.precision_bits,
        ellipse_axes=(axis_x, axis_y),
        abscissae=abscissae)


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DisjointnessReport:
    entries: tuple[tuple[str, Fraction], ...]
    min_margin: Fraction
    epsilon: Fraction


def certify_disjointness(arr: CircleArrangement,
                         bits: Optional[int] = None) -> DisjointnessReport:
    """Certified clearances between all placed disks and the region boundary.

    Circle mode runs a vectorized outward-rounded float64 pass over all
    boundary and pair margins, then re-certifies any entry whose float bound
    comes within a small factor of epsilon with high-precision intervals.
    Raises MarginViolation when a certified lower bound fails to exceed the
    arrangement's epsilon.
    """
    bits = bits or arr.precision_bits
    entries: list[tuple[str, Fraction]] = []
    if arr.mode == "circle":
        if arr.circles:
            entries.extend(_circle_mode_margins(arr, bits))
    else:
        with interval_precision(bits):
            _line_mode_margins(arr, entries)
    if not entries:
        return DisjointnessReport((), Fraction(1), arr.epsilon)
    min_margin = min(m for _, m in entries)
    for label, margin in entries:
        if margin <= arr.epsilon:
            raise MarginViolation(label, margin)
    return DisjointnessReport(tuple(entries), min_margin, arr.epsilon)


def _circle_mode_margins(arr: CircleArrangement, bits: int):
    n = len(arr.circles)
    d_lo = np.array([float_bounds(c.d)[0] for c in arr.circles])
    d_hi = np.array([float_bounds(c.d)[1] for c in arr.circles])
    s_lo_f, _ = float_bounds(sin_half_sector_bounds(arr.k)[0])
    _, s_hi_f = float_bounds(sin_half_sector_bounds(arr.k)[1])
    s_box = BoxArray(np.float64(s_lo_f), np.float64(s_hi_f))
    lo_box = BoxArray(*map(np.float64, float_bounds(arr.inner_radius)))
    hi_box = BoxArray(*map(np.float64, float_bounds(arr.outer_radius)))
    d_box = BoxArray(d_lo, d_hi)

    inner = d_box * (BoxArray.exact(1.0) - s_box) - lo_box
    outer = hi_box - d_box * (BoxArray.exact(1.0) + s_box)

    # cos of every bisector angle difference, enclosed once per distinct value
    cos_cache: dict[Fraction, tuple[float, float]] = {}
    cos_lo = np.ones((n, n))
    cos_hi = np.ones((n, n))
    with interval_precision(BOUND_BITS):
        for i in range(n):
            for j in range(i + 1, n):
                dt = arr.bisector_turn(arr.circles[i].sector) \
                    - arr.bisector_turn(arr.circles[j].sector)
                dt -= dt.numerator // dt.denominator  # normalise to [0,1)
                if dt not in cos_cache:
                    _, cos_iv = turn_sin_cos(dt)
                    c_lo = float_bounds(interval_inf(cos_iv))[0]
                    c_hi = float_bounds(interval_sup(cos_iv))[1]
                    cos_cache[dt] = (c_lo, c_hi)
                cos_lo[i, j], cos_hi[i, j] = cos_cache[dt]
    cos_box = BoxArray(cos_lo, cos_hi)

    di = BoxArray(d_lo[:, None], d_hi[:, None])
    dj = BoxArray(d_lo[None, :], d_hi[None, :])
    dist2 = di.square() + dj.square() - BoxArray.exact(2.0) * di * dj * cos_box
    dist = dist2.sqrt()
    pair = dist - (di + dj) * s_box

    eps_hi = float_bounds(arr.epsilon)[1]
    suspect_cut = eps_hi * 8

    entries: list[tuple[str, Fraction]] = []
    slow: list[str] = []

    def _take(label: str, lo_val: float):
        if not np.isfinite(lo_val) or lo_val <= suspect_cut:
            slow.append(label)
        else:
            entries.append((label, Fraction(float(lo_val))))

    for i in range(n):
        _take("inner:%d" % i, np.atleast_1d(inner.lo)[i])
        _take("outer:%d" % i, np.atleast_1d(outer.lo)[i])
    for i in range(n):
        for j in range(i + 1, n):
            _take("pair:%d:%d" % (i, j), pair.lo[i, j])

    if slow:
        with interval_precision(bits):
            for label in slow:
                entries.append((label, _slow_circle_margin(arr, label)))
    return entries


def _slow_circle_margin(arr: CircleArrangement, label: str) -> Fraction:
    s = iv.sin(iv.pi / arr.k)
    kind, rest = label.split(":", 1)
    if kind == "inner":
        c = arr.circles[int(rest)]
        return interval_inf(to_interval(c.d) * (1 - s) - to_interval(arr.inner_radius))
    if kind == "outer":
        c = arr.circles[int(rest)]
        return interval_inf(to_interval(arr.outer_radius) - to_interval(c.d) * (1 + s))
    i, j = (int(p) for p in rest.split(":"))
    ci, cj = arr.circles[i], arr.circles[j]
    di, dj = to_interval(ci.d), to_interval(cj.d)
    if ci.sector == cj.sector:
        dist = to_interval(abs(ci.d - cj.d))
    else:
        dt = arr.bisector_turn(ci.sector) - arr.bisector_turn(cj.sector)
        _, cos_dt = turn_sin_cos(dt)
        dist = iv.sqrt(di ** 2 + dj ** 2 - 2 * di * dj * cos_dt)
    return interval_inf(dist - (di + dj) * s)


def _line_mode_margins(arr: CircleArrangement, entries):
    ax, ay = arr.ellipse_axes
    for i, c in enumerate(arr.circles):
        # functional ellipse margin on the disk's bounding box (a certified
        # lower bound for the true clearance functional)
        edge_x = max(abs(c.center[0] - c.radius), abs(c.center[0] + c.radius))
        top_y = abs(c.center[1]) + c.radius
        margin = 1 - edge_x ** 2 / ax ** 2 - top_y ** 2 / ay ** 2
        entries.append(("ellipse:%d" % i, Fraction(margin)))
    for i in range(len(arr.circles)):
        for j in range(i + 1, len(arr.circles)):
            ci, cj = arr.circles[i], arr.circles[j]
            dx = ci.center[0] - cj.center[0]
            dy = ci.center[1] - cj.center[1]
            gap2 = to_interval(dx * dx + dy * dy)
            dist = iv.sqrt(gap2)
            entries.append(("pair:%d:%d" % (i, j),
                            interval_inf(dist - to_interval(ci.radius + cj.radius))))


# ---------------------------------------------------------------------------
# tangency events
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TangencyEvent:
    circle_index: int
    sector: int
    role: CircleRole
    turn: TurnAngle
    foot_lo: Fraction
    foot_hi: Fraction


def tangency_events(arr: CircleArrangement) -> tuple[TangencyEvent, ...]:
    """Two events per circle.

    Circle mode: a circle in sector j touches the boundary rays at angles
    2*pi*j/k and 2*pi*(j+1)/k, at distance d*cos(pi/k) from the origin.
    Line mode: a circle in strip j touches the walls x = x_j and x = x_{j+1}
    at height equal to its centre's ordinate.
    """
    events: list[TangencyEvent] = []
    if arr.mode == "circle":
        c_lo, c_hi = (cos_half_sector_bounds(arr.k) if arr.k else (0, 0))
        for idx, c in enumerate(arr.circles):
            for boundary in (c.sector, c.sector + 1):
                events.append(TangencyEvent(
                    circle_index=idx, sector=c.sector, role=c.role,
                    turn=TurnAngle(Fraction(boundary, arr.k)),
                    foot_lo=c.d * c_lo, foot_hi=c.d * c_hi))
    else:
        for idx, c in enumerate(arr.circles):
            for wall in (arr.abscissae[c.sector - 1], arr.abscissae[c.sector]):
                events.append(TangencyEvent(
                    circle_index=idx, sector=c.sector, role=c.role,
                    turn=TurnAngle(Fraction(0)),  # unused in line mode
                    foot_lo=wall, foot_hi=wall))
    events.sort(key=lambda e: (e.turn.turns, e.foot_lo, e.circle_index))
    return tuple(events)


def check_tangency_identity(arr: CircleArrangement,
                            bits: Optional[int] = None) -> Fraction:
    """Cross-check that each claimed tangency angle is numerically tangent:
    the distance from the circle centre to the boundary ray equals the
    radius.  Returns the largest certified deviation (should be at the scale
    of interval widths)."""
    if arr.mode != "circle" or not arr.circles:
        return Fraction(0)
    bits = bits or arr.precision_bits
    worst = Fraction(0)
    with interval_precision(bits):
        for c in arr.circles:
            for boundary in (c.sector, c.sector + 1):
                dt = arr.bisector_turn(c.sector) - Fraction(boundary, arr.k)
                sin_dt, _ = turn_sin_cos(dt)
                line_dist = to_interval(c.d) * abs(sin_dt)
                radius = arr.radius_interval(c)
                gap = line_dist - radius
                mag = max(abs(interval_inf(gap)), abs(interval_sup(gap)))
                worst = max(worst, mag)
    return worst
