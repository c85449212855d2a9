"""Defining polynomials for the constructed hypersurfaces.

A model polynomial is a product of quadratic factors with square-deficit
blocks folded in per stage:

    P_s = P_{s-1} * (product of stage-s factors) - (sum of new squares).

Stage 0 holds the planar region factors (annulus or ellipse boundary plus
one factor per removed disk, each positive outside its disk).  Each later
stage multiplies in ellipsoid factors (positive outside the removed
ellipsoids) and appends fresh variables whose squares are subtracted; the
zero set doubles the region into a closed hypersurface and each ellipsoid
removal attaches a handle.

Factors keep exact rational data (distances, turns, heights); the handful
of irrational constants (cos/sin of rational turns, sin(pi/k)) are produced
by pluggable constant pools, so the same evaluation code runs on plain
float64 arrays, outward-rounded interval arrays, and mpmath intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from mpmath import iv, mp

from .errors import ExpansionTooLarge, HeightFailure, NoFactors
from .graphs import (
    ValidatedSpec,
    graph_spec_from_json,
    validated,
    validated_spec_to_json,
)
from .layout import (
    CircleArrangement,
    PlacedCircle,
    build_arrangement,
    certify_disjointness,
)
from .numbers import (
    BOUND_BITS,
    DEFAULT_PRECISION_BITS,
    BoxArray,
    decimal_string,
    dyadic_significant,
    float_bounds,
    format_rational,
    interval_inf,
    interval_precision,
    interval_sup,
    parse_rational,
    sin_half_sector_bounds,
    to_interval,
    turn_sin_cos,
)

EXPANSION_GUARD = 10 ** 6


@dataclass(frozen=True)
class Factor:
    """One quadratic factor.

    annulus_outer: (1+a)^2 - x0^2 - x1^2
    annulus_inner: x0^2 + x1^2 - (1-a)^2
    circle: |x - b|^2 - r^2, either polar (center at distance d on the
        bisector of a sector of k, radius scale*d*sin(pi/k)) or rational
        (explicit center/radius, line mode)
    ellipse_outer: A^2 B^2 - B^2 x0^2 - A^2 x1^2
    ellipsoid: |x - b|^2 - r^2 + (r^2/h^2) (sum of transverse squares),
        the form of |x-b|^2/r^2 + |y|^2/h^2 - 1 cleared to unit planar
        scale; deep stages then keep factor values inside float range
    """

    kind: str
    a: Optional[Fraction] = None
    d: Optional[Fraction] = None
    turn: Optional[Fraction] = None
    sectors: int = 0
    scale: Fraction = Fraction(1)
    center: Optional[tuple[Fraction, Fraction]] = None
    radius: Optional[Fraction] = None
    axes: Optional[tuple[Fraction, Fraction]] = None
    height: Optional[Fraction] = None
    transverse: tuple[int, ...] = ()

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.a is not None:
            out["a"] = format_rational(self.a)
        if self.d is not None:
            out["d"] = format_rational(self.d)
            out["turn"] = format_rational(self.turn)
            out["sectors"] = self.sectors
        if self.scale != 1:
            out["scale"] = format_rational(self.scale)
        if self.center is not None:
            out["center"] = [format_rational(self.center[0]),
                             format_rational(self.center[1])]
            out["radius"] = format_rational(self.radius)
        if self.axes is not None:
            out["axes"] = [format_rational(self.axes[0]),
                           format_rational(self.axes[1])]
        if self.height is not None:
            out["height"] = format_rational(self.height)
        if self.transverse:
            out["transverse"] = list(self.transverse)
        return out

    @staticmethod
    def from_json(data: dict) -> "Factor":
        return Factor(
            kind=data["kind"],
            a=parse_rational(data["a"]) if "a" in data else None,
            d=parse_rational(data["d"]) if "d" in data else None,
            turn=parse_rational(data["turn"]) if "turn" in data else None,
            sectors=int(data.get("sectors", 0)),
            scale=parse_rational(data["scale"]) if "scale" in data else Fraction(1),
            center=tuple(parse_rational(c) for c in data["center"])
            if "center" in data else None,
            radius=parse_rational(data["radius"]) if "radius" in data else None,
            axes=tuple(parse_rational(c) for c in data["axes"])
            if "axes" in data else None,
            height=parse_rational(data["height"]) if "height" in data else None,
            transverse=tuple(int(i) for i in data.get("transverse", ())),
        )


@dataclass(frozen=True)
class Stage:
    factors: tuple[Factor, ...]
    deficit_vars: tuple[int, ...]


@dataclass(frozen=True)
class FactoredPolynomial:
    num_vars: int
    stages: tuple[Stage, ...]

    @property
    def planar_factors(self) -> tuple[Factor, ...]:
        return self.stages[0].factors

    @property
    def ellipsoid_stages(self) -> tuple[tuple[Factor, ...], ...]:
        return tuple(s.factors for s in self.stages[1:])

    @property
    def us_deficits(self) -> tuple[int, ...]:
        return tuple(len(s.deficit_vars) for s in self.stages if s.deficit_vars)

    def factor_count(self) -> int:
        return sum(len(s.factors) for s in self.stages)

    def to_json(self) -> dict:
        return {
            "variables": self.num_vars,
            "stages": [
                {"factors": [f.to_json() for f in s.factors],
                 "deficit_vars": list(s.deficit_vars)}
                for s in self.stages
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "FactoredPolynomial":
        stages = tuple(
            Stage(tuple(Factor.from_json(f) for f in s["factors"]),
                  tuple(int(i) for i in s["deficit_vars"]))
            for s in data["stages"]
        )
        return FactoredPolynomial(int(data["variables"]), stages)


def degree(poly: FactoredPolynomial) -> int:
    """Total degree: 2 per quadratic factor.  Square deficits never exceed
    it because every constructed polynomial keeps at least one factor."""
    count = poly.factor_count()
    if count == 0:
        raise NoFactors("polynomial has no factors")
    return 2 * count


# ---------------------------------------------------------------------------
# constant pools
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _turn_bounds(turn: Fraction) -> tuple[tuple[Fraction, Fraction],
                                          tuple[Fraction, Fraction]]:
    """Certified (cos, sin) bounds of 2*pi*turn at the base bound precision."""
    with interval_precision(BOUND_BITS):
        sin_t, cos_t = turn_sin_cos(turn)
        return ((interval_inf(cos_t), interval_sup(cos_t)),
                (interval_inf(sin_t), interval_sup(sin_t)))


class FloatConsts:
    """Nearest-double constants; fast and uncertified."""

    def lift(self, fr: Fraction):
        return float(fr)

    def turn_cos_sin(self, turn: Fraction):
        (c_lo, c_hi), (s_lo, s_hi) = _turn_bounds(turn)
        return float((c_lo + c_hi) / 2), float((s_lo + s_hi) / 2)

    def sin_half(self, k: int):
        lo, hi = sin_half_sector_bounds(k)
        return float((lo + hi) / 2)


class BoxConsts:
    """Directed float64 interval constants for BoxArray evaluation."""

    def lift(self, fr: Fraction):
        return BoxArray.exact(fr)

    def turn_cos_sin(self, turn: Fraction):
        (c_lo, c_hi), (s_lo, s_hi) = _turn_bounds(turn)
        return (BoxArray(float_bounds(c_lo)[0], float_bounds(c_hi)[1]),
                BoxArray(float_bounds(s_lo)[0], float_bounds(s_hi)[1]))

    def sin_half(self, k: int):
        lo, hi = sin_half_sector_bounds(k)
        return BoxArray(float_bounds(lo)[0], float_bounds(hi)[1])


class IvConsts:
    """mpmath interval constants at the caller's active precision."""

    def lift(self, fr: Fraction):
        return to_interval(fr)

    def turn_cos_sin(self, turn: Fraction):
        sin_t, cos_t = turn_sin_cos(turn)
        return cos_t, sin_t

    def sin_half(self, k: int):
        return iv.sin(iv.pi / k)


def _circle_center(f: Factor, consts):
    if f.center is not None:
        return consts.lift(f.center[0]), consts.lift(f.center[1])
    cos_t, sin_t = consts.turn_cos_sin(f.turn)
    d = consts.lift(f.d)
    return d * cos_t, d * sin_t


def _circle_r2(f: Factor, consts):
    if f.radius is not None:
        return consts.lift((f.radius * f.scale) ** 2)
    s = consts.sin_half(f.sectors)
    return consts.lift(f.d ** 2 * f.scale ** 2) * (s * s)


def _factor_value(f: Factor, xs, consts):
    if f.kind == "annulus_outer":
        return consts.lift((1 + f.a) ** 2) - xs[0] * xs[0] - xs[1] * xs[1]
    if f.kind == "annulus_inner":
        return xs[0] * xs[0] + xs[1] * xs[1] - consts.lift((1 - f.a) ** 2)
    if f.kind == "circle":
        bx, by = _circle_center(f, consts)
        dx = xs[0] - bx
        dy = xs[1] - by
        return dx * dx + dy * dy - _circle_r2(f, consts)
    if f.kind == "ellipse_outer":
        ax, ay = f.axes
        return (consts.lift(ax ** 2 * ay ** 2)
                - consts.lift(ay ** 2) * xs[0] * xs[0]
                - consts.lift(ax ** 2) * xs[1] * xs[1])
    if f.kind == "ellipsoid":
        bx, by = _circle_center(f, consts)
        dx = xs[0] - bx
        dy = xs[1] - by
        r2 = _circle_r2(f, consts)
        acc = None
        for i in f.transverse:
            sq = xs[i] * xs[i]
            acc = sq if acc is None else acc + sq
        out = dx * dx + dy * dy - r2
        if acc is not None:
            # unit planar scale keeps deep stages inside float range; the
            # transverse wall r^2/h^2 pins the extent to the height
            out = out + (r2 * consts.lift(1 / f.height ** 2)) * acc
        return out
    raise ValueError("unknown factor kind %r" % f.kind)


def _factor_gradient(f: Factor, xs, consts) -> dict:
    if f.kind == "annulus_outer":
        return {0: -(xs[0] + xs[0]), 1: -(xs[1] + xs[1])}
    if f.kind == "annulus_inner":
        return {0: xs[0] + xs[0], 1: xs[1] + xs[1]}
    if f.kind == "circle":
        bx, by = _circle_center(f, consts)
        dx = xs[0] - bx
        dy = xs[1] - by
        return {0: dx + dx, 1: dy + dy}
    if f.kind == "ellipse_outer":
        ax, ay = f.axes
        gx = consts.lift(2 * ay ** 2) * xs[0]
        gy = consts.lift(2 * ax ** 2) * xs[1]
        return {0: -gx, 1: -gy}
    if f.kind == "ellipsoid":
        bx, by = _circle_center(f, consts)
        r2 = _circle_r2(f, consts)
        wall = r2 * consts.lift(1 / f.height ** 2)
        grad = {0: (xs[0] - bx) + (xs[0] - bx),
                1: (xs[1] - by) + (xs[1] - by)}
        for i in f.transverse:
            grad[i] = wall * (xs[i] + xs[i])
        return grad
    raise ValueError("unknown factor kind %r" % f.kind)


def _evaluate(poly: FactoredPolynomial, xs, consts, want_gradient: bool):
    value = None
    grad: dict = {}
    for stage in poly.stages:
        for f in stage.factors:
            fval = _factor_value(f, xs, consts)
            if want_gradient:
                fgrad = _factor_gradient(f, xs, consts)
                if value is None:
                    grad = dict(fgrad)
                else:
                    merged = {}
                    for i in set(grad) | set(fgrad):
                        parts = []
                        if i in grad:
                            parts.append(grad[i] * fval)
                        if i in fgrad:
                            parts.append(value * fgrad[i])
                        merged[i] = parts[0] if len(parts) == 1 else parts[0] + parts[1]
                    grad = merged
            value = fval if value is None else value * fval
        for i in stage.deficit_vars:
            sq = xs[i] * xs[i]
            value = (-sq) if value is None else value - sq
            if want_gradient:
                step = xs[i] + xs[i]
                grad[i] = (grad[i] - step) if i in grad else -step
    if value is None:
        raise NoFactors("cannot evaluate an empty polynomial")
    return value, grad


def evaluate_floats(poly: FactoredPolynomial, points: np.ndarray) -> np.ndarray:
    """Plain float64 evaluation; points has shape (num_vars, n)."""
    xs = [np.asarray(points[i], dtype=np.float64) for i in range(poly.num_vars)]
    value, _ = _evaluate(poly, xs, FloatConsts(), False)
    return value


def evaluate_boxes(poly: FactoredPolynomial, boxes: Sequence[BoxArray],
                   want_gradient: bool = False):
    """Certified float64-interval evaluation over per-variable box arrays."""
    value, grad = _evaluate(poly, list(boxes), BoxConsts(), want_gradient)
    if want_gradient:
        return value, [grad.get(i, BoxArray.exact(0.0)) for i in range(poly.num_vars)]
    return value


def eval_and_gradient(poly: FactoredPolynomial, point: Sequence,
                      precision_bits: int = DEFAULT_PRECISION_BITS):
    """Certified value and gradient enclosures at one point."""
    with interval_precision(precision_bits):
        xs = [to_interval(p if isinstance(p, (Fraction, int)) else Fraction(p))
              for p in point]
        if len(xs) != poly.num_vars:
            raise ValueError("point dimension %d, expected %d"
                             % (len(xs), poly.num_vars))
        value, grad = _evaluate(poly, xs, IvConsts(), True)
        zero = to_interval(Fraction(0))
        return value, [grad.get(i, zero) for i in range(poly.num_vars)]


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def region_polynomial(arr: CircleArrangement) -> FactoredPolynomial:
    """Planar region polynomial: boundary factors times one factor per
    removed disk.  Handle circles are placement markers, not factors."""
    factors: list[Factor] = []
    if arr.mode == "circle":
        factors.append(Factor(kind="annulus_outer", a=arr.halfwidth))
        factors.append(Factor(kind="annulus_inner", a=arr.halfwidth))
        for c in arr.removed_circles():
            factors.append(Factor(kind="circle", d=c.d,
                                  turn=arr.bisector_turn(c.sector),
                                  sectors=arr.k))
    else:
        factors.append(Factor(kind="ellipse_outer", axes=arr.ellipse_axes))
        for c in arr.removed_circles():
            factors.append(Factor(kind="circle", center=c.center,
                                  radius=c.radius))
    return FactoredPolynomial(2, (Stage(tuple(factors), ()),))


def us_construct(poly: FactoredPolynomial, kprime: int) -> FactoredPolynomial:
    """Subtract the squares of kprime fresh variables.  The zero set in the
    enlarged space doubles {P >= 0} along its boundary; total degree is
    unchanged whenever deg P >= 2."""
    if kprime < 1:
        raise ValueError("kprime must be positive")
    new = tuple(range(poly.num_vars, poly.num_vars + kprime))
    last = poly.stages[-1]
    stages = poly.stages[:-1] + (Stage(last.factors, last.deficit_vars + new),)
    return FactoredPolynomial(poly.num_vars + kprime, stages)


def remove_ellipsoids(poly: FactoredPolynomial,
                      sites: Sequence[Factor]) -> FactoredPolynomial:
    """Multiply in ellipsoid factors as a new stage; each factor is positive
    outside its ellipsoid, so the region loses the open ellipsoids and the
    degree grows by 2 per site."""
    if not sites:
        return poly
    for f in sites:
        if f.kind != "ellipsoid":
            raise ValueError("remove_ellipsoids expects ellipsoid factors")
    return FactoredPolynomial(poly.num_vars,
                              poly.stages + (Stage(tuple(sites), ()),))


def _disk_planar_box(disk: Factor) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Rational bounding box of the closed planar disk."""
    if disk.center is not None:
        r = disk.radius * disk.scale
        return (disk.center[0] - r, disk.center[0] + r,
                disk.center[1] - r, disk.center[1] + r)
    (c_lo, c_hi), (s_lo, s_hi) = _turn_bounds(disk.turn)
    r_hi = disk.d * sin_half_sector_bounds(disk.sectors)[1] * disk.scale
    bx_lo, bx_hi = disk.d * c_lo, disk.d * c_hi
    by_lo, by_hi = disk.d * s_lo, disk.d * s_hi
    return bx_lo - r_hi, bx_hi + r_hi, by_lo - r_hi, by_hi + r_hi


def _grid_boxes(lo: float, hi: float, cells: int) -> BoxArray:
    edges = np.linspace(lo, hi, cells + 1)
    return BoxArray(edges[:-1], edges[1:])


def _disk_lower_bound(poly: FactoredPolynomial, disk: Factor,
                      cells: int) -> float:
    """Certified lower bound of poly over (closed disk) x {other vars = 0}
    from a cells x cells interval cover of the disk's bounding box."""
    x_lo, x_hi, y_lo, y_hi = _disk_planar_box(disk)
    gx = _grid_boxes(float_bounds(x_lo)[0], float_bounds(x_hi)[1], cells)
    gy = _grid_boxes(float_bounds(y_lo)[0], float_bounds(y_hi)[1], cells)
    bx = BoxArray(np.repeat(gx.lo, cells), np.repeat(gx.hi, cells))
    by = BoxArray(np.tile(gy.lo, cells), np.tile(gy.hi, cells))

    # drop cells certifiably outside the closed disk
    consts = BoxConsts()
    cx, cy = _circle_center(disk, consts)
    r2 = _circle_r2(disk, consts)
    dist2 = (bx - cx).square() + (by - cy).square()
    keep = ~((dist2 - r2).lo > 0)
    if not np.any(keep):
        return np.inf
    boxes = [BoxArray(bx.lo[keep], bx.hi[keep]),
             BoxArray(by.lo[keep], by.hi[keep])]
    zero = BoxArray.exact(0.0)
    boxes.extend([zero] * (poly.num_vars - 2))
    value = evaluate_boxes(poly, boxes)
    return float(np.min(value.lo))


def ellipsoid_height(poly: FactoredPolynomial, disk: Factor) -> Fraction:
    """Transverse semi-axis h = sqrt(L)/2, where L is a certified lower
    bound of the polynomial over the closed disk (branch-and-bound interval
    refinement).  Raises HeightFailure when no positive bound is certified
    within the refinement budget."""
    bound = -np.inf
    for cells in (16, 32, 64):
        bound = _disk_lower_bound(poly, disk, cells)
        if bound > 0:
            break
    if not (bound > 0):
        raise HeightFailure("no positive lower bound over the disk")
    half_sqrt = Fraction(float(np.sqrt(np.nextafter(bound, 0.0)))) / 2
    h = dyadic_significant(half_sqrt, 24)
    if h <= 0:
        raise HeightFailure("certified height underflowed")
    return h


def _ellipsoid_box_cover(site: Factor, planar_cells: int,
                         transverse_cells: int) -> list[BoxArray]:
    x_lo, x_hi, y_lo, y_hi = _disk_planar_box(site)
    axes = [
        _grid_boxes(float_bounds(x_lo)[0], float_bounds(x_hi)[1], planar_cells),
        _grid_boxes(float_bounds(y_lo)[0], float_bounds(y_hi)[1], planar_cells),
    ]
    h = float(site.height)  # heights are short dyadics, exact in float64
    t_axes = [_grid_boxes(-h, h, transverse_cells) for _ in site.transverse]
    grids = axes + t_axes
    los = np.meshgrid(*[g.lo for g in grids], indexing="ij")
    his = np.meshgrid(*[g.hi for g in grids], indexing="ij")
    return [BoxArray(lo.ravel(), hi.ravel()) for lo, hi in zip(los, his)]


def certify_ellipsoid_inside(poly: FactoredPolynomial, site: Factor,
                             planar_cells: int = 10,
                             transverse_cells: int = 3) -> bool:
    """Certified check that the closed ellipsoid lies in {poly > 0}: over a
    box cover of the ellipsoid's bounding box, every cell is either
    certifiably outside the ellipsoid or certifiably positive.  The cover
    is refined a few times before giving up, since deep stages need finer
    cells than early ones."""
    num_cover_vars = 2 + len(site.transverse)
    for cells in (planar_cells, planar_cells * 2, planar_cells * 4,
                  planar_cells * 8):
        cover = _ellipsoid_box_cover(site, cells, transverse_cells)
        boxes = list(cover) + [BoxArray.exact(0.0)] * (poly.num_vars
                                                       - num_cover_vars)
        g = _factor_value(site, boxes, BoxConsts())
        p = evaluate_boxes(poly, boxes)
        if bool(np.all((g.lo > 0) | (p.lo > 0))):
            return True
    return False


# ---------------------------------------------------------------------------
# synthesis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EllipsoidSite:
    circle_index: int
    stage: int
    sector: int
    channel: int
    factor: Factor

    def to_json(self) -> dict:
        return {"circle_index": self.circle_index, "stage": self.stage,
                "sector": self.sector, "channel": self.channel,
                "factor": self.factor.to_json()}

    @staticmethod
    def from_json(data: dict) -> "EllipsoidSite":
        return EllipsoidSite(int(data["circle_index"]), int(data["stage"]),
                             int(data["sector"]), int(data["channel"]),
                             Factor.from_json(data["factor"]))


def fiber_word(dimension: int, sequence: Sequence[int]) -> str:
    """Connected-sum word of a regular fiber: one S^j x S^(m-j-1) summand
    per stage-j handle; the empty word is the sphere S^(m-1)."""
    parts = []
    for stage, count in enumerate(sequence, start=1):
        parts.extend(["S^%d x S^%d" % (stage, dimension - stage - 1)] * count)
    if not parts:
        return "S^%d" % (dimension - 1)
    return " # ".join(parts)


@dataclass(frozen=True)
class SurfaceModel:
    spec: ValidatedSpec
    arrangement: CircleArrangement
    polynomial: FactoredPolynomial
    sites: tuple[EllipsoidSite, ...]

    @property
    def ambient_dimension(self) -> int:
        return self.polynomial.num_vars

    @property
    def degree(self) -> int:
        return degree(self.polynomial)

    def channel_fiber(self, sector: int, channel: int) -> str:
        seq = self.spec.handle_sequence(sector, channel)
        return fiber_word(self.spec.dimension, seq)

    def to_json(self) -> dict:
        return {
            "dimension": self.spec.dimension,
            "ambient_dimension": self.ambient_dimension,
            "degree": self.degree,
            "spec": validated_spec_to_json(self.spec),
            "arrangement": self.arrangement.to_json(),
            "polynomial": self.polynomial.to_json(),
            "sites": [s.to_json() for s in self.sites],
        }

    @staticmethod
    def from_json(data: dict) -> "SurfaceModel":
        spec = validated(graph_spec_from_json(data["spec"]))
        return SurfaceModel(
            spec=spec,
            arrangement=CircleArrangement.from_json(data["arrangement"]),
            polynomial=FactoredPolynomial.from_json(data["polynomial"]),
            sites=tuple(EllipsoidSite.from_json(s) for s in data["sites"]),
        )


def synthesize(spec: ValidatedSpec) -> SurfaceModel:
    """Full pipeline: placement, disjointness certificates, then the region
    polynomial pushed through the staged construction to a hypersurface in
    m+1 variables whose total degree obeys the closed-form count."""
    arr = build_arrangement(spec)
    certify_disjointness(arr)
    poly = region_polynomial(arr)
    m = spec.dimension

    if not spec.handles:
        poly = us_construct(poly, m - 1)
        sites: tuple[EllipsoidSite, ...] = ()
    else:
        poly = us_construct(poly, 1)
        collected: list[EllipsoidSite] = []
        for stage in range(1, spec.stages + 1):
            # the transverse wall of an existing ellipsoid factor grows like
            # r^2/h^2, so a new site must sit well under the thinnest height
            # already in the product or that wall swamps its enclosures
            cap = min((s.factor.height for s in collected),
                      default=None)
            stage_factors: list[Factor] = []
            for idx, circle in enumerate(arr.circles):
                role = circle.role
                if role.kind != "handle" or role.stage != stage:
                    continue
                disk = Factor(kind="circle", d=circle.d,
                              turn=arr.bisector_turn(circle.sector),
                              sectors=arr.k, scale=Fraction(1, 2))
                h = ellipsoid_height(poly, disk)
                if cap is not None and h > cap / 16:
                    h = cap / 16
                site = None
                for _ in range(12):
                    candidate = Factor(
                        kind="ellipsoid", d=circle.d,
                        turn=arr.bisector_turn(circle.sector),
                        sectors=arr.k, scale=Fraction(1, 2), height=h,
                        transverse=tuple(range(2, poly.num_vars)))
                    if certify_ellipsoid_inside(poly, candidate):
                        site = candidate
                        break
                    h = h / 2
                if site is None:
                    raise HeightFailure(
                        "ellipsoid at sector %d stage %d resisted certification"
                        % (circle.sector, stage))
                stage_factors.append(site)
                collected.append(EllipsoidSite(idx, stage, circle.sector,
                                               role.channel, site))
            poly = remove_ellipsoids(poly, stage_factors)
            kprime = 1 if stage < spec.stages else m - poly.num_vars + 1
            poly = us_construct(poly, kprime)
        sites = tuple(collected)

    if poly.num_vars != m + 1:
        raise AssertionError("staging bug: ambient %d, expected %d"
                             % (poly.num_vars, m + 1))
    return SurfaceModel(spec=spec, arrangement=arr, polynomial=poly,
                        sites=sites)


# ---------------------------------------------------------------------------
# expansion
# ---------------------------------------------------------------------------

def _factor_is_rational(f: Factor) -> bool:
    if f.kind in ("annulus_outer", "annulus_inner", "ellipse_outer"):
        return True
    return f.center is not None


def _mono(n: int, **powers: int) -> tuple[int, ...]:
    e = [0] * n
    for key, p in powers.items():
        e[int(key[1:])] = p
    return tuple(e)


def _factor_terms(f: Factor, n: int, lift) -> dict:
    """Monomial dict of one factor; `lift` maps exact rationals into the
    coefficient domain, irrational constants become enclosures (or mids)."""
    x2 = _mono(n, v0=2)
    y2 = _mono(n, v1=2)
    x1 = _mono(n, v0=1)
    y1 = _mono(n, v1=1)
    one = _mono(n)
    if f.kind == "annulus_outer":
        return {x2: lift(-1), y2: lift(-1), one: lift((1 + f.a) ** 2)}
    if f.kind == "annulus_inner":
        return {x2: lift(1), y2: lift(1), one: lift(-((1 - f.a) ** 2))}
    if f.kind == "ellipse_outer":
        ax, ay = f.axes
        return {x2: lift(-(ay ** 2)), y2: lift(-(ax ** 2)),
                one: lift(ax ** 2 * ay ** 2)}
    if f.kind == "circle":
        if f.center is not None:
            cx, cy = f.center
            r = f.radius * f.scale
            return {x2: lift(1), y2: lift(1), x1: lift(-2 * cx),
                    y1: lift(-2 * cy),
                    one: lift(cx ** 2 + cy ** 2 - r ** 2)}
        cos_t, sin_t = _expand_turn(f.turn)
        s2 = _expand_sin2(f.sectors)
        d = lift(f.d)
        # center coordinates d*cos, d*sin; constant term d^2 - r^2 uses
        # cos^2 + sin^2 = 1 exactly
        return {x2: lift(1), y2: lift(1),
                x1: lift(-2) * d * cos_t, y1: lift(-2) * d * sin_t,
                one: lift(f.d ** 2) * (lift(1) - lift(f.scale ** 2) * s2)}
    if f.kind == "ellipsoid":
        inv_h2 = 1 / f.height ** 2
        terms = {}
        if f.center is not None:
            r2c = lift((f.radius * f.scale) ** 2)
            cx, cy = lift(f.center[0]), lift(f.center[1])
            const = cx * cx + cy * cy - r2c
            bx, by = cx, cy
        else:
            cos_t, sin_t = _expand_turn(f.turn)
            s2 = _expand_sin2(f.sectors)
            r2c = lift(f.d ** 2 * f.scale ** 2) * s2
            bx = lift(f.d) * cos_t
            by = lift(f.d) * sin_t
            const = lift(f.d ** 2) * (lift(1) - lift(f.scale ** 2) * s2)
        terms[x2] = lift(1)
        terms[y2] = lift(1)
        terms[x1] = lift(-2) * bx
        terms[y1] = lift(-2) * by
        terms[one] = const
        for i in f.transverse:
            terms[_mono(n, **{"v%d" % i: 2})] = r2c * lift(inv_h2)
        return terms
    raise ValueError("unknown factor kind %r" % f.kind)


def _expand_turn(turn: Fraction):
    sin_t, cos_t = turn_sin_cos(turn)
    return cos_t, sin_t


def _expand_sin2(k: int):
    s = iv.sin(iv.pi / k)
    return s * s


def _poly_mul(acc: dict, other: dict) -> dict:
    out: dict = {}
    for e1, c1 in acc.items():
        for e2, c2 in other.items():
            key = tuple(a + b for a, b in zip(e1, e2))
            if key in out:
                out[key] = out[key] + c1 * c2
            else:
                out[key] = c1 * c2
            if len(out) > EXPANSION_GUARD:
                raise ExpansionTooLarge("monomial count exceeded %d"
                                        % EXPANSION_GUARD)
    return out


def expand_terms(poly: FactoredPolynomial,
                 precision_bits: Optional[int] = None) -> dict:
    """Monomial dictionary of the represented polynomial.  Coefficients are
    exact Fractions when every factor is rational, else mpmath interval
    enclosures at precision_bits."""
    rational = all(_factor_is_rational(f)
                   for s in poly.stages for f in s.factors)
    if poly.factor_count() == 0:
        raise NoFactors("cannot expand an empty polynomial")
    n = poly.num_vars

    def run(lift):
        acc = None
        for stage in poly.stages:
            for f in stage.factors:
                terms = _factor_terms(f, n, lift)
                acc = terms if acc is None else _poly_mul(acc, terms)
            for i in stage.deficit_vars:
                key = _mono(n, **{"v%d" % i: 2})
                acc[key] = acc.get(key, lift(0)) - lift(1)
        return acc

    if rational:
        return run(Fraction)
    bits = precision_bits or DEFAULT_PRECISION_BITS
    with interval_precision(bits):
        return run(to_interval)


def _grlex_key(exponents: tuple[int, ...]):
    return (sum(exponents), exponents)


def expand(poly: FactoredPolynomial,
           precision_bits: Optional[int] = None, digits: int = 17) -> dict:
    """JSON-ready sparse expansion in graded lexicographic order."""
    terms = expand_terms(poly, precision_bits)
    monomials = []
    for exponents in sorted(terms, key=_grlex_key):
        coeff = terms[exponents]
        if isinstance(coeff, Fraction):
            if coeff == 0:
                continue
            entry = {"exponents": list(exponents),
                     "coefficient": format_rational(coeff)}
        else:
            lo, hi = interval_inf(coeff), interval_sup(coeff)
            mid = (lo + hi) / 2
            entry = {"exponents": list(exponents),
                     "coefficient": decimal_string(mid, digits),
                     "radius": decimal_string((hi - lo) / 2, 3)}
        monomials.append(entry)
    return {"variables": poly.num_vars, "ordering": "grlex",
            "monomials": monomials}


def evaluate_terms(terms: dict, point: Sequence) -> object:
    """Evaluate a monomial dictionary; Fraction-exact when inputs are."""
    total = None
    for exponents, coeff in terms.items():
        term = coeff
        for i, e in enumerate(exponents):
            for _ in range(e):
                term = term * point[i]
        total = term if total is None else total + term
    return total


def render_text(poly: FactoredPolynomial,
                precision_bits: Optional[int] = None, digits: int = 12) -> str:
    """Plain-text P(x1,...,xn) with decimal coefficients for CAS import."""
    terms = expand_terms(poly, precision_bits)
    n = poly.num_vars
    pieces = []
    for exponents in sorted(terms, key=_grlex_key):
        coeff = terms[exponents]
        if isinstance(coeff, Fraction):
            if coeff == 0:
                continue
            cstr = decimal_string(coeff, digits) \
                if coeff.denominator != 1 else str(coeff.numerator)
        else:
            lo, hi = interval_inf(coeff), interval_sup(coeff)
            cstr = decimal_string((lo + hi) / 2, digits)
        mono = "*".join("x%d^%d" % (i + 1, e) if e > 1 else "x%d" % (i + 1)
                        for i, e in enumerate(exponents) if e)
        pieces.append(cstr if not mono else "%s*%s" % (cstr, mono))
    header = "P(%s) = " % ",".join("x%d" % (i + 1) for i in range(n))
    return header + " + ".join(pieces)


# ---------------------------------------------------------------------------
# extension artifact
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtensionArtifact:
    polynomial: FactoredPolynomial
    mode: str
    degree: int
    no_singular_points_claimed: bool = True

    def to_json(self) -> dict:
        retraction = ("radial retraction onto the unit circle"
                      if self.mode == "circle"
                      else "horizontal retraction onto the x-axis segment")
        return {
            "inequality": {
                "polynomial": self.polynomial.to_json(),
                "relation": ">= 0",
                "ambient_dimension": self.polynomial.num_vars,
                "degree": self.degree,
            },
            "map": {
                "composition": ["project to the first two coordinates",
                                retraction],
            },
            "boundary_is_model_zero_set": True,
            "no_singular_points_claimed": self.no_singular_points_claimed,
        }


def nonsingular_extension(model: SurfaceModel) -> ExtensionArtifact:
    """Describe the compact domain {P >= 0} whose boundary is the model
    hypersurface, together with the composed map to the target curve.  The
    absence of singular points of the restriction is recorded as a claim,
    not re-proven here."""
    return ExtensionArtifact(polynomial=model.polynomial,
                             mode=model.spec.mode,
                             degree=model.degree)
