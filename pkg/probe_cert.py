import numpy as np
from fractions import Fraction

from reebforge.graphs import GraphSpec, validated
from reebforge.layout import build_arrangement
from reebforge import poly as P


spec = validated(GraphSpec(
    mode="circle", vertices=3, multiplicities=(4, 1, 3), dimension=7,
    handles=(((3, 1), (2, 1, 2)), ((1, 1), (2, 1, 1)))))
arr = build_arrangement(spec)
P.certify_disjointness(arr) if hasattr(P, "certify_disjointness") else None
poly = P.region_polynomial(arr)
m = spec.dimension
poly = P.us_construct(poly, 1)

for stage in range(1, spec.stages + 1):
    stage_factors = []
    for idx, circle in enumerate(arr.circles):
        role = circle.role
        if role.kind != "handle" or role.stage != stage:
            continue
        disk = P.Factor(kind="circle", d=circle.d,
                        turn=arr.bisector_turn(circle.sector),
                        sectors=arr.k, scale=Fraction(1, 2))
        h = P.ellipsoid_height(poly, disk)
        print(f"stage {stage} sector {circle.sector} h={float(h):.3e} "
              f"num_vars={poly.num_vars}")
        site = None
        for attempt in range(12):
            candidate = P.Factor(
                kind="ellipsoid", d=circle.d,
                turn=arr.bisector_turn(circle.sector),
                sectors=arr.k, scale=Fraction(1, 2), height=h,
                transverse=tuple(range(2, poly.num_vars)))
            ok = P.certify_ellipsoid_inside(poly, candidate)
            if ok:
                site = candidate
                print(f"  certified at attempt {attempt} h={float(h):.3e}")
                break
            h = h / 2
        if site is None:
            # diagnose at the finest ladder rung
            candidate = P.Factor(
                kind="ellipsoid", d=circle.d,
                turn=arr.bisector_turn(circle.sector),
                sectors=arr.k, scale=Fraction(1, 2), height=h,
                transverse=tuple(range(2, poly.num_vars)))
            cover = P._ellipsoid_box_cover(candidate, 80, 3)
            ncv = 2 + len(candidate.transverse)
            boxes = list(cover) + [P.BoxArray.exact(0.0)] * (poly.num_vars - ncv)
            g = P._factor_value(candidate, boxes, P.BoxConsts())
            p = P.evaluate_boxes(poly, boxes)
            bad = ~((g.lo > 0) | (p.lo > 0))
            print(f"  FAILED: h={float(h):.3e} cells={bad.size} bad={bad.sum()}")
            bi = np.argmax(bad)
            print(f"  sample bad cell: g=[{g.lo.flat[bi]:.3e},{g.hi.flat[bi]:.3e}]"
                  f" p=[{p.lo.flat[bi]:.3e},{p.hi.flat[bi]:.3e}]")
            # how wide are the transverse boxes vs h?
            print(f"  transverse count={len(candidate.transverse)}")
            raise SystemExit(1)
        stage_factors.append(site)
    poly = P.remove_ellipsoids(poly, stage_factors)
    kprime = 1 if stage < spec.stages else m - poly.num_vars + 1
    poly = P.us_construct(poly, kprime)
print("all stages certified, num_vars", poly.num_vars)
