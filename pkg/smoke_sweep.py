import time
from fractions import Fraction

from reebforge.graphs import GraphSpec, reeb_isomorphic, validated
from reebforge.layout import build_arrangement
from reebforge.sweep import (
    ReebGraphResult, euler_check, fiber_counts_check, sweep_reeb, verify_morse,
)

def vspec(mode, verts, mults, dim=2, handles=()):
    return validated(GraphSpec(mode=mode, vertices=verts, multiplicities=mults,
                               dimension=dim, handles=handles))

# 1. (2,2,2) k=3
s = vspec("circle", 3, (2, 2, 2))
arr = build_arrangement(s)
g = sweep_reeb(arr)
print("case 222:")
print("  turns:", [str(v.angle.turns) for v in g.vertices])
print("  degrees:", [v.degree for v in g.vertices])
print("  channels:", [(v.left_channels, v.right_channels) for v in g.vertices])
print("  mults:", g.cyclic_multiplicities())
print("  iso:", reeb_isomorphic(s, g))
print("  edges:", [(e.channel, e.source, e.target, e.fiber) for e in g.edges])
cert = verify_morse(arr)
print("  cert:", cert.to_json())
print("  euler:", euler_check(arr).to_json())
print("  fibers:", len(fiber_counts_check(arr, s).rows), "rows")

# 2. (2,2,1)
s = vspec("circle", 3, (2, 2, 1))
arr = build_arrangement(s)
g = sweep_reeb(arr)
print("case 221: degrees", [v.degree for v in g.vertices],
      "mults", g.cyclic_multiplicities(), "iso", reeb_isomorphic(s, g))
print("  euler:", euler_check(arr).to_json())

# 3. k=0 torus
s = vspec("circle", 0, ())
arr = build_arrangement(s)
g = sweep_reeb(arr)
print("case k0: no_vertex_circle", g.no_vertex_circle, "iso", reeb_isomorphic(s, g))
print("  cert:", verify_morse(arr).to_json())
print("  euler:", euler_check(arr).to_json())

# 4. m=5 rescued (1,1) pair
s = vspec("circle", 3, (1, 1, 2), dim=5,
          handles=(((1, 1), (1, 0)), ((2, 1), (0, 1))))
arr = build_arrangement(s)
g = sweep_reeb(arr, dimension=5)
print("case m5 rescue:")
print("  turns:", [str(v.angle.turns) for v in g.vertices])
print("  degrees:", [v.degree for v in g.vertices])
print("  mults:", g.cyclic_multiplicities(), "iso", reeb_isomorphic(s, g))
for e in g.edges:
    print("  edge", e.channel, e.fiber)
print("  fibers:", [r.to_json() for r in fiber_counts_check(arr, s).rows])
cert = verify_morse(arr)
print("  cert:", cert.to_json())

# 5. JSON round trip
blob = g.to_json()
back = ReebGraphResult.from_json(blob)
print("roundtrip:", back.to_json() == blob,
      "degrees", [v.degree for v in back.vertices])

# 6. line mode (1,2,3,1)
s = vspec("line", 5, (1, 2, 3, 1))
arr = build_arrangement(s)
g = sweep_reeb(arr)
print("case line 1231:")
print("  abscissae:", [str(v.abscissa) for v in g.vertices])
print("  degrees:", [v.degree for v in g.vertices])
print("  edges:", [(e.channel, e.source, e.target) for e in g.edges])
print("  cert:", verify_morse(arr).to_json())
print("  euler:", euler_check(arr).to_json())
blob = g.to_json()
back = ReebGraphResult.from_json(blob)
print("  roundtrip:", back.to_json() == blob, "mode", back.mode)

# 7. timing over random specs
import random
rng = random.Random(7)
t0 = time.time()
count = 0
for trial in range(60):
    k = rng.randint(3, 8)
    while True:
        mults = tuple(rng.randint(1, 4) for _ in range(k))
        pairs = [(mults[i], mults[(i + 1) % k]) for i in range(k)]
        if all(p != (1, 1) for p in pairs):
            break
    s = vspec("circle", k, mults)
    arr = build_arrangement(s)
    g = sweep_reeb(arr)
    assert reeb_isomorphic(s, g), (k, mults, g.cyclic_multiplicities())
    verify_morse(arr)
    euler_check(arr)
    fiber_counts_check(arr, s)
    count += 1
print("random sweeps:", count, "ok in %.2fs" % (time.time() - t0))
