import time
from fractions import Fraction

from reebforge.graphs import GraphSpec, canonical_cyclic_form, reeb_isomorphic, validated
from reebforge.layout import build_arrangement
from reebforge.oracle import brute_oracle_reeb, smooth_degree_two
from reebforge.sweep import sweep_reeb

def vspec(mode, verts, mults, dim=2, handles=()):
    return validated(GraphSpec(mode=mode, vertices=verts, multiplicities=mults,
                               dimension=dim, handles=handles))

def compare(name, s, dim=2, rres=512, ares=256):
    arr = build_arrangement(s)
    t0 = time.time()
    got = brute_oracle_reeb(arr, rres, ares)
    dt = time.time() - t0
    want = smooth_degree_two(sweep_reeb(arr, dimension=dim))
    ok_mult = (canonical_cyclic_form(got.cyclic_multiplicities())
               == canonical_cyclic_form(want.cyclic_multiplicities()))
    ok_nvc = got.no_vertex_circle == want.no_vertex_circle
    ok_count = len(got.vertices) == len(want.vertices)
    degs = sorted(v.degree for v in got.vertices) == sorted(v.degree for v in want.vertices)
    print("%-28s mult=%s nvc=%s count=%s degs=%s  %.2fs" % (
        name, ok_mult, ok_nvc, ok_count, degs, dt))
    if not (ok_mult and ok_nvc and ok_count and degs):
        print("   oracle:", got.cyclic_multiplicities(),
              [str(v.position_label()) for v in got.vertices])
        print("   sweep :", want.cyclic_multiplicities(),
              [str(v.position_label()) for v in want.vertices])
    return ok_mult and ok_nvc and ok_count and degs

allok = True
allok &= compare("(2,2,2) k=3", vspec("circle", 3, (2, 2, 2)))
allok &= compare("(2,2,1) k=3", vspec("circle", 3, (2, 2, 1)))
allok &= compare("k=0 torus", vspec("circle", 0, ()))
allok &= compare("(3,1,2,1) k=4", vspec("circle", 4, (3, 1, 2, 1)))
allok &= compare("(2,3,4,2,3) k=5", vspec("circle", 5, (2, 3, 4, 2, 3)))
allok &= compare("(4,4,4) k=3", vspec("circle", 3, (4, 4, 4)))
allok &= compare("m5 rescue", vspec("circle", 3, (1, 1, 2), dim=5,
                                    handles=(((1, 1), (1, 0)), ((2, 1), (0, 1)))), dim=5)
allok &= compare("line (1,2,3,1)", vspec("line", 5, (1, 2, 3, 1)))
allok &= compare("line (1,2,1)", vspec("line", 4, (1, 2, 1)))
allok &= compare("deep (6,1,6) k=3", vspec("circle", 3, (6, 1, 6)), rres=2048, ares=512)
print("ALL OK" if allok else "FAILURES")
