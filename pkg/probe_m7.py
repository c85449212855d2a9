import time
from fractions import Fraction

from reebforge.graphs import GraphSpec, validated
from reebforge.layout import build_arrangement
from reebforge.poly import degree, synthesize
from reebforge.oracle import membership_check


def build(mults, handles, m):
    spec = validated(GraphSpec(mode="circle", vertices=len(mults),
                               multiplicities=tuple(mults), dimension=m,
                               handles=handles))
    t0 = time.perf_counter()
    poly = synthesize(spec)
    dt = time.perf_counter() - t0
    want = 2 * sum(sum(seq) for _, seq in handles)
    want += 2 * sum(a - 1 for a in mults) + 4
    got = poly.degree
    print(f"m={m} mults={mults} degree={got} want={want} "
          f"ok={got == want} {dt:.2f}s")
    rep = membership_check(poly, count=2000, seed=5)
    print(f"  membership mismatches={len(rep.mismatches)} "
          f"inside={rep.inside}")


build((4, 1, 3), (((3, 1), (2, 1, 2)), ((1, 1), (2, 1, 1))), 7)
build((2, 3, 2, 4, 3, 3),
      (((2, 1), (1, 2, 1)), ((4, 1), (2, 1, 1)), ((6, 1), (1, 1, 1))), 7)
