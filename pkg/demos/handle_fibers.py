"""Higher dimensional surfaces with prescribed fibers.

A handle sequence on an edge channel asks for extra product summands in
the fiber over that channel. The staged construction nests ellipsoids
around helper circles, one stage per sequence slot, and each stage adds
its own term to the degree count. The sweep reads the counts back off
the arrangement and names the resulting fibers as connected sums.
"""

from reebforge.graphs import GraphSpec, validated
from reebforge.layout import build_arrangement
from reebforge.poly import synthesize
from reebforge.sweep import fiber_counts_check, sweep_reeb


def main():
    spec = validated(GraphSpec(
        mode="circle", vertices=3, multiplicities=(2, 2, 2), dimension=5,
        handles=(((1, 1), (1, 1)),)))
    model = synthesize(spec)

    handle_total = sum(sum(seq) for _, seq in spec.handles)
    fold_total = sum(a - 1 for a in spec.multiplicities)
    print("degree:", model.degree,
          "(expected 2*%d + 2*%d + 4 = %d)"
          % (handle_total, fold_total, 2 * handle_total + 2 * fold_total + 4))
    print("ambient dimension:", model.ambient_dimension)
    print("ellipsoid sites:", [(s.sector, s.stage) for s in model.sites])

    arr = build_arrangement(spec)
    result = sweep_reeb(arr, dimension=spec.dimension)
    print("edge fibers:")
    for edge in result.edges:
        print("  channel", edge.channel, "->", edge.fiber)

    table = fiber_counts_check(arr, spec)
    for row in table.rows:
        print("sector %d channel %d: counts %s, fiber %s"
              % (row.sector, row.channel, row.counts, row.word))


if __name__ == "__main__":
    main()
