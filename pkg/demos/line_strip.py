"""Path shaped graphs over a strip instead of a cycle over the annulus.

In line mode the sweep runs along the x axis, vertices sit at fixed
abscissae, and the two outermost vertices are the degree-1 ends of the
path. Removed circles are tangent to both walls of their strip, so a
circle contributes two tangency events just like in circle mode.
"""

from pathlib import Path

from reebforge.graphs import GraphSpec, path_isomorphic, validated
from reebforge.layout import build_arrangement, tangency_events
from reebforge.svgplot import arrangement_svg
from reebforge.sweep import sweep_reeb, verify_morse


def main():
    spec = validated(GraphSpec(mode="line", vertices=4,
                               multiplicities=(1, 2, 1), dimension=2))
    arr = build_arrangement(spec)
    print("vertex abscissae:", [str(x) for x in arr.abscissae])

    result = sweep_reeb(arr)
    print("vertex degrees:", [v.degree for v in result.vertices])
    print("path matches the spec:", path_isomorphic(spec, result))

    cert = verify_morse(arr)
    print("saddles:", cert.saddle_count,
          "tangency events:", len(cert.events))
    for e in tangency_events(arr):
        print("  circle %d tangent to wall x = %s"
              % (e.circle_index, e.foot_lo))

    out = Path(__file__).parent / "output"
    out.mkdir(exist_ok=True)
    (out / "strip.svg").write_text(arrangement_svg(arr, result))
    print("wrote", out / "strip.svg")


if __name__ == "__main__":
    main()
