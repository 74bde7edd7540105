"""Smoke test for the ltop Python module: build a small graph, run the main
analyses and check a few known values."""

import ltop


def main():
    g = ltop.Graph([
        ("ab", "a", "b", 1.0),
        ("bc", "b", "c", 1.0),
        ("cd", "c", "d", 1.0),
        ("da", "d", "a", 1.0),
        ("ac", "a", "c", 0.5),
        ("ac2", "a", "c", 3.0),
    ])
    assert len(g) == 4 and len(g.edges) == 6

    value, witness = g.dist("a", ("bc", 0.25))
    assert value == 1.25 and witness == ["ab", "bc"], (value, witness)

    assert len(g.cycle_basis()) == 6 - 4 + 1
    family = g.geodetic(["ab", "bc", "cd", "da"])
    assert sorted(map(sorted, family)) == [["ab", "ac", "bc"], ["ac", "cd", "da"]], family

    start, tour = g.euler_tour()
    assert sorted(tour) == sorted(e[0] for e in g.edges)
    cycle, length, valid = g.hamilton_from_euler()
    assert valid and abs(length - g.total_length()) < 1e-12 and len(cycle) == 6

    assert ltop.Graph.from_json(g.to_json()).edges == g.edges
    assert len(g.line_graph().vertices) == 6
    assert dict(g.nst_lengths("a"))["ab"] > 0

    names = [c["name"] for c in ltop.catalog()]
    assert "hyperbolic-strip" in names

    strip = ltop.Generator("hyperbolic-strip", floyd="pow2", floyd_depth=10)
    profile = strip.boundary([4, 6], 10, [2.0 ** -k for k in range(1, 6)])
    counts = [c["cluster_count"] for c in profile["levels"][1]["clusterings"]]
    assert counts == [3, 5, 9, 17, 33], counts

    fan = ltop.Generator("fan?leg=0.5&ray=0.5")
    assert fan.quotient(3, 0.2)

    rows = ltop.lind_distances(["p", "q", "r"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]], 8)
    assert all(abs(deep - dx) < 2 ** -8 for _, _, dx, deep in rows), rows

    print("smoke test passed: ltop", ltop.__version__)


if __name__ == "__main__":
    main()
