"""Smoke test for the pyleafkernel extension module."""

import pyleafkernel as lk


def check_graph():
    g = lk.Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert (g.vertex_count, g.edge_count) == (4, 4)
    assert g.is_connected() and g.is_outerplanar()
    assert g.is_nonseparating_independent([0])
    assert not g.is_nonseparating_independent([0, 2])
    k4 = lk.Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert not k4.is_outerplanar()
    try:
        lk.Graph(2, [(0, 0)])
    except ValueError:
        pass
    else:
        raise AssertionError("loop accepted")


def check_oracles():
    g = lk.Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    size, nsis = lk.max_nsis(g)
    cover, cvc = lk.min_cvc(g)
    assert size + cover == g.vertex_count == 4
    leaves, edges = lk.max_leaf(g)
    assert leaves == 2 and len(edges) == 3


def check_kernels():
    for pipeline in ("nsis-9k", "nsis-12k", "maxleaf-5k"):
        problem = "maxleaf" if pipeline.startswith("maxleaf") else "nsis"
        inst = lk.generate("grid", 12, 0, problem)
        out = lk.kernelize(inst, pipeline)
        assert out.answer in ("yes", "no", "reduced")
        if out.answer == "yes":
            assert lk.verify(inst, out)
        if out.answer == "reduced":
            reduced = out.instance
            assert reduced.graph.vertex_count < out.bound * reduced.parameter
        again = lk.Outcome.from_text(out.to_text())
        assert again.to_text() == out.to_text()
        print(f"{pipeline}: {inst!r} -> {out!r}")


def check_io():
    inst = lk.generate("planar-random", 30, 7)
    assert lk.Instance.from_text(inst.to_text()) == inst
    assert set(lk.families()) >= {"grid", "hub3", "hub4", "triangles"}


def check_bigis():
    tri = lk.generate("triangles", 4).graph
    independent, cycles = lk.independent_set_with_cycles(tri)
    n = tri.vertex_count
    assert 9 * len(independent) >= 4 * n - 3 * len(cycles)
    tree = lk.spanning_tree(lk.generate("grid", 5).graph, "generic")
    assert len(tree) == 24


if __name__ == "__main__":
    check_graph()
    check_oracles()
    check_kernels()
    check_io()
    check_bigis()
    print("smoke test passed")
