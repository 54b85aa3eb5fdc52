import pytest

from halphen.qfield import QQ, QuadField
from halphen.poly import HomPoly, ProjPoint
from halphen.curve import CurveDivisor
from halphen.resolution import PencilSpec, resolve_base_points
from halphen.fiber import (
    DualGraph, Edge, Loop, NoMatch, PicClass, black_adjacency_check,
    build_fiber, canonical_class, check_component_count, classify_kodaira,
    dual_graph, fiber_lattice_checks, multiple_fiber,
)


def D(*comps, field=QQ):
    return CurveDivisor([(HomPoly.parse(t, field), m) for t, m in comps])


def analyze(B, C, m=2):
    forest = resolve_base_points(PencilSpec(B, C, m))
    fib = build_fiber(forest)
    g = dual_graph(fib, forest)
    return forest, fib, g


def test_pic_pairing_signature():
    K = canonical_class()
    assert K.pair(K) == 0
    line = PicClass(1, (1, 0, 0, 0, 0, 0, 0, 0, 0))
    assert line.pair(line) == 0
    e = PicClass(0, (-1, 1, 0, 0, 0, 0, 0, 0, 0))
    assert e.pair(e) == -2
    last = PicClass(0, (0, 0, 0, 0, 0, 0, 0, 0, -1))
    assert last.pair(last) == -1


def test_two_triple_lines_gives_iistar():
    B = D(("z", 3), ("x", 3))
    C = D(("y^2*z - x*(x-z)*(x-2*z)", 1))
    forest, fib, g = analyze(B, C)
    assert fib.n_components == 9
    assert fib.M_F == 6
    kt = classify_kodaira(g)
    assert kt.label == "II*"
    assert black_adjacency_check(g)
    for name, ok, detail in fiber_lattice_checks(fib, forest):
        assert ok, (name, detail)
    mf = multiple_fiber(forest)
    assert mf.kodaira.label == "I0"
    assert mf.n_absorbed == 0
    assert check_component_count(fib, forest, mf)


def test_triple_line_cubic_gives_iistar():
    B = D(("y^2*z - x^2*(x+z)", 1), ("z", 3))
    C = D(("z^2*x + y^2*z - x^3 - x^2*z", 1))
    forest, fib, g = analyze(B, C)
    kt = classify_kodaira(g)
    assert kt.label == "II*"
    mf = multiple_fiber(forest)
    assert mf.kodaira.label == "I0"
    assert check_component_count(fib, forest, mf)


def test_triple_conic_gives_ivstar_with_i3_multiple_fiber():
    B = D(("x^2 + y*z", 3))
    C = D(("y", 1), ("z", 1), ("2*x + y - z", 1))
    forest, fib, g = analyze(B, C)
    assert fib.n_components == 7
    assert fib.M_F == 3
    kt = classify_kodaira(g)
    assert kt.label == "IV*"
    mf = multiple_fiber(forest)
    assert mf.kodaira.label == "I3"
    assert mf.n_absorbed == 0
    assert check_component_count(fib, forest, mf)
    assert black_adjacency_check(g)


def test_dual_graph_dot_deterministic():
    B = D(("x^2 + y*z", 3))
    C = D(("y", 1), ("z", 1), ("2*x + y - z", 1))
    _, _, g1 = analyze(B, C)
    _, _, g2 = analyze(B, C)
    assert g1.to_dot() == g2.to_dot()
    assert "color=blue" in g1.to_dot() and "color=black" in g1.to_dot()


def test_classify_cycle_graphs():
    g = DualGraph([1] * 9, ["blue"] * 9, [f"c{i}" for i in range(9)],
                  [Edge(i, (i + 1) % 9, 1) for i in range(9)], [])
    assert classify_kodaira(g).label == "I9"
    g1 = DualGraph([1], ["blue"], ["s"], [], [Loop(0, "node")])
    assert classify_kodaira(g1).label == "I1"
    g2 = DualGraph([1], ["blue"], ["s"], [], [Loop(0, "cusp")])
    assert classify_kodaira(g2).label == "II"
    g0 = DualGraph([1], ["blue"], ["s"], [], [])
    assert classify_kodaira(g0).label == "I0"


def test_classify_templates():
    from halphen.fiber import _template_dstar, _template_e6, _template_e7, _template_e8
    for label, (tm, te) in [("I0*", _template_dstar(0)), ("I2*", _template_dstar(2)),
                            ("IV*", _template_e6()), ("III*", _template_e7()),
                            ("II*", _template_e8())]:
        g = DualGraph(tm, ["black"] * len(tm), [f"v{i}" for i in range(len(tm))],
                      [Edge(a, b, 1) for a, b in te], [])
        assert classify_kodaira(g).label == label


def test_classify_rejects_garbage():
    # 4 components of multiplicity 1 in a path: not a fiber shape
    g = DualGraph([1] * 4, ["blue"] * 4, list("abcd"),
                  [Edge(0, 1, 1), Edge(1, 2, 1), Edge(2, 3, 1)], [])
    with pytest.raises(NoMatch):
        classify_kodaira(g)
