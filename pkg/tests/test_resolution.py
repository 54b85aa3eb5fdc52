import pytest
from fractions import Fraction

from halphen.qfield import QF, QuadField, QQ
from halphen.poly import HomPoly, ProjPoint
from halphen.curve import CurveDivisor, UnsupportedField
from halphen.resolution import (
    FixedComponent, NotHalphen, PencilSpec, local_log_resolution,
    resolve_base_points, verify_halphen,
)


def P(x, y, z, field=QQ):
    return ProjPoint(x, y, z, field)


def D(*comps, field=QQ):
    return CurveDivisor([(HomPoly.parse(t, field), m) for t, m in comps])


def test_two_triple_lines_iistar_char_sequence():
    # B = 3L1 + 3L2 with L1: z=0 (inflection line), L2: x=0 tangent line
    B = D(("z", 3), ("x", 3))
    C = D(("y^2*z - x*(x-z)*(x-2*z)", 1))
    spec = PencilSpec(B, C, 2)
    forest = resolve_base_points(spec)
    assert sorted(forest.characteristic_sequence, reverse=True) == [6, 3]
    checks = verify_halphen(forest)
    assert all(c.ok for c in checks), [c for c in checks if not c.ok]


def test_triple_line_plus_cubic_iistar_char_sequence():
    # B = D + 3L with D the nodal cubic, L: z=0; C: z^2 x + y^2 z - x^3 - x^2 z
    B = D(("y^2*z - x^2*(x+z)", 1), ("z", 3))
    C = D(("z^2*x + y^2*z - x^3 - x^2*z", 1))
    forest = resolve_base_points(PencilSpec(B, C, 2))
    assert sorted(forest.characteristic_sequence, reverse=True) == [8, 1]
    assert all(c.ok for c in verify_halphen(forest))


def test_triple_conic_ivstar():
    # B = 3Q, C = three tangent lines of Q
    B = D(("x^2 + y*z", 3))
    C = D(("y", 1), ("z", 1), ("2*x + y - z", 1))
    forest = resolve_base_points(PencilSpec(B, C, 2))
    assert sorted(forest.characteristic_sequence) == [3, 3, 3]
    assert all(c.ok for c in verify_halphen(forest))
    # chains of length 2: multiplicities E^(1)=1, E^(2)=2 per the dual graph
    for cl in forest.clusters:
        assert [p.d_B for p in cl.points] == [1, 2, 0]


def test_d_sequence_two_triple_lines():
    B = D(("z", 3), ("x", 3))
    C = D(("y^2*z - x*(x-z)*(x-2*z)", 1))
    forest = resolve_base_points(PencilSpec(B, C, 2))
    by_len = {cl.length: cl for cl in forest.clusters}
    # the II* dual graph: 4E^(1), 5E^(2), 6E^(3), 4E^(4), 2E^(5) on the long
    # cluster and E^(1), 2E^(2) on the short one
    assert [p.d_B for p in by_len[6].points] == [4, 5, 6, 4, 2, 0]
    assert [p.d_B for p in by_len[3].points] == [1, 2, 0]


def test_missing_base_point_not_halphen():
    # a generic cubic against a sextic with too-low multiplicity
    B = D(("x^5*y + y^5*z + z^5*x", 1))
    C = D(("x^3 + y^3 + z^3 - 3*x*y*z + x*y*z", 1))
    with pytest.raises((NotHalphen, Exception)):
        resolve_base_points(PencilSpec(B, C, 2))


def test_shared_component_rejected():
    B = D(("x", 3), ("y", 3))
    C = D(("x", 1), ("y^2 - x*z", 1))
    with pytest.raises(FixedComponent):
        resolve_base_points(PencilSpec(B, C, 2))


def test_unsupported_field_base_points():
    # B = 3Q with tangent-line cubic arranged so base points are irrational
    B = D(("x^2 - 2*z^2", 3))
    C = D(("y", 1), ("y - z", 1), ("y + z", 1))
    with pytest.raises(UnsupportedField):
        resolve_base_points(PencilSpec(B, C, 2))


def test_local_log_resolution_node():
    Dv = D(("y^2*z - x^2*(x+z)", 1))
    data = local_log_resolution(Dv, P(0, 0, 1))
    assert [(e.b, e.c) for e in data.exceptionals] == [(1, 2)]


def test_local_log_resolution_cusp():
    Dv = D(("y^2*z - x^3", 1))
    data = local_log_resolution(Dv, P(0, 0, 1))
    assert [(e.b, e.c) for e in data.exceptionals] == [(1, 2), (2, 3), (4, 6)]


def test_local_log_resolution_ordinary_triple():
    Dv = D(("x", 1), ("y", 1), ("x + y", 1))
    data = local_log_resolution(Dv, P(0, 0, 1))
    assert [(e.b, e.c) for e in data.exceptionals] == [(1, 3)]


def test_local_log_resolution_tacnode():
    # y^2 = x^4: two smooth branches tangent to order 2
    Dv = D(("y^2*z^2 - x^4", 1)) if False else None
    # use a divisor with two explicit tangent branches instead
    Dv = CurveDivisor([(HomPoly.parse("y*z - x^2"), 1),
                       (HomPoly.parse("y*z + x^2"), 1)])
    data = local_log_resolution(Dv, P(0, 0, 1))
    assert [(e.b, e.c) for e in data.exceptionals] == [(1, 2), (2, 4)]


def test_replay_determinism():
    B = D(("z", 3), ("x", 3))
    C = D(("y^2*z - x*(x-z)*(x-2*z)", 1))
    f1 = resolve_base_points(PencilSpec(B, C, 2))
    f2 = resolve_base_points(PencilSpec(B, C, 2))
    assert f1.characteristic_sequence == f2.characteristic_sequence
    assert [cl.base_point for cl in f1.clusters] == [cl.base_point for cl in f2.clusters]
    for c1, c2 in zip(f1.clusters, f2.clusters):
        assert [(p.m_B, p.d_B) for p in c1.points] == [(p.m_B, p.d_B) for p in c2.points]
