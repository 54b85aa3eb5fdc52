from fractions import Fraction
from math import gcd

import pytest

from halphen.qfield import QQ
from halphen.poly import HomPoly, ProjPoint
from halphen.curve import CurveDivisor
from halphen.resolution import PencilSpec, resolve_base_points
from halphen.lct import (
    FIBER_LCT, lct_at_point, lct_fiber, lct_global, lct_multiple_cubic,
    LctReport, verify_bounds,
)


def D(*comps, field=QQ):
    return CurveDivisor([(HomPoly.parse(t, field), m) for t, m in comps])


def P(x, y, z):
    return ProjPoint(x, y, z, QQ)


def test_lct_node_is_one():
    assert lct_at_point(D(("y^2*z - x^2*(x+z)", 1)), P(0, 0, 1)) == 1


def test_lct_cusp():
    assert lct_at_point(D(("y^2*z - x^3", 1)), P(0, 0, 1)) == Fraction(5, 6)


def test_lct_ordinary_m_fold():
    # m concurrent lines: lct = 2/m
    lines = ["x", "y", "x+y", "x-y", "x+2*y", "x-2*y"]
    for m in range(2, 7):
        Dm = D(*[(l, 1) for l in lines[:m]])
        assert lct_at_point(Dm, P(0, 0, 1)) == Fraction(2, m), m


def test_lct_quases_homogeneous_germs():
    # germ x^p = y^q: lct = 1/p + 1/q (capped at 1), recomputed by resolution
    for p in range(1, 7):
        for q in range(p, 7):
            if gcd(p, q) != 1:
                continue
            f = f"x^{p}*z^{q-p} - y^{q}" if q > p else f"x^{p} - y^{q}"
            Dg = D((f, 1))
            want = min(Fraction(1), Fraction(1, p) + Fraction(1, q))
            assert lct_at_point(Dg, P(0, 0, 1)) == want, (p, q)


def test_lct_scaling_on_multiplicities():
    base = D(("y^2*z - x^2*(x+z)", 1))
    doubled = D(("y^2*z - x^2*(x+z)", 2))
    g1 = lct_global(base)
    g2 = lct_global(doubled)
    assert g2.value == g1.value / 2
    assert not g1.conditional


def test_lct_global_smooth_sextic():
    # smooth sextic: lct = 1
    g = lct_global(D(("x^6 + y^6 + z^6", 1)))
    assert g.value == 1


def test_lct_global_line_with_multiplicity_five():
    # B = 5L2 + L1: global threshold 1/5 (the II* row)
    g = lct_global(D(("x", 5), ("z", 1)))
    assert g.value == Fraction(1, 5)


def test_lct_global_two_triple_lines_with_forest():
    B = D(("z", 3), ("x", 3))
    C = D(("y^2*z - x*(x-z)*(x-2*z)", 1))
    forest = resolve_base_points(PencilSpec(B, C, 2))
    g = lct_global(B, forest)
    assert g.value == Fraction(1, 3)


def test_lct_fiber_table():
    assert lct_fiber("I0") == 1
    assert lct_fiber("I5") == 1
    assert lct_fiber("II") == Fraction(5, 6)
    assert lct_fiber("III") == Fraction(3, 4)
    assert lct_fiber("IV") == Fraction(2, 3)
    assert lct_fiber("I0*") == Fraction(1, 2)
    assert lct_fiber("I4*") == Fraction(1, 2)
    assert lct_fiber("IV*") == Fraction(1, 3)
    assert lct_fiber("III*") == Fraction(1, 4)
    assert lct_fiber("II*") == Fraction(1, 6)


def test_fiber_lct_regenerated_from_local_models():
    # the non-SNC fiber germs as plane models: cusp (II), tacnode (III),
    # ordinary triple point (IV)
    cusp = D(("y^2*z - x^3", 1))
    assert lct_at_point(cusp, P(0, 0, 1)) == FIBER_LCT["II"]
    tacnode = CurveDivisor([(HomPoly.parse("y*z - x^2"), 1),
                            (HomPoly.parse("y*z + x^2"), 1)])
    assert lct_at_point(tacnode, P(0, 0, 1)) == FIBER_LCT["III"]
    triple = D(("x", 1), ("y", 1), ("x+y", 1))
    assert lct_at_point(triple, P(0, 0, 1)) == FIBER_LCT["IV"]
    # SNC types: 1/M_F, and the crossing terms 2/(m_i+m_j) never undercut it
    for label, mults, adjacent in [
        ("I2*", [2, 2, 2, 1, 1, 1, 1], [(2, 2), (2, 1)]),
        ("IV*", [3, 2, 2, 2, 1, 1, 1], [(3, 2), (2, 1)]),
        ("III*", [4, 3, 3, 2, 2, 2, 1, 1], [(4, 3), (4, 2), (3, 2), (2, 1)]),
        ("II*", [6, 5, 4, 4, 3, 3, 2, 2, 1], [(6, 5), (6, 4), (6, 3), (5, 4),
                                              (4, 3), (3, 2), (2, 1)]),
    ]:
        snc_val = min([Fraction(1, max(mults))] +
                      [Fraction(2, a + b) for a, b in adjacent])
        assert snc_val == lct_fiber(label), label


def test_lct_multiple_cubic():
    # smooth cubic, nodal cubic, conic+line, three general lines: all 1/2
    for comps in [
        [("y^2*z - x*(x-z)*(x-2*z)", 1)],
        [("y^2*z - x^2*(x+z)", 1)],
        [("x^2 + y*z", 1), ("x + y + z", 1)],
        [("x", 1), ("y", 1), ("x + y + z", 1)],
    ]:
        g = lct_multiple_cubic(D(*comps), 2)
        assert g.value == Fraction(1, 2), comps


def test_verify_bounds_chains():
    rep = LctReport(lct_B=Fraction(1, 3), lct_F=Fraction(1, 6),
                    inv_MB=Fraction(1, 3), M_B=3, M_F=6,
                    reduced_B=False, reduced_F=False, conditional=False)
    verdicts = verify_bounds(rep, 2, Fraction(1, 2))
    assert all(v.holds for v in verdicts)
    rep2 = LctReport(lct_B=Fraction(3, 4), lct_F=Fraction(3, 4),
                     inv_MB=Fraction(1), M_B=1, M_F=1,
                     reduced_B=True, reduced_F=True, conditional=False)
    verdicts2 = verify_bounds(rep2, 2)
    assert all(v.holds for v in verdicts2)
