import random
from fractions import Fraction

import pytest

from halphen.qfield import QF, QuadField, QQ, qf_sqrt
from halphen.poly import (
    AffinePoly, HomPoly, PolynomialError, ProjPoint, InvalidPoint,
    resultant, univariate_roots,
)

K2 = QuadField(2)
Km2 = QuadField(-2)


def rand_qf(rng, field, span=6):
    return QF(Fraction(rng.randint(-span, span), rng.randint(1, 4)),
              Fraction(rng.randint(-span, span), rng.randint(1, 4)), field)


def test_field_descriptor_validation():
    with pytest.raises(ValueError):
        QuadField(0)
    with pytest.raises(ValueError):
        QuadField(12)  # not square-free
    assert QuadField(-3).d == -3


def test_rational_field_folds_sqrt_part():
    x = QF(2, 3, QQ)
    assert x.a == 5 and x.b == 0


def test_field_axioms_randomized():
    rng = random.Random(7)
    for field in (QQ, K2, Km2):
        for _ in range(60):
            x, y, z = (rand_qf(rng, field) for _ in range(3))
            assert (x + y) + z == x + (y + z)
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            if x:
                assert x * x.inverse() == field.one
            assert x + field.zero == x
            assert x * field.one == x


def test_sqrt_in_field():
    assert qf_sqrt(QF(4, 0, QQ)) == QF(2, 0, QQ)
    assert qf_sqrt(QF(2, 0, QQ)) is None
    r = qf_sqrt(QF(2, 0, K2))
    assert r is not None and r * r == QF(2, 0, K2)
    assert qf_sqrt(QF(3, 0, K2)) is None


def test_parse_and_eval_trivial():
    p = HomPoly.parse("x^2 + y*z")
    assert p.eval(ProjPoint(0, 0, 1, QQ)) == QQ.zero
    q = HomPoly.parse("z")
    assert q.eval(ProjPoint(0, 1, 0, QQ)) == QQ.zero
    with pytest.raises(InvalidPoint):
        HomPoly.parse("x").eval((QQ.zero, QQ.zero, QQ.zero))


def test_eval_weierstrass_alpha_two():
    # alpha = 2 instance of the cubic y^2 z = x(x-z)(x-alpha z)
    c = HomPoly.parse("y^2*z - x*(x-z)*(x-2*z)")
    assert c.eval(ProjPoint(1, 0, 1, QQ)) == QQ.zero
    assert c.eval(ProjPoint(0, 1, 0, QQ)) == QQ.zero
    assert c.eval(ProjPoint(2, 0, 1, QQ)) == QQ.zero


def test_parse_sqrt_token_and_params():
    p = HomPoly.parse("y^2 - s*x*z", K2)
    v = p.eval(ProjPoint(QF(1, 0, K2), QF(0, 1, K2), QF(1, 0, K2)))
    # (sqrt2)^2 - sqrt2 = 2 - sqrt2
    assert v == QF(2, -1, K2)
    q = HomPoly.parse("y^2*z - x*(x-z)*(x-a*z)", QQ, params={"a": QF(2, 0, QQ)})
    assert q == HomPoly.parse("y^2*z - x*(x-z)*(x-2*z)")


def test_parse_implicit_multiplication():
    assert HomPoly.parse("3x^2y") == HomPoly.parse("3*x^2*y")
    assert AffinePoly.parse("(x-1)(x+1)") == AffinePoly.parse("x^2-1")


def test_parse_rejects_garbage():
    with pytest.raises(PolynomialError):
        HomPoly.parse("x + $")
    with pytest.raises(PolynomialError):
        HomPoly.parse("x^2 + y")  # inhomogeneous
    with pytest.raises(PolynomialError):
        HomPoly.parse("w^3")


def test_resultant_basic():
    x = AffinePoly.parse("x")
    y = AffinePoly.parse("y")
    r = resultant(x, y, 0)
    assert r == y
    r2 = resultant(AffinePoly.parse("y - x^2"), y, 1)
    assert r2 == AffinePoly.parse("x^2")
    f = AffinePoly.parse("x^2*y - x + 1")
    assert resultant(f, f, 0).is_zero


def test_resultant_multiplicative_randomized():
    rng = random.Random(3)
    for _ in range(12):
        def rp():
            return AffinePoly(
                {(rng.randint(0, 2), rng.randint(0, 2)): rand_qf(rng, QQ, 3)
                 for _ in range(4)}, QQ)
        f, g, h = rp(), rp(), rp()
        if f.is_zero or g.is_zero or h.is_zero:
            continue
        if f.degree_in(0) + g.degree_in(0) == 0 or h.degree_in(0) == 0:
            continue
        lhs = resultant(f * g, h, 0)
        rhs = resultant(f, h, 0) * resultant(g, h, 0)
        assert lhs == rhs


def test_univariate_roots_with_multiplicity():
    f = AffinePoly.parse("x^2*(x-1)")
    roots, rem = univariate_roots(f)
    assert [(r.a, m) for r, m in roots] == [(0, 2), (1, 1)]
    assert rem.total_degree == 0


def test_univariate_roots_quadratic_extension():
    f = AffinePoly.parse("x^2 - 2", K2)
    roots, rem = univariate_roots(f)
    assert sorted((r.a, r.b) for r, m in roots) == [(0, -1), (0, 1)]
    assert rem.total_degree == 0
    # over plain Q the same polynomial does not split
    g = AffinePoly.parse("x^2 - 2", QQ)
    roots, rem = univariate_roots(g)
    assert roots == []
    assert rem.degree_in(0) == 2


def test_roots_reassembly_randomized():
    rng = random.Random(11)
    for field in (QQ, K2):
        for _ in range(10):
            roots = [rand_qf(rng, field, 3) for _ in range(rng.randint(1, 3))]
            extra = AffinePoly.parse("x^2+x+1", field)  # irreducible over both
            f = extra
            for r in roots:
                f = f * AffinePoly({(1, 0): field.one, (0, 0): -r}, field)
            found, rem = univariate_roots(f)
            total = sum(m for _, m in found)
            assert total == len(roots)
            recon = rem
            for r, m in found:
                lin = AffinePoly({(1, 0): field.one, (0, 0): -r}, field)
                recon = recon * lin ** m
            assert recon.content_normalized() == f.content_normalized()


def test_translate_and_lowest_form():
    f = AffinePoly.parse("y^2 - x^2 - x^3")
    g = f.translate(QF(1, 0, QQ), QF(0, 0, QQ))
    # germ at (1,0): f(x+1,y) has nonzero constant? f(1,0) = -2 != 0
    assert g.eval(QQ.zero, QQ.zero) == QF(-2, 0, QQ)
    assert f.lowest_form() == AffinePoly.parse("y^2 - x^2")
    assert f.order == 2


def test_blowup_substitutions():
    f = AffinePoly.parse("y^2 - x^3")
    a = f.blowup_chart_a()   # x->u, y->uv
    assert a == AffinePoly.parse("x^2*y^2 - x^3")
    assert a.shift_down(0, 2) == AffinePoly.parse("y^2 - x")
    b = f.blowup_chart_b()   # x->uv, y->v
    assert b == AffinePoly.parse("y^2 - x^3*y^3")
