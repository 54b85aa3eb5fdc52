"""Plane-curve divisors and their local geometry: multiplicities,
intersection numbers by the classical recursive procedure, singular loci via
resultant elimination, tangent cones, and linear systems of curves with
prescribed jet conditions.

Divisors enter pre-factored (component polynomials with multiplicities); the
toolkit verifies pairwise coprimality but never factors forms itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from fractions import Fraction

from .qfield import QF, QuadField, QQ
from .poly import (
    AffinePoly, HomPoly, PolynomialError, ProjPoint,
    resultant, univariate_roots, _ugcd, _utrim, _ulist_to_affine,
)
from . import linalg


class UnsupportedField(ValueError):
    """A needed point or root lies outside Q(sqrt d)."""


class SharedComponent(ValueError):
    pass


class InvalidCondition(ValueError):
    pass


INFINITE = "infinite"


# ---------------------------------------------------------------------------
# divisors


class CurveDivisor:
    """Formal non-negative combination of irreducible ternary forms."""

    def __init__(self, components: list[tuple[HomPoly, int]]):
        if not components:
            raise ValueError("empty divisor")
        self.components = [(p, int(m)) for p, m in components]
        for p, m in self.components:
            if p.is_zero or m <= 0:
                raise ValueError("components must be nonzero with positive multiplicity")
        self.field = self.components[0][0].field
        for i, (p, _) in enumerate(self.components):
            for q, _ in self.components[i + 1:]:
                if p.is_proportional(q):
                    raise ValueError("proportional components in divisor")
                if hom_share_component(p, q):
                    raise SharedComponent("divisor components share a factor")
        self.degree = sum(m * p.degree for p, m in self.components)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def max_multiplicity(self) -> int:
        return max(m for _, m in self.components)

    @property
    def is_reduced(self) -> bool:
        return self.max_multiplicity == 1

    def multiplicity_sequence(self) -> list[tuple[int, int]]:
        return [(m, p.degree) for p, m in self.components]

    def support_poly(self) -> HomPoly:
        out = self.components[0][0]
        for p, _ in self.components[1:]:
            out = out * p
        return out

    def full_poly(self) -> HomPoly:
        out = None
        for p, m in self.components:
            q = p ** m
            out = q if out is None else out * q
        return out

    def __repr__(self):
        return " + ".join(f"{m}*({p.text()})" if m > 1 else f"({p.text()})"
                          for p, m in self.components)


def hom_share_component(f: HomPoly, g: HomPoly) -> bool:
    """Do two nonzero forms share a nonconstant common factor?"""
    if f.degree == 0 or g.degree == 0:
        return False
    if _z_order(f) > 0 and _z_order(g) > 0:
        return True
    f0, g0 = f.dehomogenize(2), g.dehomogenize(2)
    return biv_gcd(f0, g0).total_degree > 0


def _z_order(f: HomPoly) -> int:
    return min(k[2] for k in f.coeffs)


# ---------------------------------------------------------------------------
# local multiplicities and intersection numbers


def germ_at(f: HomPoly, pt: ProjPoint) -> AffinePoly:
    germ, _ = f.translate_to_chart(pt)
    return germ


def germs_at(polys: list[HomPoly], pt: ProjPoint) -> list[AffinePoly]:
    """Germs of several forms at pt, all in the same chart."""
    chart = max(i for i in range(3) if pt.coords[i])
    rest = [i for i in range(3) if i != chart]
    a = pt.coords[rest[0]] / pt.coords[chart]
    b = pt.coords[rest[1]] / pt.coords[chart]
    return [f.dehomogenize(chart).translate(a, b) for f in polys]


def multiplicity_at(D: CurveDivisor, pt: ProjPoint) -> int:
    total = 0
    for p, m in D.components:
        o = germ_at(p, pt).order
        total += m * o
    return total


def imult_origin(f: AffinePoly, g: AffinePoly):
    """Intersection multiplicity of two germs at the origin (the recursive
    axiomatic procedure); returns an int or INFINITE."""
    if f.is_zero or g.is_zero:
        return INFINITE
    if f.order == 0 or g.order == 0:
        return 0
    h = biv_gcd(f, g)
    if h.total_degree > 0 and h.order > 0:
        return INFINITE
    if h.total_degree > 0:
        f = exact_biv_div(f, h)
        g = exact_biv_div(g, h)
    return _fulton(f, g)


def _fulton(f: AffinePoly, g: AffinePoly) -> int:
    """Descent on degrees of the y=0 restrictions (no common component)."""
    total = 0
    while True:
        if f.order == 0 or g.order == 0:
            return total
        f0 = f.restrict(1, f.field.zero)   # f(x, 0)
        g0 = g.restrict(1, g.field.zero)
        if f0.is_zero and g0.is_zero:
            raise PolynomialError("common component slipped through")
        if f0.is_zero:
            # f = y*f1: I(f,g) = ord_x g(x,0) + I(f1,g)
            total += g0.var_order(0)
            f = f.shift_down(1, 1)
            continue
        if g0.is_zero:
            total += f0.var_order(0)
            g = g.shift_down(1, 1)
            continue
        df, dg = f0.degree_in(0), g0.degree_in(0)
        if df > dg:
            f, g = g, f
            f0, g0, df, dg = g0, f0, dg, df
        # kill the leading x-term of g(x,0) using f
        cf = f0.coeffs[(df, 0)]
        cg = g0.coeffs[(dg, 0)]
        xk = AffinePoly({(dg - df, 0): cg / cf}, f.field)
        g = g - xk * f


def biv_gcd(f: AffinePoly, g: AffinePoly) -> AffinePoly:
    """Gcd of bivariate polynomials (primitive PRS in y over K[x])."""
    if f.is_zero:
        return g
    if g.is_zero:
        return f
    if f.degree_in(1) == 0 and g.degree_in(1) == 0:
        cs = _ugcd(f.univariate(0), g.univariate(0))
        return _ulist_to_affine(cs, 0, f.field)
    if f.degree_in(1) < g.degree_in(1):
        f, g = g, f
    if g.degree_in(1) == 0:
        # gcd divides the x-content of f and g
        cf = _content_x(f)
        cs = _ugcd(cf, g.univariate(0))
        return _ulist_to_affine(cs, 0, f.field)
    fld = f.field
    contf, fp = _primitive_y(f)
    contg, gp = _primitive_y(g)
    cont = _ugcd(contf, contg)
    a, b = fp, gp
    while b.degree_in(1) > 0:
        r = _pseudo_rem_y(a, b)
        if r.is_zero:
            a = b
            b = AffinePoly({}, fld)
            break
        _, rp = _primitive_y(r)
        a, b = b, rp
    if not b.is_zero and b.degree_in(1) == 0:
        # gcd has no y part beyond content
        g0 = _ulist_to_affine(cont, 0, fld)
        return g0 if cont else AffinePoly.constant(fld.one, fld)
    out = _ulist_to_affine(cont, 0, fld) * a if cont else a
    return out


def _content_x(f: AffinePoly) -> list[QF]:
    cs = f.coeff_polys(1)
    out: list[QF] = []
    for c in cs:
        if c:
            out = _ugcd(out, c) if out else [x * c[-1].inverse() for x in c]
    return out


def _primitive_y(f: AffinePoly):
    cont = _content_x(f)
    if len(cont) == 1:
        return cont, f * cont[0].inverse()
    prim = exact_biv_div(f, _ulist_to_affine(cont, 0, f.field))
    return cont, prim


def _pseudo_rem_y(f: AffinePoly, g: AffinePoly) -> AffinePoly:
    """prem(f, g) in y: remainder of lc(g)^(m-n+1) * f under division by g."""
    m, n = f.degree_in(1), g.degree_in(1)
    lc = _lead_y(g)
    r = f
    e = m - n + 1
    while not r.is_zero and r.degree_in(1) >= n:
        k = r.degree_in(1)
        shift = AffinePoly({(0, k - n): f.field.one}, f.field)
        r = lc * r - _lead_y(r) * shift * g
        e -= 1
    if e > 0:
        r = r * lc ** e
    return r


def _lead_y(f: AffinePoly) -> AffinePoly:
    k = f.degree_in(1)
    return AffinePoly({(i, 0): v for (i, j), v in f.coeffs.items() if j == k},
                      f.field)


def _biv_div_uni(f: AffinePoly, g: AffinePoly):
    """Divide two x-univariate polys."""
    from .poly import _udivmod
    q, r = _udivmod(f.univariate(0) if f else [], g.univariate(0))
    return _ulist_to_affine(q, 0, g.field), _ulist_to_affine(r, 0, g.field)


def exact_biv_div(f: AffinePoly, g: AffinePoly) -> AffinePoly:
    """Exact division of bivariate polynomials (raises if inexact)."""
    fld = f.field
    if g.degree_in(1) == 0:
        gu = g.univariate(0)
        cs = f.coeff_polys(1)
        from .poly import _uexact_div
        out = [_uexact_div(c, gu) if c else [] for c in cs]
        return AffinePoly.from_coeff_polys(out, 1, fld)
    rem = f
    out = AffinePoly({}, fld)
    n = g.degree_in(1)
    lc = _lead_y(g)
    while not rem.is_zero and rem.degree_in(1) >= n:
        k = rem.degree_in(1)
        lr = _lead_y(rem)
        q, r = _biv_div_uni(lr, lc)
        if not r.is_zero:
            raise PolynomialError("inexact bivariate division")
        term = q * AffinePoly({(0, k - n): fld.one}, fld)
        out = out + term
        rem = rem - term * g
        if not rem.is_zero and rem.degree_in(1) == k:
            raise PolynomialError("inexact bivariate division")
    if not rem.is_zero:
        raise PolynomialError("inexact bivariate division")
    return out


def intersection_multiplicity(f: HomPoly, g: HomPoly, pt: ProjPoint):
    """Local intersection number of two forms at pt (int or INFINITE)."""
    gf, gg = germs_at([f, g], pt)
    return imult_origin(gf, gg)


def imult_origin_resultant(f: AffinePoly, g: AffinePoly, rng=None):
    """Independent oracle: intersection multiplicity at the origin as the
    x-order of Res_y after a verified-generic shear.  Requires that f, g have
    no common component through the origin."""
    import random
    rng = rng or random.Random(20240601)
    fld = f.field
    if f.is_zero or g.is_zero:
        return INFINITE
    if f.order == 0 or g.order == 0:
        return 0
    h = biv_gcd(f, g)
    if h.total_degree > 0:
        if h.order > 0:
            return INFINITE
        f, g = exact_biv_div(f, h), exact_biv_div(g, h)
    for _ in range(60):
        t = QF(rng.randint(1, 53), 0, fld)
        # shear x -> x + t*y keeps the origin fixed
        fs = _shear(f, t)
        gs = _shear(g, t)
        dy_f, dy_g = fs.degree_in(1), gs.degree_in(1)
        lf = fs.coeffs.get((0, dy_f))
        lg = gs.coeffs.get((0, dy_g))
        if not lf or not lg:
            continue  # not y-regular; try another shear
        f0 = fs.restrict(0, fld.zero).univariate(1)
        g0 = gs.restrict(0, fld.zero).univariate(1)
        gg = _ugcd(f0, g0)
        if len(gg) - 1 != _low_order(gg):
            continue  # another common point on the line x=0
        r = resultant(fs, gs, 1)
        if r.is_zero:
            raise PolynomialError("unexpected vanishing resultant")
        return r.var_order(0)
    raise PolynomialError("no valid shear found for resultant oracle")


def _shear(f: AffinePoly, t: QF) -> AffinePoly:
    out = AffinePoly({}, f.field)
    fld = f.field
    xs = AffinePoly({(1, 0): fld.one, (0, 1): t}, fld)
    y = AffinePoly({(0, 1): fld.one}, fld)
    xpows = {0: AffinePoly.constant(fld.one, fld)}
    for (i, j), v in f.coeffs.items():
        if i not in xpows:
            xpows[i] = xs ** i
        out = out + xpows[i] * (y ** j) * v
    return out


def _low_order(cs: list[QF]) -> int:
    for i, c in enumerate(cs):
        if c:
            return i
    return len(cs)


# ---------------------------------------------------------------------------
# common points of two forms


@dataclass
class UnresolvedLocus:
    eliminant: str
    context: str


def solve_common_points(f: HomPoly, g: HomPoly):
    """All common zeros of two forms rational over the working field,
    plus UnresolvedLocus entries for factors that do not split.

    Raises SharedComponent when the forms share a factor."""
    if hom_share_component(f, g):
        raise SharedComponent("forms share a component")
    fld = f.field
    pts: set[ProjPoint] = set()
    unresolved: list[UnresolvedLocus] = []

    # points at infinity (z = 0): common roots of the binary forms
    fb = _binary_at_infinity(f)
    gb = _binary_at_infinity(g)
    if fb.is_zero or gb.is_zero:
        nz = gb if fb.is_zero else fb
        # one form contains the line z: every root of the other binary form
        _binary_roots_into(nz, pts, unresolved, fld)
    else:
        gcd_b = biv_gcd(fb, gb)
        if gcd_b.total_degree > 0:
            _binary_roots_into(gcd_b, pts, unresolved, fld)

    # affine part z = 1
    a1, a2 = f.dehomogenize(2), g.dehomogenize(2)
    d1y, d2y = a1.degree_in(1), a2.degree_in(1)
    if d1y == 0 and d2y == 0:
        # both forms are unions of lines through (0:1:0) (plus z-powers);
        # with no shared component their only common point is (0:1:0) or on
        # z=0, both already covered by the infinity part
        pass
    else:
        if d1y == 0:
            _solve_mixed(a1, a2, pts, unresolved, fld)
        elif d2y == 0:
            _solve_mixed(a2, a1, pts, unresolved, fld)
        else:
            r = resultant(a1, a2, 1)
            if r.is_zero:
                raise SharedComponent("forms share a component (affine)")
            if r.total_degree == 0:
                pass
            else:
                roots, rem = univariate_roots(r)
                if rem.total_degree > 0:
                    unresolved.append(UnresolvedLocus(rem.text(("x", "y")), "eliminant in x (z=1 chart)"))
                for x0, _ in roots:
                    u1 = a1.restrict(0, x0)
                    u2 = a2.restrict(0, x0)
                    if u1.is_zero or u2.is_zero:
                        nz = u2 if u1.is_zero else u1
                        if nz.is_zero:
                            raise SharedComponent("common vertical line")
                        _uni_roots_into(nz, x0, pts, unresolved, fld)
                        continue
                    cs = _ugcd(u1.univariate(1), u2.univariate(1))
                    if len(cs) > 1:
                        _uni_roots_into(_ulist_to_affine(cs, 1, fld), x0, pts, unresolved, fld)
    return sorted(pts, key=lambda p: p.sort_key()), unresolved


def _solve_mixed(uni: AffinePoly, biv: AffinePoly, pts, unresolved, fld):
    roots, rem = univariate_roots(uni)
    if rem.total_degree > 0:
        unresolved.append(UnresolvedLocus(rem.text(("x", "y")), "univariate factor (z=1 chart)"))
    for x0, _ in roots:
        u = biv.restrict(0, x0)
        if u.is_zero:
            raise SharedComponent("common vertical line")
        if u.total_degree == 0:
            continue
        _uni_roots_into(u, x0, pts, unresolved, fld)


def _uni_roots_into(u: AffinePoly, x0: QF, pts, unresolved, fld):
    roots, rem = univariate_roots(u)
    if rem.total_degree > 0:
        unresolved.append(UnresolvedLocus(rem.text(("x", "y")), f"fiber over x={x0!r}"))
    for y0, _ in roots:
        pts.add(ProjPoint(x0, y0, fld.one))


def _binary_at_infinity(f: HomPoly) -> AffinePoly:
    """Restriction to z=0 as a binary form in (x, y)."""
    out = {}
    for (i, j, k), v in f.coeffs.items():
        if k == 0:
            out[(i, j)] = v
    return AffinePoly(out, f.field)


def _binary_roots_into(b: AffinePoly, pts, unresolved, fld):
    """Points (x:y:0) where the binary form in (x, y) vanishes."""
    if b.var_order(0) > 0:  # x divides: direction (0:1:0)
        pts.add(ProjPoint(fld.zero, fld.one, fld.zero))
    u = b.restrict(1, fld.one)  # set y=1, roots in x
    if not u.is_zero and u.total_degree > 0:
        roots, rem = univariate_roots(u)
        if rem.total_degree > 0:
            unresolved.append(UnresolvedLocus(rem.text(("x", "y")), "line at infinity"))
        for x0, _ in roots:
            pts.add(ProjPoint(x0, fld.one, fld.zero))
    if b.var_order(1) > 0:  # y divides: direction (1:0:0)
        pts.add(ProjPoint(fld.one, fld.zero, fld.zero))


# ---------------------------------------------------------------------------
# tangent cones, singular points


@dataclass
class TangentCone:
    lines: list[tuple[AffinePoly, int]]      # linear forms in chart coords
    remainder: AffinePoly | None             # unsplit (flagged) factor
    chart: int

    @property
    def split(self) -> bool:
        return self.remainder is None

    @property
    def n_distinct_lines(self) -> int:
        return len(self.lines)


def tangent_cone(f: HomPoly, pt: ProjPoint) -> TangentCone:
    """Factored lowest-degree form of the local equation at pt."""
    chart = max(i for i in range(3) if pt.coords[i])
    germ = germ_at(f, pt)
    if germ.order <= 0:
        raise ValueError("point not on the curve")
    return _factor_cone(germ.lowest_form(), chart)


def _factor_cone(form: AffinePoly, chart: int) -> TangentCone:
    fld = form.field
    lines: list[tuple[AffinePoly, int]] = []
    ordy = form.var_order(1)
    if ordy:
        lines.append((AffinePoly({(0, 1): fld.one}, fld), ordy))
        form = form.shift_down(1, ordy)
    u = form.restrict(1, fld.one)  # y=1: roots in x give lines x - r*y
    if u.total_degree > 0:
        roots, rem = univariate_roots(u)
        for r, m in roots:
            lines.append((AffinePoly({(1, 0): fld.one, (0, 1): -r}, fld), m))
        remainder = None
        if rem.total_degree > 0:
            # reconstruct the unsplit cone factor as a binary form
            remainder = _homogenize_binary(rem)
        return TangentCone(lines, remainder, chart)
    return TangentCone(lines, None, chart)


def _homogenize_binary(u: AffinePoly) -> AffinePoly:
    var = 0 if u.degree_in(1) == 0 else 1
    cs = u.univariate(var)
    n = len(cs) - 1
    out = {}
    for i, c in enumerate(cs):
        if c:
            out[(i, n - i)] = c
    return AffinePoly(out, u.field)


BRANCH_NODE = "node"
BRANCH_CUSP = "cusp"
BRANCH_TACNODE = "tacnode_like"
BRANCH_ORDINARY = "ordinary_m_fold"
BRANCH_OTHER = "other"


@dataclass
class SingularPointInfo:
    point: ProjPoint
    mult: int
    cone: TangentCone
    branch_type: str


@dataclass
class SingularReport:
    points: list[SingularPointInfo]
    unresolved: list[UnresolvedLocus]


def singular_points(D: CurveDivisor) -> SingularReport:
    """All field-rational points where the reduced support of D is singular
    or distinct components meet; loci outside the field are reported."""
    fld = D.field
    cand: set[ProjPoint] = set()
    unresolved: list[UnresolvedLocus] = []
    for p, _ in D.components:
        if p.degree < 2:
            continue
        pts, unr = _component_singular_points(p)
        cand.update(pts)
        unresolved.extend(unr)
    for i in range(len(D.components)):
        for j in range(i + 1, len(D.components)):
            pts, unr = solve_common_points(D.components[i][0], D.components[j][0])
            cand.update(pts)
            unresolved.extend(unr)
    infos = []
    for pt in sorted(cand, key=lambda p: p.sort_key()):
        infos.append(classify_singular_point(D, pt))
    return SingularReport(infos, unresolved)


def _component_singular_points(f: HomPoly):
    """Points where an (assumed reduced) form is singular: common zeros of
    the full gradient system, enumerated by gcd of pairwise eliminants so the
    unresolved report only names factors that could hide a singular point."""
    fld = f.field
    system = [f] + [f.derivative(i) for i in range(3)]
    system = [p for p in system if not p.is_zero]
    partials = [f.derivative(i) for i in range(3)]
    unresolved: list[UnresolvedLocus] = []
    pts: list[ProjPoint] = []

    def is_sing(pt):
        return all(p.is_zero or p.eval(pt) == fld.zero for p in partials)

    # line at infinity: common zeros of all restrictions to z=0
    binz = None
    for p in system:
        b = _binary_at_infinity(p)
        if b.is_zero:
            continue
        binz = b if binz is None else biv_gcd(binz, b)
        if binz.total_degree == 0:
            break
    if binz is not None and binz.total_degree > 0:
        cand: set[ProjPoint] = set()
        _binary_roots_into(binz, cand, unresolved, fld)
        pts.extend(p for p in cand if is_sing(p))

    # affine chart z = 1: eliminate y across the system
    aff = [p.dehomogenize(2) for p in system]
    elim = None
    base = next((a for a in aff if a.degree_in(1) > 0), None)
    for a in aff:
        if a is base:
            continue
        if a.degree_in(1) == 0:
            e = a
        elif base is None:
            continue
        else:
            e = resultant(base, a, 1)
            if e.is_zero:
                raise ValueError("component is not reduced")
        elim = e if elim is None else _gcd_univariate(elim, e, fld)
        if elim.total_degree == 0:
            break
    if elim is not None and elim.total_degree > 0:
        roots, rem = univariate_roots(elim)
        if rem.total_degree > 0:
            unresolved.append(UnresolvedLocus(rem.text(("x", "y")), "singular eliminant (z=1)"))
        for x0, _ in roots:
            col = None
            for a in aff:
                u = a.restrict(0, x0)
                if u.is_zero:
                    continue
                col = u if col is None else _gcd_univariate(col, u, fld)
                if col.total_degree == 0:
                    break
            if col is None or col.total_degree == 0:
                continue
            yroots, yrem = univariate_roots(col)
            if yrem.total_degree > 0:
                unresolved.append(UnresolvedLocus(yrem.text(("x", "y")), f"singular fiber over x={x0!r}"))
            for y0, _ in yroots:
                pt = ProjPoint(x0, y0, fld.one)
                if is_sing(pt):
                    pts.append(pt)
    return pts, unresolved


def _gcd_univariate(a: AffinePoly, b: AffinePoly, fld) -> AffinePoly:
    """Gcd of two polynomials each univariate (possibly in different vars)."""
    va = 0 if a.degree_in(1) == 0 else 1
    vb = 0 if b.degree_in(1) == 0 else 1
    return _ulist_to_affine(_ugcd(a.univariate(va), b.univariate(vb)), va, fld)


def classify_singular_point(D: CurveDivisor, pt: ProjPoint) -> SingularPointInfo:
    fld = D.field
    chart = max(i for i in range(3) if pt.coords[i])
    germs = germs_at([p for p, _ in D.components], pt)
    total = AffinePoly.constant(fld.one, fld)
    mult = 0
    for g, (_, m) in zip(germs, D.components):
        o = g.order
        if o > 0:
            mult += m * o
            total = total * g ** m
    cone = _factor_cone(total.lowest_form(), chart)
    branch = _branch_type(total, mult, cone)
    return SingularPointInfo(pt, mult, cone, branch)


def _branch_type(germ: AffinePoly, mult: int, cone: TangentCone) -> str:
    if mult <= 1:
        return BRANCH_OTHER
    if mult == 2:
        if cone.remainder is not None:
            return BRANCH_OTHER  # irrational pair of branches: still a node shape
        if len(cone.lines) == 2:
            return BRANCH_NODE
        # single doubled tangent line: cusp iff contact with the line is 3
        line, _ = cone.lines[0]
        contact = imult_origin(germ, line)
        if contact == 3:
            return BRANCH_CUSP
        return BRANCH_TACNODE
    if cone.split and cone.remainder is None and all(m == 1 for _, m in cone.lines) \
            and len(cone.lines) == mult:
        return BRANCH_ORDINARY
    return BRANCH_OTHER


# ---------------------------------------------------------------------------
# linear systems with jet conditions


@dataclass
class VanishCondition:
    point: ProjPoint
    order: int


@dataclass
class BranchCondition:
    curve: HomPoly      # reference curve, smooth at point
    point: ProjPoint
    order: int          # required contact order


def _monomials(degree: int):
    return [(i, j, degree - i - j) for i in range(degree + 1)
            for j in range(degree + 1 - i)]


def linear_system(degree: int, conditions: list, field: QuadField = QQ):
    """Basis of forms of the given degree satisfying all jet conditions.

    Returns (basis: list[HomPoly], vector_dimension)."""
    monos = _monomials(degree)
    rows: list[list[QF]] = []
    for cond in conditions:
        if isinstance(cond, VanishCondition):
            rows.extend(_vanish_rows(degree, monos, cond, field))
        elif isinstance(cond, BranchCondition):
            rows.extend(_branch_rows(degree, monos, cond, field))
        else:
            raise InvalidCondition(f"unknown condition {cond!r}")
    basis_vecs = linalg.kernel_basis(rows, len(monos), field)
    basis = []
    for v in basis_vecs:
        basis.append(HomPoly({m: c for m, c in zip(monos, v) if c}, field))
    return basis, len(basis_vecs)


def _vanish_rows(degree, monos, cond: VanishCondition, field):
    pt = cond.point
    chart = max(i for i in range(3) if pt.coords[i])
    rest = [i for i in range(3) if i != chart]
    a = pt.coords[rest[0]] / pt.coords[chart]
    b = pt.coords[rest[1]] / pt.coords[chart]
    rows_by_key: dict[tuple, list[QF]] = {}
    for col, mono in enumerate(monos):
        g = HomPoly({mono: field.one}, field).dehomogenize(chart).translate(a, b)
        for key, v in g.coeffs.items():
            if sum(key) < cond.order:
                rows_by_key.setdefault(key, [field.zero] * len(monos))[col] = v
    return list(rows_by_key.values())


def branch_parametrization(curve: HomPoly, pt: ProjPoint, order: int):
    """Power-series branch of a curve smooth at pt, to the given order.

    Returns (chart, swap, coeffs) where the branch is y = sum c_k x^k
    (x, y the chart coordinates, swapped when the tangent is vertical)."""
    chart = max(i for i in range(3) if pt.coords[i])
    germ = germ_at(curve, pt)
    if germ.order != 1:
        raise InvalidCondition("reference curve not smooth at the point")
    cx = germ.coeffs.get((1, 0), curve.field.zero)
    cy = germ.coeffs.get((0, 1), curve.field.zero)
    swap = not cy
    if swap:
        germ = AffinePoly({(j, i): v for (i, j), v in germ.coeffs.items()}, curve.field)
        cy = cx
    fld = curve.field
    coeffs = [fld.zero]  # c_0 = 0
    # determine c_k successively: germ(x, sum c x^k) = O(x^order)
    for k in range(1, order):
        # plug series with unknown c_k, extract coefficient of x^k (linear in c_k)
        series = {i: coeffs[i] for i in range(len(coeffs))}
        base = _eval_series(germ, series, k + 1)
        series_eps = dict(series)
        series_eps[k] = fld.one
        bumped = _eval_series(germ, series_eps, k + 1)
        a0 = base.get(k, fld.zero)
        a1 = bumped.get(k, fld.zero) - a0
        if not a1:
            raise InvalidCondition("degenerate branch solve")
        coeffs.append(-a0 / a1)
    return chart, swap, coeffs


def _eval_series(germ: AffinePoly, series: dict[int, QF], trunc: int) -> dict[int, QF]:
    """Coefficients (up to x^{trunc-1}) of germ(x, phi(x)) for phi given by
    `series` {power: coeff}."""
    fld = germ.field
    phi = [series.get(i, fld.zero) for i in range(trunc)]
    ypow: list[list[QF]] = [[fld.one]]
    maxj = germ.degree_in(1)
    for _ in range(maxj):
        ypow.append(_series_mul(ypow[-1], phi, trunc))
    out: dict[int, QF] = {}
    for (i, j), v in germ.coeffs.items():
        if i >= trunc:
            continue
        for p, c in enumerate(ypow[j]):
            k = i + p
            if k < trunc and c:
                out[k] = out.get(k, fld.zero) + v * c
    return {k: v for k, v in out.items() if v}


def _series_mul(a: list[QF], b: list[QF], trunc: int) -> list[QF]:
    fld = a[0].field if a else b[0].field
    out = [fld.zero] * trunc
    for i, x in enumerate(a):
        if not x or i >= trunc:
            continue
        for j, y in enumerate(b):
            if i + j >= trunc:
                break
            if y:
                out[i + j] = out[i + j] + x * y
    return _trim_series(out)


def _trim_series(cs):
    return cs


def _branch_rows(degree, monos, cond: BranchCondition, field):
    if cond.curve.eval(cond.point) != field.zero:
        raise InvalidCondition("branch point not on the reference curve")
    chart, swap, coeffs = branch_parametrization(cond.curve, cond.point, cond.order)
    pt = cond.point
    rest = [i for i in range(3) if i != chart]
    a = pt.coords[rest[0]] / pt.coords[chart]
    b = pt.coords[rest[1]] / pt.coords[chart]
    series = {i: c for i, c in enumerate(coeffs)}
    rows = {k: [field.zero] * len(monos) for k in range(cond.order)}
    for col, mono in enumerate(monos):
        g = HomPoly({mono: field.one}, field).dehomogenize(chart).translate(a, b)
        if swap:
            g = AffinePoly({(j, i): v for (i, j), v in g.coeffs.items()}, field)
        vals = _eval_series(g, series, cond.order)
        for k, v in vals.items():
            rows[k][col] = v
    return list(rows.values())


def verify_sum3d(C: HomPoly, pts: list[tuple[ProjPoint, int]], d: int):
    """A degree-d curve meeting a smooth cubic exactly in the prescribed
    multiset (sum of multiplicities 3d), or None."""
    if sum(m for _, m in pts) != 3 * d:
        raise InvalidCondition("multiset size must be 3d")
    field = C.field
    conds = [BranchCondition(C, p, m) for p, m in pts]
    basis, dim = linear_system(d, conds, field)
    for cand in basis:
        if hom_share_component(cand, C):
            continue
        total = 0
        ok = True
        for p, m in pts:
            im = intersection_multiplicity(cand, C, p)
            if im == INFINITE or im < m:
                ok = False
                break
            total += im
        if ok and total == 3 * d:
            return cand
    return None
