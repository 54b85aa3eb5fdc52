"""Shared helpers for the corpus derivation scripts: record emission with
mandatory end-to-end verification, and exact group-law arithmetic on cubics
(chord-tangent constructions) built from the package's own primitives."""

from __future__ import annotations

import json
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", "src"))

from halphen.qfield import QF, QuadField, QQ
from halphen.poly import AffinePoly, HomPoly, ProjPoint, univariate_roots
from halphen.curve import (
    BranchCondition, CurveDivisor, VanishCondition, intersection_multiplicity,
    linear_system, solve_common_points,
)
from halphen.corpus import load_example, verify_example

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "..",
                       "src", "halphen", "corpus_data")


def emit(record: dict, quiet: bool = False) -> bool:
    """Verify a record end-to-end and write it to the corpus on success."""
    rec = load_example(json.dumps(record))
    rep = verify_example(rec)
    if not quiet or not rep.passed:
        print(rep.summary_line())
        if not rep.passed:
            for c in rep.checks:
                if not c.ok:
                    print(f"    FAIL {c.name}: {c.detail}")
    if not rep.passed:
        return False
    path = os.path.join(OUT_DIR, f"{record['id']}.json")
    with open(path, "w") as fh:
        json.dump(record, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return True


# ---------------------------------------------------------------------------
# chord-tangent group law on a cubic with a chosen rational flex as origin


class CubicGroup:
    """Exact chord-tangent arithmetic on a smooth plane cubic over Q(sqrt d).

    The origin must be a flex.  Only the operations needed by the corpus
    derivations are provided: addition, negation, integer multiples, and the
    third intersection point of a line."""

    def __init__(self, curve: HomPoly, origin: ProjPoint):
        self.curve = curve
        self.field = curve.field
        self.origin = origin
        if curve.eval(origin) != self.field.zero:
            raise ValueError("origin not on the curve")
        if intersection_multiplicity(curve, self.tangent_at(origin), origin) != 3:
            raise ValueError("origin is not a flex")

    def tangent_at(self, p: ProjPoint) -> HomPoly:
        gx = self.curve.derivative(0).eval(p)
        gy = self.curve.derivative(1).eval(p)
        gz = self.curve.derivative(2).eval(p)
        return HomPoly({(1, 0, 0): gx, (0, 1, 0): gy, (0, 0, 1): gz},
                       self.field)

    @staticmethod
    def join(p: ProjPoint, q: ProjPoint) -> HomPoly:
        (x1, y1, z1), (x2, y2, z2) = p.coords, q.coords
        return HomPoly({
            (1, 0, 0): y1 * z2 - z1 * y2,
            (0, 1, 0): z1 * x2 - x1 * z2,
            (0, 0, 1): x1 * y2 - y1 * x2,
        }, p.field)

    def third_point(self, p: ProjPoint, q: ProjPoint) -> ProjPoint:
        """Third intersection of the chord through p, q (tangent when p=q)."""
        line = self.tangent_at(p) if p == q else self.join(p, q)
        pts, unresolved = solve_common_points(self.curve, line)
        if unresolved:
            raise ValueError("chord leaves the field")
        div = []
        for pt in pts:
            im = intersection_multiplicity(self.curve, line, pt)
            div.extend([pt] * im)
        if len(div) != 3:
            raise ValueError(f"chord cuts {len(div)} points")
        rest = list(div)
        rest.remove(p)
        rest.remove(q)
        return rest[0]

    def neg(self, p: ProjPoint) -> ProjPoint:
        return self.third_point(p, self.origin)

    def add(self, p: ProjPoint, q: ProjPoint) -> ProjPoint:
        return self.neg(self.third_point(p, q))

    def mul(self, n: int, p: ProjPoint) -> ProjPoint:
        if n == 0:
            return self.origin
        if n < 0:
            return self.neg(self.mul(-n, p))
        out = None
        base = p
        while n:
            if n & 1:
                out = base if out is None else self.add(out, base)
            n >>= 1
            if n:
                base = self.add(base, base)
        return out

    def sum(self, *pts) -> ProjPoint:
        out = self.origin
        for p in pts:
            out = self.add(out, p)
        return out

    def lift_x(self, x) -> list[ProjPoint]:
        """Points of the curve with the given affine x (z=1), in-field."""
        fld = self.field
        xv = x if isinstance(x, QF) else QF(Fraction(x), 0, fld)
        germ = self.curve.dehomogenize(2).restrict(0, xv)
        if germ.is_zero or germ.total_degree == 0:
            return []
        roots, _ = univariate_roots(germ)
        return [ProjPoint(xv, y, fld.one) for y, _ in roots]


def nodal_parametrization(a: QF, field: QuadField) -> ProjPoint:
    """Point of the split nodal cubic y^2 z = x^2 (x+z) with multiplicative
    parameter a (a != 0, +-1): the smooth locus is isomorphic to the
    multiplicative group, normalized so collinearity means abc = 1."""
    one = field.one
    # branches at the node have slopes +-1; the line y = t x meets the cubic
    # at x = t^2 - 1.  With t = (a+1)/(a-1) the parametrization sends
    # a*b*c = 1 to collinear points and a = 1 to the flex at infinity.
    t = (a + one) / (a - one)
    x = t * t - one
    y = t * x
    return ProjPoint(x, y, one)


NODAL_CUBIC = "y^2*z - x^2*(x+z)"


def check_nodal_collinear(field=QQ):
    """Sanity: the nodal parametrization is a group isomorphism."""
    c = HomPoly.parse(NODAL_CUBIC, field)
    import random
    rng = random.Random(9)
    done = 0
    while done < 8:
        a = QF(Fraction(rng.randint(2, 9), rng.randint(1, 3)), 0, field)
        b = QF(Fraction(rng.randint(3, 11), rng.randint(1, 2)), 0, field)
        ab = (a * b).inverse()
        vals = {a, b, ab}
        if len(vals) < 3 or any(v in (field.one, -field.one) for v in vals):
            continue
        pa, pb, pc = (nodal_parametrization(t, field) for t in (a, b, ab))
        line = CubicGroup.join(pa, pb)
        assert line.eval(pc) == field.zero, (a, b)
        assert c.eval(pa) == field.zero
        done += 1
    return True


def poly_text(p: HomPoly) -> str:
    return p.text()


def scale_primitive(p: HomPoly) -> HomPoly:
    """Clear denominators and common integer factors for readable records."""
    from math import gcd
    nums = []
    dens = []
    for v in p.coeffs.values():
        for part in (v.a, v.b):
            if part:
                nums.append(abs(part.numerator))
                dens.append(part.denominator)
    if not nums:
        return p
    l = 1
    for d in dens:
        l = l * d // gcd(l, d)
    g = 0
    for n_ in nums:
        g = gcd(g, n_)
    scale = QF(Fraction(l, g if g else 1), 0, p.field)
    out = p * scale
    # prefer a positive leading coefficient
    k0 = min(out.coeffs)
    lead = out.coeffs[max(out.coeffs)]
    if lead.a < 0 or (lead.a == 0 and lead.b < 0):
        out = out * QF(-1, 0, p.field)
    return out
