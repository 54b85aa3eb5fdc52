"""Blow-up machinery: resolve the base scheme of a pencil into a forest of
infinitely near points, track every component's multiplicity sequence, verify
the defining identities, and build local log resolutions of curve germs.

Chart convention: blowing up the local origin, chart A substitutes
(x,y) -> (u, u*v) with exceptional line u=0; chart B substitutes
(x,y) -> (u*v, v) with exceptional line v=0.  Successor base points are
searched on chart A first, then the single chart-B-only point.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

from .qfield import QF, QuadField
from .poly import AffinePoly, HomPoly, ProjPoint
from .curve import (
    CurveDivisor, SharedComponent, UnsupportedField, UnresolvedLocus,
    biv_gcd, germs_at, imult_origin, solve_common_points, univariate_roots,
    _factor_cone, _branch_type, _ulist_to_affine, _ugcd,
)


class ResolutionError(Exception):
    pass


class NotHalphen(ResolutionError):
    pass


class FixedComponent(ResolutionError):
    pass


class NotABasePoint(ResolutionError):
    pass


class ResolutionBudget(ResolutionError):
    pass


MAX_CLUSTER_STEPS = 32
LOCAL_RESOLUTION_BUDGET = 64


# ---------------------------------------------------------------------------
# pencil specification


class PencilSpec:
    """Pencil lambda*B + mu*(m*C); or a general two-generator pencil
    lambda*B + mu*D when gen2 is given (both generators of degree 3m)."""

    def __init__(self, B: CurveDivisor, C: CurveDivisor | None, m: int = 2,
                 gen2: CurveDivisor | None = None):
        if (C is None) == (gen2 is None):
            raise ValueError("exactly one of C / gen2 must be given")
        self.m = int(m)
        self.B = B
        self.C = C
        self.gen2_div = gen2
        self.field = B.field
        if C is not None:
            if C.degree != 3:
                raise ValueError(f"C must be a cubic, got degree {C.degree}")
            if B.degree != 3 * self.m:
                raise ValueError(f"deg B = {B.degree} != 3m = {3 * self.m}")
            self.gen2 = [(p, mult * self.m) for p, mult in C.components]
        else:
            if gen2.degree != B.degree:
                raise ValueError("general pencil generators must have equal degree")
            self.gen2 = list(gen2.components)

    @property
    def is_halphen_form(self) -> bool:
        return self.C is not None


# ---------------------------------------------------------------------------
# forest data


@dataclass
class ClusterPoint:
    level: int                       # i, 1-based
    comp_mults: dict                 # key -> multiplicity of strict transform
    m_B: int                         # multiplicity of B's strict transform
    m_gen2: int                      # same for the second generator divisor
    c_B: int                         # cumulative (total-transform) multiplicity
    d_B: int                         # c_B - level*m
    d_gen2: int
    where: str                       # location note (chart data)


@dataclass
class ResidualSingularity:
    comp_key: tuple
    cluster: int | None              # cluster index when over a base point
    branch_type: str
    mult: int
    note: str


@dataclass
class ResidualCrossing:
    comp_a: tuple
    comp_b: tuple
    imult: int
    tangential: bool
    cluster: int
    note: str


@dataclass
class Cluster:
    index: int
    base_point: ProjPoint
    points: list[ClusterPoint]

    @property
    def length(self) -> int:
        return len(self.points)


@dataclass
class BasePointForest:
    clusters: list[Cluster]
    comp_keys: list[tuple]           # ('B', i) and ('C', i) in order
    pencil: PencilSpec
    residual_singularities: list[ResidualSingularity]
    residual_crossings: list[ResidualCrossing]

    @property
    def k(self) -> int:
        return len(self.clusters)

    @property
    def characteristic_sequence(self) -> tuple[int, ...]:
        return tuple(cl.length for cl in self.clusters)

    def total_points(self) -> int:
        return sum(cl.length for cl in self.clusters)

    def comp_multiplicity_row(self, key) -> list[int]:
        """Multiplicities of one component's successive strict transforms at
        all infinitely near points, in forest order."""
        row = []
        for cl in self.clusters:
            for p in cl.points:
                row.append(p.comp_mults.get(key, 0))
        return row

    def cubic_absorbed_exceptionals(self) -> list[tuple[int, int, int]]:
        """(cluster, level, weight) of exceptional curves absorbed into the
        multiple fiber: weight = cumulative C multiplicity - level."""
        out = []
        for j, cl in enumerate(self.clusters):
            csum = 0
            for p in cl.points:
                mc = sum(p.comp_mults.get(key, 0)
                         for key in self.comp_keys if key[0] == "C")
                csum += mc
                w = csum - p.level
                if w > 0:
                    out.append((j, p.level, w))
        return out


# ---------------------------------------------------------------------------
# the resolver


@dataclass
class _Germ:
    key: tuple            # ('B', i) or ('C', i)
    poly: AffinePoly
    mult: int             # divisor multiplicity in its generator


def resolve_base_points(spec: PencilSpec) -> BasePointForest:
    """Resolve the base scheme of the pencil into ordered clusters of
    infinitely near points, recording all multiplicity data."""
    fld = spec.field
    m = spec.m
    comps_B = [(("B", i), p, mult) for i, (p, mult) in enumerate(spec.B.components)]
    comps_2 = [(("C", i), p, mult) for i, (p, mult) in enumerate(spec.gen2)]

    for _, pb, _ in comps_B:
        for _, pc, _ in comps_2:
            from .curve import hom_share_component
            if hom_share_component(pb, pc):
                raise FixedComponent("pencil generators share a component")

    base_pts: set[ProjPoint] = set()
    for _, pb, _ in comps_B:
        for _, pc, _ in comps_2:
            pts, unresolved = solve_common_points(pb, pc)
            if unresolved:
                raise UnsupportedField(
                    "base point outside the field; eliminant "
                    + "; ".join(u.eliminant for u in unresolved))
            base_pts.update(pts)

    clusters: list[Cluster] = []
    residual_sing: list[ResidualSingularity] = []
    residual_cross: list[ResidualCrossing] = []
    for j, pt in enumerate(sorted(base_pts, key=lambda p: p.sort_key())):
        cluster = _resolve_cluster(spec, j, pt, residual_sing, residual_cross)
        clusters.append(cluster)

    forest = BasePointForest(
        clusters=clusters,
        comp_keys=[k for k, _, _ in comps_B] + [k for k, _, _ in comps_2],
        pencil=spec,
        residual_singularities=residual_sing,
        residual_crossings=residual_cross,
    )
    total = forest.total_points()
    if total != 9:
        raise NotHalphen(
            f"sum of cluster lengths is {total}, not 9: characteristic "
            f"sequence {forest.characteristic_sequence}")
    return forest


def _resolve_cluster(spec: PencilSpec, j: int, pt: ProjPoint,
                     residual_sing, residual_cross) -> Cluster:
    fld = spec.field
    m = spec.m
    # germs of every component at pt, in one chart
    keys: list[tuple] = []
    mults: list[int] = []
    hpolys: list[HomPoly] = []
    for i, (p, mu) in enumerate(spec.B.components):
        keys.append(("B", i)); mults.append(mu); hpolys.append(p)
    for i, (p, mu) in enumerate(spec.gen2):
        keys.append(("C", i)); mults.append(mu); hpolys.append(p)
    germ_list = germs_at(hpolys, pt)
    germs = [_Germ(k, g, mu) for k, g, mu in zip(keys, germ_list, mults)]

    points: list[ClusterPoint] = []
    e_B = 0      # multiplicity of the current exceptional in B's induced member
    e_2 = 0
    c_B = 0
    c_2 = 0
    level = 0
    where = f"plane point {pt!r}"

    while True:
        level += 1
        if level > MAX_CLUSTER_STEPS:
            raise ResolutionBudget(f"cluster {j} exceeded {MAX_CLUSTER_STEPS} blow-ups")
        live = [g for g in germs if g.poly.order >= 1]
        mB = sum(g.mult * g.poly.order for g in live if g.key[0] == "B")
        m2 = sum(g.mult * g.poly.order for g in live if g.key[0] == "C")
        member_B = mB + e_B
        member_2 = m2 + e_2
        if member_B < m or member_2 < m:
            raise NotABasePoint(
                f"cluster {j} level {level}: member multiplicities "
                f"({member_B}, {member_2}) below the index {m}")
        c_B += mB
        c_2 += m2
        points.append(ClusterPoint(
            level=level,
            comp_mults={g.key: g.poly.order for g in live},
            m_B=mB, m_gen2=m2,
            c_B=c_B, d_B=c_B - level * m,
            d_gen2=c_2 - level * m,
            where=where,
        ))
        e_B_new = member_B - m
        e_2_new = member_2 - m

        # strict transforms in chart A
        new_germs: list[_Germ] = []
        for g in live:
            o = g.poly.order
            stric = g.poly.blowup_chart_a().shift_down(0, o)
            new_germs.append(_Germ(g.key, stric, g.mult))

        # successor directions on E (u=0), chart A
        zero = fld.zero
        rest_B = None
        rest_2 = None
        if e_B_new == 0:
            rest_B = _member_restriction(new_germs, "B", fld)
        if e_2_new == 0:
            rest_2 = _member_restriction(new_germs, "C", fld)
        if e_B_new > 0 and e_2_new > 0:
            raise FixedComponent(
                f"cluster {j} level {level}: exceptional curve is a fixed "
                f"component of the induced pencil")
        if rest_B is not None and rest_2 is not None:
            gc = _gcd_uni(rest_B, rest_2, fld)
            succ_roots, rem = _roots_or_raise(gc, j, level)
        elif rest_B is not None:
            succ_roots, rem = _roots_or_raise(rest_B, j, level)
        else:
            succ_roots, rem = _roots_or_raise(rest_2, j, level)

        # the chart-B-only direction (v = infinity)
        inf_succ = _infinity_successor(live, e_B_new, e_2_new, fld)

        succs = [v for v, _ in succ_roots]
        if inf_succ:
            if level >= 2:
                raise NotHalphen(
                    f"cluster {j} level {level}: satellite base point at the "
                    f"corner of consecutive exceptional curves")
            succs.append("inf")

        # residual singularities / crossings on E away from the successor
        _record_residuals(new_germs, live, succs, j, level, fld,
                          residual_sing, residual_cross)

        if not succs:
            if e_B_new != 0 or e_2_new != 0:
                raise NotHalphen(
                    f"cluster {j} level {level}: no successor base point but "
                    f"d = ({e_B_new}, {e_2_new}) has not reached 0")
            break
        if len(succs) > 1:
            raise NotHalphen(
                f"cluster {j} level {level}: branching cluster "
                f"({len(succs)} successor base points on one exceptional)")

        succ = succs[0]
        if succ == "inf":
            # move to chart B: (x,y) -> (u v, v); E: v = 0; origin is the point
            germs = []
            for g in live:
                o = g.poly.order
                stric = g.poly.blowup_chart_b().shift_down(1, o)
                germs.append(_Germ(g.key, stric, g.mult))
            # swap coordinates so the exceptional stays u = 0
            germs = [_Germ(g.key, _swap_vars(g.poly), g.mult) for g in germs]
            where = f"E_{j+1}^({level}) at direction v=inf"
        else:
            germs = [_Germ(g.key, g.poly.translate(zero, succ), g.mult)
                     for g in new_germs]
            where = f"E_{j+1}^({level}) at direction v={succ!r}"
        e_B, e_2 = e_B_new, e_2_new

    return Cluster(index=j, base_point=pt, points=points)


def _swap_vars(p: AffinePoly) -> AffinePoly:
    return AffinePoly({(j, i): v for (i, j), v in p.coeffs.items()}, p.field)


def _member_restriction(germs: list[_Germ], side: str, fld) -> AffinePoly:
    """Restriction of the product of one generator's strict transforms to the
    exceptional line u=0, as a univariate polynomial in v."""
    out = AffinePoly.constant(fld.one, fld)
    for g in germs:
        if g.key[0] != side:
            continue
        r = g.poly.restrict(0, fld.zero)
        if r.is_zero:
            # strict transform contains the exceptional line: impossible
            raise ResolutionError("strict transform contains the exceptional line")
        out = out * r ** g.mult
    return out


def _gcd_uni(a: AffinePoly, b: AffinePoly, fld) -> AffinePoly:
    if a.total_degree == 0 or b.total_degree == 0:
        return AffinePoly.constant(fld.one, fld)
    return _ulist_to_affine(_ugcd(a.univariate(1), b.univariate(1)), 1, fld)


def _roots_or_raise(r: AffinePoly, j: int, level: int):
    if r.total_degree <= 0:
        return [], None
    roots, rem = univariate_roots(r)
    if rem.total_degree > 0:
        raise UnsupportedField(
            f"cluster {j} level {level}: successor base points outside the "
            f"field; unsplit factor {rem.text(('u', 'v'))}")
    return roots, rem


def _infinity_successor(live: list[_Germ], e_B_new: int, e_2_new: int, fld) -> bool:
    """Is the chart-B-only point (direction v=inf) a successor base point?"""
    through_B = e_B_new > 0
    through_2 = e_2_new > 0
    for g in live:
        o = g.poly.order
        stric = g.poly.blowup_chart_b().shift_down(1, o)
        if stric.eval(fld.zero, fld.zero) == fld.zero:
            if g.key[0] == "B":
                through_B = True
            else:
                through_2 = True
    return through_B and through_2


def _record_residuals(new_germs: list[_Germ], live: list[_Germ], succs,
                      j, level, fld, residual_sing, residual_cross):
    """Singular points, pairwise crossings, and contacts with the exceptional
    line away from the next center: these survive into the fiber."""
    zero = fld.zero
    exc_key = ("E", j, level)
    # collect direction points per germ: (germ, root multiplicity = E-contact)
    dirs: dict = {}
    for g in new_germs:
        r = g.poly.restrict(0, zero)
        if r.is_zero or r.total_degree <= 0:
            continue
        roots, rem = univariate_roots(r)
        for v0, mult in roots:
            dirs.setdefault(v0, []).append((g, mult))
    for v0, items in dirs.items():
        if any(isinstance(s, QF) and s == v0 for s in succs):
            continue
        translated = [(g, g.poly.translate(zero, v0)) for g, _ in items]
        _residuals_at_point(translated, j, level, f"v={v0!r}",
                            residual_sing, residual_cross)
        for (g, mult) in items:
            residual_cross.append(ResidualCrossing(
                comp_a=g.key, comp_b=exc_key, imult=mult,
                tangential=mult > 1, cluster=j,
                note=f"on E_{j+1}^({level}) at v={v0!r}"))
    # the chart-B-only direction
    if "inf" not in succs:
        binf = []
        for g in live:
            o = g.poly.order
            sb = g.poly.blowup_chart_b().shift_down(1, o)
            if sb.eval(zero, zero) == zero:
                binf.append((g, _swap_vars(sb)))
        if binf:
            _residuals_at_point(binf, j, level, "v=inf",
                                residual_sing, residual_cross)
            for g, tg in binf:
                contact = imult_origin(tg, AffinePoly({(1, 0): fld.one}, fld))
                residual_cross.append(ResidualCrossing(
                    comp_a=g.key, comp_b=exc_key,
                    imult=contact if isinstance(contact, int) else -1,
                    tangential=isinstance(contact, int) and contact > 1,
                    cluster=j, note=f"on E_{j+1}^({level}) at v=inf"))


def _residuals_at_point(translated, j, level, where, residual_sing, residual_cross):
    for g, tg in translated:
        if tg.order >= 2:
            cone = _factor_cone(tg.lowest_form(), 2)
            bt = _branch_type(tg, tg.order, cone)
            residual_sing.append(ResidualSingularity(
                comp_key=g.key, cluster=j, branch_type=bt, mult=tg.order,
                note=f"on E_{j+1}^({level}) at {where}"))
    for a in range(len(translated)):
        for b in range(a + 1, len(translated)):
            ga, ta = translated[a]
            gb, tb = translated[b]
            im = imult_origin(ta, tb)
            tangential = im != 1 if isinstance(im, int) else True
            residual_cross.append(ResidualCrossing(
                comp_a=ga.key, comp_b=gb.key,
                imult=im if isinstance(im, int) else -1,
                tangential=tangential, cluster=j,
                note=f"on E_{j+1}^({level}) at {where}"))


# ---------------------------------------------------------------------------
# identity verification


@dataclass
class HalphenCheck:
    name: str
    ok: bool
    detail: str = ""


def verify_halphen(forest: BasePointForest) -> list[HalphenCheck]:
    """Check the structural identities of a resolved Halphen pencil."""
    spec = forest.pencil
    m = spec.m
    checks = []
    total = forest.total_points()
    checks.append(HalphenCheck("sum a_j = 9", total == 9, f"total {total}"))
    for cl in forest.clusters:
        s = sum(p.m_B for p in cl.points)
        checks.append(HalphenCheck(
            f"cluster {cl.index}: sum m(B) = a_j*m",
            s == cl.length * m, f"{s} vs {cl.length * m}"))
        dlast = cl.points[-1].d_B
        checks.append(HalphenCheck(
            f"cluster {cl.index}: d(a_j) = 0", dlast == 0, f"d={dlast}"))
        for p in cl.points:
            if p.d_B < 0:
                checks.append(HalphenCheck(
                    f"cluster {cl.index}: d >= 0", False, f"level {p.level}"))
        m1 = cl.points[0].m_B
        for p in cl.points:
            bound = p.level * (m1 - m)
            if p.d_B > bound:
                checks.append(HalphenCheck(
                    f"cluster {cl.index}: d bound", False,
                    f"level {p.level}: {p.d_B} > {bound}"))
    # intersection identity where C is smooth at the base point
    if spec.is_halphen_form:
        from .curve import intersection_multiplicity, INFINITE
        cpoly = spec.C.support_poly()
        for cl in forest.clusters:
            mc1 = sum(cl.points[0].comp_mults.get(k, 0)
                      for k in forest.comp_keys if k[0] == "C")
            if mc1 != 1:
                continue
            tot = 0
            for (p, mult) in spec.B.components:
                im = intersection_multiplicity(p, cpoly, cl.base_point)
                if im == INFINITE:
                    tot = None
                    break
                tot += mult * im
            ok = tot == cl.length * m
            checks.append(HalphenCheck(
                f"cluster {cl.index}: I(B,C) = a_j*m", ok,
                f"{tot} vs {cl.length * m}"))
    return checks


# ---------------------------------------------------------------------------
# local log resolution of a curve germ (for lct)


@dataclass
class ExceptionalData:
    b: int      # discrepancy
    c: int      # multiplicity in the total transform of the divisor


@dataclass
class LocalResolutionData:
    exceptionals: list[ExceptionalData]
    comp_mults: list[int]       # divisor multiplicities of components through
    blowups: int


@dataclass
class _LocalItem:
    germ: AffinePoly
    mult: int        # divisor multiplicity (0 markers not used)
    is_exc: bool
    b: int = 0
    c: int = 0


def local_log_resolution(D: CurveDivisor, pt: ProjPoint,
                         budget: int = LOCAL_RESOLUTION_BUDGET) -> LocalResolutionData:
    """Blow up the germ of D at pt until the reduced total transform has
    simple normal crossings; returns discrepancies and total-transform
    multiplicities of all exceptional divisors created."""
    fld = D.field
    germimport = germs_at([p for p, _ in D.components], pt)
    items = []
    mults = []
    for g, (_, mu) in zip(germimport, D.components):
        if g.order >= 1:
            items.append(_LocalItem(g, mu, False))
            mults.append(mu)
    if not items:
        raise ValueError("point not on the divisor")
    out: list[ExceptionalData] = []
    count = [0]
    _resolve_local(items, out, count, budget, fld)
    return LocalResolutionData(out, mults, count[0])


def _snc_at_origin(through: list[_LocalItem]) -> bool:
    if len(through) > 2:
        return False
    for it in through:
        if it.germ.order != 1:
            return False
    if len(through) == 2:
        im = imult_origin(through[0].germ, through[1].germ)
        return im == 1
    return True


def _resolve_local(items: list[_LocalItem], out, count, budget, fld):
    through = [it for it in items if it.germ.order >= 1]
    if _snc_at_origin(through):
        return
    if count[0] >= budget:
        raise ResolutionBudget(f"local log resolution exceeded {budget} blow-ups")
    count[0] += 1
    b_new = 1 + sum(it.b for it in through if it.is_exc)
    c_new = sum(it.mult * it.germ.order for it in through if not it.is_exc) \
        + sum(it.c for it in through if it.is_exc)
    out.append(ExceptionalData(b_new, c_new))

    # chart A transforms
    zero = fld.zero
    stricts = []
    for it in through:
        o = it.germ.order
        sa = it.germ.blowup_chart_a().shift_down(0, o)
        stricts.append(_LocalItem(sa, it.mult, it.is_exc, it.b, it.c))
    # direction points on the new exceptional
    dirs: dict = {}
    for it in stricts:
        r = it.germ.restrict(0, zero)
        if r.is_zero:
            raise ResolutionError("strict transform contains the exceptional")
        if r.total_degree > 0:
            roots, rem = univariate_roots(r)
            if rem.total_degree > 0:
                raise UnsupportedField(
                    f"local resolution branch outside the field: "
                    f"{rem.text(('u', 'v'))}")
            for v0, _ in roots:
                dirs.setdefault(v0, True)
    # chart-B-only point: any item through the origin of chart B?
    chartb_items = []
    for it in through:
        o = it.germ.order
        sb = it.germ.blowup_chart_b().shift_down(1, o)
        if sb.eval(zero, zero) == zero:
            chartb_items.append(_LocalItem(_swap_vars(sb), it.mult, it.is_exc,
                                           it.b, it.c))
    for v0 in sorted(dirs, key=lambda v: v.sort_key()):
        sub = []
        for it in stricts:
            t = it.germ.translate(zero, v0)
            if t.order >= 1:
                sub.append(_LocalItem(t, it.mult, it.is_exc, it.b, it.c))
        sub.append(_LocalItem(AffinePoly({(1, 0): fld.one}, fld), 0, True,
                              b_new, c_new))
        _resolve_local(sub, out, count, budget, fld)
    if chartb_items:
        sub = chartb_items + [_LocalItem(AffinePoly({(1, 0): fld.one}, fld),
                                         0, True, b_new, c_new)]
        _resolve_local(sub, out, count, budget, fld)
