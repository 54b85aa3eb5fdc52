"""Fiber divisors on the blown-up surface: Picard-lattice classes, weighted
colored dual graphs, Kodaira classification, and the multiple fiber.

Classes live in the rank-10 lattice with basis H, E_1..E_9 and pairing
diag(1, -1, ..., -1); a curve class is stored as (h; m_1..m_9) representing
h*H - sum m_i E_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

from .qfield import QF
from .poly import HomPoly, ProjPoint
from .curve import (
    CurveDivisor, INFINITE, BRANCH_NODE, BRANCH_CUSP,
    intersection_multiplicity, singular_points, solve_common_points,
)
from .resolution import BasePointForest


class ClassificationError(Exception):
    pass


class NoMatch(ClassificationError):
    pass


class InvalidMultipleFiber(ClassificationError):
    pass


# ---------------------------------------------------------------------------
# Picard lattice


class PicClass:
    __slots__ = ("h", "e")

    def __init__(self, h: int, e: tuple[int, ...]):
        self.h = h
        self.e = tuple(e)

    def pair(self, other: "PicClass") -> int:
        return self.h * other.h - sum(a * b for a, b in zip(self.e, other.e))

    def __add__(self, other):
        return PicClass(self.h + other.h,
                        tuple(a + b for a, b in zip(self.e, other.e)))

    def __mul__(self, n: int):
        return PicClass(self.h * n, tuple(a * n for a in self.e))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, PicClass) and self.h == other.h and self.e == other.e

    def __repr__(self):
        return f"({self.h}; {','.join(map(str, self.e))})"


def canonical_class(n: int = 9) -> PicClass:
    return PicClass(-3, (-1,) * n)


def pic_class_strict(forest: BasePointForest, key: tuple) -> PicClass:
    """Class of the strict transform of a pencil component."""
    spec = forest.pencil
    if key[0] == "B":
        deg = spec.B.components[key[1]][0].degree
    else:
        deg = spec.gen2[key[1]][0].degree
    row = forest.comp_multiplicity_row(key)
    return PicClass(deg, tuple(row))


def pic_class_exceptional(forest: BasePointForest, j: int, level: int) -> PicClass:
    """Class of the strict exceptional curve over the level-th point of
    cluster j (1-based level)."""
    idx = _flat_index(forest, j, level)
    e = [0] * forest.total_points()
    e[idx] = -1
    if level < forest.clusters[j].length:
        e[_flat_index(forest, j, level + 1)] = 1
    return PicClass(0, tuple(e))


def _flat_index(forest: BasePointForest, j: int, level: int) -> int:
    base = sum(cl.length for cl in forest.clusters[:j])
    return base + (level - 1)


# ---------------------------------------------------------------------------
# fiber assembly


@dataclass
class FiberComponent:
    kind: str                 # "strict" | "exc"
    label: str
    mult: int
    cls: PicClass
    key: tuple                # ('B', i) / ('C', i) for strict; (j, level) for exc


@dataclass
class FiberDivisor:
    components: list[FiberComponent]

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def S_F(self) -> int:
        return sum(c.mult for c in self.components)

    @property
    def M_F(self) -> int:
        return max(c.mult for c in self.components)

    def total_class(self) -> PicClass:
        out = None
        for c in self.components:
            t = c.cls * c.mult
            out = t if out is None else out + t
        return out


def build_fiber(forest: BasePointForest) -> FiberDivisor:
    """The fiber of the designated member B: strict transforms of its
    components plus exceptional curves weighted d_j^(i)."""
    spec = forest.pencil
    comps: list[FiberComponent] = []
    for i, (p, mult) in enumerate(spec.B.components):
        comps.append(FiberComponent(
            "strict", _strict_label(p, mult, i), mult,
            pic_class_strict(forest, ("B", i)), ("B", i)))
    comps.extend(_exceptional_components(forest, "B"))
    return FiberDivisor(comps)


def _exceptional_components(forest: BasePointForest, side: str) -> list[FiberComponent]:
    out = []
    for j, cl in enumerate(forest.clusters):
        seen_zero = False
        for p in cl.points:
            d = p.d_B if side == "B" else p.d_gen2
            if d > 0:
                if seen_zero:
                    raise ClassificationError(
                        f"cluster {j}: exceptional multiplicities not contiguous")
                out.append(FiberComponent(
                    "exc", f"E{j+1}^({p.level})", d,
                    pic_class_exceptional(forest, j, p.level), (j, p.level)))
            else:
                seen_zero = True
    return out


def _strict_label(p: HomPoly, mult: int, i: int) -> str:
    names = {1: "line", 2: "conic", 3: "cubic", 4: "quartic", 5: "quintic",
             6: "sextic"}
    return f"B{i+1}:{names.get(p.degree, f'deg{p.degree}')}"


def multiple_fiber_divisor(forest: BasePointForest) -> FiberDivisor:
    """The reduced multiple fiber: strict transform of the cubic plus any
    exceptional curves absorbed where the cubic is singular at base points."""
    spec = forest.pencil
    if not spec.is_halphen_form:
        raise ClassificationError("general pencil has no designated multiple cubic")
    comps: list[FiberComponent] = []
    for i, (p, _) in enumerate(spec.C.components):
        comps.append(FiberComponent(
            "strict", f"C{i+1}", 1, pic_class_strict(forest, ("C", i)), ("C", i)))
    for (j, level, w) in forest.cubic_absorbed_exceptionals():
        if w != 1:
            raise InvalidMultipleFiber(
                f"absorbed exceptional with weight {w} (multiple fiber not reduced)")
        comps.append(FiberComponent(
            "exc", f"E{j+1}^({level})", 1,
            pic_class_exceptional(forest, j, level), (j, level)))
    return FiberDivisor(comps)


# ---------------------------------------------------------------------------
# dual graph


@dataclass
class Contact:
    at: str                  # point description
    imult: int
    tangential: bool


@dataclass
class Edge:
    a: int
    b: int
    weight: int
    contacts: list[Contact] = dfield(default_factory=list)


@dataclass
class Loop:
    vertex: int
    branch_type: str


@dataclass
class DualGraph:
    mults: list[int]
    colors: list[str]        # "blue" (from B) / "black" (exceptional)
    labels: list[str]
    edges: list[Edge]
    loops: list[Loop]
    concurrency: list[tuple] = dfield(default_factory=list)  # sets of >=3 vertices at one point

    @property
    def n(self) -> int:
        return len(self.mults)

    def adjacency(self):
        adj = {i: [] for i in range(self.n)}
        for e in self.edges:
            adj[e.a].append((e.b, e.weight))
            adj[e.b].append((e.a, e.weight))
        return adj

    def degree(self, v: int) -> int:
        return sum(w for u, w in self.adjacency()[v])

    def to_dot(self) -> str:
        lines = ["graph fiber {"]
        for i in range(self.n):
            lines.append(
                f'  v{i} [label="{self.mults[i]} {self.labels[i]}", color={self.colors[i]}];')
        for e in sorted(self.edges, key=lambda e: (e.a, e.b)):
            attr = f' [label="{e.weight}"]' if e.weight > 1 else ""
            lines.append(f"  v{e.a} -- v{e.b}{attr};")
        for l in sorted(self.loops, key=lambda l: l.vertex):
            lines.append(f'  v{l.vertex} -- v{l.vertex} [label="{l.branch_type}"];')
        lines.append("}")
        return "\n".join(lines)


def dual_graph(fiber: FiberDivisor, forest: BasePointForest) -> DualGraph:
    """Weighted colored dual graph of a fiber; edge weights are lattice
    pairings, local flags (tangency, concurrency, loops) come from the plane
    geometry and from residual data collected during resolution."""
    comps = fiber.components
    n = len(comps)
    mults = [c.mult for c in comps]
    colors = ["blue" if c.kind == "strict" else "black" for c in comps]
    labels = [c.label for c in comps]
    edges: list[Edge] = []
    spec = forest.pencil
    base_pts = {cl.base_point for cl in forest.clusters}

    def comp_poly(c: FiberComponent) -> HomPoly:
        if c.key[0] == "B":
            return spec.B.components[c.key[1]][0]
        return spec.gen2[c.key[1]][0]

    # contacts of strict pairs at surviving plane points
    plane_contacts: dict[tuple[int, int], list[Contact]] = {}
    point_tags: dict = {}
    for i in range(n):
        for j in range(i + 1, n):
            if comps[i].kind != "strict" or comps[j].kind != "strict":
                continue
            f, g = comp_poly(comps[i]), comp_poly(comps[j])
            pts, unresolved = solve_common_points(f, g)
            if unresolved:
                raise ClassificationError(
                    "strict components meet outside the field: "
                    + "; ".join(u.eliminant for u in unresolved))
            cons = []
            for pt in pts:
                if pt in base_pts:
                    continue
                im = intersection_multiplicity(f, g, pt)
                cons.append(Contact(repr(pt), im, im > 1))
                point_tags.setdefault(pt, set()).update({i, j})
            if cons:
                plane_contacts[(i, j)] = cons

    # residual crossings over the clusters
    keymap = {c.key: idx for idx, c in enumerate(comps)}

    def resolve_key(key):
        if key and key[0] == "E":
            return keymap.get((key[1], key[2]))
        return keymap.get(key)

    for rc in forest.residual_crossings:
        ia = resolve_key(rc.comp_a)
        ib = resolve_key(rc.comp_b)
        if ia is None or ib is None:
            continue
        a, b = min(ia, ib), max(ia, ib)
        plane_contacts.setdefault((a, b), []).append(
            Contact(rc.note, rc.imult, rc.tangential))

    for i in range(n):
        for j in range(i + 1, n):
            w = comps[i].cls.pair(comps[j].cls)
            if w < 0:
                raise ClassificationError("negative pairing between fiber components")
            if w == 0:
                continue
            contacts = list(plane_contacts.get((i, j), []))
            total = sum(c.imult for c in contacts)
            if comps[i].kind == "strict" and comps[j].kind == "strict":
                if total != w:
                    raise ClassificationError(
                        f"pairing {w} between {labels[i]} and {labels[j]} does not "
                        f"match local contacts {total}")
            elif total < w:
                # remaining crossings happen transversally at blow-up centers
                contacts.extend(Contact("at a blown-up center", 1, False)
                                for _ in range(w - total))
            edges.append(Edge(i, j, w, contacts))

    loops = _strict_loops(fiber, forest, keymap, base_pts, comp_poly)
    concurrency = [tuple(sorted(v)) for pt, v in sorted(
        point_tags.items(), key=lambda kv: kv[0].sort_key()) if len(v) >= 3]
    return DualGraph(mults, colors, labels, edges, loops, concurrency)


def _strict_loops(fiber, forest, keymap, base_pts, comp_poly):
    loops = []
    for idx, c in enumerate(fiber.components):
        if c.kind != "strict":
            continue
        p = comp_poly(c)
        if p.degree >= 3:
            rep = singular_points(CurveDivisor([(p, 1)]))
            if rep.unresolved:
                raise ClassificationError(
                    "singular locus of a component outside the field: "
                    + "; ".join(u.eliminant for u in rep.unresolved))
            for info in rep.points:
                if info.point in base_pts:
                    continue
                loops.append(Loop(idx, info.branch_type))
    for rs in forest.residual_singularities:
        idx = keymap.get(rs.comp_key)
        if idx is not None:
            loops.append(Loop(idx, rs.branch_type))
    return loops


# ---------------------------------------------------------------------------
# Kodaira classification


@dataclass
class KodairaType:
    label: str          # "I0", "I1", ..., "II", "III", "IV", "I0*", ..., "II*"
    n_components: int

    @property
    def is_multiplicative(self) -> bool:
        return self.label.startswith("I") and not self.label.endswith("*")

    def __str__(self):
        return self.label


COMPONENT_COUNTS = {"II": 1, "III": 2, "IV": 3, "IV*": 7, "III*": 8, "II*": 9}


def classify_kodaira(g: DualGraph) -> KodairaType:
    """Match a fiber dual graph against Kodaira's table."""
    n = g.n
    mults = sorted(g.mults)
    if n == 1:
        if g.mults[0] != 1:
            raise NoMatch(f"single component of multiplicity {g.mults[0]}")
        if not g.loops:
            return KodairaType("I0", 1)
        if len(g.loops) == 1:
            bt = g.loops[0].branch_type
            if bt == BRANCH_NODE:
                return KodairaType("I1", 1)
            if bt == BRANCH_CUSP:
                return KodairaType("II", 1)
        raise NoMatch(f"irreducible fiber with singularities {g.loops}")
    if g.loops:
        raise NoMatch("reducible fiber with a singular component")
    if mults == [1] * n:
        if n == 2:
            e = g.edges[0] if g.edges else None
            if e is None or e.weight != 2:
                raise NoMatch("two components must meet twice in a fiber")
            tang = [c for c in e.contacts if c.tangential]
            if len(e.contacts) == 1 and tang:
                return KodairaType("III", 2)
            if len(e.contacts) == 2 and not tang:
                return KodairaType("I2", 2)
            raise NoMatch(f"ambiguous two-component contact {e.contacts}")
        if n == 3 and len(g.edges) == 3 and all(e.weight == 1 for e in g.edges):
            if g.concurrency:
                return KodairaType("IV", 3)
            return KodairaType("I3", 3)
        # general cycle
        adj = g.adjacency()
        if all(sum(w for _, w in adj[v]) == 2 for v in range(n)) and _connected(g):
            if g.concurrency:
                raise NoMatch("cycle with a concurrency flag")
            return KodairaType(f"I{n}", n)
        raise NoMatch("reduced fiber that is not a cycle")
    return _classify_star(g)


def _connected(g: DualGraph) -> bool:
    if g.n == 0:
        return False
    seen = {0}
    stack = [0]
    adj = g.adjacency()
    while stack:
        v = stack.pop()
        for u, _ in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == g.n


def _template_dstar(n: int):
    """Affine D_{4+n}: chain of (n+1) vertices of multiplicity 2 with two
    multiplicity-1 legs at each end."""
    mults = [2] * (n + 1) + [1, 1, 1, 1]
    edges = [(i, i + 1) for i in range(n)]
    legs = [(0, n + 1), (0, n + 2), (n, n + 3), (n, n + 4)]
    return mults, edges + legs


def _template_e6():
    # IV*: central 3 with three arms 2-1
    mults = [3, 2, 1, 2, 1, 2, 1]
    edges = [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]
    return mults, edges


def _template_e7():
    # III*: 1-2-3-4-3-2-1 with 2 hanging off the central 4
    mults = [1, 2, 3, 4, 3, 2, 1, 2]
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)]
    return mults, edges


def _template_e8():
    # II*: 1-2-3-4-5-6-4-2 with 3 hanging off the 6
    mults = [1, 2, 3, 4, 5, 6, 4, 2, 3]
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)]
    return mults, edges


def _classify_star(g: DualGraph) -> KodairaType:
    n = g.n
    mults = sorted(g.mults)
    for e in g.edges:
        if e.weight != 1:
            raise NoMatch("non-reduced fiber with a multiple edge")
        for c in e.contacts:
            if c.tangential:
                raise NoMatch("non-reduced fiber with a tangential contact")
    candidates = []
    if mults == sorted([2] * (n - 4) + [1] * 4) and n >= 5:
        candidates.append((f"I{n-5}*", _template_dstar(n - 5)))
    if mults == [1, 1, 1, 2, 2, 2, 3]:
        candidates.append(("IV*", _template_e6()))
    if mults == [1, 1, 2, 2, 2, 3, 3, 4]:
        candidates.append(("III*", _template_e7()))
    if mults == [1, 2, 2, 3, 3, 4, 4, 5, 6]:
        candidates.append(("II*", _template_e8()))
    for label, (tm, te) in candidates:
        if _isomorphic(g, tm, te):
            return KodairaType(label, n)
    raise NoMatch(f"no Kodaira type matches multiplicities {mults} "
                  f"with {len(g.edges)} edges")


def _isomorphic(g: DualGraph, tmults: list[int], tedges: list[tuple]) -> bool:
    n = g.n
    if len(tmults) != n:
        return False
    gadj = {(e.a, e.b) for e in g.edges} | {(e.b, e.a) for e in g.edges}
    if len(g.edges) != len(tedges):
        return False
    tadj = {frozenset(e) for e in tedges}
    tdeg = {i: 0 for i in range(n)}
    for a, b in tedges:
        tdeg[a] += 1
        tdeg[b] += 1
    gdeg = {i: 0 for i in range(n)}
    for e in g.edges:
        gdeg[e.a] += 1
        gdeg[e.b] += 1
    # backtracking on vertices sorted by (mult, degree) signature
    order = sorted(range(n), key=lambda v: (-g.mults[v], -gdeg[v]))
    cands = {v: [t for t in range(n)
                 if tmults[t] == g.mults[v] and tdeg[t] == gdeg[v]]
             for v in order}

    assignment: dict[int, int] = {}

    def backtrack(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for t in cands[v]:
            if t in assignment.values():
                continue
            ok = True
            for u, tu in assignment.items():
                has_g = (v, u) in gadj
                has_t = frozenset((t, tu)) in tadj
                if has_g != has_t:
                    ok = False
                    break
            if ok:
                assignment[v] = t
                if backtrack(k + 1):
                    return True
                del assignment[v]
        return False

    return backtrack(0)


# ---------------------------------------------------------------------------
# multiple fiber and counting identity


@dataclass
class MultipleFiberReport:
    kodaira: KodairaType
    n_absorbed: int          # n_{E \ C}
    divisor: FiberDivisor
    graph: DualGraph


def multiple_fiber(forest: BasePointForest) -> MultipleFiberReport:
    """Classify the reduced multiple fiber (must be of type I_n)."""
    div = multiple_fiber_divisor(forest)
    g = dual_graph(div, forest)
    try:
        kt = classify_kodaira(g)
    except NoMatch as e:
        raise InvalidMultipleFiber(str(e))
    if not kt.is_multiplicative:
        raise InvalidMultipleFiber(f"multiple fiber of type {kt}")
    n_abs = sum(1 for c in div.components if c.kind == "exc")
    if kt.label not in ("I0",) and int(kt.label[1:]) > 9:
        raise InvalidMultipleFiber(f"multiple fiber {kt} has too many components")
    return MultipleFiberReport(kt, n_abs, div, g)


def check_component_count(fiber: FiberDivisor, forest: BasePointForest,
                          mult_report: MultipleFiberReport) -> bool:
    """n_F = n_B + 9 - k - n_{E\\C}."""
    spec = forest.pencil
    n_B = spec.B.n_components
    return fiber.n_components == n_B + 9 - forest.k - mult_report.n_absorbed


def fiber_lattice_checks(fiber: FiberDivisor, forest: BasePointForest) -> list[tuple[str, bool, str]]:
    """Exact lattice invariants: <F,F>=0, <F,K>=0, component self-pairings,
    chain ends are -1 multisections."""
    out = []
    n = forest.total_points()
    K = canonical_class(n)
    F = fiber.total_class()
    out.append(("<F,F> = 0", F.pair(F) == 0, str(F.pair(F))))
    out.append(("<F,K> = 0", F.pair(K) == 0, str(F.pair(K))))
    for c in fiber.components:
        s = c.cls.pair(c.cls)
        out.append((f"{c.label} self-intersection >= -2 and != -1",
                    s >= -2 and s != -1, str(s)))
    for j, cl in enumerate(forest.clusters):
        last = pic_class_exceptional(forest, j, cl.length)
        out.append((f"cluster {j}: chain end is a (-1)-curve",
                    last.pair(last) == -1, str(last.pair(last))))
        negk = PicClass(3, (1,) * n)
        out.append((f"cluster {j}: chain end meets -K once",
                    last.pair(negk) == 1, str(last.pair(negk))))
        for p in cl.points:
            if p.level < cl.length:
                mid = pic_class_exceptional(forest, j, p.level)
                out.append((f"cluster {j} level {p.level}: interior chain (-2)",
                            mid.pair(mid) == -2, str(mid.pair(mid))))
    return out


def black_adjacency_check(g: DualGraph) -> bool:
    """Every exceptional (black) vertex is adjacent to at most two other
    black vertices."""
    adj = g.adjacency()
    for v in range(g.n):
        if g.colors[v] != "black":
            continue
        black_neighbors = sum(1 for u, w in adj[v] if g.colors[u] == "black")
        if black_neighbors > 2:
            return False
    return True
