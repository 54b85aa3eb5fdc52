"""Sparse exact polynomials over Q(sqrt(d)): homogeneous ternary forms for
plane curves, bivariate affine germs for local charts, and the univariate
machinery (gcd, resultants, root finding) everything else is built on.

Univariate factorization over Q is delegated to sympy; all other arithmetic
is done here directly so the hot paths stay exact and fast.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .qfield import QF, QuadField, QQ, qf_sqrt


class PolynomialError(ValueError):
    pass


# ---------------------------------------------------------------------------
# projective points


class ProjPoint:
    """Point of P^2 over the working field, stored in normalized form
    (first nonzero coordinate scaled to 1)."""

    __slots__ = ("coords",)

    def __init__(self, x, y, z, field: QuadField | None = None):
        cs = []
        for c in (x, y, z):
            if not isinstance(c, QF):
                if field is None:
                    raise ValueError("field required for raw coordinates")
                c = QF(c, 0, field)
            cs.append(c)
        if not any(cs):
            raise InvalidPoint("all-zero projective point")
        lead = next(c for c in cs if c)
        inv = lead.inverse()
        self.coords = tuple(c * inv for c in cs)

    @property
    def field(self) -> QuadField:
        return self.coords[0].field

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def sort_key(self):
        return tuple(c.sort_key() for c in self.coords)

    def __repr__(self):
        return "(" + ":".join(repr(c) for c in self.coords) + ")"


class InvalidPoint(ValueError):
    pass


# ---------------------------------------------------------------------------
# dense univariate helpers (coefficient lists, low degree first)


def _utrim(cs: list[QF]) -> list[QF]:
    while cs and not cs[-1]:
        cs.pop()
    return cs


def _uadd(f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else None
        b = g[i] if i < len(g) else None
        out.append(a + b if (a is not None and b is not None) else (a if a is not None else b))
    return _utrim(out)


def _uneg(f):
    return [-c for c in f]

def _uscale(f, s: QF):
    if not s:
        return []
    return _utrim([c * s for c in f])


def _umul(f, g):
    if not f or not g:
        return []
    fld = f[0].field
    out = [fld.zero for _ in range(len(f) + len(g) - 1)]
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = out[i + j] + a * b
    return _utrim(out)


def _udivmod(f, g):
    """Exact-field division with remainder; g nonzero."""
    if not g:
        raise ZeroDivisionError("univariate division by zero")
    f = list(f)
    q = []
    dg = len(g) - 1
    inv = g[-1].inverse()
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv
        k = len(f) - 1 - dg
        q.append((k, c))
        for i, b in enumerate(g):
            f[k + i] = f[k + i] - c * b
        _utrim(f)
    if q:
        fld = q[0][1].field
        qq = [fld.zero] * (max(k for k, _ in q) + 1)
        for k, c in q:
            qq[k] = c
    else:
        qq = []
    return _utrim(qq), f


def _ugcd(f, g):
    f, g = list(f), list(g)
    while g:
        _, r = _udivmod(f, g)
        f, g = g, r
    if f:
        inv = f[-1].inverse()
        f = [c * inv for c in f]
    return f


def _uderiv(f):
    return _utrim([f[i] * i for i in range(1, len(f))])


def _ueval(f, x: QF):
    fld = x.field
    out = fld.zero
    for c in reversed(f):
        out = out * x + c
    return out


def _uexact_div(f, g):
    q, r = _udivmod(f, g)
    if r:
        raise PolynomialError("inexact univariate division")
    return q


# sympy is used only to factor rational univariate polynomials
_SYMPY_T = None


def _rational_factors(cs: list[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Irreducible monic factors over Q of a rational coefficient list."""
    global _SYMPY_T
    import sympy
    if _SYMPY_T is None:
        _SYMPY_T = sympy.Symbol("_t")
    t = _SYMPY_T
    expr = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(cs)], t, domain="QQ")
    _, fl = expr.factor_list()
    out = []
    for fac, mult in fl:
        coeffs = list(reversed(fac.all_coeffs()))
        fl_coeffs = [Fraction(sympy.Rational(c).p, sympy.Rational(c).q) for c in coeffs]
        lead = fl_coeffs[-1]
        out.append(([c / lead for c in fl_coeffs], mult))
    return out


def uroots_in_field(f: list[QF], field: QuadField):
    """All roots of f lying in Q(sqrt d), with multiplicities, plus the
    unsplit remainder factor (constant when f splits completely)."""
    if not f:
        raise PolynomialError("root finding on the zero polynomial")
    if len(f) == 1:
        return [], f
    if all(c.is_rational for c in f):
        norm = [c.a for c in f]
    else:
        conj = [c.conj() for c in f]
        prod = _umul(f, conj)
        norm = [c.a for c in prod]
    cands: list[QF] = []
    for fac, _ in _rational_factors(norm):
        if len(fac) == 2:  # t + c
            cands.append(QF(-fac[0], 0, field))
        elif len(fac) == 3 and field.d != 1:  # t^2 + p t + q, irreducible over Q
            p, q = fac[1], fac[0]
            disc = p * p - 4 * q
            s2 = disc / field.d
            from .qfield import _frac_sqrt
            s = _frac_sqrt(s2)
            if s is not None:
                cands.append(QF(-p / 2, s / 2, field))
                cands.append(QF(-p / 2, -s / 2, field))
    roots = []
    rem = list(f)
    for cand in cands:
        mult = 0
        while len(rem) > 1 and not _ueval(rem, cand):
            rem = _uexact_div(rem, [-cand, field.one])
            mult += 1
        if mult:
            roots.append((cand, mult))
    roots.sort(key=lambda rm: rm[0].sort_key())
    return roots, rem


# ---------------------------------------------------------------------------
# sparse multivariate core (shared by HomPoly / AffinePoly)


def _dict_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k)
        if w is None:
            out[k] = v
        else:
            s = w + v
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def _dict_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            w = out.get(k)
            if w is None:
                out[k] = va * vb
            else:
                s = w + va * vb
                if s:
                    out[k] = s
                else:
                    del out[k]
    return out


def _dict_scale(a: dict, s: QF) -> dict:
    if not s:
        return {}
    return {k: v * s for k, v in a.items()}


class _BasePoly:
    __slots__ = ("coeffs", "field")
    NVARS = 0

    def __init__(self, coeffs: dict, field: QuadField):
        self.coeffs = {k: v for k, v in coeffs.items() if v}
        self.field = field

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (type(self) is type(other) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((type(self).__name__, frozenset(self.coeffs.items())))

    def __add__(self, other):
        self._check(other)
        return type(self)(_dict_add(self.coeffs, other.coeffs), self.field)

    def __neg__(self):
        return type(self)({k: -v for k, v in self.coeffs.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QF)):
            s = other if isinstance(other, QF) else QF(other, 0, self.field)
            return type(self)(_dict_scale(self.coeffs, s), self.field)
        self._check(other)
        return type(self)(_dict_mul(self.coeffs, other.coeffs), self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = type(self).constant(self.field.one, self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _check(self, other):
        if type(self) is not type(other) or self.field != other.field:
            raise PolynomialError("incompatible polynomial operands")

    @classmethod
    def constant(cls, c: QF, field: QuadField):
        return cls({(0,) * cls.NVARS: c} if c else {}, field)

    @property
    def total_degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(sum(k) for k in self.coeffs)

    @property
    def order(self) -> int:
        """Order of vanishing at the origin (min total degree); -1 for 0."""
        if not self.coeffs:
            return -1
        return min(sum(k) for k in self.coeffs)

    def content_normalized(self):
        """Scale so the lexicographically smallest exponent's coefficient is 1."""
        if not self.coeffs:
            return self
        k0 = min(self.coeffs)
        return self * self.coeffs[k0].inverse()


# ---------------------------------------------------------------------------


class HomPoly(_BasePoly):
    """Homogeneous polynomial in x, y, z over Q(sqrt d)."""

    NVARS = 3
    VARS = ("x", "y", "z")

    def __init__(self, coeffs: dict, field: QuadField):
        super().__init__(coeffs, field)
        degs = {sum(k) for k in self.coeffs}
        if len(degs) > 1:
            raise PolynomialError(f"not homogeneous: degrees {sorted(degs)}")

    @property
    def degree(self) -> int:
        return self.total_degree

    @classmethod
    def parse(cls, text: str, field: QuadField = QQ, params: dict | None = None) -> "HomPoly":
        d = _parse_to_dict(text, ("x", "y", "z"), field, params)
        return cls(d, field)

    def eval(self, pt) -> QF:
        """Evaluate at a projective point (representative-dependent value;
        vanishing is representative-independent)."""
        if isinstance(pt, ProjPoint):
            cs = pt.coords
        else:
            cs = tuple(c if isinstance(c, QF) else QF(c, 0, self.field) for c in pt)
            if not any(cs):
                raise InvalidPoint("all-zero projective point")
        out = self.field.zero
        for (i, j, k), v in self.coeffs.items():
            out = out + v * cs[0] ** i * cs[1] ** j * cs[2] ** k
        return out

    def derivative(self, var: int) -> "HomPoly":
        out = {}
        for k, v in self.coeffs.items():
            if k[var]:
                kk = list(k)
                kk[var] -= 1
                out[tuple(kk)] = v * k[var]
        return HomPoly(out, self.field)

    def dehomogenize(self, chart: int) -> "AffinePoly":
        """Set coordinate `chart` to 1; remaining two keep their cyclic order
        (chart z=2 -> (x,y); chart y=1 -> (x,z); chart x=0 -> (y,z))."""
        rest = [i for i in range(3) if i != chart]
        out = {}
        for k, v in self.coeffs.items():
            key = (k[rest[0]], k[rest[1]])
            out[key] = out.get(key, self.field.zero) + v
        return AffinePoly(out, self.field)

    def translate_to_chart(self, pt: ProjPoint) -> tuple["AffinePoly", int]:
        """Local germ at pt: dehomogenize at a chart where pt is finite and
        translate pt to the origin.  Returns (germ, chart)."""
        chart = max(i for i in range(3) if pt.coords[i])
        aff = self.dehomogenize(chart)
        rest = [i for i in range(3) if i != chart]
        a = pt.coords[rest[0]] / pt.coords[chart]
        b = pt.coords[rest[1]] / pt.coords[chart]
        return aff.translate(a, b), chart

    def is_proportional(self, other: "HomPoly") -> bool:
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if set(self.coeffs) != set(other.coeffs):
            return False
        k0 = min(self.coeffs)
        ratio = other.coeffs[k0] / self.coeffs[k0]
        return all(other.coeffs[k] == v * ratio for k, v in self.coeffs.items())

    def text(self) -> str:
        return _poly_text(self.coeffs, self.VARS)

    def __repr__(self):
        return f"HomPoly({self.text()})"


class AffinePoly(_BasePoly):
    """Polynomial in two affine variables over Q(sqrt d)."""

    NVARS = 2
    VARS = ("x", "y")

    @classmethod
    def parse(cls, text: str, field: QuadField = QQ, vars=("x", "y"),
              params: dict | None = None) -> "AffinePoly":
        d = _parse_to_dict(text, tuple(vars), field, params)
        return cls(d, field)

    def eval(self, x: QF, y: QF) -> QF:
        out = self.field.zero
        for (i, j), v in self.coeffs.items():
            out = out + v * x ** i * y ** j
        return out

    def derivative(self, var: int) -> "AffinePoly":
        out = {}
        for k, v in self.coeffs.items():
            if k[var]:
                kk = list(k)
                kk[var] -= 1
                out[tuple(kk)] = v * k[var]
        return AffinePoly(out, self.field)

    def translate(self, a: QF, b: QF) -> "AffinePoly":
        """Substitute x -> x+a, y -> y+b."""
        if not a and not b:
            return self
        fld = self.field
        xa = AffinePoly({(1, 0): fld.one, (0, 0): a}, fld)
        yb = AffinePoly({(0, 1): fld.one, (0, 0): b}, fld)
        # Horner-style by total exponent would be fancier; sizes are tiny.
        out = AffinePoly({}, fld)
        xpows = {0: AffinePoly.constant(fld.one, fld)}
        ypows = {0: AffinePoly.constant(fld.one, fld)}
        for (i, j), v in self.coeffs.items():
            if i not in xpows:
                xpows[i] = xa ** i
            if j not in ypows:
                ypows[j] = yb ** j
            out = out + xpows[i] * ypows[j] * v
        return out

    def lowest_form(self) -> "AffinePoly":
        """Sum of the minimal-total-degree monomials (tangent cone form)."""
        if not self.coeffs:
            return self
        m = self.order
        return AffinePoly({k: v for k, v in self.coeffs.items() if sum(k) == m},
                          self.field)

    # blow-up substitutions: chart A (x,y)->(u,uv), chart B (x,y)->(uv,v).
    def blowup_chart_a(self) -> "AffinePoly":
        return AffinePoly({(i + j, j): v for (i, j), v in self.coeffs.items()},
                          self.field)

    def blowup_chart_b(self) -> "AffinePoly":
        return AffinePoly({(i, i + j): v for (i, j), v in self.coeffs.items()},
                          self.field)

    def shift_down(self, var: int, k: int) -> "AffinePoly":
        """Exact division by var^k (every monomial must carry it)."""
        out = {}
        for key, v in self.coeffs.items():
            if key[var] < k:
                raise PolynomialError(f"not divisible by var{var}^{k}")
            kk = list(key)
            kk[var] -= k
            out[tuple(kk)] = v
        return AffinePoly(out, self.field)

    def var_order(self, var: int) -> int:
        """Min exponent of `var` (how many times var divides); -1 for 0."""
        if not self.coeffs:
            return -1
        return min(k[var] for k in self.coeffs)

    def restrict(self, var: int, value: QF) -> "AffinePoly":
        """Substitute var=value, producing a univariate poly in the other var."""
        other = 1 - var
        out: dict = {}
        for k, v in self.coeffs.items():
            c = v * value ** k[var]
            if not c:
                continue
            key = (k[other], 0) if other == 0 else (0, k[other])
            w = out.get(key)
            out[key] = c if w is None else w + c
        return AffinePoly({k: v for k, v in out.items() if v}, self.field)

    def degree_in(self, var: int) -> int:
        if not self.coeffs:
            return -1
        return max(k[var] for k in self.coeffs)

    def univariate(self, var: int) -> list[QF]:
        """Dense coefficient list in `var` (fails if the other var appears)."""
        other = 1 - var
        if any(k[other] for k in self.coeffs):
            raise PolynomialError("not univariate")
        n = self.degree_in(var)
        out = [self.field.zero] * (n + 1)
        for k, v in self.coeffs.items():
            out[k[var]] = v
        return out

    def coeff_polys(self, var: int) -> list[list[QF]]:
        """View as polynomial in `var` with univariate coefficients in the
        other variable (dense lists)."""
        other = 1 - var
        n = self.degree_in(var)
        m = self.degree_in(other)
        out = [[self.field.zero] * (m + 1) for _ in range(n + 1)]
        for k, v in self.coeffs.items():
            out[k[var]][k[other]] = v
        return [_utrim(c) for c in out]

    @classmethod
    def from_coeff_polys(cls, coeffs: list[list[QF]], var: int, field) -> "AffinePoly":
        out = {}
        for i, c in enumerate(coeffs):
            for j, v in enumerate(c):
                if v:
                    key = (i, j) if var == 0 else (j, i)
                    out[key] = v
        return cls(out, field)

    def text(self, vars=None) -> str:
        return _poly_text(self.coeffs, vars or self.VARS)

    def __repr__(self):
        return f"AffinePoly({self.text()})"


# ---------------------------------------------------------------------------
# resultants


def resultant(f: AffinePoly, g: AffinePoly, var: int) -> AffinePoly:
    """Sylvester resultant of f and g with respect to `var`; the result is
    univariate in the other variable.  Vanishes identically iff f and g share
    a factor of positive degree in `var`."""
    if f.is_zero or g.is_zero:
        raise PolynomialError("resultant of zero polynomial")
    fld = f.field
    m = f.degree_in(var)
    n = g.degree_in(var)
    other = 1 - var
    if m == 0 and n == 0:
        return AffinePoly.constant(fld.one, fld)
    fc = f.coeff_polys(var)  # index = power of var
    gc = g.coeff_polys(var)
    if m == 0:
        acc = [fld.one]
        for _ in range(n):
            acc = _umul(acc, fc[0])
        return _ulist_to_affine(acc, other, fld)
    if n == 0:
        acc = [fld.one]
        for _ in range(m):
            acc = _umul(acc, gc[0])
        return _ulist_to_affine(acc, other, fld)
    size = m + n
    mat: list[list[list[QF]]] = []
    frow = list(reversed(fc))  # leading first
    grow = list(reversed(gc))
    for i in range(n):
        row = [[] for _ in range(size)]
        for j, c in enumerate(frow):
            row[i + j] = list(c)
        mat.append(row)
    for i in range(m):
        row = [[] for _ in range(size)]
        for j, c in enumerate(grow):
            row[i + j] = list(c)
        mat.append(row)
    det = _bareiss_det(mat, fld)
    return _ulist_to_affine(det, other, fld)


def _ulist_to_affine(cs: list[QF], var: int, fld) -> AffinePoly:
    out = {}
    for i, v in enumerate(cs):
        if v:
            out[(i, 0) if var == 0 else (0, i)] = v
    return AffinePoly(out, fld)


def _bareiss_det(mat: list[list[list[QF]]], fld) -> list[QF]:
    """Fraction-free determinant of a matrix with univariate entries."""
    n = len(mat)
    sign = 1
    prev = [fld.one]
    m = [row[:] for row in mat]
    for k in range(n - 1):
        if not m[k][k]:
            piv = next((i for i in range(k + 1, n) if m[i][k]), None)
            if piv is None:
                return []
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _uadd(_umul(m[i][j], m[k][k]), _uneg(_umul(m[i][k], m[k][j])))
                m[i][j] = _uexact_div(num, prev) if num else []
            m[i][k] = []
        prev = m[k][k]
    out = m[n - 1][n - 1]
    return _uscale(out, fld(sign)) if sign < 0 else out


def univariate_roots(f: AffinePoly):
    """Roots in the working field of a univariate AffinePoly, with
    multiplicities, plus the unsplit remainder (as AffinePoly in the same
    variable).  Raises if f is zero or genuinely bivariate."""
    if f.is_zero:
        raise PolynomialError("root finding on the zero polynomial")
    var = 0 if f.degree_in(1) == 0 else 1
    cs = f.univariate(var)
    roots, rem = uroots_in_field(cs, f.field)
    return roots, _ulist_to_affine(rem, var, f.field)


# ---------------------------------------------------------------------------
# parsing / printing


_TOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|([a-zA-Z_]\w*)|(\^)|(\*)|(\+)|(-)|(\()|(\)))")


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise PolynomialError(f"parse error at column {pos+1}: {text[pos:pos+10]!r}")
            break
        pos = m.end()
        num, name, caret, star, plus, minus, lp, rp = m.groups()
        if num:
            out.append(("num", Fraction(num)))
        elif name:
            out.append(("name", name))
        elif caret:
            out.append(("op", "^"))
        elif star:
            out.append(("op", "*"))
        elif plus:
            out.append(("op", "+"))
        elif minus:
            out.append(("op", "-"))
        elif lp:
            out.append(("op", "("))
        elif rp:
            out.append(("op", ")"))
    return out


class _Parser:
    def __init__(self, tokens, vars, field, params):
        self.toks = tokens
        self.i = 0
        self.vars = vars
        self.field = field
        self.params = params or {}

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        d = self.expr()
        if self.i != len(self.toks):
            raise PolynomialError(f"unexpected token {self.peek()[1]!r}")
        return d

    def expr(self):
        kind, val = self.peek()
        neg = False
        if kind == "op" and val in "+-":
            self.take()
            neg = val == "-"
        d = self.term()
        if neg:
            d = {k: -v for k, v in d.items()}
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                if val == "-":
                    t = {k: -v for k, v in t.items()}
                d = _dict_add(d, t)
            else:
                return d

    def term(self):
        d = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                d = _dict_mul(d, self.power())
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                d = _dict_mul(d, self.power())  # implicit multiplication
            else:
                return d

    def power(self):
        d = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k2, v2 = self.take()
            if k2 != "num" or v2.denominator != 1:
                raise PolynomialError("exponent must be a nonnegative integer")
            out = {(0,) * len(self.vars): self.field.one}
            for _ in range(int(v2)):
                out = _dict_mul(out, d)
            return out
        return d

    def atom(self):
        kind, val = self.take()
        zero_key = (0,) * len(self.vars)
        if kind == "num":
            return {zero_key: QF(val, 0, self.field)}
        if kind == "name":
            if val in self.vars:
                key = [0] * len(self.vars)
                key[self.vars.index(val)] = 1
                return {tuple(key): self.field.one}
            if val == "s":
                if self.field.d == 1:
                    raise PolynomialError("token 's' used but field is Q (d=1)")
                return {zero_key: self.field.sqrt_gen}
            if val in self.params:
                v = self.params[val]
                return {zero_key: v if isinstance(v, QF) else QF(v, 0, self.field)}
            raise PolynomialError(f"unknown symbol {val!r}")
        if kind == "op" and val == "(":
            d = self.expr()
            k2, v2 = self.take()
            if not (k2 == "op" and v2 == ")"):
                raise PolynomialError("missing ')'")
            return d
        if kind == "op" and val == "-":
            d = self.atom()
            return {k: -v for k, v in d.items()}
        raise PolynomialError(f"unexpected token {val!r}")


def _parse_to_dict(text, vars, field, params):
    d = _Parser(_tokenize(text), vars, field, params).parse()
    return {k: v for k, v in d.items() if v}


def _poly_text(coeffs, vars) -> str:
    if not coeffs:
        return "0"
    parts = []
    for key in sorted(coeffs, key=lambda k: (-sum(k), tuple(-e for e in k))):
        v = coeffs[key]
        mono = "*".join(
            f"{vars[i]}^{e}" if e > 1 else vars[i]
            for i, e in enumerate(key) if e
        )
        c = repr(v)
        if mono:
            if c == "1":
                parts.append(mono)
            elif c == "-1":
                parts.append(f"-{mono}")
            else:
                cc = f"({c})" if ("+" in c[1:] or "-" in c[1:]) else c
                parts.append(f"{cc}*{mono}")
        else:
            parts.append(f"({c})" if ("+" in c[1:] or "-" in c[1:]) else c)
    out = parts[0]
    for p in parts[1:]:
        out += f" + {p}" if not p.startswith("-") else f" - {p[1:]}"
    return out
