"""Exact arithmetic in Q and in quadratic extensions Q(sqrt(d)).

A single extension per analysis session: the field is fixed by a square-free
integer d (d=1 means plain Q).  Elements are a + b*sqrt(d) with a, b exact
rationals; all operations are exact, equality is decidable.
"""

from __future__ import annotations

from fractions import Fraction


def _squarefree(n: int) -> bool:
    if n == 0:
        return False
    n = abs(n)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


class QuadField:
    """The field Q(sqrt(d)) for a fixed square-free integer d; d=1 is Q."""

    __slots__ = ("d",)

    def __init__(self, d: int = 1):
        if not _squarefree(d):
            raise ValueError(f"d must be a nonzero square-free integer, got {d}")
        self.d = d

    @property
    def is_rational(self) -> bool:
        return self.d == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadField) and self.d == other.d

    def __hash__(self):
        return hash(("QuadField", self.d))

    def __repr__(self):
        return "QQ" if self.d == 1 else f"QQ(sqrt({self.d}))"

    def __call__(self, a, b=0) -> QF:
        return QF(a, b, self)

    @property
    def zero(self) -> QF:
        return QF(0, 0, self)

    @property
    def one(self) -> QF:
        return QF(1, 0, self)

    @property
    def sqrt_gen(self) -> QF:
        """The element sqrt(d) (equals 1 when d=1)."""
        return QF(0, 1, self)


QQ = QuadField(1)


class QF:
    """Field element a + b*sqrt(d).  Immutable; b is folded into a when d=1."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a, b=0, field: QuadField = QQ):
        a = a if isinstance(a, Fraction) else Fraction(a)
        b = b if isinstance(b, Fraction) else Fraction(b)
        if field.d == 1 and b:
            a, b = a + b, Fraction(0)
        self.a = a
        self.b = b
        self.field = field

    # -- ring structure ------------------------------------------------

    def _coerce(self, other) -> "QF":
        if isinstance(other, QF):
            if other.field != self.field:
                raise ValueError(f"mixed fields {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return QF(other, 0, self.field)
        raise TypeError(f"cannot coerce {other!r}")

    def __add__(self, other):
        o = self._coerce(other)
        return QF(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __neg__(self):
        return QF(-self.a, -self.b, self.field)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        o = self._coerce(other)
        d = self.field.d
        return QF(self.a * o.a + d * self.b * o.b,
                  self.a * o.b + self.b * o.a, self.field)

    __rmul__ = __mul__

    def inverse(self) -> "QF":
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        # 1/(a+b*sqrt(d)) = (a-b*sqrt(d))/(a^2-d*b^2); the norm is nonzero
        # because d is not a rational square (d=1 has b=0).
        n = self.a * self.a - self.field.d * self.b * self.b
        return QF(self.a / n, -self.b / n, self.field)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QF(1, 0, self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates ----------------------------------------------------

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b, self.field.d))

    def conj(self) -> "QF":
        """Galois conjugate a - b*sqrt(d)."""
        return QF(self.a, -self.b, self.field)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is not rational")
        return self.a

    def sort_key(self):
        """Total order key: rational part before sqrt(d) part."""
        return (self.a, self.b)

    # -- display --------------------------------------------------------

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        s = f"s" if self.field.d != 1 else ""
        if self.a == 0:
            return f"{self.b}*{s}" if self.b != 1 else s
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*{s}"


def qf_sqrt(x: QF) -> QF | None:
    """A square root of x inside its own field, or None.

    Handles the cases needed for root finding: x rational with rational
    square root, or x rational equal to d times a rational square.
    """
    fld = x.field
    if x.b != 0:
        # a+b*sqrt(d) squares: try (p+q*sqrt(d))^2 = p^2+q^2 d + 2pq sqrt(d)
        # solve 2pq=b, p^2+d q^2=a: p^2 solves t^2 - a t + d (b/2)^2 = 0
        disc = x.a * x.a - fld.d * x.b * x.b
        r = _frac_sqrt(disc)
        if r is None:
            return None
        for s in (r, -r):
            p2 = (x.a + s) / 2
            p = _frac_sqrt(p2)
            if p is not None and p != 0:
                q = x.b / (2 * p)
                cand = QF(p, q, fld)
                if cand * cand == x:
                    return cand
        return None
    r = _frac_sqrt(x.a)
    if r is not None:
        return QF(r, 0, fld)
    if fld.d != 1:
        r = _frac_sqrt(x.a / fld.d)
        if r is not None:
            return QF(0, r, fld)
    return None


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = int(n ** 0.5)
    for c in (r - 1, r, r + 1, r + 2):
        if c >= 0 and c * c == n:
            return c
    # fall back to exact integer sqrt for big n
    import math
    c = math.isqrt(n)
    return c if c * c == n else None


def _frac_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    p = _isqrt_exact(x.numerator)
    if p is None:
        return None
    q = _isqrt_exact(x.denominator)
    if q is None:
        return None
    return Fraction(p, q)
