"""Exact arithmetic in Q(sqrt 3) and Q(sqrt 3)(i).

A ``Scalar`` is stored as three integers ``(p, q, d)`` meaning ``(p + q*sqrt3)/d``
with ``d > 0`` and ``gcd(p, q, d) == 1``. That keeps the hot paths in plain
integer arithmetic; the rational coefficients are exposed as ``a`` and ``b``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

SQRT3_FLOAT = math.sqrt(3.0)


class ScalarZeroDivision(ZeroDivisionError):
    pass


def _make(p: int, q: int, d: int) -> "Scalar":
    s = object.__new__(Scalar)
    if d != 1:
        if d < 0:
            p, q, d = -p, -q, -d
        g = math.gcd(p, q, d)
        if g != 1:
            p //= g
            q //= g
            d //= g
    s._p = p
    s._q = q
    s._d = d
    return s


class Scalar:
    """The number a + b*sqrt(3) with a, b rational."""

    __slots__ = ("_p", "_q", "_d")

    def __init__(self, a=0, b=0):
        a = Fraction(a)
        b = Fraction(b)
        d = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        p = a.numerator * (d // a.denominator)
        q = b.numerator * (d // b.denominator)
        g = math.gcd(p, q, d)
        self._p = p // g
        self._q = q // g
        self._d = d // g

    @property
    def a(self) -> Fraction:
        return Fraction(self._p, self._d)

    @property
    def b(self) -> Fraction:
        return Fraction(self._q, self._d)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, o):
        if type(o) is not Scalar:
            if isinstance(o, int):
                return _make(self._p + o * self._d, self._q, self._d)
            if isinstance(o, Fraction):
                o = Scalar(o)
            else:
                return NotImplemented
        if self._d == o._d:
            return _make(self._p + o._p, self._q + o._q, self._d)
        return _make(self._p * o._d + o._p * self._d,
                     self._q * o._d + o._q * self._d, self._d * o._d)

    __radd__ = __add__

    def __neg__(self):
        s = object.__new__(Scalar)
        s._p = -self._p
        s._q = -self._q
        s._d = self._d
        return s

    def __pos__(self):
        return self

    def __sub__(self, o):
        if type(o) is not Scalar:
            if isinstance(o, int):
                return _make(self._p - o * self._d, self._q, self._d)
            if isinstance(o, Fraction):
                o = Scalar(o)
            else:
                return NotImplemented
        if self._d == o._d:
            return _make(self._p - o._p, self._q - o._q, self._d)
        return _make(self._p * o._d - o._p * self._d,
                     self._q * o._d - o._q * self._d, self._d * o._d)

    def __rsub__(self, o):
        return (-self).__add__(o)

    def __mul__(self, o):
        if type(o) is not Scalar:
            if isinstance(o, int):
                return _make(self._p * o, self._q * o, self._d)
            if isinstance(o, Fraction):
                o = Scalar(o)
            else:
                return NotImplemented
        p1, q1, p2, q2 = self._p, self._q, o._p, o._q
        return _make(p1 * p2 + 3 * q1 * q2, p1 * q2 + q1 * p2, self._d * o._d)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        p, q, d = self._p, self._q, self._d
        den = p * p - 3 * q * q
        if den == 0:
            # p = q = 0, since 3 is not a rational square
            raise ScalarZeroDivision("division by zero in Q(sqrt3)")
        return _make(p * d, -q * d, den)

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            o = Scalar(o)
        elif type(o) is not Scalar:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        return Scalar(o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        r = ONE
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    # -- comparison ---------------------------------------------------------

    def __eq__(self, o):
        if type(o) is Scalar:
            return self._p == o._p and self._q == o._q and self._d == o._d
        if isinstance(o, (int, Fraction)):
            return self._q == 0 and Fraction(self._p, self._d) == o
        if isinstance(o, CScalar):
            return o == self
        return NotImplemented

    def __hash__(self):
        if self._q == 0:
            return hash(Fraction(self._p, self._d))
        return hash((self._p, self._q, self._d))

    def __bool__(self):
        return self._p != 0 or self._q != 0

    def is_zero(self) -> bool:
        return self._p == 0 and self._q == 0

    def sign(self) -> int:
        return sign(self)

    def __lt__(self, o):
        return sign(self - o) < 0

    def __le__(self, o):
        return sign(self - o) <= 0

    def __gt__(self, o):
        return sign(self - o) > 0

    def __ge__(self, o):
        return sign(self - o) >= 0

    def conjugate(self) -> "Scalar":
        return self

    @property
    def real(self) -> "Scalar":
        return self

    @property
    def imag(self) -> "Scalar":
        return ZERO

    def __float__(self):
        return to_float(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


ZERO = _make(0, 0, 1)
ONE = _make(1, 0, 1)
SQRT3 = _make(0, 1, 1)


class CScalar:
    """re + i*im with re, im in Q(sqrt3)."""

    __slots__ = ("re", "im")

    def __init__(self, re=ZERO, im=ZERO):
        self.re = as_scalar(re)
        self.im = as_scalar(im)

    @staticmethod
    def _new(re, im):
        z = object.__new__(CScalar)
        z.re = re
        z.im = im
        return z

    @staticmethod
    def _lift(o):
        if type(o) is CScalar:
            return o
        if type(o) is Scalar or isinstance(o, (int, Fraction)):
            return CScalar(o, ZERO)
        return None

    def __add__(self, o):
        if type(o) is not CScalar:
            o = CScalar._lift(o)
            if o is None:
                return NotImplemented
        return CScalar._new(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return CScalar._new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, o):
        if type(o) is not CScalar:
            o = CScalar._lift(o)
            if o is None:
                return NotImplemented
        return CScalar._new(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return (-self).__add__(o)

    def __mul__(self, o):
        if type(o) is not CScalar:
            if type(o) is Scalar or isinstance(o, (int, Fraction)):
                return CScalar._new(as_scalar(self.re * o), as_scalar(self.im * o))
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not d:
            return CScalar._new(a * c, b * c)
        if not b:
            return CScalar._new(a * c, a * d)
        return CScalar._new(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "CScalar":
        den = self.re * self.re + self.im * self.im
        if not den:
            raise ScalarZeroDivision("division by zero in Q(sqrt3)(i)")
        inv = den.inverse()
        return CScalar(self.re * inv, -self.im * inv)

    def __truediv__(self, o):
        o = CScalar._lift(o)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        return CScalar._lift(o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        r = CScalar(ONE)
        for _ in range(n):
            r = r * self
        return r

    def conjugate(self) -> "CScalar":
        return CScalar(self.re, -self.im)

    @property
    def real(self) -> Scalar:
        return self.re

    @property
    def imag(self) -> Scalar:
        return self.im

    def __eq__(self, o):
        o2 = CScalar._lift(o)
        if o2 is None:
            return NotImplemented
        return self.re == o2.re and self.im == o2.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self) -> bool:
        return not self

    def __complex__(self):
        return complex(to_float(self.re), to_float(self.im))

    def __repr__(self):
        return f"CScalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)



def as_scalar(x) -> Scalar:
    if type(x) is Scalar:
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    if isinstance(x, str):
        r = parse_scalar(x)
        if isinstance(r, CScalar):
            raise TypeError("complex value where a real Scalar is required")
        return r
    raise TypeError(f"cannot interpret {x!r} as a Scalar")


def arith(op: str, x, y):
    """Dispatch one of add, sub, mul, div on two field elements."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if not y:
            raise ScalarZeroDivision("division by zero")
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def sign(x) -> int:
    """Exact sign of a + b*sqrt3."""
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    p, q = x._p, x._q
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sq == 0:
        return sp
    if sp == 0:
        return sq
    if sp == sq:
        return sp
    # opposite signs: compare p^2 with 3 q^2
    lhs = p * p
    rhs = 3 * q * q
    if lhs > rhs:
        return sp
    return sq


def to_float(x):
    """Nearest binary64 value; a (re, im) pair for CScalar."""
    if isinstance(x, CScalar):
        return (to_float(x.re), to_float(x.im))
    if isinstance(x, (int, Fraction)):
        return float(x)
    if x._q == 0:
        return x._p / x._d
    # exact rounding through Fraction for the rational part, then one product
    p, q, d = x._p, x._q, x._d
    if sign(x) == 0:
        return 0.0
    # high-precision evaluation: floor(sqrt(3 * 4^k)) gives sqrt3 to k bits
    k = 80 + max(p.bit_length(), q.bit_length(), d.bit_length())
    s = math.isqrt(3 << (2 * k))
    num = (p << k) + q * s
    return float(Fraction(num, d << k))


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def format_scalar(x) -> str:
    """Render as "a/b + c/d r3" (complex: "<re> ; <im> i")."""
    if isinstance(x, CScalar):
        return f"{format_scalar(x.re)} ; {format_scalar(x.im)} i"
    x = as_scalar(x)
    return f"{_frac_str(x.a)} + {_frac_str(x.b)} r3"


_RAT = r"(-?\d+)(?:/(\d+))?"
_SCALAR_RE = re.compile(rf"^\s*{_RAT}\s*\+\s*{_RAT}\s*r3\s*$")
_SHORT_RE = re.compile(rf"^\s*{_RAT}\s*$")


def _rat(n: str, d: str | None) -> Fraction:
    if d is not None and int(d) == 0:
        raise ValueError("zero denominator")
    return Fraction(int(n), int(d) if d else 1)


def parse_scalar(text: str):
    """Inverse of format_scalar; also accepts a bare rational like "-3/2"."""
    if ";" in text:
        re_part, _, im_part = text.partition(";")
        im_part = im_part.strip()
        if not im_part.endswith("i"):
            raise ValueError(f"malformed complex scalar {text!r}")
        return CScalar(parse_scalar(re_part), parse_scalar(im_part[:-1]))
    m = _SCALAR_RE.match(text)
    if m:
        return Scalar(_rat(m.group(1), m.group(2)), _rat(m.group(3), m.group(4)))
    m = _SHORT_RE.match(text)
    if m:
        return Scalar(_rat(m.group(1), m.group(2)))
    raise ValueError(f"malformed scalar {text!r}")


I = CScalar(ZERO, ONE)


def cplx(x) -> CScalar:
    if type(x) is CScalar:
        return x
    return CScalar(x, ZERO)
