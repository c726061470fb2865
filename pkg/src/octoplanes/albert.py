"""Albert algebras H3(K; g1, g2, g3) over octonions and split octonions.

Elements are stored as 27 coordinates (l1, l2, l3; x1, x2, x3). The matrix
they stand for is

        [ l1            x3            g1 g3 conj(x2) ]
        [ g2 g1 conj(x3) l2           x1             ]
        [ x2            g3 g2 conj(x1) l3            ]

and the Jordan product is the symmetrized matrix product (XY + YX)/2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import compalg as ca
from .compalg import AlgebraElement, AlgebraKind, Family
from .scalars import CScalar, Scalar, format_scalar, parse_scalar

GAMMAS = ((1, 1, 1), (1, 1, -1))
HALF = Fraction(1, 2)


class AlbertMismatch(TypeError):
    pass


def _check_kind(kind: AlgebraKind) -> None:
    if not kind.family.hurwitz:
        raise ValueError("Albert algebras are built over octonions or split octonions")


class AlbertElement:
    __slots__ = ("l", "x", "gamma", "kind")

    def __init__(self, l, x, gamma=(1, 1, 1), kind: AlgebraKind = ca.O):
        _check_kind(kind)
        gamma = tuple(gamma)
        if gamma not in GAMMAS:
            raise ValueError(f"unsupported gamma {gamma}")
        self.l = tuple(kind.coerce(v) for v in l)
        xs = []
        for v in x:
            if isinstance(v, AlgebraElement):
                if v.kind != kind:
                    raise AlbertMismatch("off-diagonal entry of the wrong kind")
                xs.append(v)
            else:
                xs.append(AlgebraElement(v, kind))
        self.x = tuple(xs)
        if len(self.l) != 3 or len(self.x) != 3:
            raise ValueError("need three diagonal and three off-diagonal entries")
        self.gamma = gamma
        self.kind = kind

    @classmethod
    def _raw(cls, l, x, gamma, kind):
        e = object.__new__(cls)
        e.l = l
        e.x = x
        e.gamma = gamma
        e.kind = kind
        return e

    def _like(self, l, x):
        return AlbertElement._raw(tuple(l), tuple(x), self.gamma, self.kind)

    def _check(self, o):
        if not isinstance(o, AlbertElement) or o.gamma != self.gamma or o.kind != self.kind:
            raise AlbertMismatch("operands live in different Albert algebras")

    def __add__(self, o):
        self._check(o)
        return self._like([a + b for a, b in zip(self.l, o.l)], [a + b for a, b in zip(self.x, o.x)])

    def __sub__(self, o):
        self._check(o)
        return self._like([a - b for a, b in zip(self.l, o.l)], [a - b for a, b in zip(self.x, o.x)])

    def __neg__(self):
        return self._like([-a for a in self.l], [-a for a in self.x])

    def scale(self, s):
        return self._like([a * s for a in self.l], [a.scale(s) for a in self.x])

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, o):
        return (isinstance(o, AlbertElement) and o.gamma == self.gamma and o.kind == self.kind
                and o.l == self.l and o.x == self.x)

    def __hash__(self):
        return hash((self.l, self.x, self.gamma, self.kind))

    def __bool__(self):
        return any(self.l) or any(bool(v) for v in self.x)

    def coords(self) -> tuple:
        """The 27 coordinates in the order l1, l2, l3, x1, x2, x3."""
        return self.l + self.x[0].coords + self.x[1].coords + self.x[2].coords

    def __repr__(self):
        return format_albert(self)


def from_coords(coords, gamma=(1, 1, 1), kind: AlgebraKind = ca.O) -> AlbertElement:
    coords = list(coords)
    if len(coords) != 27:
        raise ValueError("27 coordinates expected")
    return AlbertElement(coords[:3], [coords[3:11], coords[11:19], coords[19:27]], gamma, kind)


def zero(gamma=(1, 1, 1), kind: AlgebraKind = ca.O) -> AlbertElement:
    z = kind.zero
    return AlbertElement._raw((z, z, z), (ca.zero_element(kind),) * 3, tuple(gamma), kind)


def identity(gamma=(1, 1, 1), kind: AlgebraKind = ca.O) -> AlbertElement:
    o = kind.one
    return AlbertElement._raw((o, o, o), (ca.zero_element(kind),) * 3, tuple(gamma), kind)


def basis_e(i: int, gamma=(1, 1, 1), kind: AlgebraKind = ca.O) -> AlbertElement:
    if i not in (1, 2, 3):
        raise IndexError("diagonal index must be 1, 2 or 3")
    z, o = kind.zero, kind.one
    l = tuple(o if k == i - 1 else z for k in range(3))
    return AlbertElement._raw(l, (ca.zero_element(kind),) * 3, tuple(gamma), kind)


# the off-diagonal slot holding entry (i, j) for i < j, and whether that entry is
# stored directly or as a twisted conjugate
_SLOT = {(2, 3): (0, False), (1, 3): (1, True), (1, 2): (2, False)}


def basis_iota(i: int, j: int, a: AlgebraElement, gamma=(1, 1, 1)) -> AlbertElement:
    """The element with a in position (i, j) and its twisted conjugate in (j, i)."""
    if not (1 <= i < j <= 3):
        raise IndexError("need 1 <= i < j <= 3")
    kind = a.kind
    gamma = tuple(gamma)
    slot, twisted = _SLOT[(i, j)]
    xs = [ca.zero_element(kind)] * 3
    if twisted:
        # position (1,3) holds g1 g3 conj(x2), so x2 = g1 g3 conj(a)
        xs[slot] = ca.conj(a).scale(gamma[0] * gamma[2])
    else:
        xs[slot] = a
    z = kind.zero
    return AlbertElement._raw((z, z, z), tuple(xs), gamma, kind)


# ---------------------------------------------------------------------------
# matrix rendering and the product

def _cscale(a: AlgebraElement, g: int) -> AlgebraElement:
    return a if g == 1 else -a


def entries(X: AlbertElement):
    """3x3 list: diagonal entries are scalars, the rest algebra elements."""
    g1, g2, g3 = X.gamma
    x1, x2, x3 = X.x
    c = ca.conj
    return [
        [X.l[0], x3, _cscale(c(x2), g1 * g3)],
        [_cscale(c(x3), g2 * g1), X.l[1], x1],
        [x2, _cscale(c(x1), g3 * g2), X.l[2]],
    ]


def _re_prod(spec, a: AlgebraElement, b: AlgebraElement):
    """Real part of a.b, i.e. half the polar form of a and conj(b)."""
    nd = spec.normdiag
    ac, bc = a.coords, b.coords
    acc = ac[0] * bc[0] if (ac[0] and bc[0]) else spec.kind.zero
    for k in range(1, 8):
        if ac[k] and bc[k]:
            acc = acc - ac[k] * bc[k] * nd[k]
    return acc


def _offdiag(spec, E, F, r, c):
    """(EF)_{rc} for r != c."""
    t = 3 - r - c
    out = ca.mul(spec, E[r][t], F[t][c])
    out = out + F[r][c].scale(E[r][r]) + E[r][c].scale(F[c][c])
    return out


def jordan_mul(X: AlbertElement, Y: AlbertElement) -> AlbertElement:
    X._check(Y)
    spec = ca.build_spec(X.kind)
    E, F = entries(X), entries(Y)
    lam = []
    for r in range(3):
        acc = X.l[r] * Y.l[r]
        half = X.kind.zero
        for j in range(3):
            if j != r:
                half = half + _re_prod(spec, E[r][j], F[j][r]) + _re_prod(spec, F[r][j], E[j][r])
        lam.append(acc + half * HALF)
    xs = []
    for r, c in ((1, 2), (2, 0), (0, 1)):
        v = _offdiag(spec, E, F, r, c) + _offdiag(spec, F, E, r, c)
        xs.append(v.scale(HALF))
    return X._like(lam, xs)


# ---------------------------------------------------------------------------
# cubic structure

def trace(X: AlbertElement):
    return X.l[0] + X.l[1] + X.l[2]


def _norms(X):
    spec = ca.build_spec(X.kind)
    return spec, [ca.norm(spec, v) for v in X.x]


def cubic_norm(X: AlbertElement):
    g1, g2, g3 = X.gamma
    l1, l2, l3 = X.l
    spec, (n1, n2, n3) = _norms(X)
    x1, x2, x3 = X.x
    t = ca.polar(spec, ca.mul(spec, x1, x2), ca.conj(x3))
    return l1 * l2 * l3 - l1 * n1 * (g2 * g3) - l2 * n2 * (g1 * g3) - l3 * n3 * (g1 * g2) + t


def cubic_term_product_form(X: AlbertElement):
    """(x1 x2) x3 + conj(x3)(conj(x2) conj(x1)), read as a multiple of the unit."""
    spec = ca.build_spec(X.kind)
    x1, x2, x3 = X.x
    c = ca.conj
    m = lambda a, b: ca.mul(spec, a, b)
    return m(m(x1, x2), x3) + m(c(x3), m(c(x2), c(x1)))


def quad_S(X: AlbertElement):
    g1, g2, g3 = X.gamma
    l1, l2, l3 = X.l
    _, (n1, n2, n3) = _norms(X)
    return l1 * l2 + l2 * l3 + l3 * l1 - n1 * (g2 * g3) - n2 * (g1 * g3) - n3 * (g1 * g2)


def pair_S(X: AlbertElement, Y: AlbertElement):
    return quad_S(X + Y) - quad_S(X) - quad_S(Y)


def trace_form(X: AlbertElement, Y: AlbertElement):
    return trace(X) * trace(Y) - pair_S(X, Y)


def norm_linearization(X: AlbertElement, Y: AlbertElement, Z: AlbertElement):
    """Full linearization N(X, Y, Z) with N(X, X, X) = N(X)."""
    N = cubic_norm
    s = (N(X + Y + Z) - N(X + Y) - N(X + Z) - N(Y + Z) + N(X) + N(Y) + N(Z))
    return s * Fraction(1, 6)


def sharp(X: AlbertElement) -> AlbertElement:
    g1, g2, g3 = X.gamma
    l1, l2, l3 = X.l
    spec, (n1, n2, n3) = _norms(X)
    x1, x2, x3 = X.x
    c = ca.conj
    m = lambda a, b: ca.mul(spec, a, b)
    lam = [l2 * l3 - n1 * (g2 * g3), l1 * l3 - n2 * (g1 * g3), l1 * l2 - n3 * (g1 * g2)]
    xs = [
        c(m(x2, x3)).scale(g2 * g3) - x1.scale(l1),
        c(m(x3, x1)).scale(g3 * g1) - x2.scale(l2),
        c(m(x1, x2)).scale(g1 * g2) - x3.scale(l3),
    ]
    return X._like(lam, xs)


def cross(X: AlbertElement, Y: AlbertElement) -> AlbertElement:
    """Freudenthal cross (X+Y)# - X# - Y#, so X x X = 2 X#."""
    X._check(Y)
    return sharp(X + Y) - sharp(X) - sharp(Y)


def cross_formula(X: AlbertElement, Y: AlbertElement) -> AlbertElement:
    """The same product through the Jordan structure:
    2 X.Y - Tr(X) Y - Tr(Y) X + (Tr X Tr Y - Tr(X.Y)) 1."""
    tx, ty = trace(X), trace(Y)
    xy = jordan_mul(X, Y)
    one = identity(X.gamma, X.kind)
    return xy.scale(2) - Y.scale(tx) - X.scale(ty) + one.scale(tx * ty - trace(xy))


def rank(X: AlbertElement) -> int:
    if cubic_norm(X):
        return 3
    if sharp(X):
        return 2
    return 1 if X else 0


@dataclass
class CubicReport:
    N: object
    trace: object
    S: object
    sharp: AlbertElement
    rank: int


def cubic_report(X: AlbertElement) -> CubicReport:
    return CubicReport(cubic_norm(X), trace(X), quad_S(X), sharp(X), rank(X))


def char_cubic_residual(X: AlbertElement) -> AlbertElement:
    """X.(X.X) - Tr(X) X.X + S(X) X - N(X) 1, which vanishes identically."""
    X2 = jordan_mul(X, X)
    X3 = jordan_mul(X, X2)
    one = identity(X.gamma, X.kind)
    return X3 - X2.scale(trace(X)) + X.scale(quad_S(X)) - one.scale(cubic_norm(X))


# ---------------------------------------------------------------------------
# sampling and text

def random_albert(rng, gamma=(1, 1, 1), kind: AlgebraKind = ca.O, lo: int = -3, hi: int = 3):
    if kind.complexified:
        l = [CScalar(Scalar(rng.randint(lo, hi)), Scalar(rng.randint(lo, hi))) for _ in range(3)]
    else:
        l = [Scalar(rng.randint(lo, hi)) for _ in range(3)]
    xs = [ca.random_element(kind, rng, lo, hi) for _ in range(3)]
    return AlbertElement._raw(tuple(l), tuple(xs), tuple(gamma), kind)


_KIND_NAMES = {
    "octonion": ca.O, "split-octonion": ca.OS,
    "octonion[C]": ca.O.complexify(), "split-octonion[C]": ca.OS.complexify(),
}


def _vec(vals):
    return "(" + ", ".join(format_scalar(v) for v in vals) + ")"


def format_albert(X: AlbertElement) -> str:
    g = ",".join(str(v) for v in X.gamma)
    return (f"albert gamma=({g}) kind={X.kind} l={_vec(X.l)} "
            f"x1={_vec(X.x[0].coords)} x2={_vec(X.x[1].coords)} x3={_vec(X.x[2].coords)}")


_ALBERT_RE = re.compile(
    r"^albert\s+gamma=\((?P<g>[^)]*)\)\s+kind=(?P<k>\S+)\s+l=\((?P<l>[^)]*)\)\s+"
    r"x1=\((?P<x1>[^)]*)\)\s+x2=\((?P<x2>[^)]*)\)\s+x3=\((?P<x3>[^)]*)\)\s*$")


def parse_albert(text: str) -> AlbertElement:
    m = _ALBERT_RE.match(text.strip())
    if not m:
        raise ValueError("malformed Albert element")
    gamma = tuple(int(v) for v in m.group("g").split(","))
    kind = _KIND_NAMES.get(m.group("k"))
    if kind is None:
        raise ValueError(f"unknown kind {m.group('k')!r}")
    parse = lambda s: [parse_scalar(v) for v in s.split(",")]
    return AlbertElement(parse(m.group("l")), [parse(m.group(n)) for n in ("x1", "x2", "x3")],
                         gamma, kind)
