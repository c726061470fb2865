"""The six real 8-dimensional composition algebras and their complexifications.

Every table is generated from one source: the Okubo algebra realized on
traceless Hermitian 3x3 matrices. Octonions, paraoctonions and the split
variants are derived from it, so no sign convention is typed in by hand.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .scalars import CScalar, ONE, _make, SQRT3, ZERO, I, Scalar, as_scalar, cplx, format_scalar, parse_scalar

DIM = 8
HALF = Scalar(Fraction(1, 2))


class Family(enum.Enum):
    OCTONION = "octonion"
    SPLIT_OCTONION = "split-octonion"
    PARA_OCTONION = "para-octonion"
    SPLIT_PARA_OCTONION = "split-para-octonion"
    OKUBO = "okubo"
    SPLIT_OKUBO = "split-okubo"

    @property
    def split(self) -> bool:
        return self in (Family.SPLIT_OCTONION, Family.SPLIT_PARA_OCTONION, Family.SPLIT_OKUBO)

    @property
    def hurwitz(self) -> bool:
        return self in (Family.OCTONION, Family.SPLIT_OCTONION)

    @property
    def para(self) -> bool:
        return self in (Family.PARA_OCTONION, Family.SPLIT_PARA_OCTONION)

    @property
    def okubo(self) -> bool:
        return self in (Family.OKUBO, Family.SPLIT_OKUBO)

    @property
    def symmetric(self) -> bool:
        return self.para or self.okubo

    def with_split(self, split: bool) -> "Family":
        base = {
            Family.OCTONION: (Family.OCTONION, Family.SPLIT_OCTONION),
            Family.SPLIT_OCTONION: (Family.OCTONION, Family.SPLIT_OCTONION),
            Family.PARA_OCTONION: (Family.PARA_OCTONION, Family.SPLIT_PARA_OCTONION),
            Family.SPLIT_PARA_OCTONION: (Family.PARA_OCTONION, Family.SPLIT_PARA_OCTONION),
            Family.OKUBO: (Family.OKUBO, Family.SPLIT_OKUBO),
            Family.SPLIT_OKUBO: (Family.OKUBO, Family.SPLIT_OKUBO),
        }[self]
        return base[1] if split else base[0]


@dataclass(frozen=True)
class AlgebraKind:
    family: Family
    complexified: bool = False

    @property
    def zero(self):
        return CScalar(ZERO, ZERO) if self.complexified else ZERO

    @property
    def one(self):
        return CScalar(ONE, ZERO) if self.complexified else ONE

    def coerce(self, v):
        return cplx(v) if self.complexified else as_scalar(v)

    def complexify(self) -> "AlgebraKind":
        return AlgebraKind(self.family, True)

    def real(self) -> "AlgebraKind":
        return AlgebraKind(self.family, False)

    def __str__(self):
        return self.family.value + ("[C]" if self.complexified else "")


O = AlgebraKind(Family.OCTONION)
OS = AlgebraKind(Family.SPLIT_OCTONION)
PO = AlgebraKind(Family.PARA_OCTONION)
POS = AlgebraKind(Family.SPLIT_PARA_OCTONION)
OK = AlgebraKind(Family.OKUBO)
OKS = AlgebraKind(Family.SPLIT_OKUBO)
REAL_KINDS = (O, OS, PO, POS, OK, OKS)


class KindMismatch(TypeError):
    pass


class AlgebraElement:
    __slots__ = ("coords", "kind")

    def __init__(self, coords, kind: AlgebraKind):
        coords = tuple(kind.coerce(c) for c in coords)
        if len(coords) != DIM:
            raise ValueError("an algebra element has 8 coordinates")
        self.coords = coords
        self.kind = kind

    @classmethod
    def _raw(cls, coords, kind):
        e = object.__new__(cls)
        e.coords = coords
        e.kind = kind
        return e

    def _check(self, o):
        if not isinstance(o, AlgebraElement) or o.kind != self.kind:
            raise KindMismatch(f"{self.kind} vs {getattr(o, 'kind', type(o))}")

    def __add__(self, o):
        self._check(o)
        return AlgebraElement._raw(tuple(a + b for a, b in zip(self.coords, o.coords)), self.kind)

    def __sub__(self, o):
        self._check(o)
        return AlgebraElement._raw(tuple(a - b for a, b in zip(self.coords, o.coords)), self.kind)

    def __neg__(self):
        return AlgebraElement._raw(tuple(-a for a in self.coords), self.kind)

    def scale(self, s):
        s = self.kind.coerce(s) if not isinstance(s, (int, Fraction)) else s
        return AlgebraElement._raw(tuple(a * s for a in self.coords), self.kind)

    def __rmul__(self, s):
        if isinstance(s, (int, Fraction, Scalar, CScalar)):
            return self.scale(s)
        return NotImplemented

    def __mul__(self, o):
        if isinstance(o, AlgebraElement):
            return mul(build_spec(self.kind), self, o)
        if isinstance(o, (int, Fraction, Scalar, CScalar)):
            return self.scale(o)
        return NotImplemented

    def __eq__(self, o):
        return isinstance(o, AlgebraElement) and o.kind == self.kind and o.coords == self.coords

    def __hash__(self):
        return hash((self.coords, self.kind))

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        return f"AlgebraElement({', '.join(str(c) for c in self.coords)}; {self.kind})"


def element(kind: AlgebraKind, coords) -> AlgebraElement:
    return AlgebraElement(coords, kind)


def basis(kind: AlgebraKind, k: int) -> AlgebraElement:
    z, o = kind.zero, kind.one
    return AlgebraElement._raw(tuple(o if i == k else z for i in range(DIM)), kind)


def zero_element(kind: AlgebraKind) -> AlgebraElement:
    return AlgebraElement._raw((kind.zero,) * DIM, kind)


# ---------------------------------------------------------------------------
# structure-constant tables

@dataclass(frozen=True, eq=False)
class AlgebraSpec:
    kind: AlgebraKind
    # table[i][j] is a tuple of (k, coefficient) pairs, coefficients nonzero Scalars
    table: tuple
    normdiag: tuple
    _terms: tuple = field(repr=False, default=())
    _rterms: tuple = field(repr=False, default=())

    def constant(self, i: int, j: int, k: int) -> Scalar:
        for kk, c in self.table[i][j]:
            if kk == k:
                return c
        return ZERO

    def entries(self):
        """(i, j, k, c) for every nonzero constant, in lexicographic order."""
        for i in range(DIM):
            for j in range(DIM):
                for k, c in sorted(self.table[i][j]):
                    yield i, j, k, c

    def same_table(self, other: "AlgebraSpec") -> bool:
        return list(self.entries()) == list(other.entries()) and self.normdiag == other.normdiag


def _make_spec(kind: AlgebraKind, dense, normdiag) -> AlgebraSpec:
    """dense[i][j][k] -> Scalar."""
    table = []
    terms = []
    for i in range(DIM):
        row, trow = [], []
        for j in range(DIM):
            cell = tuple((k, dense[i][j][k]) for k in range(DIM) if dense[i][j][k])
            row.append(cell)
            tcell = []
            for k, c in cell:
                if c == 1:
                    tcell.append((k, 1, c))
                elif c == -1:
                    tcell.append((k, -1, c))
                else:
                    tcell.append((k, 0, c))
            trow.append(tuple(tcell))
        table.append(tuple(row))
        terms.append(tuple(trow))
    rterms = ()
    if all(not isinstance(c, CScalar) or not c.im for row in table for cell in row for _, c in cell):
        real = lambda c: c.re if isinstance(c, CScalar) else c
        rterms = tuple(tuple(tuple((k, real(c)._p, real(c)._q, real(c)._d) for k, c in cell)
                             for cell in row) for row in table)
    return AlgebraSpec(kind, tuple(table), tuple(normdiag), tuple(terms), rterms)


def _mul_real(spec: AlgebraSpec, x, y):
    """Real-scalar product on raw (p, q, d) integer triples; one normalization
    per output coordinate instead of one per term."""
    acc = [None] * DIM
    rterms = spec._rterms
    for i in range(DIM):
        xi = x[i]
        xp, xq, xd = xi._p, xi._q, xi._d
        if not (xp or xq):
            continue
        ti = rterms[i]
        for j in range(DIM):
            yj = y[j]
            yp, yq = yj._p, yj._q
            if not (yp or yq):
                continue
            pp = xp * yp + 3 * xq * yq
            pq = xp * yq + xq * yp
            pd = xd * yj._d
            for k, cp, cq, cd in ti[j]:
                if cq:
                    tp = pp * cp + 3 * pq * cq
                    tq = pp * cq + pq * cp
                else:
                    tp = pp * cp
                    tq = pq * cp
                td = pd * cd
                a = acc[k]
                if a is None:
                    acc[k] = [tp, tq, td]
                elif a[2] == td:
                    a[0] += tp
                    a[1] += tq
                else:
                    a[0] = a[0] * td + tp * a[2]
                    a[1] = a[1] * td + tq * a[2]
                    a[2] *= td
    return tuple(ZERO if a is None else _make(a[0], a[1], a[2]) for a in acc)


def _mul_complex(spec: AlgebraSpec, x, y):
    """(a + ib)(c + id) = (ac - bd) + i(ad + bc) with real constants."""
    a = tuple(v.re for v in x)
    b = tuple(v.im for v in x)
    c = tuple(v.re for v in y)
    d = tuple(v.im for v in y)
    ac, bd = _mul_real(spec, a, c), _mul_real(spec, b, d)
    ad, bc = _mul_real(spec, a, d), _mul_real(spec, b, c)
    new = object.__new__
    out = []
    for k in range(DIM):
        z = new(CScalar)
        z.re = ac[k] - bd[k]
        z.im = ad[k] + bc[k]
        out.append(z)
    return tuple(out)


def _mul_coords(spec: AlgebraSpec, x, y, zero):
    if spec._rterms:
        if not spec.kind.complexified:
            return _mul_real(spec, x, y)
        return _mul_complex(spec, x, y)
    out = [zero] * DIM
    terms = spec._terms
    for i in range(DIM):
        xi = x[i]
        if not xi:
            continue
        ti = terms[i]
        for j in range(DIM):
            yj = y[j]
            if not yj:
                continue
            p = xi * yj
            for k, s, c in ti[j]:
                if s == 1:
                    out[k] = out[k] + p
                elif s == -1:
                    out[k] = out[k] - p
                else:
                    out[k] = out[k] + p * c
    return tuple(out)


def mul(spec: AlgebraSpec, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    if x.kind != spec.kind or y.kind != spec.kind:
        raise KindMismatch(f"product in {spec.kind} of {x.kind} and {y.kind}")
    return AlgebraElement._raw(_mul_coords(spec, x.coords, y.coords, spec.kind.zero), spec.kind)


# ---------------------------------------------------------------------------
# the Okubo matrix realization

MU = CScalar(HALF, Scalar(0, Fraction(1, 6)))      # (3 + i sqrt3)/6
MU_BAR = MU.conjugate()


def _mat(entries):
    m = [[CScalar() for _ in range(3)] for _ in range(3)]
    for (r, c), v in entries.items():
        m[r][c] = cplx(v)
    return m


def _okubo_basis():
    s = SQRT3
    si = CScalar(ZERO, SQRT3)
    return [
        _mat({(0, 0): 2, (1, 1): -1, (2, 2): -1}),
        _mat({(1, 2): s, (2, 1): s}),
        _mat({(1, 1): s, (2, 2): -s}),
        _mat({(1, 2): -si, (2, 1): si}),
        _mat({(0, 1): s, (1, 0): s}),
        _mat({(0, 2): si, (2, 0): -si}),
        _mat({(0, 1): si, (1, 0): -si}),
        _mat({(0, 2): s, (2, 0): s}),
    ]


OKUBO_BASIS = _okubo_basis()


def _mm(a, b):
    return [[a[r][0] * b[0][c] + a[r][1] * b[1][c] + a[r][2] * b[2][c] for c in range(3)] for r in range(3)]


def _tr(a):
    return a[0][0] + a[1][1] + a[2][2]


def okubo_matrix_product(m, n):
    """mu*mn + conj(mu)*nm - Tr(mn)/3 * identity."""
    mn = _mm(m, n)
    nm = _mm(n, m)
    t = _tr(mn) * Scalar(Fraction(1, 3))
    out = [[MU * mn[r][c] + MU_BAR * nm[r][c] for c in range(3)] for r in range(3)]
    for r in range(3):
        out[r][r] = out[r][r] - t
    return out


def _matrix_coords(m):
    """Coordinates of a traceless matrix against OKUBO_BASIS (complex values)."""
    sixth = Scalar(Fraction(1, 6))
    return [_tr(_mm(m, b)) * sixth for b in OKUBO_BASIS]


def _okubo_dense():
    dense = [[[ZERO] * DIM for _ in range(DIM)] for _ in range(DIM)]
    for i in range(DIM):
        for j in range(DIM):
            coords = _matrix_coords(okubo_matrix_product(OKUBO_BASIS[i], OKUBO_BASIS[j]))
            for k, c in enumerate(coords):
                if c.im:
                    raise ArithmeticError(f"non-real Okubo constant at ({i},{j},{k})")
                dense[i][j][k] = c.re
    return dense


def _dense_from_rule(rule):
    """Tabulate a bilinear rule given on coordinate tuples."""
    dense = [[None] * DIM for _ in range(DIM)]
    for i in range(DIM):
        for j in range(DIM):
            ei = tuple(ONE if k == i else ZERO for k in range(DIM))
            ej = tuple(ONE if k == j else ZERO for k in range(DIM))
            dense[i][j] = list(rule(ei, ej))
    return dense


class _Raw:
    """Minimal product wrapper over a dense table, used only while building."""

    def __init__(self, dense):
        self.spec = _make_spec(O, dense, (1,) * DIM)

    def __call__(self, x, y):
        return _mul_coords(self.spec, x, y, ZERO)


def _conj_coords(x):
    return (x[0],) + tuple(-c for c in x[1:])


_TAU_ROWS = None


def _tau_matrix():
    """tau in the working basis: identity on b0..b3, rotations by 120 degrees
    in the planes (b4, b6) and (b7, b5)."""
    h = -HALF
    r = Scalar(0, Fraction(1, 2))
    m = [[ZERO] * DIM for _ in range(DIM)]   # m[row][col], column = image of basis col
    for k in range(4):
        m[k][k] = ONE
    # tau(b4) = -1/2 b4 + r b6 ; tau(b6) = -r b4 - 1/2 b6
    m[4][4], m[6][4] = h, r
    m[4][6], m[6][6] = -r, h
    # tau(b7) = -1/2 b7 + r b5 ; tau(b5) = -1/2 b5 - r b7
    m[7][7], m[5][7] = h, r
    m[5][5], m[7][5] = h, -r
    return m


TAU_MATRIX = _tau_matrix()


def _apply(mat, x, zero=ZERO):
    out = []
    for row in mat:
        acc = zero
        for c, v in zip(row, x):
            if c and v:
                acc = acc + c * v
        out.append(acc)
    return tuple(out)


def _split_sign(i: int, j: int) -> int:
    return -1 if i >= 4 and j >= 4 else 1


@lru_cache(maxsize=None)
def _dense_tables():
    okubo = _okubo_dense()
    ok = _Raw(okubo)
    e = tuple(ONE if k == 0 else ZERO for k in range(DIM))
    octo = _dense_from_rule(lambda x, y: ok(ok(e, x), ok(y, e)))
    split_octo = [[[c * _split_sign(i, j) for c in octo[i][j]] for j in range(DIM)] for i in range(DIM)]
    out = {Family.OKUBO: okubo, Family.OCTONION: octo, Family.SPLIT_OCTONION: split_octo}
    for fam, src in ((Family.OCTONION, octo), (Family.SPLIT_OCTONION, split_octo)):
        h = _Raw(src)
        para = _dense_from_rule(lambda x, y, h=h: h(_conj_coords(x), _conj_coords(y)))
        tau = lambda x: _apply(TAU_MATRIX, x)
        pet = _dense_from_rule(
            lambda x, y, h=h, tau=tau: h(tau(_conj_coords(x)), tau(tau(_conj_coords(y)))))
        split = fam is Family.SPLIT_OCTONION
        out[Family.PARA_OCTONION.with_split(split)] = para
        out[Family.OKUBO.with_split(split) if split else Family.OKUBO] = (
            pet if split else out[Family.OKUBO])
        if not split:
            out["okubo-from-octonion"] = pet
    return out


def normdiag_for(family: Family) -> tuple:
    return (1, 1, 1, 1, -1, -1, -1, -1) if family.split else (1,) * DIM


class CompositionFailure(ArithmeticError):
    pass


def _verify_composition(spec: AlgebraSpec) -> None:
    """Fully polarized composition law on basis quadruples:
    B(b_i b_j, b_k b_l) + B(b_i b_l, b_k b_j) = 2 B(b_i, b_k) B(b_j, b_l),
    with B(u, v) = sum d_t u_t v_t. This is equivalent to n(xy) = n(x) n(y)."""
    zero = spec.kind.zero
    nd = spec.normdiag
    prod = [[dict(spec.table[i][j]) for j in range(DIM)] for i in range(DIM)]

    def B(u, v):
        acc = zero
        for t, c in u.items():
            if t in v:
                acc = acc + c * v[t] * nd[t]
        return acc

    for i in range(DIM):
        for j in range(DIM):
            for k in range(DIM):
                for l in range(DIM):
                    lhs = B(prod[i][j], prod[k][l]) + B(prod[i][l], prod[k][j])
                    rhs = 2 * nd[i] * nd[j] if (i == k and j == l) else 0
                    if lhs != rhs:
                        raise CompositionFailure(
                            f"composition law fails for basis pair ({i}, {j}) against ({k}, {l})")


@lru_cache(maxsize=None)
def build_spec(kind: AlgebraKind) -> AlgebraSpec:
    """Canonical structure constants for a kind (cached; specs are immutable)."""
    dense = _dense_tables()[kind.family]
    if kind.complexified:
        dense = [[[cplx(c) for c in cell] for cell in row] for row in dense]
    spec = _make_spec(kind, dense, normdiag_for(kind.family))
    if not kind.complexified:
        _verify_composition(spec)
    return spec


# ---------------------------------------------------------------------------
# norm, conjugation, tau

def norm(spec: AlgebraSpec, x: AlgebraElement):
    acc = spec.kind.zero
    for d, c in zip(spec.normdiag, x.coords):
        if c:
            acc = acc + c * c * d
    return acc


def polar(spec: AlgebraSpec, x: AlgebraElement, y: AlgebraElement):
    """n(x+y) - n(x) - n(y), computed bilinearly."""
    acc = spec.kind.zero
    for d, a, b in zip(spec.normdiag, x.coords, y.coords):
        if a and b:
            acc = acc + a * b * (2 * d)
    return acc


def _e(kind):
    return basis(kind, 0)


def conj(x: AlgebraElement) -> AlgebraElement:
    fam = x.kind.family
    if fam.okubo:
        spec = build_spec(x.kind)
        e = _e(x.kind)
        return mul(spec, mul(spec, mul(spec, x, e), e), e)
    return AlgebraElement._raw((x.coords[0],) + tuple(-c for c in x.coords[1:]), x.kind)


def tau(x: AlgebraElement) -> AlgebraElement:
    """The order-three automorphism."""
    fam = x.kind.family
    if fam.okubo:
        spec = build_spec(x.kind)
        e = _e(x.kind)
        y = x
        for _ in range(4):
            y = mul(spec, y, e)
        return y
    if fam.para:
        raise ValueError("tau is defined on Hurwitz and Okubo families")
    return AlgebraElement._raw(_apply(TAU_MATRIX, x.coords, x.kind.zero), x.kind)


def tau_matrix():
    return [row[:] for row in TAU_MATRIX]


def reinterpret(x: AlgebraElement, kind: AlgebraKind) -> AlgebraElement:
    """Same coordinates, different product. All six families share the basis."""
    if kind.complexified != x.kind.complexified:
        raise KindMismatch("scalar fields differ")
    return AlgebraElement._raw(x.coords, kind)


# ---------------------------------------------------------------------------
# product conversions between the three families of one column

def _hurwitz_kind(kind):
    return AlgebraKind(Family.OCTONION.with_split(kind.family.split), kind.complexified)


def _para_kind(kind):
    return AlgebraKind(Family.PARA_OCTONION.with_split(kind.family.split), kind.complexified)


def _okubo_kind(kind):
    return AlgebraKind(Family.OKUBO.with_split(kind.family.split), kind.complexified)


def convert(spec_from: AlgebraSpec, spec_to: AlgebraSpec, x: AlgebraElement, y: AlgebraElement):
    """Evaluate the product of spec_to using only the product of spec_from.

    The result is an element of spec_to's kind.
    """
    kf, kt = spec_from.kind, spec_to.kind
    if kf.family.split != kt.family.split or kf.complexified != kt.complexified:
        raise ValueError(f"unsupported conversion {kf} -> {kt}")
    xs, ys = reinterpret(x, kf), reinterpret(y, kf)
    m = lambda a, b: mul(spec_from, a, b)
    ff, ft = kf.family, kt.family
    if ff == ft:
        r = m(xs, ys)
    elif ff.hurwitz and ft.para:
        r = m(conj(xs), conj(ys))
    elif ff.hurwitz and ft.okubo:
        r = m(tau(conj(xs)), tau(tau(conj(ys))))
    elif ff.para and ft.hurwitz:
        one = _e(kf)
        r = m(m(one, xs), m(ys, one))
    elif ff.okubo and ft.hurwitz:
        e = _e(kf)
        r = m(m(e, xs), m(ys, e))
    elif ff.para and ft.okubo:
        # x*y = tau(x) . tau^2(y) in para terms, since 1.a = conj(a)
        one = _e(kf)
        h = lambda a, b: m(m(one, a), m(b, one))
        hk = _hurwitz_kind(kf)
        t = lambda a: reinterpret(tau(reinterpret(a, hk)), kf)
        r = h(t(m(one, xs)), t(t(m(one, ys))))
    elif ff.okubo and ft.para:
        e = _e(kf)
        h = lambda a, b: m(m(e, a), m(b, e))
        cj = conj
        r = h(cj(xs), cj(ys))
    else:
        raise ValueError(f"unsupported conversion {kf} -> {kt}")
    return reinterpret(r, kt)


# ---------------------------------------------------------------------------
# Okubo matrices

def _require_okubo(kind):
    if not kind.family.okubo:
        raise ValueError("matrix realization exists for Okubo families only")


def okubo_matrix(x: AlgebraElement):
    """3x3 matrix over Q(sqrt3)(i). Split coordinates b4..b7 enter with a factor i,
    giving matrices Hermitian for the form J = diag(-1, 1, 1)."""
    _require_okubo(x.kind)
    split = x.kind.family.split
    m = [[CScalar() for _ in range(3)] for _ in range(3)]
    for k, c in enumerate(x.coords):
        if not c:
            continue
        c = cplx(c)
        if split and k >= 4:
            c = c * I
        b = OKUBO_BASIS[k]
        for r in range(3):
            for s in range(3):
                if b[r][s]:
                    m[r][s] = m[r][s] + c * b[r][s]
    return m


J_SPLIT = (-1, 1, 1)


def okubo_from_matrix(m, kind: AlgebraKind = OK) -> AlgebraElement:
    _require_okubo(kind)
    m = [[cplx(v) for v in row] for row in m]
    if _tr(m):
        raise ValueError("matrix is not traceless")
    split = kind.family.split
    if not kind.complexified:
        for r in range(3):
            for s in range(3):
                w = 1 if not split else J_SPLIT[r] * J_SPLIT[s]
                if m[r][s] != m[s][r].conjugate() * w:
                    raise ValueError("matrix is not Hermitian for the family's form")
    coords = _matrix_coords(m)
    if split:
        coords = [c if k < 4 else c * (-I) for k, c in enumerate(coords)]
    if not kind.complexified:
        if any(c.im for c in coords):
            raise ValueError("matrix is not in the real span of the basis")
        coords = [c.re for c in coords]
    return AlgebraElement(coords, kind)


# ---------------------------------------------------------------------------
# zero divisors

def left_mult_matrix(spec: AlgebraSpec, x: AlgebraElement):
    """Matrix of y -> x.y, rows indexed by output coordinate."""
    cols = [mul(spec, x, basis(spec.kind, j)).coords for j in range(DIM)]
    return [[cols[j][k] for j in range(DIM)] for k in range(DIM)]


def zero_divisor_witness(spec: AlgebraSpec, x: AlgebraElement):
    """A nonzero y with x.y = 0, or None."""
    if not x:
        raise ValueError("zero is excluded")
    kind = spec.kind
    ker = linalg.nullspace(left_mult_matrix(spec, x), DIM, kind.zero, kind.one)
    if not ker:
        return None
    return AlgebraElement(ker[0], kind)


def is_zero_divisor(spec: AlgebraSpec, x: AlgebraElement, with_witness: bool = False):
    """Decided by n(x) = 0; the witness comes from solving x.y = 0 exactly."""
    if not x:
        raise ValueError("zero is excluded")
    found = norm(spec, x) == 0
    if not with_witness:
        return found
    w = zero_divisor_witness(spec, x)
    if found != (w is not None):
        raise ArithmeticError("zero-divisor test disagrees with the norm criterion")
    return found, w


# ---------------------------------------------------------------------------
# sampling and law checks

LAWS = ("composition", "flexible", "alternative", "associative", "commutative",
        "unital", "paraunital", "division")


def random_element(kind: AlgebraKind, rng: random.Random, lo: int = -3, hi: int = 3) -> AlgebraElement:
    if kind.complexified:
        coords = tuple(CScalar(Scalar(rng.randint(lo, hi)), Scalar(rng.randint(lo, hi)))
                       for _ in range(DIM))
    else:
        coords = tuple(Scalar(rng.randint(lo, hi)) for _ in range(DIM))
    return AlgebraElement._raw(coords, kind)


def _solve_unit(spec):
    """u with u.b_j = b_j = b_j.u for all j, or None."""
    kind = spec.kind
    rows = []
    for j in range(DIM):
        bj = basis(kind, j)
        for side in (0, 1):
            cols = []
            for i in range(DIM):
                bi = basis(kind, i)
                cols.append((mul(spec, bi, bj) if side == 0 else mul(spec, bj, bi)).coords)
            for k in range(DIM):
                rows.append([cols[i][k] for i in range(DIM)] + [bj.coords[k]])
    red, piv = linalg.rref(rows, DIM + 1)
    if DIM in piv:
        return None
    u = [kind.zero] * DIM
    for row, pc in zip(red, piv):
        u[pc] = row[DIM]
    return AlgebraElement(u, kind)


def _para_bar(spec, e, x):
    """<x,e>e - x, the reflection that a paraunit must realize."""
    return e.scale(polar(spec, x, e)) - x


def _solve_paraunit(spec):
    """A paraunit candidate, or None. A paraunit commutes with everything, so it
    lies in the commutant; we solve for the scale on that line."""
    kind = spec.kind
    rows = []
    for j in range(DIM):
        bj = basis(kind, j)
        cols = [(mul(spec, basis(kind, i), bj) - mul(spec, bj, basis(kind, i))).coords
                for i in range(DIM)]
        for k in range(DIM):
            rows.append([cols[i][k] for i in range(DIM)])
    comm = linalg.nullspace(rows, DIM, kind.zero, kind.one)
    for v in comm:
        v = AlgebraElement(v, kind)
        # e = t v: for x orthogonal to v, e.x = -x gives t
        for j in range(DIM):
            x = basis(kind, j)
            if polar(spec, x, v):
                continue
            vx = mul(spec, v, x)
            if not vx:
                break
            # vx must be a multiple of x
            k = next(i for i, c in enumerate(x.coords) if c)
            t = -x.coords[k] / vx.coords[k]
            e = v.scale(t)
            if all(mul(spec, e, basis(kind, i)) == _para_bar(spec, e, basis(kind, i))
                   and mul(spec, basis(kind, i), e) == _para_bar(spec, e, basis(kind, i))
                   for i in range(DIM)):
                return e
            break
    return None


@dataclass
class LawReport:
    law: str
    passed: bool
    samples: int
    counterexample: dict | None = None
    witness: dict | None = None

    def as_dict(self):
        return {"law": self.law, "passed": self.passed, "samples": self.samples,
                "counterexample": self.counterexample, "witness": self.witness}


def _fmt(x: AlgebraElement):
    return [format_scalar(c) for c in x.coords]


def identity_check(spec: AlgebraSpec, law: str, samples: int = 1000, seed: int = 0) -> LawReport:
    """Test one algebraic law exactly on seeded random elements.

    Existence laws (unital, paraunital, division) are decided constructively
    first and then confirmed on the samples.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    if law not in LAWS:
        raise ValueError(f"unknown law {law!r}")
    kind = spec.kind
    rng = random.Random(f"{seed}:{law}:{kind}")
    m = lambda a, b: mul(spec, a, b)
    witness = None
    unit = para = None
    if law == "unital":
        unit = _solve_unit(spec)
        if unit is None:
            return LawReport(law, False, 0, {"reason": "the linear system u.b = b = b.u has no solution"})
        witness = {"unit": _fmt(unit)}
    if law == "paraunital":
        para = _solve_paraunit(spec)
        if para is None:
            return LawReport(law, False, 0, {"reason": "no element e with e.x = x.e = <x,e>e - x"})
        witness = {"paraunit": _fmt(para)}
    if law == "division":
        if len(set(spec.normdiag)) > 1:
            i = spec.normdiag.index(1)
            j = spec.normdiag.index(-1)
            x = basis(kind, i) + basis(kind, j)
            _, y = is_zero_divisor(spec, x, with_witness=True)
            assert y is not None and not m(x, y)
            return LawReport(law, False, 0, {"x": _fmt(x), "y": _fmt(y), "reason": "x.y = 0"})

    for s in range(samples):
        x = random_element(kind, rng)
        y = random_element(kind, rng)
        bad = None
        if law == "composition":
            if norm(spec, m(x, y)) != norm(spec, x) * norm(spec, y):
                bad = (x, y)
        elif law == "flexible":
            if m(m(x, y), x) != m(x, m(y, x)):
                bad = (x, y)
        elif law == "alternative":
            xx = m(x, x)
            if m(xx, y) != m(x, m(x, y)) or m(m(y, x), x) != m(y, xx):
                bad = (x, y)
        elif law == "associative":
            z = random_element(kind, rng)
            if m(m(x, y), z) != m(x, m(y, z)):
                bad = (x, y, z)
        elif law == "commutative":
            if m(x, y) != m(y, x):
                bad = (x, y)
        elif law == "unital":
            if m(unit, x) != x or m(x, unit) != x:
                bad = (x,)
        elif law == "paraunital":
            xb = _para_bar(spec, para, x)
            if m(para, x) != xb or m(x, para) != xb:
                bad = (x,)
        elif law == "division":
            # every tenth sample also goes through the exact kernel of L_x
            if x and (is_zero_divisor(spec, x, with_witness=True)[0] if s % 10 == 0
                      else is_zero_divisor(spec, x)):
                bad = (x,)
        if bad is not None:
            return LawReport(law, False, s + 1,
                             {f"x{i}": _fmt(v) for i, v in enumerate(bad)}, witness)
    return LawReport(law, True, samples, None, witness)


# the outcome every family must produce; keys follow LAWS
EXPECTED_LAWS = {
    Family.OCTONION: dict(composition=True, flexible=True, alternative=True, associative=False,
                          commutative=False, unital=True, paraunital=False, division=True),
    Family.PARA_OCTONION: dict(composition=True, flexible=True, alternative=False, associative=False,
                               commutative=False, unital=False, paraunital=True, division=True),
    Family.OKUBO: dict(composition=True, flexible=True, alternative=False, associative=False,
                       commutative=False, unital=False, paraunital=False, division=True),
}
for _f in (Family.OCTONION, Family.PARA_OCTONION, Family.OKUBO):
    EXPECTED_LAWS[_f.with_split(True)] = dict(EXPECTED_LAWS[_f], division=False)


# ---------------------------------------------------------------------------
# float bridge

@lru_cache(maxsize=None)
def float_table(kind: AlgebraKind):
    """Structure constants as a read-only (8, 8, 8) float array."""
    import numpy as np
    from .scalars import to_float
    spec = build_spec(kind)
    T = np.zeros((DIM, DIM, DIM))
    for i, j, k, c in spec.entries():
        T[i, j, k] = to_float(c.re if isinstance(c, CScalar) else c)
    T.setflags(write=False)
    return T


# ---------------------------------------------------------------------------
# complexification

def complex_split_iso(x: AlgebraElement) -> AlgebraElement:
    """C(x)O_s -> C(x)O: multiply the coordinates of b4..b7 by i."""
    if not x.kind.complexified or x.kind.family.split is False:
        raise ValueError("expects a complexified split element")
    target = AlgebraKind(x.kind.family.with_split(False), True)
    return AlgebraElement._raw(tuple(c if k < 4 else c * I for k, c in enumerate(x.coords)), target)


# ---------------------------------------------------------------------------
# structure-constant files

_SIGNS = {1: "+", -1: "-"}


def dump_table(spec: AlgebraSpec) -> str:
    lines = [f"dim {DIM}", "normdiag " + " ".join(_SIGNS[d] for d in spec.normdiag)]
    for i, j, k, c in spec.entries():
        lines.append(f"{i} {j} {k} {format_scalar(c)}")
    return "\n".join(lines) + "\n"


class TableParseError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def parse_table(text: str, family: Family | None = None) -> AlgebraSpec:
    """Parse a structure-constant file and verify the composition law."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != f"dim {DIM}":
        raise TableParseError(1, f"expected header 'dim {DIM}'")
    if len(lines) < 2:
        raise TableParseError(2, "missing normdiag line")
    parts = lines[1].split()
    if len(parts) != DIM + 1 or parts[0] != "normdiag" or any(p not in "+-" for p in parts[1:]):
        raise TableParseError(2, "malformed normdiag line")
    nd = tuple(1 if p == "+" else -1 for p in parts[1:])
    dense = [[[ZERO] * DIM for _ in range(DIM)] for _ in range(DIM)]
    for n, line in enumerate(lines[2:], start=3):
        if not line.strip():
            continue
        f = line.split(None, 3)
        if len(f) != 4:
            raise TableParseError(n, "expected 'i j k <scalar>'")
        try:
            i, j, k = int(f[0]), int(f[1]), int(f[2])
            c = parse_scalar(f[3])
        except ValueError as exc:
            raise TableParseError(n, str(exc)) from None
        if not all(0 <= v < DIM for v in (i, j, k)):
            raise TableParseError(n, "index out of range")
        if isinstance(c, CScalar):
            raise TableParseError(n, "constants must be real")
        dense[i][j][k] = c
    fam = family or (Family.SPLIT_OCTONION if -1 in nd else Family.OCTONION)
    spec = _make_spec(AlgebraKind(fam), dense, nd)
    _verify_composition(spec)
    return spec
