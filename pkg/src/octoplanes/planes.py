"""Veronese vectors and the incidence planes they define.

A vector (x1, x2, x3; l1, l2, l3) lives in K^3 x R^3. Points are rays of
Veronese vectors, lines are beta-orthogonal complements of Veronese vectors.
For octonion coordinates the Albert algebra does the heavy lifting: a vector
is Veronese exactly when its Albert image has vanishing sharp, and the join
of two points is the Freudenthal cross of their images.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from . import albert as al
from . import compalg as ca
from .compalg import AlgebraElement, AlgebraKind, Family
from .scalars import I


@dataclass(frozen=True)
class PlaneKind:
    algebra: AlgebraKind
    gamma: tuple = (1, 1, 1)

    def __post_init__(self):
        if tuple(self.gamma) not in al.GAMMAS:
            raise ValueError(f"unsupported gamma {self.gamma}")
        if self.algebra.complexified and self.algebra.family is not Family.OCTONION:
            raise ValueError("only the octonion plane is complexified")

    @property
    def hurwitz(self) -> bool:
        return self.algebra.family.hurwitz

    @property
    def spec(self):
        return ca.build_spec(self.algebra)

    def g(self, nu: int) -> int:
        """The factor attached to slot nu: gamma of the two other indices."""
        return self.gamma[(nu + 1) % 3] * self.gamma[(nu + 2) % 3]

    def __str__(self):
        return f"{self.algebra} gamma={self.gamma}"


PLANES = {
    "O-P2": PlaneKind(ca.O, (1, 1, 1)),
    "O-H2": PlaneKind(ca.O, (1, 1, -1)),
    "Os-P2": PlaneKind(ca.OS, (1, 1, 1)),
    "Os-H2": PlaneKind(ca.OS, (1, 1, -1)),
    "Ok-P2": PlaneKind(ca.OK, (1, 1, 1)),
    "Ok-H2": PlaneKind(ca.OK, (1, 1, -1)),
    "pO-P2": PlaneKind(ca.PO, (1, 1, 1)),
    "pO-H2": PlaneKind(ca.PO, (1, 1, -1)),
    "Oks-P2": PlaneKind(ca.OKS, (1, 1, 1)),
    "pOs-P2": PlaneKind(ca.POS, (1, 1, 1)),
    "OC-P2": PlaneKind(ca.O.complexify(), (1, 1, 1)),
}


class VVector:
    __slots__ = ("x", "l", "kind")

    def __init__(self, x, l, kind: AlgebraKind | None = None):
        xs = list(x)
        if kind is None:
            kind = next(v.kind for v in xs if isinstance(v, AlgebraElement))
        self.x = tuple(v if isinstance(v, AlgebraElement) else AlgebraElement(v, kind) for v in xs)
        if any(v.kind != kind for v in self.x):
            raise ca.KindMismatch("coordinates from different algebras")
        self.l = tuple(kind.coerce(v) for v in l)
        self.kind = kind

    def coords(self) -> tuple:
        return self.x[0].coords + self.x[1].coords + self.x[2].coords + self.l

    @classmethod
    def from_coords(cls, coords, kind: AlgebraKind) -> "VVector":
        c = list(coords)
        return cls([c[0:8], c[8:16], c[16:24]], c[24:27], kind)

    def scale(self, s) -> "VVector":
        return VVector([v.scale(s) for v in self.x], [a * s for a in self.l], self.kind)

    def __add__(self, o):
        return VVector([a + b for a, b in zip(self.x, o.x)], [a + b for a, b in zip(self.l, o.l)], self.kind)

    def __sub__(self, o):
        return VVector([a - b for a, b in zip(self.x, o.x)], [a - b for a, b in zip(self.l, o.l)], self.kind)

    def __eq__(self, o):
        return isinstance(o, VVector) and o.kind == self.kind and o.coords() == self.coords()

    def __hash__(self):
        return hash(self.coords())

    def __bool__(self):
        return any(self.coords())

    def __repr__(self):
        return format_vvector(self)


def vvector(plane: PlaneKind, x, l) -> VVector:
    return VVector(x, l, plane.algebra)


def unit_vector(plane: PlaneKind, nu: int) -> VVector:
    """(0,0,0; e_nu), nu in 1..3."""
    k = plane.algebra
    z = ca.zero_element(k)
    return VVector([z, z, z], [k.one if i == nu - 1 else k.zero for i in range(3)], k)


# ---------------------------------------------------------------------------
# the Veronese predicate

def _slot_product(plane: PlaneKind, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return ca.mul(plane.spec, a, b)


def veronese_defects(plane: PlaneKind, v: VVector):
    """The six conditions as differences that must vanish (3 vectors, 3 scalars)."""
    spec = plane.spec
    out_vec, out_sc = [], []
    for nu in range(3):
        a, b = (nu + 1) % 3, (nu + 2) % 3
        g = plane.g(nu)
        prod = _slot_product(plane, v.x[a], v.x[b]).scale(g)
        lhs = v.x[nu]
        if plane.hurwitz:
            lhs = ca.conj(lhs)
        out_vec.append(lhs.scale(v.l[nu]) - prod)
        out_sc.append(ca.norm(spec, v.x[nu]) - v.l[a] * v.l[b] * g)
    return out_vec, out_sc


def is_veronese(plane: PlaneKind, v: VVector) -> bool:
    vecs, scs = veronese_defects(plane, v)
    return not any(vecs) and not any(scs)


class SplitFamilyError(ValueError):
    pass


def reduced_is_veronese(plane: PlaneKind, v: VVector) -> bool:
    """Only the first product condition and the last two norm conditions."""
    if plane.algebra.family.split:
        raise SplitFamilyError("the reduced conditions are only claimed for division algebras")
    vecs, scs = veronese_defects(plane, v)
    return not vecs[0] and not scs[1] and not scs[2]


# ---------------------------------------------------------------------------
# bilinear form, points, lines

def beta(plane: PlaneKind, v: VVector, w: VVector):
    spec = plane.spec
    acc = plane.algebra.zero
    for nu in range(3):
        acc = acc + ca.polar(spec, v.x[nu], w.x[nu]) * plane.g(nu) + v.l[nu] * w.l[nu]
    return acc


def proportional(v: VVector, w: VVector) -> bool:
    """Exact rank-one test on the 2 x 27 coordinate matrix."""
    a, b = v.coords(), w.coords()
    i = next((k for k, c in enumerate(a) if c), None)
    j = next((k for k, c in enumerate(b) if c), None)
    if i is None or j is None:
        return i is None and j is None
    if i != j:
        return False
    ai, bi = a[i], b[i]
    return all(bi * x == ai * y for x, y in zip(a, b))


def canonical(v: VVector) -> VVector:
    """Scale so l1 + l2 + l3 = 1, or else so the first nonzero coordinate is 1."""
    t = v.l[0] + v.l[1] + v.l[2]
    if t:
        return v.scale(1 / t)
    lead = next((c for c in v.l + v.x[0].coords + v.x[1].coords + v.x[2].coords if c), None)
    if lead is None:
        raise ValueError("the zero vector spans no ray")
    return v.scale(1 / lead)


class NotVeronese(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Point:
    plane: PlaneKind
    rep: VVector

    def __eq__(self, o):
        return isinstance(o, Point) and o.plane == self.plane and proportional(self.rep, o.rep)

    def __hash__(self):
        return hash(self.plane)


@dataclass(frozen=True, eq=False)
class Line:
    plane: PlaneKind
    dual: VVector

    def __eq__(self, o):
        return isinstance(o, Line) and o.plane == self.plane and proportional(self.dual, o.dual)

    def __hash__(self):
        return hash(self.plane)


def _ray(plane, v):
    if not v:
        raise NotVeronese("zero vector")
    if not is_veronese(plane, v):
        raise NotVeronese("vector fails the Veronese conditions")
    return canonical(v)


def point(plane: PlaneKind, v: VVector) -> Point:
    return Point(plane, _ray(plane, v))


def line(plane: PlaneKind, w: VVector) -> Line:
    return Line(plane, _ray(plane, w))


def incident(plane: PlaneKind, p: Point, l: Line) -> bool:
    return not beta(plane, p.rep, l.dual)


def _require_projective(plane):
    if plane.gamma != (1, 1, 1):
        raise ValueError("the elliptic polarity is defined for gamma = (1,1,1)")


def polarity(plane: PlaneKind, p: Point) -> Line:
    _require_projective(plane)
    return Line(plane, p.rep)


def polarity_inv(plane: PlaneKind, l: Line) -> Point:
    _require_projective(plane)
    return Point(plane, l.dual)


# ---------------------------------------------------------------------------
# the Albert correspondence

def _require_hurwitz(plane):
    if not plane.hurwitz:
        raise ValueError("psi is defined for octonion and split-octonion planes")


def psi(plane: PlaneKind, v: VVector) -> al.AlbertElement:
    _require_hurwitz(plane)
    return al.AlbertElement._raw(v.l, v.x, tuple(plane.gamma), plane.algebra)


class NotRankOne(ValueError):
    pass


def psi_inv(X: al.AlbertElement) -> VVector:
    if al.sharp(X):
        raise NotRankOne("element has nonzero sharp")
    return VVector(X.x, X.l, X.kind)


# ---------------------------------------------------------------------------
# chart sampling

def chart_vector(plane: PlaneKind, x: AlgebraElement, y: AlgebraElement) -> VVector:
    """(x, y, x3; g1g3 n(y), g2g3 n(x), 1) with x3 = g1g2 conj(xy) in Hurwitz
    planes and g1g2 x.y in symmetric ones."""
    spec = plane.spec
    g1, g2, g3 = plane.gamma
    p = ca.mul(spec, x, y)
    if plane.hurwitz:
        p = ca.conj(p)
    k = plane.algebra
    return VVector([x, y, p.scale(g1 * g2)],
                   [ca.norm(spec, y) * (g1 * g3), ca.norm(spec, x) * (g2 * g3), k.one], k)


def chart2_vector(plane: PlaneKind, x: AlgebraElement) -> VVector:
    """(0, 0, x; g1g2 n(x), 1, 0)."""
    g1, g2, _ = plane.gamma
    k = plane.algebra
    z = ca.zero_element(k)
    return VVector([z, z, x], [ca.norm(plane.spec, x) * (g1 * g2), k.one, k.zero], k)


def chart3_vector(plane: PlaneKind) -> VVector:
    return unit_vector(plane, 1)


def which_chart(plane: PlaneKind, v: VVector) -> int | None:
    """1, 2 or 3 if the canonical rescaling of v has one of the chart forms."""
    l1, l2, l3 = v.l
    if l3:
        w = v.scale(1 / l3)
        return 1 if w == chart_vector(plane, w.x[0], w.x[1]) else None
    if l2:
        w = v.scale(1 / l2)
        return 2 if (not w.x[0] and not w.x[1] and w == chart2_vector(plane, w.x[2])) else None
    if l1:
        return 3 if not any(v.x) else None
    return None


def sample_chart(plane: PlaneKind, rng: random.Random, chart: int = 1) -> VVector:
    k = plane.algebra
    if chart == 1:
        return chart_vector(plane, ca.random_element(k, rng), ca.random_element(k, rng))
    if chart == 2:
        return chart2_vector(plane, ca.random_element(k, rng))
    return chart3_vector(plane)


def sample_veronese(plane: PlaneKind, rng: random.Random) -> VVector:
    """Chart vectors, mostly from the open chart, rescaled by a random integer."""
    r = rng.random()
    chart = 1 if r < 0.8 else (2 if r < 0.95 else 3)
    v = sample_chart(plane, rng, chart)
    s = rng.choice((-3, -2, -1, 1, 2, 3))
    return v.scale(s)


def mirrored_null(plane: PlaneKind, rng: random.Random) -> AlgebraElement:
    """a + a' where a' copies the quaternion half of a into b4..b7.

    In a split algebra this is always isotropic, and any two such vectors are
    orthogonal. In a real division algebra its norm is 2 n(a) and it is never
    null; over the complex numbers the copy is multiplied by i, which makes it
    isotropic again.
    """
    k = plane.algebra
    a = ca.random_element(k, rng)
    half = list(a.coords[:4])
    if k.complexified and not k.family.split:
        return AlgebraElement(half + [c * I for c in half], k)
    return AlgebraElement(half * 2, k)


def slot_point_vector(plane: PlaneKind, x: AlgebraElement, nu: int = 0) -> VVector:
    """x in slot nu, 1 in the following diagonal slot, zero elsewhere."""
    k = plane.algebra
    z = ca.zero_element(k)
    xs = [z, z, z]
    xs[nu] = x
    ls = [k.zero] * 3
    ls[(nu + 1) % 3] = k.one
    return VVector(xs, ls, k)


# ---------------------------------------------------------------------------
# joins and meets

@dataclass
class Degenerate:
    """Two points (or lines) with more than one connecting line (or meet)."""
    reason: str
    witnesses: list = field(default_factory=list)


class SamePoint(ValueError):
    pass


def _symmetric_hurwitz(plane: PlaneKind) -> PlaneKind:
    fam = Family.OCTONION.with_split(plane.algebra.family.split)
    return PlaneKind(AlgebraKind(fam, plane.algebra.complexified), plane.gamma)


def to_hurwitz(plane: PlaneKind, v: VVector) -> VVector:
    fam = plane.algebra.family
    if fam.hurwitz:
        return v
    return phi_iso(v) if fam.okubo else pphi_iso(v)


def from_hurwitz(plane: PlaneKind, v: VVector) -> VVector:
    fam = plane.algebra.family
    if fam.hurwitz:
        return v
    target = plane.algebra
    return phi_inv(v, target) if fam.okubo else pphi_inv(v, target)


@lru_cache(maxsize=None)
def _witness_pool(plane: PlaneKind):
    """Veronese candidates for lines through degenerate pairs: the three
    diagonal units, small chart vectors, and isotropic slot vectors."""
    k = plane.algebra
    pool = [unit_vector(plane, nu) for nu in (1, 2, 3)]
    basis = [ca.basis(k, i) for i in range(8)]
    spec = plane.spec
    nulls = []
    for i in range(8):
        for j in range(i + 1, 8):
            for s in ((1, -1, I, -I) if k.complexified else (1, -1)):
                x = basis[i] + basis[j].scale(s)
                if not ca.norm(spec, x):
                    nulls.append(x)
    for nu in range(3):
        for x in nulls:
            pool.append(slot_point_vector(plane, x, nu))
    for x in basis:
        pool.append(chart2_vector(plane, x))
        for y in basis:
            pool.append(chart_vector(plane, x, y))
    return tuple(w for w in pool if is_veronese(plane, w))


def _through_both(plane: PlaneKind, vectors, limit: int = 4):
    found: list[VVector] = []
    for w in _witness_pool(plane):
        if all(not beta(plane, v, w) for v in vectors) and not any(proportional(w, f) for f in found):
            found.append(canonical(w))
            if len(found) >= limit:
                break
    return found


def _join_vectors(plane: PlaneKind, v: VVector, w: VVector):
    hp = _symmetric_hurwitz(plane) if not plane.hurwitz else plane
    X, Y = psi(hp, to_hurwitz(plane, v)), psi(hp, to_hurwitz(plane, w))
    C = al.cross(X, Y)
    if not C or al.sharp(C):
        return None
    return from_hurwitz(plane, psi_inv(C))


def join(plane: PlaneKind, p: Point, q: Point, witnesses: bool = True):
    if p == q:
        raise SamePoint("join needs two distinct points")
    d = _join_vectors(plane, p.rep, q.rep)
    if d is None:
        found = _through_both(plane, [p.rep, q.rep]) if witnesses else []
        return Degenerate("the cross of the two points vanishes", [Line(plane, w) for w in found])
    l = Line(plane, canonical(d))
    if not (incident(plane, p, l) and incident(plane, q, l)):
        raise ArithmeticError("join failed its incidence post-condition")
    return l


def meet(plane: PlaneKind, l: Line, m: Line):
    if l == m:
        raise SamePoint("meet needs two distinct lines")
    d = _join_vectors(plane, l.dual, m.dual)
    if d is None:
        return Degenerate("the cross of the two lines vanishes",
                          [Point(plane, w) for w in _through_both(plane, [l.dual, m.dual])])
    p = Point(plane, canonical(d))
    if not (incident(plane, p, l) and incident(plane, p, m)):
        raise ArithmeticError("meet failed its incidence post-condition")
    return p


def collinear(plane: PlaneKind, a: Point, b: Point, c: Point) -> bool:
    """True when some line passes through all three points."""
    l = join(plane, a, b)
    if isinstance(l, Degenerate):
        return any(not beta(plane, c.rep, w.dual) for w in l.witnesses)
    return incident(plane, c, l)


# ---------------------------------------------------------------------------
# axiom scan

def quadrangle(plane: PlaneKind) -> list[Point]:
    k = plane.algebra
    one = ca.basis(k, 0)
    return [point(plane, unit_vector(plane, nu)) for nu in (1, 2, 3)] + [
        point(plane, chart_vector(plane, one, one))]


def format_vvector(v: VVector) -> str:
    from .scalars import format_scalar
    xs = "|".join(",".join(format_scalar(c) for c in x.coords) for x in v.x)
    return f"v=({xs};{','.join(format_scalar(c) for c in v.l)})"


@dataclass
class ScanReport:
    plane: str
    samples: int
    seed: int
    pairs: int = 0
    unique_joins: int = 0
    violations: list = field(default_factory=list)
    quadrangle: list = field(default_factory=list)
    quadrangle_ok: bool = False

    def as_dict(self):
        return {"plane": self.plane, "samples": self.samples, "seed": self.seed,
                "pairs": self.pairs, "unique_joins": self.unique_joins,
                "violations": self.violations, "quadrangle": self.quadrangle,
                "quadrangle_ok": self.quadrangle_ok}


def _sample_pair(plane, rng, i):
    """Even indices: two open-chart points. Odd indices: two isotropic slot
    points, which exist only when the coordinate algebra has null vectors."""
    if i % 2 == 1:
        a = slot_point_vector(plane, mirrored_null(plane, rng))
        b = slot_point_vector(plane, mirrored_null(plane, rng))
        if a.x[0] and b.x[0] and is_veronese(plane, a) and is_veronese(plane, b):
            return a, b
    return sample_chart(plane, rng, 1), sample_chart(plane, rng, 1)


def axiom_scan(plane: PlaneKind, samples: int = 500, seed: int = 0, name: str | None = None,
               max_witnesses: int = 3) -> ScanReport:
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = random.Random(f"scan:{seed}:{plane}")
    rep = ScanReport(name or str(plane), samples, seed)
    for i in range(samples):
        a, b = _sample_pair(plane, rng, i)
        p, q = point(plane, a), point(plane, b)
        if p == q:
            continue
        rep.pairs += 1
        l = join(plane, p, q, witnesses=len(rep.violations) < max_witnesses)
        if isinstance(l, Degenerate):
            if l.witnesses:
                rep.violations.append({
                    "p": format_vvector(p.rep), "q": format_vvector(q.rep),
                    "lines": [format_vvector(w.dual) for w in l.witnesses],
                })
            else:
                rep.violations.append({"p": format_vvector(p.rep), "q": format_vvector(q.rep)})
        else:
            rep.unique_joins += 1
    quad = quadrangle(plane)
    rep.quadrangle = [format_vvector(p.rep) for p in quad]
    rep.quadrangle_ok = not any(
        collinear(plane, quad[i], quad[j], quad[k])
        for i in range(4) for j in range(i + 1, 4) for k in range(j + 1, 4))
    return rep


# ---------------------------------------------------------------------------
# isomorphisms with the octonion planes

def _as(kind_from: AlgebraKind, family: Family):
    return AlgebraKind(family, kind_from.complexified)


def _slotwise(v: VVector, target: AlgebraKind, maps) -> VVector:
    xs = [f(ca.reinterpret(x, target)) for f, x in zip(maps, v.x)]
    return VVector(xs, v.l, target)


def phi_iso(v: VVector) -> VVector:
    """Okubo-type coordinates to octonion-type: (tau^2 conj x1, conj x2, tau conj x3)."""
    if not v.kind.family.okubo:
        raise ValueError("phi_iso expects an Okubo or split-Okubo vector")
    t = _as(v.kind, Family.OCTONION.with_split(v.kind.family.split))
    c, tau = ca.conj, ca.tau
    return _slotwise(v, t, (lambda a: tau(tau(c(a))), c, lambda a: tau(c(a))))


def phi_inv(v: VVector, target: AlgebraKind) -> VVector:
    c, tau = ca.conj, ca.tau
    back = (lambda a: c(tau(a)), c, lambda a: c(tau(tau(a))))
    xs = [f(x) for f, x in zip(back, v.x)]
    return VVector([ca.reinterpret(x, target) for x in xs], v.l, target)


def pphi_iso(v: VVector) -> VVector:
    """Para-octonion coordinates to octonion-type: conjugate every slot."""
    if not v.kind.family.para:
        raise ValueError("pphi_iso expects a para-octonion vector")
    t = _as(v.kind, Family.OCTONION.with_split(v.kind.family.split))
    return _slotwise(v, t, (ca.conj,) * 3)


def pphi_inv(v: VVector, target: AlgebraKind) -> VVector:
    xs = [ca.reinterpret(ca.conj(x), target) for x in v.x]
    return VVector(xs, v.l, target)


def iso_target(plane: PlaneKind) -> PlaneKind:
    return _symmetric_hurwitz(plane)


# ---------------------------------------------------------------------------
# linear maps on the 27-dimensional coordinate space

def apply_collineation(plane: PlaneKind, M, v: VVector):
    """Exact action of a 27x27 matrix (list of rows) on coordinates (x1, x2, x3, l)."""
    c = v.coords()
    if hasattr(M, "shape"):
        import numpy as np
        return np.asarray(M) @ to_float_vector(v)
    zero = plane.algebra.zero
    out = []
    for row in M:
        acc = zero
        for a, b in zip(row, c):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return VVector.from_coords(out, plane.algebra)


def to_float_vector(v: VVector):
    import numpy as np
    from .scalars import to_float
    if v.kind.complexified:
        return np.array([complex(*to_float(c)) for c in v.coords()])
    return np.array([to_float(c) for c in v.coords()])


def veronese_residual_float(plane: PlaneKind, vec) -> float:
    """Largest violation of the Veronese conditions for a float coordinate vector."""
    import numpy as np
    T = ca.float_table(plane.algebra)
    nd = np.array(plane.spec.normdiag, dtype=float)
    xs = [vec[0:8], vec[8:16], vec[16:24]]
    ls = vec[24:27]
    conj = np.array([1.0] + [-1.0] * 7)
    worst = 0.0
    for nu in range(3):
        a, b = (nu + 1) % 3, (nu + 2) % 3
        g = plane.g(nu)
        prod = np.einsum("i,j,ijk->k", xs[a], xs[b], T) * g
        lhs = xs[nu] * conj if plane.hurwitz else xs[nu]
        worst = max(worst, float(np.max(np.abs(lhs * ls[nu] - prod))))
        worst = max(worst, float(abs(np.sum(nd * xs[nu] * xs[nu]) - g * ls[a] * ls[b])))
    return worst


def preserves_veronese(plane: PlaneKind, M, samples: int = 50, seed: int = 0, tol: float = 1e-8) -> bool:
    rng = random.Random(f"collineation:{seed}")
    for _ in range(samples):
        v = sample_veronese(plane, rng)
        if hasattr(M, "shape"):
            img = apply_collineation(plane, M, v)
            scale = max(1.0, float(abs(to_float_vector(v)).max()) ** 2)
            if veronese_residual_float(plane, img) > tol * scale:
                return False
        elif not is_veronese(plane, apply_collineation(plane, M, v)):
            return False
    return True


def cyclic_shift_matrix(plane: PlaneKind):
    """(x1, x2, x3; l1, l2, l3) -> (x2, x3, x1; l2, l3, l1) as an exact matrix."""
    k = plane.algebra
    perm = list(range(8, 24)) + list(range(0, 8)) + [25, 26, 24]
    return [[k.one if j == perm[i] else k.zero for j in range(27)] for i in range(27)]
