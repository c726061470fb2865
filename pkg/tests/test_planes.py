from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from octoplanes import albert as al
from octoplanes import compalg as ca
from octoplanes import liecert as lc
from octoplanes import planes as pl
from octoplanes.scalars import I, ONE, ZERO, CScalar, Scalar

from conftest import lie_space

P = pl.PLANES
HURWITZ = ["O-P2", "O-H2", "Os-P2", "Os-H2", "OC-P2"]
seeds = st.integers(0, 2**32 - 1)


def el(kind, coords):
    return ca.element(kind, [Scalar(c) for c in coords])


def rng(seed):
    return random.Random(seed)


# ---------------------------------------------------------------------------
# the predicate

@pytest.mark.parametrize("name", sorted(P))
def test_unit_vector_is_veronese(name):
    assert pl.is_veronese(P[name], pl.unit_vector(P[name], 1))


@given(seed=seeds)
def test_second_chart_is_veronese(seed):
    plane = P["O-P2"]
    x = ca.random_element(ca.O, rng(seed))
    spec = plane.spec
    z = ca.zero_element(ca.O)
    v = pl.vvector(plane, [z, z, x], [ca.norm(spec, x), ONE, ZERO])
    assert pl.is_veronese(plane, v)


def test_null_slot_vector_in_split_plane():
    plane = P["Os-P2"]
    x = ca.basis(ca.OS, 1) + ca.basis(ca.OS, 5)
    assert ca.norm(plane.spec, x) == ZERO
    v = pl.slot_point_vector(plane, x)
    assert pl.is_veronese(plane, v)
    # the same coordinates are not Veronese over the octonions
    assert not pl.is_veronese(P["O-P2"], pl.slot_point_vector(P["O-P2"], ca.reinterpret(x, ca.O)))


@pytest.mark.parametrize("name", sorted(P))
@given(seed=seeds)
def test_chart_samples_are_veronese(name, seed):
    plane = P[name]
    r = rng(seed)
    for chart in (1, 2, 3):
        v = pl.sample_chart(plane, r, chart)
        assert pl.is_veronese(plane, v)
        assert pl.which_chart(plane, v) == chart


@pytest.mark.parametrize("name", sorted(P))
@given(seed=seeds, s=st.integers(-5, 5).filter(bool))
def test_scaling_closure(name, seed, s):
    plane = P[name]
    v = pl.sample_chart(plane, rng(seed), 1)
    assert pl.is_veronese(plane, v.scale(Scalar(s)))
    if plane.algebra.complexified:
        assert pl.is_veronese(plane, v.scale(CScalar(Scalar(s), ONE)))


@pytest.mark.parametrize("name", ["O-P2", "O-H2", "Ok-P2", "pO-P2"])
@given(seed=seeds)
def test_perturbed_chart_is_not_veronese(name, seed):
    plane = P[name]
    v = pl.sample_chart(plane, rng(seed), 1)
    w = pl.vvector(plane, v.x, (v.l[0] + 1, v.l[1], v.l[2]))
    assert not pl.is_veronese(plane, w)
    assert not pl.reduced_is_veronese(plane, w)


# ---------------------------------------------------------------------------
# reduced conditions

@pytest.mark.parametrize("name", ["O-P2", "O-H2", "Ok-P2", "Ok-H2", "pO-P2", "pO-H2"])
@given(seed=seeds)
def test_reduced_agrees_when_l1_nonzero(name, seed):
    plane = P[name]
    r = rng(seed)
    v = pl.sample_chart(plane, r, 1)
    w = pl.vvector(plane, (v.x[0], v.x[1], v.x[2] + ca.random_element(plane.algebra, r)), v.l)
    for u in (v, w):
        if u.l[0]:
            assert pl.reduced_is_veronese(plane, u) == pl.is_veronese(plane, u)


def test_reduced_on_second_chart():
    plane = P["O-P2"]
    v = pl.chart2_vector(plane, el(ca.O, (1, 2, 0, 0, 1, 0, 0, 0)))
    assert pl.reduced_is_veronese(plane, v) == pl.is_veronese(plane, v) is True


def test_reduced_fails_when_l1_vanishes():
    # (x1, 0, 0; 0, l2, l3) with n(x1) != l2 l3 passes the reduced test but is not Veronese
    plane = P["O-P2"]
    z = ca.zero_element(ca.O)
    v = pl.vvector(plane, [ca.basis(ca.O, 1), z, z], [ZERO, Scalar(2), Scalar(3)])
    assert pl.reduced_is_veronese(plane, v)
    assert not pl.is_veronese(plane, v)


def test_reduced_refuses_split_families():
    with pytest.raises(pl.SplitFamilyError):
        pl.reduced_is_veronese(P["Os-P2"], pl.unit_vector(P["Os-P2"], 1))


# ---------------------------------------------------------------------------
# form, incidence, polarity

def test_beta_examples():
    plane = P["O-P2"]
    e1, e2 = pl.unit_vector(plane, 1), pl.unit_vector(plane, 2)
    assert pl.beta(plane, e1, e2) == ZERO
    assert pl.beta(plane, e1, e1) == ONE


@pytest.mark.parametrize("name", sorted(P))
@given(seed=seeds)
def test_beta_symmetric(name, seed):
    plane = P[name]
    r = rng(seed)
    v, w = pl.sample_veronese(plane, r), pl.sample_veronese(plane, r)
    assert pl.beta(plane, v, w) == pl.beta(plane, w, v)


def test_incidence_examples():
    plane = P["O-P2"]
    p = pl.point(plane, pl.unit_vector(plane, 1))
    assert pl.incident(plane, p, pl.line(plane, pl.unit_vector(plane, 2)))
    assert not pl.incident(plane, p, pl.line(plane, pl.unit_vector(plane, 1)))


def test_polarity_examples():
    plane = P["O-P2"]
    p = pl.point(plane, pl.unit_vector(plane, 1))
    assert pl.polarity(plane, p) == pl.line(plane, pl.unit_vector(plane, 1))
    with pytest.raises(ValueError):
        pl.polarity(P["O-H2"], pl.point(P["O-H2"], pl.unit_vector(P["O-H2"], 1)))


@pytest.mark.parametrize("name", ["O-P2", "Os-P2", "Ok-P2", "pO-P2"])
@given(seed=seeds)
def test_polarity_involution_and_duality(name, seed):
    plane = P[name]
    r = rng(seed)
    p = pl.point(plane, pl.sample_veronese(plane, r))
    q = pl.point(plane, pl.sample_veronese(plane, r))
    assert pl.polarity_inv(plane, pl.polarity(plane, p)) == p
    assert pl.incident(plane, p, pl.polarity(plane, q)) == pl.incident(plane, q, pl.polarity(plane, p))


def test_points_are_rays():
    plane = P["O-P2"]
    v = pl.sample_chart(plane, rng(1), 1)
    assert pl.point(plane, v) == pl.point(plane, v.scale(Scalar(-3)))
    with pytest.raises(pl.NotVeronese):
        pl.point(plane, pl.vvector(plane, v.x, (v.l[0] + 1, v.l[1], v.l[2])))
    with pytest.raises(pl.NotVeronese):
        pl.point(plane, v.scale(ZERO))


def test_canonical_representative():
    plane = P["O-P2"]
    v = pl.sample_chart(plane, rng(2), 1).scale(Scalar(5))
    c = pl.canonical(v)
    assert c.l[0] + c.l[1] + c.l[2] == ONE
    assert pl.proportional(c, v)


def test_text_format():
    plane = P["O-P2"]
    s = pl.format_vvector(pl.unit_vector(plane, 1))
    assert s.startswith("v=(") and s.count("|") == 2 and ";" in s


# ---------------------------------------------------------------------------
# Albert correspondence

def test_psi_layout():
    plane = P["O-P2"]
    assert pl.psi(plane, pl.unit_vector(plane, 1)) == al.basis_e(1)
    assert pl.psi_inv(al.basis_e(3)) == pl.unit_vector(plane, 3)
    with pytest.raises(pl.NotRankOne):
        pl.psi_inv(al.identity())
    with pytest.raises(ValueError):
        pl.psi(P["Ok-P2"], pl.unit_vector(P["Ok-P2"], 1))


@pytest.mark.parametrize("name", HURWITZ)
@given(seed=seeds)
def test_veronese_iff_rank_one(name, seed):
    plane = P[name]
    r = rng(seed)
    v = pl.sample_veronese(plane, r)
    X = pl.psi(plane, v)
    assert not al.sharp(X) and al.rank(X) == 1
    c = pl.canonical(v)
    if sum(c.l, plane.algebra.zero):
        assert al.trace(pl.psi(plane, c)) == plane.algebra.one
    w = pl.vvector(plane, v.x, (v.l[0] + 1, v.l[1], v.l[2]))
    assert bool(al.sharp(pl.psi(plane, w))) == (not pl.is_veronese(plane, w))


@pytest.mark.parametrize("name", ["Os-P2", "Os-H2"])
@given(seed=seeds)
def test_zero_divisor_forces_l1_zero(name, seed):
    plane = P[name]
    r = rng(seed)
    x = ca.random_element(plane.algebra, r)
    y = pl.mirrored_null(plane, r)
    v = pl.chart_vector(plane, x, y)
    assert pl.is_veronese(plane, v)
    p = ca.mul(plane.spec, v.x[1], v.x[2])
    if v.x[1] and v.x[2] and not p:
        assert v.l[0] == ZERO


# ---------------------------------------------------------------------------
# joins

def test_join_of_units():
    plane = P["O-P2"]
    e = [pl.point(plane, pl.unit_vector(plane, nu)) for nu in (1, 2, 3)]
    assert pl.join(plane, e[0], e[1]) == pl.line(plane, pl.unit_vector(plane, 3))
    with pytest.raises(pl.SamePoint):
        pl.join(plane, e[0], e[0])


@pytest.mark.parametrize("name", ["O-P2", "O-H2", "Ok-P2", "pO-P2", "Os-P2"])
@given(seed=seeds)
def test_join_is_incident_and_meet_dual(name, seed):
    plane = P[name]
    r = rng(seed)
    p = pl.point(plane, pl.sample_chart(plane, r, 1))
    q = pl.point(plane, pl.sample_chart(plane, r, 1))
    if p == q:
        return
    l = pl.join(plane, p, q)
    if isinstance(l, pl.Degenerate):
        assert plane.algebra.family.split
        return
    assert pl.incident(plane, p, l) and pl.incident(plane, q, l)
    if plane.gamma == (1, 1, 1):
        m = pl.meet(plane, pl.polarity(plane, p), pl.polarity(plane, q))
        assert m == pl.polarity_inv(plane, l)


def test_split_degenerate_join_has_several_lines():
    plane = P["Os-P2"]
    x = ca.basis(ca.OS, 1) + ca.basis(ca.OS, 5)
    y = ca.basis(ca.OS, 2) + ca.basis(ca.OS, 6)
    p = pl.point(plane, pl.slot_point_vector(plane, x))
    q = pl.point(plane, pl.slot_point_vector(plane, y))
    d = pl.join(plane, p, q)
    assert isinstance(d, pl.Degenerate)
    assert len(d.witnesses) >= 2
    for l in d.witnesses:
        assert pl.incident(plane, p, l) and pl.incident(plane, q, l)
    assert len({pl.format_vvector(l.dual) for l in d.witnesses}) == len(d.witnesses)


@pytest.mark.parametrize("name, split", [("O-P2", False), ("Ok-P2", False), ("Os-P2", True), ("Os-H2", True)])
def test_small_axiom_scan(name, split):
    rep = pl.axiom_scan(P[name], samples=40, seed=3, name=name)
    assert rep.quadrangle_ok and len(rep.quadrangle) == 4
    if split:
        assert rep.violations and rep.violations[0]["lines"]
    else:
        assert not rep.violations and rep.unique_joins == rep.pairs > 0
    d = rep.as_dict()
    assert {"plane", "samples", "seed", "violations", "quadrangle"} <= set(d)


def test_axiom_scan_is_deterministic():
    a = pl.axiom_scan(P["Os-P2"], 20, 5).as_dict()
    b = pl.axiom_scan(P["Os-P2"], 20, 5).as_dict()
    assert a == b


# ---------------------------------------------------------------------------
# isomorphisms

SYMMETRIC = [pl.PlaneKind(k, g) for k in (ca.OK, ca.OKS, ca.PO, ca.POS) for g in al.GAMMAS]


def _iso(plane):
    return (pl.phi_iso, pl.phi_inv) if plane.algebra.family.okubo else (pl.pphi_iso, pl.pphi_inv)


def test_iso_fixes_unit_vector():
    plane = P["Ok-P2"]
    img = pl.phi_iso(pl.unit_vector(plane, 1))
    assert img == pl.unit_vector(pl.iso_target(plane), 1)


def test_para_iso_second_chart():
    # slot-wise conjugation sends (0,0,x; n(x),1,0) to (0,0,conj x; n(x),1,0)
    plane = P["pO-P2"]
    x = el(ca.PO, (1, 2, 0, -1, 0, 1, 0, 0))
    img = pl.pphi_iso(pl.chart2_vector(plane, x))
    target = pl.iso_target(plane)
    assert img == pl.chart2_vector(target, ca.conj(ca.reinterpret(x, ca.O)))


@pytest.mark.parametrize("plane", SYMMETRIC, ids=str)
@given(seed=seeds)
def test_iso_keeps_veronese_and_beta(plane, seed):
    fwd, back = _iso(plane)
    target = pl.iso_target(plane)
    r = rng(seed)
    v = pl.sample_veronese(plane, r)
    w = pl.sample_veronese(plane, r)
    assert pl.is_veronese(target, fwd(v))
    assert pl.beta(target, fwd(v), fwd(w)) == pl.beta(plane, v, w)
    assert back(fwd(v), plane.algebra) == v


@pytest.mark.parametrize("name", ["Oks-P2", "pOs-P2"])
def test_iso_outside_charts(name):
    # slot vectors of null elements lie outside every chart but still map to Veronese vectors
    plane = P[name]
    fwd, _ = _iso(plane)
    x = pl.mirrored_null(plane, rng(0))
    v = pl.slot_point_vector(plane, x)
    assert pl.which_chart(plane, v) is None and pl.is_veronese(plane, v)
    assert pl.is_veronese(pl.iso_target(plane), fwd(v))


def test_iso_rejects_wrong_family():
    with pytest.raises(ValueError):
        pl.phi_iso(pl.unit_vector(P["O-P2"], 1))
    with pytest.raises(ValueError):
        pl.pphi_iso(pl.unit_vector(P["Ok-P2"], 1))


# ---------------------------------------------------------------------------
# linear maps on coordinates

def test_cyclic_shift_and_identity_preserve():
    plane = P["Os-P2"]
    assert pl.preserves_veronese(plane, pl.cyclic_shift_matrix(plane), samples=30)
    ident = [[ONE if i == j else ZERO for j in range(27)] for i in range(27)]
    assert pl.preserves_veronese(plane, ident, samples=10)


def test_random_operator_breaks_veronese():
    plane = P["O-P2"]
    M = np.eye(27) + 0.1 * np.random.default_rng(0).standard_normal((27, 27))
    assert not pl.preserves_veronese(plane, M, samples=10)


def test_exponentiated_norm_symmetry_preserves():
    e6 = lie_space("e6", "J3-O")
    D = sum(e6.basis[i] * c for i, c in zip(range(0, 78, 7), (1, -2, 0.5, 3, -1, 1, 2, -0.5, 1, 1, -1, 2)))
    D = D / np.abs(D).max()
    G = lc.exp_operator(D, 0.1, order=12)
    assert pl.preserves_veronese(P["O-P2"], lc.albert_to_plane_matrix(G), samples=20, tol=1e-8)
