from __future__ import annotations

import random
from fractions import Fraction
from importlib import resources

import numpy as np
import pytest
from hypothesis import given, strategies as st

from octoplanes import compalg as ca
from octoplanes.compalg import Family
from octoplanes.scalars import ONE, SQRT3, ZERO, CScalar, Scalar, format_scalar, parse_scalar, to_float

HALF = Scalar(Fraction(1, 2))
ints = st.integers(-3, 3)
coords8 = st.lists(ints, min_size=8, max_size=8)


def el(kind, coords):
    return ca.element(kind, [Scalar(c) for c in coords])


def b(kind, k):
    return ca.basis(kind, k)


# ---------------------------------------------------------------------------
# independent oracles

def _qmul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array([a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                     a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                     a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                     a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2])


def _qconj(p):
    return p * np.array([1, -1, -1, -1])


def cayley_dickson(eps):
    """Doubling of the quaternions with l^2 = eps: (a,b)(c,d) = (ac + eps d*b, da + bc*)."""
    T = np.zeros((8, 8, 8))
    E = np.eye(8)
    for i in range(8):
        for j in range(8):
            a, bb, c, d = E[i][:4], E[i][4:], E[j][:4], E[j][4:]
            T[i, j, :4] = _qmul(a, c) + eps * _qmul(_qconj(d), bb)
            T[i, j, 4:] = _qmul(d, a) + _qmul(bb, _qconj(c))
    return T


def okubo_oracle():
    """Okubo table from complex matrices in numpy, decomposed by least squares."""
    mats = [np.array([[complex(*to_float(v)) for v in row] for row in m]) for m in ca.OKUBO_BASIS]
    mu = (3 + 1j * np.sqrt(3)) / 6
    A = np.stack([m.reshape(-1) for m in mats], axis=1)
    T = np.zeros((8, 8, 8))
    for i in range(8):
        for j in range(8):
            p = mats[i] @ mats[j]
            q = mats[j] @ mats[i]
            r = mu * p + np.conj(mu) * q - np.trace(p) / 3 * np.eye(3)
            sol = np.linalg.lstsq(A, r.reshape(-1), rcond=None)[0]
            assert np.abs(sol.imag).max() < 1e-12
            T[i, j] = sol.real
    return T


def test_octonion_table_is_cayley_dickson():
    assert np.array_equal(ca.float_table(ca.O), cayley_dickson(-1.0))


def test_split_octonion_table_is_cayley_dickson():
    assert np.array_equal(ca.float_table(ca.OS), cayley_dickson(+1.0))


def test_okubo_table_matches_matrix_oracle():
    assert np.allclose(ca.float_table(ca.OK), okubo_oracle(), atol=1e-13)


def test_table_sizes():
    # nonzero constants in the shipped tables; frozen from the oracles above
    counts = {k: len(list(ca.build_spec(k).entries())) for k in ca.REAL_KINDS}
    assert counts == {ca.O: 64, ca.OS: 64, ca.PO: 64, ca.POS: 64, ca.OK: 112, ca.OKS: 112}


# ---------------------------------------------------------------------------
# examples

def test_octonion_squares():
    spec = ca.build_spec(ca.O)
    assert ca.mul(spec, b(ca.O, 1), b(ca.O, 1)) == -b(ca.O, 0)


def test_split_squares():
    spec = ca.build_spec(ca.OS)
    for k in range(1, 8):
        sq = ca.mul(spec, b(ca.OS, k), b(ca.OS, k))
        assert sq == (b(ca.OS, 0) if k >= 4 else -b(ca.OS, 0))


@pytest.mark.parametrize("kind", [ca.OK, ca.OKS])
def test_okubo_idempotent(kind):
    spec = ca.build_spec(kind)
    e = b(kind, 0)
    assert ca.mul(spec, e, e) == e
    assert ca.norm(spec, e) == ONE


def test_okubo_matrix_of_idempotent():
    m = ca.okubo_matrix(b(ca.OK, 0))
    assert [[m[r][c] for c in range(3)] for r in range(3)] == [
        [CScalar(Scalar(2)), CScalar(), CScalar()],
        [CScalar(), CScalar(Scalar(-1)), CScalar()],
        [CScalar(), CScalar(), CScalar(Scalar(-1))]]


def test_okubo_matrix_norm():
    m = ca.okubo_matrix(b(ca.OK, 1))
    sq = ca._mm(m, m)
    assert ca._tr(sq) * Scalar(Fraction(1, 6)) == CScalar(ONE)


@given(coords8)
def test_unit(c):
    x = el(ca.O, c)
    spec = ca.build_spec(ca.O)
    assert ca.mul(spec, b(ca.O, 0), x) == x == ca.mul(spec, x, b(ca.O, 0))


@pytest.mark.parametrize("kind", [ca.PO, ca.POS])
@given(c=coords8)
def test_paraunit(kind, c):
    x = el(kind, c)
    spec = ca.build_spec(kind)
    one = b(kind, 0)
    assert ca.mul(spec, one, x) == ca.conj(x) == ca.mul(spec, x, one)


def test_conj_examples():
    assert ca.conj(b(ca.O, 0)) == b(ca.O, 0)
    assert ca.conj(b(ca.O, 1)) == -b(ca.O, 1)


@pytest.mark.parametrize("kind", ca.REAL_KINDS)
@given(c=coords8)
def test_conj_involution(kind, c):
    x = el(kind, c)
    assert ca.conj(ca.conj(x)) == x


@pytest.mark.parametrize("kind", [ca.O, ca.OS])
@given(c=coords8, d=coords8)
def test_conj_antihomomorphism(kind, c, d):
    spec = ca.build_spec(kind)
    x, y = el(kind, c), el(kind, d)
    assert ca.conj(ca.mul(spec, x, y)) == ca.mul(spec, ca.conj(y), ca.conj(x))
    assert ca.mul(spec, x, ca.conj(x)) == b(kind, 0).scale(ca.norm(spec, x))


def test_norm_and_polar_examples():
    assert ca.norm(ca.build_spec(ca.OS), b(ca.OS, 0) + b(ca.OS, 4)) == ZERO
    spec = ca.build_spec(ca.O)
    x, y = b(ca.O, 1), b(ca.O, 2)
    assert ca.polar(spec, x, y) == ca.norm(spec, x + y) - ca.norm(spec, x) - ca.norm(spec, y) == ZERO


@pytest.mark.parametrize("kind, sig", [(k, (4, 4) if k.family.split else (8, 0)) for k in ca.REAL_KINDS])
def test_gram_signature(kind, sig):
    spec = ca.build_spec(kind)
    G = np.array([[to_float(ca.polar(spec, b(kind, i), b(kind, j))) for j in range(8)] for i in range(8)])
    ev = np.linalg.eigvalsh(G)
    assert (int((ev > 0).sum()), int((ev < 0).sum())) == sig


# ---------------------------------------------------------------------------
# tau

def test_tau_fixes_quaternion_part():
    for k in range(4):
        assert ca.tau(b(ca.O, k)) == b(ca.O, k)


def test_tau_rotation():
    # the rotation plane (b4, b6) plays the role of the plane of a 120 degree turn
    expected = b(ca.O, 4).scale(-HALF) + b(ca.O, 6).scale(Scalar(0, Fraction(1, 2)))
    assert ca.tau(b(ca.O, 4)) == expected


@pytest.mark.parametrize("kind", [ca.O, ca.OS, ca.OK, ca.OKS])
@given(c=coords8, d=coords8)
def test_tau_automorphism_of_order_three(kind, c, d):
    spec = ca.build_spec(kind)
    x, y = el(kind, c), el(kind, d)
    assert ca.tau(ca.tau(ca.tau(x))) == x
    assert ca.tau(ca.mul(spec, x, y)) == ca.mul(spec, ca.tau(x), ca.tau(y))
    assert ca.norm(spec, ca.tau(x)) == ca.norm(spec, x)


@pytest.mark.parametrize("split", [False, True])
@given(c=coords8)
def test_okubo_tau_and_conj_agree_with_hurwitz(split, c):
    ok = ca.OKS if split else ca.OK
    h = ca.OS if split else ca.O
    x = el(ok, c)
    assert ca.tau(x).coords == ca.tau(ca.reinterpret(x, h)).coords
    assert ca.conj(x).coords == ca.conj(ca.reinterpret(x, h)).coords


# ---------------------------------------------------------------------------
# conversions

COLUMNS = [(ca.O, ca.PO, ca.OK), (ca.OS, ca.POS, ca.OKS)]


@pytest.mark.parametrize("column", COLUMNS)
@given(c=coords8, d=coords8)
def test_all_conversions(column, c, d):
    for kf in column:
        for kt in column:
            x, y = el(kf, c), el(kf, d)
            got = ca.convert(ca.build_spec(kf), ca.build_spec(kt), x, y)
            want = ca.mul(ca.build_spec(kt), ca.reinterpret(x, kt), ca.reinterpret(y, kt))
            assert got == want


def test_idempotent_converts_to_unit():
    e = b(ca.OK, 0)
    assert ca.convert(ca.build_spec(ca.OK), ca.build_spec(ca.O), e, e) == b(ca.O, 0)


def test_conversion_across_columns_rejected():
    with pytest.raises(ValueError):
        ca.convert(ca.build_spec(ca.O), ca.build_spec(ca.OKS), b(ca.O, 1), b(ca.O, 2))


@pytest.mark.parametrize("split", [False, True])
@given(c=coords8, d=coords8)
def test_okubo_derived_product_is_hurwitz(split, c, d):
    ok = ca.OKS if split else ca.OK
    spec = ca.build_spec(ok)
    e = b(ok, 0)
    x, y = el(ok, c), el(ok, d)
    m = lambda a, bb: ca.mul(spec, a, bb)
    o = lambda a, bb: m(m(e, a), m(bb, e))
    assert o(e, x) == x == o(x, e)
    assert ca.norm(spec, o(x, y)) == ca.norm(spec, x) * ca.norm(spec, y)
    assert o(o(x, x), y) == o(x, o(x, y))


# ---------------------------------------------------------------------------
# matrices

@pytest.mark.parametrize("kind", [ca.OK, ca.OKS])
@given(c=coords8, d=coords8)
def test_matrix_round_trip_and_product(kind, c, d):
    x, y = el(kind, c), el(kind, d)
    mx, my = ca.okubo_matrix(x), ca.okubo_matrix(y)
    assert ca.okubo_from_matrix(mx, kind) == x
    prod = ca.okubo_from_matrix(ca.okubo_matrix_product(mx, my), kind)
    assert prod == ca.mul(ca.build_spec(kind), x, y)


def test_matrix_must_be_traceless_hermitian():
    m = [[CScalar(ONE) if r == c else CScalar() for c in range(3)] for r in range(3)]
    with pytest.raises(ValueError):
        ca.okubo_from_matrix(m)
    m = [[CScalar() for _ in range(3)] for _ in range(3)]
    m[0][1] = CScalar(ONE)
    with pytest.raises(ValueError):
        ca.okubo_from_matrix(m)


def test_split_okubo_form():
    # b4 enters with a factor i; the result is Hermitian for diag(-1, 1, 1)
    m = ca.okubo_matrix(b(ca.OKS, 4))
    assert m[0][1] == CScalar(ZERO, SQRT3) and m[1][0] == CScalar(ZERO, SQRT3)


# ---------------------------------------------------------------------------
# zero divisors and laws

def test_split_zero_divisor_witness():
    spec = ca.build_spec(ca.OS)
    x = b(ca.OS, 0) + b(ca.OS, 4)
    found, y = ca.is_zero_divisor(spec, x, with_witness=True)
    assert found and y and not ca.mul(spec, x, y)
    assert not ca.mul(spec, x, b(ca.OS, 0) - b(ca.OS, 4))


@pytest.mark.parametrize("kind", [ca.O, ca.OK, ca.PO])
@given(c=coords8)
def test_division_families_have_no_zero_divisors(kind, c):
    x = el(kind, c)
    if x:
        spec = ca.build_spec(kind)
        assert ca.is_zero_divisor(spec, x, with_witness=True) == (False, None)


def test_zero_rejected():
    with pytest.raises(ValueError):
        ca.is_zero_divisor(ca.build_spec(ca.O), ca.zero_element(ca.O))


def test_law_examples():
    rep = ca.identity_check(ca.build_spec(ca.OK), "alternative", 50, 0)
    assert not rep.passed and rep.counterexample
    assert ca.identity_check(ca.build_spec(ca.OK), "flexible", 50, 0).passed
    assert ca.identity_check(ca.build_spec(ca.O), "composition", 50, 0).passed


def test_law_check_is_deterministic():
    spec = ca.build_spec(ca.OK)
    assert ca.identity_check(spec, "alternative", 20, 3) == ca.identity_check(spec, "alternative", 20, 3)


def test_law_check_arguments():
    with pytest.raises(ValueError):
        ca.identity_check(ca.build_spec(ca.O), "commutative", 0)
    with pytest.raises(ValueError):
        ca.identity_check(ca.build_spec(ca.O), "jordan", 5)


@pytest.mark.parametrize("kind", ca.REAL_KINDS)
@given(c=coords8, d=coords8)
def test_composition_every_family(kind, c, d):
    spec = ca.build_spec(kind)
    x, y = el(kind, c), el(kind, d)
    assert ca.norm(spec, ca.mul(spec, x, y)) == ca.norm(spec, x) * ca.norm(spec, y)


def test_kind_mismatch():
    with pytest.raises(ca.KindMismatch):
        b(ca.O, 1) + b(ca.OS, 1)


# ---------------------------------------------------------------------------
# complexification

def test_complex_split_isomorphism():
    cs, co = ca.OS.complexify(), ca.O.complexify()
    s_spec, o_spec = ca.build_spec(cs), ca.build_spec(co)
    for i in range(8):
        for j in range(8):
            x, y = b(cs, i), b(cs, j)
            lhs = ca.complex_split_iso(ca.mul(s_spec, x, y))
            rhs = ca.mul(o_spec, ca.complex_split_iso(x), ca.complex_split_iso(y))
            assert lhs == rhs


def test_complex_octonions_have_null_vectors():
    co = ca.O.complexify()
    x = b(co, 0) + b(co, 1).scale(CScalar(ZERO, ONE))
    assert ca.norm(ca.build_spec(co), x) == CScalar()


# ---------------------------------------------------------------------------
# table files

NAMES = {ca.O: "octonion", ca.OS: "split-octonion", ca.PO: "para-octonion",
         ca.POS: "split-para-octonion", ca.OK: "okubo", ca.OKS: "split-okubo"}


@pytest.mark.parametrize("kind", ca.REAL_KINDS)
def test_golden_tables_are_byte_stable(kind):
    text = resources.files("octoplanes").joinpath("data", "tables", f"{NAMES[kind]}.tbl").read_text()
    assert ca.dump_table(ca.build_spec(kind)) == text
    assert ca.parse_table(text, kind.family).same_table(ca.build_spec(kind))


def test_parse_errors_report_lines():
    with pytest.raises(ca.TableParseError) as exc:
        ca.parse_table("")
    assert exc.value.line == 1
    with pytest.raises(ca.TableParseError) as exc:
        ca.parse_table("dim 8\nnormdiag + + + + + + + +\n0 0 0 1\n0 0 x 1\n")
    assert exc.value.line == 4
    with pytest.raises(ca.TableParseError) as exc:
        ca.parse_table("dim 8\nnormdiag + + + +\n")
    assert exc.value.line == 2


def test_flipped_sign_is_rejected():
    text = ca.dump_table(ca.build_spec(ca.O)).replace("\n1 2 3 1/1", "\n1 2 3 -1/1")
    with pytest.raises(ca.CompositionFailure, match=r"basis pair \(\d, \d\)"):
        ca.parse_table(text)


@pytest.mark.parametrize("seed", range(4))
def test_any_single_sign_flip_is_rejected(seed):
    lines = ca.dump_table(ca.build_spec(ca.OK)).splitlines()
    k = random.Random(seed).randrange(2, len(lines))
    i, j, kk, c = lines[k].split(None, 3)
    lines[k] = f"{i} {j} {kk} {format_scalar(-parse_scalar(c))}"
    with pytest.raises(ca.CompositionFailure):
        ca.parse_table("\n".join(lines) + "\n", Family.OKUBO)
