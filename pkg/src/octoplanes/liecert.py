"""Lie algebras attached to the algebras: derivations, Jordan derivations and
infinitesimal symmetries of the cubic norm, with dimension and Killing-form
certificates.

Kernels of the 27-dimensional problems are found in floating point by SVD;
a rank is only accepted when every tolerance of the sweep agrees on it. The
8-dimensional derivation problems are also solved exactly over Q(sqrt3).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import albert as al
from . import compalg as ca
from . import linalg
from .compalg import AlgebraKind
from .scalars import to_float

TOLERANCES = (1e-6, 1e-8, 1e-10)
SIGNATURE_BAND = 1e-6
ALBERT_DIM = 27


def bound(v: float) -> float:
    """Smallest power of ten at or above v, so reports stay byte-stable."""
    if v <= 0:
        return 0.0
    return float(f"1e{math.ceil(math.log10(v))}")


class RankInstability(ArithmeticError):
    pass


class IndeterminateSignature(ArithmeticError):
    pass


@dataclass
class LieBasis:
    name: str
    space_dim: int
    basis: list
    ranks: dict = field(default_factory=dict)
    exact_dim: int | None = None
    structure_constants: np.ndarray | None = None
    closure_residual: float | None = None
    killing: np.ndarray | None = None
    signature: tuple | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def character(self) -> int | None:
        if self.signature is None:
            return None
        return self.signature[0] - self.signature[1]

    def stacked(self) -> np.ndarray:
        """Basis operators as columns of a (space_dim**2, dim) matrix."""
        return np.stack([b.reshape(-1) for b in self.basis], axis=1)


# ---------------------------------------------------------------------------
# kernels

def float_kernel(A: np.ndarray, tolerances=TOLERANCES):
    """Null space of A with a rank that must agree across the tolerance sweep.

    Returns (basis rows, {tol: rank}).
    """
    if A.shape[0] > A.shape[1]:
        # same singular values and right vectors, far smaller factorization
        A = np.linalg.qr(A, mode="r")
    _, s, vh = np.linalg.svd(A, full_matrices=True)
    top = s[0] if s.size else 0.0
    ranks = {t: int(np.sum(s > t * top)) for t in tolerances}
    if len(set(ranks.values())) != 1:
        raise RankInstability(f"rank depends on the tolerance: {ranks}")
    r = ranks[tolerances[0]]
    return vh[r:].conj(), ranks


def derivation_equations(spec: ca.AlgebraSpec, exact: bool = False):
    """Rows of D(b_i b_j) - D(b_i) b_j - b_i D(b_j) = 0, unknowns D[p][q] at p*8+q.

    D[p][q] is the b_p coefficient of D(b_q). Rows run over i, j, then the
    output coordinate k.
    """
    n = ca.DIM
    if exact:
        zero = spec.kind.zero
        C = [[[spec.constant(i, j, k) for k in range(n)] for j in range(n)] for i in range(n)]
        rows = []
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    row = [zero] * (n * n)
                    for m in range(n):
                        c = C[i][j][m]
                        if c:
                            row[k * n + m] = row[k * n + m] + c
                        c = C[m][j][k]
                        if c:
                            row[m * n + i] = row[m * n + i] - c
                        c = C[i][m][k]
                        if c:
                            row[m * n + j] = row[m * n + j] - c
                    rows.append(row)
        return rows
    C = ca.float_table(spec.kind.real())
    A = np.zeros((n, n, n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                A[i, j, k, k, :] += C[i, j, :]
                A[i, j, k, :, i] -= C[:, j, k]
                A[i, j, k, :, j] -= C[i, :, k]
    return A.reshape(n ** 3, n * n)


def derivation_space(spec: ca.AlgebraSpec, tolerances=TOLERANCES, exact: bool = True) -> LieBasis:
    A = derivation_equations(spec)
    ker, ranks = float_kernel(A, tolerances)
    lb = LieBasis(f"der({spec.kind})", ca.DIM, [v.reshape(ca.DIM, ca.DIM) for v in ker], ranks)
    if exact:
        rows = derivation_equations(spec, exact=True)
        lb.exact_dim = ca.DIM ** 2 - linalg.rank(rows, ca.DIM ** 2)
    return lb


def exact_derivation_basis(spec: ca.AlgebraSpec):
    """Exact kernel vectors as 8x8 matrices over the ground field."""
    rows = derivation_equations(spec, exact=True)
    ker = linalg.nullspace(rows, ca.DIM ** 2, spec.kind.zero, spec.kind.one)
    return [[v[p * ca.DIM:(p + 1) * ca.DIM] for p in range(ca.DIM)] for v in ker]


@lru_cache(maxsize=None)
def jordan_constants(kind: AlgebraKind, gamma=(1, 1, 1)) -> np.ndarray:
    """C[i, j, k]: coefficient of basis k in basis_i . basis_j (27-dim)."""
    real = kind.real()
    basis = [al.from_coords([real.one if t == i else real.zero for t in range(ALBERT_DIM)], gamma, real)
             for i in range(ALBERT_DIM)]
    C = np.zeros((ALBERT_DIM,) * 3)
    for i in range(ALBERT_DIM):
        for j in range(i, ALBERT_DIM):
            v = [to_float(c) for c in al.jordan_mul(basis[i], basis[j]).coords()]
            C[i, j] = v
            C[j, i] = v
    C.setflags(write=False)
    return C


def jordan_derivation_equations(kind: AlgebraKind, gamma=(1, 1, 1)) -> np.ndarray:
    """D(X.Y) = DX.Y + X.DY on unordered basis pairs; unknowns D[p, q] at p*27+q."""
    C = jordan_constants(kind.real(), tuple(gamma))
    n = ALBERT_DIM
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    A = np.zeros((len(pairs), n, n, n))
    idx = np.arange(n)
    for r, (i, j) in enumerate(pairs):
        A[r, idx, idx, :] += C[i, j, :]
        A[r, :, :, i] -= C[:, j, :].T
        A[r, :, :, j] -= C[i, :, :].T
    return A.reshape(len(pairs) * n, n * n)


def jordan_derivation_space(kind: AlgebraKind, gamma=(1, 1, 1), tolerances=TOLERANCES) -> LieBasis:
    A = jordan_derivation_equations(kind, gamma)
    ker, ranks = float_kernel(A, tolerances)
    return LieBasis(f"der(J[{kind};{gamma}])", ALBERT_DIM,
                    [v.reshape(ALBERT_DIM, ALBERT_DIM) for v in ker], ranks)


@lru_cache(maxsize=None)
def norm_tensor(kind: AlgebraKind, gamma=(1, 1, 1)) -> np.ndarray:
    """Symmetric n[a, b, c] with N(X) = sum n[a,b,c] X_a X_b X_c."""
    real = kind.real()
    T = ca.float_table(real)
    d = np.array(ca.build_spec(real).normdiag, dtype=float)
    g1, g2, g3 = gamma
    n = np.zeros((ALBERT_DIM,) * 3)
    for p in itertools.permutations((0, 1, 2)):
        n[p] += 1.0 / 6
    off = lambda s: 3 + 8 * s
    for lam, slot, g in ((0, 0, g2 * g3), (1, 1, g1 * g3), (2, 2, g1 * g2)):
        for k in range(8):
            c = -g * d[k] / 3
            a = off(slot) + k
            n[lam, a, a] += c
            n[a, lam, a] += c
            n[a, a, lam] += c
    # polar(x1 x2, conj x3): conj flips b1..b7
    s = np.array([1.0] + [-1.0] * 7)
    t = 2 * T * (d * s)[None, None, :]
    for a in range(8):
        for b in range(8):
            for c in range(8):
                v = t[a, b, c]
                if v:
                    idx = (off(0) + a, off(1) + b, off(2) + c)
                    for p in itertools.permutations(idx):
                        n[p] += v / 6
    n.setflags(write=False)
    return n


def eval_norm_tensor(n: np.ndarray, X) -> float:
    return np.einsum("abc,a,b,c->", n, X, X, X)


def norm_invariance_equations(kind: AlgebraKind, gamma=(1, 1, 1)) -> np.ndarray:
    """One row per cubic monomial X_d X_b X_c (d <= b <= c) of N(DX, X, X) = 0."""
    n = norm_tensor(kind.real(), tuple(gamma))
    m = ALBERT_DIM
    triples = np.array(list(itertools.combinations_with_replacement(range(m), 3)))
    d, b, c = triples[:, 0], triples[:, 1], triples[:, 2]
    rows = np.arange(len(triples))
    A = np.zeros((len(triples), m, m))
    A[rows, :, d] += n[:, b, c].T
    A[rows, :, b] += n[:, d, c].T
    A[rows, :, c] += n[:, d, b].T
    A = A.reshape(len(triples), m * m)
    if kind.complexified:
        A = A.astype(complex)
    return A


def norm_invariance_space(kind: AlgebraKind, gamma=(1, 1, 1), tolerances=TOLERANCES) -> LieBasis:
    A = norm_invariance_equations(kind, gamma)
    ker, ranks = float_kernel(A, tolerances)
    return LieBasis(f"inv(N[{kind};{gamma}])", ALBERT_DIM,
                    [v.reshape(ALBERT_DIM, ALBERT_DIM) for v in ker], ranks)


def membership_residual(A: np.ndarray, D: np.ndarray) -> float:
    """Largest equation defect of operator D, relative to its size."""
    v = D.reshape(-1)
    scale = max(float(np.abs(v).max()), 1e-300)
    return float(np.abs(A @ v).max()) / scale


# ---------------------------------------------------------------------------
# Lie structure

def closure_check(lb: LieBasis) -> float:
    """Express each bracket in the basis by least squares; returns the worst
    residual relative to the basis scale and stores the structure constants."""
    B = lb.stacked()
    dim = lb.dim
    brackets = np.empty((B.shape[0], dim * dim), dtype=B.dtype)
    for i, Di in enumerate(lb.basis):
        for j, Dj in enumerate(lb.basis):
            brackets[:, i * dim + j] = (Di @ Dj - Dj @ Di).reshape(-1)
    coef, *_ = np.linalg.lstsq(B, brackets, rcond=None)
    scale = max(float(np.abs(B).max()) ** 2, 1e-300)
    res = float(np.abs(B @ coef - brackets).max()) / scale
    lb.structure_constants = coef.T.reshape(dim, dim, dim)
    lb.closure_residual = res
    return res


def killing_signature(lb: LieBasis, band: float = SIGNATURE_BAND) -> tuple:
    if lb.structure_constants is None:
        closure_check(lb)
    c = lb.structure_constants.real
    # ad(D_i)[k, j] = c[i, j, k]; K_ij = trace(ad_i ad_j)
    K = np.einsum("ilk,jkl->ij", c, c)
    K = (K + K.T) / 2
    lb.killing = K
    ev = np.linalg.eigvalsh(K)
    top = float(np.abs(ev).max()) if ev.size else 0.0
    if top == 0.0 or np.any(np.abs(ev) < band * top):
        raise IndeterminateSignature("Killing eigenvalue inside the zero band")
    lb.signature = (int(np.sum(ev > 0)), int(np.sum(ev < 0)), 0)
    return lb.signature


# ---------------------------------------------------------------------------
# maps between the algebras

def lift_algebra_derivation(D: np.ndarray) -> np.ndarray:
    """Act by D on each off-diagonal slot and by zero on the diagonal."""
    D = np.asarray(D)
    L = np.zeros((ALBERT_DIM, ALBERT_DIM), dtype=D.dtype)
    for s in range(3):
        o = 3 + 8 * s
        L[o:o + 8, o:o + 8] = D
    return L


def multiplication_operator(kind: AlgebraKind, gamma, X) -> np.ndarray:
    """Matrix of Y -> X.Y for a float coordinate vector X."""
    C = jordan_constants(kind.real(), tuple(gamma))
    return np.einsum("i,ijk->kj", np.asarray(X, dtype=float), C)


def traceless_basis() -> list:
    """e1 - e2, e2 - e3 and the 24 off-diagonal coordinates."""
    out = []
    for a, b in ((0, 1), (1, 2)):
        v = np.zeros(ALBERT_DIM)
        v[a], v[b] = 1.0, -1.0
        out.append(v)
    for k in range(3, ALBERT_DIM):
        v = np.zeros(ALBERT_DIM)
        v[k] = 1.0
        out.append(v)
    return out


def exp_operator(D: np.ndarray, t: float, order: int = 12) -> np.ndarray:
    """Truncated exponential series of tD."""
    if order < 8:
        raise ValueError("order must be at least 8")
    D = np.asarray(D)
    out = np.eye(D.shape[0], dtype=D.dtype)
    term = np.eye(D.shape[0], dtype=D.dtype)
    for k in range(1, order + 1):
        term = term @ D * (t / k)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# certificates

JORDAN_TARGETS = {
    "J3-O": (ca.O, (1, 1, 1)),
    "J21-O": (ca.O, (1, 1, -1)),
    "J3-Os": (ca.OS, (1, 1, 1)),
    "J21-Os": (ca.OS, (1, 1, -1)),
    "J3C-O": (ca.O.complexify(), (1, 1, 1)),
}

ALGEBRA_TARGETS = {
    "O": ca.O, "Os": ca.OS, "pO": ca.PO, "pOs": ca.POS, "Ok": ca.OK, "Oks": ca.OKS,
}

# (expected dim, expected character or None)
EXPECTED = {
    ("der", "O"): (14, -14), ("der", "Os"): (14, 2),
    ("der", "pO"): (14, -14), ("der", "pOs"): (14, 2),
    ("der", "Ok"): (8, -8), ("der", "Oks"): (8, None),
    ("f4", "J3-O"): (52, -52), ("f4", "J21-O"): (52, -20),
    ("f4", "J3-Os"): (52, 4), ("f4", "J21-Os"): (52, 4),
    ("e6", "J3-O"): (78, -26), ("e6", "J21-O"): (78, -26),
    ("e6", "J3-Os"): (78, 6), ("e6", "J21-Os"): (78, 6),
    ("e6", "J3C-O"): (78, None),
}


def compute_space(family: str, target: str, tolerances=TOLERANCES) -> LieBasis:
    if family == "der":
        return derivation_space(ca.build_spec(ALGEBRA_TARGETS[target]), tolerances)
    kind, gamma = JORDAN_TARGETS[target]
    if family == "f4":
        return jordan_derivation_space(kind, gamma, tolerances)
    if family == "e6":
        return norm_invariance_space(kind, gamma, tolerances)
    raise KeyError(family)


def certify(family: str, target: str, tolerances=TOLERANCES, closure_tol: float = 1e-8) -> dict:
    """Dimension, closure and signature certificate as a JSON-ready dict."""
    if (family, target) not in EXPECTED:
        raise KeyError(f"unknown target {family}:{target}")
    exp_dim, exp_char = EXPECTED[(family, target)]
    complex_field = family == "e6" and JORDAN_TARGETS[target][0].complexified
    out = {"target": f"{family}:{target}", "expected_dim": exp_dim,
           "expected_character": exp_char, "tolerances": list(tolerances)}
    try:
        lb = compute_space(family, target, tolerances)
    except RankInstability as exc:
        out.update(dim=None, signature=None, character=None, residuals={}, passed=False,
                   error=str(exc))
        return out
    out["dim"] = lb.dim
    out["ranks"] = {f"{t:g}": r for t, r in lb.ranks.items()}
    if lb.exact_dim is not None:
        out["exact_dim"] = lb.exact_dim
    ok = lb.dim == exp_dim and (lb.exact_dim is None or lb.exact_dim == exp_dim)
    residuals = {}
    sig = None
    if not complex_field:
        residuals["closure"] = closure_check(lb)
        ok = ok and residuals["closure"] <= closure_tol
        try:
            sig = killing_signature(lb)
        except IndeterminateSignature as exc:
            out["error"] = str(exc)
            ok = False
    out["signature"] = list(sig) if sig else None
    out["character"] = lb.character if sig else None
    if exp_char is not None:
        ok = ok and sig is not None and lb.character == exp_char
    out["residuals"] = {k: bound(v) for k, v in residuals.items()}
    out["passed"] = bool(ok)
    return out


# ---------------------------------------------------------------------------
# exact lower bound for the Jordan derivations

def _full_matrix(X: al.AlbertElement):
    """All nine entries as algebra elements (diagonal scalars times the unit)."""
    E = al.entries(X)
    one = ca.basis(X.kind, 0)
    return [[E[r][c] if isinstance(E[r][c], ca.AlgebraElement) else one.scale(E[r][c])
             for c in range(3)] for r in range(3)]


def _matmul(spec, A, B):
    z = ca.zero_element(spec.kind)
    return [[sum((ca.mul(spec, A[r][t], B[t][c]) for t in range(3)), z) for c in range(3)]
            for r in range(3)]


def commutator_operator(A, gamma=(1, 1, 1), kind: AlgebraKind = ca.O):
    """Exact 27x27 matrix (rows of Fractions) of X -> AX - XA for a 3x3 matrix
    A of algebra elements."""
    spec = ca.build_spec(kind)
    cols = []
    for i in range(ALBERT_DIM):
        X = al.from_coords([kind.one if t == i else kind.zero for t in range(ALBERT_DIM)], gamma, kind)
        E = _full_matrix(X)
        P, Q = _matmul(spec, A, E), _matmul(spec, E, A)
        Z = [[P[r][c] - Q[r][c] for c in range(3)] for r in range(3)]
        if any(any(Z[r][r].coords[1:]) for r in range(3)):
            raise ArithmeticError("commutator left the Albert algebra")
        lam = [Z[r][r].coords[0] for r in range(3)]
        vec = lam + [c for v in (Z[1][2], Z[2][0], Z[0][1]) for c in v.coords]
        cols.append([c.a for c in vec] if all(not c.b for c in vec) else None)
        if cols[-1] is None:
            raise ArithmeticError("irrational entry in a commutator operator")
    return [[cols[j][i] for j in range(ALBERT_DIM)] for i in range(ALBERT_DIM)]


def skew_operators(gamma=(1, 1, 1), kind: AlgebraKind = ca.O) -> list:
    """The 38 commutators with traceless skew matrices: 24 off-diagonal
    (a at (r,c), -g_r g_c conj(a) at (c,r)) and 14 diagonal (u, -u, 0), (0, v, -v)
    with u, v imaginary basis units."""
    z = ca.zero_element(kind)
    ops = []
    for r, c in ((0, 1), (1, 2), (2, 0)):
        g = gamma[r] * gamma[c]
        for k in range(8):
            a = ca.basis(kind, k)
            A = [[z] * 3 for _ in range(3)]
            A[r][c] = a
            A[c][r] = -ca.conj(a).scale(g)
            ops.append(commutator_operator(A, gamma, kind))
    for p, q in ((0, 1), (1, 2)):
        for k in range(1, 8):
            u = ca.basis(kind, k)
            A = [[z] * 3 for _ in range(3)]
            A[p][p] = u
            A[q][q] = -u
            ops.append(commutator_operator(A, gamma, kind))
    return ops


def lifted_exact_derivations(kind: AlgebraKind = ca.O) -> list:
    """Exact derivations of the coordinate algebra, lifted to 27x27 rows."""
    out = []
    for D in exact_derivation_basis(ca.build_spec(kind)):
        L = [[Fraction(0)] * ALBERT_DIM for _ in range(ALBERT_DIM)]
        for s in range(3):
            o = 3 + 8 * s
            for p in range(8):
                for q in range(8):
                    v = D[p][q]
                    if v.b:
                        raise ArithmeticError("irrational derivation entry")
                    L[o + p][o + q] = v.a
        out.append(L)
    return out


def exact_jordan_residual(kind: AlgebraKind, gamma, M) -> int:
    """Largest defect of the derivation equations, computed in integers."""
    C2 = np.rint(2 * jordan_constants(kind.real(), tuple(gamma))).astype(np.int64)
    den = 1
    for row in M:
        for v in row:
            den = den * Fraction(v).denominator // math.gcd(den, Fraction(v).denominator)
    D = np.array([[int(Fraction(v) * den) for v in row] for row in M], dtype=np.int64)
    A2 = np.rint(2 * jordan_derivation_equations(kind, gamma)).astype(np.int64)
    return int(np.abs(A2 @ D.reshape(-1)).max())


def f4_lower_bound(kind: AlgebraKind = ca.O, gamma=(1, 1, 1)) -> dict:
    """Exact witness that the Jordan derivations have dimension at least 52."""
    ops = skew_operators(gamma, kind) + lifted_exact_derivations(kind)
    worst = max(exact_jordan_residual(kind, gamma, M) for M in ops)
    flat = [[v for row in M for v in row] for M in ops]
    r = linalg.rank(flat, ALBERT_DIM * ALBERT_DIM)
    return {"operators": len(ops), "max_residual": worst, "rank": r}


# ---------------------------------------------------------------------------
# inclusions and group-level spot checks

JORDAN_PLANES = {"J3-O": "O-P2", "J21-O": "O-H2", "J3-Os": "Os-P2", "J21-Os": "Os-H2"}


def stable_rank(M: np.ndarray, tolerances=TOLERANCES) -> int:
    s = np.linalg.svd(M, compute_uv=False)
    ranks = {t: int(np.sum(s > t * max(s[0], 1.0))) for t in tolerances}
    if len(set(ranks.values())) != 1:
        raise RankInstability(f"rank depends on tolerance: {ranks}")
    return ranks[tolerances[0]]


def chevalley_schafer_rank(kind: AlgebraKind, gamma=(1, 1, 1), f4: LieBasis | None = None,
                           tolerances=TOLERANCES) -> int:
    """Rank of the Jordan derivations joined with the 26 traceless multiplications."""
    if f4 is None:
        f4 = jordan_derivation_space(kind, gamma, tolerances)
    ops = [b.reshape(-1) for b in f4.basis]
    ops += [multiplication_operator(kind, gamma, X).reshape(-1) for X in traceless_basis()]
    return stable_rank(np.stack(ops, axis=1), tolerances)


def inclusion_report(target: str, f4: LieBasis | None = None) -> dict:
    """f4 inside e6, lifted g2 inside f4, and the Chevalley-Schafer rank."""
    kind, gamma = JORDAN_TARGETS[target]
    real = kind.real()
    if f4 is None:
        f4 = jordan_derivation_space(real, gamma)
    E = norm_invariance_equations(real, gamma)
    F = jordan_derivation_equations(real, gamma)
    e6_res = [membership_residual(E, D) for D in f4.basis]
    g2 = derivation_space(ca.build_spec(ca.O if not real.family.split else ca.OS), exact=False)
    g2_res = [membership_residual(F, lift_algebra_derivation(D)) for D in g2.basis]
    return {
        "target": target,
        "f4_in_e6_max_residual": bound(max(e6_res)),
        "f4_in_e6_count": sum(r <= 1e-9 for r in e6_res),
        "f4_dim": f4.dim,
        "g2_in_f4_max_residual": bound(max(g2_res)),
        "g2_in_f4_count": sum(r <= 1e-9 for r in g2_res),
        "g2_dim": g2.dim,
        "chevalley_schafer_rank": chevalley_schafer_rank(real, gamma, f4),
    }


def jordan_float(kind: AlgebraKind, gamma, X, Y) -> np.ndarray:
    C = jordan_constants(kind.real(), tuple(gamma))
    return np.einsum("i,j,ijk->k", X, Y, C)


def albert_to_plane_matrix(G: np.ndarray) -> np.ndarray:
    """Re-express an operator on (l, x1, x2, x3) coordinates in (x1, x2, x3, l) order."""
    perm = list(range(3, ALBERT_DIM)) + [0, 1, 2]
    return G[np.ix_(perm, perm)]


def group_spot_check(target: str, samples: int = 20, t: float = 0.1, seed: int = 0,
                     f4: LieBasis | None = None, tol: float = 1e-8) -> dict:
    """exp(tD) for random D in the Jordan derivations preserves the product,
    the trace and the Veronese set."""
    from . import planes as pl
    kind, gamma = JORDAN_TARGETS[target]
    if f4 is None:
        f4 = jordan_derivation_space(kind, gamma)
    plane = pl.PLANES[JORDAN_PLANES[target]]
    rng = np.random.default_rng(seed)
    B = np.stack(f4.basis)
    worst = {"product": 0.0, "trace": 0.0}
    veronese_ok = 0
    for s in range(samples):
        D = np.tensordot(rng.standard_normal(len(B)), B, axes=1)
        D /= np.abs(D).max()
        G = exp_operator(D, t, order=20)
        for _ in range(5):
            X, Y = rng.standard_normal(ALBERT_DIM), rng.standard_normal(ALBERT_DIM)
            lhs = G @ jordan_float(kind, gamma, X, Y)
            rhs = jordan_float(kind, gamma, G @ X, G @ Y)
            worst["product"] = max(worst["product"], float(np.abs(lhs - rhs).max()))
            worst["trace"] = max(worst["trace"], float(abs((G @ X)[:3].sum() - X[:3].sum())))
        if pl.preserves_veronese(plane, albert_to_plane_matrix(G), samples=10, seed=seed * 1000 + s, tol=tol):
            veronese_ok += 1
    return {"target": target, "samples": samples, "t": t,
            "product_residual": bound(worst["product"]), "trace_residual": bound(worst["trace"]),
            "veronese_preserved": veronese_ok,
            "passed": worst["product"] <= tol and worst["trace"] <= tol and veronese_ok == samples}


def trace_breaking_witness(target: str, t: float = 0.1, e6: LieBasis | None = None) -> dict | None:
    """First norm-invariance basis element whose exponential moves the trace of the unit."""
    kind, gamma = JORDAN_TARGETS[target]
    if e6 is None:
        e6 = norm_invariance_space(kind, gamma)
    one = np.zeros(ALBERT_DIM)
    one[:3] = 1.0
    for i, D in enumerate(e6.basis):
        G = exp_operator(D, t, order=20)
        shift = complex((G @ one)[:3].sum() - 3.0)
        if abs(shift) > 1e-3:
            return {"target": target, "basis_index": i, "trace_shift": float(f"{abs(shift):.3g}")}
    return None
