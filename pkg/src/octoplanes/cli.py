"""Command-line certificates: algebra, albert, planes, lie and report."""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from importlib import resources

from . import albert as al
from . import compalg as ca
from . import liecert as lc
from . import planes as pl
from .compalg import AlgebraKind, Family
from .scalars import format_scalar

SCHEMA_VERSION = 1
DEFAULT_TOLERANCES = (1e-6, 1e-8, 1e-10)

KINDS = {
    "octonion": ca.O, "O": ca.O,
    "split-octonion": ca.OS, "Os": ca.OS,
    "para-octonion": ca.PO, "pO": ca.PO,
    "split-para-octonion": ca.POS, "pOs": ca.POS,
    "okubo": ca.OK, "Ok": ca.OK,
    "split-okubo": ca.OKS, "Oks": ca.OKS,
}
JORDAN = {k: v for k, v in lc.JORDAN_TARGETS.items()}
REAL_JORDAN = [k for k, (kind, _) in JORDAN.items() if not kind.complexified]
HURWITZ_PLANES = ["O-P2", "O-H2", "Os-P2", "Os-H2"]
SCAN_PLANES = ["O-P2", "O-H2", "Os-P2", "Os-H2", "Ok-P2", "pO-P2"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    subcommand: str
    selectors: dict = field(default_factory=dict)
    samples: int = 500
    seed: int = 0
    tolerances: tuple = DEFAULT_TOLERANCES
    out: str | None = None
    format: str = "json"

    def echo(self) -> dict:
        d = asdict(self)
        d["tolerances"] = list(self.tolerances)
        d.pop("out")
        return d


@dataclass
class Report:
    config: RunConfig
    checks: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c["passed"] for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "config": self.config.echo(),
            "checks": self.checks,
            "summary": {"passed": self.passed, "total": len(self.checks),
                        "failed": [c["name"] for c in self.checks if not c["passed"]]},
            "wall_time": round(self.wall_time, 3),
        }

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.as_dict(), indent=2, sort_keys=True, default=str) + "\n"
        lines = [f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}" for c in self.checks]
        lines.append(f"{'PASS' if self.passed else 'FAIL'}  {len(self.checks)} checks, "
                     f"{self.wall_time:.1f}s")
        return "\n".join(lines) + "\n"


def check(name: str, ok: bool, **details) -> dict:
    return {"name": name, "passed": bool(ok), "details": details}


def data_text(name: str) -> str:
    return resources.files("octoplanes").joinpath("data", name).read_text()


# ---------------------------------------------------------------------------
# suites

def law_checks(kind: AlgebraKind, laws=ca.LAWS, samples: int = 1000, seed: int = 0) -> list:
    spec = ca.build_spec(kind)
    expected = ca.EXPECTED_LAWS[kind.family]
    out = []
    for law in laws:
        rep = ca.identity_check(spec, law, samples, seed)
        ok = rep.passed == expected[law]
        if law == "division" and kind.family.split:
            ok = ok and bool(rep.counterexample) and "y" in rep.counterexample
        out.append(check(f"algebra:{kind.family.value}:{law}", ok, holds=rep.passed,
                         expected=expected[law], report=rep.as_dict()))
    return out


def ingest_table(path: str, family: Family | None = None) -> ca.AlgebraSpec:
    """Parse and verify a structure-constant file. Without an explicit family
    a table identical to a built-in one takes that family's label."""
    with open(path, encoding="utf-8") as fh:
        spec = ca.parse_table(fh.read(), family)
    if family is None:
        for kind in ca.REAL_KINDS:
            ref = ca.build_spec(kind)
            if spec.same_table(ref):
                return ref
    return spec


def albert_checks(target: str, samples: int = 200, seed: int = 0) -> list:
    """Exact Jordan, adjoint, Freudenthal and characteristic-cubic identities."""
    kind, gamma = JORDAN[target]
    rng = random.Random(f"albert:{seed}:{target}")
    one = al.identity(gamma, kind)
    fails = {k: 0 for k in ("jordan", "adjoint", "cross_unit", "cross_cross", "char_cubic")}
    first = {}
    for _ in range(samples):
        X = al.random_albert(rng, gamma, kind)
        Y = al.random_albert(rng, gamma, kind)
        N = al.cubic_norm(X)
        X2 = al.jordan_mul(X, X)
        XX = al.cross(X, X)
        tests = {
            "jordan": al.jordan_mul(al.jordan_mul(X, Y), X2) == al.jordan_mul(X, al.jordan_mul(Y, X2)),
            "adjoint": al.sharp(al.sharp(X)) == X.scale(N),
            "cross_unit": al.jordan_mul(XX, X) == one.scale(2 * N),
            "cross_cross": al.cross(XX, XX) == X.scale(8 * N),
            "char_cubic": not al.char_cubic_residual(X),
        }
        for k, ok in tests.items():
            if not ok:
                fails[k] += 1
                first.setdefault(k, al.format_albert(X))
    return [check(f"albert:{target}:{k}", fails[k] == 0, samples=samples, failures=fails[k],
                  counterexample=first.get(k)) for k in fails]


def veronese_checks(plane_name: str, samples: int = 200, seed: int = 0) -> list:
    """Veronese vectors are rank one under psi and back."""
    plane = pl.PLANES[plane_name]
    rng = random.Random(f"veronese:{seed}:{plane_name}")
    bad_sharp = bad_trace = 0
    vecs = []
    for i in range(samples):
        v = pl.sample_veronese(plane, rng)
        vecs.append(v)
        if al.sharp(pl.psi(plane, v)):
            bad_sharp += 1
        c = pl.canonical(v)
        if sum(c.l, plane.algebra.zero) and al.trace(pl.psi(plane, c)) != plane.algebra.one:
            bad_trace += 1
    # rank-one elements from crosses of two rank-one elements
    conv = bad_conv = 0
    for a, b in zip(vecs[0::2], vecs[1::2]):
        W = al.cross(pl.psi(plane, a), pl.psi(plane, b))
        t = al.trace(W)
        if not W or not t:
            continue
        W = W.scale(1 / t)
        conv += 1
        if al.rank(W) != 1 or not pl.is_veronese(plane, pl.psi_inv(W)):
            bad_conv += 1
    return [
        check(f"planes:{plane_name}:psi_sharp_zero", bad_sharp == 0, samples=samples, failures=bad_sharp),
        check(f"planes:{plane_name}:trace_one", bad_trace == 0, samples=samples, failures=bad_trace),
        check(f"planes:{plane_name}:rank_one_is_veronese", bad_conv == 0 and conv > 0,
              tested=conv, failures=bad_conv),
    ]


def expects_violations(plane: pl.PlaneKind) -> bool:
    return plane.algebra.family.split or plane.algebra.complexified


def axiom_checks(plane_name: str, samples: int = 500, seed: int = 0) -> list:
    plane = pl.PLANES[plane_name]
    rep = pl.axiom_scan(plane, samples, seed, name=plane_name)
    if expects_violations(plane):
        ok = bool(rep.violations) and all(v.get("lines") for v in rep.violations[:1])
    else:
        ok = not rep.violations and rep.unique_joins == rep.pairs
    d = rep.as_dict()
    d["violation_count"] = len(rep.violations)
    d["violations"] = rep.violations[:3]
    return [check(f"planes:{plane_name}:axioms", ok and rep.quadrangle_ok, **d)]


ISO_PLANES = {
    f"{short}-{'P2' if gamma == (1, 1, 1) else 'H2'}": pl.PlaneKind(KINDS[short], gamma)
    for short in ("Ok", "Oks", "pO", "pOs")
    for gamma in al.GAMMAS
}


def iso_checks(plane: pl.PlaneKind, samples: int = 500, seed: int = 0, name: str | None = None) -> list:
    """The slotwise isomorphism to the octonion-type plane keeps the Veronese
    conditions and the bilinear form."""
    name = name or str(plane)
    fam = plane.algebra.family
    fwd = pl.phi_iso if fam.okubo else pl.pphi_iso
    back = pl.phi_inv if fam.okubo else pl.pphi_inv
    target = pl.iso_target(plane)
    rng = random.Random(f"iso:{seed}:{name}")
    units = [pl.unit_vector(plane, nu) for nu in (1, 2, 3)]
    bad_ver = bad_beta = bad_back = orth = 0
    prev = None
    for i in range(samples):
        chart = (1, 1, 2, 3)[i % 4] if i % 8 else 2
        v = pl.sample_chart(plane, rng, chart)
        img = fwd(v)
        if not pl.is_veronese(target, img):
            bad_ver += 1
        if back(img, plane.algebra).coords() != v.coords():
            bad_back += 1
        for w in ([prev] if prev is not None else []) + units:
            b0 = pl.beta(plane, v, w)
            if not b0:
                orth += 1
            if pl.beta(target, img, fwd(w)) != b0:
                bad_beta += 1
        prev = v
    return [check(f"iso:{name}", bad_ver == 0 and bad_beta == 0 and bad_back == 0 and orth > 0,
                  samples=samples, veronese_failures=bad_ver, beta_failures=bad_beta,
                  inverse_failures=bad_back, orthogonal_pairs=orth)]


def lie_cert_checks(family: str, target: str, tolerances=DEFAULT_TOLERANCES) -> list:
    cert = lc.certify(family, target, tuple(tolerances))
    return [check(f"lie:{family}:{target}", cert["passed"], **cert)]


def lower_bound_checks(target: str) -> list:
    kind, gamma = JORDAN[target]
    rep = lc.f4_lower_bound(kind, gamma)
    return [check(f"lie:f4-lower-bound:{target}", rep["max_residual"] == 0 and rep["rank"] == 52, **rep)]


def inclusion_checks(target: str) -> list:
    rep = lc.inclusion_report(target)
    ok = (rep["f4_in_e6_count"] == rep["f4_dim"] == 52 and rep["g2_in_f4_count"] == rep["g2_dim"] == 14
          and rep["chevalley_schafer_rank"] == 78)
    return [check(f"lie:inclusions:{target}", ok, **rep)]


def spot_checks(target: str, samples: int = 20, seed: int = 0) -> list:
    kind, gamma = JORDAN[target]
    f4 = lc.jordan_derivation_space(kind, gamma)
    rep = lc.group_spot_check(target, samples, 0.1, seed, f4)
    wit = lc.trace_breaking_witness(target)
    return [check(f"lie:exp-f4:{target}", rep["passed"], **rep),
            check(f"lie:e6-trace-witness:{target}", wit is not None, witness=wit)]


# ---------------------------------------------------------------------------
# argument handling

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tolerances", type=float, nargs="+", default=list(DEFAULT_TOLERANCES))
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "text"), default="json")

    p = _Parser(prog="octoplanes", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("algebra").add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    v = a.add_parser("verify", parents=[common])
    v.add_argument("--kind", choices=sorted(KINDS), action="append")
    v.add_argument("--law", choices=ca.LAWS, action="append")
    t = a.add_parser("table", parents=[common])
    t.add_argument("--kind", choices=sorted(KINDS), required=True)
    i = a.add_parser("ingest", parents=[common])
    i.add_argument("path")
    i.add_argument("--kind", choices=sorted(KINDS))

    b = sub.add_parser("albert").add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    ident = b.add_parser("identities", parents=[common])
    ident.add_argument("--jordan", choices=sorted(JORDAN), action="append")
    ev = b.add_parser("eval", parents=[common])
    ev.add_argument("element", help="an element in the 'albert gamma=... kind=...' text format")

    c = sub.add_parser("planes").add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    ax = c.add_parser("axioms", parents=[common])
    ax.add_argument("--plane", choices=sorted(pl.PLANES), action="append")
    ve = c.add_parser("veronese", parents=[common])
    ve.add_argument("--plane", choices=HURWITZ_PLANES + ["OC-P2"], action="append")
    iso = c.add_parser("iso", parents=[common])
    iso.add_argument("--plane", choices=sorted(ISO_PLANES), action="append")

    d = sub.add_parser("lie").add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    ce = d.add_parser("cert", parents=[common])
    ce.add_argument("--target", choices=("der", "f4", "e6"), required=True)
    ce.add_argument("--algebra", choices=sorted(lc.ALGEBRA_TARGETS))
    ce.add_argument("--jordan", choices=sorted(JORDAN))
    for name in ("lower-bound", "inclusion", "spot"):
        q = d.add_parser(name, parents=[common])
        q.add_argument("--jordan", choices=REAL_JORDAN, action="append")

    r = sub.add_parser("report").add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    rr = r.add_parser("run", parents=[common])
    rr.add_argument("--suite", choices=("quick", "full"), default="quick")
    r.add_parser("schema", parents=[common])
    return p


def _config(ns) -> RunConfig:
    skip = {"command", "subcommand", "samples", "seed", "tolerances", "out", "format"}
    selectors = {k: v for k, v in sorted(vars(ns).items()) if k not in skip and v is not None}
    return RunConfig(ns.command, ns.subcommand, selectors,
                     ns.samples if ns.samples is not None else 500, ns.seed,
                     tuple(ns.tolerances), ns.out, ns.format)


def _samples(cfg: RunConfig) -> int:
    if cfg.samples < 1:
        raise UsageError("--samples must be positive")
    return cfg.samples


def _jordan_cert_target(ns) -> tuple[str, str]:
    if ns.target == "der":
        if not ns.algebra or ns.jordan:
            raise UsageError("lie cert --target der needs --algebra")
        return "der", ns.algebra
    if not ns.jordan or ns.algebra:
        raise UsageError(f"lie cert --target {ns.target} needs --jordan")
    if (ns.target, ns.jordan) not in lc.EXPECTED:
        raise UsageError(f"no {ns.target} certificate for {ns.jordan}")
    return ns.target, ns.jordan


def _suite(cfg: RunConfig, ns) -> list | str:
    n = _samples(cfg)
    s, tol = cfg.seed, cfg.tolerances
    cmd = (cfg.command, cfg.subcommand)
    if cmd == ("algebra", "verify"):
        kinds = [KINDS[k] for k in ns.kind] if ns.kind else list(ca.REAL_KINDS)
        out = []
        for kind in dict.fromkeys(kinds):
            out += law_checks(kind, ns.law or ca.LAWS, n, s)
        return out
    if cmd == ("algebra", "table"):
        return ca.dump_table(ca.build_spec(KINDS[ns.kind]))
    if cmd == ("algebra", "ingest"):
        fam = KINDS[ns.kind].family if ns.kind else None
        try:
            spec = ingest_table(ns.path, fam)
        except (ca.TableParseError, ca.CompositionFailure, OSError) as exc:
            return [check("algebra:ingest", False, path=ns.path, error=str(exc))]
        ref = ca.build_spec(spec.kind)
        return [check("algebra:ingest", True, path=ns.path, family=spec.kind.family.value,
                      matches_builtin=spec.same_table(ref))]
    if cmd == ("albert", "identities"):
        return [c for t in (ns.jordan or sorted(JORDAN)) for c in albert_checks(t, n, s)]
    if cmd == ("albert", "eval"):
        try:
            X = al.parse_albert(ns.element)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        r = al.cubic_report(X)
        return [check("albert:eval", True, norm=format_scalar(r.N), trace=format_scalar(r.trace),
                      S=format_scalar(r.S), rank=r.rank, sharp=al.format_albert(r.sharp))]
    if cmd == ("planes", "axioms"):
        return [c for p in (ns.plane or SCAN_PLANES) for c in axiom_checks(p, n, s)]
    if cmd == ("planes", "veronese"):
        return [c for p in (ns.plane or HURWITZ_PLANES) for c in veronese_checks(p, n, s)]
    if cmd == ("planes", "iso"):
        return [c for p in (ns.plane or sorted(ISO_PLANES)) for c in iso_checks(ISO_PLANES[p], n, s, p)]
    if cmd == ("lie", "cert"):
        return lie_cert_checks(*_jordan_cert_target(ns), tol)
    if cmd == ("lie", "lower-bound"):
        return [c for t in (ns.jordan or REAL_JORDAN) for c in lower_bound_checks(t)]
    if cmd == ("lie", "inclusion"):
        return [c for t in (ns.jordan or REAL_JORDAN) for c in inclusion_checks(t)]
    if cmd == ("lie", "spot"):
        m = ns.samples if ns.samples is not None else 20
        return [c for t in (ns.jordan or REAL_JORDAN) for c in spot_checks(t, m, s)]
    if cmd == ("report", "schema"):
        return data_text("report.schema.json")
    if cmd == ("report", "run"):
        out = []
        for kind in ca.REAL_KINDS:
            out += law_checks(kind, ca.LAWS, min(n, 200), s)
        for t in sorted(JORDAN):
            out += albert_checks(t, min(n, 50), s)
        for p in HURWITZ_PLANES:
            out += veronese_checks(p, min(n, 50), s)
        for p in SCAN_PLANES:
            out += axiom_checks(p, min(n, 100), s)
        for p in sorted(ISO_PLANES):
            out += iso_checks(ISO_PLANES[p], min(n, 100), s, p)
        for a in sorted(lc.ALGEBRA_TARGETS):
            out += lie_cert_checks("der", a, tol)
        if ns.suite == "full":
            for fam, t in sorted(k for k in lc.EXPECTED if k[0] != "der"):
                out += lie_cert_checks(fam, t, tol)
            for t in REAL_JORDAN:
                out += lower_bound_checks(t) + inclusion_checks(t) + spot_checks(t, 20, s)
        return out
    raise UsageError(f"unknown command {cfg.command} {cfg.subcommand}")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def execute(argv) -> tuple[int, Report | None]:
    """Run one command; returns (exit code, report or None for raw output)."""
    try:
        ns = build_parser().parse_args(argv)
        cfg = _config(ns)
        t0 = time.perf_counter()
        result = _suite(cfg, ns)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return 2, None
    except SystemExit as exc:  # --help
        return (0 if not exc.code else 2), None
    except Exception as exc:  # noqa: BLE001 - any internal failure is a failed certificate
        sys.stderr.write(f"internal failure: {type(exc).__name__}: {exc}\n")
        return 1, None
    if isinstance(result, str):
        _emit(result, cfg.out)
        return 0, None
    rep = Report(cfg, result, time.perf_counter() - t0)
    _emit(rep.render(cfg.format), cfg.out)
    if not rep.passed:
        for c in rep.checks:
            if not c["passed"]:
                err = c["details"].get("error")
                sys.stderr.write(f"failed: {c['name']}" + (f": {err}" if err else "") + "\n")
    return (0 if rep.passed else 1), rep


def run(argv=None) -> int:
    return execute(sys.argv[1:] if argv is None else argv)[0]


def main() -> None:
    sys.exit(run())
