"""Command-line front end.

Every subcommand prints JSON by default (``--format text`` gives a plain
rendering).  Automorphisms are given either as a pure braid (``--braid
"A12 s2^2"``) or as generator images (``--aut "x1*x2*x1^-1; x1"``).

Exit codes: 0 success, 1 a verification check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import suites
from .alexander import alexander_matrix
from .automorphisms import AutError, AutP, FreeAut, MilnorTable, longitudes
from .braid import BraidError, artin, braid_autp, braid_gassner_exact, parse_braid
from .cyclotomic import FieldError, FrobeniusInput, jacobi_sum, soule_chi, soule_kappa
from .gassner import burau, burau_reduced, gassner, gassner_reduced, render_matrix
from .ihara import kappas_for, mu_from_jacobi, soule_identity_check
from .johnson import LevelTooLow, johnson_from_milnor, johnson_hom
from .magnus import magnus
from .rings import Ring, RingError
from .words import WordError, parse_word

DEFAULTS = {"l": 3, "N": 4, "D": 5}


class UsageError(ValueError):
    pass


class Config:
    """Shared numeric settings: prime l, precision N, truncation D, rank r, output format, seed."""

    def __init__(self, l: int = 3, N: int = 4, D: int = 5, r: Optional[int] = None, fmt: str = "json", seed: int = 0,
                 ring: str = "Z"):
        if l < 2 or any(l % d == 0 for d in range(2, int(l ** 0.5) + 1)):
            raise UsageError(f"l = {l} is not prime")
        if N < 1 or D < 1:
            raise UsageError("N and D must be at least 1")
        self.l, self.N, self.D, self.r, self.fmt, self.seed = l, N, D, r, fmt, seed
        self.ring_kind = ring

    @classmethod
    def from_args(cls, a) -> "Config":
        return cls(a.l, a.N, a.D, a.r, a.format, a.seed, getattr(a, "ring", "Z"))

    def ring(self) -> Ring:
        if self.ring_kind == "mod":
            return Ring.mod(self.l, self.N)
        return Ring(self.ring_kind)


# --------------------------------------------------------------------------
# input helpers


def parse_index(text: str) -> tuple:
    """"21" -> (2, 1); "1,10,2" -> (1, 10, 2)."""
    text = text.strip()
    parts = text.split(",") if "," in text else list(text)
    try:
        idx = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"bad multi-index {text!r}") from exc
    if not idx or min(idx) < 1:
        raise UsageError(f"bad multi-index {text!r}")
    return idx


def load_aut(args) -> AutP:
    if getattr(args, "braid", None):
        return braid_autp(parse_braid(args.braid, args.r))
    if getattr(args, "aut", None):
        images = [s for s in args.aut.split(";")]
        r = args.r or len(images)
        if len(images) != r:
            raise UsageError(f"expected {r} images, got {len(images)}")
        return longitudes(FreeAut([parse_word(s, r) for s in images]))
    raise UsageError("give --braid or --aut")


def _ser(x):
    if isinstance(x, int):
        return x
    if hasattr(x, "numerator") and x.denominator == 1:
        return int(x.numerator)
    return str(x)


# --------------------------------------------------------------------------
# subcommands; each returns (payload, text, exit code)


def cmd_magnus(a, cfg: Config):
    w = parse_word(a.word, cfg.r)
    s = magnus(w, cfg.D, cfg.ring()).render()
    return {"word": w.render(), "D": cfg.D, "series": s}, s, 0


def cmd_milnor(a, cfg: Config):
    g = load_aut(a)
    I = parse_index(a.I)
    if max(I) > g.r:
        raise UsageError(f"index {max(I)} exceeds r = {g.r}")
    ring = cfg.ring()
    t = MilnorTable(g, len(I), ring)
    out = {"I": list(I), "mode": a.mode, "mu": _ser(ring.signed(t.mu(I))), "delta": _ser(t.delta(I, a.mode))}
    return out, f"mu = {out['mu']}, delta = {out['delta']}", 0


def cmd_johnson(a, cfg: Config):
    g = load_aut(a)
    ring = cfg.ring()
    tau = johnson_hom(g, a.m, ring)
    table = MilnorTable(g, a.m + 1, ring)
    agree = all(johnson_from_milnor(table, a.m, i) == tau[i - 1] for i in range(1, g.r + 1))
    out = {"m": a.m, "tau": {f"X{i}": t.render() for i, t in enumerate(tau, start=1)}, "milnor_formula_agrees": agree}
    text = "\n".join(f"tau(X{i}) = {t.render()}" for i, t in enumerate(tau, start=1))
    return out, text, 0 if agree else 1


def _matrix_out(M):
    rows = render_matrix(M)
    return {"matrix": rows}, "\n".join(" | ".join(row) for row in rows), 0


def cmd_gassner(a, cfg: Config):
    g = load_aut(a)
    if a.exact:
        if not a.braid:
            raise UsageError("--exact needs --braid")
        rows = [[e.render() for e in row] for row in braid_gassner_exact(parse_braid(a.braid, a.r))]
        return {"matrix": rows}, "\n".join(" | ".join(r) for r in rows), 0
    return _matrix_out(gassner(g, cfg.D, cfg.ring()))


def cmd_gassner_red(a, cfg: Config):
    return _matrix_out(gassner_reduced(load_aut(a), cfg.D, cfg.ring()))


def cmd_burau(a, cfg: Config):
    g = load_aut(a)
    f = burau_reduced if a.reduced else burau
    return _matrix_out(f(g, cfg.D, cfg.ring()))


def cmd_alexander(a, cfg: Config):
    g = load_aut(a)
    data = alexander_matrix(g, cfg.D, cfg.ring())
    out = data.to_json()
    text = "\n".join([" | ".join(row) for row in out["Q"]] + [f"A = {out['A']}"])
    return out, text, 0


def cmd_braid(a, cfg: Config):
    b = parse_braid(a.braid, a.r)
    out = {"braid": b.render(), "strands": b.r, "pure": b.is_pure(), "permutation": b.permutation(),
           "images": artin(b).render()}
    if b.is_pure():
        g = braid_autp(b)
        out["chi"] = g.chi
        out["longitudes"] = [y.render() for y in g.longitudes]
    text = "\n".join(f"{k}: {v}" for k, v in out.items())
    return out, text, 0


def _frobenius(a) -> FrobeniusInput:
    return FrobeniusInput(a.p, a.l, a.n, a.f)


def cmd_jacobi(a, cfg: Config):
    Fr = _frobenius(a)
    F = Fr.field()
    J = jacobi_sum(F, a.a, a.b)
    ok = J * J.conj() == F.q
    out = {"p": a.p, "f": Fr.f, "l": a.l, "n": a.n, "a": a.a, "b": a.b, "J": list(J.coeffs), "weil_norm": ok}
    return out, f"J = {list(J.coeffs)} (power basis in zeta), |J|^2 = q: {ok}", 0 if ok else 1


def cmd_soule(a, cfg: Config):
    Fr = _frobenius(a)
    F = Fr.field()
    out = {"p": a.p, "f": Fr.f, "l": a.l, "n": a.n, "m": a.m,
           "chi": soule_chi(a.m, Fr, F), "kappa": soule_kappa(a.m, Fr, F) if a.m >= 2 else None}
    kap = "undefined for m = 1" if out["kappa"] is None else f"{out['kappa']}"
    return out, f"chi = {out['chi']} mod {a.l ** a.n}, kappa = {kap}", 0


def cmd_mu_table(a, cfg: Config):
    table = mu_from_jacobi(_frobenius(a), a.dmax)
    out = table.to_json()
    text = "\n".join(f"mu({k}) = {v['residue']} mod {a.l}^{v['precision']}" for k, v in out["mu"].items())
    return out, text + f"\nself-check: {table.self_check}", 0 if table.self_check else 1


def cmd_soule_check(a, cfg: Config):
    Fr = _frobenius(a)
    F = Fr.field()
    targets = [tuple(parse_index(t)) for t in a.targets.split(";")] if a.targets else [(1, 1), (2, 1), (1, 2)]
    if any(len(t) != 2 for t in targets):
        raise UsageError("targets are pairs such as '1,1;2,1'")
    dmax = max(a.dmax, max(sum(t) for t in targets))
    table = mu_from_jacobi(Fr, dmax, F)
    kap = kappas_for(Fr, max(3, max(sum(t) for t in targets)), F)
    res = [soule_identity_check(table, kap, n1, n2, a0=a.a0) for n1, n2 in targets]
    ok = table.self_check and all(r.ok for r in res)
    out = {"self_check": table.self_check, "kappa": {str(m): k for m, k in kap.items()},
           "residuals": [r.to_json() for r in res], "ok": ok}
    text = "\n".join(f"({r.N1},{r.N2}): residual {r.residual}, {r.certified} certified digit(s)" for r in res)
    return out, text, 0 if ok else 1


def cmd_verify(a, cfg: Config):
    names = list(suites.SUITES) if a.suite == "all" else [a.suite]
    checks = []
    for name in names:
        for c in suites.run_suite(name, cfg.seed):
            checks.append((name, c))
    ok = all(c.passed for _, c in checks)
    out = {"seed": cfg.seed, "ok": ok, "checks": [dict(suite=n, **c.to_json()) for n, c in checks]}
    text = "\n".join(f"{'PASS' if c.passed else 'FAIL'} [{n}] {c.name}: {c.cases} cases, {c.detail}" for n, c in checks)
    return out, text, 0 if ok else 1


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--l", type=int, default=DEFAULTS["l"], help="prime l (default 3)")
    common.add_argument("--N", type=int, default=DEFAULTS["N"], help="coefficient precision for Z/l^N (default 4)")
    common.add_argument("--D", type=int, default=DEFAULTS["D"], help="truncation degree (default 5)")
    common.add_argument("--r", type=int, default=None, help="rank; inferred from the input when omitted")
    common.add_argument("--ring", choices=("Z", "Q", "mod"), default="Z", help="coefficients: Z, Q or Z/l^N")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="also write the output to this file")

    def aut_args(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--braid", help='pure braid, e.g. "s1^2" or "A13 A12^-1"')
        g.add_argument("--aut", help='images of x1..xr separated by ";"')

    def frob_args(p):
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--n", type=int, default=1, help="character order l^n")
        p.add_argument("--f", type=int, default=None, help="residue degree (default: order of p mod l^n)")

    parser = argparse.ArgumentParser(prog="milnorlab", description="Magnus, Milnor, Johnson, Gassner and Jacobi-sum computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("magnus", parents=[common], help="Magnus expansion of a word")
    p.add_argument("--word", required=True)
    p.set_defaults(fn=cmd_magnus)

    p = sub.add_parser("milnor", parents=[common], help="Milnor number and indeterminacy")
    aut_args(p)
    p.add_argument("--I", required=True, help='multi-index, "21" or "1,2,10"')
    p.add_argument("--mode", choices=("literal", "extended", "classical"), default="literal")
    p.set_defaults(fn=cmd_milnor)

    p = sub.add_parser("johnson", parents=[common], help="Johnson homomorphism at level m")
    aut_args(p)
    p.add_argument("--m", type=int, default=1)
    p.set_defaults(fn=cmd_johnson)

    p = sub.add_parser("gassner", parents=[common], help="Gassner matrix to degree D")
    aut_args(p)
    p.add_argument("--exact", action="store_true", help="exact Laurent matrix of a braid")
    p.set_defaults(fn=cmd_gassner)

    p = sub.add_parser("gassner-red", parents=[common], help="reduced Gassner matrix")
    aut_args(p)
    p.set_defaults(fn=cmd_gassner_red)

    p = sub.add_parser("burau", parents=[common], help="Burau specialization")
    aut_args(p)
    p.add_argument("--reduced", action="store_true")
    p.set_defaults(fn=cmd_burau)

    p = sub.add_parser("alexander", parents=[common], help="Alexander matrix, Fitting ideals, invariant")
    aut_args(p)
    p.set_defaults(fn=cmd_alexander)

    p = sub.add_parser("braid", parents=[common], help="Artin action and longitudes of a braid")
    p.add_argument("--braid", required=True)
    p.set_defaults(fn=cmd_braid)

    p = sub.add_parser("jacobi", parents=[common], help="Jacobi sum in Z[zeta_{l^n}]")
    frob_args(p)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.set_defaults(fn=cmd_jacobi)

    p = sub.add_parser("soule", parents=[common], help="Soule character and kappa at Frobenius")
    frob_args(p)
    p.add_argument("--m", type=int, default=3)
    p.set_defaults(fn=cmd_soule)

    p = sub.add_parser("mu-table", parents=[common], help="Milnor numbers of Frobenius from Jacobi sums")
    frob_args(p)
    p.add_argument("--dmax", type=int, default=4)
    p.set_defaults(fn=cmd_mu_table)

    p = sub.add_parser("soule-check", parents=[common], help="Jacobi-sum data against the Soule expansion")
    frob_args(p)
    p.add_argument("--dmax", type=int, default=4)
    p.add_argument("--targets", default=None, help='pairs "N1,N2;..." (default 1,1;2,1;1,2)')
    p.add_argument("--a0", choices=("delta", "one"), default="delta")
    p.set_defaults(fn=cmd_soule_check)

    p = sub.add_parser("verify", parents=[common], help="randomized invariant suites")
    p.add_argument("--suite", choices=("all",) + tuple(suites.SUITES), default="all")
    p.set_defaults(fn=cmd_verify)
    return parser


INPUT_ERRORS = (UsageError, WordError, BraidError, AutError, FieldError, RingError, LevelTooLow, KeyError)


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = Config.from_args(args)
        payload, text, code = args.fn(args, cfg)
    except INPUT_ERRORS as exc:
        print(f"milnorlab {args.command}: {exc}", file=stderr)
        return 2
    except ValueError as exc:
        print(f"milnorlab {args.command}: {exc}", file=stderr)
        return 2
    rendered = json.dumps(payload, sort_keys=False) if args.format == "json" else text
    print(rendered, file=stdout)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rendered + "\n")
    return code


def main(argv: Optional[List[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
