"""Command-line interface and machine-readable report emission.

Exit codes: 0 completed (any verdict), 2 parse/usage error, 3 domain error
(violated precondition), 4 inconclusive or budget exceeded.  ``--json``
emits a single structured document whose polynomial fields are canonical
strings (graded-lex order, explicit ``*``) that re-parse to the same values.
The environment variable ``PLANEDERIV_BUDGET`` caps the extactic matrix
dimension (default 15).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import automorphism as am
from . import eigen as eig
from . import isotropy as iso
from .derivation import (Derivation, Inconclusive, Lnd, NilpotentWithin, NotLnd,
                         NotNilpotentWithin, exp_auto, lnd_decide2, lnd_semidecide)
from .errors import ArityError, BudgetError, DomainError, NotAnAutomorphismError
from .parsing import ParseError, parse_poly
from .poly import Poly, poly_to_str

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_INCONCLUSIVE = 4

SUBCOMMANDS = ("lnd", "rectify", "exp", "conjugate", "commute", "decompose",
               "invert", "darboux-verify", "darboux-linear", "extactic", "kernel",
               "census", "ju", "triangular", "sweep", "theorem-check", "dim3-example")


@dataclass
class Report:
    command: str
    inputs: dict = dc_field(default_factory=dict)
    verdict: str = ""
    data: dict = dc_field(default_factory=dict)
    certificates: list = dc_field(default_factory=list)
    witnesses: list = dc_field(default_factory=list)
    timings: dict = dc_field(default_factory=dict)
    scope_caveats: list = dc_field(default_factory=list)
    exit_code: int = EXIT_OK

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "verdict": self.verdict,
            "data": self.data,
            "certificates": self.certificates,
            "witnesses": self.witnesses,
            "timings": self.timings,
            "scope_caveats": self.scope_caveats,
            "exit_code": self.exit_code,
        }

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for k, v in self.inputs.items():
            lines.append(f"input {k}: {v}")
        if self.verdict:
            lines.append(f"verdict: {self.verdict}")
        for k, v in self.data.items():
            lines.append(f"{k}: {v}")
        for c in self.certificates:
            lines.append(f"certificate: {c}")
        for w in self.witnesses:
            lines.append(f"witness: {w}")
        for c in self.scope_caveats:
            lines.append(f"caveat: {c}")
        lines.append(f"exit: {self.exit_code}")
        return "\n".join(lines)


def _frac(v: Fraction) -> str:
    return str(v)


def _auto_dict(phi) -> dict:
    if isinstance(phi, am.PlaneAuto):
        f, g = phi.f, phi.g
    else:
        f, g = phi.components[0], phi.components[1]
    return {"f": poly_to_str(f), "g": poly_to_str(g)}


def _budget() -> int:
    raw = os.environ.get("PLANEDERIV_BUDGET", "")
    try:
        return max(3, int(raw)) if raw else eig.DEFAULT_EXTACTIC_DIM
    except ValueError:
        return eig.DEFAULT_EXTACTIC_DIM


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="planederiv",
                                  description="exact computations with plane "
                                              "polynomial derivations and their "
                                              "commuting automorphisms")
    sub = top.add_subparsers(dest="command", required=True)

    def derivation_flags(p, nvars_flag=True):
        if nvars_flag:
            p.add_argument("--nvars", type=int, default=2)
        p.add_argument("--dx", help="first component (alias of --d1)")
        p.add_argument("--dy", help="second component (alias of --d2)")
        for i in range(1, 10):
            p.add_argument(f"--d{i}", help=argparse.SUPPRESS)

    def json_flag(p):
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("lnd", help="decide local nilpotence (exact, two variables)")
    derivation_flags(p)
    json_flag(p)

    p = sub.add_parser("rectify", help="normal form and rectifying automorphism")
    derivation_flags(p)
    json_flag(p)

    p = sub.add_parser("exp", help="exponential automorphism of a nilpotent derivation")
    derivation_flags(p)
    p.add_argument("--cap", type=int, default=None)
    json_flag(p)

    p = sub.add_parser("conjugate", help="conjugate a derivation by an automorphism")
    derivation_flags(p)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    json_flag(p)

    p = sub.add_parser("commute", help="does a polynomial map commute with the derivation")
    derivation_flags(p)
    p.add_argument("--f")
    p.add_argument("--g")
    for i in range(1, 10):
        p.add_argument(f"--m{i}", help=argparse.SUPPRESS)
    json_flag(p)

    p = sub.add_parser("decompose", help="tame factorization of a plane map")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    json_flag(p)

    p = sub.add_parser("invert", help="inverse of a plane automorphism")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    json_flag(p)

    p = sub.add_parser("darboux-verify", help="verify an eigenvector candidate")
    derivation_flags(p)
    p.add_argument("--h", required=True)
    json_flag(p)

    p = sub.add_parser("darboux-linear", help="all degree-1 eigenvectors over Q")
    derivation_flags(p)
    json_flag(p)

    p = sub.add_parser("extactic", help="extactic determinant of order m")
    derivation_flags(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    json_flag(p)

    p = sub.add_parser("kernel", help="kernel elements of degree at most m")
    derivation_flags(p)
    p.add_argument("--m", type=int, required=True)
    json_flag(p)

    p = sub.add_parser("census", help="bounded-degree invariant-curve census")
    derivation_flags(p)
    p.add_argument("--mmax", type=int, default=3)
    p.add_argument("--candidates", default="",
                   help="semicolon-separated eigenvector candidates")
    p.add_argument("--budget", type=int, default=None)
    json_flag(p)

    p = sub.add_parser("ju", help="triangular maps commuting with u(x) d/dy")
    p.add_argument("--u", required=True)
    json_flag(p)

    p = sub.add_parser("triangular", help="solve the triangular commutation identity for P")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b0", required=True)
    p.add_argument("--b1", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--m", type=int, required=True)
    json_flag(p)

    p = sub.add_parser("sweep", help="per-degree commuting witnesses (triangular class)")
    derivation_flags(p)
    p.add_argument("--dmax", type=int, required=True)
    json_flag(p)

    p = sub.add_parser("theorem-check", help="unbounded-degree characterization harness")
    derivation_flags(p)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--mmax", type=int, default=2)
    json_flag(p)

    p = sub.add_parser("dim3-example", help="three-variable counterexample reproduction")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--a1", default=None)
    p.add_argument("--a2", default=None)
    json_flag(p)

    return top


def _parse_derivation(args, report: Report) -> Derivation:
    nvars = getattr(args, "nvars", 2)
    if nvars < 1 or nvars > 9:
        raise DomainError("nvars must be between 1 and 9")
    raw = []
    for i in range(1, nvars + 1):
        val = getattr(args, f"d{i}", None)
        if val is None and i == 1:
            val = args.dx
        if val is None and i == 2:
            val = args.dy
        if val is None:
            raise ParseError(f"missing component --d{i}", 0)
        raw.append(val)
    comps = tuple(parse_poly(src, nvars) for src in raw)
    d = Derivation(nvars, comps)
    report.inputs["derivation"] = [poly_to_str(c) for c in comps]
    return d


def _certificate_dict(cert) -> dict:
    data = {}
    for k, v in cert.data.items():
        if isinstance(v, Poly):
            data[k] = poly_to_str(v)
        elif isinstance(v, tuple) and all(isinstance(t, Poly) for t in v):
            data[k] = [poly_to_str(t) for t in v]
        else:
            data[k] = str(v)
    return {"kind": cert.kind, "data": data}


def _lnd_report(report: Report, verdict) -> int:
    if isinstance(verdict, Lnd):
        report.verdict = "LND"
        report.data["kernel_generator"] = poly_to_str(verdict.kernel_generator)
        report.data["cofactor_coeffs"] = [_frac(c) for c in verdict.cofactor_coeffs]
        report.data["rectifier"] = _auto_dict(verdict.rectifier)
        report.data["normal_u"] = poly_to_str(verdict.normal_u)
        return EXIT_OK
    if isinstance(verdict, NotLnd):
        report.verdict = "NotLND"
        report.certificates.append(_certificate_dict(verdict.certificate))
        return EXIT_OK
    report.verdict = "Inconclusive"
    report.data["reason"] = verdict.reason
    return EXIT_INCONCLUSIVE


def _cmd_lnd(args, report: Report) -> int:
    d = _parse_derivation(args, report)
    return _lnd_report(report, lnd_decide2(d))


def _cmd_rectify(args, report: Report) -> int:
    d = _parse_derivation(args, report)
    verdict = lnd_decide2(d)
    code = _lnd_report(report, verdict)
    if isinstance(verdict, Lnd):
        conj = iso.conjugate(verdict.rectifier, d)
        report.data["conjugated"] = [poly_to_str(c) for c in conj.components]
    return code


def _cmd_exp(args, report: Report) -> int:
    d = _parse_derivation(args, report)
    nil = lnd_semidecide(d, args.cap)
    if isinstance(nil, NotNilpotentWithin):
        report.verdict = "NotNilpotentWithin"
        report.data["cap"] = nil.cap
        report.data["degree_trajectories"] = [list(t) for t in nil.degree_trajectories]
        return EXIT_INCONCLUSIVE
    phi = exp_auto(d, nil)
    report.verdict = f"NilpotentWithin({nil.k})"
    if isinstance(phi, am.PlaneAuto):
        report.data["exp"] = _auto_dict(phi)
    else:
        report.data["exp"] = [poly_to_str(c) for c in phi.components]
    return EXIT_OK


def _cmd_conjugate(args, report: Report) -> int:
    d = _parse_derivation(args, report)
    f = parse_poly(args.f, 2)
    g = parse_poly(args.g, 2)
    report.inputs["map"] = {"f": poly_to_str(f), "g": poly_to_str(g)}
    phi = am.validate(am.PolyMap(2, (f, g)))
    conj = iso.conjugate(phi, d)
    report.verdict = "conjugated"
    report.data["components"] = [poly_to_str(c) for c in conj.components]
    return EXIT_OK


def _cmd_commute(args, report: Report) -> int:
    d = _parse_derivation(args, report)
    nvars = d.nvars
    raw = []
    for i in range(1, nvars + 1):
        val = getattr(args, f"m{i}", None)
        if val is None and i == 1:
            val = args.f
        if val is None and i == 2:
            val = args.g
        if val is None:
            raise ParseError(f"missing map component --m{i}", 0)
        raw.append(val)
    comps = tuple(parse_poly(s, nvars) for s in raw)
    report.inputs["map"] = [poly_to_str(c) for c in comps]
    rep = iso.is_in_isotropy(am.PolyMap(nvars, comps), d)
    report.verdict = "commutes" if rep.commutes else "does-not-commute"
    report.data["residuals"] = [poly_to_str(r) for r in rep.residuals]
    report.scope_caveats.extend(rep.caveats)
    return EXIT_OK


def _cmd_decompose(args, report: Report) -> int:
    f = parse_poly(args.f, 2)
    g = parse_poly(args.g, 2)
    report.inputs["map"] = {"f": poly_to_str(f), "g": poly_to_str(g)}
    phi = am.validate(am.PolyMap(2, (f, g)))
    report.verdict = "tame"
    report.data["jacobian"] = _frac(phi.jacobian)
    factors = []
    for fac in phi.factorization.factors:
        if isinstance(fac, am.AffineFactor):
            factors.append({"type": "affine",
                            "matrix": [[_frac(v) for v in row] for row in fac.matrix],
                            "translation": [_frac(v) for v in fac.translation]})
        else:
            factors.append({"type": "elementary", "axis": "xy"[fac.axis],
                            "shift": poly_to_str(fac.shift)})
    report.data["factors"] = factors
    return EXIT_OK


def _cmd_invert(args, report: Report) -> int:
    f = parse_poly(args.f, 2)
    g = parse_poly(args.g, 2)
    report.inputs["map"] = {"f": poly_to_str(f), "g": poly_to_str(g)}
    phi = am.validate(am.PolyMap(2, (f, g)))
    inv = am.invert(phi)
    report.verdict = "inverted"
    report.data["inverse"] = _auto_dict(inv)
    return EXIT_OK


def _cmd_darboux_verify(args, report: Report) -> int:
    d = _parse_derivation(args, report)
    h = parse_poly(args.h, 2)
    report.inputs["h"] = poly_to_str(h)
    lam = eig.darboux_verify(d, h)
    if lam is None:
        report.verdict = "not-an-eigenvector"
    else:
        report.verdict = "eigenvector"
        report.data["lambda"] = poly_to_str(lam)
    return EXIT_OK


def _cmd_darboux_linear(args, report: Report) -> int:
    d = _parse_derivation(args, report)
    res = eig.linear_darboux_search(d)
    report.verdict = f"{len(res.pairs)} pairs"
    report.data["pairs"] = [{"h": poly_to_str(p.h), "lambda": poly_to_str(p.lam)}
                            for p in res.pairs]
    report.data["families"] = list(res.families)
    report.data["extension_flag"] = res.extension_flag
    return EXIT_OK


def _cmd_extactic(args, report: Report) -> int:
    d = _parse_derivation(args, report)
    budget = min(args.budget or _budget(), _budget()) if args.budget else _budget()
    det = eig.extactic(d, args.m, max_dim=budget)
    report.verdict = "zero" if det.is_zero else "nonzero"
    report.data["order"] = args.m
    report.data["determinant"] = poly_to_str(det)
    return EXIT_OK


def _cmd_kernel(args, report: Report) -> int:
    d = _parse_derivation(args, report)
    basis = eig.kernel_bounded(d, args.m)
    report.verdict = f"dimension {len(basis)}"
    report.data["basis"] = [poly_to_str(p) for p in basis]
    return EXIT_OK


def _cmd_census(args, report: Report) -> int:
    d = _parse_derivation(args, report)
    budget = min(args.budget or _budget(), _budget()) if args.budget else _budget()
    cands = [parse_poly(s, 2) for s in args.candidates.split(";") if s.strip()]
    cen = eig.census(d, args.mmax, cands, max_dim=budget)
    kind = cen.kind
    if isinstance(kind, eig.InfiniteFamily):
        report.verdict = "InfiniteFamily"
        report.data["extactic_order"] = kind.extactic_order
    elif isinstance(kind, eig.FiniteList):
        report.verdict = "FiniteList"
        report.data["pairs"] = [{"h": poly_to_str(p.h), "lambda": poly_to_str(p.lam)}
                                for p in kind.pairs]
    else:
        report.verdict = "NoEigenvectorUpTo"
    report.data["bound"] = cen.bound
    report.data["kernel_basis"] = [poly_to_str(p) for p in cen.kernel_basis]
    report.data["extactic_vanishing"] = list(cen.extactic_vanishing)
    report.data["extension_flag"] = cen.extension_flag
    if cen.uncorroborated_vanishing:
        report.scope_caveats.append("extactic vanishes identically but no bounded "
                                    "kernel element corroborates an infinite family")
    report.data["family_notes"] = list(cen.family_notes)
    return EXIT_OK


def _cmd_ju(args, report: Report) -> int:
    u = parse_poly(args.u, 2)
    report.inputs["u"] = poly_to_str(u)
    data = iso.ju_group(u)
    report.verdict = "all-affine" if data.all_affine else \
        ("parametric" if data.parametric else f"{len(data.affine_solutions)} solutions")
    report.data["affine_solutions"] = [[_frac(a), _frac(b), _frac(g)]
                                       for a, b, g in data.affine_solutions]
    if data.parametric:
        report.data["parametric"] = {
            "beta_of_alpha": [_frac(c) for c in data.parametric.beta_of_alpha],
            "gamma_power": data.parametric.gamma_power,
        }
    report.data["free_shift"] = data.free_shift
    report.data["extension_flag"] = data.extension_flag
    return EXIT_OK


def _cmd_triangular(args, report: Report) -> int:
    a = parse_poly(args.a, 2)
    b0 = parse_poly(args.b0, 2)
    b1 = parse_poly(args.b1, 2)
    prob = iso.TriangularIsotropyProblem(args.ell, a, b0, b1)
    report.inputs["problem"] = {"ell": args.ell, "a": poly_to_str(a),
                                "b0": poly_to_str(b0), "b1": poly_to_str(b1)}
    alpha = Fraction(args.alpha)
    gamma = Fraction(args.gamma)
    sol = iso.triangular_isotropy_solve(prob, alpha, gamma, args.m)
    if sol is None:
        report.verdict = "Empty"
        return EXIT_OK
    report.verdict = f"dimension {sol.dimension}"
    report.data["particular"] = poly_to_str(sol.particular)
    report.data["basis"] = [poly_to_str(v) for v in sol.basis]
    if not prob.b1.is_zero:
        report.data["predicted_degree"] = _frac(iso.predicted_degree(prob, alpha))
    return EXIT_OK


def _cmd_sweep(args, report: Report) -> int:
    d = _parse_derivation(args, report)
    res = iso.jonquieres_sweep(d, args.dmax)
    report.verdict = f"max witness degree {res.max_witness_degree()}"
    report.data["per_degree"] = {
        str(dd): (_auto_dict(w) if w is not None else None)
        for dd, w in sorted(res.per_degree.items())
    }
    report.data["search_class"] = res.search_class
    report.scope_caveats.extend(res.caveats)
    return EXIT_OK


def _cmd_theorem_check(args, report: Report) -> int:
    d = _parse_derivation(args, report)
    rep = iso.theorem_check(d, args.dmax, args.mmax)
    code = _lnd_report(report, rep.verdict)
    if rep.witnesses:
        report.data["witness_count"] = len(rep.witnesses)
        report.data["witness_max_degree"] = rep.witness_max_degree
        report.witnesses.extend(_auto_dict(w) for w in rep.witnesses[-3:])
    if rep.sweep is not None:
        report.data["sweep_max_degree"] = rep.sweep.max_witness_degree()
    if rep.census is not None:
        kind = rep.census.kind
        report.data["census"] = type(kind).__name__
        if isinstance(kind, eig.FiniteList):
            report.data["census_pairs"] = [{"h": poly_to_str(p.h),
                                            "lambda": poly_to_str(p.lam)}
                                           for p in kind.pairs]
    report.scope_caveats.extend(rep.caveats)
    return code


def _cmd_dim3(args, report: Report) -> int:
    a1 = parse_poly(args.a1, 3) if args.a1 else None
    a2 = parse_poly(args.a2, 3) if args.a2 else None
    rep = iso.dim3_counterexample(args.degree, a1, a2)
    report.inputs["derivation"] = [poly_to_str(c) for c in rep.derivation.components]
    nil = rep.nilpotence
    report.verdict = (f"NotNilpotentWithin({nil.cap})" if isinstance(nil, NotNilpotentWithin)
                      else f"NilpotentWithin({nil.k})")
    report.data["witness"] = [poly_to_str(c) for c in rep.witness.components]
    report.data["witness_degree"] = rep.witness_degree
    report.data["witness_commutes"] = rep.commutation.commutes
    control_nil = rep.control_nilpotence
    report.data["control_nilpotent_within"] = (control_nil.k
                                               if isinstance(control_nil, NilpotentWithin)
                                               else None)
    report.scope_caveats.extend(rep.commutation.caveats)
    return EXIT_OK


_HANDLERS = {
    "lnd": _cmd_lnd,
    "rectify": _cmd_rectify,
    "exp": _cmd_exp,
    "conjugate": _cmd_conjugate,
    "commute": _cmd_commute,
    "decompose": _cmd_decompose,
    "invert": _cmd_invert,
    "darboux-verify": _cmd_darboux_verify,
    "darboux-linear": _cmd_darboux_linear,
    "extactic": _cmd_extactic,
    "kernel": _cmd_kernel,
    "census": _cmd_census,
    "ju": _cmd_ju,
    "triangular": _cmd_triangular,
    "sweep": _cmd_sweep,
    "theorem-check": _cmd_theorem_check,
    "dim3-example": _cmd_dim3,
}


def run(argv) -> tuple[int, Report]:
    """Dispatch a CLI invocation; returns (exit code, report)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        report = Report(command=argv[0] if argv else "", verdict="usage-error",
                        exit_code=EXIT_USAGE if exc.code else EXIT_OK)
        return report.exit_code, report
    report = Report(command=args.command)
    started = time.perf_counter()
    try:
        code = _HANDLERS[args.command](args, report)
    except ParseError as exc:
        report.verdict = "parse-error"
        report.data["error"] = str(exc)
        report.data["position"] = exc.position
        code = EXIT_USAGE
    except (ArityError, DomainError, NotAnAutomorphismError, ValueError) as exc:
        report.verdict = "domain-error"
        report.data["error"] = str(exc)
        code = EXIT_DOMAIN
    except BudgetError as exc:
        report.verdict = "budget-exceeded"
        report.data["error"] = str(exc)
        code = EXIT_INCONCLUSIVE
    report.timings["seconds"] = round(time.perf_counter() - started, 6)
    report.exit_code = code
    return code, report


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    want_json = "--json" in argv
    code, report = run(argv)
    if want_json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.to_text())
    return code


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
