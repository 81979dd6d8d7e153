"""Command-line interface: ``polyexp <command> ...``.

Exit codes: 0 success, 1 a theorem hypothesis is not met, 2 bad input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .errors import HypothesisError, InputError
from .exact_arith import as_rat
from .model import mult_independent, normalize_alpha
from .reports import Report, emit_report, parse_poly_tuple, parse_problem
from .roots_of_unity import DZParams, dz_order_bound, enumerate_vanishing_sums, system_order_bound
from .search import (ASSUMPTION_WARNING, GROUPED, SearchSpec, finiteness_monitor, search_box,
                     translate_check, verify_system)
from .specialization import build_specializations, linear_dimension
from .structure import compute_H, split_space

MODE_FLAGS = {"exact": "exact_only", "grouped": "allow_grouped"}


def _rational_arg(text: str):
    try:
        return as_rat(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_problem(text).system


def _record_row(r) -> dict:
    return {"q": list(r.q), "status": r.status,
            "witness": [list(b) for b in r.witness] if r.witness else None,
            "zero_mode": r.zero_mode, "pi_q": list(r.pi_q), "pi_prime_q": list(r.pi_prime_q)}


def _mode_warnings(records) -> list[str]:
    return [ASSUMPTION_WARNING] if any(r.zero_mode == GROUPED for r in records) else []


def _spec(args) -> SearchSpec:
    return SearchSpec(args.box, args.den, MODE_FLAGS[args.mode], getattr(args, "growth", 0) or 0)


def cmd_analyze(args) -> Report:
    eqsys = _load(args.file)
    split = split_space(eqsys)
    H = compute_H(eqsys)
    gens = [{"name": g.name, "value": g.value if g.value is not None else "symbolic"}
            for g in eqsys.genset.generators]
    nalpha = normalize_alpha(eqsys.alpha)
    results = {
        "dimensions": {"s": eqsys.s, "t": eqsys.t, "m": eqsys.m, "coefficient_order": eqsys.order},
        "independence": eqsys.genset.independence_status,
        "V_basis": [list(v) for v in split.V_basis],
        "Vprime_basis": [f"e{j + 1}" for j in split.Vprime_indices],
        "projection_rows": [list(r) for r in split.rref_rows],
        "H": H,
        "normalized_alpha": [[{"rho": a.rho, "logs": list(a.logs)} for a in row] for row in nalpha.rows],
        "root_of_unity_order_bound": system_order_bound(eqsys, args.delta),
    }
    return Report("analyze", {"file": args.file, "name": eqsys.name, "generators": gens,
                              "complement": split.fingerprint, "delta": args.delta}, results)


def cmd_search(args) -> Report:
    eqsys = _load(args.file)
    spec = _spec(args)
    records = search_box(eqsys, spec, args.jobs)
    return Report("search", {"file": args.file, "box": spec.box, "den": spec.denominator, "mode": spec.mode,
                             "complement": split_space(eqsys).fingerprint},
                  {"count": len(records),
                   "nondegenerate": sum(r.nondegenerate for r in records),
                   "records": [_record_row(r) for r in records]},
                  _mode_warnings(records))


def cmd_verify(args) -> Report:
    eqsys = _load(args.file)
    spec = _spec(args)
    rep = verify_system(eqsys, spec, args.jobs)
    results = {
        "records": [_record_row(r) for r in rep.records],
        "N_emp": rep.cert.N_emp,
        "congruence_lattice": rep.lattice,
        "distances": [{"q": list(d.q), "nearest": list(d.nearest), "distance": d.distance,
                       "log_norm": d.log_norm} for d in rep.distances],
        "growth": [{"box": b, "N_emp": n} for b, n in rep.growth],
        "denominator_sweep": [{"den": d, "N_emp": n} for d, n in rep.denominator_sweep],
        "N_emp_stable": rep.stable,
    }
    return Report("verify", {"file": args.file, "box": spec.box, "den": spec.denominator, "mode": spec.mode,
                             "growth": spec.growth_steps, "complement": rep.cert.complement},
                  results, list(rep.warnings))


def cmd_dz_bound(args) -> Report:
    T, feasible = dz_order_bound(DZParams(args.terms, args.delta))
    return Report("dz-bound", {"terms": args.terms, "delta": args.delta}, {"T": T, "feasible_orders": feasible})


def cmd_vanishing_sums(args) -> Report:
    coeffs = [_rational_arg(c) for c in args.coeffs.split(",")]
    sums = enumerate_vanishing_sums(args.max_terms, args.max_order, coeffs, args.dedupe_galois)
    return Report("vanishing-sums", {"max_terms": args.max_terms, "max_order": args.max_order,
                                     "coeffs": coeffs, "dedupe_galois": args.dedupe_galois},
                  {"count": len(sums),
                   "sums": [{"order": v.order, "exponents": list(v.exponents),
                             "coefficients": list(v.coefficients)} for v in sums]})


def cmd_specialize(args) -> Report:
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    tup = parse_poly_tuple(text)
    dim, _ = linear_dimension(tup)
    cert = build_specializations(tup, seed=args.seed)
    return Report("specialize", {"file": args.file, "variables": list(tup.variables), "seed": args.seed},
                  {"linear_dimension": dim, "selected_basis": [i + 1 for i in cert.selected_basis],
                   "points": [list(p) for p in cert.points],
                   "matrix": [list(r) for r in cert.matrix], "determinant": cert.determinant,
                   "fallback_used": cert.fallback_used})


def cmd_mult_indep(args) -> Report:
    rel = mult_independent(args.values)
    return Report("mult-indep", {"values": list(args.values)},
                  {"independent": rel is None, "relation": list(rel) if rel else None})


def cmd_translate_check(args) -> Report:
    eqsys = _load(args.file)
    if not eqsys.all_constant():
        raise HypothesisError("theorem hypothesis violated: translate check needs constant polynomials")
    spec = SearchSpec(args.box, 1, MODE_FLAGS[args.mode])
    records = search_box(eqsys, spec, args.jobs)
    H = compute_H(eqsys)
    verdict = translate_check(eqsys, records, H, spec.box)
    return Report("translate-check", {"file": args.file, "box": spec.box, "mode": spec.mode},
                  {"H": H, "verdict": "pass" if verdict.passed else "fail",
                   "cosets": [list(c) for c in verdict.cosets],
                   "missing": [list(m) for m in verdict.missing],
                   "solutions": [list(r.q) for r in records if r.nondegenerate]},
                  _mode_warnings(records))


def cmd_finiteness(args) -> Report:
    eqsys = _load(args.file)
    spec = _spec(args)
    rep = finiteness_monitor(eqsys, spec, args.jobs)
    return Report("finiteness", {"file": args.file, "box": spec.box, "den": spec.denominator,
                                 "growth": spec.growth_steps, "mode": spec.mode},
                  {"counts": [{"box": b, "nondegenerate": n} for b, n in rep.rows],
                   "stabilized": rep.stabilized, "hypothesis_holds": rep.hypothesis_holds,
                   "relation": list(rep.relation) if rep.relation else None},
                  list(rep.warnings))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyexp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"polyexp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.set_defaults(func=func)
        return p

    def search_flags(p, den=True, growth=False):
        p.add_argument("--box", type=_rational_arg, required=True)
        if den:
            p.add_argument("--den", type=_positive_int, required=True)
        if growth:
            p.add_argument("--growth", type=int, default=0)
        p.add_argument("--mode", choices=sorted(MODE_FLAGS), default="exact")
        p.add_argument("--jobs", type=_positive_int, default=1)

    p = add("analyze", cmd_analyze, "V, V', projections, H and independence report")
    p.add_argument("file")
    p.add_argument("--delta", type=_positive_int, default=1)
    p = add("search", cmd_search, "bounded-denominator solution search")
    p.add_argument("file")
    search_flags(p)
    p = add("verify", cmd_verify, "search + N_emp certificate + distance report")
    p.add_argument("file")
    search_flags(p, growth=True)
    p = add("dz-bound", cmd_dz_bound, "root-of-unity order bound")
    p.add_argument("--terms", type=_positive_int, required=True)
    p.add_argument("--delta", type=_positive_int, default=1)
    p = add("vanishing-sums", cmd_vanishing_sums, "enumerate minimal vanishing sums of roots of unity")
    p.add_argument("--max-terms", type=int, required=True)
    p.add_argument("--max-order", type=_positive_int, required=True)
    p.add_argument("--coeffs", default="1")
    p.add_argument("--dedupe-galois", action="store_true")
    p = add("specialize", cmd_specialize, "nonsingular specialization certificate for a polynomial tuple")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p = add("mult-indep", cmd_mult_indep, "multiplicative independence of positive rationals")
    p.add_argument("values", nargs="+", type=_rational_arg)
    p = add("translate-check", cmd_translate_check, "integer solutions form full H-cosets in the box")
    p.add_argument("file")
    search_flags(p, den=False)
    p = add("finiteness", cmd_finiteness, "nondegenerate counts over growing boxes")
    p.add_argument("file")
    search_flags(p, growth=True)
    return parser


def run_command(argv) -> Report:
    """Parse arguments and run one command.

    Analysis refusals and input errors come back as a report whose
    ``exit_code`` is 1 or 2 and whose ``results`` hold the message.
    """
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except HypothesisError as exc:
        return Report(args.command, {"argv": list(argv)}, {"error": str(exc)}, exit_code=1)
    except (InputError, ZeroDivisionError) as exc:
        return Report(args.command, {"argv": list(argv)}, {"error": str(exc)}, exit_code=2)
    report.inputs.setdefault("format", args.format)
    return report


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    report = run_command(argv)
    if report.exit_code:
        print(f"polyexp: error: {report.results['error']}", file=sys.stderr)
        return report.exit_code
    sys.stdout.write(emit_report(report, report.inputs["format"]))
    return 0


if __name__ == "__main__":
    sys.exit(main())
