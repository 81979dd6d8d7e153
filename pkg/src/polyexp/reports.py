"""Problem files (JSON) and deterministic reports.

Rationals are always written as ``"p/q"`` strings; floats are rejected on
input. Report JSON uses sorted keys so the same analysis serializes to the
same bytes.
"""
from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import InputError
from .exact_arith import CycNum, as_rat, rat_str, totient
from .linalg import ZLattice
from .model import AlphaMatrix, CycPolyMV, EqSystem, Generator, LogCoord, validate_system
from .specialization import PolyTuple


@dataclass(frozen=True)
class ProblemFile:
    system: EqSystem
    name: str = ""
    description: str = ""


def _reject_float(text):
    try:
        hint = str(Fraction(text))
    except (ValueError, ZeroDivisionError):
        hint = "p/q"
    raise InputError(f"floats forbidden; write {hint!r} as a \"p/q\" string")


def _load_json(text: str):
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed document at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _get(obj, key, path, kind=None, default=dataclasses.MISSING):
    if not isinstance(obj, dict):
        raise InputError(f"{path or 'document'}: expected an object")
    if key not in obj:
        if default is not dataclasses.MISSING:
            return default
        raise InputError(f"{path or 'document'}: missing {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind) or isinstance(val, bool) and kind is int:
        raise InputError(f"{path}.{key}: expected {getattr(kind, '__name__', kind)}")
    return val


def _rat(value, path) -> Fraction:
    try:
        return as_rat(value)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def _poly(items, path, t, M) -> CycPolyMV:
    if not isinstance(items, list):
        raise InputError(f"{path}: expected a list of monomials")
    phi = totient(M)
    terms = []
    for k, mono in enumerate(items):
        p = f"{path}[{k}]"
        exps = _get(mono, "exponents", p, list)
        if len(exps) != t or not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in exps):
            raise InputError(f"{p}.exponents: expected {t} non-negative integers")
        coeff = _get(mono, "coeff", p, list)
        if len(coeff) != phi:
            raise InputError(f"{p}.coeff: expected {phi} coordinates for order {M}, got {len(coeff)}")
        c = CycNum(M, [_rat(x, f"{p}.coeff[{j}]") for j, x in enumerate(coeff)])
        terms.append((tuple(exps), c))
    return CycPolyMV.from_terms(terms, t, M)


def problem_from_obj(doc) -> ProblemFile:
    t = _get(doc, "variables", "", int)
    if t < 1:
        raise InputError("variables: must be at least 1")
    gens = []
    for k, g in enumerate(_get(doc, "generators", "", list, [])):
        p = f"generators[{k}]"
        name = _get(g, "name", p, str)
        value = _get(g, "value", p, default=None)
        gens.append(Generator(name, None if value is None else _rat(value, f"{p}.value")))
    M = _get(doc, "coefficient_order", "", int, 1)
    if M < 1:
        raise InputError("coefficient_order: must be a positive integer")
    terms = _get(doc, "terms", "", list)
    if not terms:
        raise InputError("terms: at least one term required")
    rows, polys = [], []
    for i, term in enumerate(terms):
        p = f"terms[{i}]"
        alpha = _get(term, "alpha", p, list)
        if len(alpha) != t:
            raise InputError(f"{p}.alpha: expected {t} entries, got {len(alpha)}")
        row = []
        for j, a in enumerate(alpha):
            q = f"{p}.alpha[{j}]"
            logs = _get(a, "logs", q, list, [])
            if len(logs) != len(gens):
                raise InputError(f"{q}.logs: expected {len(gens)} entries, got {len(logs)}")
            row.append(LogCoord(_rat(_get(a, "rho", q, default="0"), f"{q}.rho"),
                                tuple(_rat(x, f"{q}.logs[{k}]") for k, x in enumerate(logs))))
        rows.append(tuple(row))
        polys.append(_poly(_get(term, "poly", p, list), f"{p}.poly", t, M))
    name = _get(doc, "name", "", str, "")
    description = _get(doc, "description", "", str, "")
    eqsys = validate_system(gens, AlphaMatrix(tuple(rows)), polys, name=name, description=description)
    return ProblemFile(eqsys, name, description)


def parse_problem(text: str) -> ProblemFile:
    """Parse and validate a problem document."""
    return problem_from_obj(_load_json(text))


def problem_to_obj(eqsys: EqSystem) -> dict:
    doc: dict[str, Any] = {}
    if eqsys.name:
        doc["name"] = eqsys.name
    if eqsys.description:
        doc["description"] = eqsys.description
    doc["variables"] = eqsys.t
    doc["generators"] = [{"name": g.name} if g.is_symbolic else {"name": g.name, "value": rat_str(g.value)}
                         for g in eqsys.genset.generators]
    doc["coefficient_order"] = eqsys.order
    doc["terms"] = [
        {"poly": [{"exponents": list(e), "coeff": [rat_str(x) for x in c.coeffs]} for e, c in P.monomials],
         "alpha": [{"rho": rat_str(a.rho), "logs": [rat_str(x) for x in a.logs]} for a in row]}
        for P, row in zip(eqsys.polys, eqsys.alpha.rows)]
    return doc


def dump_problem(eqsys: EqSystem) -> str:
    return json.dumps(problem_to_obj(eqsys), indent=2) + "\n"


def parse_poly_tuple(text: str) -> PolyTuple:
    """``{"variables": [...], "coefficient_order": M, "entries": [[monomial, ...], ...]}``."""
    doc = _load_json(text)
    variables = _get(doc, "variables", "", list)
    if not all(isinstance(v, str) for v in variables):
        raise InputError("variables: expected a list of names")
    M = _get(doc, "coefficient_order", "", int, 1)
    entries = _get(doc, "entries", "", list)
    return PolyTuple(tuple(variables),
                     tuple(_poly(e, f"entries[{i}]", len(variables), M) for i, e in enumerate(entries)))


# -- reports -----------------------------------------------------------------

@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    exit_code: int = 0


def to_jsonable(obj):
    """Convert analysis objects to JSON-ready values with exact rational strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rat_str(obj)
    if isinstance(obj, float):
        return "inf" if math.isinf(obj) else format(obj, ".12f")
    if isinstance(obj, CycNum):
        return {"order": obj.order, "coeffs": [rat_str(c) for c in obj.coeffs]}
    if isinstance(obj, ZLattice):
        return {"ambient_dim": obj.ambient_dim, "rank": obj.rank, "basis": [list(r) for r in obj.basis]}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _cell(v) -> str:
    if isinstance(v, list):
        return "(" + ", ".join(_cell(x) for x in v) + ")"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_cell(x)}" for k, x in sorted(v.items())) + "}"
    return "-" if v is None else str(v)


def _table(rows: list[dict]) -> list[str]:
    cols = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    cells = [[_cell(r.get(c)) for c in cols] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
    lines = ["  " + "  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines.append("  " + "  ".join("-" * w for w in widths))
    lines += ["  " + "  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() for row in cells]
    return lines


def _render(key: str, value, lines: list[str]) -> None:
    if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        lines.append(f"{key}:")
        lines.extend(_table(value))
    elif isinstance(value, dict) and value and any(isinstance(v, (dict, list)) for v in value.values()):
        lines.append(f"{key}:")
        sub: list[str] = []
        for k in sorted(value):
            _render(k, value[k], sub)
        lines.extend("  " + s for s in sub)
    else:
        lines.append(f"{key}: {_cell(value)}")


def emit_report(report: Report, fmt: str = "text") -> str:
    payload = {"command": report.command, "inputs": to_jsonable(report.inputs),
               "results": to_jsonable(report.results), "warnings": to_jsonable(report.warnings)}
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if fmt != "text":
        raise InputError(f"unknown format {fmt!r}")
    lines = [f"polyexp {report.command}", "", "inputs:"]
    for k in sorted(payload["inputs"]):
        _render(k, payload["inputs"][k], sub := [])
        lines.extend("  " + s for s in sub)
    lines += ["", "results:"]
    for k in sorted(payload["results"]):
        _render(k, payload["results"][k], sub := [])
        lines.extend("  " + s for s in sub)
    lines += ["", "warnings:"]
    lines += [f"  - {w}" for w in payload["warnings"]] or ["  (none)"]
    return "\n".join(lines) + "\n"
