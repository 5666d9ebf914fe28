"""``solcalc`` command line.

Exit codes: 0 success, 1 validation failure, 2 inconclusive, 3 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from typing import List, Optional, Sequence

from . import __version__
from .axioms import check_axioms
from .cohomology import cohomology_basis, induced_cohomology_matrix
from .dimension import (
    DEFAULT_BOUND,
    DimensionMismatch,
    InconclusiveError,
    LimitElement,
    NotPrimitive,
    adjacency_matrix,
    check_simplicity,
    compare,
    interpolate,
    invariants_report,
    limit_equal,
    limit_sign,
)
from .incidence import solve_incidence
from .oracle import oracle_limit_sign
from .presentation import (
    Presentation,
    PresentationError,
    orientability,
    parse_presentation,
    reorient,
    serialize,
    validate_presentation,
)

EXIT_OK, EXIT_INVALID, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class ValidationFailure(Exception):
    def __init__(self, message: str, findings: Optional[list] = None):
        super().__init__(message)
        self.findings = findings or []


def parse_element(text: str) -> LimitElement:
    """``"K:a,b,c"`` with optional whitespace and negative entries."""
    compact = "".join(text.split())
    if ":" not in compact:
        raise UsageError(f"element {text!r} must look like K:a,b,...")
    level, _, vec = compact.partition(":")
    try:
        return LimitElement(int(level), [int(x) for x in vec.split(",") if x != ""])
    except ValueError:
        raise UsageError(f"element {text!r} must look like K:a,b,...") from None


def parse_vector(text: str) -> List[int]:
    try:
        return [int(x) for x in "".join(text.split()).split(",") if x != ""]
    except ValueError:
        raise UsageError(f"vector {text!r} must be comma separated integers") from None


def _bound(args) -> int:
    if args.bound is not None:
        return args.bound
    env = os.environ.get("SOLCALC_BOUND")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"SOLCALC_BOUND={env!r} is not an integer") from None
        if value < 0:
            raise UsageError("SOLCALC_BOUND must be nonnegative")
        return value
    return DEFAULT_BOUND


def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(data: bytes) -> Presentation:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise ValidationFailure("input is not UTF-8") from None
    try:
        return parse_presentation(text)
    except PresentationError as exc:
        raise ValidationFailure(
            str(exc),
            [{"check": "parse", "passed": False, "level": None, "items": [], "detail": str(exc),
              "line": exc.line, "column": exc.column}],
        ) from None


def _ordered(p: Presentation, findings: list) -> tuple:
    """Orientation-preserving form of a stationary presentation plus the edge signs used."""
    if not p.stationary:
        raise ValidationFailure("element algebra needs a stationary presentation")
    if p.all_positive:
        return p, None
    sigma = orientability(p)
    if sigma is None:
        raise ValidationFailure("presentation is not orientable; the order is undefined")
    flipped = [e for e, s in sigma[0].items() if s < 0]
    findings.append({"check": "reoriented", "passed": True, "level": None, "items": flipped,
                     "detail": "edges reversed to make every word positive; coordinates on them change sign"})
    return reorient(p, sigma), sigma[0]


def _apply_sigma(p: Presentation, sigma, a: LimitElement) -> LimitElement:
    if sigma is None:
        return a
    names = p.graph.edge_names
    if len(a.vector) != len(names):
        raise DimensionMismatch(f"vector of length {len(a.vector)} for {len(names)} edges")
    return LimitElement(a.level, [sigma[e] * x for e, x in zip(names, a.vector)])


# -------------------------------------------------------------------------- commands


def cmd_validate(args, findings):
    p = _load(args.data[0])
    rep = validate_presentation(p)
    findings.extend(f.as_dict() for f in rep.findings)
    result = {
        "valid": rep.ok,
        "stationary": p.stationary,
        "levels": [{"vertices": len(g.vertices), "edges": len(g.edges)} for g in p.levels],
        "orientable": orientability(p) is not None,
    }
    return result, EXIT_OK if rep.ok else EXIT_INVALID


def _require_valid(p: Presentation, findings) -> None:
    rep = validate_presentation(p)
    bad = [f.as_dict() for f in rep.failures()]
    if bad:
        raise ValidationFailure("presentation failed validation", bad)


def cmd_invariants(args, findings):
    p = _load(args.data[0])
    _require_valid(p, findings)
    if p.stationary:
        return invariants_report(p).as_dict(), EXIT_OK
    verdict = check_simplicity(p)
    levels = []
    for k, r in enumerate(p.maps, start=1):
        A = adjacency_matrix(r)
        C = induced_cohomology_matrix(p, k)
        levels.append({"map": f"{k} -> {k - 1}", "adjacency": A.tolist(), "cohomology_matrix": C.tolist()})
    result = {
        "cohomology_ranks": [cohomology_basis(g).rank for g in p.levels],
        "maps": levels,
        "simplicity": verdict.status,
        "simplicity_detail": verdict.detail,
        "kappa": list(verdict.kappa),
    }
    return result, EXIT_INCONCLUSIVE if verdict.status == "inconclusive" else EXIT_OK


def cmd_bruschlinsky(args, findings):
    p = _load(args.data[0])
    _require_valid(p, findings)
    if not p.stationary:
        raise ValidationFailure("bruschlinsky report needs a stationary presentation")
    rep = invariants_report(p)
    d = rep.as_dict()
    result = {
        "cohomology_rank": rep.cohomology_rank,
        "induced_matrix": d["bruschlinsky"]["matrix"],
        "charpoly": d["bruschlinsky"]["charpoly"],
        "nonzero_charpoly": d["bruschlinsky"]["nonzero_charpoly"],
        "limit": d["bruschlinsky"]["limit"],
        "group": d["bruschlinsky"]["group"],
        "perron": d["perron"],
        "positive_cone": (
            "classes whose pairing with the Perron functional at θ is positive"
            if rep.perron and rep.orientable else None
        ),
        "simplicity": rep.simplicity.status,
        "orientable": rep.orientable,
    }
    return result, EXIT_OK


def cmd_axioms(args, findings):
    p = _load(args.data[0])
    if not p.stationary:
        raise ValidationFailure("axiom checks need a stationary presentation")
    return check_axioms(p).as_dict(), EXIT_OK


def cmd_sign(args, findings):
    p = _load(args.data[0])
    # a reversed edge can break strong connectivity, so validate the reoriented form
    q, sigma = _ordered(p, findings)
    _require_valid(q, findings)
    M = adjacency_matrix(q.rule)
    a = _apply_sigma(q, sigma, LimitElement(args.level, parse_vector(args.vec)))
    verdict = limit_sign(M, a)
    result = {"element": str(a), "sign": verdict.value}
    if args.oracle:
        o = oracle_limit_sign(M, a.vector, _bound(args))
        result["oracle"] = o
        result["oracle_agrees"] = None if o == "unknown" else o == verdict.value
        if o != "unknown" and o != verdict.value:
            raise AssertionError(f"oracle disagrees: {o} vs {verdict.value}")
    return result, EXIT_OK


def cmd_equal(args, findings):
    p = _load(args.data[0])
    _require_valid(p, findings)
    if not p.stationary:
        raise ValidationFailure("element algebra needs a stationary presentation")
    M = adjacency_matrix(p.rule)
    a, b = parse_element(args.lhs), parse_element(args.rhs)
    return {"lhs": str(a), "rhs": str(b), "equal": limit_equal(M, a, b)}, EXIT_OK


def cmd_interpolate(args, findings):
    p = _load(args.data[0])
    # a reversed edge can break strong connectivity, so validate the reoriented form
    q, sigma = _ordered(p, findings)
    _require_valid(q, findings)
    M = adjacency_matrix(q.rule)
    elts = [_apply_sigma(q, sigma, parse_element(x)) for x in (args.a1, args.a2, args.b1, args.b2)]
    c = interpolate(M, *elts, bound=_bound(args))
    c_out = _apply_sigma(q, sigma, c)
    return {"c": str(c_out)}, EXIT_OK


def cmd_compare(args, findings):
    p1, p2 = _load(args.data[0]), _load(args.data[1])
    _require_valid(p1, findings)
    _require_valid(p2, findings)
    if not (p1.stationary and p2.stationary):
        raise ValidationFailure("compare needs stationary presentations")
    rep = compare(p1, p2)
    d = rep.as_dict()
    d["inferred"] = {"left": p1.inferred, "right": p2.inferred}
    return d, EXIT_OK


def cmd_solve(args, findings):
    names, words = [], {}
    for spec in args.word:
        if "=" not in spec:
            raise UsageError(f"word {spec!r} must look like EDGE=LETTER LETTER ...")
        e, _, w = spec.partition("=")
        e = e.strip()
        names.append(e)
        words[e] = [t.rstrip("'") for t in w.split()]
    try:
        sols = solve_incidence(names, words, args.vertices)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = {
        "solutions": [
            {"incidence": [list(x) for x in s.incidence], "signs": [list(x) for x in s.signs],
             "vertex_map": list(s.vertex_map), "all_positive": s.all_positive}
            for s in sols
        ],
        "first": serialize(sols[0].presentation(names, words)) if sols else None,
    }
    return result, EXIT_OK if sols else EXIT_INVALID


COMMANDS = {
    "validate": cmd_validate,
    "invariants": cmd_invariants,
    "bruschlinsky": cmd_bruschlinsky,
    "axioms": cmd_axioms,
    "sign": cmd_sign,
    "equal": cmd_equal,
    "interpolate": cmd_interpolate,
    "compare": cmd_compare,
    "solve": cmd_solve,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the structured output document")
    common.add_argument("--bound", type=int, default=None, help="iteration bound (default $SOLCALC_BOUND or 64)")

    ap = _Parser(prog="solcalc", description="Ordered invariants of branched solenoid presentations.")
    ap.add_argument("--version", action="version", version=f"solcalc {__version__}")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    for name in ("validate", "invariants", "bruschlinsky", "axioms"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("file")
    s = sub.add_parser("sign", parents=[common])
    s.add_argument("file")
    s.add_argument("--level", type=int, default=0)
    s.add_argument("--vec", required=True)
    s.add_argument("--oracle", action="store_true", help="cross-check with the iteration oracle")
    s = sub.add_parser("equal", parents=[common])
    s.add_argument("file")
    s.add_argument("--lhs", required=True)
    s.add_argument("--rhs", required=True)
    s = sub.add_parser("interpolate", parents=[common])
    s.add_argument("file")
    for flag in ("--a1", "--a2", "--b1", "--b2"):
        s.add_argument(flag, required=True)
    s = sub.add_parser("compare", parents=[common])
    s.add_argument("file1")
    s.add_argument("file2")
    s = sub.add_parser("solve", parents=[common], help="reconstruct incidence from bare words")
    s.add_argument("--vertices", type=int, required=True)
    s.add_argument("--word", action="append", required=True, help="EDGE=LETTER LETTER ... (repeatable)")
    return ap


def _render_text(value, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(value))
    return lines


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, dict) for x in v)


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, str) and "\n" in v:
        return "\n" + v
    if isinstance(v, list):
        return json.dumps(v, ensure_ascii=False)
    return str(v)


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    as_json = "--json" in argv
    findings: list = []
    command = argv[0] if argv else None
    digest = None
    try:
        args = parser.parse_args(list(argv))
        if args.command is None:
            raise UsageError("a subcommand is required")
        if args.bound is not None and args.bound < 0:
            raise UsageError("--bound must be nonnegative")
        command = args.command
        paths = [args.file] if hasattr(args, "file") else [args.file1, args.file2] if hasattr(args, "file1") else []
        args.data = [_read(x) for x in paths]
        digest = hashlib.sha256(b"\0".join(args.data) + "\0".join(argv).encode()).hexdigest()
        inferred = False
        result, code = COMMANDS[command](args, findings)
        for raw in args.data:
            try:
                inferred = inferred or parse_presentation(raw.decode("utf-8")).inferred
            except (PresentationError, UnicodeDecodeError):
                pass
        error = None
    except UsageError as exc:
        result, code, error, digest, inferred = None, EXIT_USAGE, str(exc), None, False
    except ValidationFailure as exc:
        findings.extend(exc.findings)
        result, code, error, inferred = None, EXIT_INVALID, str(exc), False
    except (NotPrimitive, DimensionMismatch, ValueError) as exc:
        result, code, error, inferred = None, EXIT_INVALID, str(exc), False
    except InconclusiveError as exc:
        result, code, error, inferred = None, EXIT_INCONCLUSIVE, str(exc), False

    doc = {
        "tool": "solcalc",
        "version": __version__,
        "command": command,
        "input_digest": digest,
        "exit_code": code,
        "inferred": inferred,
        "result": result,
        "error": error,
        "findings": findings,
    }
    if as_json:
        stdout.write(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        if error:
            stderr.write(f"solcalc {command or ''}: error: {error}\n")
        for f in findings:
            if not f.get("passed", True):
                stderr.write(f"  failed {f['check']}: {', '.join(map(str, f.get('items', []))) or f.get('detail', '')}\n")
        if result is not None:
            if inferred:
                stdout.write("inferred: yes (incidence reconstructed by the solver)\n")
            stdout.write("\n".join(_render_text(result)) + "\n")
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
