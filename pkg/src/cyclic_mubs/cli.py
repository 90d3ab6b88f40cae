"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .core import (
    CyclicGenerator,
    InvalidGeneratorError,
    build_C,
    build_classes,
    validate_mub_partition,
)
from .entanglement import AmbiguousPartitionError, finest_partition, structure_vector
from .fixtures import FIXTURE_NAMES, fixture_text, load_fixture
from .gf2 import Gf2Matrix
from .search import KINDS, SearchQuery, find_triples
from .serialize import generator_from_json, generator_spec, set_from_json, set_to_json
from .sim import UNBIASED_TOL, class_schmidt_partition, conjugation_report, circuit_unitary, numeric_checks
from .synth import (
    NonSymplecticError,
    circuit_symplectic,
    export_circuit,
    generator_circuit,
    nnz_upper,
    rewrite_cnots,
    seed_circuit,
    synthesize,
)

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2
NUMERIC_MAX_N = 8
SCHMIDT_MAX_N = 4


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise UsageError(f"input file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from exc


def _search_generator(args) -> CyclicGenerator:
    if args.n is None or args.kind is None:
        raise UsageError("--search needs --n and --kind")
    found = find_triples(SearchQuery(args.n, args.kind, limit=1, seed=args.seed))
    if not found:
        raise UsageError(f"no {args.kind} triple found for n={args.n}")
    return build_C(found[0])


def _generator(args) -> CyclicGenerator:
    """Generator from --fixture, --input or --search (validated)."""
    if args.fixture:
        return load_fixture(args.fixture).generator()
    if args.input:
        obj = _read_json(args.input)
        try:
            return generator_from_json(obj)
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed generator JSON: {exc}") from exc
    if getattr(args, "search", False):
        return _search_generator(args)
    raise UsageError("give one of --fixture, --input or --search")


def _set(args):
    """A complete set: a stored set JSON is taken verbatim, anything else is built."""
    if args.input:
        obj = _read_json(args.input)
        if isinstance(obj, dict) and "classes" in obj:
            try:
                return set_from_json(obj)
            except (KeyError, TypeError, ValueError) as exc:
                raise UsageError(f"malformed set JSON: {exc}") from exc
    return build_classes(_generator(args))


def _format_table(s, partitions, vector) -> str:
    lines = [f"n = {s.n}, set type: {s.set_type}"]
    for c, p in zip(s.classes, partitions):
        lines.append(f"class {c.index:>3}  {str(p):<12} " + " ".join(c.labels()))
    lines.append(f"structure {vector}")
    return "\n".join(lines) + "\n"


def cmd_generate(args) -> int:
    s = _set(args)
    report = validate_mub_partition(s)
    if args.format == "table" and report.ok:
        partitions = [finest_partition(c) for c in s.classes]
        _emit(args, _format_table(s, partitions, structure_vector(s)))
    else:
        _emit(args, _dump(set_to_json(s)))
    if not report.ok:
        print(report, file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_verify(args) -> int:
    s = _set(args)
    algebraic = validate_mub_partition(s)
    out = {"passed": algebraic.ok, "algebraic": algebraic.to_json(), "numeric": []}
    if s.n <= NUMERIC_MAX_N:
        try:
            reports = numeric_checks(s.generator, tol=args.tol)
            out["numeric"] = [r.to_json() for r in reports]
            out["passed"] = out["passed"] and all(r.passed for r in reports)
        except (NonSymplecticError, ValueError) as exc:
            out["numeric"] = [{"check": "synthesis", "passed": False, "worst_deviation": None,
                               "witness": {"error": str(exc)}}]
            out["passed"] = False
    _emit(args, _dump(out))
    return EXIT_OK if out["passed"] else EXIT_INVALID


def cmd_classify(args) -> int:
    s = _set(args)
    try:
        partitions = [finest_partition(c) for c in s.classes]
    except AmbiguousPartitionError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"cannot classify: {exc}", file=sys.stderr)
        return EXIT_INVALID
    vector = structure_vector(s)
    out = {
        "n": s.n,
        "classes": [{"index": c.index, "partition": str(p)} for c, p in zip(s.classes, partitions)],
        "structure": vector.to_json(),
    }
    agrees = True
    if s.n <= SCHMIDT_MAX_N:
        oracle = [class_schmidt_partition(c) for c in s.classes]
        agrees = oracle == partitions
        out["schmidt_agrees"] = agrees
    if args.format == "table":
        _emit(args, _format_table(s, partitions, vector))
    else:
        _emit(args, _dump(out))
    return EXIT_OK if agrees else EXIT_INVALID


def _synth_target(args):
    """(C, generator or None) for synth; --input may be a bare C matrix."""
    if args.input:
        obj = _read_json(args.input)
        if isinstance(obj, list) or (isinstance(obj, dict) and "data" in obj):
            return Gf2Matrix.from_json(obj), None
        if isinstance(obj, dict) and "C" in obj and "B" not in obj:
            return Gf2Matrix.from_json(obj["C"]), None
    g = _generator(args)
    return g.C, g


def cmd_synth(args) -> int:
    C, g = _synth_target(args)
    try:
        circuit = generator_circuit(g) if g is not None else synthesize(C)
    except NonSymplecticError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    if args.hcz:
        circuit = rewrite_cnots(circuit)
    if args.check:
        round_trip = circuit_symplectic(circuit) == C
        checks = [{"check": "round_trip", "passed": round_trip}]
        if circuit.n <= NUMERIC_MAX_N:
            checks.append(conjugation_report(circuit_unitary(circuit), C, tol=args.tol).to_json())
            if g is not None:
                checks += [r.to_json() for r in numeric_checks(g, tol=args.tol)]
        failed = [c for c in checks if not c["passed"]]
        print(_dump({"passed": not failed, "checks": checks}), file=sys.stderr, end="")
        if failed:
            return EXIT_INVALID
    if args.format == "json":
        body = {"generator": circuit.to_json(), "gate_count": len(circuit)}
        if g is not None and not g.offset.is_zero():
            body["offset"] = seed_circuit(g).to_json()
        if g is not None and g.triple is not None and g.triple.R.is_identity() and g.triple.A.is_zero():
            body["nnz_upper_B"] = nnz_upper(g.triple.B)
        _emit(args, _dump(body))
    else:
        text = export_circuit(circuit, "qasm")
        if g is not None and not g.offset.is_zero():
            text = "// offset circuit\n" + export_circuit(seed_circuit(g), "qasm") + "// generator circuit\n" + text
        _emit(args, text)
    return EXIT_OK


def cmd_search(args) -> int:
    if args.n is None or args.kind is None:
        raise UsageError("search needs --n and --kind")
    q = SearchQuery(args.n, args.kind, limit=args.limit, seed=args.seed, mode=args.mode,
                    time_budget=args.time_budget)
    found = find_triples(q)
    out = {"n": args.n, "kind": args.kind, "found": len(found), "triples": [t.to_json() for t in found]}
    if not found:
        out["outcome"] = "none found"
    _emit(args, _dump(out))
    return EXIT_OK


def cmd_export(args) -> int:
    """Write a generator in the --input format (fixtures verbatim)."""
    if args.fixture:
        _emit(args, fixture_text(args.fixture))
    else:
        _emit(args, _dump(generator_spec(_generator(args))))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclic-mubs", description="Cyclic mutually unbiased bases for n qubits.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("json", "table")):
        p.add_argument("--fixture", choices=FIXTURE_NAMES)
        p.add_argument("--input", help="generator or set JSON file")
        p.add_argument("--output", help="write here instead of stdout")
        p.add_argument("--n", type=int)
        p.add_argument("--kind", choices=KINDS)
        p.add_argument("--search", action="store_true", help="find a generator for --n/--kind")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--tol", type=float, default=UNBIASED_TOL)
        return p

    common(sub.add_parser("generate", help="build a complete set")).set_defaults(func=cmd_generate)
    common(sub.add_parser("verify", help="algebraic and numeric checks")).set_defaults(func=cmd_verify)
    common(sub.add_parser("classify", help="entanglement structure")).set_defaults(func=cmd_classify)
    p = common(sub.add_parser("synth", help="compile the generator to a circuit"), formats=("qasm", "json"))
    p.add_argument("--check", action="store_true", help="round-trip and conjugation checks first")
    p.add_argument("--hcz", action="store_true", help="rewrite CNOTs as H CZ H")
    p.set_defaults(func=cmd_synth)
    p = common(sub.add_parser("search", help="find valid triples"))
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--mode", choices=("auto", "exhaustive", "heuristic"), default="auto")
    p.add_argument("--time-budget", type=float, default=None)
    p.set_defaults(func=cmd_search)
    common(sub.add_parser("export", help="write generator JSON")).set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.fixture and args.input:
        parser.error("--fixture and --input are mutually exclusive")
    if args.input and not Path(args.input).is_file():
        print(f"input file not found: {args.input}", file=sys.stderr)
        return EXIT_USAGE
    if args.output and not Path(args.output).resolve().parent.is_dir():
        print(f"output directory does not exist: {args.output}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except InvalidGeneratorError as exc:
        print(f"{exc}\n{exc.report}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
