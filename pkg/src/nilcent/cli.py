"""Command-line entry point: ``nilcent {info|invariants|verify|groebner}``."""
from __future__ import annotations

import argparse
import sys
import time

from .centralizer import build_algebra, centraliser_dimension_by_kernel
from .groebner import (
    SizeGuardExceeded,
    contains,
    groebner,
    ideal_dimension,
    is_groebner,
    read_ideal,
)
from .invariants import (
    invariant_keys,
    is_invariant,
    monomial_invariant,
    proportionality,
    restricted_invariants,
)
from .model_space import AlgebraKind, EmptyPartition, InadmissiblePartition, build_model
from .poly_algebra import to_text
from .reports import Report, emit_report
from .structure_analysis import ambient_rank, centre, centre_dimension_formula, estimate_index
from .suites import SKIPPED, SUITES, run_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_GUARD = 2
EXIT_USAGE = 64
EXIT_DATA = 65

KIND_LETTERS = {"A": AlgebraKind.GL, "B": AlgebraKind.SO, "C": AlgebraKind.SP, "D": AlgebraKind.SO}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parts(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad partition {text!r}") from None
    return parts


def _model(letter: str, text: str):
    parts = _parts(text)
    kind = KIND_LETTERS[letter]
    n = sum(parts)
    if letter == "B" and n % 2 == 0:
        raise DataError(f"kind B needs odd n, got {n}")
    if letter == "D" and n % 2 == 1:
        raise DataError(f"kind D needs even n, got {n}")
    if any(p < 1 for p in parts) or list(parts) != sorted(parts, reverse=True):
        raise DataError(f"{text!r} is not a non-increasing partition")
    try:
        return build_model(parts, kind)
    except (InadmissiblePartition, EmptyPartition) as exc:
        raise DataError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-o", "--output", metavar="PATH", help="write the report here")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)

    algebra = _Parser(add_help=False)
    algebra.add_argument("-k", "--kind", choices=tuple(KIND_LETTERS), required=True)
    algebra.add_argument("-p", "--partition", required=True, help="comma-separated parts")
    algebra.add_argument("--gl", action="store_true", help="label type A reports as gl_n")

    parser = _Parser(prog="nilcent", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("info", parents=[common, algebra], help="dimension, index and centre")
    inv = sub.add_parser("invariants", parents=[common, algebra], help="generating invariants")
    inv.add_argument("--method", choices=("slice", "monomial", "both"), default="slice")
    inv.add_argument("--ell", help="a single generator key (an integer, or 'pf')")
    ver = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("--suite", choices=SUITES + ("all",), default="all")
    ver.add_argument("--max-n", type=int, default=None)
    gb = sub.add_parser("groebner", parents=[common], help="reduced Gröbner basis of an ideal file")
    gb.add_argument("--ideal", required=True, metavar="FILE")
    return parser


def _input(args, **extra) -> dict:
    out = {"command": args.command}
    if hasattr(args, "kind"):
        out["kind"] = args.kind
        out["partition"] = list(_parts(args.partition))
        if args.kind == "A":
            out["algebra"] = "gl" if args.gl else "sl"
    out.update(extra)
    out["seed"] = args.seed
    return out


def cmd_info(args, rep: Report) -> None:
    model = _model(args.kind, args.partition)
    alg = build_algebra(model)
    rep.add("dimension", "centraliser-dimension", centraliser_dimension_by_kernel(model), alg.dim)
    rep.add("index", "index-equals-rank", ambient_rank(model),
            estimate_index(alg, samples=20, seed=args.seed))
    rep.add("centre dimension", "centre-dimension", centre_dimension_formula(model), centre(alg).dim)


def _ell(text, keys):
    if text is None:
        return list(keys)
    key = text if text == "pf" else int(text) if text.lstrip("-").isdigit() else None
    if key not in keys:
        raise UsageError(f"--ell must be one of {keys}")
    return [key]


def cmd_invariants(args, rep: Report) -> None:
    model = _model(args.kind, args.partition)
    if args.method != "slice" and model.kind is not AlgebraKind.GL:
        raise UsageError("the monomial formula needs kind A")
    alg = build_algebra(model)
    keys = _ell(args.ell, invariant_keys(model))
    slice_inv = restricted_invariants(alg)
    other = {}
    if args.method in ("slice", "both"):
        other = {k: q for k, _, q in restricted_invariants(alg, method="berkowitz").items}
    anchor = "restricted-invariants"
    for key, m, p in slice_inv.items:
        if key not in keys:
            continue
        if args.method in ("slice", "both"):
            rep.add(f"invariant {key}, degree {m}, two routes", anchor, to_text(other[key]), to_text(p))
            rep.add(f"invariant {key} Poisson-central", anchor, True, is_invariant(alg, p))
        if args.method in ("monomial", "both"):
            mono = monomial_invariant(alg, key, m)
            c = proportionality(mono, p)
            scaled = p.scale(c) if c else p
            rep.add(f"invariant {key}, monomial formula", "monomial-formula", to_text(scaled),
                    to_text(mono))


def cmd_verify(args, rep: Report) -> None:
    if args.max_n is not None and args.max_n < 1:
        raise UsageError("--max-n must be positive")
    run_suite(args.suite, rep, args.max_n, args.seed)


def cmd_groebner(args, rep: Report) -> None:
    try:
        ideal = read_ideal(args.ideal)
    except OSError as exc:
        raise UsageError(f"cannot read {args.ideal}: {exc.strerror}") from None
    except ValueError as exc:
        raise DataError(f"cannot parse {args.ideal}: {exc}") from None
    gb = groebner(ideal)
    rev = groebner(ideal.with_generators(list(reversed(ideal.generators))))
    anchor = "groebner-engine"
    rep.add("reduced basis (reversed generator order)", anchor,
            [to_text(p) for p in rev.polys], [to_text(p) for p in gb.polys])
    rep.add("S-polynomials reduce to zero", anchor, True, is_groebner(gb))
    rep.add("generators reduce to zero", anchor, True, all(contains(gb, p) for p in ideal.generators))
    rep.add("dimension (reversed generator order)", anchor, ideal_dimension(rev), ideal_dimension(gb))


COMMANDS = {"info": cmd_info, "invariants": cmd_invariants, "verify": cmd_verify,
            "groebner": cmd_groebner}


def _input_for(args) -> dict:
    if args.command == "verify":
        return _input(args, suite=args.suite, max_n=args.max_n)
    if args.command == "groebner":
        return _input(args, ideal=args.ideal)
    if args.command == "invariants":
        return _input(args, method=args.method, ell=args.ell)
    return _input(args)


def _run(argv):
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        rep = Report(_input_for(args))
        try:
            COMMANDS[args.command](args, rep)
        except SizeGuardExceeded as exc:
            rep.add("size guard", "groebner-guard", "within guard", f"{SKIPPED}: {exc}", False)
    except UsageError as exc:
        print(f"nilcent: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None, None
    except DataError as exc:
        print(f"nilcent: inadmissible input: {exc}", file=sys.stderr)
        return EXIT_DATA, None, None
    rep.elapsed_ms = int((time.perf_counter() - start) * 1000)
    skipped = [c for c in rep.checks if isinstance(c.actual, str) and c.actual.startswith(SKIPPED)]
    if any(not c.passed for c in rep.checks if c not in skipped):
        return EXIT_FAILED, rep, args
    return (EXIT_GUARD if skipped else EXIT_OK), rep, args


def run_command(argv) -> tuple[int, Report | None]:
    """Run one command; returns the exit code and the report (None on usage errors)."""
    code, rep, _ = _run(argv)
    return code, rep


def main(argv=None) -> int:
    code, rep, args = _run(sys.argv[1:] if argv is None else argv)
    if rep is None:
        return code
    data = emit_report(rep, args.format)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
