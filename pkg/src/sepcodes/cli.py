"""Command-line entry point: ``sepcodes {verify,search,bounds,prove-chain,entropy}``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .bounds import emit_bound_table
from .chain import choose_prefix_length, verify_proof_chain
from .core import CodeParams, format_word, parse_code
from .entropy import ConvergenceError, max_constrained_entropy, max_constrained_entropy_numeric
from .phimap import PhiVariant
from .predicates import BudgetExceeded, CodeProperty
from .search import SearchConfig, max_code_search, search_table

log = logging.getLogger("sepcodes")


def _read_code(path: str):
    if path == "-":
        return parse_code(sys.stdin.buffer.read())
    return parse_code(Path(path).read_bytes())


def _property(text: str) -> CodeProperty:
    try:
        return CodeProperty.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _variant(text: str) -> PhiVariant:
    try:
        return PhiVariant(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"variant must be 'sep' or 'b2diff', got {text!r}") from None


def _prefix_len(text: str):
    if text == "auto":
        return "auto"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--e must be an integer or 'auto', got {text!r}") from None


def _format_witness(witness) -> list[str]:
    """Render a violation witness as one line per subset / pair."""
    lines = []
    for part in witness:
        if part and isinstance(part[0], tuple):
            lines.append(" | ".join(format_word(w) for w in part))
        else:
            lines.append(format_word(part))
    return lines


def cmd_verify(args, out) -> int:
    code = _read_code(args.input)
    bad = args.property.violation(code, disjoint_only=args.disjoint_reading)
    if bad is None:
        print("true", file=out)
        return 0
    print("false", file=out)
    for line in _format_witness(bad):
        print(f"witness: {line}", file=out)
    return 1


def cmd_search(args, out) -> int:
    kwargs = dict(
        node_limit=args.node_limit,
        use_symmetry=args.symmetry,
        workers=args.workers,
        disjoint_reading=args.disjoint_reading,
        use_compiled=not args.python_kernel,
    )
    if args.table:
        print("n,max_size,rate,bound,exceeds_bound,complete", file=out)
        for row in search_table(args.q, args.n, args.property, **kwargs):
            print(
                f"{row.n},{row.max_size},{row.rate:.12g},{row.bound:.12g},"
                f"{str(row.exceeds_bound).lower()},{str(row.complete).lower()}",
                file=out,
            )
        return 0
    params = CodeParams(args.q, args.n)
    log.info("searching %d words of length %d over q=%d for %s", params.space_size, args.n, args.q, args.property)
    res = max_code_search(SearchConfig(params, args.property, **kwargs))
    out.write(res.format())
    return 0


def cmd_bounds(args, out) -> int:
    text = emit_bound_table(args.q_min, args.q_max, header=not args.no_header)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        out.write(text)
    return 0


def cmd_prove_chain(args, out) -> int:
    code = _read_code(args.input)
    e = choose_prefix_length(code.size, code.q, code.n) if args.e == "auto" else args.e
    report = verify_proof_chain(code, e, args.variant)
    print(report.format_text(), file=out)
    for line in report.key_values():
        print(line, file=out)
    return 0 if report.passed else 1


def cmd_entropy(args, out) -> int:
    if args.mode == "analytic":
        bits, dist = max_constrained_entropy(args.q, args.variant)
    else:
        bits = max_constrained_entropy_numeric(args.q, args.tol, args.variant)
    print(format(bits, ".12g"), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sepcodes", description="Separable, frameproof and B2 code toolkit.")
    p.add_argument("-v", "--verbose", action="store_true", help="progress and diagnostics on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check a code file against a property")
    v.add_argument("--property", type=_property, required=True, help="sep2, sep:<t>, fp:<t> or b2")
    v.add_argument("--input", required=True, help="code file, or '-' for stdin")
    v.add_argument("--disjoint-reading", action="store_true", help="compare disjoint subsets only (separable)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="exhaustive maximum-code search")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True, help="word length (table: maximum length)")
    s.add_argument("--property", type=_property, required=True)
    s.add_argument("--node-limit", type=int, default=10**8)
    s.add_argument("--no-symmetry", dest="symmetry", action="store_false")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--disjoint-reading", action="store_true")
    s.add_argument("--python-kernel", action="store_true", help="skip the compiled kernel")
    s.add_argument("--table", action="store_true", help="CSV of maximum sizes for n = 1..N")
    s.set_defaults(func=cmd_search)

    b = sub.add_parser("bounds", help="CSV table of rate bounds")
    b.add_argument("--q-min", type=int, required=True)
    b.add_argument("--q-max", type=int, required=True)
    b.add_argument("--out", help="write CSV here instead of stdout")
    b.add_argument("--no-header", action="store_true")
    b.set_defaults(func=cmd_bounds)

    c = sub.add_parser("prove-chain", help="verify the finite-n entropy argument on a code")
    c.add_argument("--input", required=True)
    c.add_argument("--variant", type=_variant, default=PhiVariant.SEPARABLE)
    c.add_argument("--e", type=_prefix_len, default="auto")
    c.set_defaults(func=cmd_prove_chain)

    en = sub.add_parser("entropy", help="constrained maximum entropy per coordinate")
    en.add_argument("--q", type=int, required=True)
    en.add_argument("--mode", choices=("analytic", "numeric"), default="analytic")
    en.add_argument("--variant", type=_variant, default=PhiVariant.SEPARABLE)
    en.add_argument("--tol", type=float, default=1e-9)
    en.set_defaults(func=cmd_entropy)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(name)s: %(message)s",
    )
    try:
        return args.func(args, out)
    except (ValueError, BudgetExceeded, ConvergenceError, OSError) as exc:
        # CodeFormatError, ChainPreconditionError and SearchGuardError are ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
