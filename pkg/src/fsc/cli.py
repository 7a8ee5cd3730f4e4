"""``fsc`` command line.

Exit codes: 0 success, 1 invalid input or a failed verification,
2 search stopped at its budget before the result was proven.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .codec import DecodeError, bin_
from .constructions import (
    coin_program,
    coin_transducer,
    theorem2_m,
    theorem2_transducer,
    theorem2_x,
    verify_example1,
    verify_theorem2_bounds,
    w_string,
)
from .core import TransducerFormatError, check_bits, evaluate, parse_transducer, serialize_transducer
from .encodings import SchemeError, nth_prime, scheme_from_id, snm_build
from .search import complexity, power_probe, scan, state_size_membership

EXIT_OK, EXIT_INVALID, EXIT_INCOMPLETE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _bits(text: str) -> str:
    try:
        return check_bits(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fsc", description="Finite-state complexity of binary strings.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("eval", help="run a transducer file on a program")
    p.add_argument("-t", "--transducer", required=True)
    p.add_argument("-p", "--program", required=True, type=_bits)

    p = sub.add_parser("encode", help="print the code of a transducer file")
    p.add_argument("-t", "--transducer", required=True)
    p.add_argument("-s", "--scheme", default="s0")

    p = sub.add_parser("decode", help="print the transducer file for a code")
    p.add_argument("-e", "--encoding", required=True, type=_bits)
    p.add_argument("-s", "--scheme", default="s0")

    def search_flags(p, jobs=True):
        p.add_argument("-s", "--scheme", default="s0")
        p.add_argument("--budget", type=_nonneg, help="cap on enumerated code length")
        if jobs:
            p.add_argument("--jobs", type=_positive, default=1)
        p.add_argument("-o", "--output")

    p = sub.add_parser("complexity", help="exact complexity and minimal descriptions")
    p.add_argument("-x", "--input", required=True, type=_bits)
    search_flags(p)
    p.add_argument("--all-minimal", action="store_true", help="list every minimal description")
    p.add_argument("--no-stats", action="store_true")
    p.add_argument("--format", choices=("json", "tsv"), default="json")

    p = sub.add_parser("scan", help="complexity of every string up to a length")
    p.add_argument("--max-len", required=True, type=_nonneg)
    search_flags(p)
    p.add_argument("--format", choices=("json", "tsv"), default="tsv")

    p = sub.add_parser("construct", help="write the witness strings and transducers")
    p.add_argument("what", choices=("w", "coin-t1", "coin-program", "xnm"))
    p.add_argument("--m", type=_positive)
    p.add_argument("--n", type=_positive)
    p.add_argument("-o", "--outdir")

    p = sub.add_parser("verify", help="check the numeric claims")
    p.add_argument("--target", required=True, choices=("example1", "theorem2", "s1", "snm"))
    p.add_argument("--n", type=_positive)
    p.add_argument("--m", type=_positive)

    p = sub.add_parser("probe-power", help="complexity of w^k for k = 1..kmax")
    p.add_argument("-w", required=True, type=_bits)
    p.add_argument("--kmax", required=True, type=_positive)
    search_flags(p, jobs=False)
    return parser


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str):
    return parse_transducer(Path(path).read_text())


def cmd_eval(args) -> int:
    print(evaluate(_load(args.transducer), args.program))
    return EXIT_OK


def cmd_encode(args) -> int:
    print(scheme_from_id(args.scheme).encode(_load(args.transducer)).describe())
    return EXIT_OK


def cmd_decode(args) -> int:
    sys.stdout.write(serialize_transducer(scheme_from_id(args.scheme).decode(args.encoding)))
    return EXIT_OK


def cmd_complexity(args) -> int:
    report = complexity(args.input, scheme_from_id(args.scheme), budget=args.budget, jobs=args.jobs)
    if args.format == "json":
        text = report.to_json(all_minimal=args.all_minimal, stats=not args.no_stats) + "\n"
    else:
        descs = report.descriptions if args.all_minimal else report.descriptions[:1]
        text = "".join(
            f"{report.input or '-'}\t{report.complexity}\t{d.states}\t{d.sigma}\t{d.program or '-'}\n" for d in descs
        )
    _emit(text, args.output)
    return EXIT_OK if report.exact else EXIT_INCOMPLETE


def cmd_scan(args) -> int:
    table = scan(args.max_len, scheme_from_id(args.scheme), budget=args.budget, jobs=args.jobs)
    if args.format == "tsv":
        text = table.to_tsv()
    else:
        text = json.dumps(
            {
                "scheme": table.scheme,
                "max_len": table.cap,
                "complete": table.complete,
                "rows": [r.to_dict(all_minimal=False, stats=False) for r in table.rows],
                "shortest_by_states": table.shortest_by_states(),
            },
            indent=2,
        ) + "\n"
    _emit(text, args.output)
    return EXIT_OK if table.complete else EXIT_INCOMPLETE


def cmd_construct(args) -> int:
    files: dict[str, str] = {}
    if args.what in ("w", "coin-program") and args.m is None:
        raise UsageError(f"construct {args.what} needs --m")
    if args.what == "w":
        files[f"w_{args.m}.txt"] = w_string(args.m) + "\n"
    elif args.what == "coin-t1":
        files["coin_t1.fst"] = serialize_transducer(coin_transducer())
    elif args.what == "coin-program":
        files[f"coin_program_{args.m}.txt"] = coin_program(args.m) + "\n"
    else:
        if args.n is None:
            raise UsageError("construct xnm needs --n")
        m = args.m or theorem2_m(args.n)
        t, p1 = theorem2_transducer(args.n, m)
        stem = f"xnm_n{args.n}_m{m}"
        files[f"{stem}.fst"] = serialize_transducer(t)
        files[f"{stem}.program"] = p1 + "\n"
        files[f"{stem}.txt"] = theorem2_x(args.n, m) + "\n"
    if args.outdir:
        out = Path(args.outdir)
        out.mkdir(parents=True, exist_ok=True)
        for name, text in files.items():
            (out / name).write_text(text)
            print(out / name)
    else:
        sys.stdout.write("".join(files.values()))
    return EXIT_OK


def _check_lines(checks) -> int:
    ok = True
    for name, passed, value in checks:
        print(f"{'PASS' if passed else 'FAIL'}\t{name}\t{value}")
        ok &= bool(passed)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_verify(args) -> int:
    if args.target == "example1":
        return _check_lines(verify_example1().checks())
    if args.target == "theorem2":
        if args.n is None:
            raise UsageError("verify theorem2 needs --n")
        h = verify_theorem2_bounds(args.n, args.m)
        status = _check_lines(
            [
                ("output_is_x_n(m)", h.output_ok, f"|x|={h.x_len}"),
                ("p1_length_formula", h.p1_formula_ok, str(h.p1_len)),
                ("sigma_within_bound", h.sigma_ok, f"{h.sigma_len}<={h.bound_rhs}"),
                ("description_below_m2_half", h.total_ok, f"{h.sigma_len + h.p1_len}<{float(h.mm_half)}"),
            ]
        )
        print(f"INFO\tm\t{h.m}")
        print(f"INFO\tmax_minimal_states\t{h.state_bound}")
        print(f"INFO\tk_n_upper_bound\t{h.k_n}")
        print("INFO\tlower_bound_half\tnot machine-checked")
        return status
    if args.target == "s1":
        if args.m is None:
            raise UsageError("verify s1 needs --m")
        m = args.m
        x = "0" * nth_prime(m)
        report = complexity(x, scheme_from_id("s1"))
        expected = len(bin_(m)) + 1
        descs = report.descriptions
        status = _check_lines(
            [
                ("exact_search", report.exact, str(report.exact)),
                ("complexity_bin_m_plus_1", report.complexity == expected, f"{report.complexity}=={expected}"),
                ("unique_minimal_description", len(descs) == 1, str(len(descs))),
                ("minimal_states_m", [d.states for d in descs] == [m], str([d.states for d in descs])),
            ]
        )
        print(f"INFO\tceil_log2_m_plus_1\t{math.ceil(math.log2(m)) + 1}")
        return status
    if args.n is None or args.m is None:
        raise UsageError("verify snm needs --n and --m")
    scheme, witness = snm_build(args.n, args.m)
    report = complexity(witness, scheme)
    leq, eq_large, exists_large = state_size_membership(witness, scheme, args.m, report)
    _, eq_small, _ = state_size_membership(witness, scheme, args.n, report)
    return _check_lines(
        [
            ("exact_search", report.exact, str(report.exact)),
            ("complexity_3", report.complexity == 3, str(report.complexity)),
            ("state_sizes", report.state_sizes == [args.n, args.m], str(report.state_sizes)),
            (f"in_L_exists_min_{args.m}", exists_large, str(exists_large)),
            (f"in_L_eq_{args.n}", eq_small, str(eq_small)),
            (f"not_in_L_eq_{args.m}", not eq_large, str(eq_large)),
        ]
    )


def cmd_probe_power(args) -> int:
    rows = power_probe(args.w, args.kmax, scheme_from_id(args.scheme), budget=args.budget)
    lines = ["k\tcomplexity\tmin_states\texact\tflag"]
    for r in rows:
        lines.append(f"{r.k}\t{r.complexity}\t{r.min_state_size}\t{r.exact}\t{'COUNTEREXAMPLE' if r.flagged else '-'}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if all(r.exact for r in rows) else EXIT_INCOMPLETE


COMMANDS = {
    "eval": cmd_eval,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "complexity": cmd_complexity,
    "scan": cmd_scan,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "probe-power": cmd_probe_power,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INVALID
    except (TransducerFormatError, DecodeError, SchemeError, ValueError, OSError) as exc:
        print(f"fsc: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())
