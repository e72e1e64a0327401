"""Command-line front end.

    dimer-resonance scan-aspect --area 1000000 --ratio-min 0.8 --ratio-max 1.25
    dimer-resonance scan-alpha --logAq 1 --alpha-max 6
    dimer-resonance scan-melt --logAq-min -4 --logAq-max 4
    dimer-resonance verify full

Scans write CSV (default) or JSON lines; ``verify`` exits 1 if any check
fails.  Exit status 2 means the arguments could not be used.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from contextlib import contextmanager

from . import polylog
from .sweeps import COLUMNS, scan_alpha, scan_aspect, scan_melt
from .verify import run_suite

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    pass


def _floats(text: str, sizes: tuple[int, ...]) -> tuple[float, ...]:
    try:
        vals = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if len(vals) not in sizes:
        raise argparse.ArgumentTypeError(f"expected {' or '.join(map(str, sizes))} values, got {text!r}")
    return vals


def _ints(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated integers, got {text!r}") from None
    return a, b


def _weights3(text):
    return _floats(text, (3,))


def _weights_ab(text):
    # c is implied by log A^q in these scans; a third value is accepted and ignored
    return _floats(text, (2, 3))[:2]


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dimer-resonance",
                                     description="Resonance spikes of the honeycomb dimer model on a torus.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan-aspect", help="exact and theory log Z across aspect ratios")
    p.add_argument("--weights", type=_weights3, default=(1.0, 0.5, 0.5), metavar="a,b,c")
    p.add_argument("--area", type=int, default=10 ** 6)
    p.add_argument("--ratio-min", type=float, default=0.8)
    p.add_argument("--ratio-max", type=float, default=1.25)
    p.add_argument("--ratio-steps", type=int, default=101)
    p.add_argument("--qmax", type=int, default=20, help="largest denominator for p/q")
    p.add_argument("--alpha-max", type=float, default=10.0,
                   help="theory columns only where |alpha| is at most this")
    _common(p)

    p = sub.add_parser("scan-alpha", help="theory curves against alpha at fixed A^q")
    p.add_argument("--logAq", type=float, default=1.0)
    p.add_argument("--alpha-min", type=float, default=0.0)
    p.add_argument("--alpha-max", type=float, default=6.0)
    p.add_argument("--steps", type=int, default=121)
    p.add_argument("--size", type=_ints, default=(1000, 1000), metavar="m,n")
    p.add_argument("--pq", type=_ints, default=(1, 1), metavar="p,q")
    p.add_argument("--weights", type=_weights_ab, default=(1.0, 0.5), metavar="a,b")
    p.add_argument("--exact", action="store_true", help="add exact values on a realizing torus")
    p.add_argument("--no-markers", action="store_true",
                   help="do not add crossover and nonanalyticity points to the grid")
    _common(p)

    p = sub.add_parser("scan-melt", help="theory log Z and <N_c> at alpha = 0 as A^q crosses 1")
    p.add_argument("--logAq-min", type=float, default=-4.0)
    p.add_argument("--logAq-max", type=float, default=4.0)
    p.add_argument("--steps", type=int, default=81)
    p.add_argument("--size", type=_ints, default=(1000, 1000), metavar="m,n")
    p.add_argument("--pq", type=_ints, default=(1, 1), metavar="p,q")
    p.add_argument("--weights", type=_weights_ab, default=(1.0, 0.5), metavar="a,b")
    p.add_argument("--exact", action="store_true")
    _common(p)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("level", nargs="?", choices=("quick", "full"), default="quick")
    _common(p)

    # undocumented helper for spot checks of the polylog module
    p = sub.add_parser("polylog-eval")
    p.add_argument("nu", type=float)
    p.add_argument("z", type=complex)
    p.add_argument("--side", choices=("above", "below"))
    return parser


@contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _write(records, fmt: str, stream, columns=COLUMNS, row=lambda r: r.cells(),
           obj=lambda r: r.as_json()) -> None:
    if fmt == "csv":
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(columns)
        for r in records:
            w.writerow(row(r))
    else:
        for r in records:
            stream.write(json.dumps(obj(r)) + "\n")


def _run(args) -> int:
    if args.command == "polylog-eval":
        side = {"above": polylog.ABOVE, "below": polylog.BELOW, None: None}[args.side]
        print(repr(complex(polylog.li(args.nu, args.z, side))))
        return 0
    if args.command == "verify":
        results = run_suite(args.level)
        with _open_out(args.out) as fh:
            _write(results, args.format, fh, columns=("check", "measured", "target", "passed"),
                   row=lambda r: [r.name, r.measured, r.target, "pass" if r.passed else "FAIL"],
                   obj=lambda r: r.as_dict())
        return 0 if all(r.passed for r in results) else 1
    if args.command == "scan-aspect":
        if args.ratio_steps < 1 or not 0 < args.ratio_min <= args.ratio_max:
            raise UsageError("need 0 < ratio-min <= ratio-max and ratio-steps >= 1")
        records = scan_aspect(args.area, args.ratio_min, args.ratio_max, args.ratio_steps,
                              args.weights, qmax=args.qmax, alpha_max=args.alpha_max)
    elif args.command == "scan-alpha":
        (m, n), (p, q) = args.size, args.pq
        records = scan_alpha(args.logAq, args.alpha_min, args.alpha_max, args.steps, m, n, p, q,
                             args.weights, exact=args.exact, markers=not args.no_markers)
    else:
        (m, n), (p, q) = args.size, args.pq
        records = scan_melt(m, n, p, q, args.logAq_min, args.logAq_max, args.steps,
                            args.weights, exact=args.exact)
    records = list(records)
    with _open_out(args.out) as fh:
        _write(records, args.format, fh)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except (UsageError, ValueError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
