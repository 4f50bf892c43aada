"""Command-line front end.

Exit codes: 0 ok, 1 usage, 2 enumeration budget exceeded, 3 data error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .atlas import atlas_check
from .enumeration import DEFAULT_BUDGET, EnumerationQuery, cached_enumeration
from .errors import BudgetExceeded, MorseStrataError
from .homology import class_certificate
from .invariants import (
    StratumHomotopyPlugin,
    dimension_vanishing_check,
    euler_characteristic,
    morse_smale_check,
    q_polynomial,
)
from .poset import build_poset
from .program import LabelSpec, SurfaceSignature

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_DATA = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(json.dumps({"error": "usage", "message": message}))
        raise SystemExit(EXIT_USAGE)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=1)
    common.add_argument("--q", type=int, required=True)
    common.add_argument("--r", type=int, default=1)
    common.add_argument("--labels", default="all", help="all | none | path to a JSON label spec")
    common.add_argument("--filter-s", type=int, default=None)
    common.add_argument("--format", choices=["json", "dot", "csv", "text"], default="json")
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--plugin", default=None, help="JSON table of stratum Poincare data")
    common.add_argument("--workers", type=int, default=1)

    parser = _Parser(prog="morsestrata", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("enumerate", parents=[common])
    sub.add_parser("poset", parents=[common])
    sub.add_parser("euler", parents=[common])
    qp = sub.add_parser("qpoly", parents=[common])
    qp.add_argument("--betti", default=None, help="comma-separated Betti numbers to test")
    ac = sub.add_parser("atlas-check", parents=[common])
    ac.add_argument("--samples", type=int, default=100)
    return parser


def _labels(arg: str, sig: SurfaceSignature) -> LabelSpec:
    if arg == "all":
        return LabelSpec.all(sig)
    if arg == "none":
        return LabelSpec.none()
    return LabelSpec.from_dict(json.loads(Path(arg).read_text()))


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1)


def _classes(args, query):
    return cached_enumeration(
        query, args.cache_dir, args.budget, args.workers, use_cache=not args.no_cache
    )


def cmd_enumerate(args, query) -> str:
    classes = _classes(args, query)
    hist: dict[int, int] = {}
    for c in classes:
        hist[c.s_value] = hist.get(c.s_value, 0) + 1
    warnings = []
    if query.signature.euler_char % 2:
        warnings.append("odd Euler characteristic")
    if args.format == "text":
        lines = [f"# {len(classes)} classes; histogram {dict(sorted(hist.items()))}"]
        lines += [f"# warning: {w}" for w in warnings]
        lines += [f"{c.class_id} s={c.s_value} partition={c.partition}" for c in classes]
        return "\n".join(lines) + "\n"
    return _dump({
        "query": query.digest(),
        "count": len(classes),
        "histogram": {str(k): v for k, v in sorted(hist.items())},
        "warnings": warnings,
        "classes": [
            {"class_id": c.class_id, "s": c.s_value, "partition": c.partition.to_list(),
             "program": c.canonical_program.to_dict()}
            for c in classes
        ],
    }) + "\n"


def cmd_poset(args, query) -> str:
    poset = build_poset(_classes(args, query), workers=args.workers)
    if args.format == "dot":
        return poset.to_dot()
    if args.format == "csv":
        return poset.dimension_csv()
    certs = {cid: class_certificate(c) for cid, c in poset.nodes.items()}
    return _dump(poset.to_dict(certs)) + "\n"


def cmd_euler(args, query) -> str:
    chi = euler_characteristic(_classes(args, query), query.signature.q)
    if args.format == "text":
        return f"{chi:+d}\n"
    return _dump({"euler_characteristic": chi, "formatted": f"{chi:+d}"}) + "\n"


def cmd_qpoly(args, query) -> str:
    poset = build_poset(_classes(args, query), workers=args.workers)
    plugin = StratumHomotopyPlugin.from_file(args.plugin) if args.plugin else StratumHomotopyPlugin.contractible()
    poly = q_polynomial(poset, plugin)
    out = {
        "plugin": plugin.label,
        "Q": list(poly.coefficients),
        "Q_text": str(poly),
        "vanishing": dimension_vanishing_check(poly, query.signature.q).to_dict(),
    }
    if args.betti:
        betti = [int(x) for x in args.betti.split(",")]
        out["inequalities"] = morse_smale_check(betti, poly).to_dict()
    return _dump(out) + "\n"


def cmd_atlas_check(args, query) -> str:
    rep = atlas_check(_classes(args, query), args.samples, args.seed)
    return _dump({"seed": args.seed, "samples": args.samples, **rep.to_dict()}) + "\n"


COMMANDS = {
    "enumerate": cmd_enumerate,
    "poset": cmd_poset,
    "euler": cmd_euler,
    "qpoly": cmd_qpoly,
    "atlas-check": cmd_atlas_check,
}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        sig = SurfaceSignature(args.p, args.q, args.r)
        query = EnumerationQuery(sig, _labels(args.labels, sig), s=args.filter_s)
    except (ValueError, OSError, KeyError) as e:
        print(json.dumps({"error": "usage", "message": str(e)}))
        return EXIT_USAGE
    try:
        sys.stdout.write(COMMANDS[args.command](args, query))
    except BudgetExceeded as e:
        print(json.dumps({"error": "budget", "message": str(e)}))
        return EXIT_BUDGET
    except (MorseStrataError, OSError, ValueError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}))
        return EXIT_DATA
    return EXIT_OK


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
