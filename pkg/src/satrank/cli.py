"""Command-line front end.

Exit codes: 0 success, 1 certificate rejected by --verify, 2 input or
validation error, 3 inconclusive (l = 0), 4 missing tau bound.
"""

from __future__ import annotations

import argparse
import csv
import sys
from math import gcd
from pathlib import Path

from .errors import MissingTau, SatrankError, SingularAtRoot
from .exact_arith import CircleAngle, format_rational
from .formats import InputError, dumps, knot_to_json, load_certificate, load_knot, load_pattern, load_tau
from .instanton import TauOracle, generate_family, verdict, verify_certificate
from .seifert_core import axis_self_linking, genus1_enumerate, genus1_value
from .signature_lab import independence_rank, jump_spectrum, tl_signature, torus_seifert

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INPUT = 2
EXIT_INCONCLUSIVE = 3
EXIT_MISSING_TAU = 4

INDEX_JSON = "index.json"
INDEX_TSV = "index.tsv"


def _out(text: str = "") -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _err(text: str) -> None:
    sys.stderr.write(f"satrank: {text}\n")


def cmd_linking(args) -> int:
    pat = load_pattern(args.pattern)
    l = axis_self_linking(pat)
    _out(f"l = {format_rational(l) if l.denominator != 1 else l.numerator}")
    return EXIT_OK if l != 0 else EXIT_INCONCLUSIVE


def _emit_certificate(cert, out) -> None:
    if out:
        Path(out).write_text(cert.dumps())
    else:
        _out(cert.dumps())


def cmd_certify(args) -> int:
    if args.verify:
        if args.tau is None:
            raise InputError("--verify needs --tau")
        cert = load_certificate(args.verify)
        result = verify_certificate(cert, load_tau(args.tau))
        if result:
            _out("certificate verified")
            return EXIT_OK
        _out(f"certificate rejected: {result.failure}")
        return EXIT_MISSING_TAU if "missing tau bound" in (result.failure or "") else EXIT_REJECTED

    if args.pattern is None:
        raise InputError("certify needs a pattern file (or --verify CERT)")
    pat = load_pattern(args.pattern)
    oracle = load_tau(args.tau) if args.tau else TauOracle()
    v = verdict(pat)
    if v.route != "instanton":
        _out(v.summary())
        return EXIT_OK if v.infinite_rank else EXIT_INCONCLUSIVE
    if args.family is None:
        _out(v.summary())
        return EXIT_OK
    cert = generate_family(pat, args.family, oracle, p=args.p, q=args.q)
    # keep stdout pure JSON when the certificate goes there
    if args.out:
        _out(v.summary())
    else:
        sys.stderr.write(v.summary() + "\n")
    _emit_certificate(cert, args.out)
    if args.plot:
        from .plotting import plot_certificate

        plot_certificate(cert, args.plot)
    return EXIT_OK


def _write_tsv(spectrum, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["angle", "angle_lo", "angle_hi", "jump"])
        for key, jump in spectrum.items():
            if isinstance(key, CircleAngle):
                w.writerow([str(key), str(key), str(key), jump])
            else:
                w.writerow([f"{key.approx:.12f}", format_rational(key.lo), format_rational(key.hi), jump])


def _report_spectrum(spectrum, args, title: str) -> None:
    _out(dumps(spectrum.to_json()))
    if getattr(args, "tsv", None):
        _write_tsv(spectrum, args.tsv)
    if getattr(args, "plot", None):
        from .plotting import plot_signature_function

        plot_signature_function(spectrum, args.plot, title)


def cmd_signature(args) -> int:
    knot = load_knot(args.knot)
    if args.at is not None:
        try:
            t = CircleAngle.parse(args.at)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"--at: cannot parse angle {args.at!r}: {exc}") from exc
        try:
            _out(str(tl_signature(knot, t, precision_start=args.precision_start)))
        except SingularAtRoot as exc:
            _err(f"{exc}; the signature is undefined there, use --jumps for the jump spectrum")
            return EXIT_INPUT
        return EXIT_OK
    _report_spectrum(jump_spectrum(knot, precision_start=args.precision_start), args, knot.name)
    return EXIT_OK


def cmd_torus(args) -> int:
    knot = torus_seifert(args.r, args.s)
    if args.seifert:
        _out(dumps(knot_to_json(knot)))
    else:
        _report_spectrum(jump_spectrum(knot, precision_start=args.precision_start), args, knot.name)
    return EXIT_OK


def cmd_independence(args) -> int:
    knots = [load_knot(f) for f in args.knots]
    _out(f"rank = {independence_rank(knots)}")
    return EXIT_OK


def _primitive_vectors(box: int):
    """Primitive (x, y) in [-box, box]^2, one of each +- pair (y > 0, or y = 0 and x > 0)."""
    for y in range(0, box + 1):
        for x in range(-box, box + 1):
            if (y == 0 and x <= 0) or gcd(x, y) != 1:
                continue
            yield x, y


def cmd_genus1(args) -> int:
    if args.box < 1:
        raise InputError("--box must be at least 1")
    w = csv.writer(sys.stdout, delimiter="\t", lineterminator="\n")
    w.writerow(["n", "m", "l", "x", "y", "value"])
    for n, m, l in genus1_enumerate(args.max_m, args.max_l):
        for x, y in _primitive_vectors(args.box):
            value = genus1_value(n, m, l, x, y)
            if value != 0:
                w.writerow([n, m, l, x, y, value])
    return EXIT_OK


def _index_entry(path: Path) -> dict | None:
    try:
        pat = load_pattern(path)
    except SatrankError as exc:
        _err(f"skipping {exc}")
        return None
    v = verdict(pat)
    return {
        "file": path.name,
        "name": pat.name,
        "winding_number": pat.winding,
        "l": None if v.l is None else format_rational(v.l),
        "verdict": v.summary(),
    }


def cmd_catalog(args) -> int:
    root = Path(args.directory)
    if not root.is_dir():
        raise InputError(f"{root}: not a directory")
    files = sorted(p for p in root.glob("*.json") if p.name != INDEX_JSON)
    entries = [e for e in map(_index_entry, files) if e is not None]
    (root / INDEX_JSON).write_text(dumps({"patterns": entries}))
    with open(root / INDEX_TSV, "w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["file", "name", "winding_number", "l", "verdict"])
        for e in entries:
            w.writerow([e["file"], e["name"], e["winding_number"], e["l"] or "", e["verdict"]])
    _out(f"indexed {len(entries)} of {len(files)} pattern files in {root}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="satrank", description="Exact rank obstructions for satellite operators.")
    ap.add_argument("--precision-start", type=int, default=64, metavar="BITS",
                    help="starting interval precision for signatures (results do not depend on it)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("linking", help="axis self-linking l of a winding-zero pattern")
    p.add_argument("pattern")
    p.set_defaults(func=cmd_linking)

    p = sub.add_parser("certify", help="verdict and instanton certificate for a pattern")
    p.add_argument("pattern", nargs="?")
    p.add_argument("--family", type=int, metavar="N")
    p.add_argument("--tau", metavar="FILE")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--verify", metavar="CERT")
    p.add_argument("--plot", metavar="PNG")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("signature", help="Tristram-Levine signature or jump spectrum of a knot")
    p.add_argument("knot")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--at", metavar="a/n")
    g.add_argument("--jumps", action="store_true")
    p.add_argument("--plot", metavar="PNG")
    p.add_argument("--tsv", metavar="FILE")
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("torus", help="Seifert matrix or jump spectrum of T(r, s)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--seifert", action="store_true")
    g.add_argument("--jumps", action="store_true")
    p.add_argument("--plot", metavar="PNG")
    p.add_argument("--tsv", metavar="FILE")
    p.set_defaults(func=cmd_torus)

    p = sub.add_parser("independence", help="rank of the jump vectors of several knots")
    p.add_argument("knots", nargs="+")
    p.set_defaults(func=cmd_independence)

    p = sub.add_parser("genus1", help="genus-one Alexander-one patterns with nonzero l")
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--max-l", type=int, required=True)
    p.add_argument("--box", type=int, default=2, help="search |x|, |y| <= BOX for witnesses")
    p.set_defaults(func=cmd_genus1)

    p = sub.add_parser("catalog", help="pattern catalog maintenance")
    csub = p.add_subparsers(dest="action", required=True)
    pi = csub.add_parser("index", help="write index.json and index.tsv for a directory of patterns")
    pi.add_argument("directory")
    pi.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.precision_start < 2:
        _err("--precision-start must be at least 2")
        return EXIT_INPUT
    try:
        return args.func(args)
    except MissingTau as exc:
        _err(str(exc))
        return EXIT_MISSING_TAU
    except (SatrankError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
