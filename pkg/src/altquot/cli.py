"""Command-line entry point.

Structured results go to stdout as JSON lines; human summaries go to stderr.
Exit status: 0 success, 1 a verification failed, 2 bad usage or input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import builders as B
from .cases import ANCHOR, CaseError, build_case, remediate
from .certify import AltCertificate, order_report, recheck
from .diagram import analyze, bad_cycles, export_dot, from_dict, is_connected, to_dict, validate
from .pipeline import Realization, ResultCache, check_proposition, enumerate_degrees, realize_degree
from .signatures import FuchsianSignature, ReductionError, reduce

log = logging.getLogger("altquot")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _say(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _load_json_lines(path: str) -> list[dict]:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    text = text.strip()
    try:
        if text.startswith("[") or "\n" not in text:
            obj = json.loads(text)
            return obj if isinstance(obj, list) else [obj]
        return [json.loads(line) for line in text.splitlines() if line.strip()]
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not JSON ({exc.msg})") from None


def _load_diagrams(path: str):
    out = []
    for obj in _load_json_lines(path):
        if "certificate" in obj:
            obj = obj["certificate"]["diagram"]
        elif "diagram" in obj and "x" not in obj:
            obj = obj["diagram"]
        try:
            out.append(from_dict(obj))
        except (KeyError, ValueError, TypeError) as exc:
            raise UsageError(f"{path}: not a diagram ({exc})") from None
    return out


# -- subcommands -------------------------------------------------------------------


def cmd_build(args) -> int:
    triple = build_case(args.case, args.p, args.q, args.r)
    if not args.raw:
        triple = remediate(triple)
    which = ["K1", "K2", "K3"] if args.which == "all" else [args.which]
    for name in which:
        d = getattr(triple, name)
        _emit({"which": name, "case": args.case, **to_dict(d)})
    chk = check_proposition(triple)
    _say(f"case {args.case} ({args.p},{args.q},{args.r}): sizes {triple.sizes}; conditions "
         + ("pass" if chk else "fail: " + "; ".join(chk.failures())))
    return EXIT_OK


def cmd_verify(args) -> int:
    status = EXIT_OK
    for d in _load_diagrams(args.file):
        rep = validate(d)
        an = analyze(d)
        anchor = B.tagged_vertex(d, ANCHOR)
        designated = None
        if anchor is not None:
            designated = next(c for c in d.x_inv_y.cycles if anchor in c)
            if len(designated) != d.q:
                designated = None
        bad = bad_cycles(d, designated)
        connected = is_connected(d)
        out = {
            "n": d.n,
            "valid": rep.valid,
            "violations": list(rep.violations),
            "connected": connected,
            "xy_face_lengths": an.xy_face_lengths.to_dict(),
            "x_inv_y": an.x_inv_y.to_dict(),
            "handles": [h.as_tuple() for h in an.handles],
            "bad_cycles": [len(c) for c in bad],
        }
        if args.order:
            rep_o = order_report([d.x, d.y], seed=args.seed)
            out["order"] = str(rep_o.order)
            out["order_method"] = rep_o.method
        _emit(out)
        ok = rep.valid and connected and not bad
        _say(f"n={d.n}: " + ("ok" if ok else "; ".join(
            list(rep.violations)
            + ([] if connected else ["disconnected"])
            + [f"bad cycle of length {len(c)}" for c in bad]
        )))
        if not ok:
            status = EXIT_FAIL
    return status


def _cache(args) -> ResultCache | None:
    return None if args.no_cache else ResultCache(args.cache_dir)


def cmd_realize(args) -> int:
    res = realize_degree(args.p, args.q, args.r, args.case, args.degree, _cache(args))
    if isinstance(res, Realization):
        _emit(res.to_dict())
        pl = res.plan
        _say(f"n={pl.n}: A_n certified (k1={pl.k1}, k2={pl.k2}, p1={pl.p1}, p2={pl.p2})")
        return EXIT_OK
    _emit(res.to_dict())
    _say(f"n={res.n}: unrepresentable ({res.reason})")
    return EXIT_FAIL


def cmd_enumerate(args) -> int:
    if args.to < args.start:
        raise UsageError("--to must not be below --from")
    statuses, bound = enumerate_degrees(
        args.p, args.q, args.r, args.case, range(args.start, args.to + 1),
        certify=args.certify, jobs=args.jobs, cache=_cache(args),
    )
    for s in statuses:
        _emit(s.to_dict())
    hits = sum(s.representable for s in statuses)
    _say(f"{hits}/{len(statuses)} degrees representable; Frobenius bound B = {bound}")
    if args.certify and any(s.certified is False for s in statuses):
        return EXIT_FAIL
    return EXIT_OK


def cmd_recheck(args) -> int:
    status = EXIT_OK
    for obj in _load_json_lines(args.cert):
        obj = obj.get("certificate", obj)
        if not obj.get("certified", True):
            raise UsageError("file holds a failure report, not a certificate")
        try:
            cert = AltCertificate.from_dict(obj)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"not a certificate ({exc})") from None
        rep = recheck(cert)
        _emit({"n": cert.n, "ok": rep.ok, "failures": list(rep.failures)})
        _say(f"n={cert.n}: " + ("certificate holds" if rep.ok else "; ".join(rep.failures)))
        if not rep.ok:
            status = EXIT_FAIL
    return status


def cmd_export(args) -> int:
    for d in _load_diagrams(args.dot):
        sys.stdout.write(export_dot(d))
    return EXIT_OK


def cmd_reduce(args) -> int:
    try:
        sig = FuchsianSignature.parse(args.signature)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        trace = reduce(sig)
    except ReductionError as exc:
        _emit({"signature": str(sig), "error": str(exc)})
        _say(str(exc))
        return EXIT_FAIL
    _emit({"signature": str(sig), **trace.to_dict()})
    for line in trace.lines():
        _say(line)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


def _triple_flags(sp: argparse.ArgumentParser, case_required: bool = True) -> None:
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--case", type=int, required=case_required, default=None)


def _cache_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--no-cache", action="store_true", help="skip the on-disk result store")
    sp.add_argument("--cache-dir", default=None, help="result store (default: $ALTQUOT_CACHE_DIR or ~/.cache/altquot)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="altquot", description="Alternating quotients of triangle groups via coset diagrams.")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized oracles (default 0)")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("build", help="build a case triple and print diagrams")
    _triple_flags(sp)
    sp.add_argument("--which", choices=["K1", "K2", "K3", "all"], default="all")
    sp.add_argument("--raw", action="store_true", help="skip remediation of bad cycles")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("verify", help="validate diagrams from a JSON file")
    sp.add_argument("file")
    sp.add_argument("--order", action="store_true", help="also compute the group order")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("realize", help="certify a diagram of the given degree")
    _triple_flags(sp, case_required=False)
    sp.add_argument("--degree", type=int, required=True)
    _cache_flags(sp)
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("enumerate", help="representability over a degree range")
    _triple_flags(sp, case_required=False)
    sp.add_argument("--from", dest="start", type=int, required=True)
    sp.add_argument("--to", type=int, required=True)
    sp.add_argument("--certify", action="store_true", help="build and certify each representable degree")
    sp.add_argument("--jobs", type=int, default=1)
    _cache_flags(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("recheck", help="re-verify a certificate in linear time")
    sp.add_argument("cert")
    sp.set_defaults(func=cmd_recheck)

    sp = sub.add_parser("export", help="convert a diagram to Graphviz DOT")
    sp.add_argument("--dot", required=True, metavar="FILE")
    sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("reduce", help="reduce a signature to a Dyck base case")
    sp.add_argument("--signature", required=True)
    sp.set_defaults(func=cmd_reduce)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    if getattr(args, "jobs", 1) < 1:
        ap.error("--jobs must be positive")
    try:
        return args.func(args)
    except (UsageError, CaseError) as exc:
        _say(f"altquot: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
