"""Command-line front end.

Constructions print versioned JSON on stdout (or ``-o``); certificates go to
``--cert``, to ``<output>.cert.json`` when ``-o`` is given, or to stderr.
Exit codes: 0 ok, 1 verification failed, 2 invalid parameters, 3 budget
exhausted. Errors print one line ``E:<code>:<message>`` on stderr.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from collections.abc import Sequence

from .bounds import compute_f, compute_g
from .core import DEFAULT_NODE_BUDGET, Hypergraph3, TripleSystem, graph_matching_number, leave
from .designs import PBD35, construct_pbd35, construct_sts, construct_ts, verify_pbd35
from .errors import CodegreeBoundError, ConstructionError, ParameterError
from .extremal import construct_extremal, verify_extremal
from .mpts import construct_mpts, verify_mpts
from .oracle import DEFAULT_BUDGET, oracle_extremal, oracle_mpts


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise _UsageError(message)


def _nonneg(text: str) -> int:
    if not re.fullmatch(r"[0-9]+", text):
        raise argparse.ArgumentTypeError(f"expected a nonnegative decimal integer, got {text!r}")
    return int(text)


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_cert(args, cert: dict) -> None:
    text = json.dumps(cert, sort_keys=True, separators=(",", ":")) + "\n"
    path = args.cert or (args.output + ".cert.json" if args.output else None)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stderr.write(text)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_bound(args) -> int:
    print(compute_f(args.n, args.nu, args.delta2))
    return 0


def _cmd_g(args) -> int:
    print(compute_g(args.nu, args.lam, args.s))
    return 0


def _cmd_sts(args) -> int:
    _emit(args, _dump(construct_sts(args.nu).to_dict()))
    return 0


def _cmd_ts(args) -> int:
    _emit(args, _dump(construct_ts(args.nu, args.lam, args.seed).to_dict()))
    return 0


def _cmd_pbd(args) -> int:
    _emit(args, _dump(construct_pbd35(args.nu, args.seed).to_dict()))
    return 0


def _cmd_mpts(args) -> int:
    result = construct_mpts(args.nu, args.lam, args.s, args.seed)
    _emit(args, _dump(result.system.to_dict()))
    _emit_cert(args, result.certificate(args.s))
    return 0


def _cmd_extremal(args) -> int:
    h, part = construct_extremal(args.n, args.nu, args.delta2, args.seed, force=args.force)
    cert = verify_extremal(h, args.nu, args.delta2, args.budget)
    _emit(args, _dump(h.to_dict()))
    _emit_cert(args, {**cert.to_dict(), "variant": part.diagnostics.get("variant")})
    return 0 if cert.passed else 1


def _verify_pts(data: dict, args) -> dict:
    if "five_block" in data:
        pbd = PBD35.from_dict(data)
        cert = {"format": "pbd35", "nu": pbd.nu, "e": len(pbd.triples), "passed": True, "notes": ""}
        try:
            verify_pbd35(pbd)
        except ConstructionError as exc:
            cert.update(passed=False, notes=str(exc))
        return cert
    ts = TripleSystem.from_dict(data)
    if args.nu is not None and args.nu != ts.nu:
        raise ParameterError(f"file has nu={ts.nu}, expected {args.nu}")
    if args.lam is not None and args.lam != ts.lam:
        raise ParameterError(f"file has lambda={ts.lam}, expected {args.lam}")
    s = args.s or 0
    if s > ts.nu // 2:
        raise ParameterError(f"s={s} exceeds floor(nu/2)={ts.nu // 2}")
    cert = {
        "format": "pts-v1",
        "nu": ts.nu,
        "lambda": ts.lam,
        "s": s,
        "e": ts.edge_count,
        "g": compute_g(ts.nu, ts.lam, s),
        "leave_matching": graph_matching_number(leave(ts)),
        "passed": True,
        "notes": "",
    }
    try:
        verify_mpts(ts, s)
    except ConstructionError as exc:
        cert.update(passed=False, notes=str(exc))
    return cert


def _cmd_verify(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParameterError(f"cannot read {args.file}: {exc}") from exc
    fmt = data.get("format") if isinstance(data, dict) else None
    if fmt == "h3-v1":
        if args.nu is None or args.delta2 is None:
            raise ParameterError("verifying an h3-v1 file needs --nu and --delta2")
        cert = verify_extremal(Hypergraph3.from_dict(data), args.nu, args.delta2, args.budget).to_dict()
    elif fmt == "pts-v1":
        cert = _verify_pts(data, args)
    else:
        raise ParameterError(f"unknown format {fmt!r}")
    sys.stdout.write(json.dumps(cert, sort_keys=True, separators=(",", ":")) + "\n")
    return 0 if cert["passed"] else 1


def _cmd_oracle(args) -> int:
    common = dict(budget=args.budget, allow_large=args.allow_large, threads=args.threads)
    if args.target == "mpts":
        report = oracle_mpts(args.nu, args.lam, args.s, **common)
    else:
        report = oracle_extremal(args.n, args.nu, args.delta2, **common)
    _emit(args, _dump(report.to_dict(timing=args.timing)))
    return 0 if report.exhausted else 3


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="codegree-bound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func, help_text: str, *flags: str, output: bool = False, seed: bool = False):
        p = sub.add_parser(name, help=help_text)
        for flag in flags:
            dest = "lam" if flag == "lambda" else flag
            p.add_argument(f"--{flag}", dest=dest, type=_nonneg, required=True)
        if seed:
            p.add_argument("--seed", type=_nonneg, default=0)
        if output:
            p.add_argument("-o", "--output", help="write JSON here instead of stdout")
        p.set_defaults(func=func)
        return p

    add("bound", _cmd_bound, "print f(n, nu, delta2)", "n", "nu", "delta2")
    add("g", _cmd_g, "print g(nu, lambda, s)", "nu", "lambda", "s")
    add("sts", _cmd_sts, "Steiner triple system", "nu", output=True)
    add("ts", _cmd_ts, "lambda-fold triple system", "nu", "lambda", output=True, seed=True)
    add("pbd", _cmd_pbd, "PBD with one 5-block", "nu", output=True, seed=True)

    for p in (
        add("mpts", _cmd_mpts, "maximum partial triple system", "nu", "lambda", "s", output=True, seed=True),
        add("extremal", _cmd_extremal, "extremal 3-graph", "n", "nu", "delta2", output=True, seed=True),
    ):
        p.add_argument("--cert", help="certificate path (default <output>.cert.json, else stderr)")
    ext = sub.choices["extremal"]
    ext.add_argument("--force", action="store_true", help="build below the size threshold")
    ext.add_argument("--budget", type=_nonneg, default=DEFAULT_NODE_BUDGET)

    ver = sub.add_parser("verify", help="check a construction file")
    ver.add_argument("--file", required=True)
    ver.add_argument("--nu", type=_nonneg)
    ver.add_argument("--delta2", type=_nonneg)
    ver.add_argument("--lambda", dest="lam", type=_nonneg)
    ver.add_argument("--s", type=_nonneg)
    ver.add_argument("--budget", type=_nonneg, default=DEFAULT_NODE_BUDGET)
    ver.set_defaults(func=_cmd_verify)

    orc = sub.add_parser("oracle", help="brute-force optimum")
    osub = orc.add_subparsers(dest="target", required=True, parser_class=_Parser)
    for name, flags in (("mpts", ("nu", "lambda", "s")), ("extremal", ("n", "nu", "delta2"))):
        p = osub.add_parser(name)
        for flag in flags:
            p.add_argument(f"--{flag}", dest="lam" if flag == "lambda" else flag, type=_nonneg, required=True)
        p.add_argument("--budget", type=_nonneg, default=DEFAULT_BUDGET)
        p.add_argument("--threads", type=_nonneg, default=1)
        p.add_argument("--allow-large", action="store_true", help="lift the size limits")
        p.add_argument("--timing", action="store_true", help="include wall time in the report")
        p.add_argument("-o", "--output")
        p.set_defaults(func=_cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        code, message = 2, str(exc)
    except CodegreeBoundError as exc:
        code, message = exc.exit_code, str(exc)
    except OSError as exc:
        code, message = 2, str(exc)
    sys.stderr.write(f"E:{code}:{message}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
