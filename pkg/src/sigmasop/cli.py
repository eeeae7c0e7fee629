"""Command-line front end.

Exit status: 0 when every check passes or the artifact was written, 1 when a
check failed (the report with witnesses is still written), 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import config, schemas
from .dot import export_dot
from .errors import SigmaSopError
from .patterns import (
    GENERATORS,
    ConsistencyPattern,
    check_coverage,
    check_maximality,
    check_weak_maximality,
    full_report,
    validate_pattern,
)
from .poset import Poset, enumerate_posets, find_embedding
from .report import Report
from .sigma import sigma_ip, sigma_op, sigma_pattern, verify_sigma_properties
from .witnesses import (
    SetSystem,
    has_sup,
    inclusion_poset,
    ip_sigma_sets,
    op_sigma_sets,
    pattern_sigma_sets,
    roundtrip,
    verify_intended_map,
)


class UsageError(SigmaSopError):
    pass


def _env_bound(var: str, default: int) -> int:
    raw = os.environ.get(var)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {var} must be an integer, got {raw!r}")


def _load(path: str, schema, what: str):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})")
    return schemas.validate(data, schema, f"{path} ({what})")


def load_poset(path: str) -> Poset:
    return Poset.from_json(_load(path, schemas.POSET, "poset"))


def load_pattern(path: str) -> ConsistencyPattern:
    return ConsistencyPattern.from_json(_load(path, schemas.PATTERN, "pattern"))


def load_system(path: str) -> SetSystem:
    return SetSystem.from_json(_load(path, schemas.SET_SYSTEM, "set system"))


def _emit(args, payload) -> None:
    if isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_report(args, report: Report, extra: dict | None = None) -> int:
    if args.human:
        _emit(args, report.to_text() + "\n")
    else:
        payload = report.to_json()
        if extra:
            payload.update(extra)
        _emit(args, payload)
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# verbs


def cmd_pattern_gen(args) -> int:
    kind = args.kind
    params = {
        "tp1": lambda: GENERATORS["tp1"](args.depth or 3),
        "tp2": lambda: GENERATORS["tp2"](args.rows or 2, args.cols or 3),
        "atp": lambda: GENERATORS["atp"](args.depth or 3),
        "sop3": lambda: GENERATORS["sop3"](args.n or 1),
        "tp": lambda: GENERATORS["tp"](args.depth or 3, args.branching or 3),
    }
    _emit(args, params[kind]().to_json())
    return 0


def cmd_pattern_check(args) -> int:
    p = load_pattern(args.file)
    if args.axiom is None:
        report = full_report(p)
    else:
        report = {
            "c": validate_pattern,
            "m": check_maximality,
            "weak": check_weak_maximality,
            "coverage": check_coverage,
        }[args.axiom](p)
    return _emit_report(args, report)


def cmd_sigma_build(args) -> int:
    if args.op is not None:
        _emit(args, sigma_op(args.op).to_json())
    elif args.ip is not None:
        _emit(args, sigma_ip(args.ip, bound=args.ip_bound).to_json())
    else:
        s = sigma_pattern(load_pattern(args.pattern))
        _emit(args, s.to_json() if args.audit else s.poset.to_json())
    return 0


def cmd_sigma_verify(args) -> int:
    s = sigma_pattern(load_pattern(args.pattern))
    return _emit_report(args, verify_sigma_properties(s))


def cmd_witness_op(args) -> int:
    system, _ = op_sigma_sets(args.n)
    _emit(args, system.to_json())
    return 0


def cmd_witness_ip(args) -> int:
    system, _ = ip_sigma_sets(args.n, bound=args.ip_sets_bound)
    _emit(args, system.to_json())
    return 0


def cmd_witness_pattern(args) -> int:
    system, _ = pattern_sigma_sets(load_pattern(args.file), padding=not args.no_padding)
    _emit(args, system.to_json())
    return 0


def cmd_witness_check(args) -> int:
    system = load_system(args.system)
    sigma = load_poset(args.sigma)
    report = Report()
    extra = {}
    if system.intended is not None and all(x in system.intended for x in sigma.elements):
        report.extend(verify_intended_map(system, sigma), prefix="intended.")
    target, _ = inclusion_poset(system)
    e = find_embedding(sigma, target)
    report.add("search", [] if e is not None else ["no order embedding into the inclusion poset"])
    if e is not None:
        extra["embedding"] = e.to_json()["map"]
    return _emit_report(args, report, extra)


def cmd_witness_roundtrip(args) -> int:
    p = load_pattern(args.pattern)
    report = roundtrip(p, padding=not args.no_padding, search=not args.no_search)
    return _emit_report(args, report)


def cmd_witness_sup(args) -> int:
    system = load_system(args.system)
    return _emit_report(args, has_sup(system, args.k, bound=args.enum_bound))


def cmd_embed(args) -> int:
    sub, sup = load_poset(args.sub), load_poset(args.sup)
    e = find_embedding(sub, sup)
    report = Report()
    report.add("embedding", [] if e is not None else [f"{args.sub} does not embed into {args.sup}"])
    return _emit_report(args, report, {"map": e.to_json()["map"]} if e else None)


def cmd_enumerate(args) -> int:
    posets = enumerate_posets(args.n, bound=args.enum_bound)
    _emit(args, [p.to_json() for p in posets])
    return 0


def cmd_export_dot(args) -> int:
    _emit(args, export_dot(load_poset(args.file)))
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    common.add_argument("--human", action="store_true", help="tabular text instead of JSON reports")
    common.add_argument(
        "--enum-bound", type=int,
        default=_env_bound(config.ENV_ENUM_BOUND, config.ENUM_BOUND),
        help="largest poset size for enumeration (default from $" + config.ENV_ENUM_BOUND + ")",
    )
    common.add_argument(
        "--ip-bound", type=int,
        default=_env_bound(config.ENV_SIGMA_IP_BOUND, config.SIGMA_IP_BOUND),
        help="largest n for the independence poset (default from $" + config.ENV_SIGMA_IP_BOUND + ")",
    )
    common.add_argument(
        "--ip-sets-bound", type=int,
        default=_env_bound(config.ENV_IP_SETS_BOUND, config.IP_SETS_BOUND),
        help="largest n for the independence set system (default from $" + config.ENV_IP_SETS_BOUND + ")",
    )

    parser = argparse.ArgumentParser(prog="sigmasop", description=__doc__.splitlines()[0])
    verbs = parser.add_subparsers(dest="verb", required=True)

    pattern = verbs.add_parser("pattern", help="consistency patterns").add_subparsers(dest="action", required=True)
    gen = pattern.add_parser("gen", parents=[common])
    gen.add_argument("--kind", required=True, choices=sorted(GENERATORS))
    gen.add_argument("--depth", type=int)
    gen.add_argument("--rows", type=int)
    gen.add_argument("--cols", type=int)
    gen.add_argument("--n", type=int)
    gen.add_argument("--branching", type=int)
    gen.set_defaults(func=cmd_pattern_gen)
    check = pattern.add_parser("check", parents=[common])
    check.add_argument("file")
    check.add_argument("--axiom", choices=["c", "m", "weak", "coverage"])
    check.set_defaults(func=cmd_pattern_check)

    sigma = verbs.add_parser("sigma", help="target posets").add_subparsers(dest="action", required=True)
    build = sigma.add_parser("build", parents=[common])
    which = build.add_mutually_exclusive_group(required=True)
    which.add_argument("--op", type=int, metavar="N")
    which.add_argument("--ip", type=int, metavar="N")
    which.add_argument("--pattern", metavar="FILE")
    build.add_argument("--audit", action="store_true", help="include the r0/r1/r2 closure stages")
    build.set_defaults(func=cmd_sigma_build)
    verify = sigma.add_parser("verify", parents=[common])
    verify.add_argument("--pattern", required=True, metavar="FILE")
    verify.set_defaults(func=cmd_sigma_verify)

    witness = verbs.add_parser("witness", help="set-system witnesses").add_subparsers(dest="action", required=True)
    w_op = witness.add_parser("op", parents=[common])
    w_op.add_argument("--n", type=int, required=True)
    w_op.set_defaults(func=cmd_witness_op)
    w_ip = witness.add_parser("ip", parents=[common])
    w_ip.add_argument("--n", type=int, required=True)
    w_ip.set_defaults(func=cmd_witness_ip)
    w_pat = witness.add_parser("pattern", parents=[common])
    w_pat.add_argument("file")
    w_pat.add_argument("--no-padding", action="store_true")
    w_pat.set_defaults(func=cmd_witness_pattern)
    w_check = witness.add_parser("check", parents=[common])
    w_check.add_argument("--system", required=True)
    w_check.add_argument("--sigma", required=True)
    w_check.set_defaults(func=cmd_witness_check)
    w_rt = witness.add_parser("roundtrip", parents=[common])
    w_rt.add_argument("--pattern", required=True)
    w_rt.add_argument("--no-padding", action="store_true")
    w_rt.add_argument("--no-search", action="store_true")
    w_rt.set_defaults(func=cmd_witness_roundtrip)
    w_sup = witness.add_parser("sup", parents=[common])
    w_sup.add_argument("--system", required=True)
    w_sup.add_argument("--k", type=int, required=True)
    w_sup.set_defaults(func=cmd_witness_sup)

    embed = verbs.add_parser("embed", parents=[common], help="search for an order embedding")
    embed.add_argument("sub")
    embed.add_argument("sup")
    embed.set_defaults(func=cmd_embed)

    enum = verbs.add_parser("enumerate", parents=[common], help="posets up to isomorphism")
    enum.add_argument("--n", type=int, required=True)
    enum.set_defaults(func=cmd_enumerate)

    export = verbs.add_parser("export", help="export formats").add_subparsers(dest="action", required=True)
    dot = export.add_parser("dot", parents=[common])
    dot.add_argument("file")
    dot.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    try:
        parser = build_parser()
    except SigmaSopError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (SigmaSopError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
