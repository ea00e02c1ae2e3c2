"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check found a violating
witness, 2 on invalid input.  JSON goes to stdout unless ``--out`` is given;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from .codes import CodeSpec, corollary_params, encode, make_spec, radius_bound
from .errors import FoldCodesError
from .verify import (
    EXHAUSTIVE,
    SAMPLED,
    check_distinctness_lemma,
    check_hasse_identities,
    check_wronskian_criterion,
    search_worst,
    sweep_loss_bound,
    sweep_root_count,
    verify_list_decodability,
    wronskian_mode,
)

THEOREMS = ("main", "root-count", "loss", "distinct", "hasse", "wronskian")
_RATIONAL = re.compile(r"^\s*-?\d+\s*(/\s*\d+\s*)?$")


class UsageError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    if not _RATIONAL.match(text):
        raise UsageError(f"expected an exact rational like 1/2, got {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise UsageError(f"zero denominator in {text!r}") from None


def _emit(payload: str, out: str | None):
    if out:
        Path(out).write_text(payload + "\n")
    else:
        sys.stdout.write(payload + "\n")


def _load_spec(path: str) -> CodeSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read spec {path}: {exc.strerror}") from None
    return CodeSpec.from_json(text).checked()


def _seed(args) -> int:
    if args.seed is None:
        print("notice: no --seed given, using 0", file=sys.stderr)
        return 0
    return args.seed


def cmd_gen(args) -> int:
    spec = make_spec(args.family, args.p, args.s, args.n, args.k, args.gamma)
    _emit(spec.to_json(), args.out)
    return 0


def cmd_encode(args) -> int:
    spec = _load_spec(args.spec)
    try:
        msg = [int(x) for x in args.msg.split(",")] if args.msg else []
    except ValueError:
        raise UsageError(f"--msg must be comma-separated integers, got {args.msg!r}") from None
    word = encode(spec, msg)
    _emit(json.dumps({"message": msg, "codeword": [list(b) for b in word]}), args.out)
    return 0


def _run_verify(args, spec: CodeSpec):
    th = args.theorem
    if th == "main":
        if args.L is None:
            raise UsageError("--L is required for the main theorem")
        rho = radius_bound(args.L, spec.s, spec.rate) if args.rho == "auto" else parse_rational(args.rho)
        seed = _seed(args) if args.mode == SAMPLED else 0
        return verify_list_decodability(
            spec, args.L, rho, args.mode, args.count or 10_000, seed, args.workers
        )
    if th == "root-count":
        return sweep_root_count(spec, args.count or 200, args.L or 3, _seed(args))
    if th == "loss":
        return sweep_loss_bound(spec, args.count or 200, args.L or 3, _seed(args))
    if th == "distinct":
        m = args.m if args.m is not None else (args.L or 1) + 1
        seed = _seed(args) if args.mode == SAMPLED else 0
        return check_distinctness_lemma(spec, m, args.mode, args.count or 10_000, seed, args.workers)
    if th == "hasse":
        return check_hasse_identities(spec.field, args.count or 500, _seed(args))
    if th == "wronskian":
        return check_wronskian_criterion(spec.field, args.count or 1000, _seed(args), wronskian_mode(spec))
    raise UsageError(f"unknown theorem {th!r}")


def cmd_verify(args) -> int:
    spec = _load_spec(args.spec)
    report = _run_verify(args, spec)
    _emit(report.to_json(stable=args.stable), args.out)
    if report.skipped:
        print(f"note: {report.skipped} instance(s) skipped (precondition not met)", file=sys.stderr)
    return 0 if report.passed else 1


def cmd_search(args) -> int:
    spec = _load_spec(args.spec)
    seed = _seed(args) if args.mode == SAMPLED else 0
    report = search_worst(spec, args.L, args.mode, args.count or 10_000, seed, args.workers)
    _emit(report.to_json(stable=args.stable), args.out)
    return 0


def cmd_params(args) -> int:
    eps, R = parse_rational(args.eps), parse_rational(args.R)
    params = corollary_params(eps, R)
    print(f"eps={eps} R={R}: L={params.L} s_min={params.s_min}", file=sys.stderr)
    for st in params.settings:
        extra = ""
        if st.stated_s is not None:
            extra = f"  stated s={st.stated_s} {'ok' if st.stated_s_ok else 'FAILS'}"
        print(
            f"  ({st.name}) L={st.L} s_min={st.s_min} {'feasible' if st.feasible else 'infeasible'}{extra}",
            file=sys.stderr,
        )
    _emit(json.dumps(params.to_dict()), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="foldcodes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit a canonical code spec")
    gen.add_argument("--family", choices=("frs", "mult"), required=True)
    gen.add_argument("--p", type=int, required=True)
    gen.add_argument("--s", type=int, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--k", type=int, default=1)
    gen.add_argument("--gamma", type=int, default=None)
    gen.add_argument("--out")
    gen.set_defaults(func=cmd_gen)

    enc = sub.add_parser("encode", help="encode one message")
    enc.add_argument("--spec", required=True)
    enc.add_argument("--msg", required=True, help="coefficients a_0,a_1,...")
    enc.add_argument("--out")
    enc.set_defaults(func=cmd_encode)

    def common(p):
        p.add_argument("--spec", required=True)
        p.add_argument("--L", type=int)
        p.add_argument("--mode", choices=(EXHAUSTIVE, SAMPLED), default=EXHAUSTIVE)
        p.add_argument("--count", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--out")
        p.add_argument("--stable", action="store_true", help="zero out elapsed_ms")

    ver = sub.add_parser("verify", help="run a theorem check")
    common(ver)
    ver.add_argument("--theorem", choices=THEOREMS, default="main")
    ver.add_argument("--rho", default="auto", help="num/den or 'auto' for the radius bound")
    ver.add_argument("--m", type=int, help="tuple size for the distinctness lemma")
    ver.set_defaults(func=cmd_verify)

    srch = sub.add_parser("search", help="report the worst (L+1)-subset")
    common(srch)
    srch.set_defaults(func=cmd_search)

    par = sub.add_parser("params", help="capacity parameters for (eps, R)")
    par.add_argument("--eps", required=True)
    par.add_argument("--R", required=True)
    par.add_argument("--out")
    par.set_defaults(func=cmd_params)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "search" and args.L is None:
        parser.error("--L is required for search")
    if getattr(args, "workers", 1) < 1:
        parser.error("--workers must be at least 1")
    try:
        return args.func(args)
    except (UsageError, FoldCodesError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
