"""Command-line front end: coefficient tables, identity checks, audit dumps.

Exit codes: 0 success, 1 usage error, 2 a checked identity failed,
3 an adaptive summation hit its ceiling.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import character as ch
from . import monomials as mon
from .admissible import (
    ConfigurationError,
    DominantWeightSpec,
    char_bruteforce,
    difference_equation_sides,
)
from .character import ConvergenceError
from .monomials import InjectivityError, enumerate_good
from .weyl import r_chain, s_power, translation, translation_beta

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_NO_CONVERGENCE = 3

FORMAT_VERSION = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(EXIT_USAGE)


class UsageError(ValueError):
    pass


def _spec_from_args(args) -> DominantWeightSpec:
    if args.lam is None:
        raise UsageError("--lambda is required for this command")
    try:
        mult = tuple(int(x) for x in args.lam.split(","))
    except ValueError as exc:
        raise UsageError(f"bad --lambda value: {exc}") from exc
    try:
        return DominantWeightSpec(args.l, args.k, mult)
    except ConfigurationError as exc:
        raise UsageError(str(exc)) from exc


def _check_rank(args) -> None:
    if args.l < 2:
        raise UsageError("--l must be at least 2")
    if args.l > args.max_l:
        raise UsageError(f"--l above the configured maximum {args.max_l}")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _meta_of(result: ch.CharacterResult) -> dict:
    meta = {
        "l": result.spec.l,
        "k": result.spec.k,
        "lambda": list(result.spec.mult),
        "method": result.method,
        "depth": result.watermark,
    }
    for key, value in sorted(result.meta.items()):
        if value is not None:
            meta[key] = value
    return meta


def _render_table(meta: dict, columns: list[str], rows: list, fmt: str) -> str:
    if fmt == "json":
        doc = {
            "format_version": FORMAT_VERSION,
            "meta": meta,
            "columns": columns,
            "rows": [list(r) for r in rows],
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        for key, value in sorted(meta.items()):
            buf.write(f"# {key}={value}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
        return buf.getvalue()
    lines = [" ".join(f"{k}={v}" for k, v in sorted(meta.items()))]
    lines.append(" ".join(columns))
    for r in rows:
        lines.append(" ".join(str(x) for x in r))
    return "\n".join(lines) + "\n"


def _char_rows(result: ch.CharacterResult):
    l = result.spec.l
    columns = ["q_exp"] + [f"z{i}_exp" for i in range(1, l)] + ["coeff"]
    rows = [(a, *m, c) for a, m, c in result.table()]
    return columns, rows


def cmd_char(args) -> int:
    spec = _spec_from_args(args)
    n = args.depth
    method = args.method
    if method == "bruteforce":
        result = ch.CharacterResult(spec, method, char_bruteforce(spec, n), n)
    elif method == "bosonic":
        result = ch.bosonic(spec, n, args.max_degree)
    elif method == "weyl_kac":
        result = ch.weyl_kac(spec, n)
    elif method == "translated":
        result = ch.translated_char(spec, args.m, n)
    elif method == "semiinfinite":
        result = ch.semiinfinite_char(spec, n)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown method {method}")
    columns, rows = _char_rows(result)
    _emit(_render_table(_meta_of(result), columns, rows, args.format), args.out)
    return EXIT_OK


def _mismatch_dict(mismatch, l: int):
    if mismatch is None:
        return None
    v, lhs, rhs = mismatch
    from .series import expvec_to_qz

    a, m = expvec_to_qz(v)
    return {"q_exp": a, "z_exps": list(m), "lhs": str(lhs), "rhs": str(rhs)}


def _verify_report(args, name: str, params: dict, ok: bool, mismatch=None, detail=None) -> int:
    doc = {
        "format_version": FORMAT_VERSION,
        "check": name,
        "params": params,
        "pass": bool(ok),
        "first_mismatch": mismatch,
    }
    if detail:
        doc["detail"] = detail
    if args.format == "json":
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    else:
        lines = [f"check {name}: {'PASS' if ok else 'FAIL'}"]
        for key, value in sorted(params.items()):
            lines.append(f"  {key} = {value}")
        if mismatch is not None:
            lines.append(f"  first mismatch: {mismatch}")
        if detail:
            lines.append(f"  {detail}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify(args) -> int:
    which = args.which
    l = args.l
    n = args.depth
    if which == "srt":
        lhs = s_power(l, l * (l - 1))
        mid = r_chain(l, l * (l - 1))
        rhs = translation(-translation_beta(l))
        ok = lhs == mid == rhs
        return _verify_report(args, "srt", {"l": l}, ok)
    if which == "denominator":
        lhs, rhs = ch.denominator_identity_sides(l, n)
        mm = lhs.first_mismatch(rhs, n)
        return _verify_report(args, "denominator", {"l": l, "depth": n}, mm is None, _mismatch_dict(mm, l))
    if which == "ratio":
        max_degree = args.max_degree if args.max_degree is not None else 4
        for m in enumerate_good(l, max_degree):
            if not mon.ratio_check(m, n):
                return _verify_report(
                    args, "ratio", {"l": l, "depth": n, "max_degree": max_degree},
                    False, detail=f"failed at word {m.word!r}",
                )
        return _verify_report(args, "ratio", {"l": l, "depth": n, "max_degree": max_degree}, True)
    spec = _spec_from_args(args)
    params = {"l": l, "k": args.k, "lambda": list(spec.mult), "depth": n}
    if which == "diffeq":
        lhs, rhs = difference_equation_sides(spec, n)
        mm = lhs.first_mismatch(rhs, n)
        return _verify_report(args, "diffeq", params, mm is None, _mismatch_dict(mm, l))
    if which == "prop41":
        lhs = ch.bosonic(spec, n, args.max_degree).series
        rhs = char_bruteforce(spec, n)
        mm = lhs.first_mismatch(rhs, n)
        return _verify_report(args, "prop41", params, mm is None, _mismatch_dict(mm, l))
    if which == "prop42":
        lhs = ch.limit_char(spec, n).series
        rhs = ch.weyl_kac(spec, n).series
        mm = lhs.first_mismatch(rhs, n)
        return _verify_report(args, "prop42", params, mm is None, _mismatch_dict(mm, l))
    raise UsageError(f"unknown check {which}")  # pragma: no cover


def cmd_bijection(args) -> int:
    max_degree = args.max_degree if args.max_degree is not None else args.max_length
    max_offset = args.max_offset if args.max_offset is not None else args.max_length
    report = mon.bijection_audit(
        args.l, max_degree, max_offset, args.max_length, ceiling=args.ceiling
    )
    doc = report.to_json_dict()
    if args.format == "text":
        summary = (
            f"elements of length <= {report.max_length}: {report.total}, "
            f"hit: {report.hit}, injective: {report.injective}, "
            f"bounds used: degree {report.max_degree}, offset {report.max_offset}\n"
        )
        _emit(summary, args.out)
    else:
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    if not report.covering:
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def cmd_stabilize(args) -> int:
    spec = _spec_from_args(args)
    report = ch.stabilization_check(spec, args.depth, args.max_m)
    doc = {
        "format_version": FORMAT_VERSION,
        "l": spec.l,
        "k": spec.k,
        "lambda": list(spec.mult),
        "depth": args.depth,
        "m_star": report.m_star,
        "persists": report.persists,
    }
    if args.format == "json":
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    else:
        _emit(
            f"stabilizes at m_star={report.m_star} (persists at m_star+1: {report.persists})\n",
            args.out,
        )
    return EXIT_OK if report.persists else EXIT_MISMATCH


def cmd_specialize(args) -> int:
    spec = _spec_from_args(args)
    n = args.depth
    if args.method == "bruteforce":
        base = ch.CharacterResult(spec, "bruteforce", char_bruteforce(spec, n), n)
    elif args.method == "bosonic":
        base = ch.bosonic(spec, n, args.max_degree)
    elif args.method == "weyl_kac":
        base = ch.weyl_kac(spec, n)
    else:
        raise UsageError("specialize supports bruteforce, bosonic and weyl_kac")
    out = ch.specialize_fjlmm(base.series)
    meta = _meta_of(base)
    meta["specialized"] = True
    meta["specialized_depth"] = out.watermark
    rows = out.rows()
    _emit(_render_table(meta, ["qbar_exp", "z_exp", "coeff"], rows, args.format), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="klchar", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec_flags=True):
        p.add_argument("--l", type=int, required=True, help="rank parameter (>= 2)")
        p.add_argument("--max-l", type=int, default=5, help="configured rank ceiling")
        p.add_argument("--format", choices=["text", "csv", "json"], default="text")
        p.add_argument("--out", default=None, help="write output to a file")
        if spec_flags:
            p.add_argument("--k", type=int, default=0, help="level")
            p.add_argument("--lambda", dest="lam", default=None,
                           help="comma-separated multiplicities of the l fundamental weights")

    p_char = sub.add_parser("char", help="print a coefficient table")
    common(p_char)
    p_char.add_argument("--method", required=True,
                        choices=["bruteforce", "bosonic", "weyl_kac", "translated", "semiinfinite"])
    p_char.add_argument("--depth", type=int, required=True)
    p_char.add_argument("--m", type=int, default=0, help="translate count for --method translated")
    p_char.add_argument("--max-degree", type=int, default=None)
    p_char.set_defaults(func=cmd_char)

    p_verify = sub.add_parser("verify", help="run a named identity check")
    common(p_verify)
    p_verify.add_argument("--which", required=True,
                          choices=["prop41", "prop42", "diffeq", "denominator", "ratio", "srt"])
    p_verify.add_argument("--depth", type=int, default=6)
    p_verify.add_argument("--max-degree", type=int, default=None)
    p_verify.set_defaults(func=cmd_verify)

    p_bij = sub.add_parser("bijection", help="audit the word-to-group-element labelling")
    common(p_bij, spec_flags=False)
    p_bij.add_argument("--max-length", type=int, required=True)
    p_bij.add_argument("--max-degree", type=int, default=None)
    p_bij.add_argument("--max-offset", type=int, default=None)
    p_bij.add_argument("--ceiling", type=int, default=40)
    p_bij.set_defaults(func=cmd_bijection)

    p_stab = sub.add_parser("stabilize", help="find the least translate matching the alternating sum")
    common(p_stab)
    p_stab.add_argument("--depth", type=int, required=True)
    p_stab.add_argument("--max-m", type=int, default=10)
    p_stab.set_defaults(func=cmd_stabilize)

    p_spec = sub.add_parser("specialize", help="collapse a table to the two-variable form")
    common(p_spec)
    p_spec.add_argument("--method", default="bruteforce",
                        choices=["bruteforce", "bosonic", "weyl_kac"])
    p_spec.add_argument("--depth", type=int, required=True)
    p_spec.add_argument("--max-degree", type=int, default=None)
    p_spec.set_defaults(func=cmd_specialize)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check_rank(args)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ConfigurationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except InjectivityError as exc:
        sys.stderr.write(f"injectivity failure: {exc}\n")
        return EXIT_MISMATCH
    except ConvergenceError as exc:
        sys.stderr.write(f"no convergence: {exc}\n")
        return EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
