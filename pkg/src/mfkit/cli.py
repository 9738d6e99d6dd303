"""Command-line front-end.

Exit codes: 0 success, 1 parse error or malformed input, 2 verification
failure, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

from .errors import EmptyInput, MFError, NotAFactorization, ParseError, ShapeInfeasible
from .expr import MonomialTerm, classify, expand, parse
from .factorization import (
    MatrixFactorization,
    check_pair,
    parse_json_pair,
    standard_factorize,
    standard_from_monomials,
    suspect_entry,
)
from .reducer import STANDARD_BUILD_LIMIT, Shape, compare_methods, generate_instance, improved_factorize
from .tensor import mult_by_form, yoshino_variant

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3
TEXT_SIZE_LIMIT = 64


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _err(msg: str) -> None:
    print(f"mfkit: {msg}", file=sys.stderr)


def _ratio(r):
    if isinstance(r, Fraction):
        return r.numerator if r.denominator == 1 else f"{r.numerator}/{r.denominator}"
    return r


def _parse_expr(text: str):
    try:
        return parse(text)
    except (ParseError, EmptyInput) as exc:
        raise CliError(str(exc), EXIT_INPUT) from None


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc.strerror or exc}", EXIT_IO) from None


def _mf_json(x: MatrixFactorization) -> str:
    return json.dumps(x.to_json(), indent=1) + "\n"


def _mf_text(x: MatrixFactorization) -> str:
    return f"f = {x.f}\nsize = {x.n}\nphi:\n{x.phi.render()}\npsi:\n{x.psi.render()}\n"


def _write_mf(x: MatrixFactorization, args) -> None:
    fmt = args.format
    if fmt == "text" and x.n > TEXT_SIZE_LIMIT and not args.force_text:
        _err(f"size {x.n} exceeds {TEXT_SIZE_LIMIT}; writing JSON (use --force-text for text)")
        fmt = "json"
    _emit(_mf_json(x) if fmt == "json" else _mf_text(x), args.out)


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}", EXIT_IO) from None
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: invalid JSON: {exc}", EXIT_INPUT) from None
    try:
        return parse_json_pair(data)
    except (ValueError, MFError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_INPUT) from None


def _load_mf(path: str) -> MatrixFactorization:
    phi, psi, f = _load(path)
    try:
        return MatrixFactorization(phi, psi, f)
    except NotAFactorization as exc:
        raise CliError(f"{path}: {exc.report}", EXIT_VERIFY) from None


# ---------------------------------------------------------------------------
# commands


def cmd_factor(args) -> int:
    sf = _parse_expr(args.expr)
    if expand(sf).is_zero():
        raise CliError("expression expands to zero", EXIT_INPUT)
    if args.method == "standard":
        if all(isinstance(t, MonomialTerm) for t in sf.terms):
            x = standard_from_monomials([t.m for t in sf.terms])
        else:
            x = standard_factorize(expand(sf))
        note = f"standard method, size {x.n}"
    else:
        res = improved_factorize(
            sf, yoshino=args.yoshino_variant, mult_form=_mult_name(args.mult_variant), auto_expand=args.auto_expand
        )
        x, pred = res.mf, res.prediction
        note = (
            f"improved method, size {x.n} (standard would give {pred.standard_size}, "
            f"ratio {_ratio(pred.ratio)})"
        )
        cls = classify(sf)
        note += f"; form: {cls.kind.value}"
        for lint in cls.lints:
            _err(f"warning: {lint}")
    report = x.verify()
    if not report:
        _err(str(report))
        return EXIT_VERIFY
    _write_mf(x, args)
    _err(f"{note}; verified")
    return EXIT_OK


def _mult_name(v: int) -> str:
    return "tilde_prime" if v == 1 else "tilde"


def cmd_verify(args) -> int:
    phi, psi, f = _load(args.path)
    report = check_pair(phi, psi, f)
    if report:
        print(str(report))
        return EXIT_OK
    print(str(report))
    if report.position is not None:
        guess = suspect_entry(phi, psi, f)
        if guess is not None:
            which, r, c = guess
            print(f"suspect entry: {which}[{r}][{c}]")
    return EXIT_VERIFY


def cmd_tensor(args) -> int:
    x, y = _load_mf(args.lhs), _load_mf(args.rhs)
    if args.op == "add":
        out = yoshino_variant(x, y, args.yoshino_variant)
    else:
        out = mult_by_form(_mult_name(args.mult_variant))(x, y)
    _write_mf(out, args)
    _err(f"{args.op} product, size {out.n}; verified")
    return EXIT_OK


def _compare_row(sf, build_limit: int, options: dict) -> dict:
    rep = compare_methods(sf, build_limit=build_limit, **options)
    rep["ratio"] = _ratio(rep["ratio"])
    return rep


def cmd_compare(args) -> int:
    sf = _parse_expr(args.expr)
    options = dict(yoshino=args.yoshino_variant, mult_form=_mult_name(args.mult_variant), auto_expand=args.auto_expand)
    try:
        rep = _compare_row(sf, args.build_limit, options)
    except EmptyInput as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    if args.format == "json":
        print(json.dumps(rep))
    else:
        for k, v in rep.items():
            print(f"{k}: {'n/a' if v is None else v}")
    ok = rep["verified_improved"] and rep["verified_standard"] is not False
    return EXIT_OK if ok else EXIT_VERIFY


BENCH_FIELDS = ("seed", "s", "l", "m", "p", "standard_size", "improved_size", "ratio", "verified")


def _bench_one(job) -> dict:
    seed, shape, build_limit = job
    sf = generate_instance(seed, shape)
    rep = compare_methods(sf, build_limit=build_limit)
    verified = rep["verified_improved"] and rep["verified_standard"] is not False
    return {
        "seed": seed,
        "s": shape.s,
        "l": shape.l,
        "m": ";".join(str(x) for x in shape.m),
        "p": Shape.format_counts(shape.p),
        "standard_size": rep["standard_size"],
        "improved_size": rep["improved_size"],
        "ratio": _ratio(rep["ratio"]),
        "verified": verified,
    }


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("MFKIT_THREADS", "1")))
    except ValueError:
        return 1


def cmd_bench(args) -> int:
    p = Shape.parse_p(args.p) if args.p else ()
    m = tuple(len(pj) for pj in p)
    if args.m:
        given = tuple(int(x) for x in args.m.replace(";", ",").split(",") if x.strip())
        if given != m:
            raise CliError(f"--m {args.m} does not match the factor counts in --p {args.p}", EXIT_INPUT)
    shape = Shape(args.s, m, p, args.vars, args.max_deg)
    try:
        shape.validate()
    except ShapeInfeasible as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    jobs = [(args.seed + i, shape, args.build_limit) for i in range(args.count)]
    workers = _threads()
    try:
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                rows = list(pool.map(_bench_one, jobs))
        else:
            rows = [_bench_one(j) for j in jobs]
    except ShapeInfeasible as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    if args.format == "json":
        text = json.dumps(rows, indent=1) + "\n"
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=BENCH_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({**r, "verified": str(r["verified"]).lower()})
        text = buf.getvalue()
    _emit(text, args.out)
    return EXIT_OK if all(r["verified"] for r in rows) else EXIT_VERIFY


# ---------------------------------------------------------------------------
# argument parsing


def _variant_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--yoshino-variant", type=int, choices=range(4), default=0,
                   help="additive product: 0 original, 1-3 variants (default 0)")
    p.add_argument("--mult-variant", type=int, choices=(0, 1), default=0,
                   help="multiplicative product: 0 diagonal, 1 anti-diagonal (default 0)")


def _output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="write the factorization to this file instead of stdout")
    p.add_argument("--force-text", action="store_true",
                   help=f"render text even for sizes above {TEXT_SIZE_LIMIT}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mfkit", description="Exact matrix factorizations of polynomials.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", help="factor a polynomial")
    p.add_argument("expr")
    p.add_argument("--method", choices=("standard", "improved"), default="improved")
    p.add_argument("--auto-expand", action="store_true",
                   help="expand product terms that would not gain from the improved method")
    _variant_flags(p)
    _output_flags(p)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("verify", help="verify a factorization JSON file")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tensor", help="combine two factorization files")
    p.add_argument("op", choices=("add", "mul"))
    p.add_argument("lhs")
    p.add_argument("rhs")
    _variant_flags(p)
    _output_flags(p)
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("compare", help="compare standard and improved sizes")
    p.add_argument("expr")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--build-limit", type=int, default=STANDARD_BUILD_LIMIT,
                   help="build the standard factorization only up to this many monomials")
    p.add_argument("--auto-expand", action="store_true")
    _variant_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bench", help="random instances of a given shape")
    p.add_argument("--s", type=int, default=1, help="number of monomial terms")
    p.add_argument("--p", default="3,2", help='monomial counts per factor, products separated by ";" (e.g. "3,2;2,2")')
    p.add_argument("--m", help="factor counts per product (checked against --p)")
    p.add_argument("--vars", default="xyz")
    p.add_argument("--max-deg", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--build-limit", type=int, default=0,
                   help="build standard factorizations up to this many monomials (default: formula only)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        _err(str(exc))
        return exc.code
    except (ParseError, EmptyInput, ShapeInfeasible) as exc:
        _err(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
