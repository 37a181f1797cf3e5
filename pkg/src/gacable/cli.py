"""Command line front end: ``gacable <command> ...``.

Polynomials and tables go to stdout and are deterministic.  Verification
reports go to stderr, or as JSON to ``--report-file``.  Exit status is 0 when
every check passes, 1 on a failed check and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from . import dim5, omega, roberts7, verify
from .exact_poly import PolyError, format_poly, to_json_obj

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(polys, labels, fmt: str, out):
    if fmt == "json":
        out.write(json.dumps([{"name": l, "poly": to_json_obj(p)} for l, p in zip(labels, polys)],
                             separators=(",", ":")) + "\n")
    else:
        for l, p in zip(labels, polys):
            out.write(f"{l} = {format_poly(p)}\n")


def _finish(report: verify.RunReport, args, out) -> int:
    out.write(report.to_text(timing=False) + "\n")
    if args.report_file:
        with open(args.report_file, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    else:
        sys.stderr.write(f"{report.command}: {'pass' if report.ok else 'FAIL'} in {report.seconds:.2f}s\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


# -- commands --------------------------------------------------------------------


def cmd_sigma(args, out) -> int:
    ctx = dim5.make()
    sig = ctx.sigmas(args.n)
    polys, labels = list(sig), [f"sigma_{i}" for i in range(args.n + 1)]
    if args.invariants:
        polys += [ctx.F, ctx.G, ctx.h]
        labels += ["F", "G", "h"]
    _emit(polys, labels, args.format, out)
    if not args.verify:
        return EXIT_OK
    t0 = time.perf_counter()
    rep = verify.RunReport(f"sigma --n {args.n} --verify")
    rep.extend(verify.sigma_suite(ctx, args.n))
    rep.seconds = time.perf_counter() - t0
    return _finish(rep, args, out)


def cmd_dims(args, out) -> int:
    ctx = dim5.make()
    rows = verify.dims_table(ctx, args.n_max)
    out.write("n\tcomputed\tpredicted\n")
    for n, got, want in rows:
        out.write(f"{n}\t{got}\t{want}\n")
    bad = [n for n, got, want in rows if got != want]
    if bad:
        sys.stderr.write(f"mismatch at n = {bad}\n")
        return EXIT_FAIL
    return EXIT_OK


def _basis_id(kind: str) -> omega.DeltaBasisId:
    return {"balanced": omega.BALANCED, "small": omega.SMALL}[kind]


def cmd_omega(args, out) -> int:
    om = omega.context(args.max_index)
    if args.omega_cmd == "basis":
        if args.n % 2:
            raise UsageError("--n must be even")
        p = om.vertex(_basis_id(args.kind), args.n, args.j)
        out.write(format_poly(p) + "\n")
    elif args.omega_cmd == "reduce":
        if args.n % 2:
            raise UsageError("--n must be even")
        prefix, corr = om.reduction(args.n, args.len, _basis_id(args.kind))
        for j, p in enumerate(prefix):
            out.write(f"psi_{args.n}^({j}) = {format_poly(p)}\n")
        for m, c in corr:
            out.write(f"# shift {m}: coefficient {c}\n")
    elif args.omega_cmd == "qdim":
        if args.q % 2:
            raise UsageError("--q must be even")
        out.write(f"{om.quotient_dim(args.q, (args.r, args.s), _basis_id(args.kind))}\n")
    elif args.omega_cmd == "vn":
        om = omega.context(args.max_index, with_t=True)
        for p in om.vn_basis(args.n):
            out.write(format_poly(p) + "\n")
    return EXIT_OK


def cmd_roberts(args, out) -> int:
    r = roberts7.make(2)
    if args.roberts_cmd == "p":
        for i in range(args.n + 1):
            out.write(f"P_{i} = {format_poly(r.p_element(i))}\n")
        return EXIT_OK
    if args.roberts_cmd == "orbit":
        ok = True
        for label, h in zip(("H", "alpha(H)", "alpha^2(H)"), r.orbit_H()):
            killed = r.D.apply(h).is_zero()
            ok &= killed
            out.write(f"{label} = {format_poly(h)}\t[D kills: {'yes' if killed else 'no'}]\n")
        return EXIT_OK if ok else EXIT_FAIL
    t0 = time.perf_counter()
    rep = verify.RunReport("roberts verify")
    rep.extend(verify.roberts_suite(args.n))
    rep.seconds = time.perf_counter() - t0
    return _finish(rep, args, out)


def cmd_verify_all(args, out) -> int:
    rep = verify.run_all(args.profile, args.max_index)
    return _finish(rep, args, out)


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gacable", description="Exact cable computations for locally nilpotent derivations.")
    p.add_argument("--max-index", type=_nonneg, default=omega.DEFAULT_MAX_INDEX,
                   help="largest variable index of the truncated ring Omega")
    p.add_argument("--report-file", help="write the JSON verification report here instead of a stderr summary")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sigma", help="emit sigma_0..sigma_N")
    s.add_argument("--n", type=_nonneg, required=True)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--verify", action="store_true", help="run the sigma cable checks")
    s.add_argument("--invariants", action="store_true", help="also emit F, G and h")
    s.set_defaults(func=cmd_sigma)

    d = sub.add_parser("dims", help="dim A_(2n+1,n) against floor(n/6)+1")
    d.add_argument("--n-max", type=_nonneg, required=True)
    d.set_defaults(func=cmd_dims)

    o = sub.add_parser("omega", help="Delta-bases, reductions, quotient dimensions")
    osub = o.add_subparsers(dest="omega_cmd", required=True)
    ob = osub.add_parser("basis")
    ob.add_argument("--kind", choices=("balanced", "small"), default="balanced")
    ob.add_argument("--n", type=_nonneg, required=True)
    ob.add_argument("--j", type=_nonneg, required=True)
    orr = osub.add_parser("reduce")
    orr.add_argument("--kind", choices=("balanced", "small"), default="balanced")
    orr.add_argument("--n", type=_nonneg, required=True)
    orr.add_argument("--len", type=int, required=True)
    oq = osub.add_parser("qdim")
    oq.add_argument("--kind", choices=("balanced", "small"), default="balanced")
    oq.add_argument("--q", type=_nonneg, required=True)
    oq.add_argument("--r", type=_nonneg, required=True)
    oq.add_argument("--s", type=_nonneg, required=True)
    ov = osub.add_parser("vn")
    ov.add_argument("--n", type=_nonneg, required=True)
    o.set_defaults(func=cmd_omega)

    r = sub.add_parser("roberts", help="the seven-variable example with m = 2")
    rsub = r.add_subparsers(dest="roberts_cmd", required=True)
    rp = rsub.add_parser("p")
    rp.add_argument("--n", type=_nonneg, required=True)
    rsub.add_parser("orbit")
    rv = rsub.add_parser("verify")
    rv.add_argument("--n", type=_nonneg, default=3, help="length of the checked P-cable prefix minus one")
    r.set_defaults(func=cmd_roberts)

    v = sub.add_parser("verify-all", help="run every verification suite")
    v.add_argument("--profile", choices=tuple(verify.PROFILES), default="quick")
    v.set_defaults(func=cmd_verify_all)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, PolyError) as exc:
        sys.stderr.write(f"gacable: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
