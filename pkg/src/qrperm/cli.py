"""Command line front end.

Exit codes: 0 when every check passes, 1 when at least one fails, 2 on
usage, input, or I/O errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from .core import PrimeCtx, smallest_primitive_root
from .perm import sigma_sign
from .sweep import (
    CLAIMS,
    SweepConfig,
    evaluate_prime,
    format_table,
    format_witness,
    run_sweep,
    serialize,
    summarize,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SWEEP_HELP = """\
Cost model: each prime costs O(n log n) per sign computation (n = (p-1)/2).
With --g-mode all, thm1.2, thm1.2-5mod8 and cross-oracle repeat that work for
each of the phi(p-1) primitive roots.  cor1.1 builds n x n matrices and runs an
O(n^3) LU only while n <= 100.  zolotarev costs O(p^2 log p) and
proof-identities O(p^2) per prime; keep --max modest (a few hundred) for those.
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("QRPERM_JOBS", "1")))
    except ValueError:
        return 1


def _parse_fault(text: str) -> tuple[str, int]:
    claim, _, p = text.rpartition(":")
    try:
        return claim, int(p)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected CLAIM:P, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="qrperm", description="Verify sign formulas for quadratic-residue permutations.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    rp = sub.add_parser("report", help="check every applicable claim for one prime")
    rp.add_argument("p", type=int)

    sp = sub.add_parser(
        "sweep",
        help="check claims over a range of primes",
        epilog=SWEEP_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sp.add_argument("--claims", required=True, help=f"comma separated subset of: {', '.join(CLAIMS)}; or 'all'")
    sp.add_argument("--min", dest="p_min", type=int, required=True)
    sp.add_argument("--max", dest="p_max", type=int, required=True)
    sp.add_argument("--g-mode", choices=("smallest", "all"), default="smallest")
    sp.add_argument("--jobs", type=int, default=_default_jobs(), help="worker processes (default $QRPERM_JOBS or 1)")
    sp.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="text")
    sp.add_argument("--out", help="write records to this file instead of stdout")
    sp.add_argument("--timing", action="store_true", help="fill elapsed_ms (output is then not reproducible)")
    sp.add_argument("--inject-fault", type=_parse_fault, default=None, help=argparse.SUPPRESS)
    return ap


def cmd_report(p: int) -> int:
    try:
        ctx = PrimeCtx(p)
    except ValueError:
        print(f"error: {p} is not an odd prime", file=sys.stderr)
        return EXIT_USAGE
    records = evaluate_prime(p, CLAIMS)
    g = smallest_primitive_root(ctx)
    snap = records[0]
    print(f"p = {p}   n = {ctx.n}   p mod 8 = {ctx.cls8}   smallest primitive root g = {g}")
    print(f"sgn(sigma_0,1) = {sigma_sign(ctx, 0, 1):+d}   sgn(sigma_0,2) = {sigma_sign(ctx, 0, 2, g):+d}")
    if p % 4 == 1:
        print(
            f"h(p) = {snap.h_real}   h(-4p) = {snap.h_imag}   u mod p = {snap.u_mod_p}   "
            f"v mod p = {snap.v_mod_p}   s_p = {snap.s_p}   r* = {snap.r_star}"
        )
    else:
        print(f"h(-p) = {snap.h_imag}   s_p = {snap.s_p}   r* = {snap.r_star}")
    print()
    print(format_table(records), end="")
    failed = [r for r in records if not r.passed]
    for r in failed:
        print(format_witness(r))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_sweep(args) -> int:
    claims = CLAIMS if args.claims.strip() == "all" else tuple(c.strip() for c in args.claims.split(",") if c.strip())
    try:
        cfg = SweepConfig(
            claims=claims,
            p_min=args.p_min,
            p_max=args.p_max,
            g_mode=args.g_mode,
            jobs=args.jobs,
            fmt=args.fmt,
            out=args.out,
            timing=args.timing,
            fault=args.inject_fault,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    records = run_sweep(cfg)
    failed = [r for r in records if not r.passed]
    body = serialize(records, cfg.fmt)

    # witnesses first so CI logs show counterexamples immediately
    for r in failed:
        print(format_witness(r), file=sys.stderr)
    if cfg.out:
        try:
            with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(body)
        except OSError as exc:
            print(f"error: cannot write {cfg.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(body)

    summary = summarize(records, cfg.claims)
    lines = [f"{c}: {s['passed']}/{s['records']} passed" for c, s in summary.items()]
    print("summary: " + "; ".join(lines) + f"; failures: {len(failed)}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "report":
        return cmd_report(args.p)
    return cmd_sweep(args)


if __name__ == "__main__":
    raise SystemExit(main())
