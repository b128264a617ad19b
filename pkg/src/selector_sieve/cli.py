"""Command-line interface.

Usage:
    selector-sieve spectrum 1:17                 # multiplicity table over k
    selector-sieve spectrum --m-range 901:1000   # same, addressed by odd m
    selector-sieve s6 1:30                       # K-/K+ table with TWIN flags
    selector-sieve primes 1000 --method s4
    selector-sieve twins 200
    selector-sieve order 45 | order --generate 3 45
    selector-sieve fermat 5 --format json
    selector-sieve coords 63
    selector-sieve stats 999999999500 1000000000000
    selector-sieve bench 100000

Every command writes csv (default), tsv or json to stdout or ``--out FILE``.
Exit codes: 0 success, 1 invariant violation, 2 usage error, 3 capacity.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Iterable, Sequence

from . import __version__, analysis, oracle, sieve_engine
from .errors import CapacityError, InvariantViolation, SelectorOverflowError, UnsupportedExponent
from .selector_core import ScanMode

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


class UsageError(ValueError):
    pass


def parse_int(text: str) -> int:
    """Integer from ``123``, ``1_000``, ``10**6`` or ``1e6``."""
    s = text.strip().replace("_", "")
    try:
        if "**" in s:
            base, exp = s.split("**", 1)
            return int(base) ** int(exp)
        if "e" in s.lower():
            mant, exp = s.lower().split("e", 1)
            if "." in mant:
                whole, frac = mant.split(".", 1)
                digits = int(whole + frac)
                shift = int(exp) - len(frac)
            else:
                digits, shift = int(mant), int(exp)
            if shift < 0:
                raise ValueError
            return digits * 10**shift
        return int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def parse_range(text: str) -> tuple[int, int]:
    if ":" not in text:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    lo, hi = text.split(":", 1)
    return parse_int(lo), parse_int(hi)


def render(rows: Sequence[dict[str, Any]], headers: Sequence[str], fmt: str,
           meta: dict[str, Any]) -> str:
    if fmt == "json":
        doc = {"meta": meta, "rows": [{h: row.get(h) for h in headers} for row in rows]}
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter="," if fmt == "csv" else "\t", lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow(["" if row.get(h) is None else row[h] for h in headers])
    return buf.getvalue()


# -- commands: each returns (headers, rows, exit code) -------------------------

def cmd_spectrum(args) -> tuple[list[str], list[dict], int]:
    if args.m_range is not None:
        m_lo, m_hi = args.m_range
        if m_lo < 1 or m_hi < m_lo:
            raise UsageError(f"invalid m range {m_lo}:{m_hi}")
        lo, hi = m_lo // 2, (m_hi - 1) // 2
        if lo > hi:
            raise UsageError(f"no odd numbers in {m_lo}:{m_hi}")
    elif args.range is not None:
        lo, hi = args.range
    else:
        raise UsageError("spectrum needs a k range LO:HI or --m-range")
    if lo < 0 or hi < lo:
        raise UsageError(f"invalid k range {lo}:{hi}")
    rows = []
    if lo == 0:
        rows.append({"k": 0, "K": 0, "m": 1, "class": "UNIT"})
        lo = 1
    if lo <= hi:
        spec = sieve_engine.build_s2_spectrum(lo, hi, ScanMode(args.mode), workers=args.workers)
        for k, count in zip(range(lo, hi + 1), spec.counts.tolist()):
            rows.append({"k": k, "K": count, "m": 2 * k + 1, "class": "PRIME" if count == 0 else ""})
    return ["k", "K", "m", "class"], rows, EXIT_OK


S6_HEADERS = ["n", "K_minus", "6n-1", "K_plus", "6n+1", "K_sum", "twin"]


def cmd_s6(args):
    lo, hi = args.range
    if lo < 1 or hi < lo:
        raise UsageError(f"invalid n range {lo}:{hi}")
    spec = sieve_engine.build_s6_spectrum(lo, hi, workers=args.workers)
    rows = []
    for n, km, lower, kp, upper in spec.rows():
        if args.only == "plus" and kp:
            continue
        if args.only == "minus" and km:
            continue
        if args.only == "twin" and km + kp:
            continue
        rows.append({"n": n, "K_minus": km, "6n-1": lower, "K_plus": kp, "6n+1": upper,
                     "K_sum": km + kp, "twin": "TWIN" if km + kp == 0 else ""})
    return S6_HEADERS, rows, EXIT_OK


PRIME_METHODS = {
    "s2": sieve_engine.primes_via_s2,
    "s6": sieve_engine.primes_via_s6,
    "s4": sieve_engine.primes_via_s4,
}


def cmd_primes(args):
    if args.limit < 2:
        raise UsageError("limit must be >= 2")
    if args.method == "oracle":
        primes = oracle.primes_upto(args.limit)
    else:
        primes = PRIME_METHODS[args.method](args.limit, workers=args.workers)
    return ["index", "p"], [{"index": i, "p": p} for i, p in enumerate(primes, 1)], EXIT_OK


def cmd_twins(args):
    if args.limit < 7:
        raise UsageError("limit must be >= 7")
    n_hi = (args.limit - 1) // 6
    spec = sieve_engine.build_s6_spectrum(1, n_hi, workers=args.workers)
    rows = [{"n": n, "lower": 6 * n - 1, "upper": 6 * n + 1} for n in spec.twin_orders()]
    return ["n", "lower", "upper"], rows, EXIT_OK


def cmd_order(args):
    if args.generate is not None:
        n, limit = args.generate
        hits = analysis.generate_mN_hits(n, limit)
        return ["m", "N"], [{"m": m, "N": n} for m in hits], EXIT_OK
    if args.m is None:
        raise UsageError("order needs M or --generate N LIMIT")
    oc = analysis.order_of(args.m)
    row = {"m": oc.m, "order": oc.order, "factors": "*".join(map(str, oc.factors))}
    return ["m", "order", "factors"], [row], EXIT_OK


FERMAT_HEADERS = ["q", "r", "target_k", "F", "verdict", "a", "b", "factor_1", "factor_2",
                  "search_effort"]


def cmd_fermat(args):
    rep = analysis.fermat_check(args.q)
    a, b = rep.witness or (None, None)
    f1, f2 = rep.factors or (None, None)
    row = {"q": rep.q, "r": rep.r, "target_k": rep.target_k, "F": rep.fermat_number,
           "verdict": rep.verdict, "a": a, "b": b, "factor_1": f1, "factor_2": f2,
           "search_effort": rep.search_effort}
    code = EXIT_OK
    if rep.prime != oracle.is_prime(rep.fermat_number):
        code = EXIT_INVARIANT
    return FERMAT_HEADERS, [row], code


def cmd_coords(args):
    if args.n < 1:
        raise UsageError("n must be >= 1")
    coords = analysis.prime_coords(args.n)
    try:
        indices = sorted(coords.by_index())
    except CapacityError:
        # prime index of a very large prime is not computable within budget
        indices = [None] * len(coords.terms)
    rows = [{"prime": p, "index": i, "exponent": e}
            for (p, e), i in zip(coords.terms, indices)]
    return ["prime", "index", "exponent"], rows, EXIT_OK


STATS_HEADERS = ["lo", "hi", "prime_count", "min_gap", "min_gap_lo", "min_gap_hi",
                 "max_gap", "max_gap_lo", "max_gap_hi", "twin_pairs"]


def cmd_stats(args):
    st = analysis.density_stats(args.lo, args.hi)
    mn = st.min_gap_pair or (None, None)
    mx = st.max_gap_pair or (None, None)
    row = {"lo": st.lo, "hi": st.hi, "prime_count": st.prime_count,
           "min_gap": st.min_gap, "min_gap_lo": mn[0], "min_gap_hi": mn[1],
           "max_gap": st.max_gap, "max_gap_lo": mx[0], "max_gap_hi": mx[1],
           "twin_pairs": len(st.twin_pairs)}
    return STATS_HEADERS, [row], EXIT_OK


def cmd_bench(args):
    rep = sieve_engine.bench_selector_sieves(args.limit, workers=args.workers)
    rows = [{"method": e.method, "count": e.count, "seconds": round(e.seconds, 6),
             "hits": e.hits, "identical": str(rep.identical).lower()} for e in rep.entries]
    return ["method", "count", "seconds", "hits", "identical"], rows, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json", "tsv"), default="csv")
    common.add_argument("--out", metavar="FILE", help="write here instead of stdout")
    common.add_argument("--workers", type=int, default=1,
                        help="threads for spectrum construction (output is identical)")

    parser = argparse.ArgumentParser(prog="selector-sieve",
                                     description="Prime selector polynomials and their spectra.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="S2 multiplicity K over a k range")
    p.add_argument("range", nargs="?", type=parse_range, help="k range LO:HI (k=0 gives the UNIT row)")
    p.add_argument("--m-range", type=parse_range, help="odd-number range LO:HI instead of k")
    p.add_argument("--mode", choices=("restricted", "full"), default="restricted")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("s6", parents=[common], help="K- / K+ table over an n range")
    p.add_argument("range", type=parse_range)
    p.add_argument("--only", choices=("plus", "minus", "twin"),
                   help="keep only n where that side (or both) is jumped over")
    p.set_defaults(func=cmd_s6)

    p = sub.add_parser("primes", parents=[common], help="primes up to LIMIT")
    p.add_argument("limit", type=parse_int)
    p.add_argument("--method", choices=("s2", "s6", "s4", "oracle"), default="s2")
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("twins", parents=[common], help="twin pairs 6n-1, 6n+1 up to LIMIT")
    p.add_argument("limit", type=parse_int)
    p.set_defaults(func=cmd_twins)

    p = sub.add_parser("order", parents=[common], help="generalized prime order of odd M")
    p.add_argument("m", nargs="?", type=parse_int)
    p.add_argument("--generate", nargs=2, type=parse_int, metavar=("N", "LIMIT"),
                   help="list odd m <= LIMIT hit by the N-factor generator")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("fermat", parents=[common], help="selector search on F(q)")
    p.add_argument("q", type=parse_int)
    p.set_defaults(func=cmd_fermat)

    p = sub.add_parser("coords", parents=[common], help="prime-exponent coordinates of N")
    p.add_argument("n", type=parse_int)
    p.set_defaults(func=cmd_coords)

    p = sub.add_parser("stats", parents=[common], help="prime count, gaps and twins in [LO, HI]")
    p.add_argument("lo", type=parse_int)
    p.add_argument("hi", type=parse_int)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", parents=[common], help="selector sieves vs Eratosthenes")
    p.add_argument("limit", type=parse_int)
    p.set_defaults(func=cmd_bench)
    return parser


def _parameters(args) -> dict[str, Any]:
    skip = {"func", "command", "out", "format"}
    out = {}
    for key, value in vars(args).items():
        if key in skip:
            continue
        out[key] = list(value) if isinstance(value, tuple) else value
    return out


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(None if argv is None else list(argv))
    try:
        headers, rows, code = args.func(args)
    except (UsageError, ValueError, SelectorOverflowError, UnsupportedExponent) as exc:
        print(f"selector-sieve {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"selector-sieve {args.command}: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InvariantViolation as exc:
        print(f"selector-sieve {args.command}: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    meta = {"command": args.command, "version": __version__, "parameters": _parameters(args)}
    text = render(rows, headers, args.format, meta)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
