"""Command-line entry point: ``cube-cover <command> [flags]``.

Exit codes: 0 success or Pass, 1 verification Fail, 2 parse error,
3 enumeration cap exceeded, 4 search budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from cubecover.bounds import NoBound, combine_upper, deficit, improvement_threshold
from cubecover.catalog import (
    KINDS,
    MAXIMAL,
    WEIGHT1,
    enumerate_maximal,
    enumerate_weight1,
    get_catalog,
    save_catalog,
)
from cubecover.core import (
    CapExceeded,
    Hyperplane,
    InvalidInput,
    ParseError,
    classify_weight1,
    covered_masks,
    format_rational,
    parse_rational,
    plane_weight,
    stability_gap,
)
from cubecover.permutation_oracle import MAX_ORACLE_N, gbr_counts, weight_via_permutations
from cubecover.solver import (
    BUDGET_EXCEEDED,
    FEASIBLE,
    Budget,
    build_instance,
    compute_f,
    feasibility_at_size,
    format_cover,
    known_covers,
    load_cover,
    lower_certificate,
    verify_cover,
)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CAP, EXIT_BUDGET = 0, 1, 2, 3, 4

KNOWN_WEIGHT1_COUNTS = {1: 1, 2: 3, 3: 10, 4: 35, 5: 126, 6: 462}
KNOWN_MAXIMAL_COUNTS = {1: 1, 2: 3, 3: 11, 4: 95, 5: 2629}


class Reporter:
    def __init__(self, args):
        self.approx = getattr(args, "approx", False)
        self.as_json = getattr(args, "json", False)
        self.record: dict = {}

    def __call__(self, key: str, value) -> None:
        if isinstance(value, Fraction):
            self.record[key] = format_rational(value)
            text = format_rational(value)
            if self.approx and value.denominator != 1:
                text += f" (~{float(value):.6g})"
        else:
            self.record[key] = value
            text = str(value).lower() if isinstance(value, bool) else str(value)
        if not self.as_json:
            print(f"{key}={text}")

    def nested(self, key: str, values: dict) -> None:
        if self.as_json:
            self.record[key] = {k: format_rational(v) if isinstance(v, Fraction) else v
                                for k, v in values.items()}
            return
        for k, v in values.items():
            self(f"{key}.{k}", v if v is not None else "none")

    def done(self) -> None:
        if self.as_json:
            print(json.dumps(self.record, sort_keys=True))


def _plane(args) -> Hyperplane:
    parts = [p for p in args.coeffs.replace(",", " ").split() if p]
    h = Hyperplane(parse_rational(p) for p in parts)
    if h.n != args.n:
        raise ParseError(f"--n {args.n} but {h.n} coefficients given")
    return h


def cmd_weight(args, out: Reporter) -> int:
    h = _plane(args)
    verdict = classify_weight1(h)
    out("n", h.n)
    out("coeffs", str(h))
    out("weight", plane_weight(h))
    out("covered_points", len(covered_masks(h)))
    out("weight1", verdict.is_weight1)
    out("stability_gap", stability_gap(h))
    return EXIT_OK


def cmd_classify(args, out: Reporter) -> int:
    h = _plane(args)
    verdict = classify_weight1(h)
    out("weight1", verdict.is_weight1)
    out("failed", ",".join(sorted(verdict.failed_conditions)) or "none")
    return EXIT_OK


def cmd_oracle(args, out: Reporter) -> int:
    h = _plane(args)
    if h.n > MAX_ORACLE_N:
        raise CapExceeded(f"oracle is capped at n={MAX_ORACLE_N}")
    counts = gbr_counts(h)
    w_perm = weight_via_permutations(h)
    w_direct = plane_weight(h)
    out("counts", f"({counts.good},{counts.bad},{counts.redundant})")
    out("good", counts.good)
    out("bad", counts.bad)
    out("redundant", counts.redundant)
    out("weight_oracle", w_perm)
    out("weight_direct", w_direct)
    out("check", "MATCH" if w_perm == w_direct else "MISMATCH")
    return EXIT_OK if w_perm == w_direct else EXIT_FAIL


def cmd_enumerate(args, out: Reporter) -> int:
    if args.kind == WEIGHT1:
        cat = enumerate_weight1(args.n)
    else:
        cat = enumerate_maximal(args.n, allow_n6=args.allow_n6)
    if args.out:
        save_catalog(cat, args.out)
    out("n", args.n)
    out("kind", args.kind)
    out("count", len(cat))
    return EXIT_OK


def cmd_bounds(args, out: Reporter) -> int:
    fields = lower_certificate(args.n, args.k)
    out("n", args.n)
    out("k", args.k)
    out("lp", fields["lp_bound"])
    out("improved", fields["improved"])
    out("final_lower", fields["final_lower"])
    out("weight1_forced", fields["weight1_forced"])
    out("deficit", deficit(args.n, args.k))
    out("threshold", improvement_threshold(args.n))
    return EXIT_OK


def _budget(args) -> Budget:
    return Budget(args.budget_nodes, args.budget_seconds)


def cmd_solve(args, out: Reporter) -> int:
    t0 = time.monotonic()
    start = None
    if args.size is not None:
        cat = get_catalog(args.n, args.space)
        inst = build_instance(args.n, args.k, cat)
        if args.start:
            start = _start_vector(load_cover(args.start, args.n), cat)
        res = feasibility_at_size(inst, args.size, _budget(args), start=start)
        out("n", args.n)
        out("k", args.k)
        out("space", args.space)
        out("size", args.size)
        out("status", res.status)
        out("nodes", res.stats.nodes)
        if res.status == BUDGET_EXCEEDED:
            out("best_total", res.total if res.total is not None else "none")
        witness = res.solution.as_cover() if res.status == FEASIBLE else None
        code = EXIT_BUDGET if res.status == BUDGET_EXCEEDED else EXIT_OK
        stats = res.stats
    else:
        known = None if args.no_known else known_covers()
        res = compute_f(args.n, args.k, args.space, _budget(args), known=known)
        for key, value in res.record().items():
            if key in ("time_ms", "certificate"):
                continue
            out(key, value if value is not None else "none")
        out("exact", res.exact)
        out("method", res.method)
        out.nested("certificate", res.certificate)
        witness = res.witness if res.status != BUDGET_EXCEEDED else None
        code = EXIT_BUDGET if res.status == BUDGET_EXCEEDED else EXIT_OK
        stats = res.stats
    if witness is not None and args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(format_cover(witness, f"almost {args.k}-cover of Q^{args.n}"))
        out("witness", args.out)
    if args.timing:
        out("time_ms", round((time.monotonic() - t0) * 1000))
        out("lp_pivots", stats.lp_pivots)
    return code


def _start_vector(cover, cat):
    index = {h.coeffs: j for j, h in enumerate(cat.planes)}
    x = [0] * len(cat)
    for h, m in cover:
        if h.coeffs not in index:
            raise InvalidInput(f"start plane {h} is not in the {cat.kind} catalog")
        x[index[h.coeffs]] += m
    return x


def cmd_verify(args, out: Reporter) -> int:
    cover = load_cover(args.cover, args.n)
    verdict = verify_cover(args.n, args.k, cover)
    out("status", "Pass" if verdict.passed else "Fail")
    out("planes", verdict.total)
    out("min_coverage", verdict.min_coverage)
    out("max_coverage", verdict.max_coverage)
    out("histogram", " ".join(f"{c}:{cnt}" for c, cnt in verdict.histogram().items()))
    return EXIT_OK if verdict.passed else EXIT_FAIL


# older names for the two tables, still accepted
TABLE_ALIASES = {"table1": "counts", "thm14": "q6"}


def cmd_table(args, out: Reporter) -> int:
    if TABLE_ALIASES.get(args.which, args.which) == "counts":
        ok = True
        for n in range(1, args.max_weight1 + 1):
            got = len(enumerate_weight1(n))
            exp = KNOWN_WEIGHT1_COUNTS.get(n)
            ok &= exp is None or got == exp
            out(f"weight1.n{n}", f"{got} expected={exp} {'match' if got == exp else 'MISMATCH'}")
        for n in range(1, args.max_maximal + 1):
            got = len(get_catalog(n, MAXIMAL))
            exp = KNOWN_MAXIMAL_COUNTS.get(n)
            tag = "match" if got == exp else ("unknown" if exp is None else "MISMATCH")
            ok &= exp is None or got == exp
            out(f"maximal.n{n}", f"{got} expected={exp if exp is not None else '??'} {tag}")
        return EXIT_OK if ok else EXIT_FAIL
    solved = {kk: sum(m for _, m in c) for (nn, kk), c in known_covers().items() if nn == 6}
    for k in args.k:
        lower = lower_certificate(6, k)["final_lower"]
        try:
            upper = combine_upper(solved, k)
        except NoBound:
            upper = None
        if upper is not None and upper == lower:
            status = f"f(6,{k})={upper}"
        else:
            status = "open"
        out(f"k{k}", f"lower={lower} upper={upper if upper is not None else 'none'} {status}")
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--approx", action="store_true", help="also print decimal approximations")
    common.add_argument("--json", action="store_true", help="print one JSON record instead of key=value lines")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings")
    common.add_argument("--jobs", type=int, default=1, help="worker count (results do not depend on it)")

    p = argparse.ArgumentParser(prog="cube-cover", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def plane_cmd(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--coeffs", required=True, help='comma separated rationals, e.g. "1,-1/2,0"')
        sp.set_defaults(func=func)

    plane_cmd("weight", cmd_weight, "exact weight of a plane")
    plane_cmd("classify", cmd_classify, "weight-1 verdict of a plane")
    plane_cmd("oracle", cmd_oracle, "good/bad/redundant permutation counts")

    sp = sub.add_parser("enumerate", parents=[common], help="enumerate a plane catalog")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--out")
    sp.add_argument("--allow-n6", action="store_true", help="permit the very long n=6 maximal run")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("bounds", parents=[common], help="lower bounds on f(n,k)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("solve", parents=[common], help="minimum cover size or feasibility at a size")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--space", choices=KINDS, default=MAXIMAL)
    sp.add_argument("--size", type=int)
    sp.add_argument("--budget-nodes", type=int)
    sp.add_argument("--budget-seconds", type=float)
    sp.add_argument("--out", help="write the witness cover here")
    sp.add_argument("--start", help="cover file used as the starting incumbent")
    sp.add_argument("--no-known", action="store_true", help="do not compose bundled covers")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", parents=[common], help="check a cover file")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--cover", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("table", parents=[common], help="reproduction tables")
    sp.add_argument("--which", choices=["counts", "q6", *TABLE_ALIASES], required=True)
    sp.add_argument("--k", type=_int_list, default=[20, 40, 60])
    sp.add_argument("--max-weight1", type=int, default=6)
    sp.add_argument("--max-maximal", type=int, default=4)
    sp.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    for name in ("n", "k"):
        v = getattr(args, name, None)
        if isinstance(v, int) and v < 1:
            parser.error(f"--{name} must be positive")
    out = Reporter(args)
    try:
        code = args.func(args, out)
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (InvalidInput, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    out.done()
    return code


if __name__ == "__main__":
    sys.exit(main())
