"""Command-line entry point: ``colorednc <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or malformed input,
3 bound or resource limit exceeded.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
from itertools import islice

import numpy as np

from . import closure as cl
from . import colored as cd
from . import laws
from . import moments as me
from . import numerics as nm
from . import tensormaps as tm
from .errors import BoundExceededError, ResourceLimitError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
MAX_ORDER = 200
DEFAULT_VERIFY_S = "3,5,6,7,inf"


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=False)


def _category(args) -> cd.CategoryLabel:
    if getattr(args, "dbar", False):
        return cd.DBAR_INF
    if args.s is None:
        raise UsageError("pass --s or --dbar")
    return cd.D(args.s)


def _order(R: int) -> int:
    if R < 0:
        raise UsageError("R must be nonnegative")
    if R > MAX_ORDER:
        raise BoundExceededError(f"R = {R} exceeds {MAX_ORDER}")
    return R


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        # JSON lines
        try:
            return [json.loads(line) for line in text.splitlines() if line.strip()]
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path} is not JSON: {exc}") from exc


def _measure(args) -> laws.DiscreteMeasure:
    if args.measure:
        data = _read_json(args.measure)
        try:
            rho = laws.DiscreteMeasure.from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed measure file: {exc!r}") from exc
        if not rho.is_real:
            raise UsageError("measure must be real")
        return rho
    if args.s is None:
        raise UsageError("pass --s or --measure")
    s = cd.parse_s(args.s)
    if s == math.inf:
        raise UsageError("s=inf has a continuous root measure; pass --measure instead")
    rho = laws.character_measure(s)
    return laws.DiscreteMeasure(tuple((float(z.real) if isinstance(z, complex) else float(z), float(w))
                                      for z, w in rho.atoms))


# commands ------------------------------------------------------------------

def cmd_enumerate(args, out):
    cat = _category(args)
    for cp in cd.enumerate_category(args.upper, args.lower, cat):
        out.write(cp.dumps() + "\n")
    return EXIT_OK


def cmd_count(args, out):
    cat = _category(args)
    out.write(_dump({"category": cat.to_json(), "upper": args.upper, "lower": args.lower,
                     "count": cd.count_category(args.upper, args.lower, cat)}) + "\n")
    return EXIT_OK


def cmd_table(args, out):
    R = _order(args.R)
    s = cd.parse_s(args.s)
    out.write("r,kappa,moment\n")
    for r, k, m in me.table_rows(s, R, args.kind):
        out.write(f"{r},{k},{m}\n")
    return EXIT_OK


def cmd_gram(args, out):
    cat = _category(args)
    if args.n < 1:
        raise UsageError("n must be positive")
    diagrams = cd.enumerate_category(args.upper, args.lower, cat)
    report = tm.gram_report(diagrams, args.n)
    report = {"category": cat.to_json(), "upper": args.upper, "lower": args.lower, "n": args.n, **report}
    out.write(tm.dumps_gram(report) + "\n")
    return EXIT_OK


def _load_generators(path: str) -> list[cd.ColoredPartition]:
    data = _read_json(path)
    if isinstance(data, dict):
        data = data.get("generators", [data])
    try:
        return [cd.ColoredPartition.from_json(item) for item in data]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed generator file: {exc!r}") from exc


def cmd_closure(args, out):
    cat = _category(args)
    if args.generators:
        gens = _load_generators(args.generators)
    elif cat.kind == "DbarInf":
        gens = cd.dbar_generators()
    elif cat.s == math.inf:
        gens = cd.dbar_generators() + [cd.block_swap_generator()]
    else:
        gens = cd.dbar_generators() + [cd.one_block_black(cat.s)]
    if not 0 <= args.max_legs <= 10:
        raise BoundExceededError("closure is limited to max_legs <= 10")
    found = cl.closure(gens, args.max_legs)
    rows = cl.compare_with_category(found, cat, args.max_legs)
    match = all(row["match"] for row in rows)
    report = {
        "category": cat.to_json(),
        "max_legs": args.max_legs,
        "generators": sorted(cd.canonicalize(g).ident() for g in gens),
        "generated_total": len(found),
        "shapes": rows,
        "match": match,
    }
    out.write(_dump(report) + "\n")
    return EXIT_FAIL if args.check and not match else EXIT_OK


def cmd_density(args, out):
    rho = _measure(args)
    if args.points < 2:
        raise UsageError("need at least two grid points")
    if args.xmin is not None or args.xmax is not None:
        if args.xmin is None or args.xmax is None or args.xmin >= args.xmax:
            raise UsageError("--xmin and --xmax must both be given with xmin < xmax")
        grid = np.linspace(args.xmin, args.xmax, args.points)
    else:
        grid = nm.support_grid(rho, args.points)
    if not 1e-8 <= args.eta <= 1e-2:
        raise UsageError("eta must lie in [1e-8, 1e-2]")
    curve = nm.density_from_measure(rho, grid, args.eta)
    out.write(curve.to_csv())
    if curve.atom_at_zero:
        print(f"atom at 0 with weight {curve.atom_at_zero:.12g}", file=sys.stderr)
    if curve.failures:
        print(f"root selection failed at {len(curve.failures)} grid points", file=sys.stderr)
    return EXIT_OK


def cmd_sample(args, out):
    rho = _measure(args)
    if not 1 <= args.N <= nm.MAX_MATRIX_SIZE:
        raise BoundExceededError(f"N must lie in 1..{nm.MAX_MATRIX_SIZE}")
    if args.trials < 0:
        raise UsageError("trials must be nonnegative")
    spectrum = nm.sample_spectrum(rho, args.N, args.trials, args.seed)
    out.write(spectrum.to_csv())
    return EXIT_OK


def _count_identity(s, R: int, perturb: bool) -> laws.VerificationReport:
    """Diagram counts |D_s(0, r)| against moments of the free law with the character cumulants."""
    moments = me.character_moments(s, R)
    if perturb:
        moments = [moments[0], moments[1] + 1] + moments[2:]
    counts = [cd.count_category(0, r, cd.D(s)) for r in range(R + 1)]
    err = max(abs(a - b) for a, b in zip(moments, counts))
    return laws.VerificationReport("count_moment", s, R, float(err), err == 0)


def _functor_sample(s, n: int = 2, max_legs: int = 4, limit: int = 400) -> laws.VerificationReport:
    diagrams = [cp for total in range(max_legs + 1) for k in range(total + 1)
                for cp in cd.enumerate_category(k, total - k, cd.D(s))]
    pairs = ((a, b) for a in diagrams for b in diagrams
             if a.lower == b.upper and a.size + b.size <= 2 * max_legs)
    cache: dict = {}
    failures = 0
    checked = 0
    for a, b in islice(pairs, limit):
        checked += 1
        if not tm.functor_check(a, b, n, cache).passed:
            failures += 1
    return laws.VerificationReport("functor", s, max_legs, float(failures), failures == 0,
                                   {"pairs": checked, "n": n})


def cmd_verify(args, out):
    R = _order(args.R)
    try:
        values = [cd.parse_s(v) for v in args.s.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not values:
        raise UsageError("empty s list")
    reports = []
    for s in values:
        if s == math.inf:
            reports.append(laws.verify_circle_law(R, perturb=args.perturb, tol=args.tol))
        else:
            reports.append(laws.verify_half_character(s, R, perturb=args.perturb, tol=args.tol))
            reports.append(laws.verify_poisson_sum(s, R, perturb=args.perturb, tol=args.tol))
        reports.append(_count_identity(s, min(R, 10), args.perturb))
        reports.append(_functor_sample(s))
    passed = all(r.passed for r in reports)
    summary = {"R": R, "s": ["inf" if s == math.inf else s for s in values],
               "perturb": args.perturb, "results": [r.to_json() for r in reports], "pass": passed}
    out.write(_dump(summary) + "\n")
    return EXIT_OK if passed else EXIT_FAIL


# parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="colorednc", description="Colored noncrossing diagram toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.set_defaults(func=func)
        return p

    def shape(p):
        p.add_argument("--s", help="category parameter: positive integer or inf")
        p.add_argument("--dbar", action="store_true", help="use the alternating even category")
        p.add_argument("--upper", type=int, default=0)
        p.add_argument("--lower", type=int, default=0)

    shape(add("enumerate", cmd_enumerate, "list canonical diagrams, one JSON object per line"))
    shape(add("count", cmd_count, "count diagrams without listing them"))
    for name in ("moments", "cumulants"):
        p = add(name, cmd_table, "CSV table r,kappa,moment for the main character")
        p.add_argument("--s", required=True)
        p.add_argument("--R", type=int, required=True)
        p.add_argument("--kind", choices=("free", "classical"), default="free")
    p = add("gram", cmd_gram, "Gram matrix, rank and determinant of a diagram family")
    shape(p)
    p.add_argument("--n", type=int, default=2)
    p = add("closure", cmd_closure, "generate diagrams from generators and compare with a category")
    p.add_argument("--s")
    p.add_argument("--dbar", action="store_true")
    p.add_argument("--generators", help="JSON list (or JSON lines) of colored diagrams")
    p.add_argument("--max-legs", type=int, default=6)
    p.add_argument("--check", action="store_true", help="exit 1 unless every shape matches")
    for name, func, text in (("density", cmd_density, "density CSV x,density"),
                             ("sample", cmd_sample, "eigenvalue CSV from Wishart sums")):
        p = add(name, func, text)
        p.add_argument("--s")
        p.add_argument("--measure", help='JSON file {"atoms":[{"re":..,"im":..,"w":..}]}')
        if name == "density":
            p.add_argument("--xmin", type=float)
            p.add_argument("--xmax", type=float)
            p.add_argument("--points", type=int, default=4001)
            p.add_argument("--eta", type=float, default=nm.DEFAULT_ETA)
        else:
            p.add_argument("--N", type=int, default=500)
            p.add_argument("--trials", type=int, default=1)
            p.add_argument("--seed", type=int, default=0)
    p = add("verify", cmd_verify, "run the identity checks; exit 1 on any failure")
    p.add_argument("--s", default=DEFAULT_VERIFY_S, help="comma-separated list, e.g. 3,5,inf")
    p.add_argument("--R", type=int, default=10)
    p.add_argument("--tol", type=float, default=laws.VERIFY_TOL)
    p.add_argument("--perturb", action="store_true", help="negative control: shift one cumulant")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with contextlib.ExitStack() as stack:
            out = stack.enter_context(open(args.out, "w", encoding="utf-8", newline="\n")) if args.out else sys.stdout
            return args.func(args, out)
    except (BoundExceededError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
