"""Command line entry point.

Every subcommand prints text by default; ``--json`` prints a single JSON
object whose ``manifest`` records the flags, caps, associator digest and
a digest of the result.  Exit codes: 0 ok, 1 failed check or bad input,
2 usage, 3 resource ceiling.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .associator import default_associator
from .diagrams import DiagramError, format_diagram, parse_diagram, theta
from .gradedsum import GradedSum
from .kontsevich import TangleError, parse_word, zhat
from .linalg import ResourceError
from .lmo import FormalCombination, omega_n

EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 1, 2, 3
FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "fixtures", "v1")
BUDGETS = ("low", "default", "high")


class UsageError(Exception):
    pass


# -- inputs -------------------------------------------------------------------------------

def resolve(path: str) -> str:
    """A real path, or ``fixtures/NAME`` looked up among the bundled fixtures."""
    if os.path.exists(path):
        return path
    name = path[len("fixtures/"):] if path.startswith("fixtures/") else path
    cand = os.path.join(FIXTURE_DIR, name)
    if os.path.exists(cand):
        return cand
    raise UsageError(f"no such file or fixture: {path}")


def read_word(path: str):
    with open(resolve(path)) as fh:
        return parse_word(fh.read())


def read_combination(path: str) -> FormalCombination:
    p = resolve(path)
    with open(p) as fh:
        return FormalCombination.from_text(fh.read(), os.path.dirname(p))


# -- output -------------------------------------------------------------------------------

def sum_to_json(x: GradedSum) -> list:
    rows = [[format_diagram(d), str(c)] for d, c in x.terms.items()]
    return sorted(rows)


def sum_to_text(x: GradedSum) -> str:
    """Scalar first, then ``coef * [diagram]`` by degree."""
    if not x.terms:
        return "0"
    parts = []
    for d, c in sorted(x.terms.items(), key=lambda t: (t[0].degree, format_diagram(t[0]))):
        parts.append(str(c) if d.degree == 0 and not d.loops else f"{c} * [{format_diagram(d)}]")
    return " + ".join(parts)


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()[:16]


def emit(args, result, text: str, started: float) -> None:
    if not args.json:
        print(text)
        return
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("json", "func", "timing")}
    manifest = {
        "subcommand": args.command,
        "flags": flags,
        "caps": {"cap": getattr(args, "cap", None), "n": getattr(args, "n", None)},
        "associator": default_associator(4).digest(),
        "output_digest": _digest(result),
    }
    # wall time breaks byte-identical output, so it is opt-in
    if args.timing:
        manifest["wall_time"] = round(time.perf_counter() - started, 3)
    print(json.dumps({"manifest": manifest, "result": result}, sort_keys=True, indent=1))


def check_budget(args, heavy: bool, what: str) -> None:
    if heavy and args.budget != "high":
        raise ResourceError(f"{what} needs --budget high")


# -- parallel helpers -----------------------------------------------------------------------

def _omega_term(job):
    c, text, n = job
    return c, omega_n(parse_word(text), n)


def omega_parallel(comb: FormalCombination, n: int, jobs: int) -> GradedSum:
    """Term-level parallel sum; the result does not depend on ``jobs``."""
    work = [(c, w.text(), n) for c, w in comb]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_omega_term, work))
    else:
        parts = [_omega_term(j) for j in work]
    out = GradedSum.zero(GradedSum.one().support, n)
    for c, v in parts:
        out = out + v.scale(c)
    return out


# -- subcommands ----------------------------------------------------------------------------

def cmd_dims(args, t0):
    from .relations import space_dimension
    check_budget(args, args.max_degree > 4 or (args.space == "D" and args.max_degree > 3), "this degree")
    rows = [[args.space, d, space_dimension(args.space, d)] for d in range(0 if args.space != "D" else 1,
                                                                            args.max_degree + 1)]
    text = "space degree dim\n" + "\n".join(f"{s} {d} {k}" for s, d, k in rows)
    emit(args, rows, text, t0)
    return 0


def cmd_zhat(args, t0):
    check_budget(args, args.cap > 4, "cap above 4")
    z = zhat(read_word(args.tangle), args.cap)
    emit(args, sum_to_json(z), sum_to_text(z), t0)
    return 0


def cmd_lmo(args, t0):
    check_budget(args, args.n > 1, "n above 1")
    if args.combination:
        comb = read_combination(args.combination)
    elif args.link:
        comb = FormalCombination([(1, read_word(args.link))])
    else:
        raise UsageError("lmo needs --link or --combination")
    if any(len(w.top) for _, w in comb):
        raise UsageError("surgery presentations must be closed words")
    om = omega_parallel(comb, args.n, args.jobs)
    emit(args, sum_to_json(om), sum_to_text(om), t0)
    return 0


def cmd_graph_surgery(args, t0):
    from .surgery import tilde_beta
    check_budget(args, args.n > 1, "n above 1")
    om = omega_parallel(tilde_beta(args.graph), args.n, args.jobs)
    want = GradedSum.of(theta(), (-1) ** args.n, args.n)
    ok = om == want
    result = {"omega": sum_to_json(om), "expected": sum_to_json(want), "pass": ok}
    emit(args, result, f"{'PASS' if ok else 'FAIL'} Omega_{args.n} = {sum_to_text(om)}", t0)
    return 0 if ok else EXIT_FAIL


def cmd_kirby(args, t0):
    from .surgery import kirby_pair
    check_budget(args, args.n > 1, "n above 1")
    a, b = kirby_pair(args.pair)
    oa, ob = omega_n(a, args.n), omega_n(b, args.n)
    ok = oa == ob
    result = {"pair": args.pair, "left": sum_to_json(oa), "right": sum_to_json(ob), "pass": ok}
    emit(args, result, f"{'PASS' if ok else 'FAIL'} {args.pair}: {sum_to_text(oa)} | {sum_to_text(ob)}", t0)
    return 0 if ok else EXIT_FAIL


def cmd_weight(args, t0):
    from .relations import space_quotient
    from .weights import weight_sl2
    if args.diagram:
        with open(resolve(args.diagram)) as fh:
            d = parse_diagram(fh.read().strip())
        w = weight_sl2(d)
        emit(args, str(w), str(w), t0)
        return 0
    if not args.space:
        raise UsageError("weight needs --diagram or --space")
    check_budget(args, args.max_degree > 3, "degree above 3")
    rows = []
    for deg in range(1, args.max_degree + 1):
        for k in space_quotient(args.space, deg).basis:
            rows.append([deg, format_diagram(k), str(weight_sl2(k))])
    emit(args, rows, "\n".join(f"{d} {w} [{k}]" for d, k, w in rows), t0)
    return 0


def cmd_selftest(args, t0):
    from .acceptance import run_all
    lines: list[str] = []
    out = print if not args.json else lines.append
    ok = run_all(skip_heavy=args.budget == "low", out=out, timing=not args.json or args.timing)
    if args.json:
        emit(args, {"lines": lines, "pass": ok}, "", t0)
    return 0 if ok else EXIT_FAIL


# -- parser ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON with a run manifest")
    common.add_argument("--timing", action="store_true", help="record wall time in the manifest")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for term-level work")
    common.add_argument("--budget", choices=BUDGETS, default="default")

    p = argparse.ArgumentParser(prog="lmokit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dims", parents=[common], help="dimension table of a diagram space")
    s.add_argument("--space", default="D", help="D, P<m>, S<l> or C<l>")
    s.add_argument("--max-degree", type=int, default=3)
    s.set_defaults(func=cmd_dims)

    s = sub.add_parser("zhat", parents=[common], help="Kontsevich integral of a tangle word")
    s.add_argument("--tangle", required=True)
    s.add_argument("--cap", type=int, default=4)
    s.set_defaults(func=cmd_zhat)

    s = sub.add_parser("lmo", parents=[common], help="Omega_n of a surgery presentation")
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--link")
    s.add_argument("--combination")
    s.set_defaults(func=cmd_lmo)

    s = sub.add_parser("graph-surgery", parents=[common], help="Omega_n of the framed graph surgery sum")
    s.add_argument("--graph", default="theta", choices=["theta"])
    s.add_argument("--n", type=int, default=1)
    s.set_defaults(func=cmd_graph_surgery)

    s = sub.add_parser("kirby-check", parents=[common], help="compare Omega_n across a Kirby pair")
    s.add_argument("--pair", required=True)
    s.add_argument("--n", type=int, default=1)
    s.set_defaults(func=cmd_kirby)

    s = sub.add_parser("weight", parents=[common], help="sl2 weights")
    s.add_argument("--diagram")
    s.add_argument("--space")
    s.add_argument("--max-degree", type=int, default=3)
    s.set_defaults(func=cmd_weight)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", 1) < 1 or getattr(args, "cap", 1) < 0 or args.jobs < 1:
        parser.error("caps, n and jobs must be positive")
    t0 = time.perf_counter()
    try:
        return args.func(args, t0)
    except ResourceError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except UsageError as e:
        print(f"usage: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DiagramError, TangleError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
