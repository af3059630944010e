"""Command-line front end.

Exit codes: 0 when every checked property holds, 1 when one is violated,
2 on input errors.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io as _io
import json
import os
import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path

from . import bernoulli
from .box import g_algebra, invariant_join, is_magic, magic_extension, seminorm4, seminorm4_by_averages
from .dynamics import (
    ergodic_components,
    group_orbit_partition,
    invariant_partition,
    is_ergodic,
)
from .errors import ErgLabError, SizeLimitExceeded
from .fuzz import SUITES, run_suite
from .io import (
    exact,
    format_rational,
    load_document,
    parse_observable,
    parse_rational,
    parse_subset,
    system_from_document,
    system_to_document,
)
from .recurrence import cesaro_bound_check, diff_bound_check, j0_lower_bound_check, recurrence_set

BOX_LIMIT = 40
PLAIN_LIMIT = 4096


class Violation(Exception):
    """A checked property failed; carries the report to print."""

    def __init__(self, report):
        super().__init__("property violated")
        self.report = report


def _limit(args, default: int) -> int:
    if args.max_points is not None:
        return args.max_points
    env = os.environ.get("ERGLAB_MAX_POINTS")
    return int(env) if env else default


def _load(args, default_limit: int):
    raw = Path(args.system).read_bytes() if Path(args.system).is_file() else b""
    doc = load_document(args.system)
    sys_ = system_from_document(doc)
    limit = _limit(args, default_limit)
    if len(sys_) > limit:
        raise SizeLimitExceeded(len(sys_), limit)
    return sys_, doc, hashlib.sha256(raw).hexdigest()


def _blocks(part) -> list:
    return [[_jsonable(p) for p in b] for b in part.labelled_blocks()]


def _jsonable(p):
    return [_jsonable(q) for q in p] if isinstance(p, tuple) else p


def cmd_inspect(args) -> dict:
    s, _, digest = _load(args, PLAIN_LIMIT)
    result = {
        "name": s.name,
        "points": len(s),
        "ergodic": is_ergodic(s),
        "period": s.period,
        "orders": {"t1": s.t1.order, "t2": s.t2.order, "t3": s.t3.order},
        "group_orbits": _blocks(group_orbit_partition(s)),
        "invariant_partitions": {w: _blocks(invariant_partition(s, w)) for w in ("T1", "T2", "T3")},
    }
    return {"input_digest": digest, "result": result, "verdicts": {"valid": True}}


def cmd_seminorm(args) -> dict:
    s, doc, digest = _load(args, BOX_LIMIT)
    f = parse_observable(args.f, s, doc.get("observables"))
    by_box = seminorm4(f, s).fourth_power
    by_avg = seminorm4_by_averages(f, s)
    report = {
        "input_digest": digest,
        "result": {
            "f": [format_rational(v) for v in f.values],
            "seminorm4_box": exact(by_box),
            "seminorm4_averages": exact(by_avg),
            "seminorm_root": f"{float(by_box) ** 0.25:.12g}",
        },
        "verdicts": {"routes_agree": by_box == by_avg},
    }
    if by_box != by_avg:
        raise Violation(report)
    return report


def cmd_magic_extend(args) -> dict:
    s, _, digest = _load(args, BOX_LIMIT)
    verdict = is_magic(s)
    ext, factor = magic_extension(s, max_points=_limit(args, BOX_LIMIT))
    pushed = [Fraction(0)] * len(s)
    for x, y in enumerate(factor.mapping):
        pushed[y] += ext.space.weights[x]
    ext_magic = bool(is_magic(ext))
    components_magic = all(is_magic(c.system) for c in ergodic_components(ext))
    result = {
        "system_magic": bool(verdict),
        "witness": None if verdict else [format_rational(v) for v in verdict.witness.values],
        "witness_seminorm4": None if verdict else exact(verdict.witness_seminorm4),
        "g_algebra_blocks": len(g_algebra(s, max_points=_limit(args, BOX_LIMIT))),
        "invariant_join_blocks": len(invariant_join(s)),
        "extension_points": len(ext),
        "extension_components": len(ergodic_components(ext)),
    }
    if args.emit_document:
        _write_atomic(args.emit_document, json.dumps(system_to_document(ext), indent=2) + "\n")
        result["extension_document"] = args.emit_document
    verdicts = {
        "marginal_is_mu": tuple(pushed) == s.space.weights,
        "extension_magic": ext_magic,
        "components_magic": components_magic,
    }
    report = {"input_digest": digest, "result": result, "verdicts": verdicts}
    if not all(verdicts.values()):
        raise Violation(report)
    return report


def cmd_recurrence_scan(args) -> dict:
    s, _, digest = _load(args, PLAIN_LIMIT)
    subset = parse_subset(args.set, s)
    eps = parse_rational(args.epsilon, "epsilon")
    labels = [s.space.points[i] for i in subset]
    rep = recurrence_set(s, labels, args.exponent, eps, horizon=args.horizon, allow_nonergodic=args.allow_nonergodic)
    hits = set(rep.hits)
    rows = [{"n": n, "I_n": format_rational(v), "hit": n in hits} for n, v in enumerate(rep.values)]
    result = {
        "A": subset,
        "exponent": args.exponent,
        "epsilon": exact(eps),
        "threshold": exact(rep.threshold),
        "period": rep.period,
        "hits": list(rep.hits),
        "max_gap": rep.max_gap,
        "rows": rows,
    }
    verdicts = {"syndetic": rep.syndetic, "ergodic": rep.ergodic}
    return {"input_digest": digest, "result": result, "verdicts": verdicts}


def cmd_bounds_check(args) -> dict:
    s, doc, digest = _load(args, BOX_LIMIT)
    f = parse_observable(args.f, s, doc.get("observables"))
    ces = cesaro_bound_check(s, f, f, f, parse_rational(args.t, "t"))
    j0 = j0_lower_bound_check(s, f)
    diff = diff_bound_check(s, f)
    result = {
        "cesaro": {
            "t": format_rational(ces.t),
            "average_abs": f"{ces.average_abs:.12g}",
            "average4": exact(ces.average4) if isinstance(ces.average4, Fraction) else f"{ces.average4:.12g}",
            "bounds4": [exact(b) for b in ces.bounds],
        },
        "j0": {"j0": exact(j0.j0), "bound": exact(j0.bound)},
        "diff": {
            "average": exact(diff.average),
            "seminorms4": [exact(x) for x in diff.seminorms4],
            "bound_upper": exact(diff.bound_upper),
        },
    }
    verdicts = {"cesaro": ces.holds, "j0": j0.holds, "diff": diff.holds}
    report = {"input_digest": digest, "result": result, "verdicts": verdicts}
    if not all(verdicts.values()):
        raise Violation(report)
    return report


def cmd_counterexample(args) -> dict:
    c = parse_rational(args.c, "c")
    mu = bernoulli.counterexample_measure()
    values = {str(n): format_rational(bernoulli.counterexample_value(n)) for n in args.n}
    value = bernoulli.counterexample_value(1)
    cube = mu**3
    power = bernoulli.counterexample_power(c)
    result = {
        "mu_A": exact(mu),
        "I_n": values,
        "mu_A_cubed": exact(cube),
        "scaled_bound": exact(bernoulli.COUNTEREXAMPLE_CONSTANT * cube),
        "c": exact(c),
        "l": power.l,
        "ratio": exact(value / cube),
    }
    verdicts = {
        "below_scaled_bound": value < bernoulli.COUNTEREXAMPLE_CONSTANT * cube,
        "power_certificate": power.certificate,
    }
    report = {"result": result, "verdicts": verdicts}
    if not all(verdicts.values()):
        raise Violation(report)
    return report


def cmd_fuzz(args) -> dict:
    report = run_suite(args.suite, args.seed, args.count)
    if report["status"] != "all-pass":
        raise Violation({"result": report})
    return {"result": report}


def _write_atomic(path: str, text: str) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=".erglab-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, target)


def _render(report: dict, fmt: str) -> str:
    if fmt == "csv":
        rows = report.get("result", {}).get("rows")
        if rows is None:
            raise ErgLabError("csv output is only available for recurrence-scan")
        buf = _io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "I_n", "hit"])
        for row in rows:
            writer.writerow([row["n"], row["I_n"], "1" if row["hit"] else "0"])
        return buf.getvalue()
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


COMMANDS = {
    "inspect": cmd_inspect,
    "seminorm": cmd_seminorm,
    "magic-extend": cmd_magic_extend,
    "recurrence-scan": cmd_recurrence_scan,
    "bounds-check": cmd_bounds_check,
    "counterexample": cmd_counterexample,
    "fuzz": cmd_fuzz,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-points", type=int, default=None, help="size guard (env ERGLAB_MAX_POINTS)")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="erglab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inspect", parents=[common], help="validate a system and describe its orbits")
    p.add_argument("system")

    p = sub.add_parser("seminorm", parents=[common], help="box seminorm by two routes")
    p.add_argument("system")
    p.add_argument("--f", required=True, help="const:c, indicator:i,j, JSON list, or observable name")

    p = sub.add_parser("magic-extend", parents=[common], help="build and check the magic extension")
    p.add_argument("system")
    p.add_argument("--emit-document", default=None, help="write the extension as a system document")

    p = sub.add_parser("recurrence-scan", parents=[common], help="scan I_n over one period")
    p.add_argument("system")
    p.add_argument("--set", required=True, help="comma-separated point indices or 'all'")
    p.add_argument("--exponent", type=int, choices=[3, 4], default=4)
    p.add_argument("--epsilon", required=True, help="rational p/q")
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--allow-nonergodic", action="store_true")

    p = sub.add_parser("bounds-check", parents=[common], help="Cesaro, J0 and difference bounds")
    p.add_argument("system")
    p.add_argument("--f", default="indicator:0")
    p.add_argument("--t", default="0", help="character frequency p/q with q dividing the period")

    p = sub.add_parser("counterexample", parents=[common], help="exact values of the Bernoulli counterexample")
    p.add_argument("--c", default="1", help="target constant in (0, 1]")
    p.add_argument("--n", type=int, nargs="+", default=[1, -1, 5, -7])

    p = sub.add_parser("fuzz", parents=[common], help="seeded property suites")
    p.add_argument("--suite", required=True, help=f"one of {', '.join(SUITES)}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    status = 0
    try:
        report = COMMANDS[args.command](args)
    except Violation as exc:
        report, status = exc.report, 1
    except (ErgLabError, ValueError) as exc:
        print(f"erglab: error: {exc}", file=sys.stderr)
        return 2
    echo = {k: v for k, v in vars(args).items() if k not in ("command", "output")}
    report = {"command": args.command, "arguments": echo, **report}
    if args.command != "fuzz":
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    try:
        text = _render(report, args.format)
    except ErgLabError as exc:
        print(f"erglab: error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        _write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
