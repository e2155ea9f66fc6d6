"""Batch front-end: classify events, estimate probabilities, fit decay slopes.

All randomness flows from one --seed; outputs are byte-identical across runs
unless --timing adds wall-clock columns.  Exit codes: 0 ok, 2 parse error,
3 size limit, 4 degenerate data.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction

from . import classifier
from .constraints import UnsupportedEventError, load_system
from .core import UnsupportedSizeError, covers, l_star, l_star_bruteforce, subgroups
from .models import (
    PiSet,
    impartial_culture,
    load_pi_set,
    mallows_grid,
    parse_ranking,
    plackett_luce_set,
)
from .probability import (
    AgentMix,
    AnrViolationEvent,
    StateSpaceLimitError,
    adversarial_probability,
    exact_event_probability,
    fit_power_law,
    mc_estimate,
)
from .rules import moulin_exists, parse_rule
from .tally import format_event, parse_event


class DegenerateDataError(ValueError):
    pass


def parse_model(text: str, m: int) -> PiSet:
    text = text.strip()
    if text == "ic":
        return impartial_culture(m)
    if text.startswith("mallows:"):
        fields = dict(part.split("=", 1) for part in text[len("mallows:") :].split(","))
        phis = [Fraction(p) for p in fields.get("phi", "1").split("|")]
        if "central" in fields:
            centrals = [parse_ranking(fields["central"])]
        elif fields.get("centrals", "all") == "all":
            centrals = "all"
        else:
            centrals = [parse_ranking(c) for c in fields["centrals"].split("|")]
        return mallows_grid(m, phis, centrals)
    if text.startswith("pl:"):
        fields = dict(part.split("=", 1) for part in text[len("pl:") :].split(";"))
        thetas = [
            [Fraction(v) for v in theta.split(",")] for theta in fields["theta"].split("|")
        ]
        return plackett_luce_set(m, thetas)
    return load_pi_set(text)


def parse_grid(text: str) -> list[int]:
    text = text.strip()
    if ":" in text:
        parts = [int(v) for v in text.split(":")]
        if len(parts) == 2:
            lo, hi, step = parts[0], parts[1], 1
        elif len(parts) == 3:
            lo, hi, step = parts
        else:
            raise ValueError(f"cannot parse grid {text!r}")
        return list(range(lo, hi + 1, step))
    return [int(v) for v in text.split(",")]


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_rows(rows, header, out_path, fmt):
    if fmt == "json":
        payload = [dict(zip(header, row)) for row in rows]
        text = json.dumps(payload, indent=1, default=_fmt) + "\n"
    else:
        import io

        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        text = buf.getvalue()
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- subcommands -----------------------------------------------------------------


def cmd_classify(args) -> int:
    pi = parse_model(args.model, args.m)
    if args.system:
        system = load_system(args.system)
        verdict = classifier.classify(system, pi)
        witness = None
        if verdict.kind == classifier.POLYNOMIAL:
            witness = ("mixture", classifier.hull_witness(system, pi))
        elif verdict.kind == classifier.EXPONENTIAL:
            witness = ("point", classifier.nonempty_witness(system))
        label = system.label or args.system
    else:
        event = parse_event(args.event, args.m)
        verdict, dominant, alpha = classifier.event_verdict_detailed(event, pi)
        witness = ("mixture", alpha) if alpha is not None else None
        label = format_event(event) + (f" via {dominant.label}" if dominant else "")
    out = dict(verdict.to_json())
    out["input"] = label
    if witness and witness[1] is not None:
        out["witness"] = {witness[0]: [str(v) for v in witness[1]]}
    print(json.dumps(out, indent=1))
    return 0


def _estimate_once(event, pi, n, args):
    direction = args.direction
    strategy = args.strategy
    est, mix = adversarial_probability(
        event,
        pi,
        n,
        direction=direction,
        strategy=strategy,
        method="exact" if args.method in ("exact", "both") else "mc",
        mode=args.mode,
        samples=args.samples,
        seed=args.seed,
    )
    rows = [(est, mix)]
    if args.method == "both":
        rows.append((mc_estimate(event, mix, args.samples, args.seed), mix))
    return rows


def cmd_estimate(args) -> int:
    pi = parse_model(args.model, args.m)
    event = parse_event(args.event, args.m)
    header = ["event", "model", "n", "method", "value", "stderr", "seed"]
    if args.timing:
        header.append("wall_ms")
    rows = []
    for n in parse_grid(args.n_grid):
        start = time.perf_counter()
        for est, _ in _estimate_once(event, pi, n, args):
            row = [
                format_event(event),
                args.model,
                n,
                est.method,
                est.value_float,
                est.stderr,
                est.seed if est.seed is not None else args.seed,
            ]
            if args.timing:
                row.append(round((time.perf_counter() - start) * 1000, 3))
            rows.append(row)
    _write_rows(rows, header, args.out, args.format)
    return 0


def cmd_scan(args) -> int:
    pi = parse_model(args.model, args.m)
    event = parse_event(args.event, args.m)
    verdict = classifier.event_verdict(event, pi)
    grid = []
    dropped = []
    for n in parse_grid(args.n_grid):
        est, _ = adversarial_probability(
            event,
            pi,
            n,
            direction=args.direction,
            strategy=args.strategy,
            method="exact" if args.method != "mc" else "mc",
            mode=args.mode,
            samples=args.samples,
            seed=args.seed,
        )
        p = est.value_float
        if p > 0:
            grid.append((n, p))
        else:
            dropped.append(n)
    if dropped:
        print(f"note: dropped zero-probability n {dropped}", file=sys.stderr)
    if len(grid) < 3:
        raise DegenerateDataError("fewer than 3 positive grid points")
    fit = fit_power_law([n for n, _ in grid], [p for _, p in grid])
    report = {
        "event": format_event(event),
        "model": args.model,
        "verdict": verdict.to_json(),
        "predicted_exponent": str(verdict.exponent) if verdict.exponent is not None else None,
        "fitted_slope": fit.slope,
        "slope_stderr": fit.slope_stderr,
        "intercept": fit.intercept,
        "grid": [[n, p] for n, p in fit.grid],
    }
    print(json.dumps(report, indent=1))
    if args.out:
        header = ["event", "model", "n", "method", "value", "stderr", "seed"]
        rows = [
            [format_event(event), args.model, n, f"exact-{args.mode}", p, 0.0, args.seed]
            for n, p in fit.grid
        ]
        _write_rows(rows, header, args.out, "csv")
    return 0


DEFAULT_BATTERY = "borda+lex:{lex},borda+fa:1,borda+mpsr(lex:{lex})"


def cmd_anr(args) -> int:
    ns = parse_grid(args.n_grid)
    print(f"# anonymous+neutral rule existence (m={args.m})")
    for n in ns:
        print(f"m={args.m} n={n} exists={moulin_exists(args.m, n)}")
    if not args.rate_n:
        return 0
    pi = parse_model(args.model, args.m)
    lex = ">".join(str(a) for a in range(1, args.m + 1))
    battery_text = args.rules or DEFAULT_BATTERY.format(lex=lex) + ",r_ano,r_neu"
    print(f"# violation rates sup Pr(anonymity+neutrality fails), model={args.model}")
    for n in parse_grid(args.rate_n):
        for rule_text in battery_text.split(","):
            rule = parse_rule(rule_text, args.m)
            event = AnrViolationEvent(rule, args.m)
            values = []
            for member in pi.members:
                try:
                    est = exact_event_probability(event, AgentMix.iid(member, n), args.mode)
                except StateSpaceLimitError:
                    est = mc_estimate(event, AgentMix.iid(member, n), args.samples, args.seed)
                values.append((est.value_float, est.method))
            value, tag = max(values)
            print(f"n={n} rule={rule_text} method={tag} violation={_fmt(value)}")
    return 0


def cmd_groups(args) -> int:
    if args.m <= 5:
        groups = subgroups(args.m)
        n_cover = sum(1 for u in groups if covers(u))
        print(f"subgroups of S_{args.m}: {len(groups)} total, {n_cover} covering")
        by_order: dict[int, int] = {}
        for u in groups:
            by_order[u.order] = by_order.get(u.order, 0) + 1
        for order in sorted(by_order):
            print(f"  order {order}: {by_order[order]}")
    print(f"l*({args.m}) closed form = {l_star(args.m)}")
    if args.m <= 7:
        print(f"l*({args.m}) brute force = {l_star_bruteforce(args.m)}")
    return 0


# --- parser ------------------------------------------------------------------------


def _require(args, *names):
    for name in names:
        if getattr(args, name.replace("-", "_"), None) is None:
            raise ValueError(f"missing required option --{name}")


def _add_common(sub, model=True):
    sub.add_argument("--m", type=int, default=None, help="number of alternatives")
    if model:
        sub.add_argument("--model", default="ic", help="ic | mallows:... | pl:... | PiSet JSON path")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--out", default=None, help="output file (default stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--mode", choices=("rational", "double"), default="rational")
    sub.add_argument("--samples", type=int, default=100_000)
    sub.add_argument("--direction", choices=("sup", "inf"), default="sup")
    sub.add_argument("--strategy", choices=("iid-extreme", "mixture-witness"), default="iid-extreme")
    sub.add_argument("--timing", action="store_true", help="append wall_ms (breaks byte determinism)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smoothvote")
    parser.add_argument("--config", default=None, help="JSON file of default flag values")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("classify", help="trichotomy verdict for an event or system file")
    _add_common(p)
    p.add_argument("--event", default=None, help="e.g. ncc, cc:k=3, wcw:k=2, tmn, mpsr-empty")
    p.add_argument("--system", default=None, help="ConstraintSystem JSON path")
    p.set_defaults(func=cmd_classify)

    p = subs.add_parser("estimate", help="event probability over an n grid")
    _add_common(p)
    p.add_argument("--event", default=None)
    p.add_argument("--n-grid", default=None, help="e.g. 2:10, 10:60:2, or 6,9,12")
    p.add_argument("--method", choices=("exact", "mc", "both"), default="exact")
    p.set_defaults(func=cmd_estimate)

    p = subs.add_parser("scan", help="fit the decay exponent over an n grid")
    _add_common(p)
    p.add_argument("--event", default=None)
    p.add_argument("--n-grid", default=None)
    p.add_argument("--method", choices=("exact", "mc"), default="exact")
    p.set_defaults(func=cmd_scan)

    p = subs.add_parser("anr", help="existence table and violation rates")
    _add_common(p)
    p.add_argument("--n-grid", default=None, help="n values for the existence table")
    p.add_argument("--rate-n", default=None, help="n values for violation rates")
    p.add_argument("--rules", default=None, help="comma-separated rule battery")
    p.set_defaults(func=cmd_anr)

    p = subs.add_parser("groups", help="subgroup and minimal-covering-order tables")
    p.add_argument("--m", type=int, default=None)
    p.set_defaults(func=cmd_groups)

    return parser


def _peek_config(argv):
    peek = argparse.ArgumentParser(add_help=False)
    peek.add_argument("--config", default=None)
    known, _ = peek.parse_known_args(argv)
    if not known.config:
        return {}
    with open(known.config) as fh:
        return {k.replace("-", "_"): v for k, v in json.load(fh).items()}


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        parser = build_parser()
        config = _peek_config(argv)
        if config:
            for action in parser._actions:
                if isinstance(action, argparse._SubParsersAction):
                    for sub in action.choices.values():
                        known = {a.dest for a in sub._actions}
                        sub.set_defaults(**{k: v for k, v in config.items() if k in known})
        args = parser.parse_args(argv)
        _require(args, "m")
        if args.command == "classify" and not (args.event or args.system):
            raise ValueError("classify needs --event or --system")
        if args.command in ("estimate", "scan"):
            _require(args, "event", "n-grid")
        if args.command == "anr":
            _require(args, "n-grid")
        return args.func(args)
    except (StateSpaceLimitError, UnsupportedSizeError, UnsupportedEventError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DegenerateDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
