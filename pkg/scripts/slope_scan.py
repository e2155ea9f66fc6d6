#!/usr/bin/env python3
"""Measure polynomial decay slopes of cataloged events under the uniform model.

For each event the exact oracle evaluates the probability over an n grid that
respects the event's divisibility constraints, then fits log p against log n
and compares the slope with the classifier's predicted exponent.
"""

import argparse
import sys

from smoothvote.classifier import classify, event_verdict
from smoothvote.constraints import ConstraintSystem
from smoothvote.models import impartial_culture
from smoothvote.probability import AgentMix, exact_event_probability, fit_power_law
from smoothvote.tally import EventSpec


BORDA_PAIR = ConstraintSystem(
    6,
    ((1, 2, -1, -2, 1, -1), (1, 1, -1, -1, 1, -1)),
    ((-2, -1, -1, 1, 1, 2), (-1, -1, -1, 1, 1, 1), (-1, 1, -1, -1, 1, 1)),
    label="borda-pair",
)

EXPERIMENTS = [
    ("wcw:k=2", EventSpec("wcw", k=2), list(range(10, 61, 2))),
    ("borda-pair", BORDA_PAIR, list(range(10, 61, 2))),
    ("tmn", EventSpec("tmn"), list(range(6, 61, 3))),
    ("mpsr-empty", EventSpec("mpsr-empty"), list(range(10, 61, 2))),
]


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=60)
    args = parser.parse_args()

    uni = impartial_culture(3).members[0]
    ic = impartial_culture(3)
    print("event,n,probability")
    summaries = []
    for name, event, grid in EXPERIMENTS:
        grid = [n for n in grid if n <= args.max_n]
        ps = []
        for n in grid:
            p = float(exact_event_probability(event, AgentMix.iid(uni, n)).value)
            ps.append(p)
            print(f"{name},{n},{p!r}")
        fit = fit_power_law(grid, ps)
        if isinstance(event, EventSpec):
            predicted = str(event_verdict(event, ic).exponent)
        else:
            predicted = str(classify(event, ic).exponent)
        summaries.append((name, fit.slope, fit.slope_stderr, predicted))
    for name, slope, stderr, predicted in summaries:
        print(f"# {name}: fitted {slope:.3f} +/- {stderr:.3f}, predicted {predicted}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
