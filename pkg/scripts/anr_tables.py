#!/usr/bin/env python3
"""Tables for the anonymity+neutrality analysis.

Part 1: for which (m, n) does an anonymous and neutral resolute rule exist.
Part 2: exact violation probabilities of the tie-breaking battery under the
uniform model, showing the singleton-ranking mechanism's advantage.
"""

import sys

from smoothvote.models import impartial_culture
from smoothvote.probability import AgentMix, AnrViolationEvent, exact_event_probabilities
from smoothvote.rules import moulin_exists, parse_rule


def main() -> int:
    print("# existence of anonymous+neutral rules")
    header = "m\\n " + " ".join(f"{n:>5}" for n in range(2, 13))
    print(header)
    for m in range(2, 7):
        row = " ".join("yes" .rjust(5) if moulin_exists(m, n) else "no".rjust(5) for n in range(2, 13))
        print(f"m={m} {row}")

    print("\n# exact Pr(anonymity or neutrality fails), m=3, uniform model")
    battery = ["borda+lex:1>2>3", "borda+fa:1", "borda+mpsr(lex:1>2>3)", "r_ano", "r_neu"]
    rules = [(text, parse_rule(text, 3)) for text in battery]
    uni = impartial_culture(3).members[0]
    print("n," + ",".join(text for text, _ in rules))
    for n in (12, 24, 36, 48, 60):
        events = [AnrViolationEvent(rule, 3) for _, rule in rules]
        values = [
            float(est.value)
            for est in exact_event_probabilities(events, AgentMix.iid(uni, n))
        ]
        print(f"{n}," + ",".join(repr(v) for v in values))
    return 0


if __name__ == "__main__":
    sys.exit(main())
