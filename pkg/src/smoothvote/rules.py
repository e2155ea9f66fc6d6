"""Positional scoring rules, tie-breaking mechanisms, and anonymity/neutrality checks.

Includes the orbit-representative constructions of an always-anonymous rule
and an always-neutral rule, and the divisor-sum existence test for rules that
are both at once.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Histogram,
    PermutationGroup,
    Profile,
    Ranking,
    all_permutations,
    apply_to_histogram,
    apply_to_profile,
    covers,
    enumerate_rankings,
    histogram,
    parse_ranking,
    perm_group_of,
    subgroups,
)


@dataclass(frozen=True)
class ScoringVector:
    m: int
    s: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.s) != self.m:
            raise ValueError("scoring vector length must be m")
        if any(a < b for a, b in zip(self.s, self.s[1:])):
            raise ValueError("scores must be nonincreasing")
        if self.s[0] == self.s[-1]:
            raise ValueError("s_1 must exceed s_m")

    def score_of(self, r: Ranking, a: int) -> Fraction:
        return self.s[r.rank_of(a) - 1]


def borda(m: int) -> ScoringVector:
    return ScoringVector(m, tuple(Fraction(m - 1 - i) for i in range(m)))


def plurality(m: int) -> ScoringVector:
    return ScoringVector(m, (Fraction(1),) + (Fraction(0),) * (m - 1))


def scoring_vector(m: int, values) -> ScoringVector:
    return ScoringVector(m, tuple(Fraction(v) for v in values))


def positional_scores(s: ScoringVector, h: Histogram) -> tuple[Fraction, ...]:
    if s.m != h.m:
        raise ValueError("dimension mismatch")
    totals = [Fraction(0)] * s.m
    for r, c in zip(enumerate_rankings(h.m), h.counts):
        if c:
            for pos, a in enumerate(r.order):
                totals[a - 1] += c * s.s[pos]
    return tuple(totals)


def positional_cowinners(s: ScoringVector, h: Histogram) -> frozenset[int]:
    totals = positional_scores(s, h)
    best = max(totals)
    return frozenset(a for a, t in enumerate(totals, start=1) if t == best)


def mpsr(h: Histogram) -> Ranking | None:
    """The unique-count ranking with the largest count, if any count is unique."""
    freq = Counter(h.counts)
    singles = [i for i, c in enumerate(h.counts) if freq[c] == 1]
    if not singles:
        return None
    best = max(singles, key=lambda i: h.counts[i])
    return enumerate_rankings(h.m)[best]


# --- tie-breaking -----------------------------------------------------------


@dataclass(frozen=True)
class LexTB:
    ranking: Ranking


@dataclass(frozen=True)
class FixedAgentTB:
    agent: int

    def __post_init__(self):
        if self.agent < 1:
            raise ValueError("agent index is 1-based")


@dataclass(frozen=True)
class MpsrThenTB:
    backup: "TieBreaker"

    def __post_init__(self):
        if isinstance(self.backup, MpsrThenTB):
            raise ValueError("MPSR backup cannot itself be MPSR")


TieBreaker = LexTB | FixedAgentTB | MpsrThenTB


def break_tie(candidates, r: Ranking) -> int:
    """Candidate ranked highest in r."""
    return min(candidates, key=r.rank_of)


@dataclass(frozen=True)
class ResoluteRule:
    scoring: ScoringVector
    tiebreaker: TieBreaker

    def reads_only_histogram(self) -> bool:
        tb = self.tiebreaker
        if isinstance(tb, MpsrThenTB):
            tb = tb.backup
        return not isinstance(tb, FixedAgentTB)

    def winner(self, p: Profile) -> int:
        return decide(self, p)


def _tb_ranking(tb: TieBreaker, p: Profile, h: Histogram) -> Ranking:
    if isinstance(tb, LexTB):
        return tb.ranking
    if isinstance(tb, FixedAgentTB):
        if tb.agent > p.n:
            raise ValueError(f"fixed agent {tb.agent} out of range for n={p.n}")
        return p.votes[tb.agent - 1]
    if isinstance(tb, MpsrThenTB):
        r = mpsr(h)
        return r if r is not None else _tb_ranking(tb.backup, p, h)
    raise TypeError(tb)


def decide(rule: ResoluteRule, p: Profile) -> int:
    h = histogram(p)
    cowinners = positional_cowinners(rule.scoring, h)
    if len(cowinners) == 1:
        return next(iter(cowinners))
    return break_tie(cowinners, _tb_ranking(rule.tiebreaker, p, h))


def winner_of_histogram(rule: ResoluteRule, h: Histogram) -> int:
    """Winner for histogram-based rules (no fixed-agent tie-breaking)."""
    if not rule.reads_only_histogram():
        raise ValueError("rule depends on agent order")
    cowinners = positional_cowinners(rule.scoring, h)
    if len(cowinners) == 1:
        return next(iter(cowinners))
    tb = rule.tiebreaker
    if isinstance(tb, MpsrThenTB):
        r = mpsr(h)
        if r is None:
            tb = tb.backup
        else:
            return break_tie(cowinners, r)
    assert isinstance(tb, LexTB)
    return break_tie(cowinners, tb.ranking)


# --- anonymity / neutrality -------------------------------------------------


def in_anr_impossibility_set(h: Histogram) -> bool:
    """True iff the histogram's relabeling-stabilizer moves every alternative."""
    return covers(perm_group_of(h))


def anr_indicator(rule, p: Profile) -> tuple[int, int]:
    """(S_ano, S_neu) for a rule at a profile.

    The rule is any object with .winner(profile); anonymity is checked by the
    definitional shortcut: histogram-only rules pass outright, rules that read
    one agent's vote are checked over the reorderings that change that vote.
    """
    winner = rule.winner(p)
    s_neu = 1
    for sigma in all_permutations(p.m):
        if rule.winner(apply_to_profile(sigma, p)) != sigma(winner):
            s_neu = 0
            break

    agent = _order_dependent_agent(rule, p)
    if agent is None:
        s_ano = 1
    else:
        s_ano = 1
        votes = list(p.votes)
        for j, vote in enumerate(votes):
            if vote == votes[agent - 1]:
                continue
            swapped = list(votes)
            swapped[agent - 1], swapped[j] = swapped[j], swapped[agent - 1]
            if rule.winner(Profile(p.m, tuple(swapped))) != winner:
                s_ano = 0
                break
    return s_ano, s_neu


def _order_dependent_agent(rule, p: Profile) -> int | None:
    if isinstance(rule, ResoluteRule):
        tb = rule.tiebreaker
        if isinstance(tb, MpsrThenTB):
            tb = tb.backup
        return tb.agent if isinstance(tb, FixedAgentTB) else None
    if isinstance(rule, RNeu):
        return 1 if in_anr_impossibility_set(histogram(p)) else None
    return None


# --- orbit-representative rules ---------------------------------------------


def canonical_orbit_representative(h: Histogram):
    """Lexicographically smallest relabeling image h*, and sigma with sigma(h*) = h."""
    best = None
    best_sigma = None
    for sigma in all_permutations(h.m):
        image = apply_to_histogram(sigma, h)
        if best is None or image.counts < best.counts:
            best = image
            best_sigma = sigma
    return best, best_sigma.inverse()


def _uncovered_choice(h_star: Histogram) -> int:
    group = perm_group_of(h_star)
    for a in range(1, h_star.m + 1):
        if all(sigma(a) == a for sigma in group.elements):
            return a
    raise AssertionError("histogram outside the impossibility set must leave some alternative fixed")


def _orbit_winner(h: Histogram) -> int:
    h_star, sigma = canonical_orbit_representative(h)
    return sigma(_uncovered_choice(h_star))


@dataclass(frozen=True)
class RAno:
    """Anonymous rule: orbit winner outside the impossibility set, else alternative 1."""

    def winner(self, p: Profile) -> int:
        h = histogram(p)
        if in_anr_impossibility_set(h):
            return 1
        return _orbit_winner(h)


@dataclass(frozen=True)
class RNeu:
    """Neutral rule: orbit winner outside the impossibility set, else agent 1's top."""

    def winner(self, p: Profile) -> int:
        h = histogram(p)
        if in_anr_impossibility_set(h):
            return p.votes[0].top
        return _orbit_winner(h)


# --- existence of anonymous+neutral rules ------------------------------------


def moulin_exists(m: int, n: int) -> bool:
    """True iff m is not a sum of divisors d of n with 2 <= d <= n (repeats allowed)."""
    if m < 2 or n < 2:
        raise ValueError("need m >= 2 and n >= 2")
    divisors = [d for d in range(2, n + 1) if n % d == 0]
    reachable = [False] * (m + 1)
    reachable[0] = True
    for total in range(1, m + 1):
        for d in divisors:
            if d <= total and reachable[total - d]:
                reachable[total] = True
                break
    return not reachable[m]


def impossibility_set_nonempty(m: int, n: int) -> bool:
    """Direct search: is some n-vote histogram invariant under a covering subgroup?

    A histogram invariant under U assigns one count per U-orbit of rankings, so
    existence is a nonnegative integer combination of orbit sizes reaching n.
    """
    rankings = enumerate_rankings(m)
    for u in subgroups(m):
        if not covers(u):
            continue
        orbit_sizes = _orbit_sizes(u, rankings)
        if _reachable(n, sorted(set(orbit_sizes))):
            return True
    return False


def _orbit_sizes(u: PermutationGroup, rankings) -> list[int]:
    from .core import ranking_action

    actions = [ranking_action(sigma) for sigma in u.sorted_elements()]
    seen = set()
    sizes = []
    for r in rankings:
        if r.index in seen:
            continue
        orbit = {act[r.index] for act in actions}
        seen.update(orbit)
        sizes.append(len(orbit))
    return sizes


def _reachable(n: int, sizes) -> bool:
    ok = [False] * (n + 1)
    ok[0] = True
    for total in range(1, n + 1):
        for s in sizes:
            if s <= total and ok[total - s]:
                ok[total] = True
                break
    return ok[n]


# --- rule text encoding -------------------------------------------------------
#
#   "borda+lex:1>2>3"  "plurality+fa:1"  "borda+mpsr(lex:3>2>1)"  "2,1,0+lex:1>2>3"
#   "r_ano"  "r_neu"


def parse_rule(text: str, m: int):
    text = text.strip()
    if text == "r_ano":
        return RAno()
    if text == "r_neu":
        return RNeu()
    try:
        corr, tb = text.split("+", 1)
    except ValueError:
        raise ValueError(f"cannot parse rule {text!r}") from None
    return ResoluteRule(_parse_scoring(corr, m), _parse_tb(tb, m))


def _parse_scoring(text: str, m: int) -> ScoringVector:
    if text == "borda":
        return borda(m)
    if text == "plurality":
        return plurality(m)
    return scoring_vector(m, text.split(","))


def _parse_tb(text: str, m: int) -> TieBreaker:
    if text.startswith("mpsr(") and text.endswith(")"):
        return MpsrThenTB(_parse_tb(text[5:-1], m))
    kind, _, arg = text.partition(":")
    if kind == "lex":
        return LexTB(parse_ranking(arg))
    if kind == "fa":
        return FixedAgentTB(int(arg))
    raise ValueError(f"cannot parse tie-breaker {text!r}")
