import random
from fractions import Fraction as F
from itertools import permutations

import pytest

from smoothvote.core import (
    Histogram,
    all_permutations,
    apply_to_profile,
    enumerate_rankings,
    histogram,
    parse_ranking,
    profile_from_orders,
    profiles_with_histogram,
)
from smoothvote.rules import (
    FixedAgentTB,
    LexTB,
    MpsrThenTB,
    RAno,
    RNeu,
    ResoluteRule,
    anr_indicator,
    borda,
    break_tie,
    canonical_orbit_representative,
    decide,
    impossibility_set_nonempty,
    in_anr_impossibility_set,
    moulin_exists,
    mpsr,
    parse_rule,
    plurality,
    positional_cowinners,
    positional_scores,
    scoring_vector,
    winner_of_histogram,
)
from oracles import all_histograms


def test_scoring_vector_validation():
    with pytest.raises(ValueError):
        scoring_vector(3, [0, 1, 2])
    with pytest.raises(ValueError):
        scoring_vector(3, [1, 1, 1])
    assert borda(3).s == (F(2), F(1), F(0))
    assert plurality(3).s == (F(1), F(0), F(0))


def test_positional_scores_examples():
    h = histogram(profile_from_orders(3, [(1, 2, 3), (2, 3, 1)]))
    assert positional_scores(borda(3), h) == (F(2), F(3), F(1))
    assert positional_cowinners(borda(3), h) == {2}
    uniform = Histogram(3, (1,) * 6)
    assert positional_cowinners(borda(3), uniform) == {1, 2, 3}
    h2 = histogram(profile_from_orders(3, [(1, 2, 3), (2, 1, 3)]))
    assert positional_cowinners(plurality(3), h2) == {1, 2}


def test_mpsr_examples():
    assert mpsr(Histogram(3, (2, 1, 0, 0, 0, 0))).index == 0
    assert mpsr(Histogram(3, (3, 5, 3, 5, 4, 4))) is None
    assert mpsr(Histogram(3, (1, 1, 1, 1, 1, 1))) is None
    # zero can be a singleton count too
    assert mpsr(Histogram(3, (1, 1, 2, 2, 3, 0))).index == 4


def test_break_tie_chain():
    h = Histogram(3, (2, 1, 0, 0, 0, 0))
    tb = MpsrThenTB(LexTB(parse_ranking("3>2>1")))
    assert break_tie({1, 2}, mpsr(h)) == 1
    uniform = Histogram(3, (1,) * 6)
    assert mpsr(uniform) is None
    assert break_tie({1, 2}, parse_ranking("3>2>1")) == 2
    with pytest.raises(ValueError):
        MpsrThenTB(MpsrThenTB(LexTB(parse_ranking("1>2>3"))))


def test_decide():
    p = profile_from_orders(3, [(1, 2, 3), (2, 1, 3)])
    lex = ResoluteRule(plurality(3), LexTB(parse_ranking("2>1>3")))
    assert decide(lex, p) == 2
    fa = ResoluteRule(plurality(3), FixedAgentTB(2))
    assert decide(fa, p) == 2
    with pytest.raises(ValueError):
        decide(ResoluteRule(plurality(3), FixedAgentTB(5)), p)
    unique = profile_from_orders(3, [(1, 2, 3)])
    assert decide(lex, unique) == 1
    assert winner_of_histogram(lex, histogram(p)) == 2


def test_mpsr_backup_independence():
    # whenever the singleton ranking exists, the backup never matters
    for h in all_histograms(3, 4):
        if mpsr(h) is None:
            continue
        winners = {
            winner_of_histogram(
                ResoluteRule(borda(3), MpsrThenTB(LexTB(backup))), h
            )
            for backup in enumerate_rankings(3)
        }
        assert len(winners) == 1


def test_anr_indicator_lex_m2():
    p = profile_from_orders(2, [(1, 2), (2, 1)])
    rule = ResoluteRule(borda(2), LexTB(parse_ranking("1>2")))
    assert anr_indicator(rule, p) == (1, 0)


def test_anr_indicator_unique_winner():
    p = profile_from_orders(3, [(1, 2, 3), (1, 3, 2), (2, 1, 3)])
    rule = ResoluteRule(borda(3), LexTB(parse_ranking("1>2>3")))
    assert anr_indicator(rule, p) == (1, 1)


def test_anr_indicator_fixed_agent():
    p = profile_from_orders(2, [(1, 2), (2, 1)])
    rule = ResoluteRule(plurality(2), FixedAgentTB(1))
    s_ano, s_neu = anr_indicator(rule, p)
    assert s_ano == 0
    assert s_neu == 1


def test_orbit_representative():
    h = Histogram(3, (0, 2, 1, 0, 0, 0))
    h_star, sigma = canonical_orbit_representative(h)
    from smoothvote.core import apply_to_histogram

    assert apply_to_histogram(sigma, h_star) == h
    for tau in all_permutations(3):
        assert not apply_to_histogram(tau, h).counts < h_star.counts


def test_rano_rneu_fallbacks():
    uniform_p = profile_from_orders(
        3, [(1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)]
    )
    assert in_anr_impossibility_set(histogram(uniform_p))
    assert RAno().winner(uniform_p) == 1
    assert RNeu().winner(uniform_p) == 1  # agent 1 ranks 1 first


def test_rano_order_invariance():
    votes = [(1, 2, 3), (1, 2, 3), (2, 3, 1)]
    winners = {RAno().winner(profile_from_orders(3, list(p))) for p in permutations(votes)}
    assert len(winners) == 1
    winners = {RNeu().winner(profile_from_orders(3, list(p))) for p in permutations(votes)}
    assert len(winners) == 1  # outside the impossibility set, also order-free


def test_rneu_neutrality_random():
    rng = random.Random(3)
    rankings = enumerate_rankings(3)
    checked = 0
    while checked < 200:
        votes = [rankings[rng.randrange(6)].order for _ in range(rng.randrange(1, 7))]
        p = profile_from_orders(3, votes)
        if in_anr_impossibility_set(histogram(p)):
            continue
        checked += 1
        for sigma in all_permutations(3):
            assert RNeu().winner(apply_to_profile(sigma, p)) == sigma(RNeu().winner(p))
            assert RAno().winner(apply_to_profile(sigma, p)) == sigma(RAno().winner(p))


def battery(m):
    lex = parse_ranking(">".join(str(a) for a in range(1, m + 1)))
    return [
        ResoluteRule(borda(m), LexTB(lex)),
        ResoluteRule(plurality(m), LexTB(lex)),
        ResoluteRule(borda(m), FixedAgentTB(1)),
        ResoluteRule(borda(m), MpsrThenTB(LexTB(lex))),
        RAno(),
        RNeu(),
    ]


def test_impossibility_profiles_violate():
    # on every profile whose stabilizer covers, no rule gets both axioms
    for n in range(1, 6):
        for h in all_histograms(3, n):
            if not in_anr_impossibility_set(h):
                continue
            for p in profiles_with_histogram(h):
                for rule in battery(3):
                    s_ano, s_neu = anr_indicator(rule, p)
                    assert s_ano + s_neu <= 1


def test_mpsr_lex_is_anonymous():
    rule = ResoluteRule(borda(3), MpsrThenTB(LexTB(parse_ranking("1>2>3"))))
    rng = random.Random(5)
    rankings = enumerate_rankings(3)
    for _ in range(50):
        votes = [rankings[rng.randrange(6)].order for _ in range(rng.randrange(1, 6))]
        p = profile_from_orders(3, votes)
        s_ano, _ = anr_indicator(rule, p)
        assert s_ano == 1


def test_moulin_examples():
    assert moulin_exists(4, 2) is False
    assert moulin_exists(3, 2) is True
    assert moulin_exists(3, 3) is False
    assert moulin_exists(5, 6) is False  # 5 = 2 + 3
    assert moulin_exists(7, 4) is True  # divisors 2, 4 cannot sum to 7
    with pytest.raises(ValueError):
        moulin_exists(1, 2)


def test_moulin_matches_direct_search_small():
    for m in (3, 4):
        for n in range(2, 7):
            assert moulin_exists(m, n) == (not impossibility_set_nonempty(m, n))


def test_rule_parsing():
    rule = parse_rule("borda+lex:1>2>3", 3)
    assert isinstance(rule.tiebreaker, LexTB)
    rule = parse_rule("plurality+fa:1", 3)
    assert isinstance(rule.tiebreaker, FixedAgentTB)
    rule = parse_rule("borda+mpsr(lex:3>2>1)", 3)
    assert isinstance(rule.tiebreaker, MpsrThenTB)
    assert isinstance(parse_rule("r_ano", 3), RAno)
    assert isinstance(parse_rule("r_neu", 3), RNeu)
    assert parse_rule("2,1,0+lex:1>2>3", 3).scoring == borda(3)
    with pytest.raises(ValueError):
        parse_rule("borda", 3)
