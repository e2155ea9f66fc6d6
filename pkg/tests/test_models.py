import json
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smoothvote.core import all_permutations, apply_to_ranking, enumerate_rankings, parse_ranking
from smoothvote.models import (
    Distribution,
    MallowsParams,
    PiSet,
    PlackettLuceParams,
    apply_to_distribution,
    impartial_culture,
    kendall_tau,
    mallows_grid,
    mallows_pmf,
    pi_set_from_spec,
    pi_set_to_spec,
    plackett_luce_pmf,
    sample_ranking,
    uniform_distribution,
)


def test_kendall_tau():
    r, w = parse_ranking("1>2>3"), parse_ranking("3>2>1")
    assert kendall_tau(r, w) == 3
    assert kendall_tau(r, r) == 0
    assert kendall_tau(r, parse_ranking("1>3>2")) == 1


def test_mallows_uniform_at_phi_one():
    for central in enumerate_rankings(3):
        d = mallows_pmf(MallowsParams(central, F(1)))
        assert d == uniform_distribution(3)


def test_mallows_half():
    d = mallows_pmf(MallowsParams(parse_ranking("1>2>3"), F(1, 2)))
    assert d.probs == (F(8, 21), F(4, 21), F(4, 21), F(2, 21), F(2, 21), F(1, 21))


def test_mallows_phi_out_of_range():
    with pytest.raises(ValueError):
        MallowsParams(parse_ranking("1>2>3"), F(0))
    with pytest.raises(ValueError):
        MallowsParams(parse_ranking("1>2>3"), F(3, 2))


@given(st.integers(1, 40), st.integers(0, 5))
@settings(max_examples=100, deadline=None)
def test_mallows_sums_to_one(num, central_idx):
    phi = F(num, 40)
    d = mallows_pmf(MallowsParams(enumerate_rankings(3)[central_idx], phi))
    assert sum(d.probs) == 1


def test_mallows_neutrality():
    base = mallows_pmf(MallowsParams(parse_ranking("1>2>3"), F(1, 3)))
    for sigma in all_permutations(3):
        relabeled = mallows_pmf(
            MallowsParams(apply_to_ranking(sigma, parse_ranking("1>2>3")), F(1, 3))
        )
        assert apply_to_distribution(sigma, base) == relabeled


def test_plackett_luce_uniform():
    d = plackett_luce_pmf(PlackettLuceParams((F(1, 3),) * 3))
    assert d == uniform_distribution(3)


def test_plackett_luce_example():
    d = plackett_luce_pmf(PlackettLuceParams((F(1, 2), F(1, 4), F(1, 4))))
    assert d.probs[0] == F(1, 4)


@given(st.lists(st.integers(1, 20), min_size=3, max_size=3))
@settings(max_examples=100, deadline=None)
def test_plackett_luce_sums_to_one(weights):
    total = sum(weights)
    theta = tuple(F(w, total) for w in weights)
    d = plackett_luce_pmf(PlackettLuceParams(theta))
    assert sum(d.probs) == 1


def test_impartial_culture():
    pi = impartial_culture(3)
    assert len(pi.members) == 1
    assert pi.members[0] == uniform_distribution(3)
    assert pi.epsilon == F(1, 6)
    assert impartial_culture(4).epsilon == F(1, 24)


def test_mallows_grid_dedup_and_epsilon():
    trivial = mallows_grid(3, [F(1)], "all")
    assert len(trivial.members) == 1
    grid = mallows_grid(3, [F(1, 2)], "all")
    assert len(grid.members) == 6
    assert grid.epsilon == F(1, 21)
    # each member is a relabeling of the first
    base = grid.members[0]
    for member in grid.members:
        assert any(
            apply_to_distribution(sigma, base) == member for sigma in all_permutations(3)
        )


def test_pi_set_epsilon_is_exact_min():
    pi = mallows_grid(3, [F(1, 2), F(2, 3)], "all")
    assert pi.epsilon == min(p for d in pi.members for p in d.probs)


def test_distribution_validation():
    with pytest.raises(ValueError):
        Distribution(3, (F(1, 2), F(1, 2), F(0), F(0), F(0), F(0)))
    with pytest.raises(ValueError):
        Distribution(3, (F(1, 2),) * 6)


def test_pi_set_rejects_duplicates():
    u = uniform_distribution(3)
    with pytest.raises(ValueError):
        PiSet(3, (u, u), F(1, 6))


def test_sampling_deterministic():
    d = mallows_pmf(MallowsParams(parse_ranking("1>2>3"), F(1, 2)))
    a = [sample_ranking(d, np.random.default_rng(5)).index for _ in range(1)]
    seq1 = [sample_ranking(d, rng).index for rng in [np.random.default_rng(5)] for _ in range(20)]
    rng = np.random.default_rng(5)
    seq2 = [sample_ranking(d, rng).index for _ in range(20)]
    assert seq1[0] == a[0]
    rng_a, rng_b = np.random.default_rng(9), np.random.default_rng(9)
    assert [sample_ranking(d, rng_a).index for _ in range(50)] == [
        sample_ranking(d, rng_b).index for _ in range(50)
    ]


def test_sampling_frequencies():
    # point-like distribution: modal ranking dominates
    eps = F(1, 100)
    point = Distribution(3, (1 - 5 * eps, eps, eps, eps, eps, eps))
    rng = np.random.default_rng(11)
    draws = 100_000
    hits = sum(sample_ranking(point, rng).index == 0 for _ in range(draws))
    p = float(1 - 5 * eps)
    sigma = (p * (1 - p) / draws) ** 0.5
    assert abs(hits / draws - p) < 4 * sigma

    rng = np.random.default_rng(12)
    counts = [0] * 6
    for _ in range(draws):
        counts[sample_ranking(uniform_distribution(3), rng).index] += 1
    sigma = (1 / 6 * 5 / 6 / draws) ** 0.5
    for c in counts:
        assert abs(c / draws - 1 / 6) < 4 * sigma


@pytest.mark.parametrize(
    "spec",
    [
        {"kind": "ic", "m": 3},
        {"kind": "mallows", "m": 3, "phi": ["1/2", "1"], "centrals": "all"},
        {"kind": "mallows", "m": 3, "phi": ["1/3"], "centrals": ["2>1>3"]},
        {"kind": "plackett_luce", "m": 3, "thetas": [["1/2", "1/4", "1/4"]]},
    ],
)
def test_pi_set_spec_roundtrip(spec, tmp_path):
    pi = pi_set_from_spec(spec)
    explicit = pi_set_to_spec(pi)
    again = pi_set_from_spec(explicit)
    assert again.members == pi.members
    assert again.epsilon == pi.epsilon
    path = tmp_path / "pi.json"
    path.write_text(json.dumps(explicit))
    from smoothvote.models import load_pi_set

    assert load_pi_set(path).members == pi.members
