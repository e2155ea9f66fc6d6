"""Smoothed likelihood of voting events.

Encode events over vote histograms as integer constraint systems, classify
their asymptotic likelihood exactly (impossible / exponentially rare /
polynomial with exponent -Rank(E)/2), and verify the predictions with an
exact probability oracle and Monte Carlo simulation.
"""

from .classifier import Verdict, classify, event_verdict, l_pi
from .constraints import ConstraintSystem, enumerate_event_systems, satisfies
from .core import (
    Histogram,
    Permutation,
    PermutationGroup,
    Profile,
    Ranking,
    enumerate_rankings,
    histogram,
    l_star,
    parse_ranking,
    perm_group_of,
    subgroups,
)
from .models import Distribution, PiSet, impartial_culture, mallows_grid
from .probability import (
    AgentMix,
    Estimate,
    ExponentFit,
    adversarial_probability,
    exact_event_probability,
    exponent_fit,
    mc_estimate,
)
from .rules import ResoluteRule, borda, moulin_exists, plurality, positional_cowinners
from .tally import EventSpec, evaluate_event, parse_event, umg, wmg

__version__ = "0.1.0"
