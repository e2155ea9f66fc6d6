"""Single-agent preference models with exact rational probabilities.

The adversary's set of allowed distributions is represented as a finite,
explicit list (PiSet).  Finite grids are conservative: any convex-hull witness
found against a finite subset is a witness against the full set, so
polynomial-case verdicts are sound; exponential-case verdicts are relative to
the supplied members only.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core import (
    Permutation,
    Ranking,
    enumerate_rankings,
    parse_ranking,
    ranking_action,
)


@dataclass(frozen=True)
class Distribution:
    """Strictly positive exact distribution over the m! rankings."""

    m: int
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.probs) != math.factorial(self.m):
            raise ValueError("probs length must be m!")
        if any(p <= 0 for p in self.probs):
            raise ValueError("all probabilities must be strictly positive")
        if sum(self.probs) != 1:
            raise ValueError("probabilities must sum to exactly 1")

    def min_prob(self) -> Fraction:
        return min(self.probs)


def distribution_from_weights(m: int, weights) -> Distribution:
    weights = [Fraction(w) for w in weights]
    total = sum(weights)
    return Distribution(m, tuple(w / total for w in weights))


def uniform_distribution(m: int) -> Distribution:
    q = math.factorial(m)
    return Distribution(m, (Fraction(1, q),) * q)


def apply_to_distribution(sigma: Permutation, d: Distribution) -> Distribution:
    """Relabel alternatives: result[index(sigma(R))] = d[index(R)]."""
    act = ranking_action(sigma)
    out = [Fraction(0)] * len(d.probs)
    for i, p in enumerate(d.probs):
        out[act[i]] = p
    return Distribution(d.m, tuple(out))


@dataclass(frozen=True)
class PiSet:
    """Finite stand-in for the adversary's closed set of distributions."""

    m: int
    members: tuple[Distribution, ...]
    epsilon: Fraction

    def __post_init__(self):
        if not self.members:
            raise ValueError("PiSet needs at least one member")
        if len(set(self.members)) != len(self.members):
            raise ValueError("duplicate members")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        for d in self.members:
            if d.m != self.m:
                raise ValueError("member dimension mismatch")
            if d.min_prob() < self.epsilon:
                raise ValueError("member entry below epsilon")


def _pi_set(m: int, members) -> PiSet:
    deduped = []
    for d in members:
        if d not in deduped:
            deduped.append(d)
    eps = min(d.min_prob() for d in deduped)
    return PiSet(m, tuple(deduped), eps)


@dataclass(frozen=True)
class MallowsParams:
    central: Ranking
    phi: Fraction

    def __post_init__(self):
        if not 0 < self.phi <= 1:
            raise ValueError("phi must lie in (0, 1]")


@dataclass(frozen=True)
class PlackettLuceParams:
    theta: tuple[Fraction, ...]

    def __post_init__(self):
        if any(t <= 0 for t in self.theta):
            raise ValueError("theta entries must be positive")
        if sum(self.theta) != 1:
            raise ValueError("theta must sum to 1")


def kendall_tau(r: Ranking, w: Ranking) -> int:
    """Number of pairwise disagreements between two rankings."""
    pos = {a: i for i, a in enumerate(w.order)}
    dist = 0
    for i, a in enumerate(r.order):
        for b in r.order[i + 1 :]:
            if pos[a] > pos[b]:
                dist += 1
    return dist


def mallows_pmf(params: MallowsParams) -> Distribution:
    """probs[W] proportional to phi^(pairwise disagreements with the central)."""
    m = params.central.m
    weights = [params.phi ** kendall_tau(params.central, w) for w in enumerate_rankings(m)]
    z = sum(weights)
    return Distribution(m, tuple(w / z for w in weights))


def plackett_luce_pmf(params: PlackettLuceParams) -> Distribution:
    m = len(params.theta)
    probs = []
    for r in enumerate_rankings(m):
        p = Fraction(1)
        remaining = sum(params.theta)
        for a in r.order[:-1]:
            p *= params.theta[a - 1] / remaining
            remaining -= params.theta[a - 1]
        probs.append(p)
    return Distribution(m, tuple(probs))


def impartial_culture(m: int) -> PiSet:
    return _pi_set(m, [uniform_distribution(m)])


def mallows_grid(m: int, phi_values, centrals="all") -> PiSet:
    """Cartesian grid of Mallows distributions, deduplicated."""
    phi_values = [Fraction(phi) for phi in phi_values]
    if not phi_values:
        raise ValueError("empty phi grid")
    if centrals == "all":
        centrals = enumerate_rankings(m)
    centrals = list(centrals)
    if not centrals:
        raise ValueError("empty central grid")
    members = [
        mallows_pmf(MallowsParams(central, phi)) for phi in phi_values for central in centrals
    ]
    return _pi_set(m, members)


def plackett_luce_set(m: int, thetas) -> PiSet:
    members = []
    for theta in thetas:
        params = PlackettLuceParams(tuple(Fraction(t) for t in theta))
        if len(params.theta) != m:
            raise ValueError("theta length mismatch")
        members.append(plackett_luce_pmf(params))
    return _pi_set(m, members)


def explicit_set(m: int, vectors) -> PiSet:
    return _pi_set(m, [Distribution(m, tuple(Fraction(p) for p in v)) for v in vectors])


@lru_cache(maxsize=None)
def _cumulative_table(d: Distribution) -> np.ndarray:
    return np.cumsum(np.array([float(p) for p in d.probs]))


def sample_ranking(d: Distribution, rng: np.random.Generator) -> Ranking:
    """Draw one ranking; probabilities converted to a double cumulative table once."""
    cum = _cumulative_table(d)
    i = int(np.searchsorted(cum, rng.random(), side="right"))
    return enumerate_rankings(d.m)[min(i, len(cum) - 1)]


# --- PiSet file format -----------------------------------------------------
#
# JSON with rationals serialized as "p/q" strings, one of:
#   {"kind": "ic", "m": 3}
#   {"kind": "mallows", "m": 3, "phi": ["1/2"], "centrals": "all" | ["1>2>3", ...]}
#   {"kind": "plackett_luce", "m": 3, "thetas": [["1/2", "1/4", "1/4"]]}
#   {"kind": "explicit", "m": 3, "members": [["1/6", ...], ...]}


def _frac(text) -> Fraction:
    return Fraction(str(text))


def pi_set_from_spec(spec: dict) -> PiSet:
    kind = spec["kind"]
    m = int(spec["m"])
    if kind == "ic":
        return impartial_culture(m)
    if kind == "mallows":
        centrals = spec.get("centrals", "all")
        if centrals != "all":
            centrals = [parse_ranking(c) for c in centrals]
        return mallows_grid(m, [_frac(phi) for phi in spec["phi"]], centrals)
    if kind == "plackett_luce":
        return plackett_luce_set(m, [[_frac(t) for t in theta] for theta in spec["thetas"]])
    if kind == "explicit":
        return explicit_set(m, [[_frac(p) for p in v] for v in spec["members"]])
    raise ValueError(f"unknown PiSet kind {kind!r}")


def pi_set_to_spec(pi: PiSet) -> dict:
    return {
        "kind": "explicit",
        "m": pi.m,
        "members": [[str(p) for p in d.probs] for d in pi.members],
    }


def load_pi_set(path) -> PiSet:
    with open(path) as fh:
        return pi_set_from_spec(json.load(fh))


def save_pi_set(pi: PiSet, path) -> None:
    with open(path, "w") as fh:
        json.dump(pi_set_to_spec(pi), fh, indent=1)
