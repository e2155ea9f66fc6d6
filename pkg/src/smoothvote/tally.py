"""Majority graphs and the catalog of profile events.

Events are indicator functions of the histogram: Condorcet-cycle structure,
(weak) Condorcet winners, the covering-stabilizer set behind the ANR
impossibility, tie-breaking degeneracy, and positional-score ties.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product

from .core import Histogram, covers, enumerate_rankings, perm_group_of
from .models import Distribution
from .rules import ScoringVector, mpsr, positional_cowinners, scoring_vector


@dataclass(frozen=True)
class WeightedMajorityGraph:
    """Antisymmetric pairwise margins; rational for fractional profiles."""

    m: int
    weights: tuple[tuple, ...]

    def w(self, a: int, b: int):
        return self.weights[a - 1][b - 1]


@dataclass(frozen=True)
class UnweightedMajorityGraph:
    """edge[a][b] = 1 for a -> b, -1 for b -> a, 0 for a tie."""

    m: int
    edge: tuple[tuple[int, ...], ...]

    def has_edge(self, a: int, b: int) -> bool:
        return self.edge[a - 1][b - 1] > 0

    def tied(self, a: int, b: int) -> bool:
        return a != b and self.edge[a - 1][b - 1] == 0

    def ties(self) -> list[tuple[int, int]]:
        return [
            (a, b) for a, b in combinations(range(1, self.m + 1), 2) if self.tied(a, b)
        ]

    def edges(self) -> list[tuple[int, int]]:
        return [
            (a, b)
            for a in range(1, self.m + 1)
            for b in range(1, self.m + 1)
            if self.has_edge(a, b)
        ]


def wmg(x) -> WeightedMajorityGraph:
    """Weighted majority graph of a histogram, or of a distribution as a fractional profile."""
    if isinstance(x, Histogram):
        vec, m = x.counts, x.m
    elif isinstance(x, Distribution):
        vec, m = x.probs, x.m
    else:
        raise TypeError(f"expected Histogram or Distribution, got {type(x)!r}")
    zero = 0 if isinstance(x, Histogram) else Fraction(0)
    weights = [[zero] * m for _ in range(m)]
    for r, c in zip(enumerate_rankings(m), vec):
        if not c:
            continue
        order = r.order
        for i, a in enumerate(order):
            for b in order[i + 1 :]:
                weights[a - 1][b - 1] += c
                weights[b - 1][a - 1] -= c
    return WeightedMajorityGraph(m, tuple(tuple(row) for row in weights))


def umg(g: WeightedMajorityGraph) -> UnweightedMajorityGraph:
    sign = lambda v: (v > 0) - (v < 0)
    return UnweightedMajorityGraph(
        g.m, tuple(tuple(sign(v) for v in row) for row in g.weights)
    )


def condorcet_winner(u: UnweightedMajorityGraph) -> int | None:
    for a in range(1, u.m + 1):
        if all(u.has_edge(a, b) for b in range(1, u.m + 1) if b != a):
            return a
    return None


def weak_condorcet_winners(u: UnweightedMajorityGraph) -> frozenset[int]:
    return frozenset(
        a
        for a in range(1, u.m + 1)
        if not any(u.has_edge(b, a) for b in range(1, u.m + 1))
    )


def _successors(u: UnweightedMajorityGraph, a: int, weak: bool):
    for b in range(1, u.m + 1):
        if b == a:
            continue
        if u.has_edge(a, b) or (weak and u.tied(a, b)):
            yield b


def has_condorcet_cycle(u: UnweightedMajorityGraph, weak: bool = False) -> bool:
    """Directed cycle search; ties count as edges in both directions when weak."""
    color = [0] * (u.m + 1)

    def dfs(a: int) -> bool:
        color[a] = 1
        for b in _successors(u, a, weak):
            if color[b] == 1 or (color[b] == 0 and dfs(b)):
                return True
        color[a] = 2
        return False

    return any(color[a] == 0 and dfs(a) for a in range(1, u.m + 1))


def has_cycle_length_k(u: UnweightedMajorityGraph, k: int, weak: bool = False) -> bool:
    """Simple directed cycle on exactly k vertices."""
    if not 3 <= k <= u.m:
        raise ValueError(f"cycle length {k} invalid for m={u.m}")

    def linked(a, b):
        return u.has_edge(a, b) or (weak and u.tied(a, b))

    for verts in combinations(range(1, u.m + 1), k):
        first = verts[0]
        for rest in permutations(verts[1:]):
            path = (first,) + rest
            if all(linked(path[i], path[(i + 1) % k]) for i in range(k)):
                return True
    return False


def all_umgs(m: int):
    """All sign assignments on the unordered pairs (3^(m(m-1)/2) graphs)."""
    pairs = list(combinations(range(1, m + 1), 2))
    for signs in product((1, 0, -1), repeat=len(pairs)):
        edge = [[0] * m for _ in range(m)]
        for (a, b), s in zip(pairs, signs):
            edge[a - 1][b - 1] = s
            edge[b - 1][a - 1] = -s
        yield UnweightedMajorityGraph(m, tuple(tuple(row) for row in edge))


# --- events -------------------------------------------------------------------


@dataclass(frozen=True)
class EventSpec:
    """A {0,1} event of the histogram.

    kind: "ncc" | "cc" | "cw" | "no-cw" | "wcw" | "no-wcw" | "tmn"
          | "mpsr-empty" | "score-tie"
    k: cycle length for "cc", winner count for "wcw"
    scoring / tied: the positional vector and target co-winner set for "score-tie"
    """

    kind: str
    k: int | None = None
    scoring: ScoringVector | None = None
    tied: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.kind == "cc" and (self.k is None or self.k < 3):
            raise ValueError("cc event needs k >= 3")
        if self.kind == "wcw" and (self.k is None or self.k < 1):
            raise ValueError("wcw event needs k >= 1")
        if self.kind == "score-tie" and (self.scoring is None or len(self.tied) < 2):
            raise ValueError("score-tie event needs a scoring vector and >= 2 tied alternatives")

    def __str__(self) -> str:
        return format_event(self)


def evaluate_event(e: EventSpec, h: Histogram) -> int:
    u = None
    if e.kind in ("ncc", "cc", "cw", "no-cw", "wcw", "no-wcw"):
        u = umg(wmg(h))
    if e.kind == "ncc":
        return int(not has_condorcet_cycle(u))
    if e.kind == "cc":
        if e.k > h.m:
            raise ValueError(f"cycle length {e.k} exceeds m={h.m}")
        return int(has_cycle_length_k(u, e.k))
    if e.kind == "cw":
        return int(condorcet_winner(u) is not None)
    if e.kind == "no-cw":
        return int(condorcet_winner(u) is None)
    if e.kind == "wcw":
        if e.k > h.m:
            raise ValueError(f"winner count {e.k} exceeds m={h.m}")
        return int(len(weak_condorcet_winners(u)) == e.k)
    if e.kind == "no-wcw":
        return int(len(weak_condorcet_winners(u)) == 0)
    if e.kind == "tmn":
        return int(covers(perm_group_of(h)))
    if e.kind == "mpsr-empty":
        return int(mpsr(h) is None)
    if e.kind == "score-tie":
        if e.scoring.m != h.m:
            raise ValueError("scoring vector dimension mismatch")
        return int(positional_cowinners(e.scoring, h) == e.tied)
    raise ValueError(f"unknown event kind {e.kind!r}")


# Text encoding:
#   ncc | cc:k=3 | cw | no-cw | wcw:k=2 | no-wcw | tmn | mpsr-empty
#   score-tie:vec=2,1,0;tied=1,2


def parse_event(text: str, m: int) -> EventSpec:
    text = text.strip()
    if text in ("ncc", "cw", "no-cw", "no-wcw", "tmn", "mpsr-empty"):
        return EventSpec(text)
    kind, _, args = text.partition(":")
    if kind in ("cc", "wcw"):
        key, _, value = args.partition("=")
        if key != "k":
            raise ValueError(f"cannot parse event {text!r}")
        return EventSpec(kind, k=int(value))
    if kind == "score-tie":
        fields = dict(part.split("=", 1) for part in args.split(";"))
        vec = scoring_vector(m, fields["vec"].split(","))
        tied = frozenset(int(a) for a in fields["tied"].split(","))
        return EventSpec(kind, scoring=vec, tied=tied)
    raise ValueError(f"cannot parse event {text!r}")


def format_event(e: EventSpec) -> str:
    if e.kind in ("cc", "wcw"):
        return f"{e.kind}:k={e.k}"
    if e.kind == "score-tie":
        vec = ",".join(str(v) for v in e.scoring.s)
        tied = ",".join(str(a) for a in sorted(e.tied))
        return f"score-tie:vec={vec};tied={tied}"
    return e.kind
