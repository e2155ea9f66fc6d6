"""Integer constraint systems on histogram coordinates, and the per-event families.

A system pairs equality rows E (E.x = 0) with strict rows S (S.x < 0); every
row sums to zero across coordinates, which the rank/decay analysis relies on.
An event corresponds to a finite family of systems with union semantics: the
event holds at a histogram iff some member is satisfied.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations, permutations

from .core import Histogram, PermutationGroup, enumerate_rankings, ranking_action, subgroups, covers
from .rules import ScoringVector
from .tally import (
    EventSpec,
    UnweightedMajorityGraph,
    all_umgs,
    condorcet_winner,
    has_condorcet_cycle,
    weak_condorcet_winners,
)


class UnsupportedEventError(ValueError):
    """Event has no enumerable constraint family at this size."""


class DegenerateGroupError(ValueError):
    """The trivial group produces an empty system (K+L >= 1 is required)."""


@dataclass(frozen=True)
class ConstraintSystem:
    q: int
    e_rows: tuple[tuple[int, ...], ...]
    s_rows: tuple[tuple[int, ...], ...]
    label: str = ""

    def __post_init__(self):
        if len(self.e_rows) + len(self.s_rows) < 1:
            raise ValueError("need at least one constraint row")
        for row in self.e_rows + self.s_rows:
            if len(row) != self.q:
                raise ValueError("row length mismatch")
            if sum(row) != 0:
                raise ValueError("rows must sum to zero across coordinates")


def _normalize_row(row) -> tuple[int, ...] | None:
    g = math.gcd(*[abs(v) for v in row])
    if g == 0:
        return None
    row = tuple(v // g for v in row)
    first = next(v for v in row if v)
    return row if first > 0 else tuple(-v for v in row)


def _dedup_rows(rows, signed: bool) -> tuple[tuple[int, ...], ...]:
    # signed rows (strict inequalities) keep their sign; equality rows do not.
    out = []
    seen = set()
    for row in rows:
        key = tuple(row) if signed else _normalize_row(row)
        if key is None or key in seen:
            continue
        seen.add(key)
        out.append(tuple(row))
    return tuple(out)


def pair_vector(a: int, b: int, m: int) -> tuple[int, ...]:
    """Coefficient +1 at rankings with a above b, else -1; dots the ones vector to 0."""
    if a == b:
        raise ValueError("need two distinct alternatives")
    return tuple(1 if r.prefers(a, b) else -1 for r in enumerate_rankings(m))


def build_umg_system(g: UnweightedMajorityGraph) -> ConstraintSystem:
    """Satisfied by h iff the majority graph of h equals g."""
    m = g.m
    e_rows = [pair_vector(a, b, m) for a, b in g.ties()]
    s_rows = [pair_vector(b, a, m) for a, b in g.edges()]
    return ConstraintSystem(
        math.factorial(m),
        _dedup_rows(e_rows, signed=False),
        _dedup_rows(s_rows, signed=True),
        label=f"umg[{_umg_label(g)}]",
    )


def _umg_label(g: UnweightedMajorityGraph) -> str:
    parts = []
    for a, b in combinations(range(1, g.m + 1), 2):
        if g.has_edge(a, b):
            parts.append(f"{a}>{b}")
        elif g.has_edge(b, a):
            parts.append(f"{b}>{a}")
        else:
            parts.append(f"{a}={b}")
    return ",".join(parts)


def build_group_system(u: PermutationGroup) -> ConstraintSystem:
    """Satisfied by h iff h is invariant under every relabeling in u."""
    if u.order <= 1:
        raise DegenerateGroupError("the trivial group imposes no constraints")
    q = math.factorial(u.m)
    rows = []
    for sigma in u.sorted_elements():
        act = ranking_action(sigma)
        for i in range(q):
            j = act[i]
            if i == j:
                continue
            row = [0] * q
            row[i] = 1
            row[j] = -1
            rows.append(tuple(row))
    label = "group[" + ",".join(str(s) for s in u.sorted_elements() if not s.is_identity) + "]"
    return ConstraintSystem(q, _dedup_rows(rows, signed=False), (), label=label)


def build_partition_system(q: int, classes) -> ConstraintSystem:
    """Ties counts equal within each class; every class must have >= 2 rankings."""
    classes = [sorted(cls) for cls in classes]
    seen = sorted(i for cls in classes for i in cls)
    if seen != list(range(q)):
        raise ValueError("classes must partition the ranking indices")
    rows = []
    for cls in classes:
        if len(cls) < 2:
            raise ValueError("every class must contain at least two rankings")
        for i, j in combinations(cls, 2):
            row = [0] * q
            row[i] = 1
            row[j] = -1
            rows.append(tuple(row))
    label = "partition[" + ";".join(",".join(map(str, cls)) for cls in classes) + "]"
    return ConstraintSystem(q, _dedup_rows(rows, signed=False), (), label=label)


def _integer_score_rows(s: ScoringVector):
    denom = math.lcm(*[v.denominator for v in s.s])
    return [int(v * denom) for v in s.s]


def build_scoring_tie_system(s: ScoringVector, tied, m: int) -> ConstraintSystem:
    """Scores equal inside tied, strictly lower outside; exact co-winner set = tied."""
    tied = sorted(set(tied))
    if len(tied) < 2:
        raise ValueError("need at least two tied alternatives")
    if s.m != m or any(not 1 <= a <= m for a in tied):
        raise ValueError("dimension mismatch")
    ints = _integer_score_rows(s)
    rankings = enumerate_rankings(m)

    def diff_row(a, b):
        return tuple(ints[r.rank_of(a) - 1] - ints[r.rank_of(b) - 1] for r in rankings)

    e_rows = [diff_row(a, b) for a, b in zip(tied, tied[1:])]
    rep = tied[0]
    s_rows = [diff_row(c, rep) for c in range(1, m + 1) if c not in tied]
    tied_txt = ",".join(map(str, tied))
    return ConstraintSystem(
        math.factorial(m),
        _dedup_rows(e_rows, signed=False),
        _dedup_rows(s_rows, signed=True),
        label=f"score-tie[{tied_txt}]",
    )


@dataclass(frozen=True)
class SystemFamily:
    """Union semantics: the event holds iff some member system is satisfied."""

    event: EventSpec
    systems: tuple[ConstraintSystem, ...]

    def __post_init__(self):
        if not self.systems:
            raise ValueError("empty family")
        if len({c.q for c in self.systems}) != 1:
            raise ValueError("members must share the coordinate count")


def _directed_cycles(m: int, k: int):
    for verts in combinations(range(1, m + 1), k):
        first = verts[0]
        for rest in permutations(verts[1:]):
            yield (first,) + rest


def _cycle_system(path, m: int) -> ConstraintSystem:
    k = len(path)
    s_rows = [
        pair_vector(path[(i + 1) % k], path[i], m) for i in range(k)
    ]
    label = "cycle[" + "->".join(map(str, path + (path[0],))) + "]"
    return ConstraintSystem(math.factorial(m), (), _dedup_rows(s_rows, signed=True), label=label)


def iter_event_systems(e: EventSpec, m: int, strengthening: ConstraintSystem | None = None):
    """Lazily yield the event's family, exactly as used in the decay analyses."""
    for c in _iter_raw(e, m):
        yield _strengthen(c, strengthening)


def _strengthen(c: ConstraintSystem, extra: ConstraintSystem | None) -> ConstraintSystem:
    if extra is None:
        return c
    if extra.q != c.q:
        raise ValueError("strengthening dimension mismatch")
    return ConstraintSystem(
        c.q,
        _dedup_rows(c.e_rows + extra.e_rows, signed=False),
        _dedup_rows(c.s_rows + extra.s_rows, signed=True),
        label=f"{c.label}&{extra.label}",
    )


def _iter_raw(e: EventSpec, m: int):
    if e.kind == "ncc":
        for g in all_umgs(m):
            if not has_condorcet_cycle(g):
                yield build_umg_system(g)
    elif e.kind == "cc":
        if e.k > m:
            raise UnsupportedEventError(f"cycle length {e.k} exceeds m={m}")
        for path in _directed_cycles(m, e.k):
            yield _cycle_system(path, m)
    elif e.kind == "cw":
        for g in all_umgs(m):
            if condorcet_winner(g) is not None:
                yield build_umg_system(g)
    elif e.kind == "no-cw":
        for g in all_umgs(m):
            if condorcet_winner(g) is None:
                yield build_umg_system(g)
    elif e.kind == "wcw":
        if e.k > m:
            raise UnsupportedEventError(f"winner count {e.k} exceeds m={m}")
        for g in all_umgs(m):
            if len(weak_condorcet_winners(g)) == e.k:
                yield build_umg_system(g)
    elif e.kind == "no-wcw":
        for g in all_umgs(m):
            if not weak_condorcet_winners(g):
                yield build_umg_system(g)
    elif e.kind == "tmn":
        if m > 5:
            raise UnsupportedEventError("covering-subgroup enumeration needs m <= 5")
        for u in subgroups(m):
            if covers(u):
                yield build_group_system(u)
    elif e.kind == "mpsr-empty":
        if m != 3:
            raise UnsupportedEventError(
                "partition families are enumerated at m=3 only; use the direct indicator otherwise"
            )
        q = math.factorial(m)
        for classes in _set_partitions_min2(list(range(q))):
            yield build_partition_system(q, classes)
    elif e.kind == "score-tie":
        yield build_scoring_tie_system(e.scoring, e.tied, m)
    else:
        raise UnsupportedEventError(f"no constraint family for event kind {e.kind!r}")


def _set_partitions_min2(items):
    """Set partitions with every class of size >= 2, in a canonical order."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    # choose the class containing `first`: at least one more element from rest
    for size in range(1, len(rest) + 1):
        for others in combinations(rest, size):
            cls = [first, *others]
            remaining = [x for x in rest if x not in others]
            if len(remaining) == 1:
                continue
            for tail in _set_partitions_min2(remaining):
                yield [cls] + tail


def enumerate_event_systems(
    e: EventSpec, m: int, strengthening: ConstraintSystem | None = None
) -> SystemFamily:
    return SystemFamily(e, tuple(iter_event_systems(e, m, strengthening)))


def satisfies(h: Histogram, c: ConstraintSystem) -> bool:
    """Exact integer check of E.x = 0 and S.x < 0."""
    if math.factorial(h.m) != c.q:
        raise ValueError("dimension mismatch")
    x = h.counts
    for row in c.e_rows:
        if sum(r * v for r, v in zip(row, x)) != 0:
            return False
    for row in c.s_rows:
        if sum(r * v for r, v in zip(row, x)) >= 0:
            return False
    return True


# --- serialization ------------------------------------------------------------


def system_to_json(c: ConstraintSystem) -> dict:
    return {"q": c.q, "E": [list(r) for r in c.e_rows], "S": [list(r) for r in c.s_rows], "label": c.label}


def system_from_json(data: dict) -> ConstraintSystem:
    return ConstraintSystem(
        int(data["q"]),
        tuple(tuple(int(v) for v in row) for row in data.get("E", [])),
        tuple(tuple(int(v) for v in row) for row in data.get("S", [])),
        label=str(data.get("label", "")),
    )


def load_system(path) -> ConstraintSystem:
    with open(path) as fh:
        return system_from_json(json.load(fh))


def save_system(c: ConstraintSystem, path) -> None:
    with open(path, "w") as fh:
        json.dump(system_to_json(c), fh)
