"""Exact and Monte Carlo probabilities of events under independent agents.

The exact oracle convolves per-agent distributions over histogram space.
Identically distributed blocks collapse to multinomial weights, so the
i.i.d. path enumerates histograms directly (numpy for the indicators, exact
integer accumulation for the probability); heterogeneous mixes convolve the
per-block multinomial distributions.  Monte Carlo draws whole histograms per
block and shares the vectorized indicators.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import classifier
from .constraints import ConstraintSystem
from .core import Histogram, covers, enumerate_rankings, ranking_action, subgroups
from .models import Distribution, PiSet
from .rules import (
    FixedAgentTB,
    LexTB,
    MpsrThenTB,
    RAno,
    RNeu,
    ResoluteRule,
    break_tie,
    positional_cowinners,
    winner_of_histogram,
)
from .tally import EventSpec, UnweightedMajorityGraph, evaluate_event, format_event


class StateSpaceLimitError(ValueError):
    """Exact evaluation would exceed the supported histogram space."""


@dataclass(frozen=True)
class AgentMix:
    """Run-length assignment of distributions to agents."""

    groups: tuple[tuple[Distribution, int], ...]

    def __post_init__(self):
        if not self.groups:
            raise ValueError("empty mix")
        if any(c < 0 for _, c in self.groups):
            raise ValueError("negative agent count")
        if self.n == 0:
            raise ValueError("mix assigns no agents")
        if len({d.m for d, _ in self.groups}) != 1:
            raise ValueError("mixed dimensions")

    @property
    def n(self) -> int:
        return sum(c for _, c in self.groups)

    @property
    def m(self) -> int:
        return self.groups[0][0].m

    @staticmethod
    def iid(d: Distribution, n: int) -> "AgentMix":
        return AgentMix(((d, n),))


@dataclass(frozen=True)
class Estimate:
    value: object  # Fraction for exact-rational, float otherwise
    stderr: float
    method: str
    samples: int | None = None
    seed: int | None = None

    @property
    def value_float(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    slope_stderr: float
    grid: tuple[tuple[int, float], ...]


# --- histogram events ----------------------------------------------------------


class HistogramEvent:
    """An indicator of the histogram, with an optional vectorized form."""

    m: int
    name: str = "event"

    def indicator(self, h: Histogram) -> bool:
        raise NotImplementedError

    def indicator_columns(self, hs: np.ndarray) -> np.ndarray:
        # fallback: row-by-row; fast paths override
        return np.fromiter(
            (self.indicator(Histogram(self.m, tuple(int(v) for v in row))) for row in hs),
            dtype=bool,
            count=len(hs),
        )


@lru_cache(maxsize=None)
def _pair_matrix(m: int) -> np.ndarray:
    rankings = enumerate_rankings(m)
    pairs = list(combinations(range(1, m + 1), 2))
    mat = np.empty((len(rankings), len(pairs)), dtype=np.int64)
    for r_idx, r in enumerate(rankings):
        for p_idx, (a, b) in enumerate(pairs):
            mat[r_idx, p_idx] = 1 if r.prefers(a, b) else -1
    return mat


def _umg_from_signs(m: int, signs) -> UnweightedMajorityGraph:
    edge = [[0] * m for _ in range(m)]
    for (a, b), s in zip(combinations(range(1, m + 1), 2), signs):
        edge[a - 1][b - 1] = s
        edge[b - 1][a - 1] = -s
    return UnweightedMajorityGraph(m, tuple(tuple(row) for row in edge))


class _SpecEvent(HistogramEvent):
    def __init__(self, e: EventSpec, m: int):
        self.e = e
        self.m = m
        self.name = format_event(e)

    def indicator(self, h: Histogram) -> bool:
        return bool(evaluate_event(self.e, h))

    def indicator_columns(self, hs: np.ndarray) -> np.ndarray:
        kind = self.e.kind
        if kind in ("ncc", "cc", "cw", "no-cw", "wcw", "no-wcw"):
            return self._umg_columns(hs)
        if kind == "tmn":
            if self.m <= 5:
                return self._tmn_columns(hs)
            return super().indicator_columns(hs)
        if kind == "mpsr-empty":
            s = np.sort(hs, axis=1)
            dup = np.empty(s.shape, dtype=bool)
            dup[:, 0] = s[:, 0] == s[:, 1]
            dup[:, -1] = s[:, -1] == s[:, -2]
            dup[:, 1:-1] = (s[:, 1:-1] == s[:, :-2]) | (s[:, 1:-1] == s[:, 2:])
            return dup.all(axis=1)
        if kind == "score-tie":
            return self._score_tie_columns(hs)
        return super().indicator_columns(hs)

    def _umg_columns(self, hs: np.ndarray) -> np.ndarray:
        # the sign pattern of the pairwise margins determines the indicator
        margins = hs @ _pair_matrix(self.m)
        npairs = margins.shape[1]
        weights = 3 ** np.arange(npairs, dtype=np.int64)
        codes = (np.sign(margins) + 1) @ weights
        return _umg_sign_table(self.m, self.e.kind, self.e.k)[codes]

    def _tmn_columns(self, hs: np.ndarray) -> np.ndarray:
        out = np.zeros(len(hs), dtype=bool)
        for pairs in _covering_orbit_pairs(self.m):
            mask = np.ones(len(hs), dtype=bool)
            for i, j in pairs:
                mask &= hs[:, i] == hs[:, j]
            out |= mask
        return out

    def _score_tie_columns(self, hs: np.ndarray) -> np.ndarray:
        scores = hs @ _score_matrix(self.e.scoring)
        best = scores.max(axis=1, keepdims=True)
        mask = scores == best
        target = np.zeros(self.m, dtype=bool)
        for a in self.e.tied:
            target[a - 1] = True
        return (mask == target).all(axis=1)


@lru_cache(maxsize=None)
def _umg_sign_table(m: int, kind: str, k: int | None) -> np.ndarray:
    from itertools import product

    e = EventSpec(kind, k=k)
    npairs = m * (m - 1) // 2
    table = np.zeros(3**npairs, dtype=bool)
    for signs in product((-1, 0, 1), repeat=npairs):
        code = sum((s + 1) * 3**i for i, s in enumerate(signs))
        table[code] = _probe_event(e, _umg_from_signs(m, signs))
    return table


def _probe_event(e: EventSpec, g: UnweightedMajorityGraph) -> bool:
    from .tally import (
        condorcet_winner,
        has_condorcet_cycle,
        has_cycle_length_k,
        weak_condorcet_winners,
    )

    if e.kind == "ncc":
        return not has_condorcet_cycle(g)
    if e.kind == "cc":
        return has_cycle_length_k(g, e.k)
    if e.kind == "cw":
        return condorcet_winner(g) is not None
    if e.kind == "no-cw":
        return condorcet_winner(g) is None
    if e.kind == "wcw":
        return len(weak_condorcet_winners(g)) == e.k
    if e.kind == "no-wcw":
        return not weak_condorcet_winners(g)
    raise AssertionError(e.kind)


@lru_cache(maxsize=None)
def _covering_orbit_pairs(m: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    out = []
    for u in subgroups(m):
        if not covers(u):
            continue
        pairs = set()
        for sigma in u.sorted_elements():
            act = ranking_action(sigma)
            for i, j in enumerate(act):
                if i != j:
                    pairs.add((min(i, j), max(i, j)))
        out.append(tuple(sorted(pairs)))
    return tuple(out)


@lru_cache(maxsize=None)
def _score_matrix_cached(m: int, ints: tuple) -> np.ndarray:
    rankings = enumerate_rankings(m)
    mat = np.empty((len(rankings), m), dtype=np.int64)
    for r_idx, r in enumerate(rankings):
        for a in range(1, m + 1):
            mat[r_idx, a - 1] = ints[r.rank_of(a) - 1]
    return mat


def _score_matrix(s) -> np.ndarray:
    denom = math.lcm(*[v.denominator for v in s.s])
    return _score_matrix_cached(s.m, tuple(int(v * denom) for v in s.s))


class _SystemEvent(HistogramEvent):
    def __init__(self, c: ConstraintSystem, m: int):
        if math.factorial(m) != c.q:
            raise ValueError("dimension mismatch")
        self.c = c
        self.m = m
        self.name = c.label or "system"
        self._e = np.array(c.e_rows, dtype=np.int64).reshape(len(c.e_rows), c.q)
        self._s = np.array(c.s_rows, dtype=np.int64).reshape(len(c.s_rows), c.q)

    def indicator(self, h: Histogram) -> bool:
        from .constraints import satisfies

        return satisfies(h, self.c)

    def indicator_columns(self, hs: np.ndarray) -> np.ndarray:
        ok = np.ones(len(hs), dtype=bool)
        if len(self._e):
            ok &= (hs @ self._e.T == 0).all(axis=1)
        if len(self._s):
            ok &= (hs @ self._s.T < 0).all(axis=1)
        return ok


class AnrViolationEvent(HistogramEvent):
    """Anonymity-or-neutrality failure of a rule, as a histogram event.

    Valid for rules whose violation set is a union of histogram classes:
    positional rules with lexicographic, fixed-agent, or singleton-ranking
    tie-breaking, and the two orbit-representative rules.
    """

    def __init__(self, rule, m: int):
        self.rule = rule
        self.m = m
        self.name = f"anr-violation[{type(rule).__name__}]"
        self._tables: dict = {}

    def indicator(self, h: Histogram) -> bool:
        rule = self.rule
        if isinstance(rule, (RAno, RNeu)):
            return covers(_perm_group(h))
        assert isinstance(rule, ResoluteRule)
        if rule.reads_only_histogram():
            return _neutrality_fails(rule, h)
        # fixed-agent tie-breaking: relabeling commutes with the agent's pick,
        # so only anonymity can fail, and only when support votes disagree
        cowinners = positional_cowinners(rule.scoring, h)
        if len(cowinners) == 1:
            return False
        tb = rule.tiebreaker
        if isinstance(tb, MpsrThenTB):
            from .rules import mpsr

            if mpsr(h) is not None:
                return False
            tb = tb.backup
        assert isinstance(tb, FixedAgentTB)
        rankings = enumerate_rankings(h.m)
        picks = {break_tie(cowinners, rankings[i]) for i, c in enumerate(h.counts) if c}
        return len(picks) > 1

    def indicator_columns(self, hs: np.ndarray) -> np.ndarray:
        rule = self.rule
        if isinstance(rule, (RAno, RNeu)):
            return _SpecEvent(EventSpec("tmn"), self.m).indicator_columns(hs)
        assert isinstance(rule, ResoluteRule)
        scores = hs @ _score_matrix(rule.scoring)
        comask = scores == scores.max(axis=1, keepdims=True)
        codes = comask @ (1 << np.arange(self.m, dtype=np.int64))
        tb = rule.tiebreaker
        if isinstance(tb, LexTB):
            return self._lex_table(tb)[codes]
        if isinstance(tb, MpsrThenTB):
            if not isinstance(tb.backup, LexTB):
                return super().indicator_columns(hs)
            has_mpsr = self._has_unique_count(hs)
            return ~has_mpsr & self._lex_table(tb.backup)[codes]
        if isinstance(tb, FixedAgentTB):
            if self.m > 3:
                return super().indicator_columns(hs)
            support = (hs > 0) @ (1 << np.arange(hs.shape[1], dtype=np.int64))
            table = self._fa_table()
            q = hs.shape[1]
            return table[codes * (1 << q) + support]
        return super().indicator_columns(hs)

    @staticmethod
    def _has_unique_count(hs: np.ndarray) -> np.ndarray:
        s = np.sort(hs, axis=1)
        dup = np.empty(s.shape, dtype=bool)
        dup[:, 0] = s[:, 0] == s[:, 1]
        dup[:, -1] = s[:, -1] == s[:, -2]
        dup[:, 1:-1] = (s[:, 1:-1] == s[:, :-2]) | (s[:, 1:-1] == s[:, 2:])
        return ~dup.all(axis=1)

    def _lex_table(self, tb: LexTB) -> np.ndarray:
        key = ("lex", tb.ranking)
        if key not in self._tables:
            m = self.m
            perms = [s for s in _all_perms(m)]
            table = np.zeros(1 << m, dtype=bool)
            for code in range(1, 1 << m):
                members = [a for a in range(1, m + 1) if code >> (a - 1) & 1]
                w = break_tie(members, tb.ranking)
                viol = False
                for sigma in perms:
                    image = [sigma(a) for a in members]
                    if break_tie(image, tb.ranking) != sigma(w):
                        viol = True
                        break
                table[code] = viol
            self._tables[key] = table
        return self._tables[key]

    def _fa_table(self) -> np.ndarray:
        key = "fa"
        if key not in self._tables:
            m = self.m
            q = math.factorial(m)
            rankings = enumerate_rankings(m)
            table = np.zeros((1 << m) * (1 << q), dtype=bool)
            for code in range(1, 1 << m):
                members = [a for a in range(1, m + 1) if code >> (a - 1) & 1]
                if len(members) == 1:
                    continue
                for support in range(1, 1 << q):
                    picks = {
                        break_tie(members, rankings[i])
                        for i in range(q)
                        if support >> i & 1
                    }
                    table[code * (1 << q) + support] = len(picks) > 1
            self._tables[key] = table
        return self._tables[key]


@lru_cache(maxsize=None)
def _all_perms(m: int):
    from .core import all_permutations

    return all_permutations(m)


@lru_cache(maxsize=None)
def _actions(m: int):
    return {sigma: ranking_action(sigma) for sigma in _all_perms(m)}


def _perm_group(h: Histogram):
    from .core import perm_group_of

    return perm_group_of(h)


def _neutrality_fails(rule: ResoluteRule, h: Histogram) -> bool:
    w = winner_of_histogram(rule, h)
    for sigma, act in _actions(h.m).items():
        permuted = [0] * len(h.counts)
        for i, c in enumerate(h.counts):
            permuted[act[i]] = c
        if winner_of_histogram(rule, Histogram(h.m, tuple(permuted))) != sigma(w):
            return True
    return False


def as_event(e, m: int) -> HistogramEvent:
    if isinstance(e, HistogramEvent):
        return e
    if isinstance(e, EventSpec):
        return _SpecEvent(e, m)
    if isinstance(e, ConstraintSystem):
        return _SystemEvent(e, m)
    raise TypeError(f"cannot interpret {type(e)!r} as an event")


# --- exact oracle ---------------------------------------------------------------


def _check_limits(m: int, n: int) -> None:
    if m <= 3 and n <= 60:
        return
    if m == 4 and n <= 14:
        return
    raise StateSpaceLimitError(
        f"exact oracle supports m<=3 with n<=60 or m=4 with n<=14 (got m={m}, n={n})"
    )


def _histogram_chunks(n: int, q: int):
    """(N, q) int64 arrays which concatenate to all weak compositions of n."""
    if q == 1:
        yield np.array([[n]], dtype=np.int64)
        return
    free = min(3, q - 1)

    def tail(rem: int) -> np.ndarray:
        rng = np.arange(rem + 1, dtype=np.int64)
        if free == 1:
            return np.stack([rng, rem - rng], axis=1)
        if free == 2:
            a = np.repeat(rng, rem + 1)
            b = np.tile(rng, rem + 1)
            keep = a + b <= rem
            a, b = a[keep], b[keep]
            return np.stack([a, b, rem - a - b], axis=1)
        a = rng[:, None, None]
        b = rng[None, :, None]
        c = rng[None, None, :]
        s = a + b + c
        keep = s <= rem
        cols = [
            np.broadcast_to(a, s.shape)[keep],
            np.broadcast_to(b, s.shape)[keep],
            np.broadcast_to(c, s.shape)[keep],
            (rem - s)[keep],
        ]
        return np.stack(cols, axis=1)

    def prefixes(depth: int, rem: int, acc: list):
        if depth == 0:
            yield tuple(acc), rem
            return
        for v in range(rem + 1):
            acc.append(v)
            yield from prefixes(depth - 1, rem - v, acc)
            acc.pop()

    n_prefix = q - 1 - free
    for prefix, rem in prefixes(n_prefix, n, []):
        block = tail(rem)
        if prefix:
            lead = np.tile(np.array(prefix, dtype=np.int64), (len(block), 1))
            yield np.concatenate([lead, block], axis=1)
        else:
            yield block


@lru_cache(maxsize=None)
def _pascal(n: int):
    rows = [[1]]
    for i in range(1, n + 1):
        prev = rows[-1]
        rows.append([1] + [prev[j - 1] + prev[j] for j in range(1, i)] + [1])
    return rows


def _int_weights(d: Distribution) -> tuple[list[int], int]:
    den = math.lcm(*[p.denominator for p in d.probs])
    return [int(p * den) for p in d.probs], den


def _exact_mass(rows: np.ndarray, n: int, pows) -> int:
    """Sum of multinomial weights (times integer probability powers) over rows."""
    pascal = _pascal(n)
    total = 0
    q = rows.shape[1] if len(rows) else 0
    for row in rows.tolist():
        rem = n
        coeff = 1
        for v in row[:-1]:
            coeff *= pascal[rem][v]
            rem -= v
        if pows is not None:
            for i in range(q):
                v = row[i]
                if v:
                    coeff *= pows[i][v]
        total += coeff
    return total


def _iid_exact(events, d: Distribution, n: int, mode: str):
    q = len(d.probs)
    nums, den = _int_weights(d)
    trivial = all(v == 1 for v in nums)
    pows = None
    if not trivial:
        pows = [[v**k for k in range(n + 1)] for v in nums]
    acc_num = [0] * len(events)
    acc_dbl = [0.0] * len(events)
    if mode == "double":
        logp = np.array([math.log(v) - math.log(den) for v in nums])
        lg = np.append(0.0, np.cumsum(np.log(np.arange(1, n + 1)))) if n else np.zeros(1)
    for chunk in _histogram_chunks(n, q):
        masks = [ev.indicator_columns(chunk) for ev in events]
        if mode == "double":
            logw = lg[n] - lg[chunk].sum(axis=1) + chunk @ logp
            for i, mask in enumerate(masks):
                if mask.any():
                    acc_dbl[i] += float(np.exp(logw[mask]).sum())
        else:
            for i, mask in enumerate(masks):
                if mask.any():
                    acc_num[i] += _exact_mass(chunk[mask], n, pows)
    if mode == "double":
        return [float(v) for v in acc_dbl]
    denom = den**n
    return [Fraction(v, denom) for v in acc_num]


def _multinomial_dict(d: Distribution, c: int) -> dict:
    q = len(d.probs)
    out = {}
    pascal = _pascal(c)

    def rec(idx: int, rem: int, coeff: Fraction, acc: list):
        if idx == q - 1:
            key = tuple(acc + [rem])
            out[key] = coeff * d.probs[idx] ** rem
            return
        for v in range(rem + 1):
            rec(idx + 1, rem - v, coeff * pascal[rem][v] * d.probs[idx] ** v, acc + [v])

    rec(0, c, Fraction(1), [])
    return out


def _grouped_exact(events, mix: AgentMix, mode: str):
    q = math.factorial(mix.m)
    states = math.comb(mix.n + q - 1, q - 1)
    if states * max(1, len(mix.groups)) > 5_000_000:
        raise StateSpaceLimitError(
            f"heterogeneous mix needs about {states} histogram states; too many"
        )
    conv = {(0,) * q: Fraction(1)}
    for d, c in mix.groups:
        if c == 0:
            continue
        block = _multinomial_dict(d, c)
        nxt: dict = {}
        for h1, p1 in conv.items():
            for h2, p2 in block.items():
                key = tuple(a + b for a, b in zip(h1, h2))
                nxt[key] = nxt.get(key, Fraction(0)) + p1 * p2
        conv = nxt
    assert sum(conv.values()) == 1
    hs = np.array(sorted(conv.keys()), dtype=np.int64)
    probs = [conv[tuple(int(v) for v in row)] for row in hs]
    out = []
    for ev in events:
        mask = ev.indicator_columns(hs)
        total = sum(p for p, keep in zip(probs, mask) if keep)
        out.append(float(total) if mode == "double" else total)
    return out


def agent_step_distributions(mix: AgentMix):
    """Exact histogram distribution after each agent, one dict per step."""
    q = math.factorial(mix.m)
    conv = {(0,) * q: Fraction(1)}
    for d, c in mix.groups:
        for _ in range(c):
            nxt: dict = {}
            for h, p in conv.items():
                for i, pi in enumerate(d.probs):
                    key = h[:i] + (h[i] + 1,) + h[i + 1 :]
                    nxt[key] = nxt.get(key, Fraction(0)) + p * pi
            conv = nxt
            yield conv


def exact_event_probabilities(events, mix: AgentMix, mode: str = "rational"):
    """One Estimate per event, all from a single sweep of the histogram space."""
    if mode not in ("rational", "double"):
        raise ValueError(f"unknown mode {mode!r}")
    _check_limits(mix.m, mix.n)
    evs = [as_event(e, mix.m) for e in events]
    active = [(d, c) for d, c in mix.groups if c > 0]
    if len(active) == 1:
        values = _iid_exact(evs, active[0][0], active[0][1], mode)
    else:
        values = _grouped_exact(evs, AgentMix(tuple(active)), mode)
    method = f"exact-{mode}"
    return [Estimate(v, 0.0, method) for v in values]


def exact_event_probability(e, mix: AgentMix, mode: str = "rational") -> Estimate:
    return exact_event_probabilities([e], mix, mode)[0]


# --- Monte Carlo ----------------------------------------------------------------


_BATCH = 1 << 17


def mc_estimate(e, mix: AgentMix, samples: int, seed: int) -> Estimate:
    """Sample mean of the indicator over profiles drawn per the mix.

    Batches use seeds derived from the top-level seed, so the estimate is
    reproducible and independent of the batch size.
    """
    if samples < 1:
        raise ValueError("need samples >= 1")
    ev = as_event(e, mix.m)
    q = math.factorial(mix.m)
    pvecs = [
        np.array([float(p) for p in d.probs]) for d, _ in mix.groups
    ]
    pvecs = [v / v.sum() for v in pvecs]
    counts = [c for _, c in mix.groups]
    n_batches = (samples + _BATCH - 1) // _BATCH
    children = np.random.SeedSequence(seed).spawn(n_batches)
    hits = 0
    done = 0
    for child in children:
        b = min(_BATCH, samples - done)
        rng = np.random.Generator(np.random.PCG64(child))
        hs = np.zeros((b, q), dtype=np.int64)
        for pvec, c in zip(pvecs, counts):
            if c:
                hs += rng.multinomial(c, pvec, size=b)
        hits += int(ev.indicator_columns(hs).sum())
        done += b
    p = hits / samples
    stderr = math.sqrt(p * (1 - p) / samples)
    return Estimate(p, stderr, "mc", samples=samples, seed=seed)


# --- adversarial search -----------------------------------------------------------


def adversarial_probability(
    e,
    pi: PiSet,
    n: int,
    direction: str = "sup",
    strategy: str = "iid-extreme",
    method: str = "exact",
    mode: str = "rational",
    samples: int = 100_000,
    seed: int = 0,
):
    """Best event probability over the strategy's candidate mixes.

    iid-extreme tries each member i.i.d.; mixture-witness rebuilds the
    polynomial-case tightness mix from a hull witness of the dominant system
    (falling back to iid-extreme, with a warning, when no such system exists).
    """
    if direction not in ("sup", "inf"):
        raise ValueError("direction must be sup or inf")
    candidates = []
    if strategy == "mixture-witness":
        if not isinstance(e, EventSpec):
            raise ValueError("mixture-witness needs a cataloged event")
        verdict, _, alpha = classifier.event_verdict_detailed(e, pi)
        if verdict.kind != classifier.POLYNOMIAL:
            warnings.warn(
                f"mixture-witness unavailable (verdict {verdict.kind}); using iid-extreme"
            )
            strategy = "iid-extreme"
        else:
            candidates = [_witness_mix(pi, alpha, n)]
    if strategy == "iid-extreme":
        candidates = [AgentMix.iid(d, n) for d in pi.members]
    elif not candidates:
        raise ValueError(f"unknown strategy {strategy!r}")

    scored = []
    for mix in candidates:
        if method == "exact":
            est = exact_event_probability(e, mix, mode)
        else:
            est = mc_estimate(e, mix, samples, seed)
        scored.append((est, mix))
    pick = max if direction == "sup" else min
    return pick(scored, key=lambda pair: pair[0].value_float)


def _witness_mix(pi: PiSet, alpha, n: int) -> AgentMix:
    chosen = [(d, a) for d, a in zip(pi.members, alpha) if a > 0]
    groups = []
    assigned = 0
    for d, a in chosen[:-1]:
        c = int(n * a)  # floor: alpha is an exact Fraction
        groups.append((d, c))
        assigned += c
    groups.append((chosen[-1][0], n - assigned))
    return AgentMix(tuple(groups))


# --- decay-exponent fitting --------------------------------------------------------


def _ols(xs, ys):
    k = len(xs)
    xbar = sum(xs) / k
    ybar = sum(ys) / k
    sxx = sum((x - xbar) ** 2 for x in xs)
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = ybar - slope * xbar
    residuals = [y - (intercept + slope * x) for x, y in zip(xs, ys)]
    ssr = sum(r * r for r in residuals)
    stderr = math.sqrt(ssr / (k - 2) / sxx) if k > 2 else float("inf")
    sst = sum((y - ybar) ** 2 for y in ys)
    r2 = 1.0 if sst == 0 else 1.0 - ssr / sst
    return slope, intercept, stderr, r2


def fit_power_law(ns, ps) -> ExponentFit:
    """OLS of log p against log n."""
    if len(ns) < 3:
        raise ValueError("need at least 3 grid points")
    if len(set(ns)) != len(ns):
        raise ValueError("grid points must be distinct")
    if any(p <= 0 for p in ps):
        raise ValueError("grid probabilities must be positive; exclude zero-probability n")
    xs = [math.log(n) for n in ns]
    ys = [math.log(p) for p in ps]
    slope, intercept, stderr, _ = _ols(xs, ys)
    grid = tuple((int(n), float(p)) for n, p in zip(ns, ps))
    return ExponentFit(slope, intercept, stderr, grid)


def fit_log_linear(ns, ps):
    """(slope, intercept, r2) of log p against n, for exponential-regime checks."""
    xs = [float(n) for n in ns]
    ys = [math.log(p) for p in ps]
    slope, intercept, _, r2 = _ols(xs, ys)
    return slope, intercept, r2


def local_log_slopes(ns, ps):
    """Pairwise log-log slopes; widening magnitudes reject a power law."""
    out = []
    for (n1, p1), (n2, p2) in zip(zip(ns, ps), list(zip(ns, ps))[1:]):
        out.append((math.log(p2) - math.log(p1)) / (math.log(n2) - math.log(n1)))
    return out


def exponent_fit(
    e,
    mix_for_n,
    n_grid,
    method: str = "exact",
    mode: str = "rational",
    samples: int = 100_000,
    seed: int = 0,
) -> ExponentFit:
    """Fit the decay exponent of an event's probability over an n grid."""
    ps = []
    for n in n_grid:
        mix = mix_for_n(n)
        if method == "exact":
            est = exact_event_probability(e, mix, mode)
        else:
            est = mc_estimate(e, mix, samples, seed + n)
        ps.append(est.value_float)
    return fit_power_law(list(n_grid), ps)
