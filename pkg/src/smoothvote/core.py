"""Rankings, alternative permutations, profiles, histograms, and permutation groups.

Alternatives are the integers 1..m.  A ranking is a linear order over them,
identified with its lexicographic rank in 0..m!-1, which fixes the coordinate
layout of every histogram / distribution vector in the package.  m is capped
at 6 (m! = 720 coordinates).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _it_permutations

MAX_ALTERNATIVES = 6


class UnsupportedSizeError(ValueError):
    """Requested m (or enumeration size) outside the supported range."""


def _check_m(m: int) -> None:
    if not 2 <= m <= MAX_ALTERNATIVES:
        raise UnsupportedSizeError(f"m={m} not supported (need 2 <= m <= {MAX_ALTERNATIVES})")


def _lex_index(order: tuple[int, ...]) -> int:
    # Lehmer code of the one-line sequence.
    m = len(order)
    index = 0
    for i, a in enumerate(order):
        smaller = sum(1 for b in order[i + 1 :] if b < a)
        index = index * (m - i) + smaller
    return index


def _lex_unrank(m: int, index: int) -> tuple[int, ...]:
    avail = list(range(1, m + 1))
    order = []
    for i in range(m):
        f = math.factorial(m - 1 - i)
        j, index = divmod(index, f)
        order.append(avail.pop(j))
    return tuple(order)


@dataclass(frozen=True)
class Ranking:
    """A linear order over 1..m, most preferred first."""

    m: int
    index: int
    order: tuple[int, ...]

    def rank_of(self, a: int) -> int:
        """1-based position of alternative a (1 = most preferred)."""
        return self.order.index(a) + 1

    def prefers(self, a: int, b: int) -> bool:
        return self.order.index(a) < self.order.index(b)

    @property
    def top(self) -> int:
        return self.order[0]

    def __str__(self) -> str:
        return ">".join(str(a) for a in self.order)


def ranking_from_order(order) -> Ranking:
    order = tuple(int(a) for a in order)
    m = len(order)
    _check_m(m)
    if sorted(order) != list(range(1, m + 1)):
        raise ValueError(f"not a permutation of 1..{m}: {order}")
    return Ranking(m, _lex_index(order), order)


def ranking_from_index(m: int, index: int) -> Ranking:
    _check_m(m)
    if not 0 <= index < math.factorial(m):
        raise ValueError(f"ranking index {index} out of range for m={m}")
    return Ranking(m, index, _lex_unrank(m, index))


def parse_ranking(text: str) -> Ranking:
    """Parse the text form "1>2>3"."""
    return ranking_from_order(int(part) for part in text.split(">"))


@lru_cache(maxsize=None)
def enumerate_rankings(m: int) -> tuple[Ranking, ...]:
    """All m! rankings in lexicographic order; position equals .index."""
    _check_m(m)
    out = tuple(
        Ranking(m, i, order) for i, order in enumerate(_it_permutations(range(1, m + 1)))
    )
    assert all(r.index == _lex_index(r.order) for r in out)
    return out


@dataclass(frozen=True)
class Permutation:
    """A bijection on 1..m in one-line form: image[a-1] = sigma(a)."""

    m: int
    image: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.image[a - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """self o other: a -> self(other(a))."""
        if self.m != other.m:
            raise ValueError("dimension mismatch")
        return Permutation(self.m, tuple(self.image[b - 1] for b in other.image))

    def inverse(self) -> "Permutation":
        inv = [0] * self.m
        for a, b in enumerate(self.image, start=1):
            inv[b - 1] = a
        return Permutation(self.m, tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(b == a for a, b in enumerate(self.image, start=1))

    def cycle_form(self) -> str:
        """Display form, e.g. "(1,2,3)" or "Id"."""
        seen = set()
        cycles = []
        for a in range(1, self.m + 1):
            if a in seen or self(a) == a:
                seen.add(a)
                continue
            cycle = [a]
            b = self(a)
            while b != a:
                cycle.append(b)
                b = self(b)
            seen.update(cycle)
            cycles.append("(" + ",".join(map(str, cycle)) + ")")
        return "".join(cycles) if cycles else "Id"

    def __str__(self) -> str:
        return self.cycle_form()


def identity_permutation(m: int) -> Permutation:
    return Permutation(m, tuple(range(1, m + 1)))


def permutation_from_cycles(m: int, *cycles) -> Permutation:
    """Build from cycle form, e.g. permutation_from_cycles(3, (1,2,3))."""
    image = list(range(1, m + 1))
    for cycle in cycles:
        cycle = tuple(cycle)
        for i, a in enumerate(cycle):
            image[a - 1] = cycle[(i + 1) % len(cycle)]
    return Permutation(m, tuple(image))


@lru_cache(maxsize=None)
def all_permutations(m: int) -> tuple[Permutation, ...]:
    if not 1 <= m <= 7:
        raise UnsupportedSizeError(f"m={m}")
    return tuple(
        Permutation(m, image) for image in _it_permutations(range(1, m + 1))
    )


def apply_to_ranking(sigma: Permutation, r: Ranking) -> Ranking:
    """Relabel alternatives in a ranking: (a1,...,am) -> (sigma(a1),...,sigma(am))."""
    if sigma.m != r.m:
        raise ValueError("dimension mismatch")
    return ranking_from_order(sigma(a) for a in r.order)


@lru_cache(maxsize=None)
def ranking_action(sigma: Permutation) -> tuple[int, ...]:
    """act[i] = index of sigma applied to the ranking with index i."""
    rankings = enumerate_rankings(sigma.m)
    return tuple(apply_to_ranking(sigma, r).index for r in rankings)


@dataclass(frozen=True)
class Profile:
    """An ordered list of votes; agent identity is the position (1-based)."""

    m: int
    votes: tuple[Ranking, ...]

    def __post_init__(self):
        if any(v.m != self.m for v in self.votes):
            raise ValueError("all votes must share the same m")

    @property
    def n(self) -> int:
        return len(self.votes)


def profile_from_orders(m: int, orders) -> Profile:
    return Profile(m, tuple(ranking_from_order(o) for o in orders))


def apply_to_profile(sigma: Permutation, p: Profile) -> Profile:
    return Profile(p.m, tuple(apply_to_ranking(sigma, v) for v in p.votes))


@dataclass(frozen=True)
class Histogram:
    """Counts of each ranking, indexed by canonical ranking index."""

    m: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != math.factorial(self.m):
            raise ValueError("counts length must be m!")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be nonnegative")

    @property
    def n(self) -> int:
        return sum(self.counts)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.counts)


def parse_histogram(m: int, text: str) -> Histogram:
    return Histogram(m, tuple(int(part) for part in text.split(",")))


def histogram(p: Profile) -> Histogram:
    counts = [0] * math.factorial(p.m)
    for v in p.votes:
        counts[v.index] += 1
    return Histogram(p.m, tuple(counts))


def profiles_with_histogram(h: Histogram):
    """All ordered profiles whose histogram is h (use only for tiny n)."""
    rankings = enumerate_rankings(h.m)
    votes = []
    for i, c in enumerate(h.counts):
        votes.extend([rankings[i]] * c)
    seen = set()
    for perm in _it_permutations(votes):
        if perm not in seen:
            seen.add(perm)
            yield Profile(h.m, perm)


def apply_to_histogram(sigma: Permutation, h: Histogram) -> Histogram:
    """Relabel alternatives: result.counts[index(sigma(R))] = h.counts[index(R)]."""
    if sigma.m != h.m:
        raise ValueError("dimension mismatch")
    act = ranking_action(sigma)
    out = [0] * len(h.counts)
    for i, c in enumerate(h.counts):
        out[act[i]] = c
    return Histogram(h.m, tuple(out))


@dataclass(frozen=True)
class PermutationGroup:
    m: int
    elements: frozenset[Permutation]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.sorted_elements())

    def __contains__(self, sigma: Permutation) -> bool:
        return sigma in self.elements

    def sorted_elements(self) -> list[Permutation]:
        return sorted(self.elements, key=lambda s: s.image)

    def validate(self) -> None:
        assert identity_permutation(self.m) in self.elements, "missing identity"
        for a in self.elements:
            assert a.inverse() in self.elements, "not closed under inverse"
            for b in self.elements:
                assert a.compose(b) in self.elements, "not closed under composition"

    def __str__(self) -> str:
        return "{" + ", ".join(str(s) for s in self.sorted_elements()) + "}"


def perm_group_of(h: Histogram) -> PermutationGroup:
    """All alternative relabelings that fix the histogram."""
    members = frozenset(
        sigma for sigma in all_permutations(h.m) if apply_to_histogram(sigma, h) == h
    )
    return PermutationGroup(h.m, members)


def covers(u: PermutationGroup) -> bool:
    """True iff every alternative is moved by some element of u."""
    return all(any(sigma(a) != a for sigma in u.elements) for a in range(1, u.m + 1))


def _mulclose_tuples(m: int, gens, max_order: int | None):
    """Closure of generator images under composition; None once it exceeds max_order."""
    ident = tuple(range(1, m + 1))
    elems = {ident}
    elems.update(gens)
    if max_order is not None and len(elems) > max_order:
        return None
    frontier = list(elems)
    while frontier:
        added = []
        for g in frontier:
            for h in list(elems):
                for p in (
                    tuple(g[b - 1] for b in h),
                    tuple(h[b - 1] for b in g),
                ):
                    if p not in elems:
                        if max_order is not None and len(elems) >= max_order:
                            return None
                        elems.add(p)
                        added.append(p)
        frontier = added
    return frozenset(elems)


def _is_even(image: tuple[int, ...]) -> bool:
    inversions = sum(
        1 for i in range(len(image)) for j in range(i + 1, len(image)) if image[i] > image[j]
    )
    return inversions % 2 == 0


class _IndexedGroupOps:
    """Composition table over element indices of S_m, for fast closures (m <= 5)."""

    def __init__(self, m: int):
        self.images = list(_it_permutations(range(1, m + 1)))
        index = {img: i for i, img in enumerate(self.images)}
        self.comp = [
            [index[tuple(g[b - 1] for b in h)] for h in self.images] for g in self.images
        ]
        self.order = len(self.images)
        self.alternating = frozenset(i for i, img in enumerate(self.images) if _is_even(img))
        self.full = frozenset(range(self.order))

    def close(self, gens, max_order: int | None):
        """Closure as an index set; shortcuts once only S_m (or A_m) can remain.

        A subgroup with more than half of a finite group's elements is the
        whole group, so exceeding order/2 (or |A_m|/2 when all generators are
        even) resolves the closure immediately.
        """
        elems = {0}
        elems.update(gens)
        in_alt = all(g in self.alternating for g in gens)
        half = self.order // 2
        alt_half = len(self.alternating) // 2
        cap = self.order if max_order is None else max_order
        if len(elems) > cap:
            return None
        comp = self.comp
        frontier = list(elems)
        while frontier:
            added = []
            for g in frontier:
                row = comp[g]
                for h in list(elems):
                    for p in (row[h], comp[h][g]):
                        if p not in elems:
                            elems.add(p)
                            if len(elems) > cap:
                                return None
                            if in_alt and len(elems) > alt_half:
                                return None if cap < len(self.alternating) else self.alternating
                            if len(elems) > half:
                                return None if cap < self.order else self.full
                            added.append(p)
            frontier = added
        return frozenset(elems)


@lru_cache(maxsize=None)
def _indexed_ops(m: int) -> _IndexedGroupOps:
    return _IndexedGroupOps(m)


def _group_from_images(m: int, images) -> PermutationGroup:
    return PermutationGroup(m, frozenset(Permutation(m, img) for img in images))


def subgroups(m: int, max_order: int | None = None) -> list[PermutationGroup]:
    """All subgroups of S_m with order <= max_order, by generator-set closure.

    Full enumeration needs m <= 5 (there every subgroup is 2-generated).  For
    m in {6, 7} only max_order <= 6 is supported; groups of order <= 6 are
    cyclic or generated by two involutions, so those generator shapes suffice.
    """
    if m < 1:
        raise UnsupportedSizeError(f"m={m}")
    cap = math.factorial(m) if max_order is None else min(max_order, math.factorial(m))
    found: set[frozenset] = set()
    if m <= 5:
        ops = _indexed_ops(m)
        indices = range(ops.order)
        for g in indices:
            closed = ops.close((g,), cap)
            if closed is not None:
                found.add(closed)
        for a in indices:
            for b in indices[a + 1 :]:
                closed = ops.close((a, b), cap)
                if closed is not None:
                    found.add(closed)
        groups = [
            _group_from_images(m, (ops.images[i] for i in idx_set)) for idx_set in found
        ]
    elif m <= 7 and cap <= 6:
        images = list(_it_permutations(range(1, m + 1)))
        ident = tuple(range(1, m + 1))
        involutions = [
            g for g in images if g != ident and tuple(g[b - 1] for b in g) == ident
        ]
        gen_sets = [(g,) for g in images]
        gen_sets += [
            (a, b) for i, a in enumerate(involutions) for b in involutions[i + 1 :]
        ]
        for gens in gen_sets:
            closed = _mulclose_tuples(m, gens, cap)
            if closed is not None:
                found.add(closed)
        groups = [_group_from_images(m, imgs) for imgs in found]
    else:
        raise UnsupportedSizeError(
            f"subgroup enumeration needs m <= 5, or m <= 7 with max_order <= 6 (got m={m}, max_order={max_order})"
        )
    groups.sort(key=lambda u: (u.order, sorted(s.image for s in u.elements)))
    return groups


def covering_subgroups(m: int, max_order: int | None = None) -> list[PermutationGroup]:
    return [u for u in subgroups(m, max_order) if covers(u)]


def l_star(m: int) -> int:
    """Minimum order of a subgroup of S_m covering all alternatives (closed form)."""
    if m < 2:
        raise ValueError("need m >= 2")
    if m % 2 == 0:
        return 2
    if m % 3 == 0:
        return 3
    if m % 5 == 0:
        return 5
    return 6


def l_star_bruteforce(m: int) -> int:
    """Same value by explicit search over subgroups.

    m <= 5 searches every subgroup; m in {6, 7} searches the order <= 6
    generator shapes, which is exhaustive for the minimum since l_star <= 6.
    """
    if m <= 5:
        groups = subgroups(m)
    elif m <= 7:
        groups = subgroups(m, max_order=6)
    else:
        raise UnsupportedSizeError(f"brute force limited to m <= 7 (got {m})")
    orders = [u.order for u in groups if covers(u)]
    if not orders:
        raise RuntimeError(f"no covering subgroup found for m={m}")
    return min(orders)
