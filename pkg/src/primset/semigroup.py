"""Exact primitivity by breadth-first search over the generated semigroup.

States are full product patterns.  Layer ``k`` holds the patterns of length-k
products that were not seen in an earlier layer, so a minimal positive product
never revisits a pattern and the number of states is at most ``2**(n*n)``.
Generators are appended on the right in set order, which makes the first
positive pattern found correspond to the lexicographically least shortest
word.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import BoolMatrix, MatrixSet, Word, image, image_table, is_positive, word_product

INF = math.inf

# Per-generator lookup tables cost 2**n ints each.
_TABLE_MAX_N = 16
# Patterns with n*n <= 64 bits are packed into one uint64 and searched layer-wise.
_PACKED_MAX_N = 8
_CHUNK = 1 << 20


class LimitExceeded(RuntimeError):
    """The search ran out of budget; the question is undecided, not answered."""

    def __init__(self, reason: str, explored_states: int, depth: int):
        super().__init__(f"undecided: {reason} (explored {explored_states} states, depth {depth})")
        self.reason = reason
        self.explored_states = explored_states
        self.depth = depth


@dataclass(frozen=True)
class ResourceLimits:
    max_states: int = 10**7
    max_depth: Optional[int] = None
    timeout: Optional[float] = None  # seconds of wall clock

    def depth_for(self, n: int) -> int:
        if self.max_depth is not None:
            return self.max_depth
        # 2**(n*n) is the pigeonhole bound; cap before building a huge int
        return 2 ** (n * n) if n * n < 20 else 10**6


@dataclass(frozen=True)
class Verdict:
    primitive: bool
    witness: Optional[Word]
    explored_states: int
    frontier_depth_reached: int

    @property
    def length(self):
        return len(self.witness) if self.witness is not None else INF


@dataclass
class _Search:
    n: int
    states: list = field(default_factory=list)
    parent: list = field(default_factory=list)
    letter: list = field(default_factory=list)
    index: dict = field(default_factory=dict)

    def add(self, rows, parent, letter) -> int:
        idx = len(self.states)
        self.index[rows] = idx
        self.states.append(rows)
        self.parent.append(parent)
        self.letter.append(letter)
        return idx

    def word(self, idx: int) -> Word:
        out = []
        while idx >= 0:
            out.append(self.letter[idx] + 1)
            idx = self.parent[idx]
        return tuple(reversed(out))


def _explore(s: MatrixSet, limits: ResourceLimits, stop_at_positive: bool, prune_dead: bool):
    """Run the layered BFS.  Returns ``(search, positive_index or None, depth)``."""
    n = s.n
    full = (1 << n) - 1
    target = (full,) * n
    gens = [a.rows for a in s.mats]
    tables = [image_table(g) for g in gens] if n <= _TABLE_MAX_N else None
    max_depth = limits.depth_for(n)
    deadline = None if limits.timeout is None else time.monotonic() + limits.timeout
    search = _Search(n)

    def budget(depth):
        if len(search.states) > limits.max_states:
            raise LimitExceeded("max states", len(search.states), depth)
        if deadline is not None and time.monotonic() > deadline:
            raise LimitExceeded("timeout", len(search.states), depth)

    frontier = []
    for k, g in enumerate(gens):
        if g in search.index:
            continue
        idx = search.add(g, -1, k)
        if stop_at_positive and g == target:
            return search, idx, 1
        if not (prune_dead and 0 in g):
            frontier.append(idx)
    budget(1)

    depth = 1
    while frontier:
        if depth >= max_depth:
            raise LimitExceeded("max depth", len(search.states), depth)
        nxt = []
        for count, idx in enumerate(frontier):
            rows = search.states[idx]
            for k in range(len(gens)):
                if tables is not None:
                    t = tables[k]
                    new = tuple([t[r] for r in rows])
                else:
                    g = gens[k]
                    new = tuple([image(r, g) for r in rows])
                if new in search.index:
                    continue
                j = search.add(new, idx, k)
                if stop_at_positive and new == target:
                    return search, j, depth + 1
                if not (prune_dead and 0 in new):
                    nxt.append(j)
            if count & 1023 == 0:
                budget(depth + 1)
        budget(depth + 1)
        frontier = nxt
        depth += 1
    return search, None, depth


def _pack(rows, n: int) -> int:
    out = 0
    for i, r in enumerate(rows):
        out |= r << (n * i)
    return out



def _explore_packed(s: MatrixSet, limits: ResourceLimits, prune_dead: bool):
    """Layered BFS on uint64-packed patterns; same contract as :func:`_explore`.

    Returns ``(explored, word or None, depth)``.  Candidates of a layer are
    generated in (parent position, letter) order and only first occurrences
    survive, which keeps the lexicographic order of the scalar search.
    """
    n, m = s.n, s.m
    u64 = np.uint64
    rowmask = u64((1 << n) - 1)
    shifts = [u64(n * i) for i in range(n)]
    full = u64((1 << (n * n)) - 1)
    tables = np.array([image_table(a.rows) for a in s.mats], dtype=np.uint64)
    max_depth = limits.depth_for(n)
    deadline = None if limits.timeout is None else time.monotonic() + limits.timeout

    def dead_mask(states):
        dead = np.zeros(len(states), dtype=bool)
        for sh in shifts:
            dead |= ((states >> sh) & rowmask) == 0
        return dead

    def word_of(layers, depth_idx, pos):
        out = []
        while depth_idx >= 0:
            _, parents, letters = layers[depth_idx]
            out.append(int(letters[pos]) + 1)
            pos = int(parents[pos])
            depth_idx -= 1
        return tuple(reversed(out))

    gen_states = np.array([_pack(a.rows, n) for a in s.mats], dtype=np.uint64)
    _, first = np.unique(gen_states, return_index=True)
    first = np.sort(first)
    states = gen_states[first]
    layers = [(states, np.full(len(states), -1), first)]
    hit = np.flatnonzero(states == full)
    if len(hit):
        return int(hit[0]) + 1, word_of(layers, 0, int(hit[0])), 1
    seen = np.sort(states)
    frontier = np.flatnonzero(~dead_mask(states)) if prune_dead else np.arange(len(states))

    depth = 1
    while len(frontier):
        if depth >= max_depth:
            raise LimitExceeded("max depth", len(seen), depth)
        prev_states = layers[-1][0]
        new_states, new_parents, new_letters = [], [], []
        for lo in range(0, len(frontier), _CHUNK):
            pos = frontier[lo:lo + _CHUNK]
            src = prev_states[pos]
            cand = np.empty((len(src), m), dtype=np.uint64)
            for k in range(m):
                acc = np.zeros(len(src), dtype=np.uint64)
                t = tables[k]
                for sh in shifts:
                    acc |= t[(src >> sh) & rowmask] << sh
                cand[:, k] = acc
            uniq, first = np.unique(cand.ravel(), return_index=True)
            # sorted queries keep searchsorted cache friendly
            idx = np.searchsorted(seen, uniq)
            idx[idx == len(seen)] = 0
            fresh = seen[idx] != uniq
            uniq = uniq[fresh]
            first = first[fresh]
            order = np.argsort(first)
            first = first[order]
            flat = uniq[order]
            parents = pos[first // m]
            letters = first % m
            hit = np.flatnonzero(flat == full)
            if len(hit):
                h = int(hit[0])
                prior = sum(len(x) for x in new_states)
                new_states.append(flat[:h + 1])
                new_parents.append(parents[:h + 1])
                new_letters.append(letters[:h + 1])
                layers.append((np.concatenate(new_states), np.concatenate(new_parents),
                               np.concatenate(new_letters)))
                return len(seen) + h + 1, word_of(layers, len(layers) - 1, prior + h), depth + 1
            seen = np.concatenate((seen, uniq))
            seen.sort(kind="stable")
            new_states.append(flat)
            new_parents.append(parents)
            new_letters.append(letters)
            if len(seen) > limits.max_states:
                raise LimitExceeded("max states", len(seen), depth + 1)
            if deadline is not None and time.monotonic() > deadline:
                raise LimitExceeded("timeout", len(seen), depth + 1)
        layer = (np.concatenate(new_states) if new_states else np.zeros(0, dtype=np.uint64),
                 np.concatenate(new_parents) if new_parents else np.zeros(0, dtype=np.int64),
                 np.concatenate(new_letters) if new_letters else np.zeros(0, dtype=np.int64))
        layers.append(layer)
        frontier = (np.flatnonzero(~dead_mask(layer[0])) if prune_dead
                    else np.arange(len(layer[0])))
        depth += 1
    return len(seen), None, depth


def decide_primitive_exact(s: MatrixSet, limits: Optional[ResourceLimits] = None,
                           prune_dead: bool = True, scalar: bool = False) -> Verdict:
    """Decide primitivity exactly and return a shortest witness when one exists.

    With ``prune_dead`` (the default) patterns containing a zero row are recorded
    but not expanded: right multiplication keeps a zero row zero, so they can
    never reach the all-ones pattern.  This changes neither the verdict nor the
    witness.  Sets with ``n <= 8`` use a vectorised search over packed
    patterns unless ``scalar`` is set; both searches return identical verdicts.

    Raises :class:`LimitExceeded` when ``limits`` run out before an answer.
    """
    limits = limits or ResourceLimits()
    if s.n <= _PACKED_MAX_N and not scalar:
        explored, w, depth = _explore_packed(s, limits, prune_dead)
    else:
        search, hit, depth = _explore(s, limits, stop_at_positive=True, prune_dead=prune_dead)
        explored = len(search.states)
        w = None if hit is None else search.word(hit)
    if w is None:
        return Verdict(False, None, explored, depth)
    assert is_positive(word_product(s, w)), "witness product is not positive"
    return Verdict(True, w, explored, depth)


def shortest_positive_length(s: MatrixSet, limits: Optional[ResourceLimits] = None):
    """``l(S)``: length of the shortest positive product, ``INF`` if none."""
    return decide_primitive_exact(s, limits).length


def certify_not_primitive_closure(s: MatrixSet,
                                  limits: Optional[ResourceLimits] = None) -> frozenset[BoolMatrix]:
    """All distinct product patterns of a non-primitive set.

    The result is closed under right multiplication by every generator and does
    not contain the all-ones pattern, which together certify non-primitivity.
    Raises ``ValueError`` if the set turns out to be primitive.
    """
    limits = limits or ResourceLimits()
    search, hit, _ = _explore(s, limits, stop_at_positive=True, prune_dead=False)
    if hit is not None:
        raise ValueError(f"set is primitive (witness {search.word(hit)})")
    return frozenset(BoolMatrix(s.n, rows) for rows in search.states)


def verify_closure_certificate(s: MatrixSet, closure) -> bool:
    """Check a certificate from :func:`certify_not_primitive_closure`."""
    closure = set(closure)
    if not all(a in closure for a in s.mats):
        return False
    if BoolMatrix.ones(s.n) in closure:
        return False
    for p in closure:
        for a in s.mats:
            if p @ a not in closure:
                return False
    return True
