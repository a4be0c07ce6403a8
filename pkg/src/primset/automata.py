"""Synchronizing automata and their link to primitive sets.

An automaton here is a :class:`MatrixSet` whose matrices have exactly one 1 per
row, i.e. letters acting as functions on the states ``1..n``.  A word is
synchronizing when its product has every row equal to the same basis row.
"""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .core import (BoolMatrix, MatrixSet, Word, check_word, image, is_positive,
                   iter_bits, word_product)
from .pvstruct import AssumptionViolated, check_assumption, decide_primitive_nz
from .semigroup import LimitExceeded, ResourceLimits, decide_primitive_exact


class NotAnAutomaton(ValueError):
    pass


class CernyViolation(AssertionError):
    """A synchronizing automaton whose shortest reset word exceeds ``(n-1)**2``."""


def is_automaton(s: MatrixSet) -> bool:
    return all(r and not r & (r - 1) for a in s.mats for r in a.rows)


@dataclass(frozen=True)
class Automaton:
    base: MatrixSet

    def __post_init__(self):
        if not is_automaton(self.base):
            raise NotAnAutomaton("every row of every letter needs exactly one 1")

    @classmethod
    def from_maps(cls, maps: Sequence[Sequence[int]]) -> Automaton:
        """Letters given as 1-based transition lists: ``maps[c][q-1]`` is the successor of q."""
        return cls(MatrixSet(tuple(BoolMatrix.from_function(f) for f in maps)))

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def maps(self) -> tuple[tuple[int, ...], ...]:
        """0-based successor tables, one per letter."""
        return tuple(tuple(r.bit_length() - 1 for r in a.rows) for a in self.base.mats)


@dataclass(frozen=True)
class SyncResult:
    synchronizing: bool
    word: Optional[Word] = None
    target_state: Optional[int] = None


def _as_automaton(a) -> Automaton:
    if isinstance(a, Automaton):
        return a
    if isinstance(a, MatrixSet):
        return Automaton(a)
    raise TypeError("expected an Automaton or MatrixSet")


def is_synchronizing(a) -> bool:
    """Pair criterion: every pair of states can be merged by some word.

    Runs a backward BFS from the diagonal over the pair graph, O(m n^2).
    """
    a = _as_automaton(a)
    n = a.n
    maps = a.maps
    merged = set()
    preds: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for f in maps:
        for p in range(n):
            for q in range(p + 1, n):
                x, y = f[p], f[q]
                if x == y:
                    merged.add((p, q))
                else:
                    preds.setdefault((min(x, y), max(x, y)), []).append((p, q))
    queue = deque(merged)
    while queue:
        pair = queue.popleft()
        for prev in preds.get(pair, ()):
            if prev not in merged:
                merged.add(prev)
                queue.append(prev)
    return len(merged) == n * (n - 1) // 2


def shortest_sync_word(a, limits: Optional[ResourceLimits] = None) -> SyncResult:
    """Shortest (then lexicographically least) reset word by subset BFS.

    States are nonempty subsets of states, starting from the full set; the
    search ends at the first singleton.
    """
    a = _as_automaton(a)
    limits = limits or ResourceLimits()
    n = a.n
    full = (1 << n) - 1
    if n == 1:
        return SyncResult(True, (1,), 1)
    gens = [m.rows for m in a.base.mats]
    deadline = None if limits.timeout is None else time.monotonic() + limits.timeout
    parent = {full: (None, None)}
    queue = deque([full])
    depth = {full: 0}
    while queue:
        cur = queue.popleft()
        d = depth[cur]
        if d >= limits.depth_for(n):
            raise LimitExceeded("max depth", len(parent), d)
        for k, g in enumerate(gens):
            nxt = image(cur, g)
            if nxt in parent:
                continue
            parent[nxt] = (cur, k)
            depth[nxt] = d + 1
            if nxt & (nxt - 1) == 0:
                word = []
                x = nxt
                while parent[x][0] is not None:
                    x, letter = parent[x]
                    word.append(letter + 1)
                word.reverse()
                return SyncResult(True, tuple(word), nxt.bit_length())
            queue.append(nxt)
        if len(parent) > limits.max_states:
            raise LimitExceeded("max states", len(parent), d)
        if deadline is not None and time.monotonic() > deadline:
            raise LimitExceeded("timeout", len(parent), d)
    return SyncResult(False)


def check_cerny_bound(a, limits: Optional[ResourceLimits] = None) -> Optional[int]:
    """Shortest reset word length, raising :class:`CernyViolation` above ``(n-1)**2``.

    Returns ``None`` for non-synchronizing automata.
    """
    a = _as_automaton(a)
    res = shortest_sync_word(a, limits)
    if not res.synchronizing:
        return None
    bound = max(1, (a.n - 1) ** 2)
    if len(res.word) > bound:
        raise CernyViolation(
            f"reset word of length {len(res.word)} > {bound} on {a.maps}")
    return len(res.word)


def cerny_automaton(n: int) -> Automaton:
    """The two-letter family whose shortest reset word has length ``(n-1)**2``.

    Letter 1 (``a``) fixes every state except ``n -> 1``; letter 2 (``b``) is the
    cyclic shift ``i -> i+1 (mod n)``.
    """
    if n < 2:
        raise ValueError("cerny_automaton needs n >= 2")
    a = list(range(1, n + 1))
    a[n - 1] = 1
    b = [i % n + 1 for i in range(1, n + 1)]
    return Automaton.from_maps([a, b])


def extract_automaton(s: MatrixSet, w: Sequence[int]) -> tuple[Automaton, Word]:
    """Pull a synchronizing automaton out of a positive product.

    Letter ``l`` of the result is dominated entrywise by ``S[w[l]]``.  Working
    backwards from node 1 at the end of the word, each node that can still reach
    node 1 keeps its smallest-indexed edge towards a node that can; every other
    node keeps its smallest-indexed edge.  The positional word ``1..t`` then
    sends every state to state 1.
    """
    if not check_assumption(s):
        raise AssumptionViolated("a matrix has a zero row or column")
    w = check_word(s, w)
    if not is_positive(word_product(s, w)):
        raise ValueError("word product is not positive")
    n = s.n
    full = (1 << n) - 1
    t = len(w)
    conn = [0] * (t + 1)
    conn[t] = 1
    for pos in range(t, 0, -1):
        rows = s[w[pos - 1]].rows
        conn[pos - 1] = sum(1 << v for v in range(n) if rows[v] & conn[pos])
    assert conn[0] == full
    letters = []
    for pos in range(1, t + 1):
        rows = s[w[pos - 1]].rows
        out = []
        for v in range(n):
            keep = rows[v] & conn[pos] if conn[pos - 1] >> v & 1 else rows[v]
            low = keep & -keep
            out.append(low)
        letters.append(BoolMatrix(n, tuple(out)))
    auto = Automaton(MatrixSet(tuple(letters)))
    return auto, tuple(range(1, t + 1))


def bound_f_default(n: int) -> int:
    """``floor(n (7n^2 + 6n - 16) / 48)``, clamped at 0: a reset-word length bound."""
    if n < 1:
        raise ValueError("n must be positive")
    return max(0, n * (7 * n * n + 6 * n - 16) // 48)


def bound_f_rational(n: int) -> Fraction:
    return Fraction(n * (7 * n * n + 6 * n - 16), 48)


def positive_product_bound(n: int, f: Callable[[int], int] = bound_f_default):
    """``2 f(n) + n - 1`` for a reset-word bound ``f``."""
    if n < 1:
        raise ValueError("n must be positive")
    return 2 * f(n) + n - 1


def cubic_product_bound(n: int) -> Fraction:
    """``(n (7n^2 + 6n + 8) - 24) / 24`` as an exact rational."""
    return Fraction(n * (7 * n * n + 6 * n + 8) - 24, 24)


def _column_words(s: MatrixSet, limits: ResourceLimits, deadline):
    """Shortest words whose product has column ``i`` positive, for every ``i``.

    Searches backwards over column supports: prepending ``A`` turns support
    ``Y`` into ``{k : A(k, y) = 1 for some y in Y}``.
    """
    n = s.n
    full = (1 << n) - 1
    gens = [a.rows for a in s.mats]
    out = {}
    for i in range(n):
        start = 1 << i
        parent = {start: (None, None)}
        queue = deque([start])
        found = start == full
        while queue and not found:
            cur = queue.popleft()
            for k, g in enumerate(gens):
                pre = 0
                for v in range(n):
                    if g[v] & cur:
                        pre |= 1 << v
                if pre in parent:
                    continue
                parent[pre] = (cur, k)
                if pre == full:
                    found = True
                    break
                queue.append(pre)
            if len(parent) > limits.max_states:
                raise LimitExceeded("max states", len(parent), 0)
            if deadline is not None and time.monotonic() > deadline:
                raise LimitExceeded("timeout", len(parent), 0)
        if found:
            word = []
            x = full
            while parent[x][0] is not None:
                x, k = parent[x]
                word.append(k + 1)
            out[i] = tuple(word)
    return out


def _row_words(s: MatrixSet, limits: ResourceLimits, deadline):
    """Shortest words whose product has row ``j`` positive, for every ``j``."""
    n = s.n
    full = (1 << n) - 1
    gens = [a.rows for a in s.mats]
    out = {}
    for j in range(n):
        start = 1 << j
        parent = {start: (None, None)}
        queue = deque([start])
        found = start == full
        while queue and not found:
            cur = queue.popleft()
            for k, g in enumerate(gens):
                nxt = image(cur, g)
                if nxt in parent:
                    continue
                parent[nxt] = (cur, k)
                if nxt == full:
                    found = True
                    break
                queue.append(nxt)
            if len(parent) > limits.max_states:
                raise LimitExceeded("max states", len(parent), 0)
            if deadline is not None and time.monotonic() > deadline:
                raise LimitExceeded("timeout", len(parent), 0)
        if found:
            word = []
            x = full
            while parent[x][0] is not None:
                x, k = parent[x]
                word.append(k + 1)
            out[j] = tuple(reversed(word))
    return out


def _connectors(s: MatrixSet, src: int) -> dict[int, Word]:
    """Shortest words with entry ``(src, j)`` positive, for every reachable ``j``."""
    paths = {src: ()}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for k, a in enumerate(s.mats):
            for j in iter_bits(a.rows[v]):
                if j not in paths:
                    paths[j] = paths[v] + (k + 1,)
                    queue.append(j)
    return paths


def construct_positive_product(s: MatrixSet, limits: Optional[ResourceLimits] = None,
                               exact: bool = False) -> Word:
    """A positive word built as ``B1 C B2``.

    ``B1`` has a positive column ``i``, ``C`` links ``i`` to ``j`` through the
    union digraph (fewer than ``n`` letters) and ``B2`` has a positive row ``j``;
    the pair ``(i, j)`` minimising the total length is used and the result is cut
    at its shortest positive prefix.  With ``exact=True`` the shortest word from
    :func:`decide_primitive_exact` is returned instead.
    """
    if not check_assumption(s):
        raise AssumptionViolated("a matrix has a zero row or column")
    if not decide_primitive_nz(s).primitive:
        raise ValueError("set is not primitive")
    limits = limits or ResourceLimits()
    if exact:
        return decide_primitive_exact(s, limits).witness
    deadline = None if limits.timeout is None else time.monotonic() + limits.timeout
    cols = _column_words(s, limits, deadline)
    rows = _row_words(s, limits, deadline)
    best = None
    for i in sorted(cols):
        links = _connectors(s, i)
        for j in sorted(rows):
            if j not in links:
                continue
            cand = cols[i] + links[j] + rows[j]
            if best is None or len(cand) < len(best):
                best = cand
    if best is None:
        raise ValueError("no positive column/row words found; set is not primitive")
    if not best:
        # n == 1: every factor is [[1]]
        return (1,)
    n = s.n
    full = (1 << n) - 1
    cur = None
    for pos, k in enumerate(best, 1):
        g = s[k].rows
        cur = g if cur is None else tuple(image(r, g) for r in cur)
        if all(r == full for r in cur):
            return best[:pos]
    raise AssertionError("B1 C B2 is not positive")
