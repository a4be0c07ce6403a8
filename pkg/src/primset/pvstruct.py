"""Polynomial-time primitivity test for sets without zero rows or columns.

Such a set fails to be primitive iff either the union digraph is not strongly
connected (a common block-triangular form) or some nontrivial partition of the
nodes is permuted blockwise by every matrix.  Both cases come back with a
checkable certificate.

Block-permutation partitions are searched by pair closure.  Seeding ``u ~ v``
and closing under "related nodes have all their out-neighbours related, and
all their in-neighbours related" (for every matrix) yields the finest
partition with that pair merged that every matrix could possibly permute.
Under the no-zero-row/column assumption each closed class sends all its edges
into one class and receives from one class, so the induced block map is a
bijection.  Any valid partition with a non-singleton block therefore
coarsens the closure of a pair inside that block; the all-singleton partition
is valid exactly when every matrix is a permutation, which is checked first.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import MatrixSet, has_zero_row_or_col, is_permutation, iter_bits, transpose_rows


class AssumptionViolated(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty blocks of 1-based nodes covering ``1..n``."""

    n: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise ValueError("partition has an empty block")
            if seen & b:
                raise ValueError(f"blocks overlap on {sorted(seen & b)}")
            seen |= b
        if seen != set(range(1, self.n + 1)):
            raise ValueError(f"blocks do not cover 1..{self.n}")

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> Partition:
        """Blocks from per-node class labels (0-based nodes), ordered by first node."""
        order: dict[int, list[int]] = {}
        for node, lab in enumerate(labels):
            order.setdefault(lab, []).append(node + 1)
        return cls(len(labels), tuple(frozenset(b) for b in order.values()))

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def nontrivial(self) -> bool:
        return self.k > 1

    def block_of(self, node: int) -> int:
        for idx, b in enumerate(self.blocks):
            if node in b:
                return idx
        raise KeyError(node)

    def masks(self) -> list[int]:
        return [sum(1 << (i - 1) for i in b) for b in self.blocks]

    def __str__(self) -> str:
        return " ".join("{" + ",".join(str(i) for i in sorted(b)) + "}" for b in self.blocks)


class Outcome(enum.Enum):
    PRIMITIVE = "primitive"
    REDUCIBLE = "reducible"
    BLOCK_PERMUTATION = "block-permutation"


@dataclass(frozen=True)
class NzVerdict:
    outcome: Outcome
    partition: Optional[Partition] = None
    # one tuple per matrix: block_maps[a][I] = J when matrix a sends block I into block J
    block_maps: Optional[tuple[tuple[int, ...], ...]] = None

    @property
    def primitive(self) -> bool:
        return self.outcome is Outcome.PRIMITIVE


def check_assumption(s: MatrixSet) -> bool:
    """True iff no matrix has a zero row or a zero column."""
    return not any(has_zero_row_or_col(a) for a in s.mats)


def _reach(rows: Sequence[int], start: int) -> int:
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for i in iter_bits(frontier):
            nxt |= rows[i]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def union_strongly_connected(s: MatrixSet):
    """``True`` if the union digraph is strongly connected, else a reducible split.

    The split is a :class:`Partition` ``{N1, N2}`` with no edge from ``N1`` to
    ``N2`` in any matrix.
    """
    n = s.n
    full = (1 << n) - 1
    rows = s.union_rows()
    fwd = _reach(rows, 1)
    if fwd != full:
        n1 = fwd
    else:
        back = _reach(transpose_rows(rows), 1)
        if back == full:
            return True
        # nodes that cannot reach node 1 have no edge into those that can
        n1 = full & ~back
    blocks = (frozenset(i + 1 for i in iter_bits(n1)),
              frozenset(i + 1 for i in iter_bits(full & ~n1)))
    return Partition(n, blocks)


def verify_reducible(s: MatrixSet, split: Partition) -> bool:
    if split.k != 2:
        return False
    m1, m2 = split.masks()
    return all(a.rows[i] & m2 == 0 for a in s.mats for i in iter_bits(m1))


def _block_map(rows: Sequence[int], cols: Sequence[int], masks: list[int]):
    """Block permutation induced by one matrix, or None if it is not one."""
    k = len(masks)
    sigma = []
    for src in masks:
        out = 0
        inn = 0
        for i in iter_bits(src):
            out |= rows[i]
            inn |= cols[i]
        hit = [J for J in range(k) if out & masks[J]]
        came = [I for I in range(k) if inn & masks[I]]
        if len(hit) != 1 or len(came) != 1:
            return None
        sigma.append(hit[0])
    # with single-source blocks, a bijective map also fixes who enters each block
    if sorted(sigma) != list(range(k)):
        return None
    return tuple(sigma)


def verify_partition(s: MatrixSet, p: Partition) -> bool:
    """True iff every matrix acts as a block permutation with respect to ``p``."""
    return block_maps(s, p) is not None


def block_maps(s: MatrixSet, p: Partition) -> Optional[tuple[tuple[int, ...], ...]]:
    if not isinstance(p, Partition):
        raise TypeError("expected a Partition")
    if p.n != s.n:
        raise ValueError(f"partition covers 1..{p.n}, set has dimension {s.n}")
    masks = p.masks()
    out = []
    for a in s.mats:
        sigma = _block_map(a.rows, transpose_rows(a.rows), masks)
        if sigma is None:
            return None
        out.append(sigma)
    return tuple(out)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.classes = n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.classes -= 1
        return True


def pair_closure(s: MatrixSet, u: int, v: int) -> list[int]:
    """Class labels (root per 0-based node) of the closure seeded by ``u ~ v``.

    ``u`` and ``v`` are 1-based.
    """
    n = s.n
    adj = []
    for a in s.mats:
        adj.append(a.rows)
        adj.append(transpose_rows(a.rows))
    uf = _UnionFind(n)
    # (x, y) pairs whose neighbourhoods still need merging; (x, x) handles the
    # requirement that one node's own neighbours share a block
    pending = [(x, x) for x in range(n)]
    if uf.union(u - 1, v - 1):
        pending.append((u - 1, v - 1))
    while pending:
        x, y = pending.pop()
        for rows in adj:
            nb = list(iter_bits(rows[x] | rows[y]))
            if not nb:
                continue
            first = nb[0]
            for z in nb[1:]:
                if uf.union(first, z):
                    pending.append((first, z))
        if uf.classes == 1:
            break
    return [uf.find(x) for x in range(n)]


def find_block_permutation_partition(s: MatrixSet):
    """A nontrivial partition permuted blockwise by every matrix, or ``None``.

    Returns ``(partition, block_maps)``.  Requires the no-zero-row/column
    assumption and a strongly connected union digraph.
    """
    if not check_assumption(s):
        raise AssumptionViolated("a matrix has a zero row or column")
    if union_strongly_connected(s) is not True:
        raise ValueError("union digraph is not strongly connected")
    n = s.n
    if n >= 2 and all(is_permutation(a) for a in s.mats):
        p = Partition(n, tuple(frozenset([i]) for i in range(1, n + 1)))
        return p, block_maps(s, p)
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            labels = pair_closure(s, u, v)
            if len(set(labels)) < 2:
                continue
            p = Partition.from_labels(labels)
            maps = block_maps(s, p)
            if maps is not None:
                return p, maps
    return None


def decide_primitive_nz(s: MatrixSet) -> NzVerdict:
    """Decide primitivity of a set whose matrices have no zero row or column.

    Sets violating that assumption must go through
    :func:`primset.semigroup.decide_primitive_exact` instead.
    """
    if not check_assumption(s):
        raise AssumptionViolated(
            "a matrix has a zero row or column; use semigroup.decide_primitive_exact")
    sc = union_strongly_connected(s)
    if sc is not True:
        return NzVerdict(Outcome.REDUCIBLE, partition=sc)
    found = find_block_permutation_partition(s)
    if found is not None:
        p, maps = found
        return NzVerdict(Outcome.BLOCK_PERMUTATION, partition=p, block_maps=maps)
    return NzVerdict(Outcome.PRIMITIVE)


def iter_partitions(n: int) -> Iterable[Partition]:
    """Every partition of ``1..n`` (Bell(n) of them), via restricted growth strings."""
    labels = [0] * n

    def rec(i, top):
        if i == n:
            yield Partition.from_labels(labels)
            return
        for lab in range(top + 2):
            labels[i] = lab
            yield from rec(i + 1, max(top, lab))

    if n == 0:
        return
    yield from rec(1, 0)
