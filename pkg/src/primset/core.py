"""Boolean matrix patterns, matrix sets and words.

Every question in this package depends only on the zero pattern of a
nonnegative matrix, so a matrix is stored as ``n`` row bitsets: bit ``j`` of
``rows[i]`` is set iff entry ``(i, j)`` is positive (0-based internally).
Words are sequences of 1-based matrix indices and reach sets are frozensets of
1-based node indices; everything user-facing is 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

Word = tuple[int, ...]


class DimensionError(ValueError):
    pass


class WordError(ValueError):
    pass


def iter_bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(i + 1 for i in iter_bits(mask))


def set_to_mask(members: Iterable[int]) -> int:
    mask = 0
    for i in members:
        mask |= 1 << (i - 1)
    return mask


def image(mask: int, rows: Sequence[int]) -> int:
    """Union of ``rows[k]`` over the bits ``k`` of ``mask``."""
    out = 0
    while mask:
        low = mask & -mask
        out |= rows[low.bit_length() - 1]
        mask ^= low
    return out


def image_table(rows: Sequence[int]) -> list[int]:
    """``table[mask] == image(mask, rows)`` for every ``mask`` below ``2**n``."""
    n = len(rows)
    table = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        table[mask] = table[mask ^ low] | rows[low.bit_length() - 1]
    return table


def transpose_rows(rows: Sequence[int]) -> tuple[int, ...]:
    n = len(rows)
    cols = [0] * n
    for i, r in enumerate(rows):
        for j in iter_bits(r):
            cols[j] |= 1 << i
    return tuple(cols)


@dataclass(frozen=True)
class BoolMatrix:
    """Zero/one pattern of an ``n x n`` nonnegative matrix."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("dimension must be at least 1")
        if len(self.rows) != self.n:
            raise DimensionError(f"expected {self.n} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for r in self.rows:
            if r < 0 or r & ~full:
                raise DimensionError(f"row bitset {r:#x} wider than n={self.n}")

    @classmethod
    def from_array(cls, a) -> BoolMatrix:
        """Pattern ``a > 0`` of a square nonnegative array (exact comparison)."""
        arr = np.asarray(a)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise DimensionError(f"expected a nonempty square matrix, got shape {arr.shape}")
        if np.any(arr < 0):
            raise ValueError("matrix has negative entries")
        pos = arr > 0
        rows = tuple(
            sum(1 << j for j in np.flatnonzero(row)) for row in pos
        )
        return cls(arr.shape[0], tuple(int(r) for r in rows))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> BoolMatrix:
        """Adjacency pattern of a digraph on nodes ``1..n``."""
        rows = [0] * n
        for i, j in edges:
            if not (1 <= i <= n and 1 <= j <= n):
                raise DimensionError(f"edge ({i}, {j}) outside 1..{n}")
            rows[i - 1] |= 1 << (j - 1)
        return cls(n, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> BoolMatrix:
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def ones(cls, n: int) -> BoolMatrix:
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def zeros(cls, n: int) -> BoolMatrix:
        return cls(n, (0,) * n)

    @classmethod
    def from_function(cls, targets: Sequence[int]) -> BoolMatrix:
        """One 1 per row: row ``i`` maps to ``targets[i-1]`` (1-based)."""
        n = len(targets)
        return cls.from_edges(n, ((i + 1, t) for i, t in enumerate(targets)))

    def __getitem__(self, ij: tuple[int, int]) -> bool:
        """Entry access with 1-based ``(i, j)``."""
        i, j = ij
        return bool(self.rows[i - 1] >> (j - 1) & 1)

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=np.int64)
        for i, r in enumerate(self.rows):
            for j in iter_bits(r):
                out[i, j] = 1
        return out

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def transpose(self) -> BoolMatrix:
        return BoolMatrix(self.n, transpose_rows(self.rows))

    def edges(self) -> list[tuple[int, int]]:
        return [(i + 1, j + 1) for i, r in enumerate(self.rows) for j in iter_bits(r)]

    def __matmul__(self, other: BoolMatrix) -> BoolMatrix:
        return bool_product(self, other)

    def __le__(self, other: BoolMatrix) -> bool:
        """Entrywise domination of patterns."""
        if self.n != other.n:
            raise DimensionError("dimension mismatch")
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.to_lists())


@dataclass(frozen=True)
class MatrixSet:
    """Ordered, nonempty list of patterns of one dimension."""

    mats: tuple[BoolMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "mats", tuple(self.mats))
        if not self.mats:
            raise ValueError("a matrix set needs at least one matrix")
        n = self.mats[0].n
        for k, a in enumerate(self.mats, 1):
            if a.n != n:
                raise DimensionError(f"matrix {k} has dimension {a.n}, expected {n}")

    @classmethod
    def from_arrays(cls, arrays) -> MatrixSet:
        return cls(tuple(BoolMatrix.from_array(a) for a in arrays))

    @property
    def n(self) -> int:
        return self.mats[0].n

    @property
    def m(self) -> int:
        return len(self.mats)

    def __len__(self) -> int:
        return len(self.mats)

    def __iter__(self):
        return iter(self.mats)

    def __getitem__(self, k: int) -> BoolMatrix:
        """1-based access, matching word indices."""
        if not 1 <= k <= len(self.mats):
            raise IndexError(f"matrix index {k} outside 1..{len(self.mats)}")
        return self.mats[k - 1]

    def union_rows(self) -> tuple[int, ...]:
        """Rows of the union digraph: edge (i, j) iff some matrix has it."""
        out = [0] * self.n
        for a in self.mats:
            for i, r in enumerate(a.rows):
                out[i] |= r
        return tuple(out)


def bool_product(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    """Pattern of ``A @ B``: entry (i, j) is 1 iff some k has A(i,k) = B(k,j) = 1."""
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")
    return BoolMatrix(a.n, tuple(image(r, b.rows) for r in a.rows))


def check_word(s: MatrixSet, w: Sequence[int], allow_empty: bool = False) -> Word:
    w = tuple(int(k) for k in w)
    if not w and not allow_empty:
        raise WordError("empty word: products have length at least 1")
    for pos, k in enumerate(w, 1):
        if not 1 <= k <= s.m:
            raise WordError(f"index {k} at position {pos} outside 1..{s.m}")
    return w


def word_product(s: MatrixSet, w: Sequence[int]) -> BoolMatrix:
    """Left-to-right boolean product ``A_{w1} A_{w2} ... A_{wk}``."""
    w = check_word(s, w)
    rows = s.mats[w[0] - 1].rows
    for k in w[1:]:
        gen = s.mats[k - 1].rows
        rows = tuple(image(r, gen) for r in rows)
    return BoolMatrix(s.n, rows)


def prefix_products(s: MatrixSet, w: Sequence[int]) -> list[BoolMatrix]:
    """Products of every nonempty prefix of ``w``, shortest first."""
    w = check_word(s, w, allow_empty=True)
    out = []
    rows = None
    for k in w:
        gen = s.mats[k - 1].rows
        rows = gen if rows is None else tuple(image(r, gen) for r in rows)
        out.append(BoolMatrix(s.n, rows))
    return out


def is_positive(a: BoolMatrix) -> bool:
    full = (1 << a.n) - 1
    return all(r == full for r in a.rows)


def reach_sets(s: MatrixSet, w: Sequence[int], a: int) -> list[frozenset[int]]:
    """``[R_a(0), R_a(1), ..., R_a(|w|)]`` for the graph sequence given by ``w``.

    ``R_a(k)`` is the set of nodes reachable from ``a`` through the first ``k``
    graphs, i.e. the support of row ``a`` of the length-``k`` prefix product.
    """
    if not 1 <= a <= s.n:
        raise IndexError(f"node {a} outside 1..{s.n}")
    w = check_word(s, w, allow_empty=True)
    cur = 1 << (a - 1)
    out = [mask_to_set(cur)]
    for k in w:
        cur = image(cur, s.mats[k - 1].rows)
        out.append(mask_to_set(cur))
    return out


def has_zero_row_or_col(a: BoolMatrix) -> bool:
    if any(r == 0 for r in a.rows):
        return True
    return any(c == 0 for c in transpose_rows(a.rows))


def single_matrix_primitive(a: BoolMatrix) -> bool:
    """Wielandt test: ``A`` is primitive iff ``A^(n^2 - 2n + 2)`` is all-ones."""
    e = max(1, a.n * a.n - 2 * a.n + 2)
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else bool_product(result, base)
        e >>= 1
        if e:
            base = bool_product(base, base)
    return is_positive(result)


def transpose_set(s: MatrixSet) -> MatrixSet:
    return MatrixSet(tuple(a.transpose() for a in s.mats))


def is_permutation(a: BoolMatrix) -> bool:
    full = (1 << a.n) - 1
    seen = 0
    for r in a.rows:
        if r == 0 or r & (r - 1):
            return False
        seen |= r
    return seen == full


def format_word(w: Sequence[int]) -> str:
    return ",".join(str(k) for k in w)


def parse_word(text: str) -> Word:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise WordError(f"malformed word {text!r}; expected comma-separated integers") from None
